//! `grassproj`: JSON front end to the library.
//!
//! Exit status is 0 on success, 1 when a verdict refutes the property asked
//! about, and 2 on usage errors, malformed input or inputs the library
//! rejects.

mod demo;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use grassproj::exactla::Matrix;
use grassproj::exalg::Multivector;
use grassproj::grass::{fiber_partners, is_decomposable, pluecker, project, Center, PluckerPoint, SymplecticForm};
use grassproj::orbits::{classify_line, classify_orbit, o5_decompose};
use grassproj::scalar::{self, Scalar};
use grassproj::selfadj::{recover_symplectic, verify_double_cover};
use grassproj::syscon::{hermann_martin, pole_placement_poly, pp_center, Realization};
use grassproj::wronski::{build_center, formal_adjoint, is_self_adjoint_op, schubert_degree, FundamentalSystem, Odo};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser)]
/// `--version` reports the version of the JSON formats read and written.
#[command(name = "grassproj", version = "schema 1")]
#[command(about = "Exact linear projections of Grassmannians")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plücker coordinates, decomposability, fibers of point projections.
    #[command(subcommand)]
    Grass(GrassCmd),
    /// Segre orbits of 3-forms on Q^6.
    #[command(subcommand)]
    Orbits(OrbitsCmd),
    /// Self-adjoint centers.
    #[command(subcommand)]
    Selfadj(SelfadjCmd),
    /// Wronski maps of linear ODOs.
    #[command(subcommand)]
    Wronski(WronskiCmd),
    /// Pole placement by static output feedback.
    #[command(subcommand)]
    Syscon(SysconCmd),
    /// Reproduce a built-in fixture.
    Demo {
        #[arg(value_enum)]
        name: demo::Demo,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

/// Paths are files, or `-` for stdin.
#[derive(Subcommand)]
enum GrassCmd {
    /// Plücker vector of the row span of {"basis": [[...], ...]}.
    Pluecker {
        #[arg(long)]
        basis: PathBuf,
    },
    Decomposable {
        #[arg(long)]
        form: PathBuf,
    },
    FiberPartners {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    Project {
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        center: PathBuf,
    },
}

#[derive(Subcommand)]
enum OrbitsCmd {
    Classify {
        #[arg(long)]
        form: PathBuf,
    },
    Decompose {
        #[arg(long)]
        form: PathBuf,
    },
    LineType {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
}

#[derive(Subcommand)]
enum SelfadjCmd {
    Detect {
        #[arg(long)]
        center: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Verify {
        #[arg(long)]
        center: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum WronskiCmd {
    BuildCenter {
        #[arg(long)]
        fs: PathBuf,
        #[arg(short, long)]
        m: usize,
        /// Print only the center, ready for `selfadj detect`.
        #[arg(long)]
        center_only: bool,
    },
    Degree {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        n: usize,
    },
    Adjoint {
        #[arg(long)]
        op: PathBuf,
    },
}

#[derive(Subcommand)]
enum SysconCmd {
    Pp {
        #[arg(long)]
        realization: PathBuf,
        #[arg(long)]
        gain: PathBuf,
    },
    Center {
        #[arg(long)]
        realization: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    HmCurve {
        #[arg(long)]
        realization: PathBuf,
    },
}

/// A report and whether it is a refutation.
struct Report {
    value: Value,
    refuted: bool,
}

impl Report {
    fn ok(value: impl Serialize) -> Result<Self> {
        Ok(Report {
            value: serde_json::to_value(value)?,
            refuted: false,
        })
    }

    fn verdict(value: impl Serialize, holds: bool) -> Result<Self> {
        Ok(Report {
            value: serde_json::to_value(value)?,
            refuted: !holds,
        })
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

#[derive(Deserialize)]
struct BasisJson {
    #[serde(with = "scalar::serde_scalar_rows")]
    basis: Vec<Vec<Scalar>>,
}

fn grass(cmd: GrassCmd) -> Result<Report> {
    match cmd {
        GrassCmd::Pluecker { basis } => {
            let b: BasisJson = read_json(&basis)?;
            Report::ok(pluecker(&b.basis)?)
        }
        GrassCmd::Decomposable { form } => {
            let w: Multivector = read_json(&form)?;
            let l = is_decomposable(&w);
            Report::ok(json!({ "decomposable": l.is_some(), "subspace": l }))
        }
        GrassCmd::FiberPartners { base, point } => {
            let b: PluckerPoint = read_json(&base)?;
            let p: PluckerPoint = read_json(&point)?;
            Report::ok(fiber_partners(&b, &p)?)
        }
        GrassCmd::Project { form, center } => {
            let w: Multivector = read_json(&form)?;
            let z: Center = read_json(&center)?;
            Report::ok(project(&w, &z)?)
        }
    }
}

fn orbits(cmd: OrbitsCmd) -> Result<Report> {
    match cmd {
        OrbitsCmd::Classify { form } => Report::ok(classify_orbit(&read_json(&form)?)?),
        OrbitsCmd::Decompose { form } => Report::ok(o5_decompose(&read_json(&form)?)?),
        OrbitsCmd::LineType { first, second } => {
            Report::ok(classify_line(&read_json(&first)?, &read_json(&second)?)?)
        }
    }
}

fn selfadj(cmd: SelfadjCmd) -> Result<Report> {
    match cmd {
        SelfadjCmd::Detect { center, seed } => {
            let v = recover_symplectic(&read_json(&center)?, seed)?;
            let holds = v.is_self_adjoint();
            Report::verdict(v, holds)
        }
        SelfadjCmd::Verify {
            center,
            sigma,
            trials,
            seed,
        } => {
            let z: Center = read_json(&center)?;
            let s: Multivector = read_json(&sigma)?;
            let r = verify_double_cover(&z, &SymplecticForm::new(&s)?, trials, seed)?;
            let holds = r.failures == 0;
            Report::verdict(r, holds)
        }
    }
}

fn wronski(cmd: WronskiCmd) -> Result<Report> {
    match cmd {
        WronskiCmd::BuildCenter { fs, m, center_only } => {
            let fs: FundamentalSystem = read_json(&fs)?;
            let w = build_center(&fs, m)?;
            let center = w.center().ok();
            if center_only {
                return Report::ok(center.context("the center is zero")?);
            }
            Report::ok(json!({
                "n": w.n,
                "m": w.m,
                "dim_x": w.x.dim(),
                "dim_z": w.z.dim(),
                "x": w.x,
                "center": center,
            }))
        }
        WronskiCmd::Degree { m, n } => {
            let d = schubert_degree(m, n)?;
            let degree: Value = match u64::try_from(&d) {
                Ok(x) => x.into(),
                Err(_) => d.to_string().into(),
            };
            Report::ok(json!({ "m": m, "n": n, "degree": degree }))
        }
        WronskiCmd::Adjoint { op } => {
            let l: Odo = read_json(&op)?;
            let adj = formal_adjoint(&l);
            Report::ok(json!({ "adjoint": adj, "self_adjoint": is_self_adjoint_op(&l) }))
        }
    }
}

fn syscon(cmd: SysconCmd) -> Result<Report> {
    match cmd {
        SysconCmd::Pp { realization, gain } => {
            let s: Realization = read_json(&realization)?;
            let k: Matrix = read_json(&gain)?;
            Report::ok(json!({ "poly": pole_placement_poly(&s, &k)? }))
        }
        SysconCmd::Center { realization, seed } => {
            let s: Realization = read_json(&realization)?;
            let pc = pp_center(&s, seed)?;
            Report::ok(json!({
                "dim_x": pc.x.dim(),
                "dim_z": pc.z.dim(),
                "proper": pc.proper,
                "x": pc.x,
                "center": pc.center().ok(),
            }))
        }
        SysconCmd::HmCurve { realization } => {
            let s: Realization = read_json(&realization)?;
            let c = hermann_martin(&s)?;
            Report::ok(json!({ "degree": c.degree(), "curve": c }))
        }
    }
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Grass(c) => grass(c),
        Command::Orbits(c) => orbits(c),
        Command::Selfadj(c) => selfadj(c),
        Command::Wronski(c) => wronski(c),
        Command::Syscon(c) => syscon(c),
        Command::Demo { name, seed } => demo::run(name, seed),
    }
}

fn emit(value: &Value, output: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let report = run(cli).and_then(|r| {
        emit(&r.value, output.as_deref())?;
        Ok(r)
    });
    match report {
        Ok(r) if r.refuted => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
