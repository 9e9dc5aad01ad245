//! Dense univariate polynomials over the rationals, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    #[serde(with = "scalar::serde_scalars")]
    coeffs: Vec<Scalar>,
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Self> {
        Ok(Poly::new(j.coeffs))
    }
}

impl From<Poly> for PolyJson {
    fn from(p: Poly) -> Self {
        PolyJson { coeffs: p.coeffs }
    }
}

/// Rational roots of a polynomial together with the number of roots (with
/// multiplicity) that are not rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(Scalar, usize)>,
    pub nonrational: usize,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(scalar::one(), 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * scalar::int(k as i64))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at 0.
    pub fn integral(&self) -> Self {
        let mut c = vec![Scalar::zero()];
        c.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a / Scalar::from_integer((k as i64 + 1).into())),
        );
        Poly::new(c)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => self.clone(),
        }
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Quotient when `d` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor (Euclid over the rationals).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// All rational roots with multiplicity, by the rational root theorem and
    /// repeated exact division.
    pub fn rational_roots(&self) -> Result<RationalRoots> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        let mut rest = self.clone();
        let mut roots = Vec::new();

        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push((Scalar::zero(), zeros));
            rest = Poly::new(rest.coeffs[zeros..].to_vec());
        }

        while rest.degree().unwrap_or(0) > 0 {
            let Some(r) = rest.find_rational_root() else { break };
            let lin = Poly::new(vec![-r.clone(), scalar::one()]);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&lin)? {
                rest = q;
                mult += 1;
            }
            roots.push((r, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        let found: usize = roots.iter().map(|r| r.1).sum();
        Ok(RationalRoots {
            roots,
            nonrational: deg - found,
        })
    }

    /// One rational root of a polynomial with nonzero constant term.
    fn find_rational_root(&self) -> Option<Scalar> {
        let ints = self.integer_coefficients();
        let a0 = ints.first()?.abs();
        let an = ints.last()?.abs();
        if ints.len() == 2 {
            return Some(Scalar::new(-ints[0].clone(), ints[1].clone()));
        }
        let ps = divisors(&a0);
        let qs = divisors(&an);
        for q in &qs {
            for p in &ps {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for cand in [Scalar::new(p.clone(), q.clone()), Scalar::new(-p, q.clone())] {
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }

    /// Coefficients scaled by the lcm of denominators (and divided by the
    /// content) so they are coprime integers.
    pub fn integer_coefficients(&self) -> Vec<BigInt> {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(scalar::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
