//! Exact computation with linear projections of Grassmannians in their
//! Plücker embedding: Segre orbits of 3-forms in six variables,
//! self-adjoint projection centers, Wronski maps and pole placement.
//!
//! All arithmetic is over the rationals.

pub mod error;
pub mod exactla;
pub mod exalg;
pub mod grass;
pub mod orbits;
pub mod rng;
pub mod scalar;
pub mod selfadj;
pub mod syscon;
pub mod wronski;

pub use error::{Error, Result};
