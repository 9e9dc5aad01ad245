//! Exact linear algebra over the rationals and univariate polynomials.

mod matrix;
mod poly;
mod ratfunc;
mod resolvent;
mod subspace;

pub use matrix::{Matrix, PolyMatrix, Ring, Rref};
pub use poly::{Poly, RationalRoots};
pub use ratfunc::RatFunc;
pub use resolvent::{charpoly, resolvent, Resolvent};
pub use subspace::Subspace;
