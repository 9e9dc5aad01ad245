//! Exact rational scalars and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Renders as `p/q` with `q > 0`, including integers (`3/1`).
pub fn format(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(p, q))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter for a single scalar stored as a `"p/q"` string.
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
        format(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of scalars.
pub mod serde_scalars {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        xs.iter().map(format).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Scalar>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for lists of vectors of scalars.
pub mod serde_scalar_rows {
    use super::*;

    pub fn serialize<S: Serializer>(rows: &[Vec<Scalar>], s: S) -> std::result::Result<S::Ok, S::Error> {
        rows.iter()
            .map(|r| r.iter().map(format).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Scalar>>, D::Error> {
        let v = Vec::<Vec<String>>::deserialize(d)?;
        v.iter()
            .map(|r| r.iter().map(|s| parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}
