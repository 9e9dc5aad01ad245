use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A rational function `num / den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den)?;
        let (n, d) = (num.exact_div(&g)?.expect("gcd divides"), den.exact_div(&g)?.expect("gcd divides"));
        let lead = d.leading().cloned().expect("nonzero denominator");
        let inv = Scalar::one() / lead;
        Ok(RatFunc {
            num: n.scale(&inv),
            den: d.scale(&inv),
        })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator nonzero")
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(num, &self.den * &self.den).expect("denominator nonzero")
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Poly::zero().into()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Poly::one().into()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn add(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;

    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;

            fn $f(self, o: RatFunc) -> RatFunc {
                (&self).$f(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Deserialize)]
struct RatFuncJson {
    num: Poly,
    #[serde(default = "Poly::one")]
    den: Poly,
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RatFuncJson::deserialize(d)?;
        RatFunc::new(j.num, j.den).map_err(serde::de::Error::custom)
    }
}
