//! Exact rational scalars and complex rational coefficients.
//!
//! Resonance membership downstream is decided by exact zero tests, so
//! coefficient values are kept as rationals end to end. Conversion from
//! `f64` is exact (every finite float is rational); conversion back is
//! the usual rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rat = BigRational;

/// Exact conversion of a finite `f64` into a rational.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    BigRational::from_float(x)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a/b"` or `"a"` (integers may carry a sign).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| e.to_string())?;
            let d = BigInt::from_str(d.trim()).map_err(|e| e.to_string())?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|e| e.to_string())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Distance from an exact rational to the nearest integer.
pub fn dist_to_nearest_int(r: &Rat) -> Rat {
    let fl = r.floor();
    let frac = r - &fl;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    if frac <= half {
        frac
    } else {
        BigRational::from_integer(BigInt::from(1)) - frac
    }
}

/// Complex number with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn zero() -> Self {
        CRat {
            re: Rat::zero(),
            im: Rat::zero(),
        }
    }

    pub fn from_rat(re: Rat) -> Self {
        CRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Option<Self> {
        Some(CRat {
            re: rat_from_f64(re)?,
            im: rat_from_f64(im)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CRat {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    /// Division by a nonzero real rational.
    pub fn div_rat(&self, s: &Rat) -> Self {
        CRat {
            re: &self.re / s,
            im: &self.im / s,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        let re = rat_to_f64(&self.re);
        let im = rat_to_f64(&self.im);
        re.hypot(im)
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Add for CRat {
    type Output = CRat;
    fn add(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for CRat {
    type Output = CRat;
    fn sub(self, rhs: CRat) -> CRat {
        CRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for CRat {
    type Output = CRat;
    fn mul(self, rhs: CRat) -> CRat {
        CRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Serde adapter: rationals serialize as `"num/den"` strings so files
/// round-trip exactly.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>`.
pub mod serde_rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rat).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rat(&self.re))
        } else if self.im.is_positive() {
            write!(f, "{}+{}i", format_rat(&self.re), format_rat(&self.im))
        } else {
            write!(f, "{}{}i", format_rat(&self.re), format_rat(&self.im))
        }
    }
}
