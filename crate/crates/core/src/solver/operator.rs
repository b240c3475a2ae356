//! Diagonal operator specifications and their symbols.
//!
//! An operator is a sum of factors, one per tensor axis: coefficient
//! times the axis eigenvalue raised to a power. The symbol at an index
//! tuple is the corresponding sum, computed exactly in Q(sqrt 2).

use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::bases::BasisAxis;
use crate::coeffs::tensor::CoefficientTensor;
use crate::error::Error;
use crate::rational::{format_rat, parse_rat, Rat};
use crate::solver::quadext::{div, QuadExt};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum CoeffValue {
    Rational(Rat),
    /// The square root of two; the only supported irrational, kept exact
    /// through Q(sqrt 2) arithmetic.
    Sqrt2,
}

impl CoeffValue {
    pub fn as_quad(&self) -> QuadExt {
        match self {
            CoeffValue::Rational(r) => QuadExt::from_rat(r.clone()),
            CoeffValue::Sqrt2 => QuadExt::sqrt2(),
        }
    }

    pub fn rational(s: &str) -> Result<Self> {
        Ok(CoeffValue::Rational(parse_rat(s).map_err(Error::domain)?))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Rational(String),
    Algebraic { algebraic: String },
}

impl Serialize for CoeffValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            CoeffValue::Rational(r) => CoeffRepr::Rational(format_rat(r)),
            CoeffValue::Sqrt2 => CoeffRepr::Algebraic {
                algebraic: "sqrt2".into(),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match CoeffRepr::deserialize(d)? {
            CoeffRepr::Rational(s) => parse_rat(&s)
                .map(CoeffValue::Rational)
                .map_err(serde::de::Error::custom),
            CoeffRepr::Algebraic { algebraic } => {
                if algebraic == "sqrt2" {
                    Ok(CoeffValue::Sqrt2)
                } else {
                    Err(serde::de::Error::custom(format!(
                        "unsupported algebraic coefficient '{algebraic}'"
                    )))
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperatorFactor {
    pub axis: BasisAxis,
    pub coeff: CoeffValue,
    pub power: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperatorSpec {
    pub factors: Vec<OperatorFactor>,
}

impl OperatorSpec {
    pub fn new(factors: Vec<OperatorFactor>) -> Result<Self> {
        let spec = OperatorSpec { factors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::domain("operator needs at least one factor"));
        }
        for f in &self.factors {
            if f.power == 0 {
                return Err(Error::domain("factor powers must be at least 1"));
            }
            f.axis.validate()?;
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn axes(&self) -> Vec<BasisAxis> {
        self.factors.iter().map(|f| f.axis.clone()).collect()
    }

    /// True when every coefficient is rational, making all downstream
    /// arithmetic exact over Q.
    pub fn is_rational(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f.coeff, CoeffValue::Rational(_)))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("operator serialization cannot fail")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let spec: OperatorSpec = serde_json::from_value(value)?;
        spec.validate()?;
        Ok(spec)
    }
}

/// Symbol `sum_f coeff_f * lambda_f(idx_f)^{power_f}`, exact in
/// Q(sqrt 2); zero detection on the result is decidable.
pub fn symbol(spec: &OperatorSpec, idx: &[u64]) -> Result<QuadExt> {
    if idx.len() != spec.arity() {
        return Err(Error::Arity {
            expected: spec.arity(),
            got: idx.len(),
        });
    }
    let mut acc = QuadExt::zero();
    for (f, &i) in spec.factors.iter().zip(idx) {
        let lambda = f.axis.eigenvalue(i)?;
        let powered = lambda.pow(f.power as i32);
        acc = acc.add(&f.coeff.as_quad().scale(&powered));
    }
    Ok(acc)
}

/// Multiplies every stored coefficient by the symbol at its index. Exact
/// for rational operators; for sqrt(2) coefficients the factor is
/// replaced by a rational approximation certified to 2^-200.
pub fn forward_apply(spec: &OperatorSpec, u: &CoefficientTensor) -> Result<CoefficientTensor> {
    if u.axes() != spec.axes().as_slice() {
        return Err(Error::domain(
            "tensor axes do not match the operator factors",
        ));
    }
    let mut out = CoefficientTensor::new(u.axes().to_vec(), u.truncation().to_vec())?;
    for (idx, v) in u.iter() {
        let s = symbol(spec, idx)?;
        let scaled = v.scale(&quad_to_rat(&s));
        out.insert(idx.clone(), scaled)?;
    }
    Ok(out)
}

/// Bit depth of the rational approximation used when a symbol value is
/// irrational. Process-wide so batch frontends can raise it once.
static APPROX_BITS: std::sync::atomic::AtomicU32 = std::sync::atomic::AtomicU32::new(200);

pub fn set_approx_bits(bits: u32) {
    APPROX_BITS.store(bits.max(16), std::sync::atomic::Ordering::Relaxed);
}

pub fn approx_bits() -> u32 {
    APPROX_BITS.load(std::sync::atomic::Ordering::Relaxed)
}

/// Exact for rational values, midpoint of certified bounds otherwise.
pub fn quad_to_rat(x: &QuadExt) -> Rat {
    if x.is_rational() {
        x.a.clone()
    } else {
        let (lo, hi) = x.bounds(approx_bits());
        (lo + hi) / Rat::from_integer(2.into())
    }
}

/// Inverse symbol as a rational, under the same approximation contract.
pub fn quad_inverse_to_rat(x: &QuadExt) -> Rat {
    if x.is_rational() {
        Rat::from_integer(1.into()) / x.a.clone()
    } else {
        quad_to_rat(&div(&QuadExt::from_rat(Rat::from_integer(1.into())), x))
    }
}
