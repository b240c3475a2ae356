//! Exact arithmetic in Q(sqrt 2).
//!
//! Operator coefficients are rational or sqrt(2), and all eigenvalues
//! are rational, so every symbol value is `a + b sqrt(2)`. Signs, zeros,
//! and distances to integers are therefore decidable exactly; floating
//! bounds are produced only for reporting.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rational::{dist_to_nearest_int, rat_to_f64, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    /// rational part
    pub a: Rat,
    /// coefficient of sqrt(2)
    pub b: Rat,
}

/// Rational bounds `lo <= sqrt(2) <= hi` with `hi - lo = 2^-bits`.
pub fn sqrt2_bounds(bits: u32) -> (Rat, Rat) {
    let scale = BigInt::from(1) << bits;
    let lo_num = (BigInt::from(2) * (&scale * &scale)).sqrt();
    (
        Rat::new(lo_num.clone(), scale.clone()),
        Rat::new(lo_num + 1, scale),
    )
}

impl QuadExt {
    pub fn zero() -> Self {
        QuadExt {
            a: Rat::zero(),
            b: Rat::zero(),
        }
    }

    pub fn from_rat(a: Rat) -> Self {
        QuadExt {
            a,
            b: Rat::zero(),
        }
    }

    pub fn sqrt2() -> Self {
        QuadExt {
            a: Rat::zero(),
            b: Rat::from_integer(1.into()),
        }
    }

    pub fn is_zero(&self) -> bool {
        // sqrt(2) is irrational, so a + b sqrt(2) = 0 iff a = b = 0
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, other: &QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        QuadExt {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn scale(&self, r: &Rat) -> QuadExt {
        QuadExt {
            a: &self.a * r,
            b: &self.b * r,
        }
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 with 2 b^2
        let a2 = &self.a * &self.a;
        let b2 = Rat::from_integer(2.into()) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> QuadExt {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Certified rational bounds with `hi - lo <= |b| * 2^-bits`.
    pub fn bounds(&self, bits: u32) -> (Rat, Rat) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (s_lo, s_hi) = sqrt2_bounds(bits);
        if self.b.is_positive() {
            (&self.a + &self.b * s_lo, &self.a + &self.b * s_hi)
        } else {
            (&self.a + &self.b * s_hi, &self.a + &self.b * s_lo)
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.a) + rat_to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    /// Exact distance to the nearest integer, again in Q(sqrt 2). For an
    /// irrational value the nearest integer is determined by refining
    /// rational bounds; termination is guaranteed since the value is
    /// never exactly halfway between integers.
    pub fn dist_to_nearest_int(&self) -> QuadExt {
        if self.is_rational() {
            return QuadExt::from_rat(dist_to_nearest_int(&self.a));
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = self.add(&QuadExt::from_rat(Rat::new(1.into(), 2.into()))).bounds(bits);
            let f_lo = lo.floor();
            let f_hi = hi.floor();
            if f_lo == f_hi {
                let tau = f_lo.to_integer();
                let d = self.sub(&QuadExt::from_rat(Rat::from_integer(tau)));
                return d.abs();
            }
            bits += 64;
            assert!(bits < 1 << 20, "nearest-integer refinement runaway");
        }
    }

    /// Conservative f64 lower bound on |self|.
    pub fn abs_lower_f64(&self) -> f64 {
        let (lo, _) = self.abs().bounds(128);
        let x = rat_to_f64(&lo);
        // rat_to_f64 rounds to nearest; step one ulp down to stay a bound
        if x > 0.0 {
            f64::from_bits(x.to_bits() - 1)
        } else {
            0.0
        }
    }
}

fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Division `x / y` for rational `y`; exact.
pub fn div_by_rat(x: &QuadExt, y: &Rat) -> QuadExt {
    QuadExt {
        a: &x.a / y,
        b: &x.b / y,
    }
}

/// Full division in Q(sqrt 2): multiply by the conjugate; exact for any
/// nonzero divisor.
pub fn div(x: &QuadExt, y: &QuadExt) -> QuadExt {
    // (a + b r)(c - d r) / (c^2 - 2 d^2), r = sqrt 2
    let denom = &y.a * &y.a - Rat::from_integer(2.into()) * &y.b * &y.b;
    assert!(!denom.is_zero(), "division by zero in Q(sqrt 2)");
    QuadExt {
        a: (&x.a * &y.a - Rat::from_integer(2.into()) * &x.b * &y.b) / &denom,
        b: (&x.b * &y.a - &x.a * &y.b) / &denom,
    }
}
