//! Width-certified interval arithmetic over `f64`.
//!
//! Every operation pads its result outward by one ulp on each endpoint,
//! so the true real value is always contained. This is enough to certify
//! sign decisions and integer distances for the solver's irrational
//! coefficients; undecided zeros are surfaced, never guessed.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn next_down(x: f64) -> f64 {
    if x.is_infinite() && x < 0.0 {
        x
    } else {
        let bits = x.to_bits();
        let next = if x > 0.0 {
            bits - 1
        } else if x < 0.0 {
            bits + 1
        } else {
            (-f64::MIN_POSITIVE).to_bits()
        };
        f64::from_bits(next)
    }
}

fn next_up(x: f64) -> f64 {
    -next_down(-x)
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    /// Encloses sqrt(x) for x >= 0.
    pub fn sqrt_of(x: f64) -> Self {
        let s = x.sqrt();
        Interval {
            lo: next_down(s),
            hi: next_up(s),
        }
    }

    fn pad(lo: f64, hi: f64) -> Self {
        Interval {
            lo: next_down(lo),
            hi: next_up(hi),
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::pad(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        let lo = c.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = c.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Interval::pad(lo, hi)
    }

    pub fn scale(&self, s: f64) -> Interval {
        self.mul(&Interval::point(s))
    }

    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::point(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0.0 && self.hi >= 0.0
    }

    /// Strictly positive lower bound on |x| for every x in the interval,
    /// or `None` when the interval straddles zero.
    pub fn abs_lower(&self) -> Option<f64> {
        if self.lo > 0.0 {
            Some(self.lo)
        } else if self.hi < 0.0 {
            Some(-self.hi)
        } else {
            None
        }
    }

    pub fn abs_upper(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    /// Encloses the distance to the nearest integer. The result is exact
    /// up to endpoint padding whenever the interval lies within one unit.
    pub fn dist_to_nearest_int(&self) -> Interval {
        if self.width() >= 0.5 {
            // Wide intervals may contain an integer; nothing better than [0, 1/2].
            return Interval::new(0.0, 0.5);
        }
        let m = self.midpoint().round();
        let shifted = self.add(&Interval::point(-m));
        // shifted is within (-1, 1); distance candidates from both endpoints
        let d_lo = shifted.lo.abs().min(shifted.hi.abs());
        let d_hi = shifted.lo.abs().max(shifted.hi.abs());
        if shifted.contains_zero() {
            Interval::pad(0.0, d_hi.min(0.5)).clamp_nonneg()
        } else {
            Interval::pad(d_lo, d_hi.min(0.5)).clamp_nonneg()
        }
    }

    fn clamp_nonneg(self) -> Interval {
        Interval {
            lo: self.lo.max(0.0),
            hi: self.hi.max(0.0),
        }
    }
}
