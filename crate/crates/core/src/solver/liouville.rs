//! Small-divisor diagnostics for couples of eigenvalue streams.
//!
//! For a coefficient pair `(c2, c3)` the quantity of interest is the
//! distance from `c2 * nu_p^d + c3 * mu_i` to the nearest integer,
//! compared against weight envelopes `exp(-M(eps * arg))`. All distances
//! are computed exactly in Q(sqrt 2); only the final report is floating
//! point.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::Error;
use crate::rational::{format_rat, Rat};
use crate::solver::operator::CoeffValue;
use crate::weights::{AssociatedFunction, WeightSequence};
use crate::Result;

/// Argument fed to the weight envelope on the first (level) axis. The
/// natural choices disagree by a root: the raw level `p`, or `p^{1/n}`
/// matching the coordinate growth of an n-dimensional level. Both are
/// supported; reports record which one was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelArg {
    Raw,
    Root,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiouvilleRow {
    pub eps: f64,
    /// Largest constant with `dist >= c_eps * envelope` on the box; 0
    /// when a distance degenerates to an exact integer.
    pub c_eps: f64,
    pub argmin: (u64, u64),
    pub min_dist: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiouvilleReport {
    pub level_arg: LevelArg,
    pub level_dim: usize,
    pub rows: Vec<LiouvilleRow>,
    /// Same grid evaluated on nested sub-boxes (quarter, half, full) to
    /// expose the trend of `c_eps` as the box grows; a collapsing
    /// constant is the numerical signature of a Liouville-type pair.
    pub nested: Vec<NestedBox>,
    /// Number of box points whose combination is exactly an integer.
    pub degenerate_points: usize,
    /// All statements hold within the scanned box only.
    pub scope: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NestedBox {
    pub pmax: u64,
    pub imax: u64,
    pub rows: Vec<LiouvilleRow>,
}

struct Grid {
    // (p, i, log_dist or -inf, exact-integer flag)
    points: Vec<(u64, u64, f64, bool)>,
}

fn build_grid(c2: &CoeffValue, d: u32, c3: &CoeffValue, pmax: u64, imax: u64, level_dim: usize) -> Result<Grid> {
    if level_dim == 0 {
        return Err(Error::domain("level dimension must be positive"));
    }
    let mut points = Vec::with_capacity(((pmax + 1) * (imax + 1)) as usize);
    let q2 = c2.as_quad();
    let q3 = c3.as_quad();
    for p in 0..=pmax {
        let nu_pow = Rat::from_integer(BigInt::from(p)).pow(d as i32);
        let lhs = q2.scale(&nu_pow);
        for i in 0..=imax {
            let mu = Rat::from_integer(BigInt::from(2 * i + 1));
            let x = lhs.add(&q3.scale(&mu));
            let dist = x.dist_to_nearest_int();
            if dist.is_zero() {
                points.push((p, i, f64::NEG_INFINITY, true));
            } else {
                points.push((p, i, dist.abs_lower_f64().ln(), false));
            }
        }
    }
    Ok(Grid { points })
}

fn rows_for_box(
    grid: &Grid,
    assoc: &AssociatedFunction,
    eps_grid: &[f64],
    level_arg: LevelArg,
    level_dim: usize,
    pmax: u64,
    imax: u64,
) -> Result<(Vec<LiouvilleRow>, usize)> {
    let mut rows = Vec::new();
    let mut degenerate = 0usize;
    for &eps in eps_grid {
        if !(eps > 0.0) {
            return Err(Error::domain("eps grid entries must be positive"));
        }
        let mut best = f64::INFINITY;
        let mut argmin = (0u64, 0u64);
        let mut min_dist = f64::INFINITY;
        let mut degenerate_here = 0usize;
        for &(p, i, log_dist, exact_int) in &grid.points {
            if p > pmax || i > imax {
                continue;
            }
            let parg = match level_arg {
                LevelArg::Raw => p as f64,
                LevelArg::Root => (p as f64).powf(1.0 / level_dim as f64),
            };
            let mu = (2 * i + 1) as f64;
            let env_log =
                -assoc.eval(eps * parg)?.value - assoc.eval(eps * mu.sqrt())?.value;
            if exact_int {
                degenerate_here += 1;
                best = f64::NEG_INFINITY;
                argmin = (p, i);
                min_dist = f64::NEG_INFINITY;
                continue;
            }
            let log_c = log_dist - env_log;
            if log_c < best {
                best = log_c;
                argmin = (p, i);
            }
            if log_dist < min_dist {
                min_dist = log_dist;
            }
        }
        degenerate = degenerate_here; // same count for every eps
        rows.push(LiouvilleRow {
            eps,
            c_eps: if best == f64::NEG_INFINITY {
                0.0
            } else {
                best.exp()
            },
            argmin,
            min_dist: if min_dist == f64::INFINITY {
                f64::NAN
            } else {
                min_dist.exp()
            },
        });
    }
    Ok((rows, degenerate))
}

/// Scans `dist(c2 p^d + c3 (2i+1), Z)` over the box `p <= pmax`,
/// `i <= imax` against the envelope `exp(-M(eps parg) - M(eps sqrt(mu)))`
/// for each epsilon, and reports the per-epsilon constant together with
/// the trend over nested boxes.
#[allow(clippy::too_many_arguments)]
pub fn liouville_scan(
    c2: &CoeffValue,
    d: u32,
    c3: &CoeffValue,
    weight: &WeightSequence,
    eps_grid: &[f64],
    pmax: u64,
    imax: u64,
    level_dim: usize,
    level_arg: LevelArg,
) -> Result<LiouvilleReport> {
    if eps_grid.is_empty() {
        return Err(Error::domain("eps grid must be nonempty"));
    }
    let assoc = AssociatedFunction::new(weight);
    let grid = build_grid(c2, d, c3, pmax, imax, level_dim)?;

    let mut nested = Vec::new();
    let mut degenerate_points = 0usize;
    let mut full_rows = Vec::new();
    for frac in [4u64, 2, 1] {
        let (pm, im) = (pmax / frac, imax / frac);
        let (rows, degen) = rows_for_box(&grid, &assoc, eps_grid, level_arg, level_dim, pm, im)?;
        if frac == 1 {
            degenerate_points = degen;
            full_rows = rows.clone();
        }
        nested.push(NestedBox {
            pmax: pm,
            imax: im,
            rows,
        });
    }

    Ok(LiouvilleReport {
        level_arg,
        level_dim,
        rows: full_rows,
        nested,
        degenerate_points,
        scope: format!("within the scanned box p <= {pmax}, i <= {imax}"),
    })
}

/// CSV rendering of the full-box rows: eps, c_eps, argmin_p, argmin_i,
/// min_dist.
pub fn report_csv(report: &LiouvilleReport) -> String {
    let mut out = String::from("eps,c_eps,argmin_p,argmin_i,min_dist\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{:e},{},{},{:e}\n",
            row.eps, row.c_eps, row.argmin.0, row.argmin.1, row.min_dist
        ));
    }
    out
}

/// Builds a rational `c3` that is badly approximable in the opposite
/// sense: along the chosen `i` subsequence, `c3 * (2i+1)` lands within
/// roughly `exp(-M(mu_i))` of an integer, which drives the scan constant
/// `c_eps` toward zero as the box grows.
///
/// Targets must be strictly increasing and sparse enough that later
/// corrections do not destroy earlier hits; each step perturbs `c3` by at
/// most `1 / mu` so targets spaced by factors of `mu / tolerance` are
/// safe. Weight envelopes grow so fast that only two or three usable
/// targets fit below u64 indices; the returned value still exhibits the
/// collapsing-constant trend on nested boxes.
pub fn adversarial_c3(weight: &WeightSequence, targets: &[u64]) -> Result<Rat> {
    if targets.is_empty() {
        return Err(Error::domain("need at least one target index"));
    }
    if targets.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("target indices must be strictly increasing"));
    }
    let assoc = AssociatedFunction::new(weight);
    // Start at an innocuous non-integer base point.
    let mut c3 = Rat::new(BigInt::from(1), BigInt::from(3));
    for &i in targets {
        let mu = Rat::from_integer(BigInt::from(2 * i + 1));
        let x = &c3 * &mu;
        // Nearest integer to x.
        let tau = {
            let twice = &x * Rat::from_integer(BigInt::from(2));
            let num = twice.numer() + twice.denom();
            let den = twice.denom() * BigInt::from(2);
            Rat::from_integer(num.div_floor(&den))
        };
        // Target offset around exp(-M(mu))/10, built as an exact power of
        // ten so the big denominators stay manageable.
        let m = assoc.eval(mu.to_f64().unwrap_or(f64::MAX))?.value;
        let k = (m / std::f64::consts::LN_10).ceil() as u32 + 1;
        let t = Rat::new(BigInt::one(), BigInt::from(10).pow(k));
        c3 = (&tau + &t) / &mu;
    }
    Ok(c3)
}

/// Exact distance data for one target of [`adversarial_c3`], for report
/// text: `(mu, dist)` as rational strings.
pub fn target_distance(c3: &Rat, i: u64) -> (String, String) {
    let mu = Rat::from_integer(BigInt::from(2 * i + 1));
    let x = c3 * &mu;
    let dist = crate::rational::dist_to_nearest_int(&x);
    (format_rat(&mu), format_rat(&dist))
}

/// Growth-condition assessment for expansion coefficients, phrased as
/// the two one-sided conditions used for solvability statements:
/// `g1` (at most dual-type growth) and `g2` (test-function-type decay).
#[derive(Clone, Debug, Serialize)]
pub struct GrowthAssessment {
    pub g1_holds: bool,
    pub g2_holds: bool,
    pub classification: crate::coeffs::Classification,
    pub quantifier_caveat: String,
}

pub fn assess_growth_conditions(
    c: &crate::coeffs::CoefficientTensor,
    weight: &WeightSequence,
) -> Result<GrowthAssessment> {
    let fit = crate::coeffs::classify_decay(c, weight)?;
    use crate::coeffs::Classification::*;
    Ok(GrowthAssessment {
        g1_holds: matches!(fit.classification, TestFunctionLike | DualLike),
        g2_holds: fit.classification == TestFunctionLike,
        classification: fit.classification,
        quantifier_caveat: fit.quantifier_caveat,
    })
}
