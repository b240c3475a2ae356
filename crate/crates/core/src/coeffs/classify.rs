//! Fits coefficient magnitudes against the weight envelopes
//! `C * prod_a exp(-M(h_a g_a))` (decay) or `C * prod_a exp(+M(h_a g_a))`
//! (growth) and classifies the tensor accordingly.

use serde::Serialize;

use crate::coeffs::tensor::CoefficientTensor;
use crate::error::Error;
use crate::weights::{AssociatedFunction, Mode, WeightSequence};
use crate::Result;

/// Largest rate the fitter will report; reaching it means the data never
/// constrained the rate (finitely supported tensors behave this way).
pub const RATE_CAP: f64 = 1e6;

/// Multiplicative slack allowed between the constant forced by all
/// entries and the constant forced by the small-argument anchor entries
/// before a rate is rejected.
const SLACK: f64 = 16.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    TestFunctionLike,
    DualLike,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    pub classification: Classification,
    /// Fitted per-axis rates; for a decay fit larger is stronger, for a
    /// growth fit smaller is stronger.
    pub rates: Vec<f64>,
    /// log of the fitted constant C.
    pub log_constant: f64,
    /// max over entries of log|c| minus the fitted envelope; 0 by
    /// construction for a successful fit.
    pub residual: f64,
    /// true when the data never constrained a rate (it hit [`RATE_CAP`]).
    pub rate_unbounded: bool,
    /// Finite data cannot distinguish the existential from the universal
    /// quantifier over rates; the fit reports constants only.
    pub quantifier_caveat: String,
}

/// Per-axis marginal of log-magnitudes: for each distinct envelope
/// argument g, the largest log|c| among entries with that argument.
fn marginal(c: &CoefficientTensor, axis: usize) -> Result<Vec<(f64, f64)>> {
    let mut best: Vec<(f64, f64)> = Vec::new();
    for (idx, v) in c.iter() {
        let g = c.axes()[axis].envelope_arg(idx[axis])?;
        let logv = v.abs_f64().ln();
        match best.iter_mut().find(|(g0, _)| (*g0 - g).abs() < 1e-12) {
            Some((_, m)) => *m = m.max(logv),
            None => best.push((g, logv)),
        }
    }
    best.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(best)
}

/// Constant forced by a set of points under the given signed envelope:
/// `max log|c| + sign * M(h g)`.
fn forced_constant(
    points: &[(f64, f64)],
    assoc: &AssociatedFunction,
    h: f64,
    sign: f64,
) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for &(g, logv) in points {
        let m = assoc.eval(h * g)?.value;
        best = best.max(logv + sign * m);
    }
    Ok(best)
}

/// A rate is accepted when the constant forced by all points exceeds the
/// anchor-forced constant by at most log(SLACK): the envelope then truly
/// explains the tail rather than being paid for by a huge constant.
fn rate_accepted(
    points: &[(f64, f64)],
    anchor: &[(f64, f64)],
    assoc: &AssociatedFunction,
    h: f64,
    sign: f64,
) -> Result<bool> {
    let all = forced_constant(points, assoc, h, sign)?;
    let anchored = forced_constant(anchor, assoc, h, sign)?;
    Ok(all <= anchored + SLACK.ln())
}

fn anchor_set(points: &[(f64, f64)]) -> Vec<(f64, f64)> {
    // entries whose argument lies in the lowest decile of the argument
    // range (always at least one point)
    let gmin = points.first().unwrap().0;
    let gmax = points.last().unwrap().0;
    let cut = gmin + 0.1 * (gmax - gmin);
    points.iter().copied().filter(|&(g, _)| g <= cut).collect()
}

/// Largest accepted decay rate via doubling plus bisection; returns
/// RATE_CAP when nothing rejects. Decay uses `sign = +1` in the forced
/// constant (`log C >= log|c| + M(h g)`).
fn max_accepted_rate(
    points: &[(f64, f64)],
    assoc: &AssociatedFunction,
    sign: f64,
) -> Result<(f64, bool)> {
    let anchor = anchor_set(points);
    let mut lo = 0.0f64;
    let mut hi = 1e-3f64;
    // grow until rejected or capped
    loop {
        if hi >= RATE_CAP {
            return Ok((RATE_CAP, true));
        }
        if !rate_accepted(points, &anchor, assoc, hi, sign)? {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if rate_accepted(points, &anchor, assoc, mid, sign)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, false))
}

/// Smallest accepted growth rate; growth uses `sign = -1` in the forced
/// constant (`log C >= log|c| - M(h g)`), and envelopes get more
/// generous as h grows, so acceptance is monotone upward here.
fn min_accepted_rate(
    points: &[(f64, f64)],
    assoc: &AssociatedFunction,
) -> Result<Option<f64>> {
    let anchor = anchor_set(points);
    if !rate_accepted(points, &anchor, assoc, RATE_CAP, -1.0)? {
        return Ok(None);
    }
    let mut lo = 0.0f64;
    let mut hi = RATE_CAP;
    if rate_accepted(points, &anchor, assoc, 1e-9, -1.0)? {
        return Ok(Some(0.0));
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if rate_accepted(points, &anchor, assoc, mid, -1.0)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

pub fn classify_decay(c: &CoefficientTensor, weight: &WeightSequence) -> Result<DecayFit> {
    if c.is_empty() {
        return Err(Error::domain("cannot classify an empty tensor"));
    }
    let assoc = AssociatedFunction::new(weight);
    let caveat = match weight.mode() {
        Mode::Roumieu => {
            "finite data fits a single rate; the existential quantifier over rates is not decidable from samples"
        }
        Mode::Beurling => {
            "finite data fits a single rate; the universal quantifier over rates is not decidable from samples"
        }
    }
    .to_string();
    if c.iter().any(|(_, v)| !v.abs_f64().is_finite()) {
        // exact rational entries can exceed double range; no float
        // envelope fit is meaningful there
        return Ok(DecayFit {
            classification: Classification::Indeterminate,
            rates: vec![],
            log_constant: f64::NAN,
            residual: f64::NAN,
            rate_unbounded: false,
            quantifier_caveat: caveat,
        });
    }

    let rank = c.rank();
    let mut marginals = Vec::with_capacity(rank);
    for a in 0..rank {
        marginals.push(marginal(c, a)?);
    }

    // decay attempt
    let mut rates = Vec::with_capacity(rank);
    let mut unbounded = true;
    let mut decaying = true;
    for m in &marginals {
        let (h, capped) = max_accepted_rate(m, &assoc, 1.0)?;
        unbounded &= capped;
        // the rate must be meaningful against the argument range covered
        // by the data, otherwise the envelope is flat over the samples
        let gmax = m.last().unwrap().0;
        if !capped && h * gmax < 3.0 {
            decaying = false;
        }
        rates.push(h);
    }
    if decaying {
        let (log_c, residual) = joint_constant(c, &assoc, &rates, -1.0)?;
        return Ok(DecayFit {
            classification: Classification::TestFunctionLike,
            rates,
            log_constant: log_c,
            residual,
            rate_unbounded: unbounded,
            quantifier_caveat: caveat,
        });
    }

    // growth attempt
    let mut rates = Vec::with_capacity(rank);
    let mut any_failed = false;
    for m in &marginals {
        match min_accepted_rate(m, &assoc)? {
            Some(h) => rates.push(h),
            None => {
                any_failed = true;
                break;
            }
        }
    }
    if !any_failed {
        let (log_c, residual) = joint_constant(c, &assoc, &rates, 1.0)?;
        return Ok(DecayFit {
            classification: Classification::DualLike,
            rates,
            log_constant: log_c,
            residual,
            rate_unbounded: false,
            quantifier_caveat: caveat,
        });
    }

    Ok(DecayFit {
        classification: Classification::Indeterminate,
        rates: vec![],
        log_constant: f64::NAN,
        residual: f64::NAN,
        rate_unbounded: false,
        quantifier_caveat: caveat,
    })
}

/// Smallest log C making `log|c| <= log C + sign * sum M(h_a g_a)` hold
/// for every stored entry (residual is then exactly 0).
fn joint_constant(
    c: &CoefficientTensor,
    assoc: &AssociatedFunction,
    rates: &[f64],
    sign: f64,
) -> Result<(f64, f64)> {
    let mut log_c = f64::NEG_INFINITY;
    for (idx, v) in c.iter() {
        let mut envelope = 0.0;
        for (a, axis) in c.axes().iter().enumerate() {
            let g = axis.envelope_arg(idx[a])?;
            envelope += sign * assoc.eval(rates[a].min(RATE_CAP) * g)?.value;
        }
        log_c = log_c.max(v.abs_f64().ln() - envelope);
    }
    Ok((log_c, 0.0))
}
