//! Weight sequences `M_p`, prefix checks of their structural conditions,
//! and the associated function `M(t) = sup_p log+ t^p / M_p`.
//!
//! Values are kept in log scale internally; `M_p` for factorial-type
//! generators overflows `f64` long before the horizons the condition
//! checks and envelope evaluations need.

use crate::error::Error;
use crate::Result;
use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Roumieu,
    Beurling,
}

/// How the sequence is produced. Table sequences cannot be extended past
/// their data; the other two can.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// `M_p = p!^s`, `s > 0`.
    Gevrey { s: f64 },
    /// Explicit positive values, `M_0 = M_1 = 1` enforced.
    Table { values: Vec<f64> },
    /// `M_p = p! / a^p`, `a > 0`. Violates `M_1 = 1` for `a != 1`, so it
    /// is only admitted in diagnostic mode.
    FactorialScaled { a: f64 },
}

#[derive(Clone, Debug)]
pub struct WeightSequence {
    generator: Generator,
    horizon: usize,
    mode: Mode,
    diagnostic: bool,
    log_m: Vec<f64>,
}

pub fn make_weight(generator: Generator, horizon: usize, mode: Mode) -> Result<WeightSequence> {
    make_weight_impl(generator, horizon, mode, false)
}

/// Diagnostic construction: admits generators that break the `M_1 = 1`
/// invariant (used to exhibit condition failures).
pub fn make_weight_diagnostic(
    generator: Generator,
    horizon: usize,
    mode: Mode,
) -> Result<WeightSequence> {
    make_weight_impl(generator, horizon, mode, true)
}

fn make_weight_impl(
    generator: Generator,
    horizon: usize,
    mode: Mode,
    diagnostic: bool,
) -> Result<WeightSequence> {
    if horizon < 2 {
        return Err(Error::domain("horizon must be at least 2"));
    }
    match &generator {
        Generator::Gevrey { s } => {
            if !(*s > 0.0) || !s.is_finite() {
                return Err(Error::domain("gevrey exponent must be positive and finite"));
            }
        }
        Generator::FactorialScaled { a } => {
            if !(*a > 0.0) || !a.is_finite() {
                return Err(Error::domain("factorial_scaled parameter must be positive"));
            }
            if *a != 1.0 && !diagnostic {
                return Err(Error::domain(
                    "factorial_scaled breaks M_1 = 1; construct it in diagnostic mode",
                ));
            }
        }
        Generator::Table { values } => {
            if values.len() < horizon + 1 {
                return Err(Error::domain(format!(
                    "table holds {} values but horizon {} needs {}",
                    values.len(),
                    horizon,
                    horizon + 1
                )));
            }
            for (p, v) in values.iter().enumerate() {
                if !(*v > 0.0) || !v.is_finite() {
                    return Err(Error::domain(format!(
                        "table value M_{p} = {v} is not strictly positive and finite"
                    )));
                }
            }
            if !diagnostic && (values[0] != 1.0 || values[1] != 1.0) {
                return Err(Error::domain("table must satisfy M_0 = M_1 = 1"));
            }
            if diagnostic && values[0] != 1.0 {
                return Err(Error::domain("table must satisfy M_0 = 1"));
            }
        }
    }
    let mut log_m = Vec::with_capacity(horizon + 1);
    extend_log_table(&generator, &mut log_m, horizon);
    Ok(WeightSequence {
        generator,
        horizon,
        mode,
        diagnostic,
        log_m,
    })
}

/// Appends `log M_p` entries up to index `target` (inclusive).
fn extend_log_table(generator: &Generator, log_m: &mut Vec<f64>, target: usize) {
    if log_m.is_empty() {
        log_m.push(0.0); // M_0 = 1 for every accepted generator
    }
    let mut logfact = match generator {
        Generator::Gevrey { s } => {
            if log_m.len() > 1 {
                log_m[log_m.len() - 1] / s
            } else {
                0.0
            }
        }
        Generator::FactorialScaled { a } => {
            let p = log_m.len() - 1;
            log_m[p] + p as f64 * a.ln()
        }
        Generator::Table { .. } => 0.0,
    };
    for p in log_m.len()..=target {
        let v = match generator {
            Generator::Gevrey { s } => {
                logfact += (p as f64).ln();
                s * logfact
            }
            Generator::FactorialScaled { a } => {
                logfact += (p as f64).ln();
                logfact - p as f64 * a.ln()
            }
            Generator::Table { values } => {
                if p < values.len() {
                    values[p].ln()
                } else {
                    return; // tables stop at their data
                }
            }
        };
        log_m.push(v);
    }
}

impl WeightSequence {
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn is_diagnostic(&self) -> bool {
        self.diagnostic
    }

    /// `log M_p` for `p <= horizon`.
    pub fn log_value(&self, p: usize) -> f64 {
        self.log_m[p]
    }

    /// `M_p` as `f64`; may overflow to infinity for large factorial-type p.
    pub fn value(&self, p: usize) -> f64 {
        self.log_m[p].exp()
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_m
    }

    fn extendable(&self) -> bool {
        !matches!(self.generator, Generator::Table { .. })
    }

    /// Checks whether log-convexity (M.1) holds on the materialized prefix.
    fn log_convex_on_prefix(&self) -> bool {
        (1..self.log_m.len() - 1)
            .all(|p| 2.0 * self.log_m[p] <= self.log_m[p - 1] + self.log_m[p + 1] + 1e-12)
    }

    /// Serializable snapshot with values rendered in scientific notation
    /// from the log table (finite even where `M_p` overflows `f64`).
    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<String> = self.log_m.iter().map(|&l| sci_from_log(l)).collect();
        serde_json::json!({
            "generator": self.generator,
            "horizon": self.horizon,
            "mode": self.mode,
            "diagnostic": self.diagnostic,
            "values": values,
        })
    }
}

/// Renders `exp(log_v)` as a decimal string without overflowing.
fn sci_from_log(log_v: f64) -> String {
    let l10 = log_v / std::f64::consts::LN_10;
    if l10.abs() < 15.0 {
        format!("{:.12e}", log_v.exp())
    } else {
        let e = l10.floor();
        let mant = 10f64.powf(l10 - e);
        format!("{mant:.12}e{e:.0}")
    }
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

/// Per-condition outcome on the materialized prefix. Asymptotic
/// quantifiers cannot be decided from finite data, so a holding verdict
/// always means "on the prefix up to the horizon".
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    HoldsOnPrefix,
    FailsAt { index: usize, lhs: f64, rhs: f64 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsOnPrefix)
    }
    pub fn fails(&self) -> bool {
        matches!(self, Verdict::FailsAt { .. })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeometricFit {
    /// Multiplicative constant (A, C_l, A_0 ...).
    pub constant: f64,
    /// Geometric base (H, l, H_0 ...).
    pub base: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub horizon: usize,
    pub mode: Mode,
    pub m1: Verdict,
    pub m2: Verdict,
    pub m2_fit: GeometricFit,
    pub m0: Verdict,
    /// Roumieu: single fitted (l, C_l); Beurling: fitted C_l per grid l.
    pub m0_fits: Vec<GeometricFit>,
    pub m0s: Verdict,
    pub m0s_fit: GeometricFit,
    pub m00: Verdict,
    pub m00_m0: Option<usize>,
}

pub fn check_conditions(w: &WeightSequence) -> Result<ConditionReport> {
    let horizon = w.horizon;
    if horizon < 4 {
        return Err(Error::domain("condition checks need horizon >= 4"));
    }
    let lm = &w.log_m;
    let n = lm.len() - 1; // largest materialized p

    // (M.1): M_p^2 <= M_{p-1} M_{p+1}, exact on the prefix.
    let mut m1 = Verdict::HoldsOnPrefix;
    for p in 1..n {
        if 2.0 * lm[p] > lm[p - 1] + lm[p + 1] + 1e-12 {
            m1 = Verdict::FailsAt {
                index: p,
                lhs: (2.0 * lm[p]).exp(),
                rhs: (lm[p - 1] + lm[p + 1]).exp(),
            };
            break;
        }
    }

    // (M.2): M_p <= A H^p min_q M_q M_{p-q}. Constants fitted by slope:
    // log H = max_p r_p / p, then minimal log A. A literal "smallest
    // feasible H" is always 1 on a finite prefix, which carries no
    // information, so the slope fit is used for the witnesses.
    let mut r = vec![0.0f64; n + 1];
    for p in 1..=n {
        let min_split = (1..=p)
            .map(|q| lm[q] + lm[p - q])
            .fold(f64::INFINITY, f64::min);
        r[p] = lm[p] - min_split;
    }
    let log_h = (1..=n)
        .map(|p| r[p] / p as f64)
        .fold(0.0f64, f64::max);
    let log_a = (1..=n)
        .map(|p| r[p] - p as f64 * log_h)
        .fold(0.0f64, f64::max);
    let m2_fit = GeometricFit {
        constant: log_a.exp(),
        base: log_h.exp(),
    };
    // on a prefix the fit always exists, so (M.2) never fails outright
    let m2 = Verdict::HoldsOnPrefix;

    // log p! table
    let mut logfact = vec![0.0f64; n + 1];
    for p in 1..=n {
        logfact[p] = logfact[p - 1] + (p as f64).ln();
    }

    // (M.0): sqrt(p!) <= C_l l^p M_p
    let d: Vec<f64> = (0..=n).map(|p| 0.5 * logfact[p] - lm[p]).collect();
    let m0_fits = match w.mode {
        Mode::Roumieu => {
            let log_l = (1..=n).map(|p| d[p] / p as f64).fold(0.0f64, f64::max);
            let log_c = (0..=n)
                .map(|p| d[p] - p as f64 * log_l)
                .fold(0.0f64, f64::max);
            vec![GeometricFit {
                constant: log_c.exp(),
                base: log_l.exp(),
            }]
        }
        Mode::Beurling => [0.25, 0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&l| {
                let log_c = (0..=n)
                    .map(|p| d[p] - p as f64 * (l as f64).ln())
                    .fold(0.0f64, f64::max);
                GeometricFit {
                    constant: log_c.exp(),
                    base: l,
                }
            })
            .collect(),
    };
    let m0 = Verdict::HoldsOnPrefix; // always satisfiable on a prefix; fits carry the content

    // (M.0^s): p! <= A_0 H_0^p M_p, H_0 > 1
    let e: Vec<f64> = (0..=n).map(|p| logfact[p] - lm[p]).collect();
    let log_h0 = (1..=n)
        .map(|p| e[p] / p as f64)
        .fold(f64::MIN_POSITIVE, f64::max)
        .max(1e-12);
    let log_a0 = (0..=n)
        .map(|p| e[p] - p as f64 * log_h0)
        .fold(0.0f64, f64::max);
    let m0s_fit = GeometricFit {
        constant: log_a0.exp(),
        base: log_h0.exp(),
    };
    let m0s = Verdict::HoldsOnPrefix;

    // (M.00): exists m0 such that M_p >= M_m m^{p-m} for all m0 < m < p <= n.
    // row_ok[m] <=> the inequality holds for every p > m; the smallest
    // admissible m0 is the largest m with a violating p.
    let tol = 1e-9;
    let mut worst: Option<(usize, usize)> = None; // (m, p) with largest m
    let mut last_bad_m: usize = 0;
    for m in 1..n {
        let lnm = (m as f64).ln();
        for p in (m + 1)..=n {
            if lm[p] + tol < lm[m] + (p - m) as f64 * lnm {
                last_bad_m = m;
                worst = Some((m, p));
                break;
            }
        }
    }
    let (m00, m00_m0) = if last_bad_m <= horizon / 2 {
        (Verdict::HoldsOnPrefix, Some(last_bad_m.max(1)))
    } else {
        let (m, p) = worst.unwrap();
        (
            Verdict::FailsAt {
                index: p,
                lhs: lm[p].exp(),
                rhs: (lm[m] + (p - m) as f64 * (m as f64).ln()).exp(),
            },
            None,
        )
    };

    Ok(ConditionReport {
        horizon,
        mode: w.mode,
        m1,
        m2,
        m2_fit,
        m0,
        m0_fits,
        m0s,
        m0s_fit,
        m00,
        m00_m0,
    })
}

// ---------------------------------------------------------------------------
// Associated function
// ---------------------------------------------------------------------------

/// Result of an associated-function evaluation. `certified` is false when
/// the maximizing index hit the end of the materialized table, i.e. the
/// supremum is not attested strictly inside the prefix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssocValue {
    pub value: f64,
    pub certified: bool,
    pub argmax: usize,
}

/// Evaluator for `M(t)`, backed by a lazily extended log table.
///
/// Shared-state notes: the table and memo cache sit behind locks so the
/// evaluator can be used from concurrent readers.
pub struct AssociatedFunction {
    source: WeightSequence,
    table: RwLock<Vec<f64>>,
    cache: RwLock<BTreeMap<OrderedFloat<f64>, AssocValue>>,
    auto_extend: bool,
    max_len: usize,
    log_convex: bool,
}

impl AssociatedFunction {
    pub fn new(source: &WeightSequence) -> Arc<Self> {
        let log_convex = source.log_convex_on_prefix();
        Arc::new(AssociatedFunction {
            source: source.clone(),
            table: RwLock::new(source.log_m.clone()),
            cache: RwLock::new(BTreeMap::new()),
            auto_extend: source.extendable(),
            max_len: 4_000_000,
            log_convex,
        })
    }

    pub fn without_auto_extension(source: &WeightSequence) -> Arc<Self> {
        let log_convex = source.log_convex_on_prefix();
        Arc::new(AssociatedFunction {
            source: source.clone(),
            table: RwLock::new(source.log_m.clone()),
            cache: RwLock::new(BTreeMap::new()),
            auto_extend: false,
            max_len: 4_000_000,
            log_convex,
        })
    }

    /// `M(t) = sup_p log+ t^p / M_p`.
    pub fn eval(&self, t: f64) -> Result<AssocValue> {
        if t < 0.0 || !t.is_finite() {
            return Err(Error::domain("associated function needs t >= 0"));
        }
        if t <= 1.0 {
            return Ok(AssocValue {
                value: 0.0,
                certified: true,
                argmax: 0,
            });
        }
        if let Some(v) = self.cache.read().unwrap().get(&OrderedFloat(t)) {
            return Ok(*v);
        }
        let mut result = self.eval_on_table(t);
        while !result.certified && self.auto_extend {
            let grown = {
                let mut tab = self.table.write().unwrap();
                let cur = tab.len();
                if cur >= self.max_len {
                    false
                } else {
                    let target = (cur * 2).min(self.max_len);
                    extend_log_table(&self.source.generator, &mut tab, target - 1);
                    tab.len() > cur
                }
            };
            if !grown {
                break;
            }
            result = self.eval_on_table(t);
        }
        self.cache
            .write()
            .unwrap()
            .insert(OrderedFloat(t), result);
        Ok(result)
    }

    fn eval_on_table(&self, t: f64) -> AssocValue {
        let tab = self.table.read().unwrap();
        let lnt = t.ln();
        let f = |p: usize| p as f64 * lnt - tab[p];
        let last = tab.len() - 1;
        let argmax = if self.log_convex {
            // f is concave in p; find the largest p with f(p+1) >= f(p).
            let (mut lo, mut hi) = (0usize, last);
            while lo < hi {
                let mid = (lo + hi) / 2;
                if f(mid + 1) >= f(mid) {
                    lo = mid + 1;
                } else {
                    hi = mid;
                }
            }
            lo
        } else {
            (0..=last)
                .max_by(|&a, &b| f(a).partial_cmp(&f(b)).unwrap())
                .unwrap()
        };
        AssocValue {
            value: f(argmax).max(0.0),
            certified: argmax < last,
            argmax,
        }
    }

    /// `exp(-M(h x))`, same certification semantics as `eval`.
    pub fn envelope(&self, h: f64, x: f64) -> Result<AssocValue> {
        if !(h > 0.0) {
            return Err(Error::domain("envelope scale h must be positive"));
        }
        if x < 0.0 {
            return Err(Error::domain("envelope argument x must be nonnegative"));
        }
        if x == 0.0 {
            return Ok(AssocValue {
                value: 1.0,
                certified: true,
                argmax: 0,
            });
        }
        let m = self.eval(h * x)?;
        Ok(AssocValue {
            value: (-m.value).exp(),
            certified: m.certified,
            argmax: m.argmax,
        })
    }

    pub fn source(&self) -> &WeightSequence {
        &self.source
    }
}
