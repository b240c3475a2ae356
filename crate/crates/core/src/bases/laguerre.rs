//! Orthonormal Laguerre functions `l_k(y) = L_k(y) e^{-y/2}` on `(0, inf)`.
//!
//! The standard Laguerre polynomials are already orthonormal against
//! `e^{-y}`, so the functions need no extra normalization. Evaluation runs
//! the three-term recurrence on the functions themselves.

use crate::error::Error;
use crate::Result;

/// `l_k(y)`, `y > 0`.
pub fn eval_laguerre(k: usize, y: f64) -> Result<f64> {
    Ok(*eval_laguerre_all(k, y)?.last().unwrap())
}

/// `[l_0(y), ..., l_kmax(y)]` in one recurrence pass.
pub fn eval_laguerre_all(kmax: usize, y: f64) -> Result<Vec<f64>> {
    if !(y > 0.0) {
        return Err(Error::domain("laguerre functions are defined for y > 0"));
    }
    let mut out = Vec::with_capacity(kmax + 1);
    let mut prev = (-y / 2.0).exp(); // l_0
    out.push(prev);
    if kmax == 0 {
        return Ok(out);
    }
    let mut cur = (1.0 - y) * prev; // l_1
    out.push(cur);
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - y) * cur - kf * prev) / (kf + 1.0);
        out.push(next);
        prev = cur;
        cur = next;
    }
    Ok(out)
}

/// Monomial coefficients of the Laguerre polynomial `L_k` (ascending
/// powers). Intended for the exact-differentiation eigenrelation checks;
/// coefficients stay well inside f64 for the degrees used there.
pub fn laguerre_poly_coeffs(k: usize) -> Vec<f64> {
    let mut prev = vec![1.0]; // L_0
    if k == 0 {
        return prev;
    }
    let mut cur = vec![1.0, -1.0]; // L_1
    for d in 1..k {
        let df = d as f64;
        // (d+1) L_{d+1} = (2d+1 - y) L_d - d L_{d-1}
        let mut next = vec![0.0; d + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i] += (2.0 * df + 1.0) * c;
            next[i + 1] -= c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= df * c;
        }
        for c in next.iter_mut() {
            *c /= df + 1.0;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Applies the Laguerre operator
/// `E = -(y d^2/dy^2 + d/dy - y/4 + 1/2)` to `p(y) e^{-y/2}` by exact
/// polynomial differentiation; returns the polynomial factor `q` of the
/// result `q(y) e^{-y/2}`. For `p = L_k` this must reproduce `k L_k`.
pub fn apply_laguerre_operator(p: &[f64]) -> Vec<f64> {
    let dp = poly_derivative(p);
    let d2p = poly_derivative(&dp);
    // E(p e^{-y/2}) = (y p' - y p'' - p') e^{-y/2}
    let mut q = vec![0.0; p.len().max(2)];
    for (i, &c) in dp.iter().enumerate() {
        q[i + 1] += c; // y p'
        q[i] -= c; // -p'
    }
    for (i, &c) in d2p.iter().enumerate() {
        q[i + 1] -= c; // -y p''
    }
    while q.len() > 1 && q.last() == Some(&0.0) {
        q.pop();
    }
    q
}

pub fn poly_derivative(p: &[f64]) -> Vec<f64> {
    if p.len() <= 1 {
        return vec![0.0];
    }
    (1..p.len()).map(|i| i as f64 * p[i]).collect()
}

pub fn poly_eval(p: &[f64], y: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * y + c)
}

/// Derivative of the coefficient vector of `f = sum c_k l_k` in the
/// `l_k` basis, using `l_k' = -l_0 - ... - l_{k-1} - l_k / 2` (exact,
/// lower-triangular).
pub fn derivative_in_coeff_space(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n];
    // suffix[j] = sum_{k > j} c_k
    let mut suffix = 0.0;
    for j in (0..n).rev() {
        out[j] = -suffix - coeffs[j] / 2.0;
        suffix += coeffs[j];
    }
    out
}

/// Coefficient vector of `y f` for `f = sum c_k l_k`, via the tridiagonal
/// action `y l_k = -k l_{k-1} + (2k+1) l_k - (k+1) l_{k+1}`. Output has
/// one extra slot.
pub fn multiply_by_y_in_coeff_space(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        if k > 0 {
            out[k - 1] -= k as f64 * c;
        }
        out[k] += (2 * k + 1) as f64 * c;
        out[k + 1] -= (k + 1) as f64 * c;
    }
    out
}
