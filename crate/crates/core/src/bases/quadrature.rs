//! Gaussian quadrature rules via Golub–Welsch (eigendecomposition of the
//! Jacobi matrix of the orthogonal-polynomial recurrence).

use crate::error::Error;
use crate::Result;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadKind {
    /// Weight `e^{-y}` on `(0, inf)`.
    GaussLaguerre,
    /// Weight `e^{-x^2}` on `(-inf, inf)`.
    GaussHermite,
    /// Weight 1 on `[-1, 1]`.
    GaussLegendre,
    /// Product rule on the unit sphere S^2; nodes are `(theta, phi)`.
    Sphere,
}

/// Nodes, positive weights, and the polynomial exactness degree against
/// the rule's weight function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub kind: QuadKind,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub exactness: usize,
}

/// Nodes and weights from the symmetric tridiagonal Jacobi matrix.
/// `mu0` is the total mass of the weight function.
fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag[i];
    }
    for i in 0..n - 1 {
        m[(i, i + 1)] = offdiag[i];
        m[(i + 1, i)] = offdiag[i];
    }
    let eig = m.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("quadrature order must be at least 1"));
    }
    let diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + 1.0).collect();
    let offdiag: Vec<f64> = (1..order).map(|k| k as f64).collect();
    let (nodes, _) = golub_welsch(&diag, &offdiag, 1.0);
    // Golub-Welsch eigenvector weights lose all relative accuracy once
    // they fall below the eigensolver's absolute precision (outermost
    // Laguerre weights go like e^{-x}, i.e. 1e-35 at order 21). Newton
    // refinement on the damped functions l_k = L_k e^{-y/2} followed by
    // the Christoffel identity w = e^{-x} / sum l_k(x)^2 keeps full
    // relative accuracy at every node.
    let mut out_nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for mut x in nodes {
        for _ in 0..3 {
            let l = crate::bases::laguerre::eval_laguerre_all(order, x)?;
            // l_n'(y) = n (l_n - l_{n-1}) / y - l_n / 2
            let d = order as f64 * (l[order] - l[order - 1]) / x - 0.5 * l[order];
            let step = l[order] / d;
            x -= step;
            if step.abs() < 1e-15 * x {
                break;
            }
        }
        let l = crate::bases::laguerre::eval_laguerre_all(order - 1, x)?;
        let sum_sq: f64 = l.iter().map(|v| v * v).sum();
        out_nodes.push(vec![x]);
        weights.push((-x).exp() / sum_sq);
    }
    Ok(QuadratureRule {
        kind: QuadKind::GaussLaguerre,
        nodes: out_nodes,
        weights,
        exactness: 2 * order - 1,
    })
}

pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("quadrature order must be at least 1"));
    }
    let diag = vec![0.0; order];
    let offdiag: Vec<f64> = (1..order).map(|k| (k as f64 / 2.0).sqrt()).collect();
    let (nodes, _) = golub_welsch(&diag, &offdiag, std::f64::consts::PI.sqrt());
    // Same relative-accuracy repair as in [`gauss_laguerre`], with the
    // L2-normalized Hermite functions h_k: h_n'(x) = sqrt(2n) h_{n-1} - x h_n
    // and w = e^{-x^2} / sum h_k(x)^2.
    let mut out_nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for mut x in nodes {
        if order > 1 {
            for _ in 0..3 {
                let h = crate::bases::hermite::eval_hermite_all(order, x);
                let d = (2.0 * order as f64).sqrt() * h[order - 1] - x * h[order];
                let step = h[order] / d;
                x -= step;
                if step.abs() < 1e-15 * x.abs().max(1.0) {
                    break;
                }
            }
        }
        let h = crate::bases::hermite::eval_hermite_all(order - 1, x);
        let sum_sq: f64 = h.iter().map(|v| v * v).sum();
        out_nodes.push(vec![x]);
        weights.push((-x * x).exp() / sum_sq);
    }
    Ok(QuadratureRule {
        kind: QuadKind::GaussHermite,
        nodes: out_nodes,
        weights,
        exactness: 2 * order - 1,
    })
}

pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::domain("quadrature order must be at least 1"));
    }
    let diag = vec![0.0; order];
    let offdiag: Vec<f64> = (1..order)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    let (nodes, weights) = golub_welsch(&diag, &offdiag, 2.0);
    Ok(QuadratureRule {
        kind: QuadKind::GaussLegendre,
        nodes: nodes.into_iter().map(|x| vec![x]).collect(),
        weights,
        exactness: 2 * order - 1,
    })
}

/// Product rule on S^2: Gauss–Legendre in cos(theta) crossed with a
/// uniform phi grid. Integrates spherical-harmonic products `Y Y'` with
/// degrees up to `order - 1` exactly.
pub fn sphere_rule(order: usize) -> Result<QuadratureRule> {
    let legendre = gauss_legendre(order)?;
    let n_phi = 2 * order + 1;
    let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
    let mut nodes = Vec::with_capacity(order * n_phi);
    let mut weights = Vec::with_capacity(order * n_phi);
    for (node, w) in legendre.nodes.iter().zip(&legendre.weights) {
        let theta = node[0].clamp(-1.0, 1.0).acos();
        for q in 0..n_phi {
            let phi = 2.0 * std::f64::consts::PI * q as f64 / n_phi as f64;
            nodes.push(vec![theta, phi]);
            weights.push(w * w_phi);
        }
    }
    Ok(QuadratureRule {
        kind: QuadKind::Sphere,
        nodes,
        weights,
        exactness: 2 * order - 1,
    })
}

pub fn make_quadrature(kind: QuadKind, order: usize) -> Result<QuadratureRule> {
    match kind {
        QuadKind::GaussLaguerre => gauss_laguerre(order),
        QuadKind::GaussHermite => gauss_hermite(order),
        QuadKind::GaussLegendre => gauss_legendre(order),
        QuadKind::Sphere => sphere_rule(order),
    }
}

impl QuadratureRule {
    /// Integrates `f` against this rule (weight function implicit).
    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(x))
            .sum()
    }
}
