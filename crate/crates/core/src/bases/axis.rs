//! Axis descriptors for product expansions.
//!
//! A tensor of expansion coefficients carries one axis per factor of the
//! underlying product basis. Each axis knows its eigenvalue sequence
//! (exact rationals), the argument fed to decay envelopes, and — for the
//! concrete bases — how to evaluate basis functions and integrate against
//! the right measure.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::bases::hermite::eval_hermite_all;
use crate::bases::laguerre::eval_laguerre_all;
use crate::bases::quadrature::{gauss_hermite, gauss_laguerre, sphere_rule, QuadratureRule};
use crate::bases::sphere::{eval_sph_harm, SphereIndexer};
use crate::error::Error;
use crate::indexing::{laguerre_nu, linear_to_multi};
use crate::rational::{parse_rat, Rat};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisAxis {
    /// Products of Laguerre functions in `dim` variables, graded-lex
    /// linearized; eigenvalues are the total degrees `nu_p`.
    Laguerre { dim: usize },
    /// Products of Hermite functions in `dim` variables; eigenvalues are
    /// the oscillator values `2|alpha| + dim`.
    Hermite { dim: usize },
    /// Spherical harmonics on the unit sphere in `R^ambient`,
    /// degree-major linearized; eigenvalues are `j (j + ambient - 2)`.
    Sphere { ambient: usize },
    /// Eigenvalue table supplied directly, with a growth order used for
    /// envelope arguments (`lambda_i ~ i^order`).
    Abstract {
        name: String,
        order: f64,
        eigenvalues: Vec<String>,
    },
}

impl BasisAxis {
    pub fn abstract_from_rats(name: &str, order: f64, eigenvalues: &[Rat]) -> Self {
        BasisAxis::Abstract {
            name: name.to_string(),
            order,
            eigenvalues: eigenvalues.iter().map(|r| r.to_string()).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            BasisAxis::Laguerre { dim } | BasisAxis::Hermite { dim } => {
                if *dim == 0 {
                    return Err(Error::domain("axis dimension must be positive"));
                }
            }
            BasisAxis::Sphere { ambient } => {
                SphereIndexer::new(*ambient)?;
            }
            BasisAxis::Abstract {
                order, eigenvalues, ..
            } => {
                if !order.is_finite() || *order <= 0.0 {
                    return Err(Error::domain("abstract axis growth order must be positive"));
                }
                if eigenvalues.is_empty() {
                    return Err(Error::domain("abstract axis needs at least one eigenvalue"));
                }
                for s in eigenvalues {
                    let r = parse_rat(s).map_err(Error::domain)?;
                    if r < Rat::from_integer(0.into()) {
                        return Err(Error::domain(format!(
                            "abstract axis eigenvalue {s} is negative"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact eigenvalue attached to linear index `i`.
    pub fn eigenvalue(&self, i: u64) -> Result<Rat> {
        match self {
            BasisAxis::Laguerre { dim } => Ok(Rat::from_integer(laguerre_nu(*dim, i)?.into())),
            BasisAxis::Hermite { dim } => {
                let alpha = linear_to_multi(*dim, i)?;
                let total: usize = alpha.iter().sum();
                Ok(Rat::from_integer(((2 * total + *dim) as u64).into()))
            }
            BasisAxis::Sphere { ambient } => {
                let idx = SphereIndexer::new(*ambient)?;
                let (j, _) = idx.delinearize(i)?;
                Ok(Rat::from_integer(idx.eigenvalue(j).into()))
            }
            BasisAxis::Abstract {
                name, eigenvalues, ..
            } => {
                let s = eigenvalues.get(i as usize).ok_or_else(|| {
                    Error::Horizon(format!(
                        "abstract axis '{name}' has {} eigenvalues; index {i} requested",
                        eigenvalues.len()
                    ))
                })?;
                parse_rat(s).map_err(Error::domain)
            }
        }
    }

    /// Argument fed into the weight envelope `exp(-M(h t))` when fitting
    /// or checking coefficient decay along this axis.
    pub fn envelope_arg(&self, i: u64) -> Result<f64> {
        match self {
            BasisAxis::Laguerre { dim } => Ok((i as f64).powf(1.0 / *dim as f64)),
            BasisAxis::Hermite { .. } => {
                let mu = self.eigenvalue(i)?.to_f64().unwrap_or(f64::INFINITY);
                Ok(mu.sqrt())
            }
            BasisAxis::Sphere { ambient } => {
                let idx = SphereIndexer::new(*ambient)?;
                let (j, _) = idx.delinearize(i)?;
                Ok(j as f64)
            }
            BasisAxis::Abstract { order, .. } => {
                let lam = self.eigenvalue(i)?.to_f64().unwrap_or(f64::INFINITY);
                Ok(lam.powf(1.0 / order))
            }
        }
    }

    /// Number of real coordinates a sample point carries.
    pub fn point_dim(&self) -> Result<usize> {
        match self {
            BasisAxis::Laguerre { dim } | BasisAxis::Hermite { dim } => Ok(*dim),
            BasisAxis::Sphere { ambient } => {
                if *ambient == 3 {
                    Ok(2)
                } else {
                    Err(Error::Unsupported(
                        "pointwise sphere evaluation is only implemented for ambient dimension 3"
                            .into(),
                    ))
                }
            }
            BasisAxis::Abstract { name, .. } => Err(Error::Unsupported(format!(
                "abstract axis '{name}' has no pointwise evaluation"
            ))),
        }
    }

    /// Evaluates the `i`-th basis function at a point with `point_dim`
    /// coordinates.
    pub fn eval(&self, i: u64, point: &[f64]) -> Result<f64> {
        let want = self.point_dim()?;
        if point.len() != want {
            return Err(Error::Arity {
                expected: want,
                got: point.len(),
            });
        }
        match self {
            BasisAxis::Laguerre { dim } => {
                let alpha = linear_to_multi(*dim, i)?;
                let mut v = 1.0;
                for (k, &y) in alpha.iter().zip(point) {
                    v *= *eval_laguerre_all(*k, y)?.last().unwrap();
                }
                Ok(v)
            }
            BasisAxis::Hermite { dim } => {
                let alpha = linear_to_multi(*dim, i)?;
                let mut v = 1.0;
                for (k, &x) in alpha.iter().zip(point) {
                    v *= *eval_hermite_all(*k, x).last().unwrap();
                }
                Ok(v)
            }
            BasisAxis::Sphere { ambient } => {
                let idx = SphereIndexer::new(*ambient)?;
                let (j, k) = idx.delinearize(i)?;
                eval_sph_harm(j, k, point[0], point[1])
            }
            BasisAxis::Abstract { .. } => unreachable!("point_dim rejected abstract axes"),
        }
    }

    /// Product quadrature rule suitable for inner products of the axis's
    /// basis functions (after applying `weight_correction`).
    pub fn quadrature(&self, order: usize) -> Result<QuadratureRule> {
        match self {
            BasisAxis::Laguerre { dim } => product_rule(gauss_laguerre(order)?, *dim),
            BasisAxis::Hermite { dim } => product_rule(gauss_hermite(order)?, *dim),
            BasisAxis::Sphere { ambient } => {
                if *ambient != 3 {
                    return Err(Error::Unsupported(
                        "sphere quadrature is only implemented for ambient dimension 3".into(),
                    ));
                }
                sphere_rule(order)
            }
            BasisAxis::Abstract { name, .. } => Err(Error::Unsupported(format!(
                "abstract axis '{name}' has no quadrature rule"
            ))),
        }
    }

    /// Undoes the quadrature rule's implicit weight so that products of
    /// basis functions integrate with their natural (Lebesgue or surface)
    /// measure: `e^{sum y}` for Laguerre nodes, `e^{sum x^2}` for Hermite
    /// nodes, `1` on the sphere.
    pub fn weight_correction(&self, point: &[f64]) -> f64 {
        match self {
            BasisAxis::Laguerre { .. } => point.iter().sum::<f64>().exp(),
            BasisAxis::Hermite { .. } => point.iter().map(|x| x * x).sum::<f64>().exp(),
            BasisAxis::Sphere { .. } | BasisAxis::Abstract { .. } => 1.0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            BasisAxis::Laguerre { dim } => format!("laguerre[{dim}]"),
            BasisAxis::Hermite { dim } => format!("hermite[{dim}]"),
            BasisAxis::Sphere { ambient } => format!("sphere[{ambient}]"),
            BasisAxis::Abstract { name, .. } => format!("abstract[{name}]"),
        }
    }
}

fn product_rule(base: QuadratureRule, dim: usize) -> Result<QuadratureRule> {
    if dim == 1 {
        return Ok(base);
    }
    let mut nodes: Vec<Vec<f64>> = vec![vec![]];
    let mut weights: Vec<f64> = vec![1.0];
    for _ in 0..dim {
        let mut next_nodes = Vec::with_capacity(nodes.len() * base.nodes.len());
        let mut next_weights = Vec::with_capacity(weights.len() * base.weights.len());
        for (node, w) in nodes.iter().zip(&weights) {
            for (n1, w1) in base.nodes.iter().zip(&base.weights) {
                let mut combined = node.clone();
                combined.push(n1[0]);
                next_nodes.push(combined);
                next_weights.push(w * w1);
            }
        }
        nodes = next_nodes;
        weights = next_weights;
    }
    Ok(QuadratureRule {
        kind: base.kind,
        nodes,
        weights,
        exactness: base.exactness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermite_eigenvalues_follow_total_degree() {
        let axis = BasisAxis::Hermite { dim: 2 };
        // graded by level: (0,0), then the two level-1 indices, ...
        let expect = [2u64, 4, 4, 6, 6, 6];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(axis.eigenvalue(i as u64).unwrap(), Rat::from_integer((*e).into()));
        }
    }

    #[test]
    fn laguerre_eigenvalues_are_degrees() {
        let axis = BasisAxis::Laguerre { dim: 3 };
        assert_eq!(axis.eigenvalue(0).unwrap(), Rat::from_integer(0.into()));
        assert_eq!(axis.eigenvalue(1).unwrap(), Rat::from_integer(1.into()));
        assert_eq!(axis.eigenvalue(3).unwrap(), Rat::from_integer(1.into()));
        assert_eq!(axis.eigenvalue(4).unwrap(), Rat::from_integer(2.into()));
    }

    #[test]
    fn abstract_axis_rejects_negative_eigenvalues() {
        let axis = BasisAxis::Abstract {
            name: "bad".into(),
            order: 1.0,
            eigenvalues: vec!["0".into(), "-1".into()],
        };
        assert!(axis.validate().is_err());
    }

    #[test]
    fn abstract_axis_out_of_range_is_horizon_error() {
        let axis = BasisAxis::abstract_from_rats("t", 2.0, &[Rat::from_integer(1.into())]);
        match axis.eigenvalue(5) {
            Err(Error::Horizon(_)) => {}
            other => panic!("expected horizon error, got {other:?}"),
        }
    }

    #[test]
    fn product_gram_orthonormal_2d_laguerre() {
        let axis = BasisAxis::Laguerre { dim: 2 };
        let rule = axis.quadrature(14).unwrap();
        for a in 0..6u64 {
            for b in a..6u64 {
                let g = rule.integrate(|x| {
                    axis.eval(a, x).unwrap() * axis.eval(b, x).unwrap() * axis.weight_correction(x)
                });
                let expected = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g, expected, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn envelope_args_monotone() {
        for axis in [
            BasisAxis::Laguerre { dim: 2 },
            BasisAxis::Hermite { dim: 2 },
            BasisAxis::Sphere { ambient: 3 },
        ] {
            let mut prev = -1.0;
            for i in 0..50u64 {
                let g = axis.envelope_arg(i).unwrap();
                assert!(g >= prev - 1e-12, "{} at {i}", axis.label());
                prev = g;
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let axis = BasisAxis::Sphere { ambient: 3 };
        let s = serde_json::to_string(&axis).unwrap();
        let back: BasisAxis = serde_json::from_str(&s).unwrap();
        assert_eq!(back, axis);
    }
}
