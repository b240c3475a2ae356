//! Real orthonormal spherical harmonics on S^2 and degree-eigenspace
//! bookkeeping for general ambient dimension.
//!
//! Numerical evaluation is provided only for the two-sphere; for larger
//! ambient dimension the axis stays abstract (eigenvalues and
//! multiplicities only).

use crate::error::Error;
use crate::indexing;
use crate::Result;

/// Degree-major linearization of the pairs `(j, k)`, `k < N_j`, with the
/// standard eigenspace dimensions.
#[derive(Clone, Debug)]
pub struct SphereIndexer {
    ambient: usize,
}

impl SphereIndexer {
    pub fn new(ambient: usize) -> Result<Self> {
        if ambient < 3 {
            return Err(Error::domain("sphere ambient dimension must be at least 3"));
        }
        Ok(SphereIndexer { ambient })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the degree-`j` eigenspace:
    /// `C(j+n-1, n-1) - C(j+n-3, n-1)` (so `2j + 1` for n = 3).
    pub fn eigenspace_dim(&self, j: usize) -> Result<u64> {
        let n = self.ambient;
        if j == 0 {
            return Ok(1);
        }
        let full = bin(j + n - 1, n - 1)?;
        let lower = if j >= 2 { bin(j + n - 3, n - 1)? } else { 0 };
        Ok(full - lower)
    }

    /// Laplace–Beltrami eigenvalue `j (j + n - 2)`.
    pub fn eigenvalue(&self, j: usize) -> u64 {
        (j as u64) * (j as u64 + self.ambient as u64 - 2)
    }

    pub fn linearize(&self, j: usize, k: u64) -> Result<u64> {
        if k >= self.eigenspace_dim(j)? {
            return Err(Error::domain(format!(
                "order index {k} out of range for degree {j}"
            )));
        }
        let mut offset = 0u64;
        for d in 0..j {
            offset += self.eigenspace_dim(d)?;
        }
        Ok(offset + k)
    }

    pub fn delinearize(&self, mut i: u64) -> Result<(usize, u64)> {
        let mut j = 0usize;
        loop {
            let dim = self.eigenspace_dim(j)?;
            if i < dim {
                return Ok((j, i));
            }
            i -= dim;
            j += 1;
        }
    }
}

fn bin(n: usize, k: usize) -> Result<u64> {
    indexing::level_count(k + 1, n - k).map_err(|_| Error::domain("binomial overflow"))
}

/// Real orthonormal spherical harmonic `Y_{j,k}(theta, phi)` on S^2.
/// The order index `k` in `0..2j` maps to `m = k - j`; `m > 0` pairs with
/// `cos(m phi)`, `m < 0` with `sin(|m| phi)`.
pub fn eval_sph_harm(j: usize, k: u64, theta: f64, phi: f64) -> Result<f64> {
    if k > 2 * j as u64 {
        return Err(Error::domain(format!(
            "order index {k} out of range for degree {j} on S^2"
        )));
    }
    let m = k as i64 - j as i64;
    let mabs = m.unsigned_abs() as usize;
    let p = normalized_assoc_legendre(j, mabs, theta.cos());
    let val = if m == 0 {
        p
    } else if m > 0 {
        2f64.sqrt() * p * (mabs as f64 * phi).cos()
    } else {
        2f64.sqrt() * p * (mabs as f64 * phi).sin()
    };
    Ok(val)
}

/// Fully normalized associated Legendre `\bar P_j^m(x)` such that the
/// m = 0 harmonics are `\bar P_j^0(cos theta)` and the full family is
/// orthonormal on the sphere. Standard stable upward recurrence.
fn normalized_assoc_legendre(j: usize, m: usize, x: f64) -> f64 {
    debug_assert!(m <= j);
    let sin_theta_sq = (1.0 - x * x).max(0.0);
    // \bar P_m^m
    let mut pmm = (1.0 / (4.0 * std::f64::consts::PI)).sqrt();
    for k in 1..=m {
        let kf = k as f64;
        pmm *= -((2.0 * kf + 1.0) / (2.0 * kf)).sqrt();
    }
    pmm *= sin_theta_sq.powf(m as f64 / 2.0);
    if j == m {
        return pmm;
    }
    // \bar P_{m+1}^m
    let mut p_prev = pmm;
    let mut p_cur = x * (2.0 * m as f64 + 3.0).sqrt() * pmm;
    if j == m + 1 {
        return p_cur;
    }
    for l in (m + 2)..=j {
        let lf = l as f64;
        let mf = m as f64;
        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
        let b = (((lf - 1.0) * (lf - 1.0) - mf * mf) / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
            .sqrt();
        let p_next = a * (x * p_cur - b * p_prev);
        p_prev = p_cur;
        p_cur = p_next;
    }
    p_cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::quadrature::sphere_rule;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_harmonic_normalization() {
        let v = eval_sph_harm(0, 0, 1.1, 2.3).unwrap();
        assert_abs_diff_eq!(v, 1.0 / (4.0 * std::f64::consts::PI).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn s2_eigenspace_dims() {
        let idx = SphereIndexer::new(3).unwrap();
        for j in 0..=20usize {
            assert_eq!(idx.eigenspace_dim(j).unwrap(), 2 * j as u64 + 1);
        }
    }

    #[test]
    fn dimension_bounds_hold() {
        // 2 j^{n-2}/(n-2)! < N_j <= n j^{n-2} for j >= 1
        for n in [3usize, 4, 5] {
            let idx = SphereIndexer::new(n).unwrap();
            let fact: f64 = (1..=(n - 2)).map(|k| k as f64).product();
            for j in 1..=100usize {
                let nj = idx.eigenspace_dim(j).unwrap() as f64;
                let jp = (j as f64).powi(n as i32 - 2);
                assert!(2.0 * jp / fact < nj, "lower bound n={n} j={j}");
                assert!(nj <= n as f64 * jp, "upper bound n={n} j={j}");
            }
        }
    }

    #[test]
    fn linearization_round_trip() {
        let idx = SphereIndexer::new(3).unwrap();
        let mut linear = 0u64;
        for j in 0..=10usize {
            for k in 0..idx.eigenspace_dim(j).unwrap() {
                assert_eq!(idx.linearize(j, k).unwrap(), linear);
                assert_eq!(idx.delinearize(linear).unwrap(), (j, k));
                linear += 1;
            }
        }
    }

    #[test]
    fn eigenvalue_examples() {
        let idx = SphereIndexer::new(3).unwrap();
        assert_eq!(idx.eigenvalue(1), 2);
        assert_eq!(idx.eigenvalue(2), 6);
        let idx5 = SphereIndexer::new(5).unwrap();
        assert_eq!(idx5.eigenvalue(2), 10);
    }

    #[test]
    fn gram_matrix_is_identity() {
        let rule = sphere_rule(12).unwrap();
        let idx = SphereIndexer::new(3).unwrap();
        let jmax = 8usize;
        let total = idx.linearize(jmax, 2 * jmax as u64).unwrap() + 1;
        for a in 0..total {
            let (ja, ka) = idx.delinearize(a).unwrap();
            for b in a..total {
                let (jb, kb) = idx.delinearize(b).unwrap();
                let g = rule.integrate(|x| {
                    eval_sph_harm(ja, ka, x[0], x[1]).unwrap()
                        * eval_sph_harm(jb, kb, x[0], x[1]).unwrap()
                });
                let expected = if a == b { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g, expected, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn discrete_laplace_beltrami_eigenvalue() {
        // coarse finite-difference check of Delta_{S^2} Y = -j(j+1) Y ...
        // with the sign convention used here the attached eigenvalue is
        // positive: the operator in the expansion acts as +j(j+1).
        let (j, k) = (3usize, 2u64);
        let f = |theta: f64, phi: f64| eval_sph_harm(j, k, theta, phi).unwrap();
        let (theta, phi) = (1.1f64, 0.7f64);
        let h = 1e-4;
        let d2_theta = (f(theta + h, phi) - 2.0 * f(theta, phi) + f(theta - h, phi)) / (h * h);
        let d1_theta = (f(theta + h, phi) - f(theta - h, phi)) / (2.0 * h);
        let d2_phi = (f(theta, phi + h) - 2.0 * f(theta, phi) + f(theta, phi - h)) / (h * h);
        let lb = d2_theta + d1_theta * theta.cos() / theta.sin()
            + d2_phi / (theta.sin() * theta.sin());
        let ratio = -lb / f(theta, phi);
        assert!(
            (ratio - (j * (j + 1)) as f64).abs() < 1e-4 * (j * (j + 1)) as f64 + 1e-3,
            "ratio = {ratio}"
        );
    }
}
