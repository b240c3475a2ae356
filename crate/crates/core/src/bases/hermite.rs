//! L2-orthonormal Hermite functions on the real line, evaluated by the
//! normalized recurrence (raw polynomials overflow near degree 150).

/// `h_i(x)` with `h_0(x) = pi^{-1/4} e^{-x^2/2}`.
pub fn eval_hermite(i: usize, x: f64) -> f64 {
    *eval_hermite_all(i, x).last().unwrap()
}

/// `[h_0(x), ..., h_imax(x)]` in one pass.
pub fn eval_hermite_all(imax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(imax + 1);
    let mut prev = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
    out.push(prev);
    if imax == 0 {
        return out;
    }
    let mut cur = x * 2f64.sqrt() * prev;
    out.push(cur);
    for i in 1..imax {
        let ifl = i as f64;
        let next = x * (2.0 / (ifl + 1.0)).sqrt() * cur - (ifl / (ifl + 1.0)).sqrt() * prev;
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// Coefficient-space derivative: `h_i' = sqrt(i/2) h_{i-1} - sqrt((i+1)/2) h_{i+1}`.
/// Output has two more slots than the input.
pub fn derivative_coeffs(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n + 2];
    for (i, &c) in coeffs.iter().enumerate() {
        if i > 0 {
            out[i - 1] += c * (i as f64 / 2.0).sqrt();
        }
        out[i + 1] -= c * ((i as f64 + 1.0) / 2.0).sqrt();
    }
    out
}

/// Coefficient-space multiplication by `x`:
/// `x h_i = sqrt(i/2) h_{i-1} + sqrt((i+1)/2) h_{i+1}`.
pub fn position_coeffs(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n + 2];
    for (i, &c) in coeffs.iter().enumerate() {
        if i > 0 {
            out[i - 1] += c * (i as f64 / 2.0).sqrt();
        }
        out[i + 1] += c * ((i as f64 + 1.0) / 2.0).sqrt();
    }
    out
}

/// Applies the harmonic oscillator `x^2 - d^2/dx^2` in coefficient space
/// (spectral differentiation through the ladder identities). On `e_i`
/// this must recover `(2i + 1) e_i`.
pub fn oscillator_apply(coeffs: &[f64]) -> Vec<f64> {
    let xx = position_coeffs(&position_coeffs(coeffs));
    let dd = derivative_coeffs(&derivative_coeffs(coeffs));
    xx.iter().zip(&dd).map(|(a, b)| a - b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::quadrature::gauss_hermite;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaussian_normalization() {
        assert_abs_diff_eq!(
            eval_hermite(0, 0.0),
            std::f64::consts::PI.powf(-0.25),
            epsilon = 1e-15
        );
    }

    #[test]
    fn orthonormal_under_quadrature() {
        let rule = gauss_hermite(25).unwrap();
        for i in 0..=20usize {
            for j in i..=20usize {
                let val = rule.integrate(|x| {
                    let all = eval_hermite_all(20, x[0]);
                    all[i] * all[j] * (x[0] * x[0]).exp()
                });
                let expected = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(val, expected, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn oscillator_eigenvalues() {
        for i in 0..=10usize {
            let mut e = vec![0.0; i + 1];
            e[i] = 1.0;
            let applied = oscillator_apply(&e);
            for (j, &v) in applied.iter().enumerate() {
                let expected = if j == i { 2.0 * i as f64 + 1.0 } else { 0.0 };
                assert_abs_diff_eq!(v, expected, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn stable_at_high_degree() {
        // normalized recurrence stays finite and bounded at degree 200
        let v = eval_hermite(200, 1.3);
        assert!(v.is_finite());
        assert!(v.abs() < 1.0);
    }
}
