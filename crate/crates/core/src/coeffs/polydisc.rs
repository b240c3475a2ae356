//! Generating function on the unit polydisc: for Laguerre coefficients
//! `a_m`, `F(w) = prod_l (1 - w_l) * sum_m a_m w^m = sum_m b_m w^m` with
//! `b_m = sum_{j <= m, j <= 1} (-1)^{|j|} a_{m-j}`, evaluated together
//! with its derivatives and a truncation-tail estimate.

use num_complex::Complex64;

use crate::bases::BasisAxis;
use crate::coeffs::classify::{Classification, DecayFit};
use crate::coeffs::tensor::CoefficientTensor;
use crate::error::Error;
use crate::indexing::{level_count, linear_to_multi, multi_to_linear};
use crate::rational::CRat;
use crate::weights::{AssociatedFunction, WeightSequence};
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct PolydiscValue {
    pub value: Complex64,
    /// Upper bound on the modulus of the discarded tail. Certified when
    /// a decay fit backs it; otherwise it assumes the tail magnitudes do
    /// not exceed the largest stored one.
    pub tail_bound: f64,
    pub tail_certified: bool,
}

fn laguerre_dim(c: &CoefficientTensor) -> Result<usize> {
    match c.axes() {
        [BasisAxis::Laguerre { dim }] => Ok(*dim),
        _ => Err(Error::domain(
            "polydisc operations need a single laguerre axis",
        )),
    }
}

/// Finite difference `b_m = sum_{j <= m, j <= 1} (-1)^{|j|} a_{m-j}`,
/// exact on the stored lattice.
pub fn b_from_a(a: &CoefficientTensor) -> Result<CoefficientTensor> {
    let dim = laguerre_dim(a)?;
    // the difference shifts support by at most one per coordinate, so b
    // lives on levels up to level(T) + dim; extend the truncation to
    // cover them (indices with level <= L number C(L + dim, dim))
    let top_level: usize = linear_to_multi(dim, a.truncation()[0])?.iter().sum();
    let t = level_count(dim + 1, top_level + dim)? - 1;
    let mut out = CoefficientTensor::new(a.axes().to_vec(), vec![t])?;
    for p in 0..=t {
        let m = linear_to_multi(dim, p)?;
        let mut acc = CRat::zero();
        let mut any = false;
        for mask in 0..(1u32 << dim) {
            let mut shifted = m.clone();
            let mut ok = true;
            for l in 0..dim {
                if mask & (1 << l) != 0 {
                    if shifted[l] == 0 {
                        ok = false;
                        break;
                    }
                    shifted[l] -= 1;
                }
            }
            if !ok {
                continue;
            }
            let q = multi_to_linear(dim, &shifted)?;
            if let Some(v) = a.get(&[q]) {
                any = true;
                if mask.count_ones() % 2 == 0 {
                    acc = acc + v.clone();
                } else {
                    acc = acc - v.clone();
                }
            }
        }
        if any && !acc.is_zero() {
            out.insert(vec![p], acc)?;
        }
    }
    Ok(out)
}

/// Inverse of [`b_from_a`]: `a_m = sum_{k <= m} b_k` (coordinate-wise
/// box sum), exact.
pub fn a_from_b(b: &CoefficientTensor) -> Result<CoefficientTensor> {
    let dim = laguerre_dim(b)?;
    let t = b.truncation()[0];
    let mut out = CoefficientTensor::new(b.axes().to_vec(), b.truncation().to_vec())?;
    for p in 0..=t {
        let m = linear_to_multi(dim, p)?;
        let mut acc = CRat::zero();
        // iterate the box 0 <= k <= m
        let mut k = vec![0usize; dim];
        'outer: loop {
            if let Ok(q) = multi_to_linear(dim, &k) {
                if q <= t {
                    if let Some(v) = b.get(&[q]) {
                        acc = acc + v.clone();
                    }
                }
            }
            let mut l = dim;
            loop {
                if l == 0 {
                    break 'outer;
                }
                l -= 1;
                if k[l] < m[l] {
                    k[l] += 1;
                    break;
                }
                k[l] = 0;
            }
        }
        if !acc.is_zero() {
            out.insert(vec![p], acc)?;
        }
    }
    Ok(out)
}

/// Evaluates `D^p F(w)` from the `b`-series by term-wise differentiation
/// and attaches a truncation-tail bound. Without a decay certificate,
/// `max |w_l|` must stay at or below 1/2 and the tail bound assumes the
/// unseen magnitudes do not exceed the largest stored one.
pub fn polydisc_eval(
    a: &CoefficientTensor,
    omega: &[Complex64],
    p: &[usize],
    certificate: Option<(&DecayFit, &WeightSequence)>,
) -> Result<PolydiscValue> {
    let dim = laguerre_dim(a)?;
    if omega.len() != dim || p.len() != dim {
        return Err(Error::Arity {
            expected: dim,
            got: omega.len().max(p.len()),
        });
    }
    let r = omega.iter().map(|w| w.norm()).fold(0.0f64, f64::max);
    if r >= 1.0 {
        return Err(Error::domain("evaluation point must lie in the open polydisc"));
    }
    if a.is_empty() {
        return Err(Error::domain("empty coefficient data"));
    }

    let b = b_from_a(a)?;
    let mut value = Complex64::new(0.0, 0.0);
    for (idx, v) in b.iter() {
        let m = linear_to_multi(dim, idx[0])?;
        let mut term = Complex64::new(1.0, 0.0);
        let mut falling = 1.0f64;
        let mut ok = true;
        for l in 0..dim {
            if m[l] < p[l] {
                ok = false;
                break;
            }
            for s in 0..p[l] {
                falling *= (m[l] - s) as f64;
            }
            term *= omega[l].powu((m[l] - p[l]) as u32);
        }
        if !ok {
            continue;
        }
        let (re, im) = v.to_f64_pair();
        value += Complex64::new(re, im) * term * falling;
    }

    let max_abs = a.iter().map(|(_, v)| v.abs_f64()).fold(0.0f64, f64::max);
    let p_total: usize = p.iter().sum();
    let trunc_level: usize = linear_to_multi(dim, a.truncation()[0])?.iter().sum();

    let (tail_bound, tail_certified) = match certificate {
        Some((fit, weight)) => {
            if fit.classification != Classification::TestFunctionLike || fit.rates.is_empty() {
                return Err(Error::Uncertified(
                    "decay certificate does not establish coefficient decay".into(),
                ));
            }
            let assoc = AssociatedFunction::new(weight);
            // per-level coefficient bound: a multi-index at level t has
            // linear index >= C(t-1+dim, dim) >= (t/dim)^dim, so its
            // envelope argument p^{1/dim} is at least t/dim
            let env = |t: usize| -> Result<f64> {
                let g = t as f64 / dim as f64;
                let m = assoc.eval(fit.rates[0] * g)?.value;
                Ok(fit.log_constant.exp() * (-m).exp())
            };
            let tail = tail_sum(dim, trunc_level, p_total, r, &env)?;
            (tail, true)
        }
        None => {
            if r > 0.5 {
                return Err(Error::Uncertified(
                    "tail not certified: no decay certificate and the point is far from the origin"
                        .into(),
                ));
            }
            let env = |_t: usize| Ok(max_abs);
            let tail = tail_sum(dim, trunc_level, p_total, r, &env)?;
            (tail, false)
        }
    };

    Ok(PolydiscValue {
        value,
        tail_bound,
        tail_certified,
    })
}

/// Bounds `sum_{|m| > t0} |b_m| falling(m, p) r^{|m| - |p|}` using
/// `|b_m| <= 2^dim env(|m| - dim)`, the count of indices per level, and
/// `falling(m, p) <= |m|^{|p|}`; closes with a geometric remainder.
fn tail_sum(
    dim: usize,
    t0: usize,
    p_total: usize,
    r: f64,
    env: &dyn Fn(usize) -> Result<f64>,
) -> Result<f64> {
    if r == 0.0 {
        return Ok(0.0);
    }
    let q = 0.5 * (1.0 + r);
    let two_n = (1u64 << dim) as f64;
    let mut total = 0.0f64;
    let mut t = t0 + 1;
    loop {
        let count = level_count(dim, t).map(|c| c as f64).unwrap_or(f64::INFINITY);
        let level_bound = env(t.saturating_sub(dim))?;
        let term = two_n
            * level_bound
            * count
            * (t as f64).powi(p_total as i32)
            * r.powi((t.saturating_sub(p_total)) as i32);
        total += term;
        // ratio of successive terms is below ((t+1)/t)^(dim-1+|p|) * r
        // (env is nonincreasing); once that is <= q, close geometrically
        let ratio_bound = ((t as f64 + 1.0) / t as f64).powi((dim - 1 + p_total) as i32) * r;
        if ratio_bound <= q && (term <= 1e-300 || term <= 1e-16 * total) {
            total += term * q / (1.0 - q);
            return Ok(total);
        }
        t += 1;
        if t > t0 + 2_000_000 {
            return Err(Error::domain("tail estimate did not converge"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::classify::classify_decay;
    use crate::weights::{make_weight, Generator, Mode};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};

    fn tensor_1d(entries: &[(u64, f64)], t: u64) -> CoefficientTensor {
        let mut c = CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 1 }], vec![t]).unwrap();
        for &(k, v) in entries {
            c.insert(vec![k], CRat::from_f64(v, 0.0).unwrap()).unwrap();
        }
        c
    }

    #[test]
    fn two_term_polynomial_case() {
        // a = e_0 gives F(w) = 1 - w, so DF = -1 everywhere
        let a = tensor_1d(&[(0, 1.0)], 5);
        for &(re, im) in &[(0.0, 0.0), (0.3, -0.2), (-0.45, 0.1)] {
            let w = Complex64::new(re, im);
            let v0 = polydisc_eval(&a, &[w], &[0], None).unwrap();
            assert_abs_diff_eq!(v0.value.re, 1.0 - re, epsilon = 1e-14);
            assert_abs_diff_eq!(v0.value.im, -im, epsilon = 1e-14);
            let v1 = polydisc_eval(&a, &[w], &[1], None).unwrap();
            assert_abs_diff_eq!(v1.value.re, -1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(v1.value.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn series_center_is_a0() {
        let w = make_weight(Generator::Gevrey { s: 1.0 }, 60, Mode::Roumieu).unwrap();
        let assoc = AssociatedFunction::new(&w);
        let entries: Vec<(u64, f64)> = (0..=30u64)
            .map(|m| (m, (-assoc.eval(m as f64).unwrap().value).exp()))
            .collect();
        let a = tensor_1d(&entries, 30);
        let v = polydisc_eval(&a, &[Complex64::new(0.0, 0.0)], &[0], None).unwrap();
        assert_abs_diff_eq!(v.value.re, 1.0, epsilon = 1e-14);
        assert_eq!(v.tail_bound, 0.0);
    }

    #[test]
    fn ab_round_trip_is_exact() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut a =
            CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 2 }], vec![40]).unwrap();
        for p in 0..=40u64 {
            if rng.gen_bool(0.6) {
                a.insert(
                    vec![p],
                    CRat::from_f64(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)).unwrap(),
                )
                .unwrap();
            }
        }
        let b = b_from_a(&a).unwrap();
        let back = a_from_b(&b).unwrap();
        assert_eq!(back.len(), a.len());
        for (idx, v) in a.iter() {
            assert_eq!(back.get(idx).unwrap(), v, "idx {idx:?}");
        }
    }

    #[test]
    fn eval_matches_direct_product_form() {
        // F(w) = (1-w_1)(1-w_2) sum a_m w^m, compared at p = 0
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut a =
            CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 2 }], vec![49]).unwrap();
        for p in 0..50u64 {
            if rng.gen_bool(0.5) {
                a.insert(
                    vec![p],
                    CRat::from_f64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)).unwrap(),
                )
                .unwrap();
            }
        }
        let w = [Complex64::new(0.21, -0.13), Complex64::new(-0.35, 0.2)];
        let got = polydisc_eval(&a, &w, &[0, 0], None).unwrap().value;
        let mut series = Complex64::new(0.0, 0.0);
        for (idx, v) in a.iter() {
            let m = linear_to_multi(2, idx[0]).unwrap();
            let (re, im) = v.to_f64_pair();
            series += Complex64::new(re, im) * w[0].powu(m[0] as u32) * w[1].powu(m[1] as u32);
        }
        let direct = (Complex64::new(1.0, 0.0) - w[0]) * (Complex64::new(1.0, 0.0) - w[1]) * series;
        assert_abs_diff_eq!(got.re, direct.re, epsilon = 1e-12);
        assert_abs_diff_eq!(got.im, direct.im, epsilon = 1e-12);
    }

    #[test]
    fn far_point_without_certificate_is_rejected() {
        let a = tensor_1d(&[(0, 1.0), (3, 0.25)], 5);
        let res = polydisc_eval(&a, &[Complex64::new(0.9, 0.0)], &[0], None);
        match res {
            Err(Error::Uncertified(_)) => {}
            other => panic!("expected uncertified error, got {other:?}"),
        }
    }

    #[test]
    fn derivative_bounds_fit_weight_sequence() {
        // coefficients from the gevrey envelope; |D^p F| on |w| = 0.9
        // should admit c A^p M_p
        let weight = make_weight(Generator::Gevrey { s: 1.0 }, 200, Mode::Roumieu).unwrap();
        let assoc = AssociatedFunction::new(&weight);
        let tmax = 120u64;
        let entries: Vec<(u64, f64)> = (0..=tmax)
            .map(|m| (m, (-assoc.eval(m as f64).unwrap().value).exp()))
            .collect();
        let a = tensor_1d(&entries, tmax);
        let fit = classify_decay(&a, &weight).unwrap();
        assert_eq!(fit.classification, Classification::TestFunctionLike);

        let mut max_abs = vec![0.0f64; 11];
        for p in 0..=10usize {
            for k in 0..16 {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
                let w = Complex64::from_polar(0.9, theta);
                let v = polydisc_eval(&a, &[w], &[p], Some((&fit, &weight))).unwrap();
                assert!(v.tail_certified);
                max_abs[p] = max_abs[p].max(v.value.norm() + v.tail_bound);
            }
        }
        let c = max_abs[0].max(1e-300);
        let mut a_fit = 0.0f64;
        for p in 1..=10usize {
            let ratio = (max_abs[p].ln() - c.ln() - weight.log_value(p)) / p as f64;
            a_fit = a_fit.max(ratio.exp());
        }
        assert!(a_fit.is_finite() && a_fit < 50.0, "A = {a_fit}");
    }
}
