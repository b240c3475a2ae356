//! End-to-end acceptance gate. Each test covers one criterion and prints
//! a single pass/fail line (visible with `--nocapture`); the assertions
//! make `cargo test` enforce the same gate.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eigenexpand::bases::laguerre::{
    apply_laguerre_operator, eval_laguerre_all, laguerre_poly_coeffs, poly_eval,
};
use eigenexpand::bases::hermite::{eval_hermite_all, oscillator_apply};
use eigenexpand::bases::quadrature::{gauss_hermite, gauss_laguerre, sphere_rule};
use eigenexpand::bases::sphere::eval_sph_harm;
use eigenexpand::bases::{BasisAxis, SphereIndexer};
use eigenexpand::coeffs::{
    a_from_b, classify_decay, hankel_clifford, polydisc_eval, Classification, CoefficientTensor,
};
use eigenexpand::indexing::laguerre_nu;
use eigenexpand::rational::{CRat, Rat};
use eigenexpand::solver::{
    adversarial_c3, forward_apply, liouville_scan, solve, symbol, CoeffValue, LevelArg,
    OperatorFactor, OperatorSpec, SolveOptions, SolveVerdict,
};
use eigenexpand::weights::{
    check_conditions, make_weight, make_weight_diagnostic, AssociatedFunction, Generator, Mode,
    WeightSequence,
};

fn report(n: usize, name: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {n:02} ({name}): pass"),
        Err(e) => {
            println!("criterion {n:02} ({name}): FAIL — {e}");
            panic!("criterion {n:02} ({name}) failed: {e}");
        }
    }
}

fn gevrey(s: f64, horizon: usize) -> WeightSequence {
    make_weight(Generator::Gevrey { s }, horizon, Mode::Roumieu).unwrap()
}

// -------------------------------------------------------------------------
// 1. Basis fidelity: Gram matrices equal identity to 1e-10.

#[test]
fn criterion_01_basis_fidelity() {
    report(1, "basis fidelity", (|| {
        let mut defect = 0.0f64;

        // Laguerre, degrees <= 20, corrected weights w e^{x}
        let rule = gauss_laguerre(21).map_err(|e| e.to_string())?;
        let tables: Vec<(f64, Vec<f64>)> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, &w)| {
                let l = eval_laguerre_all(20, x[0]).unwrap();
                (w * x[0].exp(), l)
            })
            .collect();
        for j in 0..=20usize {
            for k in j..=20usize {
                let g: f64 = tables.iter().map(|(cw, l)| cw * l[j] * l[k]).sum();
                let target = if j == k { 1.0 } else { 0.0 };
                defect = defect.max((g - target).abs());
            }
        }
        if defect > 1e-10 {
            return Err(format!("laguerre gram defect {defect:e}"));
        }

        // Hermite, degrees <= 20, corrected weights w e^{x^2}
        let rule = gauss_hermite(21).map_err(|e| e.to_string())?;
        let tables: Vec<(f64, Vec<f64>)> = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, &w)| (w * (x[0] * x[0]).exp(), eval_hermite_all(20, x[0])))
            .collect();
        let mut h_defect = 0.0f64;
        for j in 0..=20usize {
            for k in j..=20usize {
                let g: f64 = tables.iter().map(|(cw, h)| cw * h[j] * h[k]).sum();
                let target = if j == k { 1.0 } else { 0.0 };
                h_defect = h_defect.max((g - target).abs());
            }
        }
        if h_defect > 1e-10 {
            return Err(format!("hermite gram defect {h_defect:e}"));
        }

        // Spherical harmonics on S^2, j <= 8
        let indexer = SphereIndexer::new(3).map_err(|e| e.to_string())?;
        let total: u64 = (0..=8).map(|j| indexer.eigenspace_dim(j).unwrap()).sum();
        let rule = sphere_rule(12).map_err(|e| e.to_string())?;
        let tables: Vec<Vec<f64>> = rule
            .nodes
            .iter()
            .map(|node| {
                (0..total)
                    .map(|i| {
                        let (j, k) = indexer.delinearize(i).unwrap();
                        eval_sph_harm(j, k, node[0], node[1]).unwrap()
                    })
                    .collect()
            })
            .collect();
        let mut s_defect = 0.0f64;
        for a in 0..total as usize {
            for b in a..total as usize {
                let g: f64 = tables
                    .iter()
                    .zip(&rule.weights)
                    .map(|(vals, w)| w * vals[a] * vals[b])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                s_defect = s_defect.max((g - target).abs());
            }
        }
        if s_defect > 1e-10 {
            return Err(format!("sphere gram defect {s_defect:e}"));
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 2. Eigenrelations: <E l_k, l_k> = k and oscillator eigenvalues 2i+1.

#[test]
fn criterion_02_eigenrelations() {
    report(2, "eigenrelations", (|| {
        let rule = gauss_laguerre(12).map_err(|e| e.to_string())?;
        for k in 0..=10usize {
            let p = laguerre_poly_coeffs(k);
            let q = apply_laguerre_operator(&p);
            let inner = rule.integrate(|x| poly_eval(&q, x[0]) * poly_eval(&p, x[0]));
            if (inner - k as f64).abs() > 1e-8 {
                return Err(format!("<E l_{k}, l_{k}> = {inner}, expected {k}"));
            }
        }
        for i in 0..=10usize {
            let mut e = vec![0.0; i + 1];
            e[i] = 1.0;
            let out = oscillator_apply(&e);
            for (idx, &v) in out.iter().enumerate() {
                let expect = if idx == i { 2.0 * i as f64 + 1.0 } else { 0.0 };
                if (v - expect).abs() > 1e-8 {
                    return Err(format!("oscillator on e_{i}: slot {idx} = {v}"));
                }
            }
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 3. Renumbering: laguerre_nu vs brute-force level enumeration; growth rate.

#[test]
fn criterion_03_renumbering() {
    report(3, "renumbering", (|| {
        for n in 1..=4usize {
            // brute force: walk levels, counting multi-indices per level
            // with the stars-and-bars product formula evaluated by loop
            let mut level = 0usize;
            let mut consumed = 0u64;
            let count_at = |t: usize| -> u64 {
                let mut c = 1u64;
                for r in 1..n {
                    c = c * (t as u64 + r as u64) / r as u64;
                }
                c
            };
            let mut next_boundary = count_at(0);
            let mut ratios: Vec<f64> = Vec::new();
            for p in 0..=10_000u64 {
                while p >= consumed + next_boundary {
                    consumed += next_boundary;
                    level += 1;
                    next_boundary = count_at(level);
                }
                let nu = laguerre_nu(n, p).map_err(|e| e.to_string())?;
                if nu != level as u64 {
                    return Err(format!("nu({n}, {p}) = {nu}, brute force {level}"));
                }
                if (1000..=10_000).contains(&p) {
                    ratios.push(nu as f64 / (p as f64).powf(1.0 / n as f64));
                }
            }
            // nu_p ~ (n! p)^{1/n}: the ratio must hug (n!)^{1/n}
            let c = (1..=n).map(|r| r as f64).product::<f64>().powf(1.0 / n as f64);
            let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = ratios.iter().cloned().fold(0.0f64, f64::max);
            if lo < 0.8 * c || hi > 1.25 * c {
                return Err(format!("n={n}: ratio range [{lo}, {hi}] vs c={c}"));
            }
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 4. Weight-sequence suite: condition verdicts and lemma-grid inequalities.

#[test]
fn criterion_04_weight_suite() {
    report(4, "weight suite", (|| {
        for s in [1.0, 0.5] {
            let rep = check_conditions(&gevrey(s, 60)).map_err(|e| e.to_string())?;
            if !(rep.m1.holds() && rep.m2.holds() && rep.m0.holds()) {
                return Err(format!("gevrey({s}) verdicts: {rep:?}"));
            }
            // the last condition needs M_p >= M_m m^{p-m} eventually; for
            // p!^s that forces s >= 1, so it holds at s = 1 and fails at 1/2
            if s >= 1.0 && !rep.m00.holds() {
                return Err(format!("gevrey({s}) should satisfy the tail condition"));
            }
            if s < 1.0 && !rep.m00.fails() {
                return Err(format!("gevrey({s}) should fail the tail condition"));
            }
        }
        let w = make_weight_diagnostic(Generator::FactorialScaled { a: 2.0 }, 60, Mode::Roumieu)
            .map_err(|e| e.to_string())?;
        let rep = check_conditions(&w).map_err(|e| e.to_string())?;
        if !rep.m00.fails() {
            return Err("p!/2^p should fail (M.00)".into());
        }

        // grid inequalities, zero violations allowed
        let w = gevrey(1.0, 400);
        let af = AssociatedFunction::new(&w);
        let mut violations = 0usize;
        // M(x + y) <= M(2x) + M(2y)
        for i in 1..15 {
            for j in 1..15 {
                let (x, y) = (i as f64 * 1.1, j as f64 * 0.7);
                let lhs = af.eval(x + y).map_err(|e| e.to_string())?.value;
                let rhs = af.eval(2.0 * x).map_err(|e| e.to_string())?.value
                    + af.eval(2.0 * y).map_err(|e| e.to_string())?.value;
                if lhs > rhs + 1e-9 {
                    violations += 1;
                }
            }
        }
        // M_{floor(p/2)} <= sqrt(M_p)
        for p in 1..=200usize {
            if w.log_value(p / 2) > 0.5 * w.log_value(p) + 1e-12 {
                violations += 1;
            }
        }
        // M_p >= rho^p e^{-M(rho)}
        for i in 1..20 {
            let rho = i as f64 * 1.7;
            let m_rho = af.eval(rho).map_err(|e| e.to_string())?.value;
            for p in 0..=80usize {
                if w.log_value(p) < p as f64 * rho.ln() - m_rho - 1e-9 {
                    violations += 1;
                }
            }
        }
        if violations != 0 {
            return Err(format!("{violations} grid violations"));
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 5. Decay classifier on randomized planted envelopes.

#[test]
fn criterion_05_decay_classifier() {
    report(5, "decay classifier", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(1105);
        let w = gevrey(1.0, 400);
        let af = AssociatedFunction::new(&w);
        for case in 0..20 {
            let rate = rng.gen_range(0.8..2.5);
            let axis = match rng.gen_range(0..3) {
                0 => BasisAxis::Laguerre { dim: 1 },
                1 => BasisAxis::Laguerre { dim: 2 },
                _ => BasisAxis::Hermite { dim: 1 },
            };
            let grow = rng.gen_bool(0.5);
            let trunc = 1200u64;
            let mut t = CoefficientTensor::new(vec![axis.clone()], vec![trunc])
                .map_err(|e| e.to_string())?;
            for p in 0..=trunc {
                let g = axis.envelope_arg(p).map_err(|e| e.to_string())?;
                let m = af.eval(rate * g).map_err(|e| e.to_string())?.value;
                let logv = if grow { m } else { -m };
                if !(-650.0..=650.0).contains(&logv) {
                    continue;
                }
                t.insert(vec![p], CRat::from_f64(logv.exp(), 0.0).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            let fit = classify_decay(&t, &w).map_err(|e| e.to_string())?;
            let expect = if grow {
                Classification::DualLike
            } else {
                Classification::TestFunctionLike
            };
            if fit.classification != expect {
                return Err(format!(
                    "case {case}: rate {rate} grow={grow} classified {:?}",
                    fit.classification
                ));
            }
            let fitted = fit.rates[0];
            if (fitted - rate).abs() > 0.1 * rate {
                return Err(format!(
                    "case {case}: planted {rate}, fitted {fitted} (axis {})",
                    axis.label()
                ));
            }
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 6. Solver oracle equivalence on randomized rational systems.

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let num = loop {
        let v = rng.gen_range(-6i64..=6);
        if v != 0 {
            break v;
        }
    };
    Rat::new(BigInt::from(num), BigInt::from(rng.gen_range(1i64..=6)))
}

#[test]
fn criterion_06_solver_oracle() {
    report(6, "solver oracle", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(2211);
        let axis_pool = [
            BasisAxis::Laguerre { dim: 1 },
            BasisAxis::Laguerre { dim: 2 },
            BasisAxis::Hermite { dim: 1 },
            BasisAxis::Sphere { ambient: 3 },
        ];
        for case in 0..100 {
            let arity = if case == 0 { 3 } else { rng.gen_range(1..=3usize) };
            let factors: Vec<OperatorFactor> = (0..arity)
                .map(|_| OperatorFactor {
                    axis: axis_pool[rng.gen_range(0..axis_pool.len())].clone(),
                    coeff: CoeffValue::Rational(random_rat(&mut rng)),
                    power: rng.gen_range(1..=3),
                })
                .collect();
            let spec = OperatorSpec::new(factors).map_err(|e| e.to_string())?;
            let bound = match arity {
                _ if case == 0 => 31u64, // one full 32^3 box
                1 => 31,
                2 => 15,
                _ => 7,
            };
            let bounds = vec![bound; arity];
            let mut u = CoefficientTensor::new(spec.axes(), bounds.clone())
                .map_err(|e| e.to_string())?;
            for _ in 0..30 {
                let idx: Vec<u64> = bounds.iter().map(|&b| rng.gen_range(0..=b)).collect();
                u.insert(idx, CRat::from_rat(random_rat(&mut rng)))
                    .map_err(|e| e.to_string())?;
            }
            let f = forward_apply(&spec, &u).map_err(|e| e.to_string())?;
            let rep = solve(&spec, &f, &SolveOptions::default()).map_err(|e| e.to_string())?;
            if matches!(rep.verdict, SolveVerdict::Unsolvable(_)) {
                return Err(format!("case {case}: round trip unsolvable"));
            }
            for (idx, v) in u.iter() {
                let s = symbol(&spec, idx).map_err(|e| e.to_string())?;
                if s.is_zero() {
                    continue; // annihilated; outside the oracle's claim
                }
                if rep.solution.get(idx) != Some(v) {
                    return Err(format!("case {case}: mismatch at {idx:?}"));
                }
            }
        }

        // resonant family: symbol mu_i - nu_p vanishes exactly on p = 2i+1
        let spec = OperatorSpec::new(vec![
            OperatorFactor {
                axis: BasisAxis::Hermite { dim: 1 },
                coeff: CoeffValue::rational("1").map_err(|e| e.to_string())?,
                power: 1,
            },
            OperatorFactor {
                axis: BasisAxis::Laguerre { dim: 1 },
                coeff: CoeffValue::rational("-1").map_err(|e| e.to_string())?,
                power: 1,
            },
        ])
        .map_err(|e| e.to_string())?;
        let enumerated_f: Vec<Vec<u64>> = (0..=7u64)
            .flat_map(|i| (0..=15u64).map(move |p| (i, p)))
            .filter(|&(i, p)| p == 2 * i + 1)
            .map(|(i, p)| vec![i, p])
            .collect();

        // data on a resonant index -> unsolvable
        let mut f = CoefficientTensor::new(spec.axes(), vec![7, 15]).map_err(|e| e.to_string())?;
        f.insert(vec![2, 5], CRat::from_f64(1.0, 0.0).unwrap())
            .map_err(|e| e.to_string())?;
        let rep = solve(&spec, &f, &SolveOptions::default()).map_err(|e| e.to_string())?;
        if rep.verdict != SolveVerdict::Unsolvable(vec![2, 5]) {
            return Err(format!("expected unsolvable, got {:?}", rep.verdict));
        }
        if rep.resonance.symbol_zeros != enumerated_f {
            return Err("symbol zero set disagrees with enumeration".into());
        }

        // data vanishing on all of F -> non-unique with |F| free choices
        let mut f = CoefficientTensor::new(spec.axes(), vec![7, 15]).map_err(|e| e.to_string())?;
        for i in 0..=7u64 {
            for p in 0..=15u64 {
                if p != 2 * i + 1 {
                    f.insert(vec![i, p], CRat::from_f64(1.0, 0.0).unwrap())
                        .map_err(|e| e.to_string())?;
                }
            }
        }
        let rep = solve(&spec, &f, &SolveOptions::default()).map_err(|e| e.to_string())?;
        if rep.verdict != SolveVerdict::NonUniqueWithFreeChoices {
            return Err(format!("expected non-unique, got {:?}", rep.verdict));
        }
        if rep.free_indices != enumerated_f {
            return Err("free index set disagrees with enumeration".into());
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 7. Liouville scan: sqrt(2) stays bounded away from zero, the
//    adversarial rational collapses.

#[test]
fn criterion_07_liouville_scan() {
    report(7, "liouville scan", (|| {
        let w = gevrey(1.0, 400);
        let report = liouville_scan(
            &CoeffValue::rational("1").map_err(|e| e.to_string())?,
            1,
            &CoeffValue::Sqrt2,
            &w,
            &[1.0],
            2,
            10_000,
            1,
            LevelArg::Raw,
        )
        .map_err(|e| e.to_string())?;
        let fits: Vec<f64> = report.nested.iter().map(|b| b.rows[0].c_eps).collect();
        for win in fits.windows(2) {
            if win[1] < 0.5 * win[0] {
                return Err(format!("sqrt2 fits collapsed: {fits:?}"));
            }
        }
        if fits[2] <= 0.0 {
            return Err("sqrt2 constant reached zero".into());
        }

        let c3 = adversarial_c3(&w, &[1, 75]).map_err(|e| e.to_string())?;
        let report = liouville_scan(
            &CoeffValue::rational("1").map_err(|e| e.to_string())?,
            1,
            &CoeffValue::Rational(c3),
            &w,
            &[1.0],
            2,
            10_000,
            1,
            LevelArg::Raw,
        )
        .map_err(|e| e.to_string())?;
        for b in &report.nested {
            if b.rows[0].c_eps >= 1e-6 {
                return Err(format!(
                    "adversarial c_eps = {:e} on box {:?}",
                    b.rows[0].c_eps,
                    (b.pmax, b.imax)
                ));
            }
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 8. Sign involution: involutivity, exact l2 isometry, 1-D action.

#[test]
fn criterion_08_sign_involution() {
    report(8, "sign involution", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(3307);
        for case in 0..50 {
            let dim = rng.gen_range(1..=3usize);
            let axis = BasisAxis::Laguerre { dim };
            let trunc = rng.gen_range(20..=80u64);
            let mut t =
                CoefficientTensor::new(vec![axis], vec![trunc]).map_err(|e| e.to_string())?;
            for _ in 0..25 {
                t.insert(
                    vec![rng.gen_range(0..=trunc)],
                    CRat::from_rat(random_rat(&mut rng)),
                )
                .map_err(|e| e.to_string())?;
            }
            let coords: Vec<usize> = (1..=dim).filter(|_| rng.gen_bool(0.6)).collect();
            let coords = if coords.is_empty() { vec![1] } else { coords };
            let once = hankel_clifford(&t, 0, &coords).map_err(|e| e.to_string())?;
            let twice = hankel_clifford(&once, 0, &coords).map_err(|e| e.to_string())?;
            if once.norm_sq() != t.norm_sq() {
                return Err(format!("case {case}: isometry broken"));
            }
            for (idx, v) in t.iter() {
                if twice.get(idx) != Some(v) {
                    return Err(format!("case {case}: involution broken at {idx:?}"));
                }
            }
        }
        // 1-D action: (a_0, -a_1, a_2, ...)
        let mut t = CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 1 }], vec![5])
            .map_err(|e| e.to_string())?;
        for k in 0..=5u64 {
            t.insert(vec![k], CRat::from_f64(k as f64 + 1.0, 0.0).unwrap())
                .map_err(|e| e.to_string())?;
        }
        let flipped = hankel_clifford(&t, 0, &[1]).map_err(|e| e.to_string())?;
        for k in 0..=5u64 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let (re, _) = flipped.get(&[k]).unwrap().to_f64_pair();
            if (re - sign * (k as f64 + 1.0)).abs() > 0.0 {
                return Err(format!("1-D action wrong at {k}"));
            }
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 9. Polydisc consistency: derivative bounds from planted envelopes, and
//    bounded-derivative functions give classifiable coefficients.

#[test]
fn criterion_09_polydisc() {
    report(9, "polydisc consistency", (|| {
        let w = gevrey(1.0, 400);
        let af = AssociatedFunction::new(&w);
        for h in [0.5, 1.0, 2.0] {
            let mut a = CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 1 }], vec![150])
                .map_err(|e| e.to_string())?;
            for m in 0..=150u64 {
                let logv = -af.eval(h * m as f64).map_err(|e| e.to_string())?.value;
                if logv < -650.0 {
                    continue;
                }
                a.insert(vec![m], CRat::from_f64(logv.exp(), 0.0).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            let fit = classify_decay(&a, &w).map_err(|e| e.to_string())?;
            if fit.classification != Classification::TestFunctionLike {
                return Err(format!("h={h}: planted coefficients misclassified"));
            }
            let mut c0 = 1.0f64;
            let mut a_fit = 0.0f64;
            for deg in 0..=10usize {
                for step in 0..8 {
                    let th = std::f64::consts::PI * step as f64 / 4.0;
                    let omega = [num_complex::Complex64::from_polar(0.9, th)];
                    let v = polydisc_eval(&a, &omega, &[deg], Some((&fit, &w)))
                        .map_err(|e| e.to_string())?;
                    if !v.tail_certified {
                        return Err(format!("h={h} p={deg}: tail not certified"));
                    }
                    let bound = v.value.norm() + v.tail_bound;
                    if deg == 0 {
                        c0 = c0.max(bound);
                    } else {
                        let ratio = (bound / (c0 * w.value(deg))).powf(1.0 / deg as f64);
                        a_fit = a_fit.max(ratio);
                    }
                }
            }
            if !a_fit.is_finite() || a_fit > 50.0 {
                return Err(format!("h={h}: derivative fit A = {a_fit}"));
            }
        }

        // converse: F(omega) = 1/(1 - omega/3) has all derivatives bounded
        // by 3^{-p} p! on |omega| <= 0.9; its a-coefficients classify as
        // dual-type (bounded), not indeterminate
        let mut b = CoefficientTensor::new(vec![BasisAxis::Laguerre { dim: 1 }], vec![120])
            .map_err(|e| e.to_string())?;
        for m in 0..=120u64 {
            b.insert(vec![m], CRat::from_rat(Rat::new(1.into(), BigInt::from(3).pow(m as u32))))
                .map_err(|e| e.to_string())?;
        }
        let a = a_from_b(&b).map_err(|e| e.to_string())?;
        let fit = classify_decay(&a, &w).map_err(|e| e.to_string())?;
        if fit.classification == Classification::Indeterminate {
            return Err("reconstructed coefficients unclassifiable".into());
        }
        Ok(())
    })());
}

// -------------------------------------------------------------------------
// 10. Hypoellipticity transfer on non-resonant systems.

#[test]
fn criterion_10_hypoellipticity_transfer() {
    report(10, "hypoellipticity transfer", (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(4409);
        let w = gevrey(1.0, 400);
        let af = AssociatedFunction::new(&w);
        for case in 0..10 {
            // positive symbol: c mu_i^power with c > 0
            let c = Rat::new(
                BigInt::from(rng.gen_range(1i64..=5)),
                BigInt::from(rng.gen_range(1i64..=4)),
            );
            let spec = OperatorSpec::new(vec![OperatorFactor {
                axis: BasisAxis::Hermite { dim: 1 },
                coeff: CoeffValue::Rational(c),
                power: rng.gen_range(1..=2),
            }])
            .map_err(|e| e.to_string())?;
            let rate = rng.gen_range(0.7..1.5);
            let mut f = CoefficientTensor::new(spec.axes(), vec![500]).map_err(|e| e.to_string())?;
            for i in 0..=500u64 {
                let g = ((2 * i + 1) as f64).sqrt();
                let logv = -af.eval(rate * g).map_err(|e| e.to_string())?.value;
                if logv < -650.0 {
                    continue;
                }
                f.insert(vec![i], CRat::from_f64(logv.exp(), 0.0).unwrap())
                    .map_err(|e| e.to_string())?;
            }
            let fit_f = classify_decay(&f, &w).map_err(|e| e.to_string())?;
            if fit_f.classification != Classification::TestFunctionLike {
                return Err(format!("case {case}: data not test-function-like"));
            }
            let opts = SolveOptions {
                weight: Some(&w),
                ..SolveOptions::default()
            };
            let rep = solve(&spec, &f, &opts).map_err(|e| e.to_string())?;
            if rep.verdict != SolveVerdict::Unique {
                return Err(format!("case {case}: unexpected resonance"));
            }
            if rep.hypoellipticity != eigenexpand::solver::Hypoellipticity::Preserved {
                return Err(format!(
                    "case {case}: hypoellipticity {:?}",
                    rep.hypoellipticity
                ));
            }
            // the divisor only shrinks magnitudes, so the solution keeps
            // at least the data's envelope rate (up to fitting slack)
            let fit_u = classify_decay(&rep.solution, &w).map_err(|e| e.to_string())?;
            if fit_u.rates[0] < 0.9 * fit_f.rates[0] {
                return Err(format!(
                    "case {case}: rate fell from {} to {}",
                    fit_f.rates[0], fit_u.rates[0]
                ));
            }
        }
        Ok(())
    })());
}
