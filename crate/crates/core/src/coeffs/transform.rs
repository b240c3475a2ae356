//! Analysis and synthesis: projecting point-evaluable functions onto the
//! product basis by quadrature and summing truncated expansions back to
//! point values, plus the sign involution on Laguerre axes and the
//! weighted-seminorm estimator.

use crate::bases::laguerre::{derivative_in_coeff_space, multiply_by_y_in_coeff_space};
use crate::bases::BasisAxis;
use crate::coeffs::tensor::CoefficientTensor;
use crate::error::Error;
use crate::indexing::linear_to_multi;
use crate::rational::CRat;
use crate::weights::WeightSequence;
use crate::Result;

/// Extra quadrature order beyond the maximal basis degree, so that all
/// Gram-type integrands the truncation can produce are integrated
/// exactly.
pub const ORDER_GUARD: usize = 5;

/// Projects `f` onto the product basis by tensor quadrature:
/// `a_idx = integral of f * basis_idx` with each axis's natural measure.
pub fn expand(
    f: impl Fn(&[f64]) -> f64,
    axes: Vec<BasisAxis>,
    truncation: Vec<u64>,
) -> Result<CoefficientTensor> {
    expand_with_boost(f, axes, truncation, 0)
}

/// Like [`expand`], with `boost` extra quadrature points per axis for
/// integrands that are not polynomial against the implicit weight.
pub fn expand_with_boost(
    f: impl Fn(&[f64]) -> f64,
    axes: Vec<BasisAxis>,
    truncation: Vec<u64>,
    boost: usize,
) -> Result<CoefficientTensor> {
    let mut tensor = CoefficientTensor::new(axes, truncation)?;
    let axes = tensor.axes().to_vec();
    let truncation = tensor.truncation().to_vec();

    // per-axis quadrature rules and basis-value tables
    let mut rules = Vec::with_capacity(axes.len());
    let mut tables: Vec<Vec<Vec<f64>>> = Vec::with_capacity(axes.len());
    for (axis, &t) in axes.iter().zip(&truncation) {
        axis.point_dim().map_err(|_| {
            Error::Unsupported("expansion requires numerical axes".into())
        })?;
        let order = max_degree(axis, t)? + ORDER_GUARD + boost;
        let rule = axis.quadrature(order)?;
        // table[i][q] = basis_i(node_q) * weight_correction(node_q)
        let mut table = vec![vec![0.0; rule.nodes.len()]; t as usize + 1];
        for (q, node) in rule.nodes.iter().enumerate() {
            let corr = axis.weight_correction(node);
            for (i, row) in table.iter_mut().enumerate() {
                row[q] = axis.eval(i as u64, node)? * corr;
            }
        }
        rules.push(rule);
        tables.push(table);
    }

    let counts: Vec<usize> = rules.iter().map(|r| r.nodes.len()).collect();
    let dims: Vec<usize> = axes.iter().map(|a| a.point_dim().unwrap()).collect();
    let total_dim: usize = dims.iter().sum();

    let idx_counts: Vec<usize> = truncation.iter().map(|&t| t as usize + 1).collect();
    let n_coeffs: usize = idx_counts.iter().product();
    let mut acc = vec![0.0f64; n_coeffs];

    let mut node_idx = vec![0usize; axes.len()];
    let mut point = vec![0.0f64; total_dim];
    loop {
        let mut w = 1.0;
        let mut off = 0;
        for (a, &q) in node_idx.iter().enumerate() {
            w *= rules[a].weights[q];
            let node = &rules[a].nodes[q];
            point[off..off + dims[a]].copy_from_slice(node);
            off += dims[a];
        }
        let fw = f(&point) * w;
        if fw != 0.0 {
            // accumulate into every coefficient slot
            accumulate(&mut acc, &tables, &node_idx, &idx_counts, fw);
        }
        if !advance(&mut node_idx, &counts) {
            break;
        }
    }

    let mut flat = 0usize;
    let mut idx = vec![0u64; axes.len()];
    loop {
        if let Some(v) = CRat::from_f64(acc[flat], 0.0) {
            tensor.insert(idx.clone(), v)?;
        }
        flat += 1;
        let mut a = axes.len();
        loop {
            if a == 0 {
                return Ok(tensor);
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < idx_counts[a] as u64 {
                break;
            }
            idx[a] = 0;
        }
    }
}

fn accumulate(
    acc: &mut [f64],
    tables: &[Vec<Vec<f64>>],
    node_idx: &[usize],
    idx_counts: &[usize],
    fw: f64,
) {
    // acc is laid out row-major over coefficient indices
    let rank = tables.len();
    let mut idx = vec![0usize; rank];
    let mut flat = 0usize;
    loop {
        let mut term = fw;
        for a in 0..rank {
            term *= tables[a][idx[a]][node_idx[a]];
        }
        acc[flat] += term;
        flat += 1;
        let mut a = rank;
        loop {
            if a == 0 {
                return;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < idx_counts[a] {
                break;
            }
            idx[a] = 0;
        }
    }
}

fn advance(idx: &mut [usize], counts: &[usize]) -> bool {
    let mut a = idx.len();
    while a > 0 {
        a -= 1;
        idx[a] += 1;
        if idx[a] < counts[a] {
            return true;
        }
        idx[a] = 0;
    }
    false
}

/// Highest per-coordinate polynomial degree reachable by linear indices
/// up to `t` on this axis (drives the quadrature order).
fn max_degree(axis: &BasisAxis, t: u64) -> Result<usize> {
    match axis {
        BasisAxis::Laguerre { dim } | BasisAxis::Hermite { dim } => {
            Ok(linear_to_multi(*dim, t)?.iter().sum())
        }
        BasisAxis::Sphere { ambient } => {
            let idx = crate::bases::SphereIndexer::new(*ambient)?;
            Ok(idx.delinearize(t)?.0 + 1)
        }
        BasisAxis::Abstract { .. } => {
            Err(Error::Unsupported("expansion requires numerical axes".into()))
        }
    }
}

/// Evaluates the truncated expansion at each point (coordinates of all
/// axes concatenated). Returns (re, im) pairs.
pub fn synthesize(c: &CoefficientTensor, points: &[Vec<f64>]) -> Result<Vec<(f64, f64)>> {
    let dims: Vec<usize> = c
        .axes()
        .iter()
        .map(|a| a.point_dim())
        .collect::<Result<_>>()?;
    let total: usize = dims.iter().sum();
    let mut out = Vec::with_capacity(points.len());
    for point in points {
        if point.len() != total {
            return Err(Error::Arity {
                expected: total,
                got: point.len(),
            });
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for (idx, v) in c.iter() {
            let mut basis = 1.0;
            let mut off = 0;
            for (a, axis) in c.axes().iter().enumerate() {
                basis *= axis.eval(idx[a], &point[off..off + dims[a]])?;
                off += dims[a];
            }
            let (vr, vi) = v.to_f64_pair();
            re += vr * basis;
            im += vi * basis;
        }
        out.push((re, im));
    }
    Ok(out)
}

/// Sign involution on a Laguerre axis: the entry at multi-index `m` is
/// multiplied by `(-1)^{sum of the chosen coordinates of m}`. `coords`
/// are 1-based coordinate numbers within the axis.
pub fn hankel_clifford(
    c: &CoefficientTensor,
    axis: usize,
    coords: &[usize],
) -> Result<CoefficientTensor> {
    let dim = match c.axes().get(axis) {
        Some(BasisAxis::Laguerre { dim }) => *dim,
        Some(other) => {
            return Err(Error::domain(format!(
                "sign involution needs a laguerre axis, got {}",
                other.label()
            )))
        }
        None => return Err(Error::domain(format!("no axis {axis}"))),
    };
    let mut seen = vec![false; dim];
    for &l in coords {
        if l == 0 || l > dim {
            return Err(Error::domain(format!(
                "coordinate {l} out of range 1..={dim}"
            )));
        }
        if seen[l - 1] {
            return Err(Error::domain(format!("coordinate {l} repeated")));
        }
        seen[l - 1] = true;
    }
    let mut out = CoefficientTensor::new(c.axes().to_vec(), c.truncation().to_vec())?;
    for (idx, v) in c.iter() {
        let m = linear_to_multi(dim, idx[axis])?;
        let parity: usize = coords.iter().map(|&l| m[l - 1]).sum();
        let signed = if parity % 2 == 0 { v.clone() } else { -v.clone() };
        out.insert(idx.clone(), signed)?;
    }
    Ok(out)
}

/// Finite-range estimate of the weighted seminorm
/// `sup_{p <= pmax, k <= kmax} ||t^{(p+k)/2} f^{(p)}||_2 / (A^{p+k} sqrt(M_p M_k))`
/// for a one-dimensional Laguerre expansion. Derivatives and the `t`
/// powers act on coefficients via the exact recurrences; the norm then
/// reads off by orthonormality.
pub fn estimate_g_seminorm(
    c: &CoefficientTensor,
    weight: &WeightSequence,
    a_param: f64,
    pmax: usize,
    kmax: usize,
) -> Result<f64> {
    if c.axes() != [BasisAxis::Laguerre { dim: 1 }] {
        return Err(Error::domain(
            "seminorm estimator needs a single one-dimensional laguerre axis",
        ));
    }
    if pmax > 10 || kmax > 10 {
        return Err(Error::Unsupported(
            "seminorm ranges above 10 are not stable in double precision".into(),
        ));
    }
    if !(a_param > 0.0) {
        return Err(Error::domain("seminorm scale A must be positive"));
    }
    if c.is_empty() {
        return Ok(0.0);
    }
    let deg = c.iter().map(|(idx, _)| idx[0]).max().unwrap() as usize;
    let mut re = vec![0.0f64; deg + 1];
    let mut im = vec![0.0f64; deg + 1];
    for (idx, v) in c.iter() {
        let (vr, vi) = v.to_f64_pair();
        re[idx[0] as usize] = vr;
        im[idx[0] as usize] = vi;
    }

    let mut best = 0.0f64;
    let mut dre = re;
    let mut dim_part = im;
    for p in 0..=pmax {
        for k in 0..=kmax {
            let norm_sq = t_power_norm_sq(&dre, p + k) + t_power_norm_sq(&dim_part, p + k);
            if norm_sq <= 0.0 {
                continue;
            }
            let log_ratio = 0.5 * norm_sq.ln()
                - (p + k) as f64 * a_param.ln()
                - 0.5 * (weight.log_value(p) + weight.log_value(k));
            best = best.max(log_ratio.exp());
        }
        dre = derivative_in_coeff_space(&dre);
        dim_part = derivative_in_coeff_space(&dim_part);
    }
    Ok(best)
}

/// `<t^s g, g>` for `g` given by coefficients, computed by applying the
/// tridiagonal `y` action `s` times and pairing with the original vector.
fn t_power_norm_sq(coeffs: &[f64], s: usize) -> f64 {
    let mut v = coeffs.to_vec();
    for _ in 0..s {
        v = multiply_by_y_in_coeff_space(&v);
    }
    v.iter().zip(coeffs).map(|(a, b)| a * b).sum()
}
