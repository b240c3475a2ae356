//! Graded multi-index enumeration and the renumbering of Laguerre
//! eigenvalues into a single linear order.
//!
//! Multi-indices over `N_0^n` are ordered by total degree first; within a
//! level the order is graded-lexicographic with the last coordinate
//! varying fastest. Any fixed intra-level order yields the same `nu_p`
//! sequence; this one is fixed for deterministic serialization.

use crate::error::Error;
use crate::Result;

/// Number of checked-arithmetic multi-index points with `|e| = t` in
/// `N_0^n`: the stars-and-bars count `C(t + n - 1, n - 1)`.
pub fn level_count(n: usize, t: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    binomial(t as u64 + n as u64 - 1, n as u64 - 1)
        .ok_or_else(|| Error::domain("level count overflows u64"))
}

/// Exact binomial with overflow-checked arithmetic.
fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Cumulative counts `c_t = #{ e : |e| <= t }` for one dimension.
#[derive(Clone, Debug)]
pub struct LevelTable {
    dim: usize,
    cumulative: Vec<u64>,
}

impl LevelTable {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        Ok(LevelTable {
            dim,
            cumulative: vec![],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn grow_to_level(&mut self, t: usize) -> Result<()> {
        while self.cumulative.len() <= t {
            let level = self.cumulative.len();
            let prev = self.cumulative.last().copied().unwrap_or(0);
            let c = prev
                .checked_add(level_count(self.dim, level)?)
                .ok_or_else(|| Error::domain("cumulative index count overflows u64"))?;
            self.cumulative.push(c);
        }
        Ok(())
    }

    /// Smallest level whose cumulative count exceeds `p`, together with
    /// the rank of `p` inside that level.
    fn locate(&mut self, p: u64) -> Result<(usize, u64)> {
        let mut t = 0usize;
        loop {
            self.grow_to_level(t)?;
            if self.cumulative[t] > p {
                let base = if t == 0 { 0 } else { self.cumulative[t - 1] };
                return Ok((t, p - base));
            }
            t += 1;
        }
    }

    pub fn cumulative(&mut self, t: usize) -> Result<u64> {
        self.grow_to_level(t)?;
        Ok(self.cumulative[t])
    }
}

/// Linear index -> multi-index (grading-compatible bijection).
pub fn linear_to_multi(n: usize, p: u64) -> Result<Vec<usize>> {
    let mut table = LevelTable::new(n)?;
    let (t, rank) = table.locate(p)?;
    let mut coords = Vec::with_capacity(n);
    let mut remaining_degree = t as u64;
    let mut rank = rank;
    for axis in 0..n {
        let tail_dims = n - axis - 1;
        if tail_dims == 0 {
            coords.push(remaining_degree as usize);
            break;
        }
        // first coordinate grows slowest: count tail completions per value
        let mut v = 0u64;
        loop {
            let tail = level_count(tail_dims, (remaining_degree - v) as usize)?;
            if rank < tail {
                break;
            }
            rank -= tail;
            v += 1;
        }
        coords.push(v as usize);
        remaining_degree -= v;
    }
    Ok(coords)
}

/// Multi-index -> linear index, inverse of [`linear_to_multi`].
pub fn multi_to_linear(n: usize, m: &[usize]) -> Result<u64> {
    if m.len() != n {
        return Err(Error::Arity {
            expected: n,
            got: m.len(),
        });
    }
    let t: usize = m.iter().sum();
    let mut table = LevelTable::new(n)?;
    let base = if t == 0 { 0 } else { table.cumulative(t - 1)? };
    // rank within the level: coordinates ahead in the graded-lex order
    let mut rank: u64 = 0;
    let mut remaining_degree = t;
    for (axis, &c) in m.iter().enumerate() {
        let tail_dims = n - axis - 1;
        if tail_dims == 0 {
            break;
        }
        for v in 0..c {
            rank = rank
                .checked_add(level_count(tail_dims, remaining_degree - v)?)
                .ok_or_else(|| Error::domain("rank overflows u64"))?;
        }
        remaining_degree -= c;
    }
    Ok(base + rank)
}

/// `nu_p`: the eigenvalue of the linearized Laguerre basis element `p`,
/// i.e. the total degree of its multi-index.
pub fn laguerre_nu(n: usize, p: u64) -> Result<u64> {
    Ok(linear_to_multi(n, p)?.iter().map(|&c| c as u64).sum())
}
