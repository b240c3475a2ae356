//! Sparse coefficient tensors over products of basis axes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bases::BasisAxis;
use crate::error::Error;
use crate::rational::{format_rat, parse_rat, CRat, Rat};
use crate::Result;

/// Magnitudes below this are treated as structural zeros and dropped on
/// insert, so "the entry is absent" is a meaningful statement downstream.
pub const DROP_THRESHOLD: f64 = 1e-30;

#[derive(Clone, Debug)]
pub struct CoefficientTensor {
    axes: Vec<BasisAxis>,
    truncation: Vec<u64>,
    entries: BTreeMap<Vec<u64>, CRat>,
}

impl CoefficientTensor {
    pub fn new(axes: Vec<BasisAxis>, truncation: Vec<u64>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::domain("tensor needs at least one axis"));
        }
        if axes.len() != truncation.len() {
            return Err(Error::Arity {
                expected: axes.len(),
                got: truncation.len(),
            });
        }
        for axis in &axes {
            axis.validate()?;
        }
        Ok(CoefficientTensor {
            axes,
            truncation,
            entries: BTreeMap::new(),
        })
    }

    pub fn axes(&self) -> &[BasisAxis] {
        &self.axes
    }

    pub fn truncation(&self) -> &[u64] {
        &self.truncation
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_index(&self, idx: &[u64]) -> Result<()> {
        if idx.len() != self.axes.len() {
            return Err(Error::Arity {
                expected: self.axes.len(),
                got: idx.len(),
            });
        }
        for (a, (&i, &t)) in idx.iter().zip(&self.truncation).enumerate() {
            if i > t {
                return Err(Error::domain(format!(
                    "index {i} exceeds truncation {t} on axis {a}"
                )));
            }
        }
        Ok(())
    }

    /// Stores a value, dropping structural zeros.
    pub fn insert(&mut self, idx: Vec<u64>, value: CRat) -> Result<()> {
        self.check_index(&idx)?;
        if value.abs_f64() < DROP_THRESHOLD {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, value);
        }
        Ok(())
    }

    pub fn get(&self, idx: &[u64]) -> Option<&CRat> {
        self.entries.get(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u64>, &CRat)> {
        self.entries.iter()
    }

    /// Exact squared l^2 norm.
    pub fn norm_sq(&self) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for v in self.entries.values() {
            acc += v.norm_sq();
        }
        acc
    }

    /// Reorders axes; entry indices are permuted accordingly.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.axes.len() {
            return Err(Error::Arity {
                expected: self.axes.len(),
                got: perm.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::domain("invalid axis permutation"));
            }
            seen[p] = true;
        }
        let axes = perm.iter().map(|&p| self.axes[p].clone()).collect();
        let truncation = perm.iter().map(|&p| self.truncation[p]).collect();
        let entries = self
            .entries
            .iter()
            .map(|(idx, v)| (perm.iter().map(|&p| idx[p]).collect(), v.clone()))
            .collect();
        Ok(CoefficientTensor {
            axes,
            truncation,
            entries,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = TensorFile {
            axes: self.axes.clone(),
            truncation: self.truncation.clone(),
            entries: self
                .entries
                .iter()
                .map(|(idx, v)| EntryFile {
                    idx: idx.clone(),
                    re: format_rat(&v.re),
                    im: format_rat(&v.im),
                })
                .collect(),
        };
        serde_json::to_value(file).expect("tensor serialization cannot fail")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let file: TensorFile = serde_json::from_value(value)?;
        let mut tensor = CoefficientTensor::new(file.axes, file.truncation)?;
        for e in file.entries {
            let re = parse_rat(&e.re).map_err(Error::domain)?;
            let im = parse_rat(&e.im).map_err(Error::domain)?;
            tensor.insert(e.idx, CRat { re, im })?;
        }
        Ok(tensor)
    }
}

#[derive(Serialize, Deserialize)]
struct TensorFile {
    axes: Vec<BasisAxis>,
    truncation: Vec<u64>,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    idx: Vec<u64>,
    re: String,
    im: String,
}
