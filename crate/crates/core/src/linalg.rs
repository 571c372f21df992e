//! Exact sparse row reduction.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector: coordinate → nonzero coefficient.
pub type SparseVec<S> = BTreeMap<u64, S>;

/// Incremental reduced row-echelon basis of a subspace.
///
/// Every stored row has leading coordinate equal to its pivot with
/// coefficient one; no two rows share a pivot. Inserting a vector reduces it
/// against the basis and keeps the remainder if it is nonzero.
#[derive(Clone, Debug)]
pub struct EchelonBasis<S> {
    rows: BTreeMap<u64, SparseVec<S>>,
}

impl<S: Scalar> Default for EchelonBasis<S> {
    fn default() -> Self {
        EchelonBasis { rows: BTreeMap::new() }
    }
}

impl<S: Scalar> EchelonBasis<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut v: SparseVec<S> = v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect();
        let mut cursor = 0u64;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(pivot) = next else { break };
            let factor = v[&pivot].clone();
            for (k, c) in &self.rows[&pivot] {
                let updated = v.get(k).cloned().unwrap_or_else(S::zero) - factor.clone() * c.clone();
                if updated.is_zero() {
                    v.remove(k);
                } else {
                    v.insert(*k, updated);
                }
            }
            cursor = pivot + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<S>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<S>) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = S::one() / lead.clone();
        let row: SparseVec<S> = r.iter().map(|(k, c)| (*k, c.clone() * inv.clone())).collect();
        for other in self.rows.values_mut() {
            if let Some(f) = other.get(&pivot).cloned() {
                for (k, c) in &row {
                    let updated = other.get(k).cloned().unwrap_or_else(S::zero) - f.clone() * c.clone();
                    if updated.is_zero() {
                        other.remove(k);
                    } else {
                        other.insert(*k, updated);
                    }
                }
            }
        }
        self.rows.insert(pivot, row);
        true
    }
}

/// Rank of a family of sparse vectors.
pub fn rank<S: Scalar>(vectors: impl IntoIterator<Item = SparseVec<S>>) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(&v);
    }
    basis.rank()
}
