//! K₀ through the atoms of the projection ring.
//!
//! The ring generated by the source projections `{Q_t : t ∈ T}` is free
//! abelian on its atoms `∏_{t∈A} Q_t ∏_{t∉A} (1 − Q_t)`. Two independent
//! routes find the nonzero atoms:
//!
//! * combinatorially, every nonzero `p ∈ 𝒫` is the top of exactly one atom,
//!   with support `A_p = {t : p ≤ Q_t}`;
//! * by refinement of the block model, where every `Q_t` is diagonal and an
//!   atom is nonzero iff some basis vector is fixed by exactly the `Q_t`
//!   with `t ∈ A`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{projection_closure, AlgebraElement, ProjectionSet, StandardWord};
use crate::rep::block_basis;
use crate::scalar::Scalar;
use crate::semigraph::{ElementId, Semigraph};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error("atom algorithms disagree: {only_combinatorial} supports only combinatorial, {only_oracle} only refinement")]
    Disagreement { only_combinatorial: usize, only_oracle: usize },
    #[error("element is not an integral combination of projections in 𝒫")]
    NotInRing,
    #[error("the zero projection has no class")]
    ZeroProjection,
    #[error("element belongs to a different semigraph")]
    ForeignElement,
}

/// A nonzero atom: its largest projection in 𝒫 and the generators above it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    pub top: ProjectionSet,
    /// `{t : atom ≤ Q_t}`, sorted.
    pub support: Vec<ElementId>,
}

impl Atom {
    /// `top · ∏ (1 − Q_t)` over generators outside the support, expanded.
    ///
    /// Generators with a different source multiply `top` to zero and are
    /// skipped; the expansion is exponential in the remaining count.
    pub fn element<S: Scalar>(&self, sg: &Semigraph) -> AlgebraElement<S> {
        let source = self.top.source(sg);
        let mut terms: BTreeMap<ProjectionSet, S> = BTreeMap::from([(self.top.clone(), S::one())]);
        for t in sg.ids() {
            if self.support.binary_search(&t).is_ok() || Some(sg.source(t)) != source {
                continue;
            }
            let q = ProjectionSet::generator(t);
            let mut next = terms.clone();
            for (p, c) in &terms {
                let pq = p.product(&q, sg);
                if pq.is_zero() {
                    continue;
                }
                let entry = next.entry(pq).or_insert_with(S::zero);
                *entry = entry.clone() - c.clone();
            }
            next.retain(|_, c| !c.is_zero());
            terms = next;
        }
        let mut out = AlgebraElement::zero(sg.fingerprint());
        for (p, c) in terms {
            out.add_term(StandardWord::projection(&p).expect("nonzero"), c);
        }
        out
    }

    pub fn support_names(&self, sg: &Semigraph) -> Vec<String> {
        self.support.iter().map(|&t| sg.name(t).to_string()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct K0Result {
    pub rank: usize,
    /// Atoms in canonical order of their tops.
    pub atoms: Vec<Atom>,
    /// For each element `t` (by index), the atoms below `Q_t`.
    pub incidence: Vec<Vec<usize>>,
    pub k1: usize,
    semigraph: u64,
}

/// 𝒫 ∖ {0}.
pub fn enumerate_p(sg: &Semigraph) -> Vec<ProjectionSet> {
    projection_closure(sg)
}

/// `{t : p ≤ Q_t}`: everything below a member of `p`.
pub fn support_of(sg: &Semigraph, p: &ProjectionSet) -> Vec<ElementId> {
    block_basis(sg, p.members())
}

pub fn atoms_combinatorial(sg: &Semigraph) -> Vec<Atom> {
    let ps = enumerate_p(sg);
    let mut atoms: Vec<Atom> = ps
        .into_par_iter()
        .map(|p| {
            let support = support_of(sg, &p);
            Atom { top: p, support }
        })
        .collect();
    atoms.sort();
    atoms
}

/// Supports of the nonzero atoms, found by refining the block model's basis
/// by the diagonal operators `Q_t`. Streams over ℓ²(T) and the blocks of all
/// ≤-antichains with a common source; the other blocks split into direct sums
/// of these, since `λ_t` preserves the source of a basis vector.
pub fn atoms_oracle(sg: &Semigraph) -> Vec<Vec<ElementId>> {
    let n = sg.len();
    let signature = |y: ElementId, inside: &dyn Fn(ElementId) -> bool| {
        let mut bits = FixedBitSet::with_capacity(n);
        for t in sg.ids() {
            if let Some(ty) = sg.product(t, y) {
                if inside(ty) {
                    bits.insert(t.index());
                }
            }
        }
        bits
    };
    let mut found: HashSet<FixedBitSet> = sg.ids().map(|y| signature(y, &|_| true)).collect();
    let per_start: Vec<HashSet<FixedBitSet>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let first = ElementId(first as u32);
            let source = sg.source(first);
            let mut local = HashSet::new();
            let mut chosen = vec![first];
            let mut visit = |a: &[ElementId]| {
                let inside = |z: ElementId| a.iter().any(|&m| sg.leq_fast(z, m));
                for y in block_basis(sg, a) {
                    local.insert(signature(y, &inside));
                }
            };
            extend_antichains(sg, first.index() + 1, source, &mut chosen, &mut visit);
            local
        })
        .collect();
    for s in per_start {
        found.extend(s);
    }
    let mut supports: Vec<Vec<ElementId>> =
        found.into_iter().map(|b| b.ones().map(|i| ElementId(i as u32)).collect()).collect();
    supports.sort();
    supports
}

fn extend_antichains(
    sg: &Semigraph,
    start: usize,
    source: ElementId,
    chosen: &mut Vec<ElementId>,
    visit: &mut impl FnMut(&[ElementId]),
) {
    visit(chosen);
    for i in start..sg.len() {
        let x = ElementId(i as u32);
        if sg.source(x) == source && chosen.iter().all(|&c| !sg.leq_fast(c, x) && !sg.leq_fast(x, c)) {
            chosen.push(x);
            extend_antichains(sg, i + 1, source, chosen, visit);
            chosen.pop();
        }
    }
}

/// K₀ rank, atoms and incidence; both atom algorithms must agree.
pub fn k0(sg: &Semigraph) -> Result<K0Result, KTheoryError> {
    let (atoms, oracle) = rayon::join(|| atoms_combinatorial(sg), || atoms_oracle(sg));
    let combinatorial: BTreeSet<&Vec<ElementId>> = atoms.iter().map(|a| &a.support).collect();
    let refined: BTreeSet<&Vec<ElementId>> = oracle.iter().collect();
    if combinatorial != refined || combinatorial.len() != atoms.len() {
        return Err(KTheoryError::Disagreement {
            only_combinatorial: combinatorial.difference(&refined).count() + atoms.len() - combinatorial.len(),
            only_oracle: refined.difference(&combinatorial).count(),
        });
    }
    let mut incidence = vec![Vec::new(); sg.len()];
    for (i, a) in atoms.iter().enumerate() {
        for &t in &a.support {
            incidence[t.index()].push(i);
        }
    }
    Ok(K0Result { rank: atoms.len(), atoms, incidence, k1: 0, semigraph: sg.fingerprint() })
}

impl K0Result {
    pub fn semigraph(&self) -> u64 {
        self.semigraph
    }

    /// Index of the atom whose top is `p`.
    pub fn atom_of(&self, p: &ProjectionSet) -> Option<usize> {
        self.atoms.binary_search_by(|a| a.top.cmp(p)).ok()
    }
}

/// `[p]` as the 0/1 vector of atoms below `p`.
pub fn k0_class(p: &ProjectionSet, res: &K0Result) -> Result<Vec<i64>, KTheoryError> {
    if p.is_zero() {
        return Err(KTheoryError::ZeroProjection);
    }
    Ok(res
        .atoms
        .iter()
        .map(|a| i64::from(p.members().iter().all(|m| a.support.binary_search(m).is_ok())))
        .collect())
}

/// Class of an integral combination of projections in 𝒫.
pub fn k0_class_element(x: &AlgebraElement<Rational>, res: &K0Result) -> Result<Vec<BigInt>, KTheoryError> {
    if x.semigraph() != res.semigraph {
        return Err(KTheoryError::ForeignElement);
    }
    let mut out = vec![BigInt::from(0); res.rank];
    for (w, c) in x.terms() {
        if !w.is_projection() || !c.is_integer() {
            return Err(KTheoryError::NotInRing);
        }
        let coef = c.to_integer();
        for (slot, bit) in out.iter_mut().zip(k0_class(w.mid(), res)?) {
            if bit == 1 {
                *slot += &coef;
            }
        }
    }
    Ok(out)
}
