//! Finite block model of the left regular representation.
//!
//! The Hilbert space ℓ²(Δ) is replaced by the direct sum of ℓ²(T) and one
//! block ℓ²(Δ_A) per label A, whose basis is
//! `B_A = {y ∈ T : y ≤ a for some a ∈ A}`. Generators act by
//! `λ_t δ_y = δ_{ty}` when `ty` is defined and lies in the block, and by zero
//! otherwise, so every generator is a partial permutation of the global
//! basis. Operators are sparse exact matrices over the flattened basis.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{projection_closure, Algebra, AlgebraElement, ProjectionSet, StandardWord, Token};
use crate::linalg::{EchelonBasis, SparseVec};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::semigraph::{ElementId, Leg, Semigraph};

const NONE: u32 = u32::MAX;

/// Default bound on the number of blocks a model may allocate.
pub const DEFAULT_BLOCK_CAP: usize = 1 << 16;

/// Terms above which [`RepModel::represent`] fans out over threads.
const PARALLEL_TERMS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("{count} blocks requested, cap is {cap}")]
    TooManyBlocks { count: u128, cap: usize },
    #[error("operators come from different block models")]
    Incompatible,
    #[error("element belongs to a different semigraph")]
    ForeignElement,
    #[error("block index {0} out of range")]
    UnknownBlock(usize),
    #[error("override of {generator} on block {block} is not a partial injection of the block basis")]
    NotInjective { generator: String, block: usize },
}

/// Which labels get a block besides ℓ²(T).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockMode {
    /// Every nonempty subset of T.
    AllSubsets,
    /// Every nonempty ≤-antichain of T.
    Antichains,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockLabel {
    /// ℓ²(T).
    Elements,
    /// ℓ²(Δ_A) for a set A.
    Subset(Vec<ElementId>),
    /// A copy of the block of the underlying set, for tuples with repeated
    /// or permuted entries.
    Tuple(Vec<ElementId>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub label: BlockLabel,
    /// First global basis index of this block.
    pub offset: usize,
    pub basis: Vec<ElementId>,
}

impl Block {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.basis.len()
    }

    pub fn label_names(&self, sg: &Semigraph) -> String {
        match &self.label {
            BlockLabel::Elements => "T".to_string(),
            BlockLabel::Subset(a) => format!("{{{}}}", names(sg, a).join(",")),
            BlockLabel::Tuple(a) => format!("({})", names(sg, a).join(",")),
        }
    }
}

fn names(sg: &Semigraph, xs: &[ElementId]) -> Vec<String> {
    xs.iter().map(|&x| sg.name(x).to_string()).collect()
}

/// `B_A`, sorted.
pub fn block_basis(sg: &Semigraph, label: &[ElementId]) -> Vec<ElementId> {
    sg.ids().filter(|&y| label.iter().any(|&a| sg.leq_fast(y, a))).collect()
}

/// Number of nonempty ≤-antichains, without materialising them.
pub fn count_antichains(sg: &Semigraph) -> u128 {
    let n = sg.len();
    let mut total = 0u128;
    let mut stack: Vec<(usize, Vec<ElementId>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        for i in start..n {
            let x = ElementId(i as u32);
            if chosen.iter().all(|&c| !sg.leq_fast(c, x) && !sg.leq_fast(x, c)) {
                total += 1;
                let mut next = chosen.clone();
                next.push(x);
                stack.push((i + 1, next));
            }
        }
    }
    total
}

/// Calls `visit` on every nonempty ≤-antichain in lexicographic order.
pub fn for_each_antichain(sg: &Semigraph, mut visit: impl FnMut(&[ElementId])) {
    fn go(sg: &Semigraph, start: usize, chosen: &mut Vec<ElementId>, visit: &mut impl FnMut(&[ElementId])) {
        for i in start..sg.len() {
            let x = ElementId(i as u32);
            if chosen.iter().all(|&c| !sg.leq_fast(c, x) && !sg.leq_fast(x, c)) {
                chosen.push(x);
                visit(chosen);
                go(sg, i + 1, chosen, visit);
                chosen.pop();
            }
        }
    }
    go(sg, 0, &mut Vec::new(), &mut visit);
}

/// The T-block followed by one block per label of `mode`.
pub fn enumerate_blocks(sg: &Semigraph, mode: BlockMode, cap: usize) -> Result<Vec<Block>, RepError> {
    let n = sg.len();
    let count: u128 = match mode {
        BlockMode::AllSubsets => {
            if n >= 127 {
                u128::MAX
            } else {
                (1u128 << n) - 1
            }
        }
        BlockMode::Antichains => count_antichains(sg),
    };
    if count + 1 > cap as u128 {
        return Err(RepError::TooManyBlocks { count: count + 1, cap });
    }
    let mut labels: Vec<Vec<ElementId>> = Vec::with_capacity(count as usize);
    match mode {
        BlockMode::AllSubsets => {
            for mask in 1u64..(1u64 << n) {
                labels.push((0..n).filter(|i| mask >> i & 1 == 1).map(|i| ElementId(i as u32)).collect());
            }
            labels.sort();
        }
        BlockMode::Antichains => for_each_antichain(sg, |a| labels.push(a.to_vec())),
    }
    let mut blocks = Vec::with_capacity(labels.len() + 1);
    blocks.push(Block { label: BlockLabel::Elements, offset: 0, basis: sg.ids().collect() });
    let mut offset = n;
    for a in labels {
        let basis = block_basis(sg, &a);
        let len = basis.len();
        blocks.push(Block { label: BlockLabel::Subset(a), offset, basis });
        offset += len;
    }
    Ok(blocks)
}

/// The partial map of `λ_t` on one block, in local coordinates.
pub fn lambda_map(sg: &Semigraph, t: ElementId, block: &Block) -> Vec<Option<usize>> {
    let position: HashMap<ElementId, usize> = block.basis.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    block
        .basis
        .iter()
        .map(|&y| sg.product(t, y).and_then(|ty| position.get(&ty).copied()))
        .collect()
}

/// The 0/1 matrix of `λ_t` on one block (`m[row][col]`).
pub fn lambda_matrix(sg: &Semigraph, t: ElementId, block: &Block) -> Vec<Vec<u8>> {
    let map = lambda_map(sg, t, block);
    let mut m = vec![vec![0u8; block.len()]; block.len()];
    for (col, row) in map.iter().enumerate() {
        if let Some(r) = row {
            m[*r][col] = 1;
        }
    }
    m
}

/// The represented algebra: blocks plus the action of every generator.
#[derive(Clone, Debug)]
pub struct RepModel<'a> {
    sg: &'a Semigraph,
    mode: BlockMode,
    blocks: Vec<Block>,
    by_label: HashMap<BlockLabel, usize>,
    dim: usize,
    /// `forward[t][c]`: global index of `λ_t δ_c`, or `NONE`.
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
    id: u64,
}

impl<'a> RepModel<'a> {
    pub fn new(sg: &'a Semigraph, mode: BlockMode) -> Result<Self, RepError> {
        Self::with_cap(sg, mode, DEFAULT_BLOCK_CAP)
    }

    pub fn with_cap(sg: &'a Semigraph, mode: BlockMode, cap: usize) -> Result<Self, RepError> {
        let blocks = enumerate_blocks(sg, mode, cap)?;
        let mut model = RepModel {
            sg,
            mode,
            blocks: Vec::new(),
            by_label: HashMap::new(),
            dim: 0,
            forward: vec![Vec::new(); sg.len()],
            backward: vec![Vec::new(); sg.len()],
            id: 0,
        };
        for b in blocks {
            model.push_block(b.label, b.basis);
        }
        model.rehash();
        Ok(model)
    }

    fn push_block(&mut self, label: BlockLabel, basis: Vec<ElementId>) {
        let offset = self.dim;
        let block = Block { label: label.clone(), offset, basis };
        for t in self.sg.ids() {
            let map = lambda_map(self.sg, t, &block);
            let fwd = &mut self.forward[t.index()];
            let bwd = &mut self.backward[t.index()];
            fwd.resize(offset + block.len(), NONE);
            bwd.resize(offset + block.len(), NONE);
            for (col, row) in map.into_iter().enumerate() {
                if let Some(r) = row {
                    fwd[offset + col] = (offset + r) as u32;
                    bwd[offset + r] = (offset + col) as u32;
                }
            }
        }
        self.dim += block.len();
        self.by_label.entry(label).or_insert(self.blocks.len());
        self.blocks.push(block);
    }

    fn rehash(&mut self) {
        let mut h = DefaultHasher::new();
        self.sg.fingerprint().hash(&mut h);
        self.blocks.iter().for_each(|b| (&b.label, b.offset, &b.basis).hash(&mut h));
        self.forward.hash(&mut h);
        self.id = h.finish();
    }

    pub fn semigraph(&self) -> &'a Semigraph {
        self.sg
    }

    pub fn mode(&self) -> BlockMode {
        self.mode
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Identifies the block structure and the generator action.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn block_index(&self, label: &BlockLabel) -> Option<usize> {
        self.by_label.get(label).copied()
    }

    /// Block holding a global basis index.
    pub fn block_of(&self, global: usize) -> usize {
        self.blocks.partition_point(|b| b.offset <= global) - 1
    }

    /// Appends a copy of the block of `set(tuple)` labelled by the tuple.
    pub fn add_tuple_block(&mut self, tuple: Vec<ElementId>) {
        let basis = block_basis(self.sg, &tuple);
        self.push_block(BlockLabel::Tuple(tuple), basis);
        self.rehash();
    }

    /// Replaces the action of `λ_t` on one block by a partial injection of
    /// its basis (local coordinates). Used to build corrupted models.
    pub fn override_generator(&mut self, t: ElementId, block: usize, map: &[Option<usize>]) -> Result<(), RepError> {
        let b = self.blocks.get(block).ok_or(RepError::UnknownBlock(block))?;
        let mut seen = vec![false; b.len()];
        let injective = map.len() == b.len()
            && map.iter().flatten().all(|&r| r < b.len() && !std::mem::replace(&mut seen[r], true));
        if !injective {
            return Err(RepError::NotInjective { generator: self.sg.name(t).to_string(), block });
        }
        let range = b.range();
        let offset = b.offset;
        let fwd = &mut self.forward[t.index()];
        let bwd = &mut self.backward[t.index()];
        for g in range {
            fwd[g] = NONE;
            bwd[g] = NONE;
        }
        for (col, row) in map.iter().enumerate() {
            if let Some(r) = row {
                fwd[offset + col] = (offset + r) as u32;
                bwd[offset + r] = (offset + col) as u32;
            }
        }
        self.rehash();
        Ok(())
    }

    /// Local partial map of `λ_t` on a block, including overrides.
    pub fn generator_map(&self, t: ElementId, block: usize) -> Vec<Option<usize>> {
        let b = &self.blocks[block];
        b.range().map(|g| follow(&self.forward[t.index()], g).map(|r| r - b.offset)).collect()
    }

    /// `λ_x δ_c` (or `λ_x* δ_c`) as a basis index.
    pub fn apply_token(&self, token: Token, c: usize) -> Option<usize> {
        let maps = if token.adjoint { &self.backward } else { &self.forward };
        follow(&maps[token.element.index()], c)
    }

    fn apply_leg(&self, leg: Leg, c: usize, adjoint: bool) -> Option<usize> {
        match leg {
            Leg::Unit => Some(c),
            Leg::Elem(x) => self.apply_token(Token::new(x, adjoint), c),
        }
    }

    /// Whether the projection `p` fixes `δ_c` (otherwise it kills it).
    pub fn fixes(&self, p: &ProjectionSet, c: usize) -> bool {
        !p.is_zero() && p.members().iter().all(|&a| follow(&self.forward[a.index()], c).is_some())
    }

    /// The partial injection `(row, col)` of `s·p·t*`.
    pub fn word_map(&self, w: &StandardWord) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for c in 0..self.dim {
            let Some(c1) = self.apply_leg(w.right(), c, true) else { continue };
            if !self.fixes(w.mid(), c1) {
                continue;
            }
            if let Some(r) = self.apply_leg(w.left(), c1, false) {
                out.push((r as u32, c as u32));
            }
        }
        out
    }

    pub fn zero<S: Scalar>(&self) -> RepOperator<S> {
        RepOperator { model: self.id, dim: self.dim, entries: BTreeMap::new() }
    }

    fn operator_from_pairs<S: Scalar>(&self, pairs: impl IntoIterator<Item = (u32, u32)>, c: &S) -> RepOperator<S> {
        RepOperator { model: self.id, dim: self.dim, entries: pairs.into_iter().map(|k| (k, c.clone())).collect() }
    }

    /// `λ_t` or `λ_t*`.
    pub fn letter<S: Scalar>(&self, token: Token) -> RepOperator<S> {
        let pairs =
            (0..self.dim).filter_map(|c| self.apply_token(token, c).map(|r| (r as u32, c as u32))).collect::<Vec<_>>();
        self.operator_from_pairs(pairs, &S::one())
    }

    /// Product of letter operators.
    pub fn letter_product<S: Scalar>(&self, tokens: &[Token]) -> RepOperator<S> {
        let mut pairs = Vec::new();
        'col: for c in 0..self.dim {
            let mut r = c;
            for &t in tokens.iter().rev() {
                match self.apply_token(t, r) {
                    Some(next) => r = next,
                    None => continue 'col,
                }
            }
            pairs.push((r as u32, c as u32));
        }
        self.operator_from_pairs(pairs, &S::one())
    }

    pub fn represent_word<S: Scalar>(&self, w: &StandardWord) -> RepOperator<S> {
        self.operator_from_pairs(self.word_map(w), &S::one())
    }

    pub fn projection<S: Scalar>(&self, p: &ProjectionSet) -> RepOperator<S> {
        let pairs = (0..self.dim).filter(|&c| self.fixes(p, c)).map(|c| (c as u32, c as u32)).collect::<Vec<_>>();
        self.operator_from_pairs(pairs, &S::one())
    }

    pub fn represent<S: Scalar>(&self, a: &AlgebraElement<S>) -> Result<RepOperator<S>, RepError> {
        if a.semigraph() != self.sg.fingerprint() {
            return Err(RepError::ForeignElement);
        }
        let terms: Vec<(&StandardWord, &S)> = a.terms().collect();
        let parts: Vec<Vec<(u32, u32)>> = if terms.len() >= PARALLEL_TERMS {
            terms.par_iter().map(|(w, _)| self.word_map(w)).collect()
        } else {
            terms.iter().map(|(w, _)| self.word_map(w)).collect()
        };
        let mut out = self.zero();
        for ((_, c), pairs) in terms.iter().zip(parts) {
            for k in pairs {
                out.add_entry(k, (*c).clone());
            }
        }
        Ok(out)
    }

    /// Dimension of the represented algebra: the rank of the operators of
    /// all nonzero standard words.
    pub fn algebra_dimension(&self) -> usize {
        let words = Algebra::new(self.sg).enumerate_standard_words();
        let vectors: Vec<SparseVec<crate::Rational>> =
            words.par_iter().map(|w| self.represent_word::<crate::Rational>(w).to_sparse_vec()).collect();
        let mut basis = EchelonBasis::new();
        for v in &vectors {
            basis.insert(v);
        }
        basis.rank()
    }

    /// Both clauses of the separation lemma for every nonzero `p ∈ 𝒫`:
    /// `φ(p)δ_μ = δ_μ` and `φ(q)δ_μ = 0` for all `q < p`, where `δ_μ` is the
    /// source vertex in the block labelled by the members of `p`.
    pub fn separation_check(&self) -> CheckReport {
        let sg = self.sg;
        let ps = projection_closure(sg);
        let mut report = CheckReport::new("separation");
        for p in &ps {
            let label = BlockLabel::Subset(p.members().to_vec());
            let Some(bi) = self.block_index(&label) else {
                report.record(Err(format!("no block for {}", show_projection(sg, p))));
                continue;
            };
            let block = &self.blocks[bi];
            let mu = p.source(sg).expect("nonzero projection");
            let c = block.offset + block.basis.iter().position(|&y| y == mu).expect("source lies in the block");
            report.record(if self.fixes(p, c) {
                Ok(())
            } else {
                Err(format!("φ({})δ_μ ≠ δ_μ", show_projection(sg, p)))
            });
            for q in &ps {
                if q != p && q.leq(p, sg) {
                    report.record(if self.fixes(q, c) {
                        Err(format!("φ({})δ_μ ≠ 0 below {}", show_projection(sg, q), show_projection(sg, p)))
                    } else {
                        Ok(())
                    });
                }
            }
        }
        report.finish(true)
    }
}

fn follow(map: &[u32], c: usize) -> Option<usize> {
    match map.get(c) {
        Some(&r) if r != NONE => Some(r as usize),
        _ => None,
    }
}

/// `Q_{a}Q_{b}` style rendering of a projection.
pub fn show_projection(sg: &Semigraph, p: &ProjectionSet) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.members()
        .iter()
        .map(|&m| if sg.is_vertex(m) { sg.name(m).to_string() } else { format!("Q_{{{}}}", sg.name(m)) })
        .collect::<Vec<_>>()
        .join("·")
}

/// An exact sparse operator on the flattened basis of one model.
/// Per block index, the `(row, column, value)` entries in local coordinates.
pub type BlockEntries<S> = Vec<(usize, Vec<(usize, usize, S)>)>;

#[derive(Clone, Debug, PartialEq)]
pub struct RepOperator<S> {
    model: u64,
    dim: usize,
    entries: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> RepOperator<S> {
    pub fn model(&self) -> u64 {
        self.model
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.entries.get(&(row as u32, col as u32)).cloned().unwrap_or_else(S::zero)
    }

    fn add_entry(&mut self, k: (u32, u32), c: S) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn compatible(&self, other: &Self) -> Result<(), RepError> {
        if self.model == other.model && self.dim == other.dim {
            Ok(())
        } else {
            Err(RepError::Incompatible)
        }
    }

    /// Exact equality across all blocks.
    pub fn equals(&self, other: &Self) -> Result<bool, RepError> {
        self.compatible(other)?;
        Ok(self.entries == other.entries)
    }

    pub fn transpose(&self) -> Self {
        RepOperator {
            model: self.model,
            dim: self.dim,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.conjugate())).collect(),
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = RepOperator { model: self.model, dim: self.dim, entries: BTreeMap::new() };
        for (&k, v) in &self.entries {
            out.add_entry(k, v.clone() * factor.clone());
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RepError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_entry(k, v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RepError> {
        self.compatible(other)?;
        let mut by_row: HashMap<u32, Vec<(u32, &S)>> = HashMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = RepOperator { model: self.model, dim: self.dim, entries: BTreeMap::new() };
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(j, b) in row {
                    out.add_entry((i, j), a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    /// Whether the operator is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }

    /// Flattened coordinates `row · dim + col`.
    pub fn to_sparse_vec(&self) -> SparseVec<S> {
        self.entries.iter().map(|(&(r, c), v)| (r as u64 * self.dim as u64 + c as u64, v.clone())).collect()
    }

    /// Entries grouped by block, in local coordinates.
    pub fn block_entries(&self, model: &RepModel<'_>) -> BlockEntries<S> {
        let mut out: BTreeMap<usize, Vec<(usize, usize, S)>> = BTreeMap::new();
        for (&(r, c), v) in &self.entries {
            let b = model.block_of(c as usize);
            let off = model.blocks()[b].offset;
            out.entry(b).or_default().push((r as usize - off, c as usize - off, v.clone()));
        }
        out.into_iter().collect()
    }
}

impl<S: Scalar> Add for &RepOperator<S> {
    type Output = RepOperator<S>;

    fn add(self, rhs: &RepOperator<S>) -> RepOperator<S> {
        self.try_add(rhs).expect("operators of one model")
    }
}

impl<S: Scalar> Sub for &RepOperator<S> {
    type Output = RepOperator<S>;

    fn sub(self, rhs: &RepOperator<S>) -> RepOperator<S> {
        self.try_add(&-rhs).expect("operators of one model")
    }
}

impl<S: Scalar> Neg for &RepOperator<S> {
    type Output = RepOperator<S>;

    fn neg(self) -> RepOperator<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &RepOperator<S> {
    type Output = RepOperator<S>;

    fn mul(self, rhs: &RepOperator<S>) -> RepOperator<S> {
        self.try_mul(rhs).expect("operators of one model")
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for RepOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = self.entries.iter().map(|((r, c), v)| format!("({r},{c})={v}")).collect();
        write!(f, "[{}]", shown.join(" "))
    }
}
