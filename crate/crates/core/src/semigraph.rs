//! Finite k-semigraphs.
//!
//! A [`Semigraph`] is built once from an extensional description
//! ([`RawSemigraph`]) by [`Semigraph::validate`], which checks every axiom
//! exhaustively and then builds the factorisation, order and
//! minimal-common-extension indexes. After that it is immutable.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::Degree;

/// Index of an element in a validated [`Semigraph`].
///
/// Elements are stored in canonical order (degree lexicographic, then id),
/// so comparing ids compares elements canonically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId(pub u32);

impl ElementId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An element of the unitisation 𝒯₁ = (T ∖ T⁽⁰⁾) ⊔ {1}.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Leg {
    Unit,
    Elem(ElementId),
}

impl Leg {
    pub fn element(self) -> Option<ElementId> {
        match self {
            Leg::Unit => None,
            Leg::Elem(x) => Some(x),
        }
    }

    pub fn is_unit(self) -> bool {
        matches!(self, Leg::Unit)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawElement {
    pub id: String,
    pub degree: Vec<u32>,
}

/// Unchecked extensional description: elements with degrees and the full
/// table of defined products. Pairs not listed are undefined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSemigraph {
    pub rank: usize,
    pub elements: Vec<RawElement>,
    pub products: Vec<[String; 3]>,
}

impl RawSemigraph {
    pub fn new(rank: usize) -> Self {
        RawSemigraph { rank, elements: Vec::new(), products: Vec::new() }
    }

    pub fn element(&mut self, id: impl Into<String>, degree: Vec<u32>) -> &mut Self {
        self.elements.push(RawElement { id: id.into(), degree });
        self
    }

    pub fn product(&mut self, left: impl Into<String>, right: impl Into<String>, result: impl Into<String>) -> &mut Self {
        self.products.push([left.into(), right.into(), result.into()]);
        self
    }
}

/// One violated axiom, with a concrete witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    ZeroRank,
    DegreeLength { element: String, expected: usize, found: usize },
    DuplicateId { element: String },
    UnknownElement { product: [String; 3], missing: String },
    ConflictingProduct { left: String, right: String, results: [String; 2] },
    DegreeMismatch { left: String, right: String, result: String },
    Associativity { triple: [String; 3], detail: String },
    MissingFactorisation { element: String, prefix_degree: Vec<u32> },
    AmbiguousFactorisation { element: String, prefix_degree: Vec<u32>, factorisations: Vec<[String; 2]> },
    NonIdempotentVertex { element: String },
    ComposableVertices { left: String, right: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroRank => write!(f, "rank must be at least 1"),
            Violation::DegreeLength { element, expected, found } => {
                write!(f, "degree of {element} has {found} coordinates, rank is {expected}")
            }
            Violation::DuplicateId { element } => write!(f, "duplicate element id {element}"),
            Violation::UnknownElement { product, missing } => {
                write!(f, "product {}·{} = {} references unknown element {missing}", product[0], product[1], product[2])
            }
            Violation::ConflictingProduct { left, right, results } => {
                write!(f, "product {left}·{right} declared twice ({} and {})", results[0], results[1])
            }
            Violation::DegreeMismatch { left, right, result } => {
                write!(f, "degree of {result} is not d({left}) + d({right})")
            }
            Violation::Associativity { triple, detail } => {
                write!(f, "associativity fails at ({}, {}, {}): {detail}", triple[0], triple[1], triple[2])
            }
            Violation::MissingFactorisation { element, prefix_degree } => {
                write!(f, "{element} has no factorisation with prefix degree {}", Degree::new(prefix_degree.clone()))
            }
            Violation::AmbiguousFactorisation { element, prefix_degree, factorisations } => {
                let shown: Vec<String> = factorisations.iter().map(|[a, b]| format!("{a}·{b}")).collect();
                write!(
                    f,
                    "{element} factorises non-uniquely at prefix degree {}: {}",
                    Degree::new(prefix_degree.clone()),
                    shown.join(", ")
                )
            }
            Violation::NonIdempotentVertex { element } => {
                write!(f, "degree-zero element {element} is not idempotent")
            }
            Violation::ComposableVertices { left, right } => {
                write!(f, "distinct degree-zero elements {left} and {right} are composable")
            }
        }
    }
}

/// Every axiom violation found by [`Semigraph::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("invalid semigraph: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemigraphError {
    #[error("degree {requested} is not below d({element}) = {degree}")]
    DegreeOutOfRange { element: String, requested: Degree, degree: Degree },
    #[error("segment bounds {from} ≤ {to} ≤ d({element}) = {degree} violated")]
    BadSegment { element: String, from: Degree, to: Degree, degree: Degree },
    #[error("unknown element {0}")]
    UnknownElement(String),
}

#[derive(Clone, Debug)]
struct ElementData {
    name: String,
    degree: Degree,
}

/// A validated finite k-semigraph.
#[derive(Clone, Debug)]
pub struct Semigraph {
    rank: usize,
    elements: Vec<ElementData>,
    by_name: HashMap<String, ElementId>,
    /// Dense `n × n` product table.
    table: Vec<Option<ElementId>>,
    /// Per element: (prefix degree, prefix, suffix), sorted by prefix degree.
    factors: Vec<Vec<(Degree, ElementId, ElementId)>>,
    source: Vec<ElementId>,
    range: Vec<ElementId>,
    /// `up[s]` holds every `t` with `s ≤ t`.
    up: Vec<FixedBitSet>,
    mce: Vec<Vec<(ElementId, ElementId)>>,
    vertices: Vec<ElementId>,
    fingerprint: u64,
}

impl Semigraph {
    /// Checks every axiom and builds the derived indexes.
    pub fn validate(raw: &RawSemigraph) -> Result<Semigraph, ValidationReport> {
        let mut violations = Vec::new();
        if raw.rank == 0 {
            violations.push(Violation::ZeroRank);
        }
        for e in &raw.elements {
            if e.degree.len() != raw.rank {
                violations.push(Violation::DegreeLength {
                    element: e.id.clone(),
                    expected: raw.rank,
                    found: e.degree.len(),
                });
            }
        }

        let mut order: Vec<usize> = (0..raw.elements.len()).collect();
        order.sort_by(|&a, &b| {
            let (x, y) = (&raw.elements[a], &raw.elements[b]);
            x.degree.cmp(&y.degree).then_with(|| x.id.cmp(&y.id))
        });
        let elements: Vec<ElementData> = order
            .iter()
            .map(|&i| ElementData { name: raw.elements[i].id.clone(), degree: Degree::new(raw.elements[i].degree.clone()) })
            .collect();
        let mut by_name = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if by_name.insert(e.name.clone(), ElementId(i as u32)).is_some() {
                violations.push(Violation::DuplicateId { element: e.name.clone() });
            }
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let n = elements.len();
        let mut table: Vec<Option<ElementId>> = vec![None; n * n];
        for p in &raw.products {
            let ids: Vec<Option<ElementId>> = p.iter().map(|name| by_name.get(name).copied()).collect();
            if let Some(missing) = p.iter().zip(&ids).find(|(_, id)| id.is_none()).map(|(name, _)| name.clone()) {
                violations.push(Violation::UnknownElement { product: p.clone(), missing });
                continue;
            }
            let (l, r, res) = (ids[0].unwrap(), ids[1].unwrap(), ids[2].unwrap());
            let slot = &mut table[l.index() * n + r.index()];
            match slot {
                Some(prev) if *prev != res => violations.push(Violation::ConflictingProduct {
                    left: p[0].clone(),
                    right: p[1].clone(),
                    results: [elements[prev.index()].name.clone(), p[2].clone()],
                }),
                _ => *slot = Some(res),
            }
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let name = |x: ElementId| elements[x.index()].name.clone();
        let prod = |x: usize, y: usize| table[x * n + y];

        for x in 0..n {
            for y in 0..n {
                if let Some(z) = prod(x, y) {
                    if elements[z.index()].degree != &elements[x].degree + &elements[y].degree {
                        violations.push(Violation::DegreeMismatch {
                            left: name(ElementId(x as u32)),
                            right: name(ElementId(y as u32)),
                            result: name(z),
                        });
                    }
                }
            }
        }

        let vertices: Vec<ElementId> =
            (0..n).filter(|&i| elements[i].degree.is_zero()).map(|i| ElementId(i as u32)).collect();
        for &e in &vertices {
            if prod(e.index(), e.index()) != Some(e) {
                violations.push(Violation::NonIdempotentVertex { element: name(e) });
            }
            for &f in &vertices {
                if e != f && prod(e.index(), f.index()).is_some() {
                    violations.push(Violation::ComposableVertices { left: name(e), right: name(f) });
                }
            }
        }

        for s in 0..n {
            for t in 0..n {
                let st = prod(s, t);
                for u in 0..n {
                    let tu = prod(t, u);
                    let left = st.and_then(|st| prod(st.index(), u));
                    let right = tu.and_then(|tu| prod(s, tu.index()));
                    if left != right {
                        let show = |v: Option<ElementId>| v.map(name).unwrap_or_else(|| "undefined".into());
                        violations.push(Violation::Associativity {
                            triple: [name(ElementId(s as u32)), name(ElementId(t as u32)), name(ElementId(u as u32))],
                            detail: format!("(st)u = {}, s(tu) = {}", show(left), show(right)),
                        });
                    }
                }
            }
        }

        let mut split: Vec<HashMap<Degree, Vec<(ElementId, ElementId)>>> = vec![HashMap::new(); n];
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = prod(x, y) {
                    split[z.index()]
                        .entry(elements[x].degree.clone())
                        .or_default()
                        .push((ElementId(x as u32), ElementId(y as u32)));
                }
            }
        }
        let mut factors = vec![Vec::new(); n];
        for z in 0..n {
            for n1 in elements[z].degree.below() {
                match split[z].get(&n1).map(Vec::as_slice) {
                    None | Some([]) => violations.push(Violation::MissingFactorisation {
                        element: elements[z].name.clone(),
                        prefix_degree: n1.coords().to_vec(),
                    }),
                    Some([(a, b)]) => factors[z].push((n1, *a, *b)),
                    Some(many) => violations.push(Violation::AmbiguousFactorisation {
                        element: elements[z].name.clone(),
                        prefix_degree: n1.coords().to_vec(),
                        factorisations: many.iter().map(|&(a, b)| [name(a), name(b)]).collect(),
                    }),
                }
            }
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        let mut sg = Semigraph {
            rank: raw.rank,
            elements,
            by_name,
            table,
            factors,
            source: Vec::new(),
            range: Vec::new(),
            up: Vec::new(),
            mce: Vec::new(),
            vertices,
            fingerprint: 0,
        };
        sg.build_indexes();
        Ok(sg)
    }

    fn build_indexes(&mut self) {
        let n = self.len();
        self.range = (0..n).map(|x| self.factors[x].first().expect("factorisation at degree 0").1).collect();
        self.source = (0..n).map(|x| self.factors[x].last().expect("factorisation at full degree").2).collect();

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for t in 0..n {
            for &(_, _, suffix) in &self.factors[t] {
                up[suffix.index()].insert(t);
            }
        }
        self.up = up;

        let mut mce = Vec::with_capacity(n * n);
        for x in self.ids() {
            for y in self.ids() {
                mce.push(self.compute_mce(x, y));
            }
        }
        self.mce = mce;

        let mut hasher = DefaultHasher::new();
        self.rank.hash(&mut hasher);
        for e in &self.elements {
            e.name.hash(&mut hasher);
            e.degree.hash(&mut hasher);
        }
        self.table.hash(&mut hasher);
        self.fingerprint = hasher.finish();
    }

    fn compute_mce(&self, x: ElementId, y: ElementId) -> Vec<(ElementId, ElementId)> {
        let target = self.degree(x).join(self.degree(y));
        let mut out = Vec::new();
        for alpha in self.ids() {
            let Some(z) = self.product(x, alpha) else { continue };
            if *self.degree(z) != target {
                continue;
            }
            let (prefix, beta) = self.factorize(z, self.degree(y)).expect("d(y) ≤ d(x) ∨ d(y)");
            if prefix == y {
                out.push((alpha, beta));
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Identifies this semigraph's content; used to reject mixed operands.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// All elements in canonical order.
    pub fn ids(&self) -> impl Iterator<Item = ElementId> + Clone + '_ {
        (0..self.elements.len() as u32).map(ElementId)
    }

    /// T⁽⁰⁾.
    pub fn vertices(&self) -> &[ElementId] {
        &self.vertices
    }

    /// T ∖ T⁽⁰⁾.
    pub fn edges(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.ids().filter(|&x| !self.is_vertex(x))
    }

    pub fn is_vertex(&self, x: ElementId) -> bool {
        self.degree(x).is_zero()
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.elements[x.index()].name
    }

    pub fn degree(&self, x: ElementId) -> &Degree {
        &self.elements[x.index()].degree
    }

    pub fn lookup(&self, name: &str) -> Result<ElementId, SemigraphError> {
        self.by_name.get(name).copied().ok_or_else(|| SemigraphError::UnknownElement(name.to_string()))
    }

    pub fn product(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.table[x.index() * self.len() + y.index()]
    }

    /// r(x) = x(0,0).
    pub fn range(&self, x: ElementId) -> ElementId {
        self.range[x.index()]
    }

    /// s(x) = x(d(x),d(x)).
    pub fn source(&self, x: ElementId) -> ElementId {
        self.source[x.index()]
    }

    /// The unique `(x₁, x₂)` with `x = x₁x₂` and `d(x₁) = prefix`.
    pub fn factorize(&self, x: ElementId, prefix: &Degree) -> Result<(ElementId, ElementId), SemigraphError> {
        let list = &self.factors[x.index()];
        match list.binary_search_by(|(d, _, _)| d.cmp(prefix)) {
            Ok(i) => Ok((list[i].1, list[i].2)),
            Err(_) => Err(SemigraphError::DegreeOutOfRange {
                element: self.name(x).to_string(),
                requested: prefix.clone(),
                degree: self.degree(x).clone(),
            }),
        }
    }

    /// The segment x(m, n).
    pub fn segment(&self, x: ElementId, from: &Degree, to: &Degree) -> Result<ElementId, SemigraphError> {
        let d = self.degree(x);
        if !(from.le(to) && to.le(d)) {
            return Err(SemigraphError::BadSegment {
                element: self.name(x).to_string(),
                from: from.clone(),
                to: to.clone(),
                degree: d.clone(),
            });
        }
        let (_, rest) = self.factorize(x, from)?;
        let (middle, _) = self.factorize(rest, &to.checked_sub(from).expect("from ≤ to"))?;
        Ok(middle)
    }

    /// `s ≤ t` iff `αs = t` for some α, read off the suffix of `t` of degree d(s).
    pub fn leq(&self, s: ElementId, t: ElementId) -> bool {
        let Some(prefix) = self.degree(t).checked_sub(self.degree(s)) else {
            return false;
        };
        matches!(self.factorize(t, &prefix), Ok((_, suffix)) if suffix == s)
    }

    /// Table lookup equivalent of [`Semigraph::leq`].
    pub fn leq_fast(&self, s: ElementId, t: ElementId) -> bool {
        self.up[s.index()].contains(t.index())
    }

    /// Every `t` with `s ≤ t`.
    pub fn up_set(&self, s: ElementId) -> &FixedBitSet {
        &self.up[s.index()]
    }

    /// T⁽ᵐⁱⁿ⁾(x, y): all `(α, β)` with `xα = yβ` of degree d(x) ∨ d(y).
    pub fn min_common_extensions(&self, x: ElementId, y: ElementId) -> &[(ElementId, ElementId)] {
        &self.mce[x.index() * self.len() + y.index()]
    }

    /// 𝒯₁⁽ᵐⁱⁿ⁾(x, y): the same pairs with degree-zero legs replaced by the unit.
    pub fn min_common_extensions_unital(&self, x: Leg, y: Leg) -> Vec<(Leg, Leg)> {
        match (x, y) {
            (Leg::Unit, Leg::Unit) => vec![(Leg::Unit, Leg::Unit)],
            (Leg::Unit, Leg::Elem(y)) => vec![(self.leg(y), Leg::Unit)],
            (Leg::Elem(x), Leg::Unit) => vec![(Leg::Unit, self.leg(x))],
            (Leg::Elem(x), Leg::Elem(y)) => {
                let mut out: Vec<(Leg, Leg)> =
                    self.min_common_extensions(x, y).iter().map(|&(a, b)| (self.leg(a), self.leg(b))).collect();
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// The 𝒯₁ image of an element: degree-zero elements become the unit.
    pub fn leg(&self, x: ElementId) -> Leg {
        if self.is_vertex(x) {
            Leg::Unit
        } else {
            Leg::Elem(x)
        }
    }

    /// Product in 𝒯₁ ∪ {undefined}.
    pub fn leg_product(&self, x: Leg, y: Leg) -> Option<Leg> {
        match (x, y) {
            (Leg::Unit, other) | (other, Leg::Unit) => Some(other),
            (Leg::Elem(x), Leg::Elem(y)) => self.product(x, y).map(Leg::Elem),
        }
    }

    pub fn leg_degree(&self, x: Leg) -> Degree {
        match x {
            Leg::Unit => Degree::zero(self.rank),
            Leg::Elem(x) => self.degree(x).clone(),
        }
    }

    pub fn leg_name(&self, x: Leg) -> &str {
        match x {
            Leg::Unit => "1",
            Leg::Elem(x) => self.name(x),
        }
    }

    /// The extensional description this semigraph was built from, in canonical order.
    pub fn to_raw(&self) -> RawSemigraph {
        let mut raw = RawSemigraph::new(self.rank);
        for x in self.ids() {
            raw.element(self.name(x), self.degree(x).coords().to_vec());
        }
        for x in self.ids() {
            for y in self.ids() {
                if let Some(z) = self.product(x, y) {
                    raw.product(self.name(x), self.name(y), self.name(z));
                }
            }
        }
        raw
    }
}
