use std::collections::{BTreeSet, HashSet};

use crate::semigraph::{ElementId, Leg, Semigraph};

/// A product `Q_{α₁}⋯Q_{αₙ}` of source projections in canonical form.
///
/// A nonzero product is stored as the ≤-maximal antichain of its factors
/// (`Q_t ≤ Q_s` iff `s ≤ t`, so smaller factors are absorbed); all members
/// share one source. Zero is the empty member list, which never arises as
/// a product because the algebra is non-unital.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectionSet {
    members: Vec<ElementId>,
}

impl ProjectionSet {
    pub fn zero() -> Self {
        ProjectionSet { members: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    /// The common source of all members.
    pub fn source(&self, sg: &Semigraph) -> Option<ElementId> {
        self.members.first().map(|&m| sg.source(m))
    }

    /// Canonical form of `∏ Q_m` over the given members: Zero if two
    /// members have different sources, otherwise the maximal antichain.
    /// An empty input yields Zero.
    pub fn normalize(sg: &Semigraph, members: impl IntoIterator<Item = ElementId>) -> Self {
        let set: BTreeSet<ElementId> = members.into_iter().collect();
        let mut sources = set.iter().map(|&m| sg.source(m));
        if let Some(first) = sources.next() {
            if sources.any(|s| s != first) {
                return ProjectionSet::zero();
            }
        }
        let members =
            set.iter().copied().filter(|&s| !set.iter().any(|&t| t != s && sg.leq_fast(s, t))).collect();
        ProjectionSet { members }
    }

    /// `Q_t`.
    pub fn generator(t: ElementId) -> Self {
        ProjectionSet { members: vec![t] }
    }

    pub fn product(&self, other: &ProjectionSet, sg: &Semigraph) -> ProjectionSet {
        if self.is_zero() || other.is_zero() {
            return ProjectionSet::zero();
        }
        ProjectionSet::normalize(sg, self.members.iter().chain(&other.members).copied())
    }

    /// Adds the source projections of non-unit legs.
    pub fn with_legs(&self, sg: &Semigraph, legs: &[Leg]) -> ProjectionSet {
        if self.is_zero() {
            return ProjectionSet::zero();
        }
        ProjectionSet::normalize(sg, self.members.iter().copied().chain(legs.iter().filter_map(|l| l.element())))
    }

    /// `p ≤ q` as projections: every member of `q` lies below some member of `p`.
    pub fn leq(&self, other: &ProjectionSet, sg: &Semigraph) -> bool {
        if self.is_zero() {
            return true;
        }
        if other.is_zero() {
            return false;
        }
        other.members.iter().all(|&b| self.members.iter().any(|&a| sg.leq_fast(b, a)))
    }

    /// The `q` with `p·t = t·q`; Zero when some `αt` is undefined.
    pub fn commute_through(&self, sg: &Semigraph, t: ElementId) -> ProjectionSet {
        let mut moved = Vec::with_capacity(self.members.len());
        for &alpha in &self.members {
            match sg.product(alpha, t) {
                Some(at) => moved.push(at),
                None => return ProjectionSet::zero(),
            }
        }
        ProjectionSet::normalize(sg, moved)
    }

    pub fn commute_through_leg(&self, sg: &Semigraph, leg: Leg) -> ProjectionSet {
        match leg {
            Leg::Unit => self.clone(),
            Leg::Elem(t) => self.commute_through(sg, t),
        }
    }
}

/// 𝒫 ∖ {0}: closure of `{Q_t : t ∈ T}` under multiplication, in canonical order.
pub fn projection_closure(sg: &Semigraph) -> Vec<ProjectionSet> {
    let generators: Vec<ProjectionSet> = sg.ids().map(ProjectionSet::generator).collect();
    let mut seen: HashSet<ProjectionSet> = generators.iter().cloned().collect();
    let mut frontier = generators.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let source = p.source(sg);
            for g in &generators {
                if g.source(sg) != source {
                    continue;
                }
                let q = p.product(g, sg);
                if !q.is_zero() && seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    let mut all: Vec<ProjectionSet> = seen.into_iter().collect();
    all.sort();
    all
}
