use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, Neg, Sub};

use super::word::StandardWord;
use crate::scalar::Scalar;
use crate::semigraph::Semigraph;

/// A finite linear combination of standard words.
///
/// Zero coefficients are never stored. Equality of two elements here is
/// syntactic (same words, same coefficients); equality in the algebra is
/// decided by the representation.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<S> {
    semigraph: u64,
    terms: BTreeMap<StandardWord, S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(semigraph: u64) -> Self {
        AlgebraElement { semigraph, terms: BTreeMap::new() }
    }

    pub fn from_word(semigraph: u64, word: StandardWord) -> Self {
        Self::from_term(semigraph, word, S::one())
    }

    pub fn from_term(semigraph: u64, word: StandardWord, coefficient: S) -> Self {
        let mut e = Self::zero(semigraph);
        e.add_term(word, coefficient);
        e
    }

    /// Fingerprint of the semigraph this element lives over.
    pub fn semigraph(&self) -> u64 {
        self.semigraph
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StandardWord, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &StandardWord) -> S {
        self.terms.get(word).cloned().unwrap_or_else(S::zero)
    }

    pub fn add_term(&mut self, word: StandardWord, coefficient: S) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coefficient;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        let mut out = Self::zero(self.semigraph);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c.clone() * factor.clone());
        }
        out
    }

    /// `(s,p,t) ↦ (t,p,s)` with conjugated coefficients.
    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            semigraph: self.semigraph,
            terms: self.terms.iter().map(|(w, c)| (w.adjoint(), c.conjugate())).collect(),
        }
    }

    /// Every monomial has this word degree (`None` for zero or mixed degrees).
    pub fn homogeneous_degree(&self, sg: &Semigraph) -> Option<Vec<i64>> {
        let mut degrees = self.terms.keys().map(|w| w.degree(sg));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn display<'a>(&'a self, sg: &'a Semigraph) -> ElementDisplay<'a, S> {
        ElementDisplay { element: self, sg }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.semigraph, other.semigraph, "algebra elements over different semigraphs");
    }
}

impl<S: Scalar> Add for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn add(self, rhs: &AlgebraElement<S>) -> AlgebraElement<S> {
        self.check_same(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn sub(self, rhs: &AlgebraElement<S>) -> AlgebraElement<S> {
        self.check_same(rhs);
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c.clone());
        }
        out
    }
}

impl<S: Scalar> Neg for &AlgebraElement<S> {
    type Output = AlgebraElement<S>;

    fn neg(self) -> AlgebraElement<S> {
        self.scale(&-S::one())
    }
}

pub struct ElementDisplay<'a, S> {
    element: &'a AlgebraElement<S>,
    sg: &'a Semigraph,
}

impl<S: Scalar + Display> Display for ElementDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return write!(f, "0");
        }
        let one = S::one();
        let minus_one = -S::one();
        for (i, (w, c)) in self.element.terms.iter().enumerate() {
            let negative = c == &minus_one || format!("{c}").starts_with('-');
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if magnitude != one {
                write!(f, "{magnitude}·")?;
            }
            write!(f, "{}", w.display(self.sg))?;
        }
        Ok(())
    }
}
