//! Word calculus of the freely generated semigraph algebra.
//!
//! Elements are linear combinations of standard words `s·p·t*`. The product
//! of two standard words is expanded with
//!
//! ```text
//! t₁* s₂ = Σ_{(e,f) ∈ 𝒯₁⁽ᵐⁱⁿ⁾(t₁,s₂)} e·Q_{s₂f}·f*
//! ```
//!
//! and the middle projections are moved outwards with `p·x = x·q`, so every
//! product of standard words is again a sum of standard words.

mod element;
mod projection;
mod word;

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

pub use element::{AlgebraElement, ElementDisplay};
pub use projection::{projection_closure, ProjectionSet};
pub use word::{format_tokens, parse_word, StandardWord, Token, WordDisplay, WordError};

use crate::scalar::Scalar;
use crate::semigraph::{ElementId, Leg, Semigraph};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operand belongs to a different semigraph")]
    ForeignOperand,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Monomial pairs above which [`Algebra::multiply`] fans out over threads.
const PARALLEL_PAIRS: usize = 4096;

/// The freely generated algebra over one validated semigraph.
#[derive(Clone, Copy, Debug)]
pub struct Algebra<'a> {
    sg: &'a Semigraph,
}

impl<'a> Algebra<'a> {
    pub fn new(sg: &'a Semigraph) -> Self {
        Algebra { sg }
    }

    pub fn semigraph(&self) -> &'a Semigraph {
        self.sg
    }

    pub fn zero<S: Scalar>(&self) -> AlgebraElement<S> {
        AlgebraElement::zero(self.sg.fingerprint())
    }

    pub fn word<S: Scalar>(&self, w: StandardWord) -> AlgebraElement<S> {
        AlgebraElement::from_word(self.sg.fingerprint(), w)
    }

    /// `t`, or `t*` when `adjoint`.
    pub fn letter<S: Scalar>(&self, token: Token) -> AlgebraElement<S> {
        self.word(StandardWord::letter(self.sg, token))
    }

    pub fn projection<S: Scalar>(&self, p: &ProjectionSet) -> AlgebraElement<S> {
        StandardWord::projection(p).map_or_else(|| self.zero(), |w| self.word(w))
    }

    /// `Q_t`.
    pub fn source_projection<S: Scalar>(&self, t: ElementId) -> AlgebraElement<S> {
        self.projection(&ProjectionSet::generator(t))
    }

    pub fn normalize_projection(&self, members: impl IntoIterator<Item = ElementId>) -> ProjectionSet {
        ProjectionSet::normalize(self.sg, members)
    }

    pub fn projection_leq(&self, p: &ProjectionSet, q: &ProjectionSet) -> bool {
        p.leq(q, self.sg)
    }

    pub fn commute_through(&self, p: &ProjectionSet, t: ElementId) -> ProjectionSet {
        p.commute_through(self.sg, t)
    }

    /// `x*·y` for `x, y ∈ 𝒯₁`, expanded over minimal common extensions.
    pub fn star_product<S: Scalar>(&self, x: Leg, y: Leg) -> AlgebraElement<S> {
        let mut out = self.zero();
        for (e, f) in self.sg.min_common_extensions_unital(x, y) {
            let yf = self.sg.leg_product(y, f).expect("y·f is defined for a common extension");
            if let Some(w) = StandardWord::new(self.sg, e, yf.element(), f) {
                out.add_term(w, S::one());
            }
        }
        out
    }

    /// Product of two standard words as a list of standard words (all with
    /// coefficient one).
    pub fn multiply_words(&self, a: &StandardWord, b: &StandardWord) -> Vec<StandardWord> {
        let sg = self.sg;
        let mut out = Vec::new();
        for (e, f) in sg.min_common_extensions_unital(a.right(), b.left()) {
            let Some(left) = sg.leg_product(a.left(), e) else { continue };
            let Some(right) = sg.leg_product(b.right(), f) else { continue };
            let q1 = a.mid().commute_through_leg(sg, e);
            if q1.is_zero() {
                continue;
            }
            let q2 = b.mid().commute_through_leg(sg, f);
            if q2.is_zero() {
                continue;
            }
            let joint = sg.leg_product(b.left(), f).expect("s₂·f is defined for a common extension");
            let members = q1.members().iter().chain(q2.members()).copied().chain(joint.element());
            if let Some(w) = StandardWord::new(sg, left, members, right) {
                out.push(w);
            }
        }
        out
    }

    pub fn multiply<S: Scalar>(
        &self,
        a: &AlgebraElement<S>,
        b: &AlgebraElement<S>,
    ) -> Result<AlgebraElement<S>, AlgebraError> {
        let fp = self.sg.fingerprint();
        if a.semigraph() != fp || b.semigraph() != fp {
            return Err(AlgebraError::ForeignOperand);
        }
        let pairs: Vec<(&StandardWord, &S, &StandardWord, &S)> =
            a.terms().flat_map(|(wa, ca)| b.terms().map(move |(wb, cb)| (wa, ca, wb, cb))).collect();
        let expand = |&(wa, ca, wb, cb): &(&StandardWord, &S, &StandardWord, &S)| {
            let c = ca.clone() * cb.clone();
            self.multiply_words(wa, wb).into_iter().map(move |w| (w, c.clone())).collect::<Vec<_>>()
        };
        let products: Vec<Vec<(StandardWord, S)>> = if pairs.len() >= PARALLEL_PAIRS {
            pairs.par_iter().map(expand).collect()
        } else {
            pairs.iter().map(expand).collect()
        };
        let mut out = self.zero();
        for (w, c) in products.into_iter().flatten() {
            out.add_term(w, c);
        }
        Ok(out)
    }

    /// Multiplies a list of elements left to right.
    pub fn multiply_all<S: Scalar>(&self, factors: &[AlgebraElement<S>]) -> Result<AlgebraElement<S>, AlgebraError> {
        let (first, rest) = factors.split_first().ok_or(AlgebraError::Word(WordError::Empty))?;
        rest.iter().try_fold(first.clone(), |acc, x| self.multiply(&acc, x))
    }

    pub fn adjoint<S: Scalar>(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        a.adjoint()
    }

    /// Normal form of a token word, multiplied out left to right.
    pub fn normal_form<S: Scalar>(&self, tokens: &[Token]) -> Result<AlgebraElement<S>, AlgebraError> {
        let (first, rest) = tokens.split_first().ok_or(AlgebraError::Word(WordError::Empty))?;
        let mut acc: AlgebraElement<S> = self.letter(*first);
        for &t in rest {
            acc = self.multiply(&acc, &self.letter(t))?;
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn parse_normal_form<S: Scalar>(&self, text: &str) -> Result<AlgebraElement<S>, AlgebraError> {
        self.normal_form(&parse_word(self.sg, text)?)
    }

    /// `P_w = w·w*` of a standard word.
    pub fn range_projection<S: Scalar>(&self, w: &StandardWord) -> AlgebraElement<S> {
        self.word(w.range_projection())
    }

    /// `P_a·∏(1 − P_b)`, expanded distributively without a unit:
    /// `x·(1 − P) = x − x·P`.
    pub fn standard_projection<S: Scalar>(&self, a: &StandardWord, bs: &[StandardWord]) -> AlgebraElement<S> {
        let mut acc: AlgebraElement<S> = self.range_projection(a);
        for b in bs {
            if acc.is_zero() {
                break;
            }
            let cut = self.multiply(&acc, &self.range_projection(b)).expect("same semigraph");
            acc = &acc - &cut;
        }
        acc
    }

    /// `x·(1 − y)` for elements over this semigraph.
    pub fn times_complement<S: Scalar>(
        &self,
        x: &AlgebraElement<S>,
        y: &AlgebraElement<S>,
    ) -> Result<AlgebraElement<S>, AlgebraError> {
        Ok(x - &self.multiply(x, y)?)
    }

    /// 𝒫 ∖ {0} in canonical order.
    pub fn projections(&self) -> Vec<ProjectionSet> {
        projection_closure(self.sg)
    }

    /// 𝒯₁ in canonical order, unit first.
    pub fn unital_legs(&self) -> Vec<Leg> {
        std::iter::once(Leg::Unit).chain(self.sg.edges().map(Leg::Elem)).collect()
    }

    /// All nonzero half-standard words `s·p`.
    pub fn enumerate_half_standard(&self) -> Vec<StandardWord> {
        let ps = self.projections();
        let mut out = BTreeSet::new();
        for s in self.unital_legs() {
            for p in &ps {
                if let Some(w) = StandardWord::new(self.sg, s, p.members().iter().copied(), Leg::Unit) {
                    out.insert(w);
                }
            }
        }
        out.into_iter().collect()
    }

    /// All nonzero standard words `s·p·t*`.
    pub fn enumerate_standard_words(&self) -> Vec<StandardWord> {
        let ps = self.projections();
        let legs = self.unital_legs();
        let mut out = BTreeSet::new();
        for p in &ps {
            for &s in &legs {
                for &t in &legs {
                    if let Some(w) = StandardWord::new(self.sg, s, p.members().iter().copied(), t) {
                        out.insert(w);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Token words of length `1..=max_len` over all generators and adjoints.
    pub fn token_words(&self, max_len: usize) -> Vec<Vec<Token>> {
        let alphabet: Vec<Token> =
            self.sg.ids().flat_map(|x| [Token::new(x, false), Token::new(x, true)]).collect();
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Token>> = vec![Vec::new()];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    alphabet.iter().map(move |&t| {
                        let mut v = w.clone();
                        v.push(t);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

/// The adjoint token word: reversed, with every letter's star toggled.
pub fn adjoint_tokens(tokens: &[Token]) -> Vec<Token> {
    tokens.iter().rev().map(|t| Token::new(t.element, !t.adjoint)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures::*;
    use crate::Rational;

    fn nf(sg: &Semigraph, text: &str) -> String {
        let alg = Algebra::new(sg);
        alg.parse_normal_form::<Rational>(text).unwrap().display(sg).to_string()
    }

    #[test]
    fn normal_forms_on_fixtures() {
        let f1 = f1();
        assert_eq!(nf(&f1, "a* ab"), "b·Q_{ab}");
        assert_eq!(nf(&f1, "a* b"), "0");
        assert_eq!(nf(&f1, "a* a a"), "a·Q_{aa}");
        let f2 = f2();
        assert_eq!(nf(&f2, "t t* t"), "t");
        assert_eq!(nf(&f2, "t* t t"), "t·Q_{tt}");
        assert_eq!(nf(&f2, "t* t ttt"), "0");
        let f5 = f5();
        assert_eq!(nf(&f5, "v w"), "0");
        assert_eq!(nf(&f5, "a a*"), "a·a*");
    }

    #[test]
    fn star_products() {
        let f1 = f1();
        let alg = Algebra::new(&f1);
        let leg = |n: &str| Leg::Elem(f1.lookup(n).unwrap());
        let aa: AlgebraElement<Rational> = alg.star_product(leg("a"), leg("a"));
        assert_eq!(aa.display(&f1).to_string(), "Q_{a}");
        assert!(alg.star_product::<Rational>(leg("a"), leg("b")).is_zero());

        let f3 = f3();
        let alg3 = Algebra::new(&f3);
        let leg3 = |n: &str| Leg::Elem(f3.lookup(n).unwrap());
        let x: AlgebraElement<Rational> = alg3.star_product(leg3("e"), leg3("ef"));
        assert_eq!(x.display(&f3).to_string(), "f·Q_{ef}");
        let y: AlgebraElement<Rational> = alg3.star_product(leg3("e"), leg3("f"));
        assert_eq!(y.display(&f3).to_string(), "f·Q_{ef}·e*");
    }

    #[test]
    fn adjoint_and_errors() {
        let f1 = f1();
        let alg = Algebra::new(&f1);
        let a = alg.parse_normal_form::<Rational>("a").unwrap();
        assert_eq!(a.adjoint().display(&f1).to_string(), "a*");
        assert_eq!(a.adjoint().adjoint(), a);
        assert!(alg.zero::<Rational>().adjoint().is_zero());
        assert!(matches!(alg.parse_normal_form::<Rational>("a q"), Err(AlgebraError::Word(WordError::UnknownToken(_)))));
        assert!(matches!(alg.parse_normal_form::<Rational>("  "), Err(AlgebraError::Word(WordError::Empty))));
        let f2 = f2();
        let other = Algebra::new(&f2).parse_normal_form::<Rational>("t").unwrap();
        assert_eq!(alg.multiply(&a, &other), Err(AlgebraError::ForeignOperand));
    }

    #[test]
    fn standard_projections() {
        let f2 = f2();
        let alg = Algebra::new(&f2);
        let id = |n: &str| f2.lookup(n).unwrap();
        let pt = StandardWord::new(&f2, Leg::Elem(id("t")), [], Leg::Unit).unwrap();
        let ptt = StandardWord::new(&f2, Leg::Elem(id("tt")), [], Leg::Unit).unwrap();
        let x: AlgebraElement<Rational> = alg.standard_projection(&pt, std::slice::from_ref(&ptt));
        assert_eq!(x.display(&f2).to_string(), "t·t* - tt·tt*");
        assert_eq!(alg.standard_projection::<Rational>(&pt, &[]).len(), 1);

        let f1 = f1();
        let alg1 = Algebra::new(&f1);
        let qa = StandardWord::projection(&ProjectionSet::generator(f1.lookup("a").unwrap())).unwrap();
        assert!(alg1.standard_projection::<Rational>(&qa, std::slice::from_ref(&qa)).is_zero());
    }

    #[test]
    fn half_standard_enumeration() {
        let f5 = f5();
        let words = Algebra::new(&f5).enumerate_half_standard();
        let shown: Vec<String> = words.iter().map(|w| w.display(&f5).to_string()).collect();
        assert_eq!(shown, vec!["v", "w", "Q_{a}", "a"]);
        let z = crate::builders::build_zeta(1, 1);
        assert_eq!(Algebra::new(&z).enumerate_half_standard().len(), 3);
        assert_eq!(Algebra::new(&crate::builders::build_point(1)).enumerate_half_standard().len(), 1);
    }

    #[test]
    fn float_coefficients_follow_the_same_calculus() {
        let f1 = f1();
        let alg = Algebra::new(&f1);
        let x: AlgebraElement<f64> = alg.parse_normal_form("a* a").unwrap().scale(&0.5);
        let y = alg.multiply(&x, &x).unwrap();
        assert_eq!(y.len(), 1);
        assert_eq!(y.terms().next().unwrap().1, &0.25);
    }
}
