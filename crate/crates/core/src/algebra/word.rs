use std::fmt;

use thiserror::Error;

use super::projection::ProjectionSet;
use crate::semigraph::{ElementId, Leg, Semigraph};

/// A nonzero standard word `s·p·t*` with `s, t ∈ 𝒯₁` and `p ∈ 𝒫`.
///
/// The middle always contains the source projections of the non-unit legs
/// (`s = s·Q_s`, `t* = Q_t·t*`), so two monomials are equal as words iff
/// they are equal as structs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardWord {
    left: Leg,
    mid: ProjectionSet,
    right: Leg,
}

impl StandardWord {
    /// Canonicalises `s·∏Q_m·t*`; `None` when the word is zero.
    ///
    /// Degree-zero legs are moved into the middle (`e·p = Q_e·p`).
    pub fn new(sg: &Semigraph, left: Leg, mid: impl IntoIterator<Item = ElementId>, right: Leg) -> Option<Self> {
        let mut members: Vec<ElementId> = mid.into_iter().collect();
        let mut fold = |leg: Leg| match leg {
            Leg::Elem(x) if sg.is_vertex(x) => {
                members.push(x);
                Leg::Unit
            }
            other => {
                if let Leg::Elem(x) = other {
                    members.push(x);
                }
                other
            }
        };
        let left = fold(left);
        let right = fold(right);
        let mid = ProjectionSet::normalize(sg, members);
        if mid.is_zero() {
            return None;
        }
        Some(StandardWord { left, mid, right })
    }

    /// The word of a single generator `t` (or `t*`).
    pub fn letter(sg: &Semigraph, token: Token) -> Self {
        let leg = Leg::Elem(token.element);
        let (l, r) = if token.adjoint { (Leg::Unit, leg) } else { (leg, Leg::Unit) };
        StandardWord::new(sg, l, [token.element], r).expect("a generator is nonzero")
    }

    /// The projection word `p` itself; `None` for Zero.
    pub fn projection(p: &ProjectionSet) -> Option<Self> {
        (!p.is_zero()).then(|| StandardWord { left: Leg::Unit, mid: p.clone(), right: Leg::Unit })
    }

    pub fn left(&self) -> Leg {
        self.left
    }

    pub fn mid(&self) -> &ProjectionSet {
        &self.mid
    }

    pub fn right(&self) -> Leg {
        self.right
    }

    pub fn is_half_standard(&self) -> bool {
        self.right.is_unit()
    }

    pub fn is_projection(&self) -> bool {
        self.left.is_unit() && self.right.is_unit()
    }

    /// `d(s) − d(t)`.
    pub fn degree(&self, sg: &Semigraph) -> Vec<i64> {
        let l = sg.leg_degree(self.left);
        let r = sg.leg_degree(self.right);
        l.coords().iter().zip(r.coords()).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    pub fn adjoint(&self) -> Self {
        StandardWord { left: self.right, mid: self.mid.clone(), right: self.left }
    }

    /// `w w* = s·p·s*`.
    pub fn range_projection(&self) -> Self {
        StandardWord { left: self.left, mid: self.mid.clone(), right: self.left }
    }

    /// `w* w = t·p·t*`.
    pub fn source_projection(&self) -> Self {
        StandardWord { left: self.right, mid: self.mid.clone(), right: self.right }
    }

    pub fn display<'a>(&'a self, sg: &'a Semigraph) -> WordDisplay<'a> {
        WordDisplay { word: self, sg }
    }
}

pub struct WordDisplay<'a> {
    word: &'a StandardWord,
    sg: &'a Semigraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word;
        let sg = self.sg;
        let mut parts: Vec<String> = Vec::new();
        if let Leg::Elem(s) = w.left {
            parts.push(sg.name(s).to_string());
        }
        let legs = [w.left.element(), w.right.element()];
        let shown: Vec<ElementId> = w.mid.members().iter().copied().filter(|m| !legs.contains(&Some(*m))).collect();
        for m in &shown {
            if sg.is_vertex(*m) {
                parts.push(sg.name(*m).to_string());
            } else {
                parts.push(format!("Q_{{{}}}", sg.name(*m)));
            }
        }
        if let Leg::Elem(t) = w.right {
            parts.push(format!("{}*", sg.name(t)));
        }
        if parts.is_empty() {
            // Both legs are units and the middle consists of them: cannot happen.
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// A generator `t` or its adjoint `t*`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub element: ElementId,
    pub adjoint: bool,
}

impl Token {
    pub fn new(element: ElementId, adjoint: bool) -> Self {
        Token { element, adjoint }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown element token {0:?}")]
    UnknownToken(String),
    #[error("empty word")]
    Empty,
}

/// Parses a whitespace-separated token word such as `"a* ab"`.
pub fn parse_word(sg: &Semigraph, text: &str) -> Result<Vec<Token>, WordError> {
    let tokens: Vec<Token> = text
        .split_whitespace()
        .map(|tok| {
            let (name, adjoint) = match tok.strip_suffix('*') {
                Some(stem) => (stem, true),
                None => (tok, false),
            };
            sg.lookup(name).map(|x| Token::new(x, adjoint)).map_err(|_| WordError::UnknownToken(tok.to_string()))
        })
        .collect::<Result<_, _>>()?;
    if tokens.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(tokens)
}

pub fn format_tokens(sg: &Semigraph, tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| format!("{}{}", sg.name(t.element), if t.adjoint { "*" } else { "" }))
        .collect::<Vec<_>>()
        .join(" ")
}
