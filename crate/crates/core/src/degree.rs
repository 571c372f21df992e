use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

/// A multi-degree in ℕ₀^k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn new(coords: Vec<u32>) -> Self {
        Degree(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    /// The `i`-th unit vector (0-based coordinate).
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i] = 1;
        Degree(coords)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &Degree) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference, `None` unless `other ≤ self`.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if !other.le(self) {
            return None;
        }
        Some(Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn concat(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().chain(&other.0).copied().collect())
    }

    /// The partial order as an `Option<Ordering>`.
    pub fn partial_cmp_componentwise(&self, other: &Degree) -> Option<Ordering> {
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// All degrees `n` with `0 ≤ n ≤ self`, in lexicographic order.
    pub fn below(&self) -> Vec<Degree> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &c in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=c).map(move |v| {
                        let mut next = prefix.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }
}

impl Add for &Degree {
    type Output = Degree;

    fn add(self, rhs: &Degree) -> Degree {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_join() {
        let a = Degree::new(vec![1, 0]);
        let b = Degree::new(vec![0, 1]);
        assert_eq!(a.partial_cmp_componentwise(&b), None);
        assert_eq!(a.join(&b), Degree::new(vec![1, 1]));
        assert_eq!(&a + &b, Degree::new(vec![1, 1]));
        assert!(Degree::zero(2).le(&a));
        assert_eq!(Degree::new(vec![1, 1]).checked_sub(&a), Some(b.clone()));
        assert_eq!(a.checked_sub(&b), None);
    }

    #[test]
    fn below_enumerates_the_box() {
        let d = Degree::new(vec![1, 2]);
        assert_eq!(d.below().len(), 6);
        assert!(d.below().iter().all(|n| n.le(&d)));
        assert_eq!(Degree::zero(3).below(), vec![Degree::zero(3)]);
    }

    #[test]
    fn display() {
        assert_eq!(Degree::new(vec![3]).to_string(), "3");
        assert_eq!(Degree::new(vec![1, 0]).to_string(), "(1,0)");
    }
}
