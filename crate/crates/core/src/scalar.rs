//! Coefficient fields for algebra elements and operators.
//!
//! Everything above the semigraph layer is generic over [`Scalar`]. Exact
//! verdicts (equality, zero tests, ranks) need an exact field, so the crate
//! root fixes [`crate::Rational`] for the checkers and K-theory; the float
//! instances exist for quick numerical experiments.

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::Num;

/// A field of coefficients with an involution.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    /// Complex conjugation; the identity on real fields.
    fn conjugate(&self) -> Self;

    fn from_i64(value: i64) -> Self;
}

macro_rules! real_scalar {
    ($($ty:ty => $from:expr),* $(,)?) => {$(
        impl Scalar for $ty {
            fn conjugate(&self) -> Self {
                self.clone()
            }

            fn from_i64(value: i64) -> Self {
                ($from)(value)
            }
        }
    )*};
}

real_scalar! {
    f32 => |v: i64| v as f32,
    f64 => |v: i64| v as f64,
    Ratio<i64> => Ratio::from_integer,
    BigRational => |v: i64| BigRational::from_integer(v.into()),
}

impl Scalar for Complex<f64> {
    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn from_i64(value: i64) -> Self {
        Complex::new(value as f64, 0.0)
    }
}
