//! Exact computation in freely generated semigraph algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`semigraph`] validates finite k-semigraphs and indexes their
//!   factorisations, order and minimal common extensions;
//! * [`builders`] constructs the standard families (cut-down graphs,
//!   shifts of finite type, products, closures);
//! * [`algebra`] implements the normal-form word calculus;
//! * [`rep`] is the finite block model of the left regular representation;
//! * [`ktheory`] computes K₀ through atoms of the projection ring;
//! * [`props`] holds executable checkers for the structural conditions;
//! * [`io`] reads and writes semigraph documents.
//!
//! Algebra elements and operators are generic over a [`Scalar`]; the
//! aliases below fix exact rational coefficients.

pub mod algebra;
pub mod builders;
pub mod degree;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod props;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod semigraph;

pub use algebra::{Algebra, AlgebraElement, ProjectionSet, StandardWord, Token};
pub use degree::Degree;
pub use scalar::Scalar;
pub use semigraph::{ElementId, Leg, RawSemigraph, Semigraph, ValidationReport, Violation};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

pub type QAlgebraElement = AlgebraElement<Rational>;

pub type QRepOperator = rep::RepOperator<Rational>;
