//! Exact arithmetic over ℤ, ℚ and the rings of integers of the imaginary
//! quadratic fields of class number one.

pub mod factor;
pub mod field;
pub mod int;

pub use factor::{
    canonical_associate, factor, factor_int, factor_quad, ideal_coprime, ord, splitting,
    IdealFactorization, PrimePower, Splitting,
};
pub use field::{AlgebraicInt, FieldElem, QuadraticField, CLASS_NUMBER_ONE};
