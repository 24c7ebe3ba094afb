//! Heights, radicals and abc-type bound evaluators over ℚ and the imaginary
//! quadratic fields of class number one, together with an order-3 Skolem
//! decision procedure and a smooth-triple search harness.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod heights;
pub mod radical;
pub mod sml;
pub mod xyz;

pub use error::{Error, Result};
