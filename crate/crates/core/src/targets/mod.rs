//! Concrete target theories for the universal transformation.

mod fiberwise;

pub use fiberwise::{Fiberwise, FnValue};
