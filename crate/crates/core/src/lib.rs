//! Universal oriented bivariant theories over finite categories.

pub mod catcore;
pub mod dsl;
pub mod error;
pub mod fixtures;
pub mod freeab;
pub mod targets;
pub mod theory;
pub mod suite;
pub mod transform;
pub mod universal;

pub use error::{Error, Result};
