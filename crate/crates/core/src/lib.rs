//! Exact distance invariants of convolutional codes over finite fields.

pub mod distances;
pub mod error;
pub mod field;
pub mod linalg;
pub mod maps;
pub mod oracle;
pub mod poly;
pub mod sliding;
pub mod structure;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};
pub use poly::{PolyMatrix, PolyVector, Polynomial, SupportSet};
pub use structure::{BlockCode, CodeParams, ConvCode};
