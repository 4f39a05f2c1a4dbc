//! Convolutional codes, their row-reduced bases and structural invariants.

mod code;
pub mod popov;
pub mod smith;

pub use code::{BlockCode, CodeParams, ConvCode};
pub use popov::{poly_rank, row_reduce, RowReduction};
