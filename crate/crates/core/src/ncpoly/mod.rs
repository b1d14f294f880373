//! Exact free-algebra arithmetic with symbolic spectral parameters and the
//! rewriting system for the defining relations.

mod parse;
mod poly;
mod reduction;
pub mod scalar;
mod word;

pub use parse::parse_expr;
pub use poly::NCPoly;
pub use reduction::{
    build_reduction_system, check_overlap_ambiguity, count_basis, enumerate_basis, enumerate_basis_with, relation,
    Ambiguity, AmbiguityReport, Reduced, ReductionSystem, Rule,
};
pub use scalar::{GaussRat, ScalarPoly};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NcError {
    #[error("dimension {d} too small: need at least 2 generators")]
    DimensionTooSmall { d: u8 },
    #[error("syntax error at position {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("generator index {index} out of range 1..={d}")]
    IndexOutOfRange { index: u8, d: u8 },
    #[error("rule {rule} is not compatible with the word order")]
    IncompatibleRule { rule: usize },
    #[error("count overflows 128 bits")]
    Overflow,
}
