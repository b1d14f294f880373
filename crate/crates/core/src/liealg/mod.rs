//! `sl_n` root data with Killing normalization, compact-form elements, and
//! the `sl_3` construction with its symmetric-power representations.

mod roots;
mod sl3;

pub use roots::{compact_elements, sl_n_basis, Root, RootDatum};
pub use sl3::{
    orthonormal_cartan, sl3_dmsa, sym_power_basis, sym_power_matrix, sym_power_rep, Sl3Generators, Sl3Rep, ALPHA,
    ALPHA_BETA, BETA,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("sl_{n} needs n >= 2")]
    RankTooSmall { n: usize },
    #[error("operation defined for sl_3 only, got sl_{n}")]
    NotSl3 { n: usize },
    #[error("symmetric power must be at least 1")]
    TrivialPower,
}
