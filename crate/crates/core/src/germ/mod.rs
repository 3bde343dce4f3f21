//! Local invariants of plane curve germs by linear algebra in jet spaces.

mod invariants;
mod jet;
mod poly;

pub use invariants::{Analyzer, InvariantReport, DEFAULT_CEILING};
pub use jet::{ideal_in_jets, monomial_at, monomial_count, monomial_index, JetSubspace};
pub use poly::{Exponent, GermPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("nonzero constant term: a germ must vanish at the origin")]
    ConstantTerm,
    #[error("singularity is not isolated up to ceiling {ceiling}")]
    NotIsolated { ceiling: u32 },
    #[error("k = {k} is too small for a germ of multiplicity {multiplicity}")]
    Degenerate { k: u32, multiplicity: u32 },
}
