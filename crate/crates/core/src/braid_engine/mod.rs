//! Braid-group representations on fusion spaces.

mod printed;
mod rep;
mod sector;
mod word;

pub use printed::{
    compare_block, compare_matrix, printed_block, printed_blocks, printed_normalization, BlockComparison,
    GroupComparison, MatrixComparison, PrintedBlock, PrintedSector,
};
pub use rep::{
    evaluate, evaluate_ops, generators, generators_sparse, normalize_special, roots_of_unity_roots, sigma_matrix,
    sigma_route, sigma_sparse, verify_braid_relations, Normalization, Operator, RepMatrix,
};
pub use sector::{
    analyze_span, commutant_dim, compress, decompose, gram_schmidt, restrict, verify_sector, Decomposition, Sector,
    SectorCheck,
};
pub use word::BraidWord;

use crate::anyon_model::ModelError;
use crate::fusion_space::FusionError;

#[derive(Debug, thiserror::Error)]
pub enum BraidError {
    #[error("generator index {index} out of range for {strands} strands")]
    Index { index: i32, strands: usize },
    #[error("cannot parse braid data: {0}")]
    Parse(String),
    #[error("strand {0} and its right neighbour carry different anyons")]
    NonUniformLeaves(usize),
    #[error("no normalizing root: {0}")]
    NoRoot(String),
    #[error("sector basis is not orthonormal")]
    NotOrthonormal,
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Model(#[from] ModelError),
}
