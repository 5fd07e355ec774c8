//! Exact engine for the D(S3) anyon model.

pub mod exact_arith;

pub use exact_arith::{cy, ArithError, Cyclotomic, Matrix, Rational, SparseMatrix};
pub mod anyon_model;

pub use anyon_model::{ds3_model, AnyonLabel, AnyonModel, ConsistencyReport};
pub mod fusion_space;

pub use fusion_space::{enumerate_basis, BasisOrder, FMove, FusionBasis, StateVector, TreeShape};
pub mod braid_engine;
pub use braid_engine::{BraidError, BraidWord, RepMatrix};
pub mod group_closure;
pub mod qutrit_models;
pub mod adaptive_sim;
