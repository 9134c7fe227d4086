//! Exact verification engine for ambient symmetries of the flat CR sub-Laplacian
//! and the representation theory of symmetric trace-free tensors.

pub mod ambient;
pub mod boundary;
pub mod classalg;
pub mod decompose;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod symbols;
pub mod tensor;
pub mod weyl;

pub use error::{Error, Result};
pub use matrix::{exact_rank_solve, ExactMatrix, RankSolve};
pub use poly::{Generator, LaurentPoly, Mono, Ring};
pub use scalar::{GaussianRational, Gq};
pub use weyl::WeylOperator;
pub use report::{Status, VerificationReport};
pub use tensor::MixedTensor;
pub use suites::{run_suite, Suite, SuiteParams};
pub use classalg::{ClassElement, GroupAlgebraElement, Partition, Permutation};
pub use decompose::{SubspaceBasis, IsotypicTable};
pub use ambient::{AmbientModel, TracelessMatrix};
pub use boundary::BoundaryModel;
