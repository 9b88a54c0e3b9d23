//! Exact calculus for weighted Lie algebra structure and commuting operator
//! systems, with a numeric spectral companion for the abelian case.
//!
//! The symbolic half works over ℚ and ℚ(i) throughout: Lie algebras given by
//! structure constants, weighted algebraic bases and the filtrations they
//! induce, reducedness, graded contractions, dilation gradings, PBW normal
//! forms in the universal enveloping algebra, and direct products. The
//! numeric half realizes the spectral objects that have closed forms on
//! abelian ℝ^d: polynomial symbols, sampled joint spectra and their
//! pushforwards, Plancherel identities checked by quadrature, kernel
//! transforms, and dilation/growth structure of the spectral measure.

pub mod catalog;
pub mod cli;
pub mod env;
pub mod forms;
pub mod grading;
pub mod lie;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod products;
pub mod quad;
pub mod report;
pub mod sampler;
pub mod scalar;
pub mod spectrum;
pub mod weighted;

pub use env::{check_system, EnvElement, OperatorSystem};
pub use grading::{quasiequivalence_report, Grading};
pub use lie::LieAlgebra;
pub use linalg::Subspace;
pub use scalar::{GaussRational, Rational};
pub use weighted::{
    compute_filtration, contract, is_reduced_strict, is_reduced_weak, reduce_basis, WeightedBasis,
};
