//! Exact verification of a polarized surface in P^9 cut out by 84 cubics
//! over Q(sqrt(-7)).
//!
//! Layers, bottom up: [`arith`] (the number field and its reductions mod p),
//! [`poly`] and [`expr`] (polynomials in ten variables and their text form),
//! [`corpus`] (the equations), [`linalg`] (exact linear algebra) and
//! [`verify`] (the checks and the report).

pub mod arith;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod report;
pub mod verify;

pub use arith::{Field, ModularEmbedding, NumberFieldElement, PrimeFieldElement};
pub use corpus::{embedded_corpus, parse_corpus, EquationCorpus};
pub use error::{Error, Result};
pub use linalg::{DenseMatrix, SparseMatrixModP};
pub use par::Parallelism;
pub use poly::{Monomial, NfPolynomial, Polynomial};
pub use verify::{run_all, RunConfig, Status, VerificationReport};
