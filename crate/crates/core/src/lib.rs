//! Exact symbolic engine for null-plane quantum Poincare algebras.
//!
//! The crate provides:
//!
//! * truncated formal power series in a central deformation parameter over
//!   noncommutative words, with exact coefficients in the field extended by
//!   sqrt(2) ([`ncpoly`]);
//! * tensor powers and the full set of Hopf-algebra and Lie-bialgebra axiom
//!   checks ([`hopf`]);
//! * built-in presentations of the null-plane Poincare algebras in 1+1, 2+1
//!   and 3+1 dimensions, the nonstandard sl(2) deformation, and related
//!   algebras ([`algebras`]);
//! * factorized universal R-matrices with Yang-Baxter, intertwining and
//!   triangularity checks ([`rmatrix`]);
//! * the dual-pairing check between the 1+1 deformation and the quantum
//!   group of its dual coordinates ([`duality`]);
//! * contraction limits connecting the deformations across dimensions
//!   ([`contraction`]);
//! * exact finite-dimensional matrix representations and matrix-level
//!   Yang-Baxter checks ([`matrixrep`]);
//! * a named-suite runner used by the command-line interface ([`suite`]).

pub mod algebras;
pub mod coeff;
pub mod contraction;
pub mod duality;
pub mod error;
pub mod hopf;
pub mod matrixrep;
pub mod ncpoly;
pub mod report;
pub mod rmatrix;
pub mod suite;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use report::{CheckReport, Status};
