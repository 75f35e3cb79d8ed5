//! Exact-arithmetic construction, verification, classification, and
//! cross-checking of the finite-dimensional irreducible representations of
//! PSL2(Z) whose restriction to the commutator subgroup is diagonalizable.
//!
//! Modules:
//! - [`exactalg`]: exact fields (Q, GF(p), small extensions) and matrices
//! - [`symbolic`]: sparse Laurent polynomials in `c1`, `c2` with
//!   pseudo-remainder elimination
//! - [`rep`]: representation semantics (relations, commutator images,
//!   Burnside irreducibility, intertwiners)
//! - [`catalog`]: the classification as executable data, with a classifier
//! - [`patterns`]: eigenvalue-pattern census of monomial arrangements
//! - [`elimination`]: the monomial-coefficient systems, determinant
//!   polynomials, factorizations, and elimination certificates
//! - [`sweep`]: seeded random generators for verification sweeps

pub mod error;
pub mod exactalg;
pub mod symbolic;

pub mod catalog;
pub mod diagonalize;
pub mod elimination;
pub mod patterns;
pub mod rep;
pub mod sweep;

pub use error::{Error, Result};
