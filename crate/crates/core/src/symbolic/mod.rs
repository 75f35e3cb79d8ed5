//! Sparse multivariate Laurent polynomials in `c1`, `c2` over the exact
//! rationals, with pseudo-remainder sequences, exact division, univariate
//! gcd, and evaluation.

pub mod laurent;
pub mod sprem;

pub use laurent::{LaurentPoly, Var};
pub use sprem::{gcd_univariate, sprem, SpremStep};
