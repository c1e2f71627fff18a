//! Exact computations around the McKay correspondence for finite subgroups
//! of `SL(n, C)`.
//!
//! Groups are given by generator matrices over a cyclotomic field
//! `Q(zeta_N)`. From the closed group the crate computes the age grading
//! of conjugacy classes, the predicted Betti numbers of a crepant
//! resolution in dimension 3, toric crepant resolutions of abelian
//! quotients, stabilizer and ramification groups of monomial valuations,
//! and the folded resolution graphs of surface quotients.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod age;
pub mod cyclo;
pub mod error;
pub mod groupfile;
pub mod matgroup;
pub mod matrix;
pub mod quiver;
pub mod toric;
pub mod valuation;

pub use error::{Error, Result};
