//! Exact Tutte polynomials of uniform matroids and their thickenings, with
//! tooling to test the Merino-Welsh inequalities on them.
//!
//! * [`exact`]: big integers, rationals, binomials and bivariate polynomials.
//! * [`uniform`]: closed form for `U_{n,r}`.
//! * [`thickening`]: k-thickened uniform matroids and Merino-Welsh reports.
//! * [`oracle`]: brute-force matroids given by rank tables.
//! * [`asymptotics`]: growth exponents and the threshold `x0`.
//! * [`cli`]: the `mw-tutte` command-line front end.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod thickening;
pub mod uniform;

pub use error::{Error, Result};
pub use exact::{binomial, BigInt, BigRational, BivariatePoly};
pub use oracle::{ExchangeGraph, RankOracleMatroid};
pub use thickening::{mw_report, MwReport, ThickenedUniform};
pub use uniform::UniformMatroid;
