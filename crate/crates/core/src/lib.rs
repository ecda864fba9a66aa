//! Numerical toolkit for Riesz- and Carleman-type inequalities between
//! Hardy-space and Bergman-space norms of harmonic functions on the unit disk.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`repr`] — truncated Taylor series and the harmonic-function families
//!   built from them, with pointwise evaluation on the closed disk;
//! * [`quad`] — spectrally accurate quadrature on the unit circle
//!   (equispaced trapezoid) and the unit disk (Gauss–Legendre × trapezoid),
//!   plus adaptive refinement with a-posteriori error estimates;
//! * [`norms`] — Hardy (`h^p`) and Bergman (`b^p`) norms with error bars;
//! * [`constants`] — closed forms for the sharp constants and the root `p1`;
//! * [`inequal`] — one checker per inequality/identity, each producing a
//!   signed-margin [`report::InequalityReport`];
//! * [`search`] — derivative-free extremal search and the `f_a` sharpness
//!   sweep;
//! * [`suite`] — seeded random function generators and suite runners;
//! * [`cli`] — the `disk-ineq` command-line front end.
//!
//! Margins are always compared against `-err_est`, never plain zero, so
//! quadrature error cannot turn a true theorem into a reported failure.

pub mod cli;
pub mod constants;
pub mod error;
pub mod inequal;
pub mod norms;
pub mod quad;
pub mod report;
pub mod repr;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
pub use norms::{bergman_norm, hardy_norm, NormResult, Space};
pub use report::{InequalityReport, Quadrature, Verdict};
pub use repr::{EvalPoint, HarmonicFunction, TaylorSeries};
