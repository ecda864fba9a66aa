//! Hardy-space and Bergman-space norms with a-posteriori error estimates.
//!
//! All representable functions extend continuously to the boundary, so the
//! Hardy norm is evaluated directly at `r = 1` (the circle means are
//! nondecreasing in `r`, making that the supremum). When the integrand is a
//! trigonometric polynomial of known degree — Taylor pairs with an even
//! exponent — the starting rule is sized for exactness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{self, abs_pow, next_pow2, Refined};
use crate::repr::HarmonicFunction;

/// Default quadrature tolerance for norms.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Hardy,
    Bergman,
}

/// A norm value with the quadrature parameters that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub p: f64,
    pub space: Space,
    pub err_est: f64,
    /// Angular and radial node counts; the radial count is 0 for Hardy norms.
    pub nodes: (usize, usize),
    /// False when the node caps were hit first; `err_est` is then the last
    /// refinement increment rather than a converged bound.
    pub converged: bool,
}

fn check_p(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::OutOfRange {
            param: "p",
            value: p,
            reason: "norm exponent must be positive",
        });
    }
    Ok(())
}

fn is_even_int(p: f64) -> bool {
    p > 0.0 && p <= 64.0 && p.fract() == 0.0 && (p as u64).is_multiple_of(2)
}

/// p-th root with the error estimate pushed through monotonically.
fn root_with_err(integral: f64, err: f64, p: f64) -> (f64, f64) {
    let base = integral.max(0.0);
    let value = base.powf(1.0 / p);
    let upper = (base + err.max(0.0)).powf(1.0 / p);
    (value, (upper - value).max(0.0))
}

fn build(space: Space, p: f64, refined: Refined, converged: bool) -> NormResult {
    let (value, err_est) = root_with_err(refined.value, refined.err_est, p);
    NormResult {
        value,
        p,
        space,
        err_est,
        nodes: (refined.n, refined.m),
        converged,
    }
}

/// Hardy norm `(mean over the circle of |f|^p)^{1/p}` at `r = 1`.
///
/// Propagates `NoConvergence` when the adaptive cap is hit; the error payload
/// carries the partial norm so callers can degrade with honest error bars
/// (or use [`hardy_norm_lenient`] to do that automatically).
pub fn hardy_norm(f: &HarmonicFunction, p: f64, tol: f64) -> Result<NormResult> {
    check_p(p)?;
    let start_n = match f.poly_degree() {
        Some(d) if is_even_int(p) => next_pow2((p as usize) * d + 1),
        _ => quad::MIN_CIRCLE_NODES,
    };
    let ev = f.evaluator();
    let phi = |theta: f64| abs_pow(ev.norm_sq(1.0, theta), p);
    match quad::adaptive_circle(phi, tol, start_n) {
        Ok(refined) => Ok(build(Space::Hardy, p, refined, true)),
        Err(Error::NoConvergence { value, err_est, n, m }) => {
            let (v, e) = root_with_err(value, err_est, p);
            Err(Error::NoConvergence {
                value: v,
                err_est: e,
                n,
                m,
            })
        }
        Err(e) => Err(e),
    }
}

/// Bergman norm `(integral over the disk of |f|^p dσ)^{1/p}`.
pub fn bergman_norm(f: &HarmonicFunction, p: f64, tol: f64) -> Result<NormResult> {
    check_p(p)?;
    let start = match f.poly_degree() {
        Some(d) if is_even_int(p) => {
            let deg = (p as usize) * d;
            (next_pow2(deg / 2 + 1), next_pow2(deg + 1))
        }
        _ => (quad::MIN_RADIAL_NODES, quad::MIN_CIRCLE_NODES),
    };
    let ev = f.evaluator();
    let phi = |r: f64, theta: f64| abs_pow(ev.norm_sq(r, theta), p);
    match quad::adaptive_disk(phi, tol, start) {
        Ok(refined) => Ok(build(Space::Bergman, p, refined, true)),
        Err(Error::NoConvergence { value, err_est, n, m }) => {
            let (v, e) = root_with_err(value, err_est, p);
            Err(Error::NoConvergence {
                value: v,
                err_est: e,
                n,
                m,
            })
        }
        Err(e) => Err(e),
    }
}

/// [`hardy_norm`] that degrades `NoConvergence` into a result flagged
/// `converged: false` instead of an error.
pub fn hardy_norm_lenient(f: &HarmonicFunction, p: f64, tol: f64) -> Result<NormResult> {
    match hardy_norm(f, p, tol) {
        Err(Error::NoConvergence { value, err_est, n, m }) => Ok(NormResult {
            value,
            p,
            space: Space::Hardy,
            err_est,
            nodes: (n, m),
            converged: false,
        }),
        other => other,
    }
}

/// [`bergman_norm`] with the same graceful degradation.
pub fn bergman_norm_lenient(f: &HarmonicFunction, p: f64, tol: f64) -> Result<NormResult> {
    match bergman_norm(f, p, tol) {
        Err(Error::NoConvergence { value, err_est, n, m }) => Ok(NormResult {
            value,
            p,
            space: Space::Bergman,
            err_est,
            nodes: (n, m),
            converged: false,
        }),
        other => other,
    }
}
