//! Pointwise Laplacian machinery: the closed-form Laplacians of the
//! regularized fields `F_ε`, `U_ε`, `V_ε`, the log-subharmonicity formula,
//! the normalized ratio `Q(s)` with its stationary-point structure, and the
//! radial Green identity.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::report::{InequalityReport, Quadrature};
use crate::repr::{EvalPoint, TaylorSeries};

use super::lenient;

/// Step for 5-point finite-difference Laplacian cross-checks.
pub const FD_LAPLACIAN_STEP: f64 = 1e-4;
/// Step for the central radial derivative inside the Green identity.
pub const FD_RADIAL_STEP: f64 = 1e-5;
/// Grid size for [`q_report`].
pub const QREPORT_GRID: usize = 720;
/// Tolerance budget for [`q_report`] margins.
pub const QREPORT_TOL: f64 = 1e-9;

/// Regularization family: `ε > 0`, `p > 1`, `q = p/(p−1)`.
#[derive(Debug, Clone, Copy)]
pub struct EpsFamily {
    pub eps: f64,
    pub p: f64,
    pub q: f64,
}

impl EpsFamily {
    pub fn new(p: f64, eps: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::OutOfRange {
                param: "p",
                value: p,
                reason: "the regularized fields need p > 1",
            });
        }
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::OutOfRange {
                param: "eps",
                value: eps,
                reason: "regularization must be positive",
            });
        }
        Ok(Self {
            eps,
            p,
            q: p / (p - 1.0),
        })
    }
}

/// The three closed-form Laplacians at a point.
#[derive(Debug, Clone, Copy)]
pub struct EpsLaplacians {
    /// `ΔF_ε = p (qε + |f|²)^{p/2−2} (2qε + p|f|²) |f'|²`.
    pub d_f: f64,
    /// `ΔU_ε = p (u² + ε)^{p/2−2} (ε + (p−1)u²) |f'|²`.
    pub d_u: f64,
    /// `ΔV_ε = p (v² + ε)^{p/2−2} (ε + (p−1)v²) |f'|²`.
    pub d_v: f64,
}

/// Laplacians from raw local data `f(z)` and `|f'(z)|²`; everything the
/// formulas see.
pub fn eps_laplacians_raw(fval: Complex64, fprime_sq: f64, fam: &EpsFamily) -> EpsLaplacians {
    let (p, eps, q) = (fam.p, fam.eps, fam.q);
    let e = 0.5 * p - 2.0;
    let u = fval.re;
    let v = fval.im;
    let af2 = fval.norm_sqr();
    EpsLaplacians {
        d_f: p * (q * eps + af2).powf(e) * (2.0 * q * eps + p * af2) * fprime_sq,
        d_u: p * (u * u + eps).powf(e) * (eps + (p - 1.0) * u * u) * fprime_sq,
        d_v: p * (v * v + eps).powf(e) * (eps + (p - 1.0) * v * v) * fprime_sq,
    }
}

/// Laplacians of `F_ε`, `U_ε`, `V_ε` for a holomorphic `f` at a point.
pub fn eps_laplacians(f: &TaylorSeries, fam: &EpsFamily, pt: &EvalPoint) -> EpsLaplacians {
    let z = pt.to_complex();
    eps_laplacians_raw(f.eval(z), f.derivative().eval(z).norm_sqr(), fam)
}

/// `Δ log(|a|² + |b|²)` via the closed form
/// `4 ((|a'|²+|b'|²)(|a|²+|b|²) − |ā a' + b̄ b'|²) / (|a|²+|b|²)²`,
/// nonnegative up to roundoff.
pub fn log_laplacian(a: &TaylorSeries, b: &TaylorSeries, pt: &EvalPoint) -> Result<f64> {
    let z = pt.to_complex();
    let av = a.eval(z);
    let bv = b.eval(z);
    let base = av.norm_sqr() + bv.norm_sqr();
    if base <= 1e-300 {
        return Err(Error::DegenerateZero);
    }
    let apv = a.derivative().eval(z);
    let bpv = b.derivative().eval(z);
    let cross = av.conj() * apv + bv.conj() * bpv;
    let num = (apv.norm_sqr() + bpv.norm_sqr()) * base - cross.norm_sqr();
    Ok(4.0 * num / (base * base))
}

/// The normalized ratio `Q(s) = (p/(p−1)) · Δ(U_ε+V_ε)/ΔF_ε` at `|f| = r`,
/// `arg f = s` (the `|f'|²` factor cancels):
/// its extrema over `s` sit at multiples of π/4 and straddle 1 according to
/// the sign of `p − 4`.
pub fn q_value(s: f64, r: f64, eps: f64, p: f64) -> Result<f64> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::OutOfRange {
            param: "r",
            value: r,
            reason: "Q(s) needs r > 0",
        });
    }
    let fam = EpsFamily::new(p, eps)?;
    let e = 0.5 * p - 2.0;
    let c2 = s.cos().powi(2);
    let s2 = s.sin().powi(2);
    let r2 = r * r;
    let den = (2.0 * eps + (p - 1.0) * r2) * (fam.q * eps + r2).powf(e);
    let num = (eps + r2 * c2).powf(e) * (eps + (p - 1.0) * r2 * c2)
        + (eps + r2 * s2).powf(e) * (eps + (p - 1.0) * r2 * s2);
    Ok(num / den)
}

/// Samples `Q` on a 720-point grid (which contains the eight stationary
/// candidates `s_j = πj/4`) and reports the branch inequality —
/// `min Q ≥ 1` for `p ≤ 4`, `max Q ≤ 1` for `p ≥ 4` — plus how far the
/// binding grid extremum sits from the nearest `s_j`.
pub fn q_report(r: f64, eps: f64, p: f64) -> Result<InequalityReport> {
    let step = 2.0 * PI / QREPORT_GRID as f64;
    let mut min_q = f64::INFINITY;
    let mut max_q = f64::NEG_INFINITY;
    let mut argmin = 0.0;
    let mut argmax = 0.0;
    for k in 0..QREPORT_GRID {
        let s = step * k as f64;
        let v = q_value(s, r, eps, p)?;
        if v < min_q {
            min_q = v;
            argmin = s;
        }
        if v > max_q {
            max_q = v;
            argmax = s;
        }
    }
    for j in 0..8 {
        let s = PI * j as f64 / 4.0;
        let v = q_value(s, r, eps, p)?;
        if v < min_q {
            min_q = v;
            argmin = s;
        }
        if v > max_q {
            max_q = v;
            argmax = s;
        }
    }

    let flat = (max_q - min_q).abs() <= 1e-12 * (1.0 + max_q.abs());
    let binding = if p <= 4.0 { argmin } else { argmax };
    let stationary_dist = if flat {
        0.0
    } else {
        (0..8)
            .map(|j| {
                let d = (binding - PI * j as f64 / 4.0).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d)
            })
            .fold(f64::INFINITY, f64::min)
    };

    let (lhs, rhs) = if p <= 4.0 { (1.0, min_q) } else { (max_q, 1.0) };
    Ok(InequalityReport::new(
        "lemma-new-q",
        lhs,
        rhs,
        1.0,
        Quadrature {
            n: QREPORT_GRID,
            m: 0,
            err_est: QREPORT_TOL,
        },
    )
    .with_param("p", p)
    .with_param("r", r)
    .with_param("eps", eps)
    .with_submargin("min_q", min_q)
    .with_submargin("max_q", max_q)
    .with_submargin("argmin_s", argmin)
    .with_submargin("argmax_s", argmax)
    .with_submargin("stationary_dist", stationary_dist)
    .with_submargin("grid_step", step))
}

/// Pointwise comparison `Δ(U_ε + V_ε)` vs `((p−1)/p) ΔF_ε`, oriented `≥` for
/// `1 < p ≤ 4` and `≤` for `p > 4`; identically equal at `p = 4`.
pub fn check_lemma_new(
    f: &TaylorSeries,
    p: f64,
    eps: f64,
    pt: &EvalPoint,
) -> Result<InequalityReport> {
    let fam = EpsFamily::new(p, eps)?;
    let l = eps_laplacians(f, &fam, pt);
    let target = (p - 1.0) / p * l.d_f;
    let sum = l.d_u + l.d_v;
    let scale = l.d_f.abs().max(sum.abs()).max(1.0);
    let err = 1e-12 * scale;
    let (lhs, rhs) = if p <= 4.0 { (target, sum) } else { (sum, target) };
    Ok(InequalityReport::new(
        "lemma-new",
        lhs,
        rhs,
        (p - 1.0) / p,
        Quadrature {
            n: 0,
            m: 0,
            err_est: err,
        },
    )
    .with_param("p", p)
    .with_param("eps", eps)
    .with_param("r", pt.r())
    .with_param("theta", pt.theta()))
}

/// Radial Green identity at radius `r`:
/// `r ∫_0^{2π} ∂G/∂r dt = ∫_{|z|≤r} ΔG dx dy`,
/// with the radial derivative by central difference (step 1e-5). Passes when
/// the two sides agree within `1e-6 (1 + |lhs|)`.
pub fn green_check<G, L>(g: G, laplacian: L, r: f64) -> Result<InequalityReport>
where
    G: Fn(f64, f64) -> f64,
    L: Fn(f64, f64) -> f64 + Sync,
{
    if !r.is_finite() || r <= 0.0 || r >= 1.0 {
        return Err(Error::OutOfRange {
            param: "r",
            value: r,
            reason: "the Green identity is checked on interior circles",
        });
    }
    let d = FD_RADIAL_STEP;
    let deriv = lenient(quad::adaptive_circle(
        |theta| (g(r + d, theta) - g(r - d, theta)) / (2.0 * d),
        1e-8,
        quad::MIN_CIRCLE_NODES,
    ))?;
    let lhs = r * 2.0 * PI * deriv.value;

    // Scale the disk to radius r: ∫_{|z|≤r} ΔG dxdy = π r² ∫_U ΔG(rρ) dσ(ρ).
    let disk = lenient(quad::adaptive_disk(
        |rho, theta| laplacian(r * rho, theta),
        1e-8,
        (quad::MIN_RADIAL_NODES, quad::MIN_CIRCLE_NODES),
    ))?;
    let rhs = PI * r * r * disk.value;

    let budget = 1e-6 * (1.0 + lhs.abs());
    Ok(InequalityReport::new(
        "green",
        lhs,
        rhs,
        1.0,
        Quadrature {
            n: deriv.n.max(disk.n),
            m: disk.m,
            err_est: budget,
        },
    )
    .with_param("r", r)
    .with_margin(-(lhs - rhs).abs()))
}
