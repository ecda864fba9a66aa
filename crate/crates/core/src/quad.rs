//! Quadrature over the unit circle (normalized arc measure) and unit disk
//! (normalized area measure).
//!
//! The circle rule is the equispaced trapezoid: spectrally accurate for
//! smooth periodic integrands and exact for trigonometric polynomials of
//! degree below the node count. The disk rule tensors Gauss–Legendre in the
//! radius (weight `2r` folded in, so the total weight is 1) with the circle
//! rule per ring.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Hard cap on angular nodes for adaptive refinement.
pub const CIRCLE_CAP: usize = 1 << 16;
/// Hard cap on radial nodes for adaptive refinement.
pub const RADIAL_CAP: usize = 1 << 12;
/// Smallest circle rule.
pub const MIN_CIRCLE_NODES: usize = 16;
/// Smallest radial rule used by adaptive refinement.
pub const MIN_RADIAL_NODES: usize = 8;
/// Default relative tolerance for adaptive refinement.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Ring evaluations at or above this size are parallelized.
const PAR_THRESHOLD: usize = 1 << 16;

/// Neumaier-compensated accumulator; keeps long node sums at roundoff.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.c
    }
}

/// Rounds up to a power of two.
pub fn next_pow2(x: usize) -> usize {
    x.max(1).next_power_of_two()
}

/// Equispaced trapezoid rule on the unit circle: nodes `θ_k = 2πk/N`,
/// weights `1/N`. `N` must be a power of two ≥ 16 so refinement nests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleRule {
    n: usize,
}

impl CircleRule {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_CIRCLE_NODES || !n.is_power_of_two() {
            return Err(Error::OutOfRange {
                param: "N",
                value: n as f64,
                reason: "circle rule size must be a power of two >= 16",
            });
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n as f64;
        (0..self.n).map(move |k| 2.0 * PI * k as f64 / n)
    }
}

/// Mean of `φ` over the circle: `(1/N) Σ φ(θ_k)`. Exact when `φ` is a
/// trigonometric polynomial of degree < N.
pub fn circle_integral<F>(phi: F, rule: &CircleRule) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut acc = CompensatedSum::default();
    for theta in rule.nodes() {
        let v = phi(theta);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { r: 1.0, theta });
        }
        acc.add(v);
    }
    Ok(acc.value() / rule.n as f64)
}

type NodeWeights = Arc<Vec<(f64, f64)>>;

static GL_CACHE: Lazy<Mutex<HashMap<usize, NodeWeights>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Gauss–Legendre nodes/weights on [0, 1], cached per size. Weights sum to 1
/// and the rule is exact for polynomials of degree ≤ 2m − 1.
pub fn gauss_legendre_unit(m: usize) -> NodeWeights {
    if let Some(hit) = GL_CACHE.lock().unwrap().get(&m) {
        return Arc::clone(hit);
    }
    let rule = Arc::new(compute_gauss_legendre_unit(m));
    GL_CACHE.lock().unwrap().insert(m, Arc::clone(&rule));
    rule
}

fn legendre_p_dp(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=m {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    // P'_m(x) = m (x P_m - P_{m-1}) / (x^2 - 1), valid off ±1.
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_gauss_legendre_unit(m: usize) -> Vec<(f64, f64)> {
    assert!(m >= 1, "radial rule needs at least one node");
    if m == 1 {
        return vec![(0.5, 1.0)];
    }
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        // Tricomi-style initial guess, then Newton.
        let mut x = (PI * (k as f64 - 0.25) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_p_dp(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_p_dp(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] -> [0, 1].
        out.push(((x + 1.0) / 2.0, w / 2.0));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Tensor rule on the unit disk against normalized area measure:
/// `M` Gauss–Legendre radii on [0, 1] with the weight `2r` folded in,
/// times an `N`-node circle rule per ring.
#[derive(Debug, Clone)]
pub struct DiskRule {
    radial: NodeWeights,
    circle: CircleRule,
}

impl DiskRule {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::OutOfRange {
                param: "M",
                value: 0.0,
                reason: "disk rule needs at least one radial node",
            });
        }
        Ok(Self {
            radial: gauss_legendre_unit(m),
            circle: CircleRule::new(n)?,
        })
    }

    pub fn m(&self) -> usize {
        self.radial.len()
    }

    pub fn n(&self) -> usize {
        self.circle.n()
    }
}

/// Integral of `Φ(r, θ)` over the unit disk against normalized area measure:
/// `Σ_j w_j 2 r_j · circle_mean(Φ(r_j, ·))`. Exact for integrands polynomial
/// in `(r cos θ, r sin θ)` of degree bounded by the rule sizes.
pub fn disk_integral<F>(phi: F, rule: &DiskRule) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let ring = |&(r, w): &(f64, f64)| -> Result<f64> {
        let mut acc = CompensatedSum::default();
        for theta in rule.circle.nodes() {
            let v = phi(r, theta);
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { r, theta });
            }
            acc.add(v);
        }
        Ok(w * 2.0 * r * acc.value() / rule.circle.n() as f64)
    };

    let contributions: Vec<Result<f64>> = if rule.m() * rule.n() >= PAR_THRESHOLD {
        rule.radial.par_iter().map(ring).collect()
    } else {
        rule.radial.iter().map(ring).collect()
    };

    let mut acc = CompensatedSum::default();
    for c in contributions {
        acc.add(c?);
    }
    Ok(acc.value())
}

/// Outcome of adaptive refinement: the last value, the last increment as the
/// a-posteriori error estimate, and the node counts used (`m = 0` for circle
/// integrals).
#[derive(Debug, Clone, Copy)]
pub struct Refined {
    pub value: f64,
    pub err_est: f64,
    pub n: usize,
    pub m: usize,
}

/// Doubles `N` until `|I_{2N} − I_N| ≤ tol·(1 + |I_{2N}|)`, starting from
/// `start_n` (clamped to a power of two in range). On hitting the cap the
/// error carries the last value and increment.
pub fn adaptive_circle<F>(phi: F, tol: f64, start_n: usize) -> Result<Refined>
where
    F: Fn(f64) -> f64,
{
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::OutOfRange {
            param: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let mut n = next_pow2(start_n).clamp(MIN_CIRCLE_NODES, CIRCLE_CAP);
    // Power-of-two rules nest: node angles 2πk/n survive doubling bit-exactly
    // (division by a power of two), so samples are reused across levels.
    let sample = |theta: f64| -> Result<f64> {
        let v = phi(theta);
        if !v.is_finite() {
            return Err(Error::NonFiniteSample { r: 1.0, theta });
        }
        Ok(v)
    };
    let mut values = Vec::with_capacity(n);
    for k in 0..n {
        values.push(sample(2.0 * PI * k as f64 / n as f64)?);
    }
    let mean = |values: &[f64]| -> f64 {
        let mut acc = CompensatedSum::default();
        for &v in values {
            acc.add(v);
        }
        acc.value() / values.len() as f64
    };
    let mut prev = mean(&values);
    let mut last_inc = f64::INFINITY;
    loop {
        if n * 2 > CIRCLE_CAP {
            return Err(Error::NoConvergence {
                value: prev,
                err_est: last_inc,
                n,
                m: 0,
            });
        }
        n *= 2;
        let mut next = Vec::with_capacity(n);
        for (k, &old) in values.iter().enumerate() {
            next.push(old);
            next.push(sample(2.0 * PI * (2 * k + 1) as f64 / n as f64)?);
        }
        values = next;
        let cur = mean(&values);
        let inc = (cur - prev).abs();
        if inc <= tol * (1.0 + cur.abs()) {
            // The increment cannot honestly claim accuracy below roundoff.
            return Ok(Refined {
                value: cur,
                err_est: inc.max(4.0 * f64::EPSILON * cur.abs()),
                n,
                m: 0,
            });
        }
        prev = cur;
        last_inc = inc;
    }
}

/// Disk version of [`adaptive_circle`]: `M` and `N` double together, each
/// clamped at its own cap; refinement fails only when neither can grow.
pub fn adaptive_disk<F>(phi: F, tol: f64, start: (usize, usize)) -> Result<Refined>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::OutOfRange {
            param: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let mut m = next_pow2(start.0).clamp(MIN_RADIAL_NODES, RADIAL_CAP);
    let mut n = next_pow2(start.1).clamp(MIN_CIRCLE_NODES, CIRCLE_CAP);
    let mut prev = disk_integral(&phi, &DiskRule::new(m, n)?)?;
    let mut last_inc = f64::INFINITY;
    loop {
        let m2 = (m * 2).min(RADIAL_CAP);
        let n2 = (n * 2).min(CIRCLE_CAP);
        if m2 == m && n2 == n {
            return Err(Error::NoConvergence {
                value: prev,
                err_est: last_inc,
                n,
                m,
            });
        }
        let cur = disk_integral(&phi, &DiskRule::new(m2, n2)?)?;
        let inc = (cur - prev).abs();
        if inc <= tol * (1.0 + cur.abs()) {
            return Ok(Refined {
                value: cur,
                err_est: inc.max(4.0 * f64::EPSILON * cur.abs()),
                n: n2,
                m: m2,
            });
        }
        prev = cur;
        last_inc = inc;
        m = m2;
        n = n2;
    }
}

/// `|z|^p` from `|z|^2`. Quarter-integer exponents (every p used by the
/// checkers) decompose into `powi` and square-root chains, which beat `powf`
/// by a wide margin in the quadrature hot loops.
#[inline]
pub(crate) fn abs_pow(norm_sq: f64, p: f64) -> f64 {
    let quarters = 2.0 * p; // exponent on norm_sq is p/2 = quarters/4
    if quarters.fract() == 0.0 && (0.0..=512.0).contains(&quarters) {
        let quarters = quarters as u32;
        let mut acc = match quarters / 4 {
            0 => 1.0,
            int => norm_sq.powi(int as i32),
        };
        match quarters % 4 {
            0 => {}
            1 => acc *= norm_sq.sqrt().sqrt(),
            2 => acc *= norm_sq.sqrt(),
            _ => {
                let s = norm_sq.sqrt();
                acc *= s * s.sqrt();
            }
        }
        acc
    } else {
        norm_sq.powf(0.5 * p)
    }
}
