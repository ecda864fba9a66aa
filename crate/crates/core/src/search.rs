//! Empirical sharpness probing: maximize inequality ratios over
//! parametrized families.
//!
//! Nelder–Mead is used instead of gradient methods because `|f|^p` is
//! non-smooth exactly where extremals may live (boundary zeros of `f`).
//! Searches are deterministic given `(spec, seed, restarts)`: every restart
//! derives its own ChaCha stream from the seed and the reduction tie-breaks
//! on the restart index.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::constants;
use crate::error::{Error, Result};
use crate::norms::{bergman_norm_lenient, hardy_norm_lenient};
use crate::repr::{FunctionSpec, HarmonicFunction, TaylorSeries};

/// Which inequality's ratio a search probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchTarget {
    Cp,
    C4,
    RieszUpper,
    RieszLower,
    Newt,
}

impl SearchTarget {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "cp" => Self::Cp,
            "c4" => Self::C4,
            "riesz-upper" => Self::RieszUpper,
            "riesz-lower" => Self::RieszLower,
            "newt" => Self::Newt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    FaSweep,
    TrigPoly,
}

/// Search family description.
#[derive(Debug, Clone, Serialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub degree: usize,
    pub p: f64,
    pub target: SearchTarget,
}

pub const MAX_SEARCH_DEGREE: usize = 32;
pub const DEFAULT_RESTARTS: usize = 20;

impl FamilySpec {
    pub fn trig_poly(degree: usize, p: f64, target: SearchTarget) -> Result<Self> {
        if degree > MAX_SEARCH_DEGREE {
            return Err(Error::OutOfRange {
                param: "degree",
                value: degree as f64,
                reason: "search families support degree <= 32",
            });
        }
        let spec = Self {
            kind: FamilyKind::TrigPoly,
            degree,
            p,
            target,
        };
        spec.bound()?; // validates p for the target
        Ok(spec)
    }

    /// Parameter count: complex coefficients as real pairs, with the
    /// constant dropped where the target's hypothesis requires `f(0) = 0`.
    pub fn dimension(&self) -> usize {
        match self.target {
            SearchTarget::Cp => 2 * (self.degree + 1),
            SearchTarget::C4 => 4 * (self.degree + 1),
            SearchTarget::RieszUpper | SearchTarget::RieszLower | SearchTarget::Newt => {
                2 * self.degree.max(1)
            }
        }
    }

    /// The theorem constant that bounds this target's ratio.
    pub fn bound(&self) -> Result<f64> {
        match self.target {
            SearchTarget::Cp => constants::carleman_c(self.p),
            SearchTarget::C4 => constants::carleman_c(4.0),
            SearchTarget::RieszUpper => constants::riesz_r(self.p),
            SearchTarget::RieszLower => Ok(1.0 / constants::riesz_l(self.p)?),
            SearchTarget::Newt => {
                if !self.p.is_finite() || self.p < 2.0 {
                    return Err(Error::OutOfRange {
                        param: "p",
                        value: self.p,
                        reason: "the split-norm target needs p >= 2",
                    });
                }
                let k = constants::newt_constant(self.p)?;
                Ok(if self.p <= 4.0 { k } else { 1.0 / k })
            }
        }
    }

    fn series_from(params: &[f64], skip_constant: bool) -> TaylorSeries {
        let mut coeffs = Vec::with_capacity(params.len() / 2 + 1);
        if skip_constant {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        for chunk in params.chunks_exact(2) {
            coeffs.push(Complex64::new(chunk[0], chunk[1]));
        }
        TaylorSeries::new(coeffs)
    }

    /// Ratio objective at a parameter vector; 0 when the denominator
    /// degenerates. Scale-invariant by construction, so no explicit
    /// renormalization is needed per evaluation.
    pub fn ratio(&self, params: &[f64], tol: f64) -> f64 {
        self.ratio_with_err(params, tol).0
    }

    /// Ratio plus a first-order error estimate from the norm error bars.
    pub fn ratio_with_err(&self, params: &[f64], tol: f64) -> (f64, f64) {
        let degenerate = |den: f64| den <= 1e-12;
        let div = |num: (f64, f64), den: (f64, f64)| -> (f64, f64) {
            if degenerate(den.0) {
                (0.0, 0.0)
            } else {
                (
                    num.0 / den.0,
                    num.1 / den.0 + num.0 * den.1 / (den.0 * den.0),
                )
            }
        };
        let val = |n: crate::norms::NormResult| (n.value, n.err_est);
        match self.target {
            SearchTarget::Cp => {
                let u = HarmonicFunction::real_part_of(&Self::series_from(params, false));
                let num = bergman_norm_lenient(&u, 2.0 * self.p, tol).map(val);
                let den = hardy_norm_lenient(&u, self.p, tol).map(val);
                match (num, den) {
                    (Ok(n), Ok(d)) => div(n, d),
                    _ => (0.0, 0.0),
                }
            }
            SearchTarget::C4 => {
                let half = params.len() / 2;
                let f = HarmonicFunction::taylor_pair(
                    Self::series_from(&params[..half], false),
                    Self::series_from(&params[half..], false),
                );
                let num = bergman_norm_lenient(&f, 8.0, tol).map(val);
                let den = hardy_norm_lenient(&f, 4.0, tol).map(val);
                match (num, den) {
                    (Ok(n), Ok(d)) => div(n, d),
                    _ => (0.0, 0.0),
                }
            }
            SearchTarget::RieszUpper | SearchTarget::RieszLower => {
                let series = Self::series_from(params, true);
                let f = hardy_norm_lenient(&HarmonicFunction::holomorphic(series.clone()), self.p, tol)
                    .map(val);
                let u = hardy_norm_lenient(&HarmonicFunction::real_part_of(&series), self.p, tol)
                    .map(val);
                match (f, u) {
                    (Ok(fv), Ok(uv)) => {
                        if self.target == SearchTarget::RieszUpper {
                            div(fv, uv)
                        } else {
                            div(uv, fv)
                        }
                    }
                    _ => (0.0, 0.0),
                }
            }
            SearchTarget::Newt => {
                let series = Self::series_from(params, true);
                let f = hardy_norm_lenient(&HarmonicFunction::holomorphic(series.clone()), self.p, tol)
                    .map(val);
                let u = hardy_norm_lenient(&HarmonicFunction::real_part_of(&series), self.p, tol)
                    .map(val);
                let v = hardy_norm_lenient(&HarmonicFunction::imag_part_of(&series), self.p, tol)
                    .map(val);
                let (fv, uv, vv) = match (f, u, v) {
                    (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                    _ => return (0.0, 0.0),
                };
                let p = self.p;
                let s = uv.0.powf(p) + vv.0.powf(p);
                let split = s.powf(1.0 / p);
                let err_s =
                    p * uv.0.powf(p - 1.0) * uv.1 + p * vv.0.powf(p - 1.0) * vv.1;
                let split_err = ((s + err_s).powf(1.0 / p) - split).max(0.0);
                if p <= 4.0 {
                    div(fv, (split, split_err))
                } else {
                    div((split, split_err), fv)
                }
            }
        }
    }

    /// The function the parameter vector denotes, for counterexample dumps.
    pub fn function_of(&self, params: &[f64]) -> HarmonicFunction {
        match self.target {
            SearchTarget::Cp => HarmonicFunction::real_part_of(&Self::series_from(params, false)),
            SearchTarget::C4 => {
                let half = params.len() / 2;
                HarmonicFunction::taylor_pair(
                    Self::series_from(&params[..half], false),
                    Self::series_from(&params[half..], false),
                )
            }
            _ => HarmonicFunction::holomorphic(Self::series_from(params, true)),
        }
    }
}

/// Outcome of an extremal search.
#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub best_ratio: f64,
    pub best_params: Vec<f64>,
    pub evaluations: u64,
    pub seed: u64,
    pub restarts: usize,
    /// Theorem constant the ratio must respect.
    pub bound: f64,
    /// Error bar on the reported ratio from the final strict evaluation.
    pub err_est: f64,
    /// False exactly when `best_ratio > bound + err_est`; a counterexample
    /// descriptor is attached in that case, never silently dropped.
    pub sound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<FunctionSpec>,
}

/// Plain Nelder–Mead on `obj` (minimized), returning the best point, value,
/// and evaluation count.
fn nelder_mead<F>(mut obj: F, x0: &[f64], step: f64, max_iter: usize) -> (Vec<f64>, f64, u64)
where
    F: FnMut(&[f64]) -> f64,
{
    let dim = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut evals: u64 = 0;
    let mut eval = |x: &[f64], evals: &mut u64| -> f64 {
        *evals += 1;
        let v = obj(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }

    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let best = simplex[0].1;
        let worst = simplex[dim].1;
        if (worst - best).abs() <= 1e-10 * (1.0 + best.abs()) {
            break;
        }

        let centroid: Vec<f64> = (0..dim)
            .map(|j| simplex[..dim].iter().map(|(x, _)| x[j]).sum::<f64>() / dim as f64)
            .collect();
        let worst_x = simplex[dim].0.clone();
        let reflected: Vec<f64> = (0..dim)
            .map(|j| centroid[j] + alpha * (centroid[j] - worst_x[j]))
            .collect();
        let fr = eval(&reflected, &mut evals);

        if fr < simplex[0].1 {
            let expanded: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + gamma * (reflected[j] - centroid[j]))
                .collect();
            let fe = eval(&expanded, &mut evals);
            simplex[dim] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let contracted: Vec<f64> = (0..dim)
                .map(|j| centroid[j] + rho * (worst_x[j] - centroid[j]))
                .collect();
            let fc = eval(&contracted, &mut evals);
            if fc < simplex[dim].1 {
                simplex[dim] = (contracted, fc);
            } else {
                let best_x = simplex[0].0.clone();
                for entry in simplex.iter_mut().skip(1) {
                    let shrunk: Vec<f64> = (0..dim)
                        .map(|j| best_x[j] + sigma * (entry.0[j] - best_x[j]))
                        .collect();
                    let fv = eval(&shrunk, &mut evals);
                    *entry = (shrunk, fv);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (x, v) = simplex.swap_remove(0);
    (x, v, evals)
}

/// Maximizes the target ratio over `restarts` seeded Nelder–Mead runs.
/// Deterministic given `(spec, seed, restarts)`.
pub fn extremal_search(
    spec: &FamilySpec,
    seed: u64,
    restarts: usize,
    tol: f64,
) -> Result<SearchResult> {
    let bound = spec.bound()?;
    let dim = spec.dimension();
    let restarts = restarts.max(1);
    let max_iter = 400 + 100 * dim;

    let runs: Vec<(Vec<f64>, f64, u64)> = (0..restarts)
        .into_par_iter()
        .map(|k| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_add((k as u64).wrapping_mul(0x9E3779B97F4A7C15)));
            let mut x0: Vec<f64> = (0..dim)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect();
            let norm = x0.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 0.0 {
                for v in &mut x0 {
                    *v /= norm;
                }
            }
            let (x, neg, evals) = nelder_mead(|x| -spec.ratio(x, tol), &x0, 0.5, max_iter);
            (x, -neg, evals)
        })
        .collect();

    // Deterministic reduction: best ratio, lowest restart index on ties.
    let mut best_idx = 0;
    for (i, run) in runs.iter().enumerate() {
        if run.1 > runs[best_idx].1 {
            best_idx = i;
        }
    }
    let evaluations: u64 = runs.iter().map(|r| r.2).sum();
    let (best_params, _, _) = runs.into_iter().nth(best_idx).expect("restarts >= 1");

    // Strict re-evaluation at the optimum for the reported value and bar.
    let (best_ratio, err_est) = spec.ratio_with_err(&best_params, 1e-10);
    let sound = best_ratio <= bound + err_est + 1e-12;
    let counterexample = if sound {
        None
    } else {
        Some(FunctionSpec::from(&spec.function_of(&best_params)))
    };

    Ok(SearchResult {
        best_ratio,
        best_params,
        evaluations,
        seed,
        restarts,
        bound,
        err_est,
        sound,
        counterexample,
    })
}

/// One sample of the `f_a` sharpness sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub a: f64,
    pub ratio: f64,
    pub err_est: f64,
    pub converged: bool,
}

/// The sweep curve with its extrapolated `a ↑ 1` limit.
#[derive(Debug, Clone, Serialize)]
pub struct SweepCurve {
    pub p: f64,
    pub points: Vec<SweepPoint>,
    /// Geometric-sequence extrapolation of the last three points, when the
    /// grid admits one.
    pub extrapolated: Option<f64>,
}

/// Ratio `‖f_a‖_{b^{2p}} / ‖f_a‖_{h^p}` along a grid of `a` values.
/// Unconverged quadrature is reported per-point; the sweep continues.
pub fn sweep_fa(p: f64, grid: &[f64], tol: f64) -> Result<SweepCurve> {
    if !p.is_finite() || p <= 1.0 {
        return Err(Error::OutOfRange {
            param: "p",
            value: p,
            reason: "the sharpness ratio needs p > 1",
        });
    }
    let mut points = Vec::with_capacity(grid.len());
    for &a in grid {
        let f = HarmonicFunction::fa_family(a)?;
        let num = bergman_norm_lenient(&f, 2.0 * p, tol)?;
        let den = hardy_norm_lenient(&f, p, tol)?;
        let ratio = num.value / den.value;
        let err_est = num.err_est / den.value + num.value * den.err_est / (den.value * den.value);
        points.push(SweepPoint {
            a,
            ratio,
            err_est,
            converged: num.converged && den.converged,
        });
    }
    let extrapolated = richardson(&points);
    Ok(SweepCurve {
        p,
        points,
        extrapolated,
    })
}

/// Limit estimate from the last three points assuming
/// `ratio(a) ≈ L + C (1-a)^α` on a geometric grid in `1-a`.
fn richardson(points: &[SweepPoint]) -> Option<f64> {
    if points.len() < 3 {
        return None;
    }
    let tail = &points[points.len() - 3..];
    let (h1, h2, h3) = (1.0 - tail[0].a, 1.0 - tail[1].a, 1.0 - tail[2].a);
    if [h1, h2, h3].iter().any(|h| !h.is_finite()) || h1 <= h2 || h2 <= h3 || h3 <= 0.0 {
        return None;
    }
    let (r1, r2, r3) = (tail[0].ratio, tail[1].ratio, tail[2].ratio);
    let quot = (r1 - r2) / (r2 - r3);
    if !quot.is_finite() || quot <= 0.0 {
        return None;
    }
    let rho = h1 / h2;
    let alpha = quot.ln() / rho.ln();
    let factor = rho.powf(alpha) - 1.0;
    if factor.abs() < 1e-12 {
        return None;
    }
    Some(r3 - (r2 - r3) / factor)
}
