//! Seeded random function generation and suite runners for the checkers.
//!
//! Everything is deterministic given the seed: functions are generated
//! sequentially from one ChaCha stream, then checked in parallel and
//! collected back in index order.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inequal;
use crate::report::InequalityReport;
use crate::repr::{EvalPoint, HarmonicFunction, TaylorSeries};

/// Which theorem a `verify` invocation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Isoper,
    CarlemanExp,
    Cp,
    C4,
    Riesz,
    Hed,
    Newt,
    Ipl,
    LemmaNew,
    Green,
    Abx,
}

impl Theorem {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "isoper" => Self::Isoper,
            "carleman-exp" => Self::CarlemanExp,
            "cp" => Self::Cp,
            "c4" => Self::C4,
            "riesz" => Self::Riesz,
            "hed" => Self::Hed,
            "newt" => Self::Newt,
            "ipl" => Self::Ipl,
            "lemma-new" => Self::LemmaNew,
            "green" => Self::Green,
            "abx" => Self::Abx,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Isoper => "isoper",
            Self::CarlemanExp => "carleman-exp",
            Self::Cp => "cp",
            Self::C4 => "c4",
            Self::Riesz => "riesz",
            Self::Hed => "hed",
            Self::Newt => "newt",
            Self::Ipl => "ipl",
            Self::LemmaNew => "lemma-new",
            Self::Green => "green",
            Self::Abx => "abx",
        }
    }
}

/// Random series of uniformly random degree ≤ `max_degree`, coefficients
/// standard complex normal.
pub fn random_series(rng: &mut ChaCha8Rng, max_degree: usize) -> TaylorSeries {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs = (0..=degree)
        .map(|_| {
            Complex64::new(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        })
        .collect();
    TaylorSeries::new(coeffs)
}

/// Random series with the constant coefficient forced to zero.
pub fn random_series_zero_origin(rng: &mut ChaCha8Rng, max_degree: usize) -> TaylorSeries {
    let s = random_series(rng, max_degree);
    let mut coeffs = s.coeffs().to_vec();
    coeffs[0] = Complex64::new(0.0, 0.0);
    TaylorSeries::new(coeffs)
}

/// Random real-valued harmonic function `2 Re g` as the symmetric pair.
pub fn random_real_harmonic(rng: &mut ChaCha8Rng, max_degree: usize) -> HarmonicFunction {
    let g = random_series(rng, max_degree);
    HarmonicFunction::taylor_pair(g.clone(), g)
}

/// Random complex harmonic pair.
pub fn random_complex_harmonic(rng: &mut ChaCha8Rng, max_degree: usize) -> HarmonicFunction {
    HarmonicFunction::taylor_pair(random_series(rng, max_degree), random_series(rng, max_degree))
}

/// One suite item: the function(s) drawn for a check, kept for
/// counterexample dumps.
#[derive(Debug, Clone)]
pub enum SuiteInput {
    Function(HarmonicFunction),
    Series(TaylorSeries),
    Pair(TaylorSeries, TaylorSeries),
}

impl SuiteInput {
    pub fn to_json(&self) -> String {
        match self {
            Self::Function(f) => crate::repr::function_to_json(f),
            Self::Series(s) => {
                crate::repr::function_to_json(&HarmonicFunction::holomorphic(s.clone()))
            }
            Self::Pair(a, b) => crate::repr::function_to_json(&HarmonicFunction::taylor_pair(
                a.clone(),
                b.clone(),
            )),
        }
    }
}

/// Draws the input class a theorem's checker expects. Riesz-type and
/// split-norm targets get `f(0) = 0` so their hypothesis holds.
pub fn draw_input(thm: Theorem, rng: &mut ChaCha8Rng, max_degree: usize) -> SuiteInput {
    match thm {
        Theorem::Isoper => SuiteInput::Function(HarmonicFunction::holomorphic(random_series(
            rng, max_degree,
        ))),
        Theorem::CarlemanExp | Theorem::Cp => {
            SuiteInput::Function(random_real_harmonic(rng, max_degree))
        }
        Theorem::C4 => SuiteInput::Function(random_complex_harmonic(rng, max_degree)),
        Theorem::Riesz | Theorem::Hed | Theorem::Newt => {
            SuiteInput::Series(random_series_zero_origin(rng, max_degree))
        }
        Theorem::LemmaNew | Theorem::Green => {
            SuiteInput::Series(random_series(rng, max_degree))
        }
        Theorem::Ipl => SuiteInput::Pair(
            random_series(rng, max_degree),
            random_series(rng, max_degree),
        ),
        // The X bounds use the h(0) = 0 normalization.
        Theorem::Abx => SuiteInput::Pair(
            random_series(rng, max_degree),
            random_series_zero_origin(rng, max_degree),
        ),
    }
}

/// Extra knobs a single check may need beyond the function.
#[derive(Debug, Clone, Copy)]
pub struct CheckParams {
    pub p: f64,
    pub eps: f64,
    pub r: f64,
    pub tol: f64,
    /// Seed for the point sample used by the pointwise Laplacian checks.
    pub seed: u64,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            p: 2.0,
            eps: 0.01,
            r: 0.8,
            tol: crate::norms::DEFAULT_TOL,
            seed: 0,
        }
    }
}

/// Runs one theorem's checker on one input, producing its report(s).
pub fn run_check(thm: Theorem, input: &SuiteInput, params: &CheckParams) -> Result<Vec<InequalityReport>> {
    let want_series = || -> Result<&TaylorSeries> {
        match input {
            SuiteInput::Series(s) => Ok(s),
            _ => Err(Error::NotHolomorphic),
        }
    };
    match (thm, input) {
        (Theorem::Isoper, SuiteInput::Function(f)) => {
            Ok(vec![inequal::check_isoperimetric(f, params.tol)?])
        }
        (Theorem::CarlemanExp, SuiteInput::Function(f)) => {
            Ok(vec![inequal::check_carleman_exp(f, params.tol)?])
        }
        (Theorem::Cp, SuiteInput::Function(f)) => {
            Ok(vec![inequal::check_thm_cp(f, params.p, params.tol)?])
        }
        (Theorem::C4, SuiteInput::Function(f)) => {
            Ok(vec![inequal::check_thm_c4(f, params.tol)?])
        }
        (Theorem::Riesz, _) => Ok(vec![inequal::check_riesz(
            want_series()?,
            params.p,
            params.tol,
        )?]),
        (Theorem::Hed, _) => Ok(vec![inequal::check_bergman_riesz(
            want_series()?,
            params.p,
            params.tol,
        )?]),
        (Theorem::Newt, _) => Ok(vec![inequal::check_newt(
            want_series()?,
            params.p,
            params.tol,
        )?]),
        (Theorem::Ipl, SuiteInput::Pair(a, b)) => {
            Ok(vec![inequal::check_ipl(a, b, params.p, params.tol)?])
        }
        (Theorem::Abx, SuiteInput::Pair(a, b)) => {
            Ok(inequal::abx_trace(a, b, params.tol)?.reports)
        }
        (Theorem::LemmaNew, _) => {
            let f = want_series()?;
            Ok(vec![lemma_new_sample(f, params)?])
        }
        (Theorem::Green, _) => {
            let f = want_series()?;
            Ok(vec![green_on_regularized(f, params)?])
        }
        _ => Err(Error::PreconditionFailed(format!(
            "input class does not match theorem {}",
            thm.name()
        ))),
    }
}

/// Aggregated pointwise Laplacian comparison: 50 seeded interior points at
/// each of ε = 0.01 and ε = 1, reported as the worst margin.
fn lemma_new_sample(f: &TaylorSeries, params: &CheckParams) -> Result<InequalityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed ^ 0x6c656d6d61);
    let mut worst: Option<InequalityReport> = None;
    let mut count = 0.0;
    for &eps in &[0.01, 1.0] {
        for _ in 0..50 {
            let r = rng.gen_range(0.0..0.95);
            let theta = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
            let pt = EvalPoint::new(r, theta).unwrap();
            let rep = inequal::check_lemma_new(f, params.p, eps, &pt)?;
            count += 1.0;
            let replace = match &worst {
                Some(w) => rep.margin < w.margin,
                None => true,
            };
            if replace {
                worst = Some(rep);
            }
        }
    }
    let mut rep = worst.expect("sampled at least one point");
    rep = rep.with_param("samples", count);
    Ok(rep)
}

/// Green identity on the regularized field `F_ε` of `f`, at radius
/// `params.r`.
fn green_on_regularized(f: &TaylorSeries, params: &CheckParams) -> Result<InequalityReport> {
    let p = if params.p > 1.0 { params.p } else { 3.0 };
    let fam = inequal::EpsFamily::new(p, params.eps.max(1e-6))?;
    let fd = f.derivative();
    let g = {
        let f = f.clone();
        move |rho: f64, theta: f64| {
            let z = Complex64::from_polar(rho, theta);
            (fam.q * fam.eps + f.eval(z).norm_sqr()).powf(0.5 * fam.p)
        }
    };
    let lap = {
        let f = f.clone();
        move |rho: f64, theta: f64| {
            let z = Complex64::from_polar(rho, theta);
            inequal::eps_laplacians_raw(f.eval(z), fd.eval(z).norm_sqr(), &fam).d_f
        }
    };
    let mut rep = inequal::green_check(g, lap, params.r)?;
    rep = rep.with_param("p", fam.p).with_param("eps", fam.eps);
    Ok(rep)
}

/// Result of a randomized suite run: reports in input order paired with the
/// function JSON that produced them.
pub struct SuiteRun {
    pub reports: Vec<InequalityReport>,
    /// JSON descriptors of inputs whose check failed, for counterexample
    /// dumps.
    pub counterexamples: Vec<(String, InequalityReport)>,
    pub errors: Vec<String>,
}

/// Runs `count` seeded random checks of one theorem in parallel.
pub fn run_suite(
    thm: Theorem,
    count: usize,
    seed: u64,
    max_degree: usize,
    params: &CheckParams,
) -> SuiteRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<SuiteInput> = (0..count).map(|_| draw_input(thm, &mut rng, max_degree)).collect();

    let outcomes: Vec<Result<Vec<InequalityReport>>> = inputs
        .par_iter()
        .map(|input| run_check(thm, input, params))
        .collect();

    let mut reports = Vec::with_capacity(count);
    let mut counterexamples = Vec::new();
    let mut errors = Vec::new();
    for (input, outcome) in inputs.iter().zip(outcomes) {
        match outcome {
            Ok(reps) => {
                for rep in reps {
                    if rep.is_failure() {
                        counterexamples.push((input.to_json(), rep.clone()));
                    }
                    reports.push(rep);
                }
            }
            Err(e) => errors.push(format!("{e} on input {}", input.to_json())),
        }
    }
    SuiteRun {
        reports,
        counterexamples,
        errors,
    }
}
