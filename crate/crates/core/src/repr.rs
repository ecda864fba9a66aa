//! Representations and pointwise evaluation of holomorphic and harmonic
//! functions on the closed unit disk.
//!
//! The atom is a truncated power series. A harmonic function is either a
//! pair `(g, h)` of series representing `f(z) = g(z) + conj(h(z))`, or a
//! tagged closed-form family member that bypasses truncation entirely.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported series degree.
pub const MAX_DEGREE: usize = 256;

/// Relative tolerance for the real-valuedness check.
pub const REAL_TOL: f64 = 1e-12;

/// Truncated power series `c_0 + c_1 z + … + c_D z^D`.
///
/// The degree is representational: trailing coefficients may be zero.
/// Evaluation anywhere on the closed disk is finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
}

impl TaylorSeries {
    /// Builds a series from coefficients `c_0 … c_D`. An empty vector is the
    /// zero series. Panics beyond [`MAX_DEGREE`]; validated entry points
    /// (JSON descriptors) reject oversized input before reaching here.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        assert!(
            coeffs.len() <= MAX_DEGREE + 1,
            "series degree {} exceeds the supported maximum {}",
            coeffs.len() - 1,
            MAX_DEGREE
        );
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The series `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::new(coeffs)
    }

    /// Degree-`degree` truncation of `z/(1 - a z) = Σ_{n≥1} a^{n-1} z^n`.
    pub fn fa_truncation(a: f64, degree: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
        let mut pow = 1.0;
        for c in coeffs.iter_mut().skip(1) {
            *c = Complex64::new(pow, 0.0);
            pow *= a;
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree ignoring trailing (exactly) zero coefficients.
    pub fn effective_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
            .unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, zero beyond the stored degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs
            .get(n)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative series.
    pub fn derivative(&self) -> TaylorSeries {
        if self.coeffs.len() <= 1 {
            return TaylorSeries::zero();
        }
        TaylorSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| c * n as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> TaylorSeries {
        TaylorSeries::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Point `z = r e^{iθ}` on the closed unit disk.
///
/// `theta` is reduced mod 2π on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    r: f64,
    theta: f64,
}

impl EvalPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) || !r.is_finite() {
            return Err(Error::OutOfRange {
                param: "r",
                value: r,
                reason: "must lie in [0, 1]",
            });
        }
        Ok(Self {
            r,
            theta: theta.rem_euclid(2.0 * PI),
        })
    }

    /// Boundary point `e^{iθ}`.
    pub fn boundary(theta: f64) -> Self {
        Self {
            r: 1.0,
            theta: theta.rem_euclid(2.0 * PI),
        }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

/// A harmonic function on the closed unit disk.
///
/// `TaylorPair` stores `f(z) = g(z) + conj(h(z))`; the closed-form variants
/// exist because the sharpness probes push parameters into regimes where
/// truncation error explodes.
#[derive(Debug, Clone, PartialEq)]
pub enum HarmonicFunction {
    /// `f(z) = g(z) + conj(h(z))`; holomorphic iff `h ≡ 0`.
    TaylorPair { g: TaylorSeries, h: TaylorSeries },
    /// `f_a(z) = Re(z / (1 - a z))` with `0 ≤ a < 1`.
    FaFamily { a: f64 },
    /// `f(z) = z^n`.
    Monomial { n: usize },
    /// `f(z) = exp(scale · u(z))` for a real-valued base `u`.
    ExpOfHarmonic {
        scale: f64,
        base: Box<HarmonicFunction>,
    },
}

impl HarmonicFunction {
    pub fn taylor_pair(g: TaylorSeries, h: TaylorSeries) -> Self {
        Self::TaylorPair { g, h }
    }

    /// Holomorphic function as a pair with `h ≡ 0`.
    pub fn holomorphic(g: TaylorSeries) -> Self {
        Self::TaylorPair {
            g,
            h: TaylorSeries::zero(),
        }
    }

    /// `Re F` for holomorphic `F`, as the symmetric pair `(F/2, F/2)`.
    pub fn real_part_of(f: &TaylorSeries) -> Self {
        let half = f.scale(Complex64::new(0.5, 0.0));
        Self::TaylorPair {
            g: half.clone(),
            h: half,
        }
    }

    /// `Im F = Re(-iF)` for holomorphic `F`.
    pub fn imag_part_of(f: &TaylorSeries) -> Self {
        Self::real_part_of(&f.scale(Complex64::new(0.0, -1.0)))
    }

    pub fn fa_family(a: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::OutOfRange {
                param: "a",
                value: a,
                reason: "must lie in [0, 1); a = 1 leaves the smooth class",
            });
        }
        Ok(Self::FaFamily { a })
    }

    pub fn monomial(n: usize) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::OutOfRange {
                param: "n",
                value: n as f64,
                reason: "monomial degree exceeds the supported maximum",
            });
        }
        Ok(Self::Monomial { n })
    }

    /// `exp(scale · base)`; the base must be real-valued.
    pub fn exp_of(scale: f64, base: HarmonicFunction) -> Result<Self> {
        if !base.is_real() {
            return Err(Error::NotRealValued {
                defect: base.realness_defect(),
            });
        }
        Ok(Self::ExpOfHarmonic {
            scale,
            base: Box::new(base),
        })
    }

    /// Pointwise value at `z = r e^{iθ}`. Total on the closed disk; exact
    /// (no truncation) for the closed-form families.
    pub fn eval_rt(&self, r: f64, theta: f64) -> Complex64 {
        match self {
            Self::TaylorPair { g, h } => {
                let z = Complex64::from_polar(r, theta);
                g.eval(z) + h.eval(z).conj()
            }
            Self::FaFamily { a } => {
                let z = Complex64::from_polar(r, theta);
                let w = z / (Complex64::new(1.0, 0.0) - *a * z);
                Complex64::new(w.re, 0.0)
            }
            Self::Monomial { n } => Complex64::from_polar(r.powi(*n as i32), *n as f64 * theta),
            Self::ExpOfHarmonic { scale, base } => {
                Complex64::new((scale * base.eval_rt(r, theta).re).exp(), 0.0)
            }
        }
    }

    pub fn eval(&self, p: &EvalPoint) -> Complex64 {
        self.eval_rt(p.r(), p.theta())
    }

    /// True iff the function is real-valued on the disk.
    ///
    /// Taylor pairs use the exact structural criterion (`g_n = h_n` for
    /// `n ≥ 1` and `Im g_0 = Im h_0`, relative tolerance [`REAL_TOL`]);
    /// closed-form families are decided by construction, with a 64×64 polar
    /// grid check as the generic fallback.
    pub fn is_real(&self) -> bool {
        match self {
            Self::TaylorPair { g, h } => {
                let scale = 1.0 + g.max_coeff_norm().max(h.max_coeff_norm());
                self.realness_defect() <= REAL_TOL * scale
            }
            Self::FaFamily { .. } => true,
            Self::Monomial { n } => *n == 0,
            Self::ExpOfHarmonic { base, .. } => {
                if base.is_real() {
                    true
                } else {
                    let (sup_im, sup_abs) = self.grid_imag_sup();
                    sup_im <= REAL_TOL * (1.0 + sup_abs)
                }
            }
        }
    }

    /// Absolute size of the obstruction to real-valuedness: the structural
    /// coefficient defect for Taylor pairs, a grid supremum of `|Im f|`
    /// otherwise.
    pub fn realness_defect(&self) -> f64 {
        match self {
            Self::TaylorPair { g, h } => {
                let d = g.degree().max(h.degree());
                let mut defect = (g.coeff(0).im - h.coeff(0).im).abs();
                for n in 1..=d {
                    defect = defect.max((g.coeff(n) - h.coeff(n)).norm());
                }
                defect
            }
            _ => self.grid_imag_sup().0,
        }
    }

    fn grid_imag_sup(&self) -> (f64, f64) {
        let mut sup_im = 0.0f64;
        let mut sup_abs = 0.0f64;
        for i in 0..64 {
            let r = i as f64 / 63.0;
            for j in 0..64 {
                let theta = 2.0 * PI * j as f64 / 64.0;
                let v = self.eval_rt(r, theta);
                sup_im = sup_im.max(v.im.abs());
                sup_abs = sup_abs.max(v.norm());
            }
        }
        (sup_im, sup_abs)
    }

    /// Holomorphic completion `F` of a real-valued pair `u`, with
    /// `Re F = u` and `Im F(0) = 0`.
    pub fn analytic_completion(&self) -> Result<TaylorSeries> {
        match self {
            Self::TaylorPair { g, h } => {
                let scale = 1.0 + g.max_coeff_norm().max(h.max_coeff_norm());
                let defect = self.realness_defect();
                if defect > REAL_TOL * scale {
                    return Err(Error::NotRealValued { defect });
                }
                let d = g.degree().max(h.degree());
                let mut coeffs = Vec::with_capacity(d + 1);
                // u = a_0 + Σ r^n (a_n cos nθ + b_n sin nθ) completes to
                // F = a_0 + Σ (a_n − i b_n) z^n; in pair coordinates
                // a_0 = Re(g_0 + conj h_0) and a_n − i b_n = g_n + h_n.
                coeffs.push(Complex64::new((g.coeff(0) + h.coeff(0).conj()).re, 0.0));
                for n in 1..=d {
                    coeffs.push(g.coeff(n) + h.coeff(n));
                }
                Ok(TaylorSeries::new(coeffs))
            }
            _ => Err(Error::PreconditionFailed(
                "analytic completion expects a taylor_pair representation".into(),
            )),
        }
    }

    /// Shape-specialized evaluator for quadrature hot loops: the variant
    /// match and structure checks happen once, not per node. In particular
    /// the symmetric pair `(g, g)` — every real harmonic built here — costs
    /// a single Horner pass instead of two.
    pub(crate) fn evaluator(&self) -> Evaluator<'_> {
        match self {
            Self::TaylorPair { g, h } => {
                if h.is_zero() {
                    Evaluator::Holo { g }
                } else if g.coeffs() == h.coeffs() {
                    Evaluator::SymPair { g }
                } else {
                    Evaluator::Pair { g, h }
                }
            }
            Self::FaFamily { a } => Evaluator::Fa { a: *a },
            Self::Monomial { n } => Evaluator::Mono { n: *n },
            Self::ExpOfHarmonic { scale, base } => Evaluator::Exp {
                scale: *scale,
                base: Box::new(base.evaluator()),
            },
        }
    }

    /// Holomorphic content, when the representation is holomorphic.
    pub fn as_holomorphic(&self) -> Option<TaylorSeries> {
        match self {
            Self::TaylorPair { g, h } if h.is_zero() => Some(g.clone()),
            Self::Monomial { n } => Some(TaylorSeries::monomial(*n)),
            _ => None,
        }
    }

    /// Polynomial degree in `(z, conj z)` when the representation has one.
    pub fn poly_degree(&self) -> Option<usize> {
        match self {
            Self::TaylorPair { g, h } => Some(g.effective_degree().max(h.effective_degree())),
            Self::Monomial { n } => Some(*n),
            _ => None,
        }
    }
}

pub(crate) enum Evaluator<'a> {
    Pair {
        g: &'a TaylorSeries,
        h: &'a TaylorSeries,
    },
    /// `g == h`, so `f = 2 Re g`.
    SymPair {
        g: &'a TaylorSeries,
    },
    Holo {
        g: &'a TaylorSeries,
    },
    Fa {
        a: f64,
    },
    Mono {
        n: usize,
    },
    Exp {
        scale: f64,
        base: Box<Evaluator<'a>>,
    },
}

impl Evaluator<'_> {
    /// `|f(r e^{iθ})|²`.
    #[inline]
    pub(crate) fn norm_sq(&self, r: f64, theta: f64) -> f64 {
        match self {
            Evaluator::SymPair { g } => {
                let re = g.eval(Complex64::from_polar(r, theta)).re;
                4.0 * re * re
            }
            Evaluator::Holo { g } => g.eval(Complex64::from_polar(r, theta)).norm_sqr(),
            Evaluator::Pair { g, h } => {
                let z = Complex64::from_polar(r, theta);
                (g.eval(z) + h.eval(z).conj()).norm_sqr()
            }
            Evaluator::Fa { a } => {
                let z = Complex64::from_polar(r, theta);
                let w = (z / (Complex64::new(1.0, 0.0) - *a * z)).re;
                w * w
            }
            Evaluator::Mono { n } => r.powi(2 * *n as i32),
            Evaluator::Exp { scale, base } => {
                let v = (scale * base.real_value(r, theta)).exp();
                v * v
            }
        }
    }

    /// `Re f(r e^{iθ})`; the full value for real-valued shapes.
    #[inline]
    pub(crate) fn real_value(&self, r: f64, theta: f64) -> f64 {
        match self {
            Evaluator::SymPair { g } => 2.0 * g.eval(Complex64::from_polar(r, theta)).re,
            Evaluator::Holo { g } => g.eval(Complex64::from_polar(r, theta)).re,
            Evaluator::Pair { g, h } => {
                let z = Complex64::from_polar(r, theta);
                g.eval(z).re + h.eval(z).re
            }
            Evaluator::Fa { a } => {
                let z = Complex64::from_polar(r, theta);
                (z / (Complex64::new(1.0, 0.0) - *a * z)).re
            }
            Evaluator::Mono { n } => r.powi(*n as i32) * (*n as f64 * theta).cos(),
            Evaluator::Exp { scale, base } => (scale * base.real_value(r, theta)).exp(),
        }
    }
}

/// JSON wire form of a function descriptor.
///
/// `{"type":"taylor_pair","g":[[re,im],…],"h":[[re,im],…]}`,
/// `{"type":"fa","a":0.9}`, `{"type":"monomial","n":3}`,
/// `{"type":"exp","scale":s,"base":{…}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionSpec {
    TaylorPair {
        g: Vec<[f64; 2]>,
        h: Vec<[f64; 2]>,
    },
    Fa {
        a: f64,
    },
    Monomial {
        n: usize,
    },
    Exp {
        scale: f64,
        base: Box<FunctionSpec>,
    },
}

fn coeffs_from_wire(raw: &[[f64; 2]]) -> Result<Vec<Complex64>> {
    if raw.len() > MAX_DEGREE + 1 {
        return Err(Error::InvalidDescriptor(format!(
            "series degree {} exceeds the supported maximum {}",
            raw.len() - 1,
            MAX_DEGREE
        )));
    }
    let coeffs: Vec<Complex64> = raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidDescriptor(
            "coefficients must be finite".into(),
        ));
    }
    Ok(coeffs)
}

impl TryFrom<FunctionSpec> for HarmonicFunction {
    type Error = Error;

    fn try_from(spec: FunctionSpec) -> Result<Self> {
        match spec {
            FunctionSpec::TaylorPair { g, h } => Ok(HarmonicFunction::taylor_pair(
                TaylorSeries::new(coeffs_from_wire(&g)?),
                TaylorSeries::new(coeffs_from_wire(&h)?),
            )),
            FunctionSpec::Fa { a } => HarmonicFunction::fa_family(a),
            FunctionSpec::Monomial { n } => HarmonicFunction::monomial(n),
            FunctionSpec::Exp { scale, base } => {
                if !scale.is_finite() {
                    return Err(Error::InvalidDescriptor("scale must be finite".into()));
                }
                HarmonicFunction::exp_of(scale, HarmonicFunction::try_from(*base)?)
            }
        }
    }
}

impl From<&HarmonicFunction> for FunctionSpec {
    fn from(f: &HarmonicFunction) -> Self {
        let wire = |s: &TaylorSeries| s.coeffs().iter().map(|c| [c.re, c.im]).collect();
        match f {
            HarmonicFunction::TaylorPair { g, h } => FunctionSpec::TaylorPair {
                g: wire(g),
                h: wire(h),
            },
            HarmonicFunction::FaFamily { a } => FunctionSpec::Fa { a: *a },
            HarmonicFunction::Monomial { n } => FunctionSpec::Monomial { n: *n },
            HarmonicFunction::ExpOfHarmonic { scale, base } => FunctionSpec::Exp {
                scale: *scale,
                base: Box::new(FunctionSpec::from(base.as_ref())),
            },
        }
    }
}

/// Parses a JSON function descriptor.
pub fn parse_function(json: &str) -> Result<HarmonicFunction> {
    let spec: FunctionSpec =
        serde_json::from_str(json).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
    HarmonicFunction::try_from(spec)
}

/// Serializes a function back to its JSON descriptor.
pub fn function_to_json(f: &HarmonicFunction) -> String {
    serde_json::to_string(&FunctionSpec::from(f)).expect("function spec serializes")
}
