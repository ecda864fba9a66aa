//! C ABI for the disk-ineq toolkit.
//!
//! Functions are referenced through the opaque [`DiskIneqFunction`] handle;
//! every entry point returns a [`DiskIneqStatus`] and writes results through
//! out-pointers. Strings returned by the library are owned by the caller and
//! must be released with [`disk_ineq_string_free`]. All entry points are
//! panic-safe: a Rust panic is reported as `DISK_INEQ_STATUS_PANIC` instead
//! of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use disk_ineq::constants::ConstantTable;
use disk_ineq::repr::{function_to_json, parse_function, EvalPoint, HarmonicFunction};
use disk_ineq::suite::{run_check, CheckParams, SuiteInput, Theorem};
use disk_ineq::{bergman_norm, hardy_norm, Error};

/// Opaque handle to a harmonic function.
pub struct DiskIneqFunction {
    inner: HarmonicFunction,
}

/// Status codes shared by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiskIneqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    OutOfRange = 4,
    NotRealValued = 5,
    NonFiniteSample = 6,
    NoConvergence = 7,
    PreconditionFailed = 8,
    DegenerateZero = 9,
    NotHolomorphic = 10,
    UnknownTheorem = 11,
    Panic = 12,
}

/// Norm value with its error estimate and the node counts used.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DiskIneqNorm {
    pub value: f64,
    pub err_est: f64,
    /// Angular nodes.
    pub n: usize,
    /// Radial nodes; zero for Hardy norms.
    pub m: usize,
    pub converged: bool,
}

/// Closed-form constant table at one exponent. `m_p` is NaN when p ≤ 2.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DiskIneqConstants {
    pub p: f64,
    pub r_p: f64,
    pub l_p: f64,
    pub m_p: f64,
    pub c_p: f64,
    pub e4: f64,
    pub pbar: f64,
    pub newt: f64,
    pub p1: f64,
}

fn status_of(err: &Error) -> DiskIneqStatus {
    match err {
        Error::NotRealValued { .. } => DiskIneqStatus::NotRealValued,
        Error::NonFiniteSample { .. } => DiskIneqStatus::NonFiniteSample,
        Error::NoConvergence { .. } => DiskIneqStatus::NoConvergence,
        Error::OutOfRange { .. } => DiskIneqStatus::OutOfRange,
        Error::PreconditionFailed(_) => DiskIneqStatus::PreconditionFailed,
        Error::DegenerateZero => DiskIneqStatus::DegenerateZero,
        Error::NotHolomorphic => DiskIneqStatus::NotHolomorphic,
        Error::InvalidDescriptor(_) => DiskIneqStatus::ParseError,
    }
}

fn guarded(f: impl FnOnce() -> DiskIneqStatus) -> DiskIneqStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DiskIneqStatus::Panic)
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, DiskIneqStatus> {
    if ptr.is_null() {
        return Err(DiskIneqStatus::NullPointer);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| DiskIneqStatus::InvalidUtf8)
}

fn string_out(s: String, out: *mut *mut c_char) -> DiskIneqStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            DiskIneqStatus::Ok
        }
        Err(_) => DiskIneqStatus::ParseError,
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn disk_ineq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a JSON function descriptor into a handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_function_parse(
    json: *const c_char,
    out: *mut *mut DiskIneqFunction,
) -> DiskIneqStatus {
    if out.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let text = match read_utf8(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| match parse_function(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(DiskIneqFunction { inner }));
            DiskIneqStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a handle returned by [`disk_ineq_function_parse`].
///
/// # Safety
/// `f` must be a pointer previously returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_function_free(f: *mut DiskIneqFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Serializes a handle back to its JSON descriptor (caller frees via
/// [`disk_ineq_string_free`]).
///
/// # Safety
/// `f` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_function_to_json(
    f: *const DiskIneqFunction,
    out: *mut *mut c_char,
) -> DiskIneqStatus {
    if f.is_null() || out.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let inner = &(*f).inner;
    guarded(|| string_out(function_to_json(inner), out))
}

/// Frees a string allocated by this library.
///
/// # Safety
/// `s` must originate from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluates a function at `z = r e^{i theta}`.
///
/// # Safety
/// `f`, `out_re`, `out_im` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_eval(
    f: *const DiskIneqFunction,
    r: f64,
    theta: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DiskIneqStatus {
    if f.is_null() || out_re.is_null() || out_im.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let inner = &(*f).inner;
    guarded(|| match EvalPoint::new(r, theta) {
        Ok(pt) => {
            let v = inner.eval(&pt);
            *out_re = v.re;
            *out_im = v.im;
            DiskIneqStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Writes whether the function is real-valued.
///
/// # Safety
/// `f` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_is_real(
    f: *const DiskIneqFunction,
    out: *mut bool,
) -> DiskIneqStatus {
    if f.is_null() || out.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let inner = &(*f).inner;
    guarded(|| {
        *out = inner.is_real();
        DiskIneqStatus::Ok
    })
}

unsafe fn norm_common(
    f: *const DiskIneqFunction,
    p: f64,
    tol: f64,
    out: *mut DiskIneqNorm,
    bergman: bool,
) -> DiskIneqStatus {
    if f.is_null() || out.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let inner = &(*f).inner;
    guarded(|| {
        let res = if bergman {
            bergman_norm(inner, p, tol)
        } else {
            hardy_norm(inner, p, tol)
        };
        match res {
            Ok(n) => {
                *out = DiskIneqNorm {
                    value: n.value,
                    err_est: n.err_est,
                    n: n.nodes.0,
                    m: n.nodes.1,
                    converged: n.converged,
                };
                DiskIneqStatus::Ok
            }
            Err(Error::NoConvergence { value, err_est, n, m }) => {
                // Partial result is still written so callers can inspect it.
                *out = DiskIneqNorm {
                    value,
                    err_est,
                    n,
                    m,
                    converged: false,
                };
                DiskIneqStatus::NoConvergence
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Hardy norm with error estimate. On `DISK_INEQ_STATUS_NO_CONVERGENCE` the
/// out-struct still carries the partial value with `converged = false`.
///
/// # Safety
/// `f` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_hardy_norm(
    f: *const DiskIneqFunction,
    p: f64,
    tol: f64,
    out: *mut DiskIneqNorm,
) -> DiskIneqStatus {
    norm_common(f, p, tol, out, false)
}

/// Bergman norm; same contract as [`disk_ineq_hardy_norm`].
///
/// # Safety
/// `f` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_bergman_norm(
    f: *const DiskIneqFunction,
    p: f64,
    tol: f64,
    out: *mut DiskIneqNorm,
) -> DiskIneqStatus {
    norm_common(f, p, tol, out, true)
}

/// Fills the constant table at exponent `p` (`p > 1`).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_constants(
    p: f64,
    out: *mut DiskIneqConstants,
) -> DiskIneqStatus {
    if out.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    guarded(|| match ConstantTable::for_p(p) {
        Ok(t) => {
            *out = DiskIneqConstants {
                p: t.p,
                r_p: t.r_p,
                l_p: t.l_p,
                m_p: t.m_p.unwrap_or(f64::NAN),
                c_p: t.c_p,
                e4: t.e4,
                pbar: t.pbar,
                newt: t.newt,
                p1: t.p1,
            };
            DiskIneqStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// The crossover root of the split-norm constant against the Riesz bound.
#[no_mangle]
pub extern "C" fn disk_ineq_p1_root() -> f64 {
    disk_ineq::constants::p1_root()
}

/// Runs one theorem checker on a function and returns the reports as a JSON
/// array (caller frees via [`disk_ineq_string_free`]). `thm` accepts the
/// same names as the CLI: isoper, carleman-exp, cp, c4, riesz, hed, newt,
/// ipl, lemma-new, green, abx. For ipl/abx the handle must be a taylor_pair
/// whose g and h are the two analytic functions.
///
/// # Safety
/// `thm`, `f`, `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn disk_ineq_check(
    thm: *const c_char,
    f: *const DiskIneqFunction,
    p: f64,
    eps: f64,
    tol: f64,
    out_json: *mut *mut c_char,
) -> DiskIneqStatus {
    if f.is_null() || out_json.is_null() {
        return DiskIneqStatus::NullPointer;
    }
    let name = match read_utf8(thm) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inner = &(*f).inner;
    guarded(|| {
        let theorem = match Theorem::parse(name) {
            Some(t) => t,
            None => return DiskIneqStatus::UnknownTheorem,
        };
        let input = match theorem {
            Theorem::Isoper | Theorem::CarlemanExp | Theorem::Cp | Theorem::C4 => {
                SuiteInput::Function(inner.clone())
            }
            Theorem::Riesz
            | Theorem::Hed
            | Theorem::Newt
            | Theorem::LemmaNew
            | Theorem::Green => match inner.as_holomorphic() {
                Some(series) => SuiteInput::Series(series),
                None => return DiskIneqStatus::NotHolomorphic,
            },
            Theorem::Ipl | Theorem::Abx => match inner {
                HarmonicFunction::TaylorPair { g, h } => SuiteInput::Pair(g.clone(), h.clone()),
                _ => return DiskIneqStatus::NotHolomorphic,
            },
        };
        let params = CheckParams {
            p,
            eps,
            r: 0.8,
            tol,
            seed: 0,
        };
        match run_check(theorem, &input, &params) {
            Ok(reports) => {
                let body = serde_json::to_string(&reports).expect("reports serialize");
                string_out(body, out_json)
            }
            Err(e) => status_of(&e),
        }
    })
}
