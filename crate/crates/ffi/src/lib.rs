//! C interface to `neutrix`.
//!
//! Every function returns a [`NeutrixStatus`] and writes its result through
//! an out-pointer. Expansions and fit reports are opaque handles owned by
//! the caller and released with their `_free` function. Panics never cross
//! the boundary; they are reported as `NEUTRIX_STATUS_PANIC`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use neutrix::expansion::EpsilonExpansion;
use neutrix::oracle::{self, FitReport};
use neutrix::special::{self, Method, SpecialValue};
use neutrix::symbolic::{self, IntegralSpec};
use neutrix::Error;

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeutrixStatus {
    Ok = 0,
    /// The argument is a pole of a path with no regularized value.
    Pole = 1,
    /// Argument outside the supported domain.
    Domain = 2,
    /// The expansion remainder is not known to vanish.
    UncontrolledRemainder = 3,
    /// A series could not be truncated within tolerance.
    SeriesTail = 4,
    /// Quadrature did not converge.
    Quadrature = 5,
    /// Too few samples for the fit basis.
    Underdetermined = 6,
    /// Bad ε grid or sample values.
    InvalidGrid = 7,
    /// The least-squares system is singular.
    Singular = 8,
    /// A required pointer argument was null.
    NullPointer = 9,
    /// An index was out of range.
    OutOfRange = 10,
    /// Unknown enum value passed in.
    InvalidArgument = 11,
    /// Internal error; the library state is unaffected.
    Panic = 12,
}

impl From<&Error> for NeutrixStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Pole(_) => NeutrixStatus::Pole,
            Error::Domain(_) => NeutrixStatus::Domain,
            Error::UncontrolledRemainder => NeutrixStatus::UncontrolledRemainder,
            Error::SeriesTail { .. } => NeutrixStatus::SeriesTail,
            Error::Quadrature { .. } => NeutrixStatus::Quadrature,
            Error::Underdetermined { .. } => NeutrixStatus::Underdetermined,
            Error::InvalidGrid(_) => NeutrixStatus::InvalidGrid,
            Error::Singular => NeutrixStatus::Singular,
        }
    }
}

/// How a value was obtained.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeutrixMethod {
    ClosedForm = 0,
    SymbolicFp = 1,
    NumericFit = 2,
}

impl From<Method> for NeutrixMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::ClosedForm => NeutrixMethod::ClosedForm,
            Method::SymbolicFp => NeutrixMethod::SymbolicFp,
            Method::NumericFit => NeutrixMethod::NumericFit,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeutrixValue {
    pub value: f64,
    pub err_estimate: f64,
    pub method: NeutrixMethod,
}

impl From<SpecialValue> for NeutrixValue {
    fn from(v: SpecialValue) -> Self {
        NeutrixValue {
            value: v.value,
            err_estimate: v.err_estimate,
            method: v.method.into(),
        }
    }
}

/// Integrand families. Fields a family does not use are ignored.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeutrixIntegralKind {
    /// t^x ln^n t on (ε, 1).
    PowerLogUnit = 0,
    /// t^x ln^n t ln^r(1-t) on (ε, 1/2).
    MixedHalf = 1,
    /// t^(-m-1) e^(-t) on (ε, ∞).
    GammaTail = 2,
    /// t^(-m-1) ln^n t / (1-t) on (ε, 1).
    PolygammaFull = 3,
}

/// Opaque ε-expansion.
pub struct NeutrixExpansion(EpsilonExpansion);

/// Opaque least-squares fit report.
pub struct NeutrixFitReport(FitReport);

fn guard<F: FnOnce() -> NeutrixStatus>(f: F) -> NeutrixStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(NeutrixStatus::Panic)
}

/// Writes `r` through `out`.
fn put<T, U: Into<T>>(out: *mut T, r: Result<U, Error>) -> NeutrixStatus {
    guard(|| {
        if out.is_null() {
            return NeutrixStatus::NullPointer;
        }
        match r {
            Ok(v) => {
                // SAFETY: checked non-null; the caller provides a writable T.
                unsafe { out.write(v.into()) };
                NeutrixStatus::Ok
            }
            Err(e) => (&e).into(),
        }
    })
}

/// `kind` arrives as a plain integer so that out-of-range values from C
/// are rejected instead of becoming invalid enum values.
fn spec(kind: u32, x: f64, n: u32, r: u32, m: u32) -> Result<IntegralSpec, NeutrixStatus> {
    const POWER_LOG_UNIT: u32 = NeutrixIntegralKind::PowerLogUnit as u32;
    const MIXED_HALF: u32 = NeutrixIntegralKind::MixedHalf as u32;
    const GAMMA_TAIL: u32 = NeutrixIntegralKind::GammaTail as u32;
    const POLYGAMMA_FULL: u32 = NeutrixIntegralKind::PolygammaFull as u32;
    match kind {
        POWER_LOG_UNIT => Ok(IntegralSpec::power_log_unit(x, n)),
        MIXED_HALF => Ok(IntegralSpec::mixed_half(x, n, r)),
        GAMMA_TAIL => Ok(IntegralSpec::gamma_tail(m)),
        POLYGAMMA_FULL => Ok(IntegralSpec::polygamma_full(m, n)),
        _ => Err(NeutrixStatus::InvalidArgument),
    }
}

/// `None` for an empty grid, which selects the default.
///
/// # Safety
/// `grid` must point to `len` readable doubles when `len > 0`.
unsafe fn grid_arg<'a>(grid: *const f64, len: usize) -> Result<Option<&'a [f64]>, NeutrixStatus> {
    if len == 0 {
        Ok(None)
    } else if grid.is_null() {
        Err(NeutrixStatus::NullPointer)
    } else {
        Ok(Some(std::slice::from_raw_parts(grid, len)))
    }
}

/// Static description of a status code (a `NeutrixStatus` value). Never null.
#[no_mangle]
pub extern "C" fn neutrix_status_message(status: i32) -> *const c_char {
    const MESSAGES: [&[u8]; 13] = [
        b"ok\0",
        b"pole\0",
        b"domain error\0",
        b"expansion remainder not known to vanish\0",
        b"series tail above tolerance\0",
        b"quadrature did not converge\0",
        b"too few samples for the basis\0",
        b"invalid grid\0",
        b"singular least-squares system\0",
        b"null pointer argument\0",
        b"index out of range\0",
        b"invalid argument\0",
        b"internal error\0",
    ];
    let s: &[u8] = usize::try_from(status)
        .ok()
        .and_then(|i| MESSAGES.get(i).copied())
        .unwrap_or(b"unknown status\0");
    s.as_ptr().cast()
}

/// Γ(-m) = (-1)^m/m! (φ(m) - γ).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_gamma_neg_closed(m: u32, out: *mut NeutrixValue) -> NeutrixStatus {
    put(out, special::gamma_neg_closed(m))
}

/// Γ(-m) from the regularized integral, by quadrature.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_gamma_neg_finite_part(
    m: u32,
    out: *mut NeutrixValue,
) -> NeutrixStatus {
    put(out, symbolic::gamma_neg_finite_part(m))
}

/// ψ(-m) = -γ + φ(m).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_digamma_neg(m: u32, out: *mut NeutrixValue) -> NeutrixStatus {
    put(out, special::digamma_neg(m))
}

/// ψ⁽ⁿ⁾(-m) in closed form, n ≥ 1.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_polygamma_neg_closed(
    n: u32,
    m: u32,
    out: *mut NeutrixValue,
) -> NeutrixStatus {
    put(out, special::polygamma_neg_closed(n, m))
}

/// ψ⁽ⁿ⁾(-m) assembled from the integral decomposition, n ≥ 1.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_polygamma_decomposition(
    n: u32,
    m: u32,
    out: *mut NeutrixValue,
) -> NeutrixStatus {
    put(out, symbolic::polygamma_decomposition(n, m))
}

/// ψ⁽ⁿ⁾(x) for x > 0.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_polygamma_pos(
    n: u32,
    x: f64,
    out: *mut NeutrixValue,
) -> NeutrixStatus {
    put(out, special::polygamma_pos(n, x))
}

/// ψ⁽ⁿ⁾(x) at any real x that is not a pole (n = 0 is ψ).
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_polygamma_nonint(
    n: u32,
    x: f64,
    out: *mut NeutrixValue,
) -> NeutrixStatus {
    put(out, special::polygamma_nonint(n, x))
}

/// Classical Γ(x) away from the poles.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_gamma_classical(x: f64, out: *mut NeutrixValue) -> NeutrixStatus {
    put(out, special::gamma_classical(x))
}

/// ζ(s) for integer s ≥ 2.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_zeta_int(s: u32, out: *mut f64) -> NeutrixStatus {
    put(out, special::zeta_int(s))
}

/// Exact expansion of the truncated integral of a family member; `kind`
/// is a `NeutrixIntegralKind` value.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_integral_expansion(
    kind: u32,
    x: f64,
    n: u32,
    r: u32,
    m: u32,
    out: *mut *mut NeutrixExpansion,
) -> NeutrixStatus {
    let e = match spec(kind, x, n, r, m) {
        Ok(s) => s.expansion(),
        Err(status) => return status,
    };
    put(out, e.map(|e| Box::into_raw(Box::new(NeutrixExpansion(e)))))
}

/// Number of terms in an expansion; 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn neutrix_expansion_len(e: *const NeutrixExpansion) -> usize {
    e.as_ref().map_or(0, |e| e.0.terms().len())
}

/// Term `i` as `coeff · ε^lambda · ln^logpow ε`, in canonical order.
///
/// # Safety
/// `e` must be null or a live handle; the out-pointers must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_expansion_term(
    e: *const NeutrixExpansion,
    i: usize,
    coeff: *mut f64,
    lambda: *mut f64,
    logpow: *mut u32,
) -> NeutrixStatus {
    guard(|| {
        let Some(e) = e.as_ref() else {
            return NeutrixStatus::NullPointer;
        };
        if coeff.is_null() || lambda.is_null() || logpow.is_null() {
            return NeutrixStatus::NullPointer;
        }
        let Some(t) = e.0.terms().get(i) else {
            return NeutrixStatus::OutOfRange;
        };
        coeff.write(t.coeff);
        lambda.write(t.lambda);
        logpow.write(t.logpow);
        NeutrixStatus::Ok
    })
}

/// 1 if the remainder is known to vanish as ε → 0, else 0.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn neutrix_expansion_remainder_is_o1(e: *const NeutrixExpansion) -> i32 {
    e.as_ref().map_or(0, |e| e.0.remainder_is_o1() as i32)
}

/// The neutrix limit (coefficient of ε⁰ ln⁰ ε).
///
/// # Safety
/// `e` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_expansion_neutrix_limit(
    e: *const NeutrixExpansion,
    out: *mut f64,
) -> NeutrixStatus {
    match e.as_ref() {
        Some(e) => put(out, e.0.neutrix_limit()),
        None => NeutrixStatus::NullPointer,
    }
}

/// Releases an expansion. Null is ignored.
///
/// # Safety
/// `e` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn neutrix_expansion_free(e: *mut NeutrixExpansion) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Fits the finite part of a family member (`kind` is a
/// `NeutrixIntegralKind` value) from quadrature samples on `grid`
/// (`grid_len = 0` for the default grid).
///
/// # Safety
/// `grid` must point to `grid_len` doubles; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_integral(
    kind: u32,
    x: f64,
    n: u32,
    r: u32,
    m: u32,
    grid: *const f64,
    grid_len: usize,
    out: *mut *mut NeutrixFitReport,
) -> NeutrixStatus {
    let grid = match grid_arg(grid, grid_len) {
        Ok(g) => g,
        Err(s) => return s,
    };
    let spec = match spec(kind, x, n, r, m) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let r = guard_result(|| oracle::fit_integral(&spec, grid));
    put(out, r.map(|f| Box::into_raw(Box::new(NeutrixFitReport(f)))))
}

/// Fits the Laurent constant of ψ⁽ⁿ⁾(-m + ε) (`grid_len = 0` for the default grid).
///
/// # Safety
/// `grid` must point to `grid_len` doubles; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_shifted_argument_constant(
    n: u32,
    m: u32,
    grid: *const f64,
    grid_len: usize,
    out: *mut *mut NeutrixFitReport,
) -> NeutrixStatus {
    let grid = match grid_arg(grid, grid_len) {
        Ok(g) => g
            .map(<[f64]>::to_vec)
            .unwrap_or_else(oracle::default_shifted_grid),
        Err(s) => return s,
    };
    let r = guard_result(|| oracle::shifted_argument_constant(n, m, &grid));
    put(out, r.map(|f| Box::into_raw(Box::new(NeutrixFitReport(f)))))
}

/// Runs `f`, turning a panic into a domain error so `put` can report it.
fn guard_result<T>(f: impl FnOnce() -> Result<T, Error>) -> Result<T, Error> {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err(Error::Domain("internal error".into())))
}

/// Scalar summary of a fit report. Any out-pointer may be null.
///
/// # Safety
/// `f` must be a live handle; non-null out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_summary(
    f: *const NeutrixFitReport,
    finite_part: *mut f64,
    std_error: *mut f64,
    residual_norm: *mut f64,
    condition_estimate: *mut f64,
    unreliable: *mut i32,
) -> NeutrixStatus {
    let Some(f) = f.as_ref() else {
        return NeutrixStatus::NullPointer;
    };
    let r = &f.0;
    if let Some(p) = finite_part.as_mut() {
        *p = r.finite_part;
    }
    if let Some(p) = std_error.as_mut() {
        *p = r.std_error;
    }
    if let Some(p) = residual_norm.as_mut() {
        *p = r.residual_norm;
    }
    if let Some(p) = condition_estimate.as_mut() {
        *p = r.condition_estimate;
    }
    if let Some(p) = unreliable.as_mut() {
        *p = r.unreliable as i32;
    }
    NeutrixStatus::Ok
}

/// Number of basis columns (equal to the number of coefficients).
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_basis_len(f: *const NeutrixFitReport) -> usize {
    f.as_ref().map_or(0, |f| f.0.basis.len())
}

/// Basis column `i` (`ε^lambda ln^logpow ε`) and its fitted coefficient.
///
/// # Safety
/// `f` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_basis_term(
    f: *const NeutrixFitReport,
    i: usize,
    lambda: *mut f64,
    logpow: *mut u32,
    coefficient: *mut f64,
) -> NeutrixStatus {
    let Some(f) = f.as_ref() else {
        return NeutrixStatus::NullPointer;
    };
    if lambda.is_null() || logpow.is_null() || coefficient.is_null() {
        return NeutrixStatus::NullPointer;
    }
    match (f.0.basis.get(i), f.0.coefficients.get(i)) {
        (Some(s), Some(&c)) => {
            lambda.write(s.lambda);
            logpow.write(s.logpow);
            coefficient.write(c);
            NeutrixStatus::Ok
        }
        _ => NeutrixStatus::OutOfRange,
    }
}

/// Number of (ε, value) samples.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_sample_count(f: *const NeutrixFitReport) -> usize {
    f.as_ref().map_or(0, |f| f.0.samples.len())
}

/// Sample `i`.
///
/// # Safety
/// `f` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_sample(
    f: *const NeutrixFitReport,
    i: usize,
    eps: *mut f64,
    value: *mut f64,
) -> NeutrixStatus {
    let Some(f) = f.as_ref() else {
        return NeutrixStatus::NullPointer;
    };
    if eps.is_null() || value.is_null() {
        return NeutrixStatus::NullPointer;
    }
    match f.0.samples.get(i) {
        Some(&(e, v)) => {
            eps.write(e);
            value.write(v);
            NeutrixStatus::Ok
        }
        None => NeutrixStatus::OutOfRange,
    }
}

/// Releases a fit report. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn neutrix_fit_free(f: *mut NeutrixFitReport) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}
