//! C ABI over the `sigforge` library.
//!
//! Matrices live behind the opaque handle [`SfSeifert`]. Every fallible call
//! returns an [`SfStatus`]; on failure a message is available from
//! [`sf_last_error`] on the same thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use sigforge::construct::{highdim_metabolic_peak, jump_polynomial, metabolic_peak};
use sigforge::exact_math::IntPolynomial;
use sigforge::matrix::Matrix;
use sigforge::seifert::{
    alexander_polynomial, signature_at_rational, signature_step_function, validate_seifert, Parity,
    SeifertMatrix,
};
use sigforge::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParityViolation = 3,
    VerificationFailed = 4,
    OutOfDomain = 5,
    BufferTooSmall = 6,
    Overflow = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfParity {
    Classical = 0,
    HighDim = 1,
}

impl From<SfParity> for Parity {
    fn from(p: SfParity) -> Self {
        match p {
            SfParity::Classical => Parity::Classical,
            SfParity::HighDim => Parity::HighDimSym,
        }
    }
}

/// Opaque validated Seifert matrix.
pub struct SfSeifert {
    inner: SeifertMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::ParityViolation { .. } | Error::ParityMismatch(..) => SfStatus::ParityViolation,
            Error::Verification(_) => SfStatus::VerificationFailed,
            Error::OutOfDomain(_) => SfStatus::OutOfDomain,
            _ => SfStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: SfStatus, msg: &str) -> Result<T, Failure> {
    Err(Failure(status, msg.to_string()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SfStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SfStatus::Panic
        }
    }
}

fn rational(num: i64, den: i64) -> Result<BigRational, Failure> {
    if den == 0 {
        return fail(SfStatus::InvalidArgument, "zero denominator");
    }
    Ok(BigRational::new(num.into(), den.into()))
}

unsafe fn handle<'a>(m: *const SfSeifert) -> Result<&'a SeifertMatrix, Failure> {
    match m.as_ref() {
        Some(h) => Ok(&h.inner),
        None => fail(SfStatus::NullPointer, "null matrix handle"),
    }
}

fn to_i64(v: &BigInt) -> Result<i64, Failure> {
    v.to_i64()
        .ok_or_else(|| Failure(SfStatus::Overflow, format!("{v} does not fit in 64 bits")))
}

/// Copies `coeffs` (constant first) into `buf`, always reporting the length.
unsafe fn write_coeffs(p: &IntPolynomial, buf: *mut i64, cap: usize, len: *mut usize) -> Result<(), Failure> {
    if len.is_null() {
        return fail(SfStatus::NullPointer, "null length pointer");
    }
    let coeffs = p.coeffs().iter().map(to_i64).collect::<Result<Vec<_>, _>>()?;
    *len = coeffs.len();
    if cap < coeffs.len() {
        return fail(SfStatus::BufferTooSmall, "coefficient buffer too small");
    }
    if buf.is_null() {
        return fail(SfStatus::NullPointer, "null coefficient buffer");
    }
    ptr::copy_nonoverlapping(coeffs.as_ptr(), buf, coeffs.len());
    Ok(())
}

fn boxed(k: SeifertMatrix, out: *mut *mut SfSeifert) -> Result<(), Failure> {
    // out was checked non-null by the caller
    unsafe { *out = Box::into_raw(Box::new(SfSeifert { inner: k })) };
    Ok(())
}

/// Validates an `n×n` row-major matrix and returns a new handle in `*out`.
///
/// # Safety
/// `entries` must point to `n*n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_seifert_new(
    entries: *const i64,
    n: usize,
    parity: SfParity,
    out: *mut *mut SfSeifert,
) -> SfStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            return fail(SfStatus::NullPointer, "null pointer argument");
        }
        let len = n.checked_mul(n).ok_or_else(|| Failure(SfStatus::InvalidArgument, "dimension too large".into()))?;
        let data = std::slice::from_raw_parts(entries, len);
        let v = Matrix::from_fn(n, n, |i, j| BigInt::from(data[i * n + j]));
        boxed(validate_seifert(v, parity.into())?, out)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_seifert_free(m: *mut SfSeifert) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sf_seifert_dim(m: *const SfSeifert) -> usize {
    m.as_ref().map_or(0, |h| h.inner.dim())
}

/// Copies the entries row-major into `buf` (capacity `cap`).
///
/// # Safety
/// `buf` must hold `cap` writable values.
#[no_mangle]
pub unsafe extern "C" fn sf_seifert_entries(m: *const SfSeifert, buf: *mut i64, cap: usize) -> SfStatus {
    guard(|| {
        let k = handle(m)?;
        let n = k.dim();
        if cap < n * n {
            return fail(SfStatus::BufferTooSmall, "entry buffer too small");
        }
        if buf.is_null() {
            return fail(SfStatus::NullPointer, "null entry buffer");
        }
        for i in 0..n {
            for j in 0..n {
                *buf.add(i * n + j) = to_i64(&k.matrix()[(i, j)])?;
            }
        }
        Ok(())
    })
}

/// Exact signature at `ω` with real part `num/den ∈ (−1, 1)`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_signature_at_rational(
    m: *const SfSeifert,
    num: i64,
    den: i64,
    out: *mut i64,
) -> SfStatus {
    guard(|| {
        let k = handle(m)?;
        if out.is_null() {
            return fail(SfStatus::NullPointer, "null output pointer");
        }
        *out = signature_at_rational(k, &rational(num, den)?)?;
        Ok(())
    })
}

/// Normalized Alexander polynomial, constant coefficient first. `*len` is
/// set to the number of coefficients even when the buffer is too small.
///
/// # Safety
/// `coeffs` must hold `cap` writable values; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_alexander(
    m: *const SfSeifert,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> SfStatus {
    guard(|| {
        let k = handle(m)?;
        write_coeffs(&alexander_polynomial(k).normalized, coeffs, cap, len)
    })
}

/// Metabolic matrix whose signature function is 2 at the `root_index`-th
/// unit root of `Δ` (1-based) and 0 elsewhere. Postconditions are verified.
///
/// # Safety
/// `coeffs` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sf_metabolic_peak(
    coeffs: *const i64,
    len: usize,
    root_index: usize,
    parity: SfParity,
    out: *mut *mut SfSeifert,
) -> SfStatus {
    guard(|| {
        if coeffs.is_null() || out.is_null() {
            return fail(SfStatus::NullPointer, "null pointer argument");
        }
        let delta = IntPolynomial::from_i64s(std::slice::from_raw_parts(coeffs, len));
        let peak = match parity {
            SfParity::Classical => metabolic_peak(&delta, root_index)?,
            SfParity::HighDim => highdim_metabolic_peak(&delta, root_index)?,
        };
        boxed(peak.matrix, out)
    })
}

/// Quartic `bt⁴ − (2a+2b)t³ + (4a+2b−1)t² − (2a+2b)t + b` with a single
/// unit-root pair whose real part is within `eps` of `re`. Writes the five
/// coefficients, constant first.
///
/// # Safety
/// `coeffs` must hold 5 writable values.
#[no_mangle]
pub unsafe extern "C" fn sf_jump_polynomial(
    re_num: i64,
    re_den: i64,
    eps_num: i64,
    eps_den: i64,
    coeffs: *mut i64,
) -> SfStatus {
    guard(|| {
        let j = jump_polynomial(&rational(re_num, re_den)?, &rational(eps_num, eps_den)?)?;
        let mut len = 0usize;
        write_coeffs(&j.delta, coeffs, 5, &mut len)
    })
}

/// Step function as a JSON string in `*out`; release with [`sf_string_free`].
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sf_step_function_json(m: *const SfSeifert, out: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let k = handle(m)?;
        if out.is_null() {
            return fail(SfStatus::NullPointer, "null output pointer");
        }
        let sf = signature_step_function(k)?;
        let text = sigforge::io::step_function_to_json(&sf).to_string();
        *out = CString::new(text).expect("json has no interior nul").into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
