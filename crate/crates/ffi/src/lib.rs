//! C ABI over the `pivotgrowth` library.
//!
//! Matrices and factorization traces are opaque handles owned by the caller
//! and released with the matching `_free` function. Every fallible call
//! returns a `PG_*` status code; on failure, `pg_last_error` holds a message
//! for the calling thread. Matrix data crosses the boundary in row-major order.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pivotgrowth::elimination::{factorize, growth, EliminationTrace, PivotStrategy};
use pivotgrowth::randgen::{haar_orthogonal, RngStream};
use pivotgrowth::{models, Error, Matrix};

pub const PG_OK: i32 = 0;
pub const PG_NULL_POINTER: i32 = 1;
pub const PG_INVALID_ARGUMENT: i32 = 2;
pub const PG_DIMENSION: i32 = 3;
pub const PG_NON_FINITE: i32 = 4;
pub const PG_SINGULAR: i32 = 5;
pub const PG_ZERO_PIVOT: i32 = 6;
pub const PG_NO_CONVERGENCE: i32 = 7;
pub const PG_OVERFLOW: i32 = 8;
pub const PG_BUFFER_TOO_SMALL: i32 = 9;
pub const PG_INTERNAL: i32 = 10;
pub const PG_PANIC: i32 = 11;

pub const PG_PIVOT_NONE: u32 = 0;
pub const PG_PIVOT_PARTIAL: u32 = 1;
pub const PG_PIVOT_COMPLETE: u32 = 2;

/// Dense real matrix.
pub struct PgMatrix {
    inner: Matrix,
}

/// Record of one pivoted LU run, together with its input.
pub struct PgTrace {
    trace: EliminationTrace,
    input: Matrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PgGrowthReport {
    pub rho_max: f64,
    pub rho_two: f64,
    /// 0-based elimination step attaining `rho_max`.
    pub arg_step: usize,
    pub arg_row: usize,
    pub arg_col: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Dimension(_) | Error::NotSquare { .. } | Error::Index(_) => PG_DIMENSION,
        Error::NonFinite { .. } => PG_NON_FINITE,
        Error::Singular { .. } => PG_SINGULAR,
        Error::ZeroPivot { .. } => PG_ZERO_PIVOT,
        Error::NoConvergence { .. } => PG_NO_CONVERGENCE,
        Error::Overflow(_) => PG_OVERFLOW,
        Error::InvalidArgument(_) | Error::Parse(_) => PG_INVALID_ARGUMENT,
        Error::Contract(_) | Error::Io(_) => PG_INTERNAL,
    }
}

struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(PG_NULL_POINTER, format!("{what} is null"))
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PG_OK,
        Ok(Err(Fail(code, msg))) => {
            set_last_error(&msg);
            code
        }
        Err(_) => {
            set_last_error("panic inside pivotgrowth");
            PG_PANIC
        }
    }
}

fn strategy(code: u32) -> Result<PivotStrategy, Fail> {
    match code {
        PG_PIVOT_NONE => Ok(PivotStrategy::None),
        PG_PIVOT_PARTIAL => Ok(PivotStrategy::Partial),
        PG_PIVOT_COMPLETE => Ok(PivotStrategy::Complete),
        other => Err(Fail(PG_INVALID_ARGUMENT, format!("unknown pivot strategy {other}"))),
    }
}

unsafe fn matrix_ref<'a>(m: *const PgMatrix) -> Result<&'a Matrix, Fail> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null("matrix"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn pg_error_string(code: i32) -> *const c_char {
    let s: &'static CStr = match code {
        PG_OK => c"ok",
        PG_NULL_POINTER => c"null pointer",
        PG_INVALID_ARGUMENT => c"invalid argument",
        PG_DIMENSION => c"dimension mismatch",
        PG_NON_FINITE => c"non-finite entry",
        PG_SINGULAR => c"singular matrix",
        PG_ZERO_PIVOT => c"zero pivot without pivoting",
        PG_NO_CONVERGENCE => c"iteration did not converge",
        PG_OVERFLOW => c"overflow guard",
        PG_BUFFER_TOO_SMALL => c"buffer too small",
        PG_INTERNAL => c"internal error",
        PG_PANIC => c"panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread; valid until the next failing call.
#[no_mangle]
pub extern "C" fn pg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Copies `rows * cols` row-major values into a new matrix.
///
/// # Safety
/// `data` must point to `rows * cols` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_matrix_new(rows: usize, cols: usize, data: *const f64, out: *mut *mut PgMatrix) -> i32 {
    guard(|| {
        if data.is_null() {
            return Err(null("data"));
        }
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Fail(PG_INVALID_ARGUMENT, "rows * cols overflows".into()))?;
        let values = std::slice::from_raw_parts(data, len).to_vec();
        put(out, PgMatrix { inner: Matrix::new(rows, cols, values)? })
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_matrix_free(m: *mut PgMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn pg_matrix_rows(m: *const PgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.rows())
}

/// # Safety
/// `m` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn pg_matrix_cols(m: *const PgMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.inner.cols())
}

/// Copies the entries in row-major order into `buf`, which holds `len` doubles.
///
/// # Safety
/// `m` must be a live handle and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pg_matrix_copy(m: *const PgMatrix, buf: *mut f64, len: usize) -> i32 {
    guard(|| {
        let a = matrix_ref(m)?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        let src = a.as_slice();
        if len < src.len() {
            return Err(Fail(PG_BUFFER_TOO_SMALL, format!("need {} doubles, got {len}", src.len())));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(())
    })
}

/// Builds a named matrix family member (for example `"wilkinsonA"`, `"qn"`, `"b3"`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_model(name: *const c_char, n: usize, out: *mut *mut PgMatrix) -> i32 {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| Fail(PG_INVALID_ARGUMENT, "name is not UTF-8".into()))?;
        put(out, PgMatrix { inner: models::by_name(name, n)? })
    })
}

/// Haar-distributed orthogonal matrix from the stream `(seed, stream)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pg_haar_orthogonal(n: usize, seed: u64, stream: u64, out: *mut *mut PgMatrix) -> i32 {
    guard(|| {
        let mut rng = RngStream::new(seed, stream);
        put(out, PgMatrix { inner: haar_orthogonal(n, &mut rng)? })
    })
}

/// Max-norm growth factor under `strategy` (one of `PG_PIVOT_*`).
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_growth_factor(m: *const PgMatrix, strategy_code: u32, out: *mut f64) -> i32 {
    guard(|| {
        let a = matrix_ref(m)?;
        let s = strategy(strategy_code)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = pivotgrowth::growth_factor(a, s)?;
        Ok(())
    })
}

/// Max-norm and L² growth factors with the attaining step and entry (0-based
/// entry indices in the frame of `P A Q`).
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_growth_report(m: *const PgMatrix, strategy_code: u32, out: *mut PgGrowthReport) -> i32 {
    guard(|| {
        let a = matrix_ref(m)?;
        let s = strategy(strategy_code)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let r = growth(&factorize(a, s)?, a)?;
        *out = PgGrowthReport {
            rho_max: r.rho_max,
            rho_two: r.rho_two,
            arg_step: r.arg_step,
            arg_row: r.arg_entry.0,
            arg_col: r.arg_entry.1,
        };
        Ok(())
    })
}

/// Factorizes `P A Q = L U` and returns the trace handle.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_factorize(m: *const PgMatrix, strategy_code: u32, out: *mut *mut PgTrace) -> i32 {
    guard(|| {
        let a = matrix_ref(m)?;
        let trace = factorize(a, strategy(strategy_code)?)?;
        put(out, PgTrace { trace, input: a.clone() })
    })
}

/// # Safety
/// `t` must be null or a trace handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_free(t: *mut PgTrace) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be null or a live handle. Returns 0 for null.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_order(t: *const PgTrace) -> usize {
    t.as_ref().map_or(0, |t| t.trace.order())
}

/// Copies the `n` pivots (diagonal of `U`) into `buf`.
///
/// # Safety
/// `t` must be a live handle and `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_pivots(t: *const PgTrace, buf: *mut f64, len: usize) -> i32 {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trace"))?;
        if buf.is_null() {
            return Err(null("buffer"));
        }
        let p = &t.trace.pivots;
        if len < p.len() {
            return Err(Fail(PG_BUFFER_TOO_SMALL, format!("need {} doubles, got {len}", p.len())));
        }
        ptr::copy_nonoverlapping(p.as_ptr(), buf, p.len());
        Ok(())
    })
}

/// Copies the row and column permutations (`perm[k]` is the original index
/// placed at position `k`). Either buffer may be null to skip it.
///
/// # Safety
/// `t` must be a live handle; non-null buffers must hold `len` writable entries.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_permutations(
    t: *const PgTrace,
    rows: *mut usize,
    cols: *mut usize,
    len: usize,
) -> i32 {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trace"))?;
        let n = t.trace.order();
        if len < n {
            return Err(Fail(PG_BUFFER_TOO_SMALL, format!("need {n} entries, got {len}")));
        }
        if !rows.is_null() {
            ptr::copy_nonoverlapping(t.trace.row_perm.as_slice().as_ptr(), rows, n);
        }
        if !cols.is_null() {
            ptr::copy_nonoverlapping(t.trace.col_perm.as_slice().as_ptr(), cols, n);
        }
        Ok(())
    })
}

/// JSON dump of the trace with both growth factors. Free the string with
/// [`pg_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pg_trace_to_json(t: *const PgTrace, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("trace"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let report = growth(&t.trace, &t.input)?;
        let json = serde_json::to_string(&t.trace.dump(&report)).map_err(|e| Fail(PG_INTERNAL, e.to_string()))?;
        *out = CString::new(json).map_err(|e| Fail(PG_INTERNAL, e.to_string()))?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
