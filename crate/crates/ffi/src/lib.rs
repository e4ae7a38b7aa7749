//! C interface to `qll`.
//!
//! Braids and groups are opaque handles created by `qll_*_new`/`parse`
//! functions and released with the matching `_free`. Every fallible call
//! returns a [`QllStatus`]; on failure `qll_last_error` gives a message for
//! the calling thread. Strings handed out by the library are released with
//! `qll_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qll::braid::BraidWord;
use qll::homcount::FiniteGroup;
use qll::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QllStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    InvalidArgument = 3,
    BudgetExceeded = 4,
    Unsupported = 5,
    InvalidGroup = 6,
    Io = 7,
    /// A value does not fit the C type it is returned in.
    Overflow = 8,
    Internal = 9,
}

/// Opaque braid word.
pub struct QllBraid(BraidWord);

/// Opaque finite group.
pub struct QllGroup(FiniteGroup);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: QllStatus, msg: impl Into<String>) -> QllStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> QllStatus {
    let status = match &e {
        Error::Parse(_) => QllStatus::Parse,
        Error::InvalidArgument(_) => QllStatus::InvalidArgument,
        Error::BudgetExceeded { .. } => QllStatus::BudgetExceeded,
        Error::Unsupported(_) => QllStatus::Unsupported,
        Error::InvalidGroup(_) => QllStatus::InvalidGroup,
        Error::Io(_) => QllStatus::Io,
        Error::OrderMismatch { .. } => QllStatus::Internal,
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), QllStatus>) -> QllStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QllStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(QllStatus::Internal, "internal panic"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, QllStatus> {
    if p.is_null() {
        return Err(fail(QllStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(QllStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn braid_arg<'a>(b: *const QllBraid) -> Result<&'a BraidWord, QllStatus> {
    b.as_ref()
        .map(|b| &b.0)
        .ok_or_else(|| fail(QllStatus::NullPointer, "braid handle is null"))
}

unsafe fn group_arg<'a>(g: *const QllGroup) -> Result<&'a FiniteGroup, QllStatus> {
    g.as_ref()
        .map(|g| &g.0)
        .ok_or_else(|| fail(QllStatus::NullPointer, "group handle is null"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), QllStatus> {
    if out.is_null() {
        return Err(fail(QllStatus::NullPointer, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qll_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qll_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qll_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a whitespace-separated braid word (`"1 -2 1"`) on `strands` strands.
///
/// # Safety
/// `word` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_braid_parse(word: *const c_char, strands: usize, out: *mut *mut QllBraid) -> QllStatus {
    guard(|| {
        let text = str_arg(word, "word")?;
        let b = BraidWord::parse(text, strands).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(QllBraid(b))))
    })
}

/// # Safety
/// `b` must be NULL or a live handle from `qll_braid_parse`.
#[no_mangle]
pub unsafe extern "C" fn qll_braid_free(b: *mut QllBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_braid_components(b: *const QllBraid, out: *mut usize) -> QllStatus {
    guard(|| write_out(out, braid_arg(b)?.components()))
}

/// Jones polynomial of the closure at `t = e^{2πi/ℓ}`.
///
/// `exact` receives an owned string `cyc(N: c0 c1 ...)` (coefficients of
/// powers of `e^{2πi/N}`) when non-NULL; `re`/`im` receive the complex
/// value when non-NULL.
///
/// # Safety
/// `b` must be a live braid handle; output pointers must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn qll_jones(
    b: *const QllBraid,
    ell: u32,
    exact: *mut *mut c_char,
    re: *mut f64,
    im: *mut f64,
) -> QllStatus {
    guard(|| {
        let v = qll::tl::jones_at_root(braid_arg(b)?, ell).map_err(from_error)?;
        let z = v.to_complex();
        if !re.is_null() {
            re.write(z.re);
        }
        if !im.is_null() {
            im.write(z.im);
        }
        if !exact.is_null() {
            exact.write(owned_string(v.to_string()));
        }
        Ok(())
    })
}

/// Normalized Alexander polynomial as an owned string, e.g. `t^2 - t + 1`.
///
/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_alexander(b: *const QllBraid, out: *mut *mut c_char) -> QllStatus {
    guard(|| {
        let p = qll::burau::alexander_poly(braid_arg(b)?).map_err(from_error)?;
        write_out(out, owned_string(p.to_string()))
    })
}

/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_determinant(b: *const QllBraid, out: *mut u64) -> QllStatus {
    guard(|| {
        let d = qll::burau::determinant(braid_arg(b)?).map_err(from_error)?;
        let d = u64::try_from(&d).map_err(|_| fail(QllStatus::Overflow, format!("determinant {d} exceeds 64 bits")))?;
        write_out(out, d)
    })
}

/// Dimension of H₁ of the double branched cover with `Z/p` coefficients.
///
/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_double_cover_homology(b: *const QllBraid, p: u64, out: *mut usize) -> QllStatus {
    guard(|| {
        let d = qll::burau::double_cover_homology(braid_arg(b)?, p).map_err(from_error)?;
        write_out(out, d)
    })
}

/// Arf invariant of a knot; `Unsupported` for links.
///
/// # Safety
/// `b` must be a live braid handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_arf(b: *const QllBraid, out: *mut u8) -> QllStatus {
    guard(|| write_out(out, qll::burau::arf_knot(braid_arg(b)?).map_err(from_error)?))
}

/// Builds a group from a spec such as `"symmetric 3"`, `"Q8"` or `"Z2 x D4"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_group_builtin(spec: *const c_char, out: *mut *mut QllGroup) -> QllStatus {
    guard(|| {
        let g = qll::homcount::builtin_group(str_arg(spec, "spec")?).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(QllGroup(g))))
    })
}

/// Builds a group from a row-major `order × order` table whose entry
/// `(a, b)` is the index of `a·b`. The axioms are checked.
///
/// # Safety
/// `table` must point to `order * order` readable entries and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qll_group_from_table(
    name: *const c_char,
    table: *const u32,
    order: usize,
    out: *mut *mut QllGroup,
) -> QllStatus {
    guard(|| {
        let name = if name.is_null() { "G" } else { str_arg(name, "name")? };
        if table.is_null() {
            return Err(fail(QllStatus::NullPointer, "table is null"));
        }
        let cells = order
            .checked_mul(order)
            .ok_or_else(|| fail(QllStatus::InvalidArgument, "order too large"))?;
        let flat = std::slice::from_raw_parts(table, cells);
        let rows: Vec<Vec<usize>> = flat
            .chunks(order.max(1))
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect();
        let g = FiniteGroup::from_table(name, &rows).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(QllGroup(g))))
    })
}

/// # Safety
/// `g` must be NULL or a live group handle.
#[no_mangle]
pub unsafe extern "C" fn qll_group_free(g: *mut QllGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_group_order(g: *const QllGroup, out: *mut usize) -> QllStatus {
    guard(|| write_out(out, group_arg(g)?.order()))
}

/// Exact number of homomorphisms from the link group to `g`. A `budget`
/// of 0 means the default.
///
/// # Safety
/// Handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_hom_count(
    b: *const QllBraid,
    g: *const QllGroup,
    budget: u64,
    out: *mut u64,
) -> QllStatus {
    guard(|| {
        let budget = if budget == 0 {
            qll::homcount::DEFAULT_HOM_BUDGET
        } else {
            budget as u128
        };
        let n = qll::homcount::hom_count_exact_with_budget(braid_arg(b)?, group_arg(g)?, budget).map_err(from_error)?;
        write_out(out, n)
    })
}

/// Sampled homomorphism count: `estimate ± stderr`, reproducible from `seed`.
///
/// # Safety
/// Handles must be live; `estimate` and `stderr` writable.
#[no_mangle]
pub unsafe extern "C" fn qll_hom_estimate(
    b: *const QllBraid,
    g: *const QllGroup,
    samples: u64,
    seed: u64,
    estimate: *mut f64,
    stderr: *mut f64,
) -> QllStatus {
    guard(|| {
        let (b, g) = (braid_arg(b)?, group_arg(g)?);
        let est = qll::homcount::hom_count_estimate(b, g, samples, seed).map_err(from_error)?;
        let total = (g.order() as f64).powi(b.strands() as i32);
        write_out(estimate, est.fixed as f64 / est.samples as f64 * total)?;
        write_out(stderr, est.stderr)
    })
}
