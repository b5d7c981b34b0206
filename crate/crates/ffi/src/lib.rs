//! C ABI over `klein`.
//!
//! Every function returns a [`KleinStatus`] and writes results through out
//! pointers. Handles are opaque and owned by the caller once returned; free
//! them with the matching `_free` function. Strings returned to C are freed
//! with [`klein_string_free`]. On any status other than `KLEIN_STATUS_OK`,
//! [`klein_last_error_message`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use klein::classify::{admissible_pairs, pairs_to_csv, search_degree, ClassifyError, SearchConfig};
use klein::equivariance::phi_poly;
use klein::ideal::{IdealError, RepType};
use klein::steenrod::total_sq;
use klein::{BiPoly, GradedIdeal, PolyError, DEFAULT_DEGREE_CAP};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KleinStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// An operation's precondition failed, e.g. rep type of a non-invariant ideal.
    Precondition = 5,
    DegreeCap = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KleinRepType {
    Trivial = 0,
    Nontrivial = 1,
}

/// An element of `F2[a,b]`.
pub struct KleinPoly(BiPoly);

/// A homogeneous ideal of `F2[a,b]`.
pub struct KleinIdeal(GradedIdeal);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(KleinStatus, String);

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        let status = match e {
            PolyError::DegreeCap { .. } => KleinStatus::DegreeCap,
            _ => KleinStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<IdealError> for Failure {
    fn from(e: IdealError) -> Self {
        let status = match &e {
            IdealError::Parse { .. } => KleinStatus::ParseError,
            IdealError::Poly(PolyError::DegreeCap { .. }) => KleinStatus::DegreeCap,
            IdealError::NotParameter | IdealError::NotInvariant | IdealError::GeneratorCount { .. } => {
                KleinStatus::Precondition
            }
            _ => KleinStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let status = match e {
            ClassifyError::DegreeCap { .. } => KleinStatus::DegreeCap,
            ClassifyError::ZeroDegree | ClassifyError::ZeroInput => KleinStatus::InvalidArgument,
            _ => KleinStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KleinStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KleinStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(&format!("internal panic: {message}"));
            KleinStatus::Panic
        }
    }
}

fn null(name: &str) -> Failure {
    Failure(KleinStatus::NullPointer, format!("{name} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(name))
}

unsafe fn out_ptr<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(KleinStatus::InvalidUtf8, format!("{name}: {e}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure(KleinStatus::InvalidArgument, e.to_string()))
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failure on this thread, or null. Valid until the next
/// call into this library on the same thread.
#[no_mangle]
pub extern "C" fn klein_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn klein_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn klein_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a polynomial such as `"a^2*b + b^3 + 1"`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_parse(text: *const c_char, out: *mut *mut KleinPoly) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = read_str(text, "text")?;
        let f = klein::parse::parse_with_cap(text, DEFAULT_DEGREE_CAP)
            .map_err(|e| Failure(KleinStatus::ParseError, e.to_string()))?;
        *out = boxed(KleinPoly(f));
        Ok(())
    })
}

/// Canonical text form; free with [`klein_string_free`].
///
/// # Safety
/// `p` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_render(p: *const KleinPoly, out: *mut *mut c_char) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let p = borrow(p, "p")?;
        *out = to_c_string(klein::render(&p.0))?;
        Ok(())
    })
}

/// # Safety
/// `p` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_free(p: *mut KleinPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

unsafe fn binary(
    x: *const KleinPoly,
    y: *const KleinPoly,
    out: *mut *mut KleinPoly,
    op: fn(&BiPoly, &BiPoly) -> BiPoly,
) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let (x, y) = (borrow(x, "x")?, borrow(y, "y")?);
        *out = boxed(KleinPoly(op(&x.0, &y.0)));
        Ok(())
    })
}

unsafe fn unary(x: *const KleinPoly, out: *mut *mut KleinPoly, op: fn(&BiPoly) -> BiPoly) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let x = borrow(x, "x")?;
        *out = boxed(KleinPoly(op(&x.0)));
        Ok(())
    })
}

/// # Safety
/// `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_add(
    x: *const KleinPoly,
    y: *const KleinPoly,
    out: *mut *mut KleinPoly,
) -> KleinStatus {
    binary(x, y, out, |x, y| x + y)
}

/// # Safety
/// `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_mul(
    x: *const KleinPoly,
    y: *const KleinPoly,
    out: *mut *mut KleinPoly,
) -> KleinStatus {
    binary(x, y, out, |x, y| x * y)
}

/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_square(x: *const KleinPoly, out: *mut *mut KleinPoly) -> KleinStatus {
    unary(x, out, BiPoly::square)
}

/// Total Steenrod square `a -> a + a^2, b -> b + b^2`.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_total_sq(x: *const KleinPoly, out: *mut *mut KleinPoly) -> KleinStatus {
    unary(x, out, total_sq)
}

/// `a -> b, b -> a + b`.
///
/// # Safety
/// `x` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_phi(x: *const KleinPoly, out: *mut *mut KleinPoly) -> KleinStatus {
    unary(x, out, phi_poly)
}

/// # Safety
/// `x`, `y` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_poly_equal(x: *const KleinPoly, y: *const KleinPoly, out: *mut bool) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = borrow(x, "x")?.0 == borrow(y, "y")?.0;
        Ok(())
    })
}

/// Ideal generated by `count` homogeneous forms given as strings.
///
/// # Safety
/// `generators` points to `count` NUL-terminated strings; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_new(
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut KleinIdeal,
) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if generators.is_null() {
            return Err(null("generators"));
        }
        let texts = std::slice::from_raw_parts(generators, count)
            .iter()
            .enumerate()
            .map(|(i, &p)| read_str(p, &format!("generators[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let ideal = GradedIdeal::parse_with_cap(&texts, DEFAULT_DEGREE_CAP)?;
        *out = boxed(KleinIdeal(ideal));
        Ok(())
    })
}

/// # Safety
/// `j` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_free(j: *mut KleinIdeal) {
    if !j.is_null() {
        drop(Box::from_raw(j));
    }
}

unsafe fn ideal_flag(
    j: *const KleinIdeal,
    out: *mut bool,
    f: impl FnOnce(&GradedIdeal) -> Result<bool, Failure>,
) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = f(&borrow(j, "j")?.0)?;
        Ok(())
    })
}

/// Two minimal generators with no common factor. An ideal that needs more
/// than two generators is not a parameter ideal.
///
/// # Safety
/// `j` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_is_parameter(j: *const KleinIdeal, out: *mut bool) -> KleinStatus {
    ideal_flag(j, out, |j| match j.is_parameter_ideal() {
        Err(IdealError::GeneratorCount { .. }) => Ok(false),
        r => Ok(r?),
    })
}

/// # Safety
/// `j` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_is_steenrod_closed(j: *const KleinIdeal, out: *mut bool) -> KleinStatus {
    ideal_flag(j, out, |j| Ok(j.is_steenrod_closed()))
}

/// # Safety
/// `j` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_is_c3_invariant(j: *const KleinIdeal, out: *mut bool) -> KleinStatus {
    ideal_flag(j, out, |j| Ok(j.is_c3_invariant()))
}

/// # Safety
/// `j`, `f` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_contains(
    j: *const KleinIdeal,
    f: *const KleinPoly,
    out: *mut bool,
) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let j = borrow(j, "j")?;
        *out = j.0.contains(&borrow(f, "f")?.0).is_some();
        Ok(())
    })
}

/// Action of `phi` on the minimal generators. `KLEIN_STATUS_PRECONDITION`
/// unless the ideal is a `C3`-invariant parameter ideal.
///
/// # Safety
/// `j` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_ideal_rep_type(j: *const KleinIdeal, out: *mut KleinRepType) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = match borrow(j, "j")?.0.rep_type()? {
            RepType::Trivial => KleinRepType::Trivial,
            RepType::Nontrivial => KleinRepType::Nontrivial,
        };
        Ok(())
    })
}

/// Classification report for degree `n` as JSON. `workers = 0` picks the
/// available parallelism.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_search_degree_json(n: u32, workers: u32, out: *mut *mut c_char) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let mut config = SearchConfig::default();
        if workers > 0 {
            config.workers = workers as usize;
        }
        let report = search_degree(n, &config)?;
        let json = serde_json::to_string(&report).map_err(|e| Failure(KleinStatus::Panic, e.to_string()))?;
        *out = to_c_string(json)?;
        Ok(())
    })
}

/// Admissible degree pairs up to `bound` as CSV.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn klein_admissible_csv(bound: u64, out: *mut *mut c_char) -> KleinStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = to_c_string(pairs_to_csv(&admissible_pairs(bound)))?;
        Ok(())
    })
}
