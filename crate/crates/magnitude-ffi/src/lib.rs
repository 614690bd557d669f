//! C ABI for the magnitude toolkit.
//!
//! Spaces are opaque handles created and freed by this library. Every
//! fallible function returns a status code (`MAG_OK` on success) and writes
//! its result through an out-pointer. Strings returned through out-pointers
//! are NUL-terminated, owned by the caller, and must be released with
//! `mag_string_free`. Exact rationals cross the boundary as `"p/q"` strings.

use magnitude::construct::construct_target_limit;
use magnitude::engine::{formal_magnitude, numeric_magnitude, one_point_report, small_scale_limit};
use magnitude::io::{space_from_str, space_to_string, ConstructionJson, ReportJson};
use magnitude::rational::parse_rational;
use magnitude::{Error, FiniteMetricSpace};
use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Success.
pub const MAG_OK: c_int = 0;
/// A required pointer argument was NULL, or a string was not valid UTF-8.
pub const MAG_ERR_ARGUMENT: c_int = 1;
/// Input failed to parse or validate (bad JSON, bad metric, bad rational).
pub const MAG_ERR_PARSE: c_int = 2;
/// Mathematically undefined request (singular scale, assumption violated).
pub const MAG_ERR_MATH: c_int = 3;
/// A size or iteration cap was exceeded.
pub const MAG_ERR_CAP: c_int = 4;
/// Unexpected internal failure.
pub const MAG_ERR_INTERNAL: c_int = 5;

/// An immutable finite metric space (opaque).
pub struct MagSpace {
    inner: FiniteMetricSpace,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(sanitized).unwrap());
}

fn code_of(err: &Error) -> c_int {
    match err {
        Error::SizeCapExceeded { .. }
        | Error::BisectionCapExceeded(_)
        | Error::ExponentLatticeTooLarge(_) => MAG_ERR_CAP,
        Error::SingularAtThisScale(_)
        | Error::AssumptionViolated
        | Error::NotHomogeneous
        | Error::NotAForest
        | Error::ExactnessUnavailable
        | Error::ZeroDenominatorPolynomial
        | Error::DivisionByZeroGenRat
        | Error::InfiniteDistanceUnsupported => MAG_ERR_MATH,
        Error::Internal(_) => MAG_ERR_INTERNAL,
        _ => MAG_ERR_PARSE,
    }
}

fn fail(err: Error) -> c_int {
    set_error(&err.to_string());
    code_of(&err)
}

/// Runs `body`, converting panics into `MAG_ERR_INTERNAL`.
fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            MAG_ERR_INTERNAL
        }
    }
}

/// # Safety
/// `ptr` must be non-null and point to a NUL-terminated UTF-8 string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(MAG_ERR_ARGUMENT);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        MAG_ERR_ARGUMENT
    })
}

unsafe fn read_space<'a>(handle: *const MagSpace) -> Result<&'a FiniteMetricSpace, c_int> {
    if handle.is_null() {
        set_error("null space handle");
        return Err(MAG_ERR_ARGUMENT);
    }
    Ok(&(*handle).inner)
}

fn write_space(out: *mut *mut MagSpace, space: FiniteMetricSpace) -> c_int {
    if out.is_null() {
        set_error("null out-pointer");
        return MAG_ERR_ARGUMENT;
    }
    unsafe { *out = Box::into_raw(Box::new(MagSpace { inner: space })) };
    MAG_OK
}

fn write_string(out: *mut *mut c_char, s: String) -> c_int {
    if out.is_null() {
        set_error("null out-pointer");
        return MAG_ERR_ARGUMENT;
    }
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            MAG_OK
        }
        Err(_) => {
            set_error("result contains an interior NUL byte");
            MAG_ERR_INTERNAL
        }
    }
}

/// Message for the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn mag_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned by a function of this library and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn mag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Frees a space handle. NULL is ignored.
///
/// # Safety
/// `space` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn mag_space_free(space: *mut MagSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Parses a space from its JSON form
/// (`{"labels": [...], "dist": [["p/q", ...], ...]}`; `"inf"` for infinity).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_space_from_json(
    json: *const c_char,
    out: *mut *mut MagSpace,
) -> c_int {
    guarded(|| {
        let json = match read_str(json) {
            Ok(s) => s,
            Err(code) => return code,
        };
        match space_from_str(json) {
            Ok(space) => write_space(out, space),
            Err(e) => fail(e),
        }
    })
}

/// Serializes a space to its canonical JSON form.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_space_to_json(
    space: *const MagSpace,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| match read_space(space) {
        Ok(x) => write_string(out, space_to_string(x)),
        Err(code) => code,
    })
}

/// Builds the space of `n` points pairwise at distance `r` (`"p/q"`).
///
/// # Safety
/// `r` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_space_uniform(
    n: usize,
    r: *const c_char,
    out: *mut *mut MagSpace,
) -> c_int {
    guarded(|| {
        let r = match read_str(r) {
            Ok(s) => s,
            Err(code) => return code,
        };
        let result = parse_rational(r).and_then(|r| FiniteMetricSpace::uniform(n, &r));
        match result {
            Ok(space) => write_space(out, space),
            Err(e) => fail(e),
        }
    })
}

/// Number of points of a space. Returns 0 for a NULL handle.
///
/// # Safety
/// `space` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn mag_space_len(space: *const MagSpace) -> usize {
    match read_space(space) {
        Ok(x) => x.len(),
        Err(_) => 0,
    }
}

/// Join of two spaces (all cross distances 1; both diameters must be <= 2).
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_space_join(
    left: *const MagSpace,
    right: *const MagSpace,
    out: *mut *mut MagSpace,
) -> c_int {
    guarded(|| {
        let (a, b) = match (read_space(left), read_space(right)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(code), _) | (_, Err(code)) => return code,
        };
        match a.join(b) {
            Ok(space) => write_space(out, space),
            Err(e) => fail(e),
        }
    })
}

/// l1 (sum-metric) product of two spaces.
///
/// # Safety
/// `left` and `right` must be live handles; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_space_product(
    left: *const MagSpace,
    right: *const MagSpace,
    out: *mut *mut MagSpace,
) -> c_int {
    guarded(|| {
        let (a, b) = match (read_space(left), read_space(right)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(code), _) | (_, Err(code)) => return code,
        };
        match a.l1_product(b) {
            Ok(space) => write_space(out, space),
            Err(e) => fail(e),
        }
    })
}

/// Numeric magnitude `|tX|` at scale `t > 0`.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_magnitude(
    space: *const MagSpace,
    t: c_double,
    out: *mut c_double,
) -> c_int {
    guarded(|| {
        let x = match read_space(space) {
            Ok(x) => x,
            Err(code) => return code,
        };
        if out.is_null() {
            set_error("null out-pointer");
            return MAG_ERR_ARGUMENT;
        }
        match numeric_magnitude(x, t) {
            Ok(v) => {
                *out = v;
                MAG_OK
            }
            Err(e) => fail(e),
        }
    })
}

/// Formal magnitude in canonical text form, e.g. `6 / (1 + 4 q^{1})`.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_formal_magnitude(
    space: *const MagSpace,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let x = match read_space(space) {
            Ok(x) => x,
            Err(code) => return code,
        };
        match formal_magnitude(x) {
            Ok(f) => write_string(out, f.to_string()),
            Err(e) => fail(e),
        }
    })
}

/// Exact limit of the magnitude function as the scale shrinks to 0:
/// `"p/q"`, `"+inf"`, or `"-inf"`.
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_small_scale_limit(
    space: *const MagSpace,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let x = match read_space(space) {
            Ok(x) => x,
            Err(code) => return code,
        };
        match small_scale_limit(x) {
            Ok(limit) => write_string(out, limit.to_string()),
            Err(e) => fail(e),
        }
    })
}

/// Full one-point-property report as JSON
/// (`f_n`, `det_d`, `c_n`, `c_n_prime`, `limit`, `one_point`).
///
/// # Safety
/// `space` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_one_point_report(
    space: *const MagSpace,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let x = match read_space(space) {
            Ok(x) => x,
            Err(code) => return code,
        };
        match one_point_report(x) {
            Ok(report) => write_string(
                out,
                serde_json::to_string(&ReportJson::from_report(&report)).unwrap(),
            ),
            Err(e) => fail(e),
        }
    })
}

/// Builds a space whose small-scale limit is within `tol` of `target`
/// (both `"p/q"`, target >= 1) and returns the construction record as JSON.
///
/// # Safety
/// `target` and `tol` must be NUL-terminated strings; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn mag_construct_target(
    target: *const c_char,
    tol: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let (target, tol) = match (read_str(target), read_str(tol)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(code), _) | (_, Err(code)) => return code,
        };
        let result = parse_rational(target)
            .and_then(|target| Ok((target, parse_rational(tol)?)))
            .and_then(|(target, tol)| construct_target_limit(&target, &tol));
        match result {
            Ok(c) => write_string(
                out,
                serde_json::to_string(&ConstructionJson::from_result(&c)).unwrap(),
            ),
            Err(e) => fail(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
        mag_string_free(p);
        s
    }

    #[test]
    fn round_trip_and_magnitude() {
        unsafe {
            let json = CString::new(
                r#"{"labels":["a","b"],"dist":[["0","4/3"],["4/3","0"]]}"#,
            )
            .unwrap();
            let mut space: *mut MagSpace = ptr::null_mut();
            assert_eq!(mag_space_from_json(json.as_ptr(), &mut space), MAG_OK);
            assert_eq!(mag_space_len(space), 2);

            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(mag_space_to_json(space, &mut out), MAG_OK);
            assert_eq!(
                take_string(out),
                r#"{"labels":["a","b"],"dist":[["0","4/3"],["4/3","0"]]}"#
            );

            let mut v = 0.0;
            assert_eq!(mag_magnitude(space, 50.0, &mut v), MAG_OK);
            assert!((v - 2.0).abs() < 1e-6);

            let mut f: *mut c_char = ptr::null_mut();
            assert_eq!(mag_formal_magnitude(space, &mut f), MAG_OK);
            assert_eq!(take_string(f), "2 / (1 + q^{4/3})");

            mag_space_free(space);
        }
    }

    #[test]
    fn join_uniform_and_limit() {
        unsafe {
            let r2 = CString::new("2").unwrap();
            let r1 = CString::new("1").unwrap();
            let mut a: *mut MagSpace = ptr::null_mut();
            let mut b: *mut MagSpace = ptr::null_mut();
            assert_eq!(mag_space_uniform(3, r2.as_ptr(), &mut a), MAG_OK);
            assert_eq!(mag_space_uniform(3, r1.as_ptr(), &mut b), MAG_OK);
            let mut j: *mut MagSpace = ptr::null_mut();
            assert_eq!(mag_space_join(a, b, &mut j), MAG_OK);
            assert_eq!(mag_space_len(j), 6);

            let mut limit: *mut c_char = ptr::null_mut();
            assert_eq!(mag_small_scale_limit(j, &mut limit), MAG_OK);
            assert_eq!(take_string(limit), "6/5");

            let mut report: *mut c_char = ptr::null_mut();
            assert_eq!(mag_one_point_report(j, &mut report), MAG_OK);
            let v: serde_json::Value =
                serde_json::from_str(&take_string(report)).unwrap();
            assert_eq!(v["one_point"], false);
            assert_eq!(v["limit"], "6/5");

            let mut p: *mut MagSpace = ptr::null_mut();
            assert_eq!(mag_space_product(j, j, &mut p), MAG_OK);
            assert_eq!(mag_space_len(p), 36);

            mag_space_free(a);
            mag_space_free(b);
            mag_space_free(j);
            mag_space_free(p);
        }
    }

    #[test]
    fn construct_target() {
        unsafe {
            let target = CString::new("6/5").unwrap();
            let tol = CString::new("1/1000000").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                mag_construct_target(target.as_ptr(), tol.as_ptr(), &mut out),
                MAG_OK
            );
            let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
            assert_eq!(v["n"], 3);
            assert_eq!(v["achieved"], "6/5");
        }
    }

    #[test]
    fn error_codes_and_messages() {
        unsafe {
            let mut space: *mut MagSpace = ptr::null_mut();
            // null argument
            assert_eq!(mag_space_from_json(ptr::null(), &mut space), MAG_ERR_ARGUMENT);
            // bad metric
            let bad =
                CString::new(r#"{"labels":["a","b"],"dist":[["0","1"],["2","0"]]}"#).unwrap();
            assert_eq!(mag_space_from_json(bad.as_ptr(), &mut space), MAG_ERR_PARSE);
            let msg = CStr::from_ptr(mag_last_error_message()).to_str().unwrap();
            assert!(msg.contains("symmetric"), "unexpected message: {msg}");
            // unachievable target
            let target = CString::new("1/2").unwrap();
            let tol = CString::new("1/100").unwrap();
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(
                mag_construct_target(target.as_ptr(), tol.as_ptr(), &mut out),
                MAG_ERR_PARSE
            );
            // singular scale
            let k33 = CString::new(
                serde_json::to_string(&magnitude::io::SpaceJson::from_space(
                    &FiniteMetricSpace::from_graph(&magnitude::Graph::complete_bipartite(3, 3))
                        .unwrap(),
                ))
                .unwrap(),
            )
            .unwrap();
            assert_eq!(mag_space_from_json(k33.as_ptr(), &mut space), MAG_OK);
            let mut v = 0.0;
            assert_eq!(
                mag_magnitude(space, std::f64::consts::LN_2, &mut v),
                MAG_ERR_MATH
            );
            mag_space_free(space);
        }
    }
}
