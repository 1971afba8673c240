//! C ABI over the toriclab library.
//!
//! Polytopes and fans are opaque handles created by `*_parse` and released by
//! `*_free`. Every fallible call returns a [`TlStatus`]; on failure a message is
//! available from [`tl_last_error`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released with
//! [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use toriclab::charfunc::four_color;
use toriclab::cohomology::{chern_number_c1c2, evaluate_volume, IntersectionTable};
use toriclab::combinatorics::{PolytopeError, SimplePolytope3};
use toriclab::commands::{fan_report_text, polytope_report_text, EXIT_OK, EXIT_PARSE};
use toriclab::cone::delzant_obstruction_witness;
use toriclab::fan::{parse_support, Convexity, FanError, UnimodularFan, DEFAULT_SEED};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Input parsed but failed validation or certification.
    Invalid = 4,
    OutOfRange = 5,
    /// An integer result does not fit in 64 bits.
    Overflow = 6,
    Panic = 7,
}

/// Opaque handle to a simple 3-polytope.
pub struct TlPolytope(SimplePolytope3);

/// Opaque handle to a certified unimodular complete fan.
pub struct TlFan(UnimodularFan);

/// Wall `{i1, i2}` with apexes `i` (positive side) and `i'`, and
/// `λ(i) + λ(i') = a1 λ(i1) + a2 λ(i2)`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TlWall {
    pub i1: usize,
    pub i2: usize,
    pub apex: usize,
    pub apex_opposite: usize,
    pub a1: i64,
    pub a2: i64,
    pub curvature: i64,
    /// 1 convex, 0 flat, -1 concave.
    pub convexity: i32,
}

/// Obstruction witness: a wall of positive curvature, extremal in the effective cone,
/// and a vertex of the dual polytope's face of the given degree.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TlWitness {
    pub i1: usize,
    pub i2: usize,
    pub a1: i64,
    pub a2: i64,
    pub curvature: i64,
    pub vertex: usize,
    pub degree: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: TlStatus, message: impl Into<String>) -> TlStatus {
    set_error(message);
    status
}

/// Runs `f`, clearing the last error first and turning panics into [`TlStatus::Panic`].
fn guard(f: impl FnOnce() -> TlStatus) -> TlStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            fail(TlStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, TlStatus> {
    if text.is_null() {
        return Err(fail(TlStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text).to_str().map_err(|e| fail(TlStatus::InvalidUtf8, e.to_string()))
}

fn to_i64(x: &BigInt) -> Result<i64, TlStatus> {
    i64::try_from(x).map_err(|_| fail(TlStatus::Overflow, format!("{x} does not fit in 64 bits")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> TlStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            TlStatus::Ok
        }
        Err(e) => fail(TlStatus::InvalidUtf8, e.to_string()),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn tl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Seed used by the command line tool when `TORICLAB_SEED` is unset.
#[no_mangle]
pub extern "C" fn tl_default_seed() -> u64 {
    DEFAULT_SEED
}

/// Parses a POLY3 document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_parse(text: *const c_char, out: *mut *mut TlPolytope) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return fail(TlStatus::NullPointer, "null output");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match SimplePolytope3::parse(text) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(TlPolytope(p)));
                TlStatus::Ok
            }
            Err(e @ PolytopeError::Parse(_)) => fail(TlStatus::Parse, e.to_string()),
            Err(e) => fail(TlStatus::Invalid, e.to_string()),
        }
    })
}

/// # Safety
/// `p` must come from [`tl_polytope_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_free(p: *mut TlPolytope) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Writes `(vertices, edges, facets)` to `out[0..3]`.
///
/// # Safety
/// `p` must be a live handle and `out` must point to three `size_t`.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_f_vector(p: *const TlPolytope, out: *mut usize) -> TlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let (v, e, f) = (*p).0.f_vector();
        std::slice::from_raw_parts_mut(out, 3).copy_from_slice(&[v, e, f]);
        TlStatus::Ok
    })
}

/// # Safety
/// `p` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_is_fullerene(p: *const TlPolytope, out: *mut bool) -> TlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        *out = (*p).0.is_fullerene();
        TlStatus::Ok
    })
}

/// Proper 4-coloring of the facets, written as 0..=3 (colors a..d) to `out[0..len]`.
/// `len` must equal the number of facets.
///
/// # Safety
/// `p` must be a live handle and `out` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_four_color(p: *const TlPolytope, out: *mut u8, len: usize) -> TlStatus {
    guard(|| {
        if p.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let poly = &(*p).0;
        if len != poly.facet_count() {
            return fail(TlStatus::OutOfRange, format!("buffer of {len} for {} facets", poly.facet_count()));
        }
        match four_color(&poly.dual_sphere()) {
            Ok(c) => {
                let dst = std::slice::from_raw_parts_mut(out, len);
                for (d, color) in dst.iter_mut().zip(c.colors()) {
                    *d = color.index() as u8;
                }
                TlStatus::Ok
            }
            Err(e) => fail(TlStatus::Invalid, e.to_string()),
        }
    })
}

/// Parses a FAN3 document and certifies it as unimodular and complete; `seed` drives
/// the completeness sampler.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_parse(text: *const c_char, seed: u64, out: *mut *mut TlFan) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return fail(TlStatus::NullPointer, "null output");
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match UnimodularFan::parse(text, seed) {
            Ok(f) => {
                *out = Box::into_raw(Box::new(TlFan(f)));
                TlStatus::Ok
            }
            Err(e @ FanError::Parse(_)) => fail(TlStatus::Parse, e.to_string()),
            Err(e) => fail(TlStatus::Invalid, e.to_string()),
        }
    })
}

/// # Safety
/// `f` must come from [`tl_fan_parse`] and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_free(f: *mut TlFan) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of rays, or 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_ray_count(f: *const TlFan) -> usize {
    f.as_ref().map_or(0, |f| f.0.ray_count())
}

/// Number of walls, or 0 for null.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_wall_count(f: *const TlFan) -> usize {
    f.as_ref().map_or(0, |f| f.0.walls().len())
}

/// Wall number `index`, in lexicographic order of `(i1, i2)`.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_wall(f: *const TlFan, index: usize, out: *mut TlWall) -> TlStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let walls = (*f).0.walls();
        let Some(w) = walls.get(index) else {
            return fail(TlStatus::OutOfRange, format!("wall {index} of {}", walls.len()));
        };
        let ints = (|| Ok::<_, TlStatus>((to_i64(&w.a[0])?, to_i64(&w.a[1])?, to_i64(&w.curvature)?)))();
        match ints {
            Ok((a1, a2, curvature)) => {
                *out = TlWall {
                    i1: w.vertices[0],
                    i2: w.vertices[1],
                    apex: w.apexes[0],
                    apex_opposite: w.apexes[1],
                    a1,
                    a2,
                    curvature,
                    convexity: match w.convexity {
                        Convexity::Convex => 1,
                        Convexity::Flat => 0,
                        Convexity::Concave => -1,
                    },
                };
                TlStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Sum of the wall curvatures.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_gauss_bonnet(f: *const TlFan, out: *mut i64) -> TlStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        match to_i64(&(*f).0.gauss_bonnet_sum()) {
            Ok(v) => {
                *out = v;
                TlStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// The Chern number `c1 c2` from the intersection table.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_chern_c1c2(f: *const TlFan, out: *mut i64) -> TlStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let fan = &(*f).0;
        match to_i64(&chern_number_c1c2(fan, &IntersectionTable::for_fan(fan))) {
            Ok(v) => {
                *out = v;
                TlStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Volume at the support parameters `support` (comma- or space-separated rationals),
/// or at the fan's own support line when `support` is null. Written as `p/q` or an
/// integer.
///
/// # Safety
/// `f` must be a live handle, `support` null or a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_volume(f: *const TlFan, support: *const c_char, out: *mut *mut c_char) -> TlStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let fan = &(*f).0;
        let c = if support.is_null() {
            match fan.support() {
                Some(c) => c.to_vec(),
                None => return fail(TlStatus::Invalid, "fan has no support parameters"),
            }
        } else {
            let text = match read_str(support) {
                Ok(t) => t,
                Err(s) => return s,
            };
            match parse_support(text) {
                Ok(c) => c,
                Err(e) => return fail(TlStatus::Parse, e.to_string()),
            }
        };
        match evaluate_volume(fan, &c) {
            Ok(v) => write_string(out, v.to_string()),
            Err(e) => fail(TlStatus::Invalid, e.to_string()),
        }
    })
}

/// The obstruction witness of the fan.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_witness(f: *const TlFan, out: *mut TlWitness) -> TlStatus {
    guard(|| {
        if f.is_null() || out.is_null() {
            return fail(TlStatus::NullPointer, "null argument");
        }
        let w = match delzant_obstruction_witness(&(*f).0) {
            Ok(w) => w,
            Err(e) => return fail(TlStatus::Invalid, e.to_string()),
        };
        let ints = (|| Ok::<_, TlStatus>((to_i64(&w.a[0])?, to_i64(&w.a[1])?, to_i64(&w.curvature)?)))();
        match ints {
            Ok((a1, a2, curvature)) => {
                *out = TlWitness { i1: w.wall[0], i2: w.wall[1], a1, a2, curvature, vertex: w.vertex, degree: w.degree };
                TlStatus::Ok
            }
            Err(s) => s,
        }
    })
}

unsafe fn report_json(outcome: toriclab::commands::Outcome, out: *mut *mut c_char) -> TlStatus {
    let code = outcome.exit_code;
    let status = write_string(out, outcome.render(true));
    if status != TlStatus::Ok {
        return status;
    }
    match code {
        EXIT_OK => TlStatus::Ok,
        EXIT_PARSE => fail(TlStatus::Parse, "input did not parse; see the report"),
        _ => fail(TlStatus::Invalid, "a verdict failed; see the report"),
    }
}

/// JSON report of a POLY3 document, identical to `toriclab polytope report --json`.
/// The report is written even when the status is `Parse` or `Invalid`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_polytope_report_json(text: *const c_char, out: *mut *mut c_char) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return fail(TlStatus::NullPointer, "null output");
        }
        match read_str(text) {
            Ok(t) => report_json(polytope_report_text(t), out),
            Err(s) => s,
        }
    })
}

/// JSON report of a FAN3 document, identical to `toriclab fan report --json`. The report
/// is written even when the status is `Parse` or `Invalid`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_fan_report_json(text: *const c_char, seed: u64, out: *mut *mut c_char) -> TlStatus {
    guard(|| {
        if out.is_null() {
            return fail(TlStatus::NullPointer, "null output");
        }
        match read_str(text) {
            Ok(t) => report_json(fan_report_text(t, seed), out),
            Err(s) => s,
        }
    })
}
