//! C ABI over the `mixres` core.
//!
//! Polynomials cross the boundary as opaque [`MixresPoly`] handles. Every
//! fallible call returns a [`MixresStatus`]; on failure the message is kept
//! per thread and read back with [`mixres_last_error_message`]. Strings
//! handed out by the library are released with [`mixres_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixres::face::degrees;
use mixres::fan::canonical_subdivision;
use mixres::newton::weight_min;
use mixres::report::{analyze, emit_report_json, InputEcho};
use mixres::toric::{certify, ProbeOptions};
use mixres::{Error, MixedPolynomial, WeightVector};
use num_complex::Complex64;
use serde_json::{json, Map};

/// Opaque handle to a parsed mixed polynomial.
pub struct MixresPoly {
    inner: MixedPolynomial,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixresStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The expression or an argument could not be read.
    ParseError = 3,
    /// A mathematical precondition failed (non-convenient germ, irregular
    /// cone, …). The message names the failing definition.
    DefinitionFailure = 4,
    InvalidArgument = 5,
    Internal = 6,
}

/// Radial and polar degree of a face function.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MixresFaceDegrees {
    pub rdeg: i64,
    /// Meaningful only when `has_pdeg` is set.
    pub pdeg: i64,
    pub has_pdeg: bool,
    pub strongly_mixed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: MixresStatus, msg: impl Into<String>) -> MixresStatus {
    set_error(msg.into());
    status
}

fn from_core(e: Error) -> MixresStatus {
    match (&e, e.failing_definition()) {
        (Error::Syntax { .. } | Error::IndexOutOfRange { .. }, _) => fail(MixresStatus::ParseError, e.to_string()),
        (_, Some(def)) => fail(
            MixresStatus::DefinitionFailure,
            format!("{e} (failing definition: {def})"),
        ),
        (_, None) => fail(MixresStatus::InvalidArgument, e.to_string()),
    }
}

/// Runs `body`, mapping panics to `Internal` and clearing the error slot on
/// success.
fn guard(body: impl FnOnce() -> Result<(), MixresStatus>) -> MixresStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            MixresStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(MixresStatus::Internal, "internal panic"),
    }
}

unsafe fn poly_ref<'a>(p: *const MixresPoly) -> Result<&'a MixedPolynomial, MixresStatus> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(MixresStatus::NullPointer, "null polynomial handle"))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, MixresStatus> {
    p.as_mut()
        .ok_or_else(|| fail(MixresStatus::NullPointer, "null output pointer"))
}

unsafe fn weight_arg(w: *const i64, n: usize) -> Result<WeightVector, MixresStatus> {
    if w.is_null() {
        return Err(fail(MixresStatus::NullPointer, "null weight pointer"));
    }
    let entries = std::slice::from_raw_parts(w, n).to_vec();
    WeightVector::new(entries).map_err(from_core)
}

fn hand_out(s: String, out: &mut *mut c_char) -> Result<(), MixresStatus> {
    *out = CString::new(s)
        .map_err(|_| fail(MixresStatus::Internal, "string contains NUL"))?
        .into_raw();
    Ok(())
}

fn json_string(bytes: Vec<u8>) -> Result<String, MixresStatus> {
    String::from_utf8(bytes).map_err(|_| fail(MixresStatus::Internal, "report is not UTF-8"))
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn mixres_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mixres_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `expr` in `n` variables into a new handle stored at `*out`.
///
/// # Safety
/// `expr` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_parse(expr: *const c_char, n: usize, out: *mut *mut MixresPoly) -> MixresStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if expr.is_null() {
            return Err(fail(MixresStatus::NullPointer, "null expression"));
        }
        let text = CStr::from_ptr(expr)
            .to_str()
            .map_err(|_| fail(MixresStatus::InvalidUtf8, "expression is not UTF-8"))?;
        if n == 0 {
            return Err(fail(MixresStatus::InvalidArgument, "n must be at least 1"));
        }
        let inner = MixedPolynomial::parse(text, n).map_err(from_core)?;
        *out = Box::into_raw(Box::new(MixresPoly { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `p` must come from [`mixres_poly_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_free(p: *mut MixresPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Canonical text of the polynomial; free with [`mixres_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_render(p: *const MixresPoly, out: *mut *mut c_char) -> MixresStatus {
    guard(|| {
        let out = out_ref(out)?;
        hand_out(poly_ref(p)?.render(), out)
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_num_vars(p: *const MixresPoly, out: *mut usize) -> MixresStatus {
    guard(|| {
        *out_ref(out)? = poly_ref(p)?.n();
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_term_count(p: *const MixresPoly, out: *mut usize) -> MixresStatus {
    guard(|| {
        *out_ref(out)? = poly_ref(p)?.len();
        Ok(())
    })
}

/// `f(z, z̄)` at the point with coordinates `re[j] + i·im[j]`.
///
/// # Safety
/// `re` and `im` must each hold `n` doubles; the outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn mixres_poly_evaluate(
    p: *const MixresPoly,
    re: *const f64,
    im: *const f64,
    n: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MixresStatus {
    guard(|| {
        let f = poly_ref(p)?;
        if re.is_null() || im.is_null() {
            return Err(fail(MixresStatus::NullPointer, "null coordinate array"));
        }
        if n != f.n() {
            return Err(fail(
                MixresStatus::InvalidArgument,
                format!("expected {} coordinates, got {n}", f.n()),
            ));
        }
        let (out_re, out_im) = (out_ref(out_re)?, out_ref(out_im)?);
        let z: Vec<Complex64> = std::slice::from_raw_parts(re, n)
            .iter()
            .zip(std::slice::from_raw_parts(im, n))
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect();
        let v = f.evaluate(&z);
        *out_re = v.re;
        *out_im = v.im;
        Ok(())
    })
}

/// `d(P)` for the weight vector of length `n`.
///
/// # Safety
/// `weight` must hold `n` integers; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mixres_weight_min(
    p: *const MixresPoly,
    weight: *const i64,
    n: usize,
    out: *mut i64,
) -> MixresStatus {
    guard(|| {
        let f = poly_ref(p)?;
        let w = weight_arg(weight, n)?;
        *out_ref(out)? = weight_min(f, &w).map_err(from_core)?;
        Ok(())
    })
}

/// Radial and polar degree of the face function `f_P`.
///
/// # Safety
/// `weight` must hold `n` integers; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn mixres_face_degrees(
    p: *const MixresPoly,
    weight: *const i64,
    n: usize,
    out: *mut MixresFaceDegrees,
) -> MixresStatus {
    guard(|| {
        let f = poly_ref(p)?;
        let w = weight_arg(weight, n)?;
        let rec = degrees(f, &w).map_err(from_core)?;
        *out_ref(out)? = MixresFaceDegrees {
            rdeg: rec.rdeg,
            pdeg: rec.pdeg.unwrap_or(0),
            has_pdeg: rec.pdeg.is_some(),
            strongly_mixed: rec.strongly_mixed,
        };
        Ok(())
    })
}

/// The `analyze` JSON report of a convenient germ.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_analyze_json(p: *const MixresPoly, out: *mut *mut c_char) -> MixresStatus {
    guard(|| {
        let out = out_ref(out)?;
        let f = poly_ref(p)?;
        let input = InputEcho {
            expression: f.render(),
            n: f.n(),
            options: Map::new(),
        };
        let report = analyze(f, input, "analyze").map_err(from_core)?;
        hand_out(json_string(emit_report_json(&report))?, out)
    })
}

/// The `certify` JSON report: the analysis plus the smoothness certificate
/// of the canonical subdivision. Same inputs and seed give the same bytes.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mixres_certify_json(
    p: *const MixresPoly,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> MixresStatus {
    guard(|| {
        let out = out_ref(out)?;
        let f = poly_ref(p)?;
        let input = InputEcho {
            expression: f.render(),
            n: f.n(),
            options: Map::from_iter([
                ("samples".to_string(), json!(samples)),
                ("seed".to_string(), json!(seed)),
            ]),
        };
        let mut report = analyze(f, input, "certify").map_err(from_core)?;
        let s = canonical_subdivision(f).map_err(from_core)?;
        let opts = ProbeOptions {
            starts: samples,
            seed,
            ..ProbeOptions::default()
        };
        report.certificate = Some(certify(f, &s, opts).map_err(from_core)?);
        hand_out(json_string(emit_report_json(&report))?, out)
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mixres_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
