//! C ABI over `chisig`.
//!
//! Every function returns a [`ChisigStatus`]. On failure a message is kept in
//! thread-local storage and can be read with [`chisig_last_error`]. Assemblies
//! are opaque handles released with [`chisig_assembly_free`]; strings returned
//! by the library are released with [`chisig_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chisig::assembly::{self, Classification};
use chisig::curvature::{curvature_at, model_chart};
use chisig::examples::{self, RandomFamily};
use chisig::flat_catalog::BoundaryClass;
use chisig::{Assembly, Error, Rational};
use num_traits::ToPrimitive;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChisigStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Violation = 5,
    Unsupported = 6,
    Numeric = 7,
    Overflow = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChisigClassification {
    Strict = 0,
    EqualityCertified = 1,
    ZeroChi = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChisigFamily {
    Real = 0,
    Holzapfel = 1,
    Mixed = 2,
    Complex = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ChisigDiagnosis {
    pub chi: i64,
    pub sigma: i64,
    pub slack: i64,
    /// A `ChisigClassification` value.
    pub classification: i32,
    /// Nonzero when the equality certificate uses only F4 and complex pieces.
    pub certificate_f4_complex_only: i32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ChisigCurvature {
    pub scalar: f64,
    pub wplus_norm2: f64,
    pub wminus_norm2: f64,
    pub traceless_ricci_norm2: f64,
    pub wplus_eigenvalues: [f64; 3],
    pub wminus_eigenvalues: [f64; 3],
    pub chi_density: f64,
    pub sigma_density: f64,
    pub delta_plus_density: f64,
    pub delta_minus_density: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ChisigBranchedCover {
    pub n: i64,
    pub chi: i64,
    pub c1_squared: i64,
    pub l_components: i64,
    pub l_self_intersection: i64,
    pub r_components: i64,
    pub r_self_intersection_num: i64,
    pub r_self_intersection_den: i64,
    pub logbmy_defect: i64,
    pub minus_l_squared: i64,
}

/// Opaque assembly handle.
pub struct ChisigAssembly {
    inner: Assembly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(ChisigStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::UnsupportedEta(_) => ChisigStatus::Unsupported,
            Error::Validation(_) | Error::InvalidPiece { .. } => ChisigStatus::Violation,
            Error::Json(_) => ChisigStatus::Parse,
            Error::Curvature(_) => ChisigStatus::Numeric,
            Error::Internal(_) => ChisigStatus::Internal,
            _ => ChisigStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ChisigStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ChisigStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside chisig".into());
            ChisigStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(ChisigStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure(ChisigStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(p: *const ChisigAssembly) -> Result<&'a Assembly, Failure> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("assembly"))
}

fn ratio_parts(r: &Rational) -> Result<(i64, i64), Failure> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Failure(ChisigStatus::Overflow, format!("{r} does not fit in 64 bits"))),
    }
}

unsafe fn emit(out: *mut *mut ChisigAssembly, a: chisig::Result<Assembly>) -> Result<(), Failure> {
    let out = out_ref(out, "out")?;
    *out = ptr::null_mut();
    let a = a?;
    *out = Box::into_raw(Box::new(ChisigAssembly { inner: a }));
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next chisig call on the same thread.
#[no_mangle]
pub extern "C" fn chisig_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn chisig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an assembly from JSON.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_assembly_from_json(json: *const c_char, out: *mut *mut ChisigAssembly) -> ChisigStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        emit(out, serde_json::from_str::<Assembly>(text).map_err(Error::from))
    })
}

/// # Safety
/// `a` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn chisig_assembly_free(a: *mut ChisigAssembly) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_build_m(m: usize, out: *mut *mut ChisigAssembly) -> ChisigStatus {
    guard(|| emit(out, examples::build_m(m)))
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_build_mprime(m: usize, out: *mut *mut ChisigAssembly) -> ChisigStatus {
    guard(|| emit(out, examples::build_mprime(m)))
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_build_z(n: i64, out: *mut *mut ChisigAssembly) -> ChisigStatus {
    guard(|| emit(out, examples::build_z(n)))
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_random_assembly(
    family: ChisigFamily,
    seed: u64,
    out: *mut *mut ChisigAssembly,
) -> ChisigStatus {
    let fam = match family {
        ChisigFamily::Real => RandomFamily::Real,
        ChisigFamily::Holzapfel => RandomFamily::Holzapfel,
        ChisigFamily::Mixed => RandomFamily::Mixed,
        ChisigFamily::Complex => RandomFamily::Complex,
    };
    guard(|| emit(out, Ok(fam.generate(seed))))
}

/// # Safety
/// `a` must be a live handle; `pieces` and `edges` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_assembly_counts(
    a: *const ChisigAssembly,
    pieces: *mut usize,
    edges: *mut usize,
) -> ChisigStatus {
    guard(|| {
        let a = handle(a)?;
        *out_ref(pieces, "pieces")? = a.pieces.len();
        *out_ref(edges, "edges")? = a.edges.len();
        Ok(())
    })
}

/// Serializes the assembly. Free the result with `chisig_string_free`.
///
/// # Safety
/// `a` must be a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_assembly_to_json(a: *const ChisigAssembly, out: *mut *mut c_char) -> ChisigStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let text = serde_json::to_string(handle(a)?).map_err(Error::from)?;
        *out = CString::new(text).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn chisig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the number of structural violations to `count`; zero means valid.
/// The first violation, if any, is available from `chisig_last_error`.
///
/// # Safety
/// `a` must be a live handle; `count` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_validate(a: *const ChisigAssembly, count: *mut usize) -> ChisigStatus {
    let mut first = None;
    let status = guard(|| {
        let v = assembly::validate_assembly(handle(a)?);
        *out_ref(count, "count")? = v.len();
        first = v.first().map(ToString::to_string);
        Ok(())
    });
    if let Some(msg) = first {
        set_error(msg);
    }
    status
}

/// # Safety
/// `a` must be a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_diagnose(a: *const ChisigAssembly, out: *mut ChisigDiagnosis) -> ChisigStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let d = assembly::diagnose(handle(a)?)?;
        let classification = match d.classification {
            Classification::Strict => ChisigClassification::Strict,
            Classification::EqualityCertified => ChisigClassification::EqualityCertified,
            Classification::ZeroChi => ChisigClassification::ZeroChi,
        };
        *out = ChisigDiagnosis {
            chi: d.chi,
            sigma: d.sigma,
            slack: d.slack,
            classification: classification as i32,
            certificate_f4_complex_only: d.certificate.as_ref().is_some_and(|c| c.f4_complex_only) as i32,
        };
        Ok(())
    })
}

/// Signature as a reduced fraction, by the L2 route (`route = 0`) or the
/// boundary-defect route (`route = 1`).
///
/// # Safety
/// `a` must be a live handle; `num` and `den` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_signature(
    a: *const ChisigAssembly,
    route: i32,
    num: *mut i64,
    den: *mut i64,
) -> ChisigStatus {
    guard(|| {
        let a = handle(a)?;
        let s = match route {
            0 => assembly::signature_l2_route(a)?,
            1 => assembly::signature_novikov_route(a)?,
            _ => return Err(Failure(ChisigStatus::InvalidArgument, format!("unknown route {route}"))),
        };
        let (n, d) = ratio_parts(&s)?;
        *out_ref(num, "num")? = n;
        *out_ref(den, "den")? = d;
        Ok(())
    })
}

/// Eta invariant of a boundary class given as JSON, e.g.
/// `{"flat":{"letter":"C","sign":1}}`.
///
/// # Safety
/// `boundary_json` must be NULL or NUL-terminated; `num`, `den` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_eta(boundary_json: *const c_char, num: *mut i64, den: *mut i64) -> ChisigStatus {
    guard(|| {
        let b: BoundaryClass = serde_json::from_str(str_arg(boundary_json, "boundary_json")?).map_err(Error::from)?;
        let (n, d) = ratio_parts(&b.eta()?)?;
        *out_ref(num, "num")? = n;
        *out_ref(den, "den")? = d;
        Ok(())
    })
}

/// Curvature invariants of a model chart at `point[0..4]`. A `step` of zero
/// selects the library default.
///
/// # Safety
/// `model` must be NUL-terminated, `point` must hold 4 doubles, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_curvature(
    model: *const c_char,
    point: *const f64,
    step: f64,
    out: *mut ChisigCurvature,
) -> ChisigStatus {
    guard(|| {
        let chart = model_chart(str_arg(model, "model")?)?;
        if point.is_null() {
            return Err(null("point"));
        }
        let p: [f64; 4] = std::slice::from_raw_parts(point, 4).try_into().expect("four coordinates");
        let step = if step == 0.0 { chisig::curvature::DEFAULT_STEP } else { step };
        let out = out_ref(out, "out")?;
        let r = curvature_at(&chart, &p, step)?;
        *out = ChisigCurvature {
            scalar: r.scalar,
            wplus_norm2: r.wplus_norm2,
            wminus_norm2: r.wminus_norm2,
            traceless_ricci_norm2: r.traceless_ricci_norm2,
            wplus_eigenvalues: r.wplus_eigenvalues,
            wminus_eigenvalues: r.wminus_eigenvalues,
            chi_density: r.chi_density,
            sigma_density: r.sigma_density,
            delta_plus_density: r.delta_plus_density,
            delta_minus_density: r.delta_minus_density,
        };
        Ok(())
    })
}

/// # Safety
/// `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn chisig_branched_cover(n: i64, out: *mut ChisigBranchedCover) -> ChisigStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let r = examples::branched_cover_invariants(n)?;
        let (rn, rd) = ratio_parts(&r.r_self_intersection)?;
        *out = ChisigBranchedCover {
            n: r.n,
            chi: r.chi,
            c1_squared: r.c1_squared,
            l_components: r.l_components,
            l_self_intersection: r.l_self_intersection,
            r_components: r.r_components,
            r_self_intersection_num: rn,
            r_self_intersection_den: rd,
            logbmy_defect: r.logbmy_defect,
            minus_l_squared: r.minus_l_squared,
        };
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_on_null_out() {
        let s = unsafe { chisig_build_m(1, ptr::null_mut()) };
        assert_eq!(s, ChisigStatus::NullPointer);
        assert!(!chisig_last_error().is_null());
    }

    #[test]
    fn error_is_cleared_on_success() {
        let mut a = ptr::null_mut();
        unsafe {
            assert_eq!(chisig_build_z(1, &mut a), ChisigStatus::InvalidArgument);
            assert!(a.is_null());
            assert_eq!(chisig_build_z(2, &mut a), ChisigStatus::Ok);
            assert!(chisig_last_error().is_null());
            chisig_assembly_free(a);
        }
    }
}
