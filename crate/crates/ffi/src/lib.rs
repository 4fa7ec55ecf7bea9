//! C ABI over `prohecke`.
//!
//! Algebras are opaque handles. Elements cross the boundary as the same JSON
//! strings the CLI uses. Every function returns a [`ProheckeStatus`]; on
//! failure the message is available from [`prohecke_last_error`]. Strings
//! returned through `out` must be released with [`prohecke_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use prohecke::bernstein::{theta, theta_hat};
use prohecke::center::{centrality, orbit, z_gamma, DEFAULT_ORBIT_BOUND};
use prohecke::hecke::AlgebraRef;
use prohecke::json::{element_from_json, hecke_to_value, parse_orientation, propp_from_json};
use prohecke::orientation::Orientation;
use prohecke::presets::{build, jucys_murphy, parse_preset, JmVariant};
use prohecke::verify::{run_suite, SuiteConfig};
use prohecke::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProheckeStatus {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    NonInvertible = 3,
    Datum = 4,
    GroupTooLarge = 5,
    Bound = 6,
    Validation = 7,
    Internal = 8,
    NullPointer = 9,
    InvalidUtf8 = 10,
    CheckFailed = 11,
    Panic = 12,
}

/// Opaque algebra handle.
pub struct ProheckeAlgebra {
    alg: AlgebraRef,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ProheckeStatus {
    match e {
        Error::Usage(_) => ProheckeStatus::Usage,
        Error::Parse { .. } => ProheckeStatus::Parse,
        Error::NonInvertible(_) => ProheckeStatus::NonInvertible,
        Error::Datum(_) => ProheckeStatus::Datum,
        Error::GroupTooLarge(_) => ProheckeStatus::GroupTooLarge,
        Error::Bound(_) => ProheckeStatus::Bound,
        Error::Validation(_) => ProheckeStatus::Validation,
        Error::Internal(_) => ProheckeStatus::Internal,
    }
}

struct Fail(ProheckeStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, catching panics and recording errors.
fn guard(f: impl FnOnce() -> Result<ProheckeStatus, Fail>) -> ProheckeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            if s == ProheckeStatus::Ok {
                set_error("");
            }
            s
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("panic inside prohecke");
            ProheckeStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(ProheckeStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(ProheckeStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

unsafe fn alg_arg<'a>(p: *const ProheckeAlgebra) -> Result<&'a ProheckeAlgebra, Fail> {
    p.as_ref().ok_or_else(|| Fail(ProheckeStatus::NullPointer, "algebra handle is null".into()))
}

unsafe fn write_out(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(ProheckeStatus::NullPointer, "`out` is null".into()));
    }
    let c = CString::new(s).map_err(|_| Fail(ProheckeStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn orientation_arg(a: &ProheckeAlgebra, p: *const c_char) -> Result<Orientation, Fail> {
    if p.is_null() {
        return Ok(Orientation::dominant());
    }
    Ok(parse_orientation(a.alg.weyl(), str_arg(p, "orientation")?)?)
}

/// Builds an algebra from a preset string such as `gln:3:a1`.
///
/// # Safety
/// `preset` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn prohecke_algebra_new(preset: *const c_char, out: *mut *mut ProheckeAlgebra) -> ProheckeStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(ProheckeStatus::NullPointer, "`out` is null".into()));
        }
        let alg = build(parse_preset(str_arg(preset, "preset")?)?)?;
        *out = Box::into_raw(Box::new(ProheckeAlgebra { alg }));
        Ok(ProheckeStatus::Ok)
    })
}

/// # Safety
/// `alg` must come from [`prohecke_algebra_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn prohecke_algebra_free(alg: *mut ProheckeAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn prohecke_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn prohecke_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn prohecke_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Product of two elements given as JSON.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn prohecke_mul(
    alg: *const ProheckeAlgebra,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let x = element_from_json(&h.alg, str_arg(a, "a")?)?;
        let y = element_from_json(&h.alg, str_arg(b, "b")?)?;
        write_out(out, hecke_to_value(&h.alg, &h.alg.mul(&x, &y)).to_string())?;
        Ok(ProheckeStatus::Ok)
    })
}

/// θ̂_o(g). A null `orientation` means the dominant spherical one.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn prohecke_theta_hat(
    alg: *const ProheckeAlgebra,
    orientation: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let o = orientation_arg(h, orientation)?;
        let g = propp_from_json(&h.alg, str_arg(g, "g")?)?;
        write_out(out, hecke_to_value(&h.alg, &theta_hat(&h.alg, &o, &g)?).to_string())?;
        Ok(ProheckeStatus::Ok)
    })
}

/// θ_o(g), for Laurent contexts.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn prohecke_theta(
    alg: *const ProheckeAlgebra,
    orientation: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let o = orientation_arg(h, orientation)?;
        let g = propp_from_json(&h.alg, str_arg(g, "g")?)?;
        write_out(out, hecke_to_value(&h.alg, &theta(&h.alg, &o, &g)?).to_string())?;
        Ok(ProheckeStatus::Ok)
    })
}

/// z_γ for the orbit of `x`, as JSON. Returns `CheckFailed` if the
/// centrality certificate fails.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn prohecke_center(
    alg: *const ProheckeAlgebra,
    x: *const c_char,
    out: *mut *mut c_char,
) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let x = propp_from_json(&h.alg, str_arg(x, "x")?)?;
        let orb = orbit(&h.alg, &x, DEFAULT_ORBIT_BOUND)?;
        let z = z_gamma(&h.alg, &Orientation::dominant(), &orb)?;
        write_out(out, hecke_to_value(&h.alg, &z).to_string())?;
        if centrality(&h.alg, &z)?.ok() {
            Ok(ProheckeStatus::Ok)
        } else {
            Err(Fail(ProheckeStatus::CheckFailed, "z_gamma is not central".into()))
        }
    })
}

/// The affine Jucys-Murphy element `J_i`, `1 <= i <= n`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn prohecke_jm(alg: *const ProheckeAlgebra, i: usize, out: *mut *mut c_char) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let j = jucys_murphy(&h.alg, i, JmVariant::Affine)?;
        write_out(out, hecke_to_value(&h.alg, &j).to_string())?;
        Ok(ProheckeStatus::Ok)
    })
}

/// Runs a verification suite with default sizes. The JSON report is
/// written even when a check fails, in which case `CheckFailed` is returned.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn prohecke_verify(
    alg: *const ProheckeAlgebra,
    suite: *const c_char,
    seed: u64,
    out: *mut *mut c_char,
) -> ProheckeStatus {
    guard(|| {
        let h = alg_arg(alg)?;
        let cfg = SuiteConfig { seed, ..SuiteConfig::default() };
        let rep = run_suite(str_arg(suite, "suite")?, &h.alg, &cfg)?;
        let text = serde_json::to_string(&rep).map_err(|e| Fail(ProheckeStatus::Internal, e.to_string()))?;
        write_out(out, text)?;
        if rep.pass {
            Ok(ProheckeStatus::Ok)
        } else {
            Err(Fail(ProheckeStatus::CheckFailed, format!("suite `{}` failed", rep.suite)))
        }
    })
}
