//! C ABI over capmono. Surfaces are opaque handles; every call returns a status code and leaves
//! a message for `capmono_last_error` on failure.

use capmono::config::RunConfig;
use capmono::energy::{energy_report, willmore_capillary};
use capmono::geom::Vec3;
use capmono::mono::ball::{ball_identity_residual, sphere_point_identity};
use capmono::mono::halfspace::simon_residual;
use capmono::surface::{contact_check, SampledSurface};
use capmono::wetted::WettedRegion;
use capmono::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapmonoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Geometry = 4,
    Numeric = 5,
    Panic = 6,
}

/// Sampled surface with its wetted region.
pub struct CapmonoSurface {
    surface: SampledSurface,
    region: WettedRegion,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> CapmonoStatus {
    match e {
        Error::Config(_) | Error::Parse(_) => CapmonoStatus::Config,
        Error::Domain(_) | Error::Contract(_) | Error::Ambient(_) | Error::NoHatBall => CapmonoStatus::InvalidArgument,
        Error::Geometry(_) | Error::Immersion { .. } | Error::UndefinedWinding { .. } => CapmonoStatus::Geometry,
        _ => CapmonoStatus::Numeric,
    }
}

fn guard<F: FnOnce() -> Result<(), CapmonoStatus>>(f: F) -> CapmonoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            CapmonoStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside capmono");
            CapmonoStatus::Panic
        }
    }
}

fn fail(e: Error) -> CapmonoStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> CapmonoStatus {
    set_error(&format!("null pointer: {what}"));
    CapmonoStatus::NullPointer
}

unsafe fn surface_ref<'a>(h: *const CapmonoSurface) -> Result<&'a CapmonoSurface, CapmonoStatus> {
    h.as_ref().ok_or_else(|| null("surface"))
}

unsafe fn point(p: *const f64) -> Result<Vec3, CapmonoStatus> {
    if p.is_null() {
        return Err(null("point"));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(Vec3::new(s[0], s[1], s[2]))
}

unsafe fn write_out(out: *mut f64, v: f64) -> Result<(), CapmonoStatus> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = v;
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success. Valid until the next call.
#[no_mangle]
pub extern "C" fn capmono_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Samples a generator. `param` is the cap radius R for "cap" and "hemisphere", the contact
/// latitude for "cap-ball", and ignored for "flat-disk-ball".
///
/// # Safety
/// `generator` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_surface_generate(
    generator: *const c_char,
    theta: f64,
    param: f64,
    amplitude: f64,
    mode: u32,
    nu: usize,
    nv: usize,
    out: *mut *mut CapmonoSurface,
) -> CapmonoStatus {
    guard(|| {
        if generator.is_null() {
            return Err(null("generator"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let name = CStr::from_ptr(generator).to_str().map_err(|_| {
            set_error("generator name is not UTF-8");
            CapmonoStatus::InvalidArgument
        })?;
        let mut c = RunConfig::default();
        c.generator.name = name.to_string();
        c.run.theta = theta;
        match name {
            "cap" | "hemisphere" => c.generator.radius = param,
            "cap-ball" => c.generator.latitude = param,
            _ => {}
        }
        c.generator.amplitude = amplitude;
        c.generator.mode = mode;
        c.quadrature.nu = nu;
        c.quadrature.nv = nv;
        c.validate().map_err(fail)?;
        let surface = c.sample().map_err(fail)?;
        let region = WettedRegion::from_surface(&surface).map_err(fail)?;
        *out = Box::into_raw(Box::new(CapmonoSurface { surface, region }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from `capmono_surface_generate` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn capmono_surface_free(h: *mut CapmonoSurface) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_surface_area(h: *const CapmonoSurface, out: *mut f64) -> CapmonoStatus {
    guard(|| write_out(out, surface_ref(h)?.surface.area()))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_boundary_length(h: *const CapmonoSurface, out: *mut f64) -> CapmonoStatus {
    guard(|| write_out(out, surface_ref(h)?.surface.boundary_length()))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_contact_check(h: *const CapmonoSurface, out: *mut f64) -> CapmonoStatus {
    guard(|| write_out(out, contact_check(&surface_ref(h)?.surface)))
}

/// Capillary Willmore energy of the surface's ambient.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_willmore(h: *const CapmonoSurface, out: *mut f64) -> CapmonoStatus {
    guard(|| {
        let s = surface_ref(h)?;
        write_out(out, willmore_capillary(&s.surface, &s.region).map_err(fail)?)
    })
}

/// Energy report as a JSON string; release it with `capmono_string_free`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn capmono_energy_report_json(h: *const CapmonoSurface, out: *mut *mut c_char) -> CapmonoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let s = surface_ref(h)?;
        let rep = energy_report(&s.surface, &s.region).map_err(fail)?;
        let json = serde_json::to_string(&rep).map_err(|e| {
            set_error(&e.to_string());
            CapmonoStatus::Numeric
        })?;
        *out = CString::new(json).unwrap_or_default().into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn capmono_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Normalized half-space identity residual between radii σ < ρ about `a` (3 doubles).
///
/// # Safety
/// `h` must be a live handle, `a` point to 3 doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn capmono_simon_residual(h: *const CapmonoSurface, a: *const f64, sigma: f64, rho: f64, out: *mut f64) -> CapmonoStatus {
    guard(|| {
        let s = surface_ref(h)?;
        let r = simon_residual(&s.surface, &s.region, point(a)?, sigma, rho).map_err(fail)?;
        write_out(out, r.normalized)
    })
}

/// Normalized ball identity residual between radii σ < ρ about `x0` (3 doubles).
///
/// # Safety
/// `h` must be a live handle, `x0` point to 3 doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn capmono_ball_identity_residual(h: *const CapmonoSurface, x0: *const f64, sigma: f64, rho: f64, out: *mut f64) -> CapmonoStatus {
    guard(|| {
        let s = surface_ref(h)?;
        let r = ball_identity_residual(&s.surface, &s.region, point(x0)?, sigma, rho).map_err(fail)?;
        write_out(out, r.normalized)
    })
}

/// Pointwise identity for two points of S² (3 doubles each).
///
/// # Safety
/// `x` and `x0` must point to 3 doubles and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn capmono_sphere_point_identity(x: *const f64, x0: *const f64, out: *mut f64) -> CapmonoStatus {
    guard(|| write_out(out, sphere_point_identity(point(x)?, point(x0)?).map_err(fail)?))
}
