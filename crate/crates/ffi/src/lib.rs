//! C ABI for the verification harness.
//!
//! Every entry point returns a `ShalikaStatus`. On failure the message is kept
//! per thread and can be read with `shalika_last_error`. Strings returned to the
//! caller must be released with `shalika_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shalika_core::cli::{run, ConfigLayer, Report, SuiteConfig};
use shalika_core::refine::{all_refinements, SatakeParameter};
use shalika_core::shalikazeta::zeta::w_value_closed;
use shalika_core::shalikazeta::{
    shalika_test_vector, zeta_iwahori_closed, zeta_iwahori_oracle, zeta_parahoric_closed, zeta_parahoric_oracle,
    TwistCharacter,
};
use shalika_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShalikaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownSuite = 3,
    InvalidPrime = 4,
    Computation = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShalikaZetaKind {
    Iwahori = 0,
    Parahoric = 1,
}

/// Opaque run configuration.
pub struct ShalikaConfig(SuiteConfig);

/// Opaque report of a run.
pub struct ShalikaReport(Report);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', "?")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ShalikaStatus {
    match e {
        Error::UnknownSuite(_) => ShalikaStatus::UnknownSuite,
        Error::InvalidPrime(_) => ShalikaStatus::InvalidPrime,
        Error::Config(_) | Error::Precondition(_) => ShalikaStatus::InvalidArgument,
        _ => ShalikaStatus::Computation,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (ShalikaStatus, String)>) -> ShalikaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ShalikaStatus::Ok
        }
        Ok(Err((s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("panic inside shalika".into());
            ShalikaStatus::Panic
        }
    }
}

fn core(e: Error) -> (ShalikaStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (ShalikaStatus, String) {
    (ShalikaStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (ShalikaStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s).to_str().map_err(|_| (ShalikaStatus::InvalidArgument, "string is not UTF-8".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Last error message on this thread, or NULL. Valid until the next call on the thread.
#[no_mangle]
pub extern "C" fn shalika_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn shalika_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shalika_config_default(out: *mut *mut ShalikaConfig) -> ShalikaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = Box::into_raw(Box::new(ShalikaConfig(SuiteConfig::default())));
        Ok(())
    })
}

/// Applies a flat TOML layer (same keys as the CLI config file) and validates.
///
/// # Safety
/// `cfg` must be a live config handle and `toml` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn shalika_config_apply_toml(cfg: *mut ShalikaConfig, toml: *const c_char) -> ShalikaStatus {
    guard(|| {
        let cfg = cfg.as_mut().ok_or_else(null)?;
        let layer = ConfigLayer::from_toml(read_str(toml)?).map_err(core)?;
        let next = cfg.0.clone().apply(&layer);
        next.validate().map_err(core)?;
        cfg.0 = next;
        Ok(())
    })
}

/// # Safety
/// `cfg` must come from `shalika_config_default` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn shalika_config_free(cfg: *mut ShalikaConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// Runs the configured suites. A report with failed cases still returns `Ok`.
///
/// # Safety
/// `cfg` must be a live config handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shalika_run(cfg: *const ShalikaConfig, out: *mut *mut ShalikaReport) -> ShalikaStatus {
    guard(|| {
        let cfg = cfg.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let (report, _) = run(&cfg.0).map_err(core)?;
        *out = Box::into_raw(Box::new(ShalikaReport(report)));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle; `passed` and `failed` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn shalika_report_counts(r: *const ShalikaReport, passed: *mut usize, failed: *mut usize) -> ShalikaStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(null)?;
        if passed.is_null() || failed.is_null() {
            return Err(null());
        }
        *passed = r.0.passed;
        *failed = r.0.failed;
        Ok(())
    })
}

/// The report as JSON; free with `shalika_string_free`.
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn shalika_report_json(r: *const ShalikaReport, out: *mut *mut c_char) -> ShalikaStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = to_c(r.0.to_json());
        Ok(())
    })
}

/// # Safety
/// `r` must come from `shalika_run` or be NULL.
#[no_mangle]
pub unsafe extern "C" fn shalika_report_free(r: *mut ShalikaReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Counts refinements and spin refinements of a generic parameter of GL(2n).
///
/// # Safety
/// `total` and `spin` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn shalika_census(n: usize, p: u64, total: *mut usize, spin: *mut usize) -> ShalikaStatus {
    guard(|| {
        if total.is_null() || spin.is_null() {
            return Err(null());
        }
        if !(1..=3).contains(&n) {
            return Err((ShalikaStatus::InvalidArgument, format!("n = {n} is outside 1..=3")));
        }
        if ![2, 3, 5].contains(&p) {
            return Err(core(Error::InvalidPrime(p)));
        }
        let rs = all_refinements(&SatakeParameter::generic_ag(n, p));
        let mut s = 0;
        for r in &rs {
            if r.is_spin().map_err(core)? {
                s += 1;
            }
        }
        *total = rs.len();
        *spin = s;
        Ok(())
    })
}

/// Compares the brute-force zeta integral with its closed form at n = 1.
/// `beta = 0` selects the trivial character (parahoric only). The closed form
/// is written to `closed` when it is non-NULL.
///
/// # Safety
/// `agree` must be valid; `closed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn shalika_zeta_check(
    kind: ShalikaZetaKind,
    p: u64,
    beta: u32,
    chi_index: usize,
    shells: u32,
    agree: *mut bool,
    closed: *mut *mut c_char,
) -> ShalikaStatus {
    guard(|| {
        if agree.is_null() {
            return Err(null());
        }
        if ![2, 3, 5].contains(&p) {
            return Err(core(Error::InvalidPrime(p)));
        }
        let chi = if beta == 0 {
            TwistCharacter::trivial(p)
        } else {
            TwistCharacter::all_primitive(p, beta)
                .into_iter()
                .nth(chi_index)
                .ok_or_else(|| (ShalikaStatus::InvalidArgument, format!("no primitive character #{chi_index} mod {p}^{beta}")))?
        };
        let s = SatakeParameter::generic_ag(1, p);
        let (o, c) = match kind {
            ShalikaZetaKind::Iwahori => (
                zeta_iwahori_oracle(&shalika_test_vector(&s), &chi, beta + shells).map_err(core)?,
                zeta_iwahori_closed(&w_value_closed(&s, beta).map_err(core)?, &chi, 1).map_err(core)?,
            ),
            ShalikaZetaKind::Parahoric => (
                zeta_parahoric_oracle(&s, &chi, 2 + shells).map_err(core)?,
                zeta_parahoric_closed(&s, &chi, 0).map_err(core)?,
            ),
        };
        *agree = o.value == c.value;
        if !closed.is_null() {
            *closed = to_c(c.value.to_string());
        }
        Ok(())
    })
}
