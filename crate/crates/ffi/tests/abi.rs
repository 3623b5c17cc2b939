use std::ffi::{CStr, CString};
use std::ptr;

use shalika_ffi::*;

#[test]
fn census_counts() {
    let (mut total, mut spin) = (0usize, 0usize);
    for (n, t, s) in [(1, 2, 2), (2, 24, 8), (3, 720, 48)] {
        assert_eq!(unsafe { shalika_census(n, 3, &mut total, &mut spin) }, ShalikaStatus::Ok);
        assert_eq!((total, spin), (t, s));
    }
}

#[test]
fn errors_set_last_error() {
    let (mut total, mut spin) = (0usize, 0usize);
    assert_eq!(unsafe { shalika_census(2, 7, &mut total, &mut spin) }, ShalikaStatus::InvalidPrime);
    let msg = unsafe { CStr::from_ptr(shalika_last_error()) }.to_str().unwrap();
    assert!(msg.contains('7'));
    assert_eq!(unsafe { shalika_census(2, 3, ptr::null_mut(), &mut spin) }, ShalikaStatus::NullPointer);
    assert_eq!(unsafe { shalika_census(2, 3, &mut total, &mut spin) }, ShalikaStatus::Ok);
    assert!(shalika_last_error().is_null());
}

#[test]
fn zeta_check_agrees() {
    let mut agree = false;
    let mut closed = ptr::null_mut();
    let st = unsafe { shalika_zeta_check(ShalikaZetaKind::Iwahori, 3, 1, 0, 2, &mut agree, &mut closed) };
    assert_eq!(st, ShalikaStatus::Ok);
    assert!(agree);
    assert!(!closed.is_null());
    unsafe { shalika_string_free(closed) };
    let st = unsafe { shalika_zeta_check(ShalikaZetaKind::Iwahori, 3, 1, 99, 2, &mut agree, ptr::null_mut()) };
    assert_eq!(st, ShalikaStatus::InvalidArgument);
}

#[test]
fn run_through_handles() {
    let mut cfg = ptr::null_mut();
    unsafe {
        assert_eq!(shalika_config_default(&mut cfg), ShalikaStatus::Ok);
        let bad = CString::new("suites = [\"nope\"]").unwrap();
        assert_eq!(shalika_config_apply_toml(cfg, bad.as_ptr()), ShalikaStatus::UnknownSuite);
        let layer = CString::new("n = 1\nprimes = [3]\nsuites = [\"weyl-transfer\", \"comparison\"]").unwrap();
        assert_eq!(shalika_config_apply_toml(cfg, layer.as_ptr()), ShalikaStatus::Ok);
        let mut rep = ptr::null_mut();
        assert_eq!(shalika_run(cfg, &mut rep), ShalikaStatus::Ok);
        let (mut p, mut f) = (0usize, 0usize);
        assert_eq!(shalika_report_counts(rep, &mut p, &mut f), ShalikaStatus::Ok);
        assert!(p > 0 && f == 0);
        let mut js = ptr::null_mut();
        assert_eq!(shalika_report_json(rep, &mut js), ShalikaStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(js).to_str().unwrap()).unwrap();
        assert_eq!(v["suites"].as_array().unwrap().len(), 2);
        shalika_string_free(js);
        shalika_report_free(rep);
        shalika_config_free(cfg);
        assert_eq!(shalika_run(ptr::null(), &mut rep), ShalikaStatus::NullPointer);
    }
}
