use std::ffi::{c_char, CStr, CString};
use std::ptr;

use hyperkit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
    hk_string_free(s);
    text
}

unsafe fn builtin(name: &str) -> *mut HkHypergroup {
    let mut h = ptr::null_mut();
    assert_eq!(hk_hypergroup_builtin(cstr(name).as_ptr(), &mut h), HkStatus::Ok);
    h
}

#[test]
fn ghj_weights_and_product() {
    unsafe {
        let h = builtin("ghj");
        assert_eq!(hk_hypergroup_size(h), 2);
        let mut w = [0.0; 2];
        assert_eq!(hk_hypergroup_weights(h, 1e-9, w.as_mut_ptr(), 2), HkStatus::Ok);
        assert!((w[1] - (2.0 + 3f64.sqrt())).abs() < 1e-9);
        let mut p = [0.0; 2];
        assert_eq!(hk_hypergroup_multiply(h, 1, 1, p.as_mut_ptr(), 2), HkStatus::Ok);
        assert!((p[0] - (2.0 - 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(hk_hypergroup_multiply(h, 5, 1, p.as_mut_ptr(), 2), HkStatus::InvalidArgument);
        let mut haar = [0.0; 2];
        assert_eq!(hk_hypergroup_haar(h, 1e-9, haar.as_mut_ptr(), 2), HkStatus::Ok);
        assert!((haar[0] + haar[1] - 1.0).abs() < 1e-12);
        let mut comm = false;
        assert_eq!(hk_hypergroup_is_commutative(h, 1e-9, &mut comm), HkStatus::Ok);
        assert!(comm);
        hk_hypergroup_free(h);
    }
}

#[test]
fn serialize_parse_validate() {
    unsafe {
        let h = builtin("conj-s3");
        let mut doc = ptr::null_mut();
        assert_eq!(hk_hypergroup_serialize(h, &mut doc), HkStatus::Ok);
        let text = take(doc);
        let mut back = ptr::null_mut();
        assert_eq!(hk_hypergroup_parse(cstr(&text).as_ptr(), 1e-9, &mut back), HkStatus::Ok);
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(hk_hypergroup_validate(back, 1e-9, &mut passed, &mut report), HkStatus::Ok);
        assert!(passed);
        assert!(take(report).contains("\"passed\": true"));
        hk_hypergroup_free(back);
        hk_hypergroup_free(h);

        let broken = text.replace("3.3333333333333331e-1", "4.3333333333333331e-1");
        assert_ne!(broken, text);
        let mut bad = ptr::null_mut();
        assert_eq!(hk_hypergroup_parse(cstr(&broken).as_ptr(), 1e-9, &mut bad), HkStatus::Axiom);
        assert!(bad.is_null());
        let msg = CStr::from_ptr(hk_last_error()).to_str().unwrap();
        assert!(msg.contains("convexity"), "{msg}");
    }
}

#[test]
fn characters_and_realizability() {
    unsafe {
        let h = builtin("ghj");
        let mut doc = ptr::null_mut();
        assert_eq!(hk_hypergroup_characters(h, 1e-9, 0xC0FFEE, &mut doc), HkStatus::Ok);
        assert!(take(doc).contains("\"character-analysis\""));
        hk_hypergroup_free(h);

        let s3 = builtin("s3-group");
        let mut doc = ptr::null_mut();
        assert_eq!(hk_hypergroup_characters(s3, 1e-9, 1, &mut doc), HkStatus::Precondition);
        hk_hypergroup_free(s3);

        let (mut found, mut a, mut b) = (true, 0u64, 0u64);
        let status = hk_fusion_realizable_two_element(2.0 - 3f64.sqrt(), 64, &mut found, &mut a, &mut b);
        assert_eq!(status, HkStatus::Ok);
        assert!(!found);
        let phi_inv_sq = (3.0 - 5f64.sqrt()) / 2.0;
        hk_fusion_realizable_two_element(phi_inv_sq, 64, &mut found, &mut a, &mut b);
        assert!(found);
        assert_eq!((a, b), (1, 1));
    }
}

#[test]
fn groupoid_juxtaposition() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(hk_groupoid_builtin(cstr("ising").as_ptr(), &mut g), HkStatus::Ok);
        let labels = [cstr("dual"), cstr("dual")];
        let ptrs: Vec<*const c_char> = labels.iter().map(|s| s.as_ptr()).collect();
        let mut doc = ptr::null_mut();
        assert_eq!(hk_groupoid_juxtapose(g, ptrs.as_ptr(), 2, &mut doc), HkStatus::Ok);
        let text = take(doc);
        assert!(text.contains("\"coeffs\": [5.0000000000000000e-1, 5.0000000000000000e-1, 0.0000000000000000e0]"), "{text}");
        let bad = [cstr("nope")];
        let ptrs: Vec<*const c_char> = bad.iter().map(|s| s.as_ptr()).collect();
        assert_eq!(hk_groupoid_juxtapose(g, ptrs.as_ptr(), 1, &mut doc), HkStatus::Mismatch);
        hk_groupoid_free(g);

        let h = builtin("ghj");
        let mut one = ptr::null_mut();
        assert_eq!(hk_groupoid_from_hypergroup(h, &mut one), HkStatus::Ok);
        hk_groupoid_free(one);
        hk_hypergroup_free(h);
    }
}

#[test]
fn admissible_indices_and_errors() {
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(hk_enumerate_admissible(4.0, 100, 1e-9, &mut doc), HkStatus::Ok);
        assert!(take(doc).contains("\"admissible-indices\""));
        assert_eq!(hk_enumerate_admissible(0.5, 100, 1e-9, &mut doc), HkStatus::Precondition);
        assert_eq!(hk_enumerate_admissible(4.0, 100, 1e-9, ptr::null_mut()), HkStatus::NullPointer);
        let mut h = ptr::null_mut();
        assert_eq!(hk_hypergroup_builtin(ptr::null(), &mut h), HkStatus::NullPointer);
        assert_eq!(hk_hypergroup_two_element(1.5, &mut h), HkStatus::Precondition);
        assert_eq!(hk_hypergroup_size(ptr::null()), 0);
        hk_hypergroup_free(ptr::null_mut());
        hk_string_free(ptr::null_mut());
        let v = CStr::from_ptr(hk_version()).to_str().unwrap();
        assert_eq!(v, env!("CARGO_PKG_VERSION"));
    }
}
