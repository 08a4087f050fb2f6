//! Drives the C entry points the way a foreign binding would.

use std::ffi::{CStr, CString};
use std::ptr;

use k3cone_ffi::*;

unsafe fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
    k3c_string_free(ptr);
    s
}

#[test]
fn lattice_lifecycle_and_queries() {
    unsafe {
        let blocks = CString::new("DIAG(-4) U E8MINUS E8MINUS").unwrap();
        let mut handle: *mut K3cLattice = ptr::null_mut();
        assert_eq!(
            k3c_lattice_from_blocks(blocks.as_ptr(), &mut handle),
            K3cStatus::Ok
        );
        assert_eq!(k3c_lattice_rank(handle), 19);

        let (mut pos, mut neg) = (0usize, 0usize);
        assert_eq!(
            k3c_lattice_signature(handle, &mut pos, &mut neg),
            K3cStatus::Ok
        );
        assert_eq!((pos, neg), (1, 18));

        let mut det: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(k3c_lattice_determinant(handle, &mut det), K3cStatus::Ok);
        assert_eq!(take_string(det), "4");

        k3c_lattice_free(handle);
    }
}

#[test]
fn inner_product_and_parse() {
    unsafe {
        let def = CString::new(r#"{"label": "plane", "blocks": ["U"]}"#).unwrap();
        let mut handle: *mut K3cLattice = ptr::null_mut();
        assert_eq!(k3c_lattice_parse(def.as_ptr(), &mut handle), K3cStatus::Ok);

        let x = CString::new("1,-1").unwrap();
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            k3c_lattice_inner(handle, x.as_ptr(), x.as_ptr(), &mut out),
            K3cStatus::Ok
        );
        assert_eq!(take_string(out), "-2");

        // dimension mismatch surfaces as InvalidArgument with a message
        let bad = CString::new("1,2,3").unwrap();
        let mut out2: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            k3c_lattice_inner(handle, bad.as_ptr(), x.as_ptr(), &mut out2),
            K3cStatus::InvalidArgument
        );
        let msg = CStr::from_ptr(k3c_last_error_message()).to_str().unwrap();
        assert!(msg.contains("dimension"), "message: {msg}");

        k3c_lattice_free(handle);
    }
}

#[test]
fn roots_and_vinberg_json() {
    unsafe {
        let blocks = CString::new("U").unwrap();
        let mut handle: *mut K3cLattice = ptr::null_mut();
        assert_eq!(
            k3c_lattice_from_blocks(blocks.as_ptr(), &mut handle),
            K3cStatus::Ok
        );

        let v0 = CString::new("1,1").unwrap();
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            k3c_roots_at_level(handle, v0.as_ptr(), 0, &mut out),
            K3cStatus::Ok
        );
        assert_eq!(take_string(out), "[[-1,1],[1,-1]]");

        let mut run: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            k3c_vinberg_run(handle, v0.as_ptr(), 0, 0, 0, &mut run),
            K3cStatus::Ok
        );
        let payload = take_string(run);
        let value: serde_json::Value = serde_json::from_str(&payload).unwrap();
        assert_eq!(value["verdict"], serde_json::json!("TWO_REFLECTIVE"));
        assert_eq!(value["walls"], serde_json::json!([[1, -1]]));
        assert_eq!(value["chamber_rays"], serde_json::json!([[0, 1], [1, 1]]));

        k3c_lattice_free(handle);
    }
}

#[test]
fn null_handling() {
    unsafe {
        assert_eq!(k3c_lattice_rank(ptr::null()), 0);
        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            k3c_lattice_determinant(ptr::null(), &mut out),
            K3cStatus::NullPointer
        );
        let mut handle: *mut K3cLattice = ptr::null_mut();
        assert_eq!(
            k3c_lattice_from_blocks(ptr::null(), &mut handle),
            K3cStatus::NullPointer
        );
        k3c_lattice_free(ptr::null_mut());
        k3c_string_free(ptr::null_mut());
        let version = CStr::from_ptr(k3c_version()).to_str().unwrap();
        assert!(!version.is_empty());
    }
}
