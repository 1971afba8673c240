use std::ffi::{c_char, CStr, CString};
use std::ptr;

use toriclab::corpus;
use toriclab_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = tl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { tl_string_free(p) };
    s
}

fn fan(name: &str) -> *mut TlFan {
    let text = cstr(corpus::fan(name).unwrap().text);
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { tl_fan_parse(text.as_ptr(), tl_default_seed(), &mut f) }, TlStatus::Ok);
    f
}

#[test]
fn polytope_queries() {
    let text = cstr(corpus::polytope("dodecahedron").unwrap().text);
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(tl_polytope_parse(text.as_ptr(), &mut p), TlStatus::Ok);
        let mut fv = [0usize; 3];
        assert_eq!(tl_polytope_f_vector(p, fv.as_mut_ptr()), TlStatus::Ok);
        assert_eq!(fv, [20, 30, 12]);
        let mut full = false;
        assert_eq!(tl_polytope_is_fullerene(p, &mut full), TlStatus::Ok);
        assert!(full);
        let mut colors = [9u8; 12];
        assert_eq!(tl_polytope_four_color(p, colors.as_mut_ptr(), 12), TlStatus::Ok);
        assert!(colors.iter().all(|&c| c < 4));
        assert_eq!(tl_polytope_four_color(p, colors.as_mut_ptr(), 11), TlStatus::OutOfRange);
        tl_polytope_free(p);
    }
}

#[test]
fn fan_queries() {
    let f = fan("blowup-cp3");
    unsafe {
        assert_eq!(tl_fan_ray_count(f), 5);
        assert_eq!(tl_fan_wall_count(f), 9);
        let mut gb = 0;
        assert_eq!(tl_fan_gauss_bonnet(f, &mut gb), TlStatus::Ok);
        let mut chern = 0;
        assert_eq!(tl_fan_chern_c1c2(f, &mut chern), TlStatus::Ok);
        assert_eq!((gb, chern), (24, 24));
        let mut total = 0;
        for k in 0..tl_fan_wall_count(f) {
            let mut w = TlWall::default();
            assert_eq!(tl_fan_wall(f, k, &mut w), TlStatus::Ok);
            assert_eq!(w.curvature, 2 - w.a1 - w.a2);
            total += w.curvature;
        }
        assert_eq!(total, 24);
        let mut w = TlWall::default();
        assert_eq!(tl_fan_wall(f, 9, &mut w), TlStatus::OutOfRange);
        let mut out = ptr::null_mut();
        assert_eq!(tl_fan_volume(f, ptr::null(), &mut out), TlStatus::Ok);
        assert_eq!(take_string(out), "21/2");
        let mut witness = TlWitness::default();
        assert_eq!(tl_fan_witness(f, &mut witness), TlStatus::Ok);
        assert_eq!((witness.vertex, witness.degree), (4, 3));
        tl_fan_free(f);
    }
}

#[test]
fn volume_errors() {
    let f = fan("cube");
    unsafe {
        let mut out = ptr::null_mut();
        let c = cstr("1 1 1 1 2 2");
        assert_eq!(tl_fan_volume(f, c.as_ptr(), &mut out), TlStatus::Ok);
        assert_eq!(take_string(out), "16");
        let c = cstr("1 -1 1 1 1 1");
        assert_eq!(tl_fan_volume(f, c.as_ptr(), &mut out), TlStatus::Invalid);
        assert!(last_error().contains("non-positive"));
        let c = cstr("1 x");
        assert_eq!(tl_fan_volume(f, c.as_ptr(), &mut out), TlStatus::Parse);
        tl_fan_free(f);
    }
}

#[test]
fn parse_failures_and_null_handling() {
    let mut f = ptr::null_mut();
    unsafe {
        let bad = cstr("garbage");
        assert_eq!(tl_fan_parse(bad.as_ptr(), 1, &mut f), TlStatus::Parse);
        assert!(!last_error().is_empty());
        let text = corpus::fan("cp3").unwrap().text.replace("R 3: -1 -1 -1", "R 3: 1 1 2");
        let text = cstr(&text);
        assert_eq!(tl_fan_parse(text.as_ptr(), 1, &mut f), TlStatus::Invalid);
        assert!(f.is_null());
        assert_eq!(tl_fan_parse(ptr::null(), 1, &mut f), TlStatus::NullPointer);
        let mut p = ptr::null_mut();
        let invalid = [0xffu8, 0];
        assert_eq!(tl_polytope_parse(invalid.as_ptr() as *const c_char, &mut p), TlStatus::InvalidUtf8);
        let mut gb = 0;
        assert_eq!(tl_fan_gauss_bonnet(ptr::null(), &mut gb), TlStatus::NullPointer);
        assert_eq!(tl_fan_ray_count(ptr::null()), 0);
        tl_fan_free(ptr::null_mut());
        tl_polytope_free(ptr::null_mut());
        tl_string_free(ptr::null_mut());
        // success clears the error
        let good = cstr(corpus::fan("cp3").unwrap().text);
        assert_eq!(tl_fan_parse(good.as_ptr(), 1, &mut f), TlStatus::Ok);
        assert!(tl_last_error().is_null());
        tl_fan_free(f);
    }
}

#[test]
fn json_reports() {
    let text = cstr(corpus::fan("cp1xf2").unwrap().text);
    let mut out = ptr::null_mut();
    let status = unsafe { tl_fan_report_json(text.as_ptr(), 5, &mut out) };
    assert_eq!(status, TlStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["sections"]["curvature"]["gauss_bonnet_sum"], 24);
    assert_eq!(v["passed"], true);

    let bad = cstr("poly3 x\nfacets 1\n");
    let status = unsafe { tl_polytope_report_json(bad.as_ptr(), &mut out) };
    assert_eq!(status, TlStatus::Parse);
    let v: serde_json::Value = serde_json::from_str(&take_string(out)).unwrap();
    assert_eq!(v["passed"], false);

    let cube = cstr(corpus::polytope("cube").unwrap().text);
    assert_eq!(unsafe { tl_polytope_report_json(cube.as_ptr(), &mut out) }, TlStatus::Ok);
    assert!(take_string(out).contains("\"quasitoric\""));
}
