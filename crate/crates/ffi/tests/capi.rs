use std::ffi::{CStr, CString};
use std::ptr;

use formdepth_ffi::*;

fn ring(p: u64, vars: &str) -> *mut FdRing {
    let vars = CString::new(vars).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fd_ring_new(p, vars.as_ptr(), &mut out) }, FdStatus::Ok);
    out
}

fn poly(r: *const FdRing, s: &str) -> *mut FdPoly {
    let s = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fd_poly_parse(r, s.as_ptr(), &mut out) }, FdStatus::Ok);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(fd_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn handles_round_trip() {
    let r = ring(0, "x, y, z");
    let f = poly(r, "x^2+y*z");
    let g = poly(r, "y^2+x*z");
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { fd_poly_mul(f, g, &mut h) }, FdStatus::Ok);
    let text = unsafe { fd_poly_to_string(h) };
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    unsafe { fd_string_free(text) };
    let back = poly(r, &s);
    let text2 = unsafe { fd_poly_to_string(back) };
    assert_eq!(unsafe { CStr::from_ptr(text2) }.to_str().unwrap(), s);

    let mut smooth = false;
    assert_eq!(unsafe { fd_is_smooth(f, &mut smooth) }, FdStatus::Ok);
    assert!(smooth);
    let mut rty = false;
    let forms = [f as *const FdPoly, g as *const FdPoly];
    assert_eq!(unsafe { fd_rty(forms.as_ptr(), 2, &mut rty) }, FdStatus::Ok);
    assert!(rty);
    let mut free = true;
    assert_eq!(unsafe { fd_is_free_divisor(h, &mut free) }, FdStatus::Ok);
    assert!(!free);
    unsafe {
        fd_string_free(text2);
        for p in [f, g, h, back] {
            fd_poly_free(p);
        }
        fd_ring_free(r);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let vars = CString::new("x,y").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fd_ring_new(32004, vars.as_ptr(), &mut out) }, FdStatus::Spec);
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    let r = ring(7, "x,y,z");
    let bad = CString::new("x^2 +* y").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { fd_poly_parse(r, bad.as_ptr(), &mut p) }, FdStatus::Parse);
    assert!(last_error().contains("parse"));
    assert_eq!(unsafe { fd_poly_parse(ptr::null(), bad.as_ptr(), &mut p) }, FdStatus::NullPointer);

    let cubic = poly(r, "x^7+y^7+z^7");
    let mut b = false;
    assert_eq!(unsafe { fd_is_smooth(cubic, &mut b) }, FdStatus::Characteristic);

    let other = ring(7, "u,v,w");
    let q = poly(other, "u");
    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { fd_poly_mul(cubic, q, &mut prod) }, FdStatus::RingMismatch);

    let lin = poly(r, "x");
    assert_eq!(unsafe { fd_is_smooth(lin, &mut b) }, FdStatus::Ok);
    assert!(last_error().is_empty());
    unsafe {
        fd_poly_free(cubic);
        fd_poly_free(q);
        fd_poly_free(lin);
        fd_ring_free(r);
        fd_ring_free(other);
        fd_poly_free(ptr::null_mut());
        fd_string_free(ptr::null_mut());
    }
}

fn run(job: &str, command: Option<&str>) -> (i32, String) {
    let job = CString::new(job).unwrap();
    let cmd = command.map(|c| CString::new(c).unwrap());
    let mut out = ptr::null_mut();
    let code = unsafe { fd_run_job(job.as_ptr(), cmd.as_ref().map_or(ptr::null(), |c| c.as_ptr()), &mut out) };
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { fd_string_free(out) };
    (code, text)
}

#[test]
fn jobs_match_the_command_line() {
    let (code, rep) = run(
        r#"{"field":{"type":"rational"},"variables":["x","y","z"],"forms":["x^2+y*z","y^2+x*z"]}"#,
        None,
    );
    assert_eq!(code, 0);
    assert!(rep.contains(r#""rty": true"#));

    let (code, rep) = run(r#"{"field":{"type":"prime","p":3},"variables":["x","y"],"forms":["x","y","x+y"]}"#, Some("arrangement"));
    assert_eq!(code, 1);
    assert!(rep.contains("characteristic"));

    let (code, _) = run("not json", None);
    assert_eq!(code, 2);
    let (code, _) = run(r#"{"field":{"type":"rational"},"variables":["x"]}"#, Some("no-such-command"));
    assert_eq!(code, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { fd_run_job(ptr::null(), ptr::null(), &mut out) }, -1);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/formdepth.h")).unwrap();
    for name in [
        "fd_ring_new",
        "fd_ring_free",
        "fd_poly_parse",
        "fd_poly_free",
        "fd_poly_mul",
        "fd_poly_to_string",
        "fd_is_smooth",
        "fd_is_free_divisor",
        "fd_rty",
        "fd_run_job",
        "fd_string_free",
        "fd_last_error",
        "typedef struct FdRing FdRing",
        "FD_STATUS_OK = 0",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
