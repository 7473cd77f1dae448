use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use sigforge_ffi::*;

fn trefoil() -> *mut SfSeifert {
    let mut h = ptr::null_mut();
    let st = unsafe { sf_seifert_new([-1i64, 1, 0, -1].as_ptr(), 2, SfParity::Classical, &mut h) };
    assert_eq!(st, SfStatus::Ok);
    h
}

fn last_error() -> String {
    let p = sf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn trefoil_roundtrip() {
    let h = trefoil();
    unsafe {
        assert_eq!(sf_seifert_dim(h), 2);
        let mut buf = [0i64; 4];
        assert_eq!(sf_seifert_entries(h, buf.as_mut_ptr(), 4), SfStatus::Ok);
        assert_eq!(buf, [-1, 1, 0, -1]);
        assert_eq!(sf_seifert_entries(h, buf.as_mut_ptr(), 3), SfStatus::BufferTooSmall);

        let mut sig = 0i64;
        assert_eq!(sf_signature_at_rational(h, 0, 1, &mut sig), SfStatus::Ok);
        assert_eq!(sig, -2);
        assert_eq!(sf_signature_at_rational(h, 3, 4, &mut sig), SfStatus::Ok);
        assert_eq!(sig, 0);
        assert_eq!(sf_signature_at_rational(h, 1, 0, &mut sig), SfStatus::InvalidArgument);
        assert_eq!(sf_signature_at_rational(h, 2, 1, &mut sig), SfStatus::OutOfDomain);

        let mut coeffs = [0i64; 3];
        let mut len = 0usize;
        assert_eq!(sf_alexander(h, coeffs.as_mut_ptr(), 1, &mut len), SfStatus::BufferTooSmall);
        assert_eq!(len, 3);
        assert_eq!(sf_alexander(h, coeffs.as_mut_ptr(), 3, &mut len), SfStatus::Ok);
        assert_eq!(coeffs, [1, -1, 1]);

        let mut s = ptr::null_mut();
        assert_eq!(sf_step_function_json(h, &mut s), SfStatus::Ok);
        let text = CStr::from_ptr(s).to_str().unwrap().to_owned();
        sf_string_free(s);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["interval_values"], serde_json::json!([-2, 0]));
        sf_seifert_free(h);
    }
}

#[test]
fn invalid_inputs_report_errors() {
    let mut h = ptr::null_mut();
    unsafe {
        let st = sf_seifert_new([1i64, 0, 0, 1].as_ptr(), 2, SfParity::Classical, &mut h);
        assert_eq!(st, SfStatus::ParityViolation);
        assert!(h.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(sf_seifert_new(ptr::null(), 2, SfParity::Classical, &mut h), SfStatus::NullPointer);
        let mut sig = 0;
        assert_eq!(sf_signature_at_rational(ptr::null(), 0, 1, &mut sig), SfStatus::NullPointer);
        assert_eq!(sf_seifert_dim(ptr::null()), 0);
        sf_seifert_free(ptr::null_mut());
        sf_string_free(ptr::null_mut());
        // Δ(1) ≠ ±1
        let st = sf_metabolic_peak([1i64, 1, 1].as_ptr(), 3, 1, SfParity::Classical, &mut h);
        assert_ne!(st, SfStatus::Ok);
    }
}

#[test]
fn constructions() {
    unsafe {
        let mut q = [0i64; 5];
        assert_eq!(sf_jump_polynomial(0, 1, 1, 10, q.as_mut_ptr()), SfStatus::Ok);
        assert_eq!(q, [3, -6, 5, -6, 3]);

        for parity in [SfParity::Classical, SfParity::HighDim] {
            let delta: [i64; 3] = match parity {
                SfParity::Classical => [1, -1, 1],
                SfParity::HighDim => [-1, 1, -1],
            };
            let mut h = ptr::null_mut();
            assert_eq!(sf_metabolic_peak(delta.as_ptr(), 3, 1, parity, &mut h), SfStatus::Ok);
            assert_eq!(sf_seifert_dim(h), 8);
            let mut s = ptr::null_mut();
            assert_eq!(sf_step_function_json(h, &mut s), SfStatus::Ok);
            let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
            sf_string_free(s);
            assert_eq!(v["point_values"], serde_json::json!([2]));
            assert_eq!(v["interval_values"], serde_json::json!([0, 0]));
            sf_seifert_free(h);
        }
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "sigforge.h"
int main(void) {
    int64_t v[4] = {-1, 1, 0, -1};
    SfSeifert *k = NULL;
    if (sf_seifert_new(v, 2, SF_PARITY_CLASSICAL, &k) != SF_STATUS_OK) return 1;
    int64_t sig = 0;
    if (sf_signature_at_rational(k, 0, 1, &sig) != SF_STATUS_OK) return 2;
    sf_seifert_free(k);
    int64_t id[4] = {1, 0, 0, 1};
    if (sf_seifert_new(id, 2, SF_PARITY_CLASSICAL, &k) != SF_STATUS_PARITY_VIOLATION) return 3;
    printf("%lld\n", (long long)sig);
    return 0;
}
"#;

/// Compiles a C program against the generated header and static library.
#[test]
fn header_links_from_c() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libsigforge_ffi.a");
    if !lib.exists() {
        eprintln!("static library not built at {}, skipping", lib.display());
        return;
    }
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "-2");
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}
