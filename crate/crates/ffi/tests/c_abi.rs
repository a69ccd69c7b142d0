use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use sp1_kepler_ffi::*;

fn new_model(n: u32, sigma_bar: u32) -> *mut Sp1Model {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sp1_model_new(n, sigma_bar, &mut m) }, Sp1Status::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    unsafe { sp1_last_error_message(buf.as_mut_ptr(), buf.len()) };
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn energies_and_degeneracies() {
    let m = new_model(2, 0);
    let mut e = 0.0;
    assert_eq!(unsafe { sp1_energy(m, 0, &mut e) }, Sp1Status::Ok);
    assert_eq!(e, -0.125);
    let (mut p, mut q) = (0i64, 0u64);
    assert_eq!(unsafe { sp1_energy_exact(m, 1, &mut p, &mut q) }, Sp1Status::Ok);
    assert_eq!((p, q), (-1, 18));
    let degs: Vec<u64> = (0..4)
        .map(|i| {
            let mut d = 0;
            assert_eq!(unsafe { sp1_degeneracy(m, i, &mut d) }, Sp1Status::Ok);
            d
        })
        .collect();
    assert_eq!(degs, [1, 6, 20, 50]);
    unsafe { sp1_model_free(m) };
}

#[test]
fn radial_and_eigensolve() {
    let m = new_model(2, 0);
    let mut v = 0.0;
    assert_eq!(
        unsafe { sp1_radial_t(m, 1, 0, 1.0, false, &mut v) },
        Sp1Status::Ok
    );
    assert!((v - (-0.5f64).exp()).abs() < 1e-15);
    let mut out = [0.0; 3];
    let status = unsafe { sp1_eigensolve(m, 0, 4000, 0.0, 3, out.as_mut_ptr(), out.len()) };
    assert_eq!(status, Sp1Status::Ok);
    for (k, v) in out.iter().enumerate() {
        let nu = k as f64 + 2.0;
        assert!((v * 2.0 * nu * nu + 1.0).abs() < 1e-4);
    }
    unsafe { sp1_model_free(m) };
}

#[test]
fn error_codes_and_messages() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { sp1_model_new(1, 0, &mut m) }, Sp1Status::InvalidArgument);
    assert!(m.is_null());
    assert!(last_error().contains("n must be"));

    let mut e = 0.0;
    assert_eq!(
        unsafe { sp1_energy(ptr::null(), 0, &mut e) },
        Sp1Status::NullPointer
    );

    let m = new_model(2, 1);
    assert_eq!(
        unsafe { sp1_energy(m, 0, ptr::null_mut()) },
        Sp1Status::NullPointer
    );
    let mut v = 0.0;
    assert_eq!(
        unsafe { sp1_radial_t(m, 1, 0, -1.0, true, &mut v) },
        Sp1Status::NonPositiveCoordinate
    );
    assert_eq!(
        unsafe { sp1_radial_t(m, 0, 0, 1.0, true, &mut v) },
        Sp1Status::InvalidArgument
    );
    let mut out = [0.0; 2];
    let p = out.as_mut_ptr();
    assert_eq!(
        unsafe { sp1_eigensolve(m, 0, 100, 50.0, 1, p, 2) },
        Sp1Status::InsufficientGrid
    );
    assert_eq!(
        unsafe { sp1_eigensolve(m, 0, 1000, 5.0, 2, p, 2) },
        Sp1Status::TMaxTooSmall
    );
    assert_eq!(
        unsafe { sp1_eigensolve(m, 0, 1000, 50.0, 3, p, 2) },
        Sp1Status::BufferTooSmall
    );
    let full = unsafe { sp1_last_error_message(ptr::null_mut(), 0) };
    assert_eq!(full, last_error().len());

    unsafe { sp1_model_free(m) };

    // n = 4 degeneracies grow like I^13
    let m = new_model(4, 0);
    let mut d = 0u64;
    assert_eq!(unsafe { sp1_degeneracy(m, 20_000, &mut d) }, Sp1Status::Overflow);
    assert_eq!(unsafe { sp1_degeneracy(m, 1, &mut d) }, Sp1Status::Ok);
    unsafe { sp1_model_free(m) };
    unsafe { sp1_model_free(ptr::null_mut()) };
}

#[test]
fn status_strings_are_static() {
    let s = unsafe { CStr::from_ptr(sp1_status_string(Sp1Status::BufferTooSmall)) };
    assert_eq!(s.to_str().unwrap(), "output buffer too small");
}

/// Compiles a C program against the generated header and the static
/// library.
#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("sp1_kepler.h").exists());
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libsp1_kepler_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let tmp = std::env::temp_dir().join(format!("sp1_ffi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "sp1_kepler.h"
int main(void) {
    Sp1Model *m = NULL;
    if (sp1_model_new(3, 1, &m) != SP1_STATUS_OK) return 1;
    double e = 0.0;
    uint64_t d = 0;
    if (sp1_energy(m, 0, &e) != SP1_STATUS_OK) return 2;
    if (sp1_degeneracy(m, 1, &d) != SP1_STATUS_OK) return 3;
    if (sp1_model_new(0, 0, &m) != SP1_STATUS_INVALID_ARGUMENT) return 4;
    char buf[128];
    sp1_last_error_message(buf, sizeof buf);
    printf("%.17g %llu %s\n", e, (unsigned long long)d, buf);
    sp1_model_free(m);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = tmp.join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    // n = 3, σ̄ = 1: E_0 = −2/7² and dim 𝓗_1 = dim(1,0,0) + dim(2,1,0) = 6 + 64
    let fields: Vec<&str> = text.split_whitespace().collect();
    assert_eq!(fields[0].parse::<f64>().unwrap(), -2.0 / 49.0);
    assert_eq!(fields[1], "70");
    assert!(text.contains("n must be"), "{text}");
    let _ = std::fs::remove_dir_all(&tmp);
}
