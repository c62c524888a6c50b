use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use cobkh_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = cobkh_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    cobkh_string_free(s);
    out
}

unsafe fn diagram(name: &str) -> *mut CobkhDiagram {
    let mut d = ptr::null_mut();
    assert_eq!(cobkh_diagram_builtin(cstr(name).as_ptr(), &mut d), CobkhStatus::Ok);
    d
}

#[test]
fn trefoil_homology() {
    unsafe {
        let d = diagram("trefoil_left");
        let (mut b, mut k) = (7, 0);
        assert_eq!(cobkh_diagram_info(d, &mut b, &mut k), CobkhStatus::Ok);
        assert_eq!((b, k), (0, 3));
        let mut h = ptr::null_mut();
        assert_eq!(cobkh_homology(d, CobkhCoefficients::Z, true, &mut h), CobkhStatus::Ok);
        let mut n = 0;
        assert_eq!(cobkh_homology_len(h, &mut n), CobkhStatus::Ok);
        let mut rows = Vec::new();
        for i in 0..n {
            let (mut hd, mut qd, mut r, mut t) = (0, 0, 0, 0);
            assert_eq!(cobkh_homology_group(h, i, &mut hd, &mut qd, &mut r, &mut t), CobkhStatus::Ok);
            let mut tors = Vec::new();
            for j in 0..t {
                let mut o = 0;
                assert_eq!(cobkh_homology_torsion(h, i, j, &mut o), CobkhStatus::Ok);
                tors.push(o);
            }
            rows.push((hd, qd, r, tors));
        }
        assert_eq!(rows.iter().map(|r| r.2).sum::<usize>(), 4);
        assert_eq!(rows.iter().flat_map(|r| r.3.clone()).collect::<Vec<_>>(), [2]);
        let mut hs: Vec<i32> = rows.iter().map(|r| r.0).collect();
        hs.dedup();
        assert_eq!(hs, [-3, -2, 0]);
        let (mut a, mut b2, mut c, mut t) = (0, 0, 0, 0);
        assert_eq!(cobkh_homology_group(h, n, &mut a, &mut b2, &mut c, &mut t), CobkhStatus::OutOfRange);
        let mut js = ptr::null_mut();
        assert_eq!(cobkh_homology_to_json(h, &mut js), CobkhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), n);
        cobkh_homology_free(h);
        cobkh_diagram_free(d);
    }
}

#[test]
fn complexes() {
    unsafe {
        let d = diagram("r2_pn");
        let mut full = ptr::null_mut();
        let mut small = ptr::null_mut();
        assert_eq!(cobkh_complex_new(d, false, &mut full), CobkhStatus::Ok);
        assert_eq!(cobkh_complex_new(d, true, &mut small), CobkhStatus::Ok);
        let (mut lo, mut hi) = (9, 9);
        assert_eq!(cobkh_complex_degrees(full, &mut lo, &mut hi), CobkhStatus::Ok);
        assert_eq!((lo, hi), (-1, 1));
        assert_eq!(cobkh_complex_degrees(small, &mut lo, &mut hi), CobkhStatus::Ok);
        assert_eq!((lo, hi), (0, 0));
        let mut r = 0;
        assert_eq!(cobkh_complex_rank(small, 0, &mut r), CobkhStatus::Ok);
        assert_eq!(r, 1);
        let mut js = ptr::null_mut();
        assert_eq!(cobkh_complex_to_json(full, &mut js), CobkhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(js)).unwrap();
        assert_eq!(v["boundary"], 4);
        cobkh_complex_free(full);
        cobkh_complex_free(small);
        cobkh_diagram_free(d);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(cobkh_diagram_builtin(cstr("nope").as_ptr(), &mut d), CobkhStatus::UnknownBuiltin);
        assert!(last_error().contains("nope"));
        assert!(d.is_null());
        assert_eq!(cobkh_diagram_from_json(cstr("{\"boundary\": 1}").as_ptr(), &mut d), CobkhStatus::Parse);
        assert_eq!(cobkh_diagram_from_json(ptr::null(), &mut d), CobkhStatus::NullArgument);
        let bad = [0xffu8, 0];
        assert_eq!(cobkh_diagram_from_json(bad.as_ptr().cast(), &mut d), CobkhStatus::InvalidUtf8);
        assert_eq!(cobkh_diagram_builtin(cstr("hopf").as_ptr(), ptr::null_mut()), CobkhStatus::NullArgument);
        let open = diagram("neg_x");
        let mut h = ptr::null_mut();
        assert_eq!(cobkh_homology(open, CobkhCoefficients::F2, false, &mut h), CobkhStatus::OpenTangle);
        cobkh_diagram_free(open);
        let mut n = 0;
        assert_eq!(cobkh_homology_len(ptr::null(), &mut n), CobkhStatus::NullArgument);
        let mut report = ptr::null_mut();
        assert_eq!(cobkh_verify(cstr("[").as_ptr(), &mut report), CobkhStatus::UnknownCheck);
        cobkh_diagram_free(ptr::null_mut());
        cobkh_string_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../diagrams/hopf.json")).unwrap();
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(cobkh_diagram_from_json(cstr(&text).as_ptr(), &mut d), CobkhStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(cobkh_homology(d, CobkhCoefficients::F2, false, &mut h), CobkhStatus::Ok);
        let mut n = 0;
        cobkh_homology_len(h, &mut n);
        assert_eq!(n, 4);
        cobkh_homology_free(h);
        cobkh_diagram_free(d);
    }
}

#[test]
fn verify_report() {
    unsafe {
        let mut report = ptr::null_mut();
        assert_eq!(cobkh_verify(cstr("mainB_*").as_ptr(), &mut report), CobkhStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert!(v.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
    }
    let version = unsafe { CStr::from_ptr(cobkh_version()) };
    assert_eq!(version.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cobkh.h")
}

#[test]
fn header_declares_every_export() {
    let h = std::fs::read_to_string(header()).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("typedef struct CobkhDiagram CobkhDiagram;"));
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok().filter(|o| o.status.success()).map(|_| cc)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libcobkh_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let out = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert!(stdout.starts_with("groups=5 free=4 torsion=1\n"), "{stdout}");
    assert!(stdout.contains("\"mainA_prism\""));
}
