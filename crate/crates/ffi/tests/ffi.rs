use std::ffi::{CStr, CString};
use std::ptr;

use pthermit_ffi::*;

fn last_error() -> String {
    let p = pth_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_h(dim: usize, p: &[f64], m1: f64, m2: f64, variant: PthVariant) -> Result<*mut PthHamiltonian, PthStatus> {
    let mut h = ptr::null_mut();
    let status = unsafe { pth_hamiltonian_new(dim, p.as_ptr(), p.len(), m1, m2, variant as u32, &mut h) };
    if status == PthStatus::Ok {
        Ok(h)
    } else {
        Err(status)
    }
}

#[test]
fn spectrum_round_trip() {
    let h = new_h(2, &[3.0], 5.0, 3.0, PthVariant::MinusMinus).unwrap();
    assert_eq!(unsafe { pth_hamiltonian_dim(h) }, 2);
    let (mut re, mut im) = ([0.0; 2], [0.0; 2]);
    let status = unsafe { pth_hamiltonian_eigenvalues(h, re.as_mut_ptr(), im.as_mut_ptr(), 2) };
    assert_eq!(status, PthStatus::Ok);
    assert!((re[0] + 5.0).abs() < 1e-12 && (re[1] - 5.0).abs() < 1e-12);
    assert!(im.iter().all(|x| x.abs() < 1e-12));

    let mut phase = PthPhase::Broken;
    let (mut mr, mut mi) = (0.0, 0.0);
    assert_eq!(unsafe { pth_hamiltonian_phase(h, &mut phase, &mut mr, &mut mi) }, PthStatus::Ok);
    assert_eq!(phase, PthPhase::Unbroken);
    assert!((mr - 4.0).abs() < 1e-12 && mi == 0.0);
    unsafe { pth_hamiltonian_free(h) };
}

#[test]
fn matrix_and_c_operator() {
    let h = new_h(4, &[0.0, 0.0, 1.0], 5.0, 3.0, PthVariant::MinusMinus).unwrap();
    let (mut re, mut im) = ([0.0; 16], [0.0; 16]);
    assert_eq!(unsafe { pth_hamiltonian_matrix(h, re.as_mut_ptr(), im.as_mut_ptr(), 16) }, PthStatus::Ok);
    let trace: f64 = (0..4).map(|i| re[5 * i]).sum();
    assert!(trace.abs() < 1e-12);

    assert_eq!(unsafe { pth_c_operator(h, re.as_mut_ptr(), im.as_mut_ptr(), 16) }, PthStatus::Ok);
    // C² = 1 on the matrix part, since C carries no conjugation.
    let c = |i: usize, j: usize| (re[4 * i + j], im[4 * i + j]);
    for i in 0..4 {
        for j in 0..4 {
            let (mut sr, mut si) = (0.0, 0.0);
            for k in 0..4 {
                let (ar, ai) = c(i, k);
                let (br, bi) = c(k, j);
                sr += ar * br - ai * bi;
                si += ar * bi + ai * br;
            }
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((sr - want).abs() < 1e-12 && si.abs() < 1e-12);
        }
    }

    let status = unsafe { pth_hamiltonian_matrix(h, re.as_mut_ptr(), im.as_mut_ptr(), 15) };
    assert_eq!(status, PthStatus::BufferTooSmall);
    assert!(last_error().contains("need 16"));
    unsafe { pth_hamiltonian_free(h) };
}

#[test]
fn phase_errors_map_to_status() {
    let broken = new_h(2, &[1.0], 1.0, 2.0, PthVariant::MinusMinus).unwrap();
    let (mut re, mut im) = ([0.0; 4], [0.0; 4]);
    assert_eq!(unsafe { pth_c_operator(broken, re.as_mut_ptr(), im.as_mut_ptr(), 4) }, PthStatus::BrokenPhase);
    assert!(last_error().contains("C undefined"));
    unsafe { pth_hamiltonian_free(broken) };

    let boundary = new_h(2, &[1.0], 2.0, 2.0, PthVariant::MinusMinus).unwrap();
    assert_eq!(unsafe { pth_c_operator(boundary, re.as_mut_ptr(), im.as_mut_ptr(), 4) }, PthStatus::BoundaryPhase);
    unsafe { pth_hamiltonian_free(boundary) };
}

#[test]
fn invalid_inputs() {
    assert_eq!(new_h(3, &[1.0, 1.0], 5.0, 3.0, PthVariant::MinusMinus).unwrap_err(), PthStatus::UnsupportedDimension);
    let mut h = ptr::null_mut();
    let p = [1.0];
    assert_eq!(unsafe { pth_hamiltonian_new(2, p.as_ptr(), 1, 5.0, 3.0, 9, &mut h) }, PthStatus::InvalidArgument);
    assert_eq!(unsafe { pth_hamiltonian_new(2, ptr::null(), 1, 5.0, 3.0, 0, &mut h) }, PthStatus::NullPointer);
    assert_eq!(unsafe { pth_hamiltonian_new(2, p.as_ptr(), 1, 5.0, 3.0, 0, ptr::null_mut()) }, PthStatus::NullPointer);
    assert!(h.is_null());

    assert_eq!(unsafe { pth_hamiltonian_dim(ptr::null()) }, 0);
    let (mut re, mut im) = ([0.0; 2], [0.0; 2]);
    let status = unsafe { pth_hamiltonian_eigenvalues(ptr::null(), re.as_mut_ptr(), im.as_mut_ptr(), 2) };
    assert_eq!(status, PthStatus::NullPointer);
    unsafe { pth_hamiltonian_free(ptr::null_mut()) };
    unsafe { pth_string_free(ptr::null_mut()) };
}

#[test]
fn success_clears_last_error() {
    assert!(new_h(3, &[], 1.0, 0.0, PthVariant::PlusPlus).is_err());
    assert!(!pth_last_error().is_null());
    let h = new_h(2, &[0.0], 1.0, 0.0, PthVariant::PlusPlus).unwrap();
    assert!(pth_last_error().is_null());
    unsafe { pth_hamiltonian_free(h) };
}

#[test]
fn mass_domain_points() {
    let mut p = PthBranchPoint::default();
    assert_eq!(unsafe { pth_from_alpha(1f64.asinh(), 125.0, &mut p) }, PthStatus::Ok);
    assert!((p.m - 125.0).abs() < 1e-9);
    assert!((p.m1 - 125.0 * 2f64.sqrt()).abs() < 1e-9 && (p.m2 - 125.0).abs() < 1e-9);

    assert_eq!(unsafe { pth_branch_masses(0.0, 125.0, 1, &mut p) }, PthStatus::Ok);
    assert_eq!(p.upper, 1);
    assert!((p.m3 - 250.0).abs() < 1e-12 && (p.m4 - 250.0).abs() < 1e-12);

    assert_eq!(unsafe { pth_branch_masses(126.0, 125.0, 0, &mut p) }, PthStatus::OutOfDomain);
    assert!(last_error().contains("broken"));
    assert_eq!(unsafe { pth_from_theta(2.0, 125.0, 0, &mut p) }, PthStatus::OutOfDomain);
    assert_eq!(unsafe { pth_from_theta(0.5, 125.0, 1, ptr::null_mut()) }, PthStatus::NullPointer);

    assert_eq!(unsafe { pth_from_theta(std::f64::consts::FRAC_PI_4, 125.0, 0, &mut p) }, PthStatus::Ok);
    assert!((p.m - 125.0).abs() < 1e-9);
}

#[test]
fn verify_summary_and_json() {
    let mut summary = PthVerifySummary::default();
    let mut json = ptr::null_mut();
    let status = unsafe { pth_verify(PthSuite::Massdomain, 20, 7, &mut summary, &mut json) };
    assert_eq!(status, PthStatus::Ok);
    assert_eq!(summary.passed, 1);
    assert_eq!(summary.failed, 0);
    assert!(summary.checks > 0);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["suite"], "massdomain");
    assert_eq!(value["checks"].as_array().unwrap().len(), summary.checks);
    unsafe { pth_string_free(json) };

    let status = unsafe { pth_verify(PthSuite::All, 0, 7, &mut summary, ptr::null_mut()) };
    assert_eq!(status, PthStatus::InvalidArgument);
}

#[test]
fn figures_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("out").to_str().unwrap()).unwrap();
    assert_eq!(unsafe { pth_write_figures(path.as_ptr(), 125.0, 20) }, PthStatus::Ok);
    for name in ["fig1.csv", "fig2.csv", "fig3.csv", "fig4.csv"] {
        assert!(dir.path().join("out").join(name).is_file());
    }
    assert_eq!(unsafe { pth_write_figures(path.as_ptr(), -1.0, 20) }, PthStatus::InvalidArgument);
    assert_eq!(unsafe { pth_write_figures(ptr::null(), 125.0, 20) }, PthStatus::NullPointer);
}

#[test]
fn header_declares_exports() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/pthermit.h")).unwrap();
    for symbol in [
        "pth_hamiltonian_new",
        "pth_hamiltonian_free",
        "pth_hamiltonian_eigenvalues",
        "pth_c_operator",
        "pth_from_alpha",
        "pth_verify",
        "pth_write_figures",
        "pth_last_error",
        "pth_string_free",
        "typedef struct PthHamiltonian PthHamiltonian;",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
