//! C ABI over `pthermit`.
//!
//! Every fallible function returns a [`PthStatus`]; on failure a message is
//! available from [`pth_last_error`] on the same thread. Hamiltonians are
//! opaque handles owned by the caller and released with
//! [`pth_hamiltonian_free`]. Strings returned by the library are released with
//! [`pth_string_free`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;
use pthermit::algebra::{build_gamma_rep, ComplexMatrix};
use pthermit::cli::figures::write_figures;
use pthermit::dirac::{build_hamiltonian, spectrum, Gamma5Hamiltonian, SignVariant};
use pthermit::massdomain::{branch_masses, from_alpha, from_theta, Branch, BranchPoint, Family, PtPhase};
use pthermit::symmetry::c_operator;
use pthermit::verify::{run_suite, Suite};
use pthermit::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PthStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnsupportedDimension = 3,
    BufferTooSmall = 4,
    BrokenPhase = 5,
    BoundaryPhase = 6,
    OutOfDomain = 7,
    NonConvergence = 8,
    Io = 9,
    Panic = 10,
}

/// `H = Σ αᵢpᵢ + β(s1·m1 + s2·m2·γ5)` sign choice.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PthVariant {
    MinusMinus = 0,
    PlusMinus = 1,
    MinusPlus = 2,
    PlusPlus = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PthPhase {
    Unbroken = 0,
    Boundary = 1,
    Broken = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PthSuite {
    Operators = 0,
    Desitter = 1,
    Massdomain = 2,
    All = 3,
}

/// A point of the mass domain: `(m1, m2)` lower pair, `(m3, m4)` upper pair.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PthBranchPoint {
    pub m: f64,
    pub m_max: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    pub alpha: f64,
    pub theta: f64,
    /// Non-zero when the point was produced on the upper branch.
    pub upper: u8,
}

/// Summary of a verification run.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PthVerifySummary {
    pub checks: usize,
    pub failed: usize,
    pub passed: u8,
}

/// Opaque Hamiltonian handle.
pub struct PthHamiltonian {
    inner: Gamma5Hamiltonian,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn pth_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

fn status_of(err: &Error) -> PthStatus {
    match err {
        Error::UnsupportedDimension(_) | Error::DimensionMismatch { .. } => PthStatus::UnsupportedDimension,
        Error::BrokenPhase { .. } | Error::CUndefined => PthStatus::BrokenPhase,
        Error::BoundaryPhase => PthStatus::BoundaryPhase,
        Error::AboveMaximalMass { .. }
        | Error::NoMaximalMass(_)
        | Error::ThetaOutOfRange(_)
        | Error::MassExceedsCurvature { .. }
        | Error::OffHyperboloid { .. }
        | Error::OffShell { .. }
        | Error::RegimeViolation(_) => PthStatus::OutOfDomain,
        Error::NonConvergence { .. } | Error::Singular | Error::DegenerateSpectrum => PthStatus::NonConvergence,
        Error::InvalidArgument(_) => PthStatus::InvalidArgument,
    }
}

struct Failure(PthStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PthStatus::NullPointer, format!("{what} is NULL"))
}

/// Runs `f`, records any error or panic and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PthStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PthStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("panic: {msg}"));
            PthStatus::Panic
        }
    }
}

impl From<PthVariant> for SignVariant {
    fn from(v: PthVariant) -> Self {
        match v {
            PthVariant::MinusMinus => SignVariant::MinusMinus,
            PthVariant::PlusMinus => SignVariant::PlusMinus,
            PthVariant::MinusPlus => SignVariant::MinusPlus,
            PthVariant::PlusPlus => SignVariant::PlusPlus,
        }
    }
}

impl From<PtPhase> for PthPhase {
    fn from(p: PtPhase) -> Self {
        match p {
            PtPhase::Unbroken => PthPhase::Unbroken,
            PtPhase::Boundary => PthPhase::Boundary,
            PtPhase::Broken => PthPhase::Broken,
        }
    }
}

impl From<BranchPoint> for PthBranchPoint {
    fn from(p: BranchPoint) -> Self {
        Self {
            m: p.m,
            m_max: p.m_max,
            m1: p.m1,
            m2: p.m2,
            m3: p.m3,
            m4: p.m4,
            alpha: p.alpha,
            theta: p.theta,
            upper: u8::from(p.branch == Branch::Upper),
        }
    }
}

fn variant_from_raw(raw: u32) -> Result<PthVariant, Failure> {
    Ok(match raw {
        0 => PthVariant::MinusMinus,
        1 => PthVariant::PlusMinus,
        2 => PthVariant::MinusPlus,
        3 => PthVariant::PlusPlus,
        other => return Err(Failure(PthStatus::InvalidArgument, format!("unknown variant {other}"))),
    })
}

/// Copies `src` into caller-provided `re`/`im` arrays of length `len`.
unsafe fn write_complex(src: &[Complex64], re: *mut f64, im: *mut f64, len: usize) -> Result<(), Failure> {
    if re.is_null() || im.is_null() {
        return Err(null("output buffer"));
    }
    if len < src.len() {
        return Err(Failure(PthStatus::BufferTooSmall, format!("buffer holds {len} values, need {}", src.len())));
    }
    // SAFETY: the caller guarantees `re` and `im` point to `len` writable doubles.
    let (re, im) = unsafe { (std::slice::from_raw_parts_mut(re, len), std::slice::from_raw_parts_mut(im, len)) };
    for (i, z) in src.iter().enumerate() {
        re[i] = z.re;
        im[i] = z.im;
    }
    Ok(())
}

unsafe fn write_matrix(m: &ComplexMatrix, re: *mut f64, im: *mut f64, len: usize) -> Result<(), Failure> {
    unsafe { write_complex(m.entries(), re, im, len) }
}

unsafe fn hamiltonian<'a>(h: *const PthHamiltonian) -> Result<&'a Gamma5Hamiltonian, Failure> {
    // SAFETY: the caller guarantees `h` is NULL or a live handle.
    unsafe { h.as_ref() }.map(|h| &h.inner).ok_or_else(|| null("hamiltonian"))
}

/// Builds `H(p; m1, m2)` in spacetime dimension `dim` (2 or 4). `p` holds
/// `dim − 1` momentum components. On success `*out` receives a new handle.
///
/// # Safety
/// `p` must point to `p_len` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_new(
    dim: usize,
    p: *const f64,
    p_len: usize,
    m1: f64,
    m2: f64,
    variant: u32,
    out: *mut *mut PthHamiltonian,
) -> PthStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if p.is_null() && p_len > 0 {
            return Err(null("p"));
        }
        let p = if p_len == 0 {
            &[][..]
        } else {
            // SAFETY: checked non-null; the caller guarantees `p_len` doubles.
            unsafe { std::slice::from_raw_parts(p, p_len) }
        };
        let variant = variant_from_raw(variant)?;
        let rep = build_gamma_rep(dim)?;
        let inner = build_hamiltonian(&rep, p, m1, m2, variant.into())?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(PthHamiltonian { inner })) };
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `h` must be NULL or a handle from [`pth_hamiltonian_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_free(h: *mut PthHamiltonian) {
    if !h.is_null() {
        // SAFETY: ownership returns to Rust exactly once per the contract above.
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Spinor dimension of the matrix (2 or 4), or 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_dim(h: *const PthHamiltonian) -> usize {
    // SAFETY: forwarded caller contract.
    unsafe { h.as_ref() }.map_or(0, |h| h.inner.dim())
}

/// Writes the row-major matrix into `re`/`im`, each of length `len ≥ dim²`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_matrix(h: *const PthHamiltonian, re: *mut f64, im: *mut f64, len: usize) -> PthStatus {
    guard(|| unsafe { write_matrix(hamiltonian(h)?.matrix(), re, im, len) })
}

/// Writes the sorted eigenvalues into `re`/`im`, each of length `len ≥ dim`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_eigenvalues(
    h: *const PthHamiltonian,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> PthStatus {
    guard(|| unsafe {
        let report = spectrum(hamiltonian(h)?)?;
        write_complex(&report.eigenvalues, re, im, len)
    })
}

/// Writes the PT phase and the physical mass `√(m1² − m2²)` (complex when broken).
///
/// # Safety
/// `h` must be a live handle; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pth_hamiltonian_phase(
    h: *const PthHamiltonian,
    phase: *mut PthPhase,
    mass_re: *mut f64,
    mass_im: *mut f64,
) -> PthStatus {
    guard(|| unsafe {
        let h = hamiltonian(h)?;
        if phase.is_null() {
            return Err(null("phase"));
        }
        *phase = h.phase().into();
        write_complex(&[h.physical_mass()], mass_re, mass_im, 1)
    })
}

/// Writes the row-major matrix part of `C` for the handle's effective masses.
/// Fails with `BrokenPhase` or `BoundaryPhase` where `C` is undefined.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn pth_c_operator(h: *const PthHamiltonian, re: *mut f64, im: *mut f64, len: usize) -> PthStatus {
    guard(|| unsafe {
        let h = hamiltonian(h)?;
        let (a, b) = h.effective_masses();
        let c = c_operator(a, b, h.rep())?;
        write_matrix(c.matrix(), re, im, len)
    })
}

unsafe fn write_point(out: *mut PthBranchPoint, f: impl FnOnce() -> pthermit::Result<BranchPoint>) -> PthStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = f()?;
        // SAFETY: checked non-null; the caller guarantees it is writable.
        unsafe { *out = p.into() };
        Ok(())
    })
}

/// Mass-domain point at hyperbolic angle `alpha ≥ 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pth_from_alpha(alpha: f64, m_max: f64, out: *mut PthBranchPoint) -> PthStatus {
    unsafe { write_point(out, || from_alpha(alpha, m_max)) }
}

/// Both branch pairs at physical mass `m ∈ [0, m_max]`; `upper` selects the pair.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pth_branch_masses(m: f64, m_max: f64, upper: u8, out: *mut PthBranchPoint) -> PthStatus {
    let branch = if upper != 0 { Branch::Upper } else { Branch::Lower };
    unsafe { write_point(out, || branch_masses(m, m_max, branch)) }
}

/// Mass-domain point at `theta ∈ [0, π/2]`; `exotic` selects the family.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pth_from_theta(theta: f64, m_max: f64, exotic: u8, out: *mut PthBranchPoint) -> PthStatus {
    let family = if exotic != 0 { Family::Exotic } else { Family::Ordinary };
    unsafe { write_point(out, || from_theta(theta, m_max, family)) }
}

/// Runs a verification suite. `summary` must be non-NULL; when `json` is
/// non-NULL it receives the full report, to be freed with [`pth_string_free`].
///
/// # Safety
/// `summary` must be writable; `json` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn pth_verify(
    suite: PthSuite,
    samples: usize,
    seed: u64,
    summary: *mut PthVerifySummary,
    json: *mut *mut c_char,
) -> PthStatus {
    guard(|| {
        if summary.is_null() {
            return Err(null("summary"));
        }
        let suite = match suite {
            PthSuite::Operators => Suite::Operators,
            PthSuite::Desitter => Suite::Desitter,
            PthSuite::Massdomain => Suite::Massdomain,
            PthSuite::All => Suite::All,
        };
        let report = run_suite(suite, samples, seed)?;
        if !json.is_null() {
            let text = serde_json::to_string(&report).map_err(|e| Failure(PthStatus::InvalidArgument, e.to_string()))?;
            let text = CString::new(text).map_err(|e| Failure(PthStatus::InvalidArgument, e.to_string()))?;
            // SAFETY: checked non-null.
            unsafe { *json = text.into_raw() };
        }
        // SAFETY: checked non-null.
        unsafe {
            *summary = PthVerifySummary {
                checks: report.checks.len(),
                failed: report.checks.iter().filter(|c| !c.passed).count(),
                passed: u8::from(report.passed),
            }
        };
        Ok(())
    })
}

/// Writes `fig1.csv` … `fig4.csv` into the UTF-8 directory path `dir`.
///
/// # Safety
/// `dir` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pth_write_figures(dir: *const c_char, m_max: f64, points: usize) -> PthStatus {
    guard(|| {
        if dir.is_null() {
            return Err(null("dir"));
        }
        // SAFETY: non-null and NUL-terminated per the contract.
        let dir = unsafe { CStr::from_ptr(dir) }
            .to_str()
            .map_err(|e| Failure(PthStatus::InvalidArgument, format!("dir is not UTF-8: {e}")))?;
        write_figures(Path::new(dir), m_max, points).map_err(|e| {
            let status = if e.kind() == std::io::ErrorKind::InvalidInput { PthStatus::InvalidArgument } else { PthStatus::Io };
            Failure(status, e.to_string())
        })?;
        Ok(())
    })
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pth_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this crate.
        drop(unsafe { CString::from_raw(s) });
    }
}
