//! Anti-de Sitter momentum space: the hyperboloid `p0² − p⃗² + p5² = M²`,
//! its mass shells, and the wave operators living on it.
//!
//! On the shell `p0² − p⃗² = m²` one has `|p5| = M·cos μ` with
//! `cos μ = √(1 − m²/M²)`, `μ ∈ [0, π/2]`. With `S = p_νγ^ν` the ordinary and
//! exotic Dirac operators are
//!
//! ```text
//! D  = S + (p5 − M)γ5 + 2M·sin(μ/2)
//! D' = S + (p5 + M)γ5 − 2M·cos(μ/2)
//! ```
//!
//! Near the flat limit `p5 − M` and `2M·sin(μ/2) − m` are tiny differences of
//! large numbers, so both are evaluated through cancellation-free forms.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexMatrix, GammaRep, Spacetime};
use crate::error::{Error, Result};
use crate::massdomain::Family;
use crate::symmetry::OperatorCheckReport;

/// Relative tolerance (in units of `M²`) of the hyperboloid constraint.
pub const HYPERBOLOID_RTOL: f64 = 1e-10;
/// Tolerance (in units of `M²`) of the factorization identities.
pub const FACTORIZATION_RTOL: f64 = 1e-9;

/// A point on the momentum hyperboloid of curvature mass `M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdSPoint {
    pub p0: f64,
    pub p: [f64; 3],
    pub p5: f64,
    pub curvature: f64,
}

fn sq3(p: &[f64; 3]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

/// `√((1 − r)(1 + r))` with `r = m/M`.
fn cos_mu_of(m: f64, curvature: f64) -> f64 {
    let r = m / curvature;
    ((1.0 - r) * (1.0 + r)).max(0.0).sqrt()
}

impl AdSPoint {
    pub fn new(p0: f64, p: [f64; 3], p5: f64, curvature: f64) -> Result<Self> {
        if !(curvature > 0.0) || !curvature.is_finite() {
            return Err(Error::InvalidArgument(format!("curvature mass must be positive, got {curvature}")));
        }
        if !p0.is_finite() || !p5.is_finite() || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("momentum components must be finite".into()));
        }
        let pt = Self { p0, p, p5, curvature };
        let residual = pt.hyperboloid_residual();
        let scale = (curvature * curvature).max(p0 * p0 + sq3(&p) + p5 * p5);
        if residual > HYPERBOLOID_RTOL * scale {
            return Err(Error::OffHyperboloid { residual });
        }
        Ok(pt)
    }

    /// The on-shell point with spatial momentum `p` and the given signs of `p0`, `p5`.
    pub fn on_shell(curvature: f64, m: f64, p: [f64; 3], p0_sign: f64, p5_sign: f64) -> Result<Self> {
        check_mass(curvature, m)?;
        let p0 = p0_sign.signum() * (m * m + sq3(&p)).sqrt();
        let p5 = p5_sign.signum() * curvature * cos_mu_of(m, curvature);
        Self::new(p0, p, p5, curvature)
    }

    /// `|p0² − p⃗² + p5² − M²|`
    pub fn hyperboloid_residual(&self) -> f64 {
        let m = self.curvature;
        // Pair the large terms so that the flat regime does not lose everything.
        ((self.p5 - m) * (self.p5 + m) + self.p0 * self.p0 - sq3(&self.p)).abs()
    }

    /// `p0² − p⃗²`
    pub fn minkowski_square(&self) -> f64 {
        self.p0 * self.p0 - sq3(&self.p)
    }

    pub fn spatial_norm(&self) -> f64 {
        sq3(&self.p).sqrt()
    }

    /// `p_νγ^ν`
    pub fn slash(&self, rep: &GammaRep) -> Result<ComplexMatrix> {
        rep.slash(self.p0, &self.p)
    }

    /// Errors unless `p0² − p⃗² = m²` and `|p5| = M·cos μ`.
    pub fn check_on_shell(&self, m: f64) -> Result<()> {
        check_mass(self.curvature, m)?;
        let shell = (self.minkowski_square() - m * m).abs();
        let p5_gap = (self.p5.abs() - self.curvature * cos_mu_of(m, self.curvature)).abs() * self.curvature;
        let residual = shell.max(p5_gap);
        let scale = (self.curvature * self.curvature).max(self.p0 * self.p0 + sq3(&self.p));
        if residual > HYPERBOLOID_RTOL * scale {
            return Err(Error::OffShell { m, residual });
        }
        Ok(())
    }
}

fn check_mass(curvature: f64, m: f64) -> Result<()> {
    if !(curvature > 0.0) || !curvature.is_finite() {
        return Err(Error::InvalidArgument(format!("curvature mass must be positive, got {curvature}")));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::InvalidArgument(format!("mass must be non-negative, got {m}")));
    }
    if m > curvature {
        return Err(Error::MassExceedsCurvature { m, curvature });
    }
    Ok(())
}

/// `cos μ = √(1 − m²/M²)`.
pub fn cos_mu(m: f64, curvature: f64) -> Result<f64> {
    check_mass(curvature, m)?;
    Ok(cos_mu_of(m, curvature))
}

/// `μ ∈ [0, π/2]`.
pub fn mu(m: f64, curvature: f64) -> Result<f64> {
    check_mass(curvature, m)?;
    Ok((m / curvature).asin())
}

/// `cos(μ/2) = √((1 + cos μ)/2)`.
fn cos_half_mu(m: f64, curvature: f64) -> f64 {
    ((1.0 + cos_mu_of(m, curvature)) / 2.0).sqrt()
}

/// `2M·sin(μ/2)`, computed as `m / cos(μ/2)`.
pub fn ordinary_mass_term(m: f64, curvature: f64) -> Result<f64> {
    check_mass(curvature, m)?;
    Ok(m / cos_half_mu(m, curvature))
}

/// `2M·cos(μ/2)`.
pub fn exotic_mass_term(m: f64, curvature: f64) -> Result<f64> {
    check_mass(curvature, m)?;
    Ok(2.0 * curvature * cos_half_mu(m, curvature))
}

/// Seeded on-shell points: `p⃗` uniform in the ball of radius `3m + M/10`,
/// the four sign combinations of `(p0, p5)` cycled by index.
pub fn sample_hyperboloid(curvature: f64, m: f64, count: usize, seed: u64) -> Result<Vec<AdSPoint>> {
    check_mass(curvature, m)?;
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be positive".into()));
    }
    let radius = 3.0 * m + curvature / 10.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let p = loop {
            let v: [f64; 3] = [rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)];
            if sq3(&v) <= 1.0 {
                break v.map(|x| x * radius);
            }
        };
        let (s0, s5) = match i % 4 {
            0 => (1.0, 1.0),
            1 => (1.0, -1.0),
            2 => (-1.0, 1.0),
            _ => (-1.0, -1.0),
        };
        out.push(AdSPoint::on_shell(curvature, m, p, s0, s5)?);
    }
    Ok(out)
}

/// The two scalar factors `2M(|p5| ∓ M·cos μ)` acting on `φ1` and `φ2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalarSupport {
    pub phi1_factor: f64,
    pub phi2_factor: f64,
    /// `4M²·cos μ`
    pub phi2_expected: f64,
    /// Both factors vanish (`m = M`); neither component is singled out.
    pub degenerate: bool,
    /// `φ2` is forced to zero on the shell.
    pub phi2_forced_zero: bool,
}

pub fn scalar_component_support(pt: &AdSPoint, m: f64) -> Result<ScalarSupport> {
    pt.check_on_shell(m)?;
    let big_m = pt.curvature;
    let shell = big_m * cos_mu_of(m, big_m);
    let phi1_factor = 2.0 * big_m * (pt.p5.abs() - shell);
    let phi2_factor = 2.0 * big_m * (pt.p5.abs() + shell);
    let phi2_expected = 4.0 * big_m * shell;
    let zero_tol = FACTORIZATION_RTOL * big_m * big_m;
    let degenerate = phi2_factor.abs() <= zero_tol;
    Ok(ScalarSupport {
        phi1_factor,
        phi2_factor,
        phi2_expected,
        degenerate,
        phi2_forced_zero: !degenerate && phi1_factor.abs() <= zero_tol,
    })
}

fn require_4d(rep: &GammaRep) -> Result<()> {
    if rep.spacetime() != Spacetime::D4 {
        return Err(Error::UnsupportedDimension(rep.dim()));
    }
    Ok(())
}

/// `p5 − M`, using `M² − p5² = m²` on the upper sheet.
fn p5_minus_m(pt: &AdSPoint, m: f64) -> f64 {
    if pt.p5 > 0.0 {
        -(m * m) / (pt.p5 + pt.curvature)
    } else {
        pt.p5 - pt.curvature
    }
}

/// Ordinary or exotic Dirac operator at an on-shell point (4D only).
pub fn dirac_operator(pt: &AdSPoint, m: f64, rep: &GammaRep, family: Family) -> Result<ComplexMatrix> {
    require_4d(rep)?;
    pt.check_on_shell(m)?;
    let slash = pt.slash(rep)?;
    let (g5_coeff, scalar) = match family {
        Family::Ordinary => (p5_minus_m(pt, m), ordinary_mass_term(m, pt.curvature)?),
        Family::Exotic => (pt.p5 + pt.curvature, -exotic_mass_term(m, pt.curvature)?),
    };
    Ok(&(&slash + &rep.gamma5().scale_real(g5_coeff)) + &rep.identity().scale_real(scalar))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factorization {
    Eq1,
    Eq2,
    #[serde(rename = "eqk2")]
    EqK2,
    #[serde(rename = "eqk4")]
    EqK4,
}

impl Factorization {
    pub const ALL: [Factorization; 4] = [Self::Eq1, Self::Eq2, Self::EqK2, Self::EqK4];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Eq1 => "eq1",
            Self::Eq2 => "eq2",
            Self::EqK2 => "eqk2",
            Self::EqK4 => "eqk4",
        }
    }
}

/// Note attached to the `eqk4` report: the product equals `−2M(p5 − M·cos μ)`.
pub const EQK4_NOTE: &str = "sign discrepancy vs stated K4 form, magnitude verified: product = -2M(p5 - M cos mu)";

/// Checks a matrix factorization of a scalar wave operator at one point.
///
/// ```text
/// eq1   [S − γ5(p5+M) − 2M·s][S − γ5(p5+M) + 2M·s]   = 2M(p5 + M·cos μ)
/// eq2   [S − γ5(p5−M) + 2M·s][−S + γ5(p5−M) + 2M·s]  = 2M(p5 − M·cos μ)
/// eqk2  (S + m)(S − m)                               = p² − m²
/// eqk4  [S − γ5(p5+M) + 2M·c][−S + γ5(p5+M) + 2M·c]  = −2M(p5 − M·cos μ)
/// ```
///
/// with `s = sin(μ/2)`, `c = cos(μ/2)`. `eqk2` holds off shell and uses `m`
/// only as a parameter.
pub fn verify_factorization(pt: &AdSPoint, m: f64, rep: &GammaRep, which: Factorization) -> Result<OperatorCheckReport> {
    require_4d(rep)?;
    if which != Factorization::EqK2 {
        pt.check_on_shell(m)?;
    } else {
        check_mass(pt.curvature, m)?;
    }
    let big_m = pt.curvature;
    let id = rep.identity();
    let g5 = rep.gamma5();
    let slash = pt.slash(rep)?;
    let shell = big_m * cos_mu_of(m, big_m);

    let (rhs, lhs, sign) = match which {
        Factorization::Eq1 => {
            let a = &slash - &g5.scale_real(pt.p5 + big_m);
            let s2 = ordinary_mass_term(m, big_m)?;
            let rhs = &(&a - &id.scale_real(s2)) * &(&a + &id.scale_real(s2));
            (rhs, 2.0 * big_m * (pt.p5 + shell), 1.0)
        }
        Factorization::Eq2 => {
            let a = &slash - &g5.scale_real(pt.p5 - big_m);
            let s2 = ordinary_mass_term(m, big_m)?;
            let rhs = &(&a + &id.scale_real(s2)) * &(&id.scale_real(s2) - &a);
            (rhs, 2.0 * big_m * (pt.p5 - shell), 1.0)
        }
        Factorization::EqK2 => {
            let rhs = &(&slash + &id.scale_real(m)) * &(&slash - &id.scale_real(m));
            (rhs, pt.minkowski_square() - m * m, 1.0)
        }
        Factorization::EqK4 => {
            let a = &slash - &g5.scale_real(pt.p5 + big_m);
            let c2 = exotic_mass_term(m, big_m)?;
            let rhs = &(&a + &id.scale_real(c2)) * &(&id.scale_real(c2) - &a);
            (rhs, 2.0 * big_m * (pt.p5 - shell), -1.0)
        }
    };
    let residual = rhs.distance(&id.scale_real(sign * lhs));
    let mut params = BTreeMap::new();
    params.insert("M".to_string(), big_m);
    params.insert("m".to_string(), m);
    params.insert("p0".to_string(), pt.p0);
    params.insert("p1".to_string(), pt.p[0]);
    params.insert("p2".to_string(), pt.p[1]);
    params.insert("p3".to_string(), pt.p[2]);
    params.insert("p5".to_string(), pt.p5);
    let report = OperatorCheckReport::new(which.as_str(), residual, FACTORIZATION_RTOL * big_m * big_m, params);
    Ok(match which {
        Factorization::EqK4 => report.with_note(EQK4_NOTE),
        _ => report,
    })
}

fn flat_regime(m: f64, p: &[f64; 3], curvature: f64) -> Result<()> {
    check_mass(curvature, m)?;
    let limit = curvature / 10.0;
    if m > limit || sq3(p).sqrt() > limit {
        return Err(Error::RegimeViolation(format!("need m, |p| <= M/10 = {limit}, got m = {m}, |p| = {}", sq3(p).sqrt())));
    }
    Ok(())
}

/// Total deviation of the ordinary operator from a flat Dirac operator of mass `m`:
/// `‖D − (S + 2M·sin(μ/2))‖ + |2M·sin(μ/2) − m|` on the physical sheet.
pub fn flat_limit_residual(m: f64, p: [f64; 3], curvature: f64, rep: &GammaRep) -> Result<f64> {
    require_4d(rep)?;
    flat_regime(m, &p, curvature)?;
    let pt = AdSPoint::on_shell(curvature, m, p, 1.0, 1.0)?;
    let d = dirac_operator(&pt, m, rep, Family::Ordinary)?;
    let flat = &pt.slash(rep)? + &rep.identity().scale_real(ordinary_mass_term(m, curvature)?);
    // 1/cos(μ/2) − 1 = (1 − cos²(μ/2)) / (cos(μ/2)(1 + cos(μ/2))), with
    // 1 − cos²(μ/2) = (1 − cos μ)/2 = r²/(2(1 + cos μ)).
    let r = m / curvature;
    let cos_half = cos_half_mu(m, curvature);
    let one_minus = r * r / (2.0 * (1.0 + cos_mu_of(m, curvature)));
    let mass_gap = m * one_minus / (cos_half * (1.0 + cos_half));
    Ok(d.distance(&flat) + mass_gap)
}

/// `‖D'‖` of the exotic operator on the physical sheet.
pub fn exotic_operator_norm(m: f64, p: [f64; 3], curvature: f64, rep: &GammaRep) -> Result<f64> {
    let pt = AdSPoint::on_shell(curvature, m, p, 1.0, 1.0)?;
    Ok(dirac_operator(&pt, m, rep, Family::Exotic)?.norm())
}
