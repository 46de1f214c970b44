//! Scalar mass relations for the gamma5-mass model.
//!
//! With a mass term `m1 + m2·γ5` the propagating mass is `m = √(m1² − m2²)`,
//! which is bounded by `m_max = m1²/(2·m2)`. Every real `m ≤ m_max` has two
//! parametrizations, the lower pair `(m1, m2)` and the upper pair `(m3, m4)`:
//!
//! ```text
//! s  = √(1 − m²/m_max²)
//! m1 = √2·m_max·√(1 − s)    m2 = m_max·(1 − s)
//! m3 = √2·m_max·√(1 + s)    m4 = m_max·(1 + s)
//! ```
//!
//! The same curves are traced by a hyperbolic angle α (`m1 = 2·m_max·tanh α`,
//! `m2 = 2·m_max·tanh²α`) and by a circular angle θ with `sin θ = tanh α`.
//! The θ forms carry the factor 2 needed for `m1 = √2·m_max` at θ = π/4.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// PT phase of a mass pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PtPhase {
    /// `m1² > m2²`: real spectrum.
    Unbroken,
    /// `m1² = m2²`: vanishing physical mass.
    Boundary,
    /// `m1² < m2²`: complex-conjugate spectrum.
    Broken,
}

impl PtPhase {
    pub fn classify(m1: f64, m2: f64) -> Self {
        match m1.abs().total_cmp(&m2.abs()) {
            std::cmp::Ordering::Greater => Self::Unbroken,
            std::cmp::Ordering::Equal => Self::Boundary,
            std::cmp::Ordering::Less => Self::Broken,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unbroken => "unbroken",
            Self::Boundary => "boundary",
            Self::Broken => "broken",
        }
    }
}

/// The raw mass pair of the Hamiltonian, in GeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassParams {
    pub m1: f64,
    pub m2: f64,
}

impl MassParams {
    pub fn new(m1: f64, m2: f64) -> Result<Self> {
        if !m1.is_finite() || !m2.is_finite() {
            return Err(Error::InvalidArgument("masses must be finite".into()));
        }
        Ok(Self { m1, m2 })
    }

    pub fn physical_mass(&self) -> Complex64 {
        physical_mass(self.m1, self.m2)
    }

    pub fn max_mass(&self) -> Result<f64> {
        max_mass(self.m1, self.m2)
    }

    pub fn phase(&self) -> PtPhase {
        PtPhase::classify(self.m1, self.m2)
    }

    /// Real physical mass, or the phase error when none exists.
    pub fn real_mass(&self) -> Result<f64> {
        match self.phase() {
            PtPhase::Unbroken => Ok(self.physical_mass().re),
            PtPhase::Boundary => Err(Error::BoundaryPhase),
            PtPhase::Broken => Err(Error::BrokenPhase { m1_sq: self.m1 * self.m1, m2_sq: self.m2 * self.m2 }),
        }
    }
}

/// `√(m1² − m2²)`: non-negative real in the unbroken regime, positive
/// imaginary otherwise.
pub fn physical_mass(m1: f64, m2: f64) -> Complex64 {
    let (a, b) = (m1.abs(), m2.abs());
    let d = (a - b) * (a + b);
    if d >= 0.0 {
        Complex64::new(d.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-d).sqrt())
    }
}

/// `m1²/(2·m2)`. Errors when `m2 ≤ 0`, where no bound exists.
pub fn max_mass(m1: f64, m2: f64) -> Result<f64> {
    if !(m2 > 0.0) {
        return Err(Error::NoMaximalMass(m2));
    }
    Ok(m1 * m1 / (2.0 * m2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ordinary,
    Exotic,
}

/// A physical mass with both of its parametrizations.
///
/// `(m1, m2)` is always the lower pair and `(m3, m4)` the upper pair at the
/// same `m`. `branch`, `alpha` and `theta` describe the pair that produced the
/// point; [`BranchPoint::selected`] returns it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub m: f64,
    pub m_max: f64,
    pub branch: Branch,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    /// Hyperbolic angle of the selected pair; infinite on the upper branch at `m = 0`.
    pub alpha: f64,
    pub theta: f64,
}

impl BranchPoint {
    pub fn selected(&self) -> (f64, f64) {
        match self.branch {
            Branch::Lower => (self.m1, self.m2),
            Branch::Upper => (self.m3, self.m4),
        }
    }

    pub fn lower(&self) -> (f64, f64) {
        (self.m1, self.m2)
    }

    pub fn upper(&self) -> (f64, f64) {
        (self.m3, self.m4)
    }

    /// Largest of `|m1² − m2² − m²|` and `|m3² − m4² − m²|`.
    pub fn pythagorean_defect(&self) -> f64 {
        let m_sq = self.m * self.m;
        let lo = (self.m1 * self.m1 - self.m2 * self.m2 - m_sq).abs();
        let up = (self.m3 * self.m3 - self.m4 * self.m4 - m_sq).abs();
        lo.max(up)
    }
}

fn check_m_max(m_max: f64) -> Result<()> {
    if !(m_max > 0.0) || !m_max.is_finite() {
        return Err(Error::InvalidArgument(format!("m_max must be positive, got {m_max}")));
    }
    Ok(())
}

/// Hyperbolic chart: `m = 2·m_max·sinh α/cosh²α`, `m1 = 2·m_max·tanh α`,
/// `m2 = 2·m_max·tanh²α`. The peak `m = m_max` sits at `α = asinh(1)`.
pub fn from_alpha(alpha: f64, m_max: f64) -> Result<BranchPoint> {
    check_m_max(m_max)?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be finite and non-negative, got {alpha}")));
    }
    let t = alpha.tanh();
    let sech = alpha.cosh().recip();
    let m = 2.0 * m_max * t * sech;
    // The partner pair at the same m has tanh of the partner angle equal to sech α.
    let own = (2.0 * m_max * t, 2.0 * m_max * t * t);
    let partner = (2.0 * m_max * sech, 2.0 * m_max * sech * sech);
    Ok(assemble(m, m_max, own, partner, t * t <= 0.5, alpha, t.atan2(sech)))
}

/// Orders the selected pair and its partner into lower/upper slots.
fn assemble(m: f64, m_max: f64, own: (f64, f64), partner: (f64, f64), own_is_lower: bool, alpha: f64, theta: f64) -> BranchPoint {
    let (branch, lower, upper) = if own_is_lower { (Branch::Lower, own, partner) } else { (Branch::Upper, partner, own) };
    BranchPoint { m, m_max, branch, m1: lower.0, m2: lower.1, m3: upper.0, m4: upper.1, alpha, theta }
}

/// Both parametrizations of a physical mass `0 ≤ m ≤ m_max`.
pub fn branch_masses(m: f64, m_max: f64, branch: Branch) -> Result<BranchPoint> {
    check_m_max(m_max)?;
    if !(m >= 0.0) || !m.is_finite() {
        return Err(Error::InvalidArgument(format!("mass must be non-negative, got {m}")));
    }
    if m > m_max {
        return Err(Error::AboveMaximalMass { m, m_max });
    }
    let r = m / m_max;
    let s = ((1.0 - r) * (1.0 + r)).sqrt();
    // 1 − s without cancellation for small m.
    let one_minus_s = r * r / (1.0 + s);
    let one_plus_s = 1.0 + s;
    let lower = (m_max * (2.0 * one_minus_s).sqrt(), m_max * one_minus_s);
    let upper = (m_max * (2.0 * one_plus_s).sqrt(), m_max * one_plus_s);
    let tanh_alpha = match branch {
        Branch::Lower => (one_minus_s / 2.0).sqrt(),
        Branch::Upper => (one_plus_s / 2.0).sqrt(),
    };
    Ok(BranchPoint {
        m,
        m_max,
        branch,
        m1: lower.0,
        m2: lower.1,
        m3: upper.0,
        m4: upper.1,
        alpha: tanh_alpha.atanh(),
        theta: tanh_alpha.asin(),
    })
}

/// Circular chart: `m = m_max·sin 2θ`; the ordinary family selects
/// `(2·m_max·sin θ, 2·m_max·sin²θ)`, the exotic family
/// `(2·m_max·cos θ, 2·m_max·cos²θ)`.
pub fn from_theta(theta: f64, m_max: f64, family: Family) -> Result<BranchPoint> {
    check_m_max(m_max)?;
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::ThetaOutOfRange(theta));
    }
    let (sin, cos) = theta.sin_cos();
    let m = 2.0 * m_max * sin * cos;
    let ordinary = (2.0 * m_max * sin, 2.0 * m_max * sin * sin);
    let exotic = (2.0 * m_max * cos, 2.0 * m_max * cos * cos);
    let (own, partner, tanh_alpha) = match family {
        Family::Ordinary => (ordinary, exotic, sin),
        Family::Exotic => (exotic, ordinary, cos),
    };
    Ok(assemble(m, m_max, own, partner, tanh_alpha * tanh_alpha <= 0.5, tanh_alpha.atanh(), theta))
}

/// Ordinary-family masses as functions of θ, `(m, m1, m2)`.
pub fn theta_ordinary(theta: f64, m_max: f64) -> Result<(f64, f64, f64)> {
    let p = from_theta(theta, m_max, Family::Ordinary)?;
    let (a, b) = p.selected();
    Ok((p.m, a, b))
}

/// Exotic-family masses as functions of θ, `(m, m3, m4)`.
pub fn theta_exotic(theta: f64, m_max: f64) -> Result<(f64, f64, f64)> {
    let p = from_theta(theta, m_max, Family::Exotic)?;
    let (a, b) = p.selected();
    Ok((p.m, a, b))
}
