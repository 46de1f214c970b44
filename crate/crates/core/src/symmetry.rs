//! Momentum-space symmetry operators and the checks of their algebra.
//!
//! An operator acts on a momentum-space spinor as
//! `(Oψ)(p) = M · K^a ψ(±p)` where `K` is complex conjugation, `a` the
//! antilinear flag, and the sign is `−` when the operator flips momentum.
//!
//! Chosen matrix parts:
//!
//! ```text
//! P = (γ0, flip, linear)
//! T = (γ0, flip, antilinear)            2D
//! T = (iγ0γ1γ3, no flip, antilinear)    4D
//! C = exp(−αγ5)·P = ((m1 − m2γ5)γ0/m, flip, linear)
//! η = exp(αγ5/2),  η0 = η² = exp(αγ5)
//! ```
//!
//! In 4D no flipping `T` with a `γ0`-type matrix keeps the kinetic term, so
//! the Dirac-basis `T` (conjugation handles `α2`) is used there. Both choices
//! send `H(m1, m2)` to `H(m1, −m2)` and make `PT` a symmetry of `H`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{mat_exp_gamma5, ComplexMatrix, GammaRep, Spacetime};
use crate::dirac::{Gamma5Hamiltonian, HyperbolicMass};
use crate::error::{Error, Result};
use crate::massdomain::{MassParams, PtPhase};

/// Relative tolerance used by the exact operator identities.
pub const IDENTITY_RTOL: f64 = 1e-12;

/// Momentum grid (in mass units) on which momentum-dependent identities are checked.
pub const DEFAULT_P_GRID: [f64; 11] = [0.0, 0.5, -0.5, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0, 100.0, -100.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumOperator {
    matrix: ComplexMatrix,
    flips_momentum: bool,
    antilinear: bool,
}

impl MomentumOperator {
    pub fn new(matrix: ComplexMatrix, flips_momentum: bool, antilinear: bool) -> Self {
        Self { matrix, flips_momentum, antilinear }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim), false, false)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn flips_momentum(&self) -> bool {
        self.flips_momentum
    }

    pub fn antilinear(&self) -> bool {
        self.antilinear
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `K^a M`: the right-hand matrix as seen through this operator's conjugation.
    fn through(&self, m: &ComplexMatrix) -> ComplexMatrix {
        if self.antilinear {
            m.conj()
        } else {
            m.clone()
        }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.try_mul(&self.through(&rhs.matrix))?,
            flips_momentum: self.flips_momentum ^ rhs.flips_momentum,
            antilinear: self.antilinear ^ rhs.antilinear,
        })
    }

    /// `O⁻¹ = (K^a M⁻¹ K^a, same flags)`.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self.matrix.inverse()?;
        Ok(Self { matrix: self.through(&inv), ..self.clone() })
    }

    /// `O ∘ H ∘ O⁻¹` at the Hamiltonian's momentum `p`: `M · K^a H(±p) K^a · M⁻¹`.
    pub fn transform(&self, h: &Gamma5Hamiltonian) -> Result<ComplexMatrix> {
        let source = if self.flips_momentum {
            let flipped: Vec<f64> = h.momentum().iter().map(|x| -x).collect();
            h.at_momentum(&flipped)?
        } else {
            h.clone()
        };
        let inner = self.through(source.matrix());
        let inv = self.matrix.inverse()?;
        Ok(&(&self.matrix * &inner) * &inv)
    }

    /// `(Oψ)` at fixed momentum, treating `ψ(±p)` as the given components.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.antilinear {
            let conj: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
            self.matrix.apply(&conj)
        } else {
            self.matrix.apply(v)
        }
    }

    /// Frobenius distance of the matrix parts, infinite when the flags differ.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.flips_momentum != other.flips_momentum || self.antilinear != other.antilinear || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.matrix.distance(&other.matrix)
    }
}

pub fn parity(rep: &GammaRep) -> MomentumOperator {
    MomentumOperator::new(rep.gamma0().clone(), true, false)
}

pub fn time_reversal(rep: &GammaRep) -> MomentumOperator {
    match rep.spacetime() {
        Spacetime::D2 => MomentumOperator::new(rep.gamma0().clone(), true, true),
        Spacetime::D4 => {
            let g = rep.gammas();
            let m = (&(&g[0] * &g[1]) * &g[3]).scale(Complex64::new(0.0, 1.0));
            MomentumOperator::new(m, false, true)
        }
    }
}

/// `P ∘ T`.
pub fn pt_operator(rep: &GammaRep) -> MomentumOperator {
    parity(rep).compose(&time_reversal(rep)).expect("rep matrices share a dimension")
}

/// Plain complex conjugation `K`.
pub fn conjugation(rep: &GammaRep) -> MomentumOperator {
    MomentumOperator::new(rep.identity(), false, true)
}

/// `γ0·K`, the operator whose transpose pairing defines the PT inner product.
pub fn pt_pairing(rep: &GammaRep) -> MomentumOperator {
    parity(rep).compose(&conjugation(rep)).expect("rep matrices share a dimension")
}

fn hyperbolic(m1: f64, m2: f64) -> Result<HyperbolicMass> {
    MassParams::new(m1, m2)?;
    HyperbolicMass::new(m1, m2)
}

/// `Q = −α·γ5`.
pub fn q_matrix(m1: f64, m2: f64, rep: &GammaRep) -> Result<ComplexMatrix> {
    let hm = hyperbolic(m1, m2)?;
    Ok(rep.gamma5().scale_real(-hm.alpha))
}

/// `C = exp(Q)·P` with matrix `(m1 − m2·γ5)·γ0/m`.
pub fn c_operator(m1: f64, m2: f64, rep: &GammaRep) -> Result<MomentumOperator> {
    let params = MassParams::new(m1, m2)?;
    match params.phase() {
        PtPhase::Broken => return Err(Error::CUndefined),
        PtPhase::Boundary => return Err(Error::BoundaryPhase),
        PtPhase::Unbroken => {}
    }
    let m = params.real_mass()?;
    let weights = &rep.identity().scale_real(m1 / m) - &rep.gamma5().scale_real(m2 / m);
    Ok(MomentumOperator::new(&weights * rep.gamma0(), true, false))
}

/// `η = exp(αγ5/2)`, the positive square root of `η0`.
pub fn eta_operator(m1: f64, m2: f64, rep: &GammaRep) -> Result<MomentumOperator> {
    let hm = hyperbolic(m1, m2)?;
    Ok(MomentumOperator::new(mat_exp_gamma5(hm.alpha / 2.0, rep), false, false))
}

/// `η0 = exp(αγ5)`, the metric with `η0·H·η0⁻¹ = H†`.
pub fn eta0_operator(m1: f64, m2: f64, rep: &GammaRep) -> Result<MomentumOperator> {
    let hm = hyperbolic(m1, m2)?;
    Ok(MomentumOperator::new(mat_exp_gamma5(hm.alpha, rep), false, false))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorCheckReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub parameters: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OperatorCheckReport {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, parameters: BTreeMap<String, f64>) -> Self {
        Self { name: name.into(), residual, tolerance, passed: residual <= tolerance, parameters, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// `residual / tolerance`; NaN residuals rank as infinitely bad.
    pub fn severity(&self) -> f64 {
        if self.residual.is_nan() {
            f64::INFINITY
        } else if self.tolerance > 0.0 {
            self.residual / self.tolerance
        } else if self.residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// `(p…, m1, m2)` as report parameters.
pub fn hamiltonian_parameters(h: &Gamma5Hamiltonian) -> BTreeMap<String, f64> {
    let mut params = BTreeMap::new();
    match h.momentum() {
        [p] => {
            params.insert("p".to_string(), *p);
        }
        ps => {
            for (i, p) in ps.iter().enumerate() {
                params.insert(format!("p{}", i + 1), *p);
            }
        }
    }
    let m = h.masses();
    params.insert("m1".to_string(), m.m1);
    params.insert("m2".to_string(), m.m2);
    params
}

/// `‖η0·H·η0⁻¹ − H†‖` with tolerance `1e−12·‖H‖`.
pub fn pseudo_hermiticity_check(h: &Gamma5Hamiltonian) -> Result<OperatorCheckReport> {
    let hm = h.hyperbolic_mass()?;
    let rep = h.rep();
    let eta0 = mat_exp_gamma5(hm.alpha, rep);
    let eta0_inv = mat_exp_gamma5(-hm.alpha, rep);
    let residual = (&(&eta0 * h.matrix()) * &eta0_inv).distance(&h.adjoint());
    Ok(OperatorCheckReport::new("pseudo_hermiticity", residual, IDENTITY_RTOL * h.norm(), hamiltonian_parameters(h)))
}

/// `‖M_C·K^a H(σp) − H(p)·M_C‖`, the pointwise commutator of `C` with `H`.
pub fn c_h_commutator_residual(c: &MomentumOperator, h: &Gamma5Hamiltonian) -> Result<f64> {
    let source = if c.flips_momentum() {
        let flipped: Vec<f64> = h.momentum().iter().map(|x| -x).collect();
        h.at_momentum(&flipped)?
    } else {
        h.clone()
    };
    let lhs = c.matrix() * &c.through(source.matrix());
    let rhs = h.matrix() * c.matrix();
    Ok(lhs.distance(&rhs))
}

/// The three defining conditions of `C`: `C² = 1`, `[C, PT] = 0`, `[C, H] = 0`.
///
/// The last is evaluated at the Hamiltonian's own momentum.
pub fn verify_c_conditions(c: &MomentumOperator, h: &Gamma5Hamiltonian, pt: &MomentumOperator) -> Vec<OperatorCheckReport> {
    let params = hamiltonian_parameters(h);
    let c_norm = c.matrix().norm();
    let mut out = Vec::with_capacity(3);

    let c_sq = c.compose(c).map(|sq| sq.distance(&MomentumOperator::identity(c.dim())));
    out.push(OperatorCheckReport::new(
        "c_squared",
        c_sq.unwrap_or(f64::INFINITY),
        IDENTITY_RTOL * c_norm * c_norm,
        params.clone(),
    ));

    let commutes = c.compose(pt).and_then(|cpt| pt.compose(c).map(|ptc| cpt.distance(&ptc)));
    out.push(OperatorCheckReport::new(
        "c_commutes_pt",
        commutes.unwrap_or(f64::INFINITY),
        IDENTITY_RTOL * c_norm * pt.matrix().norm(),
        params.clone(),
    ));

    let ch = c_h_commutator_residual(c, h);
    out.push(OperatorCheckReport::new("c_commutes_h", ch.unwrap_or(f64::INFINITY), IDENTITY_RTOL * c_norm * h.norm(), params));
    out
}

/// Momenta built from a scalar grid: `(g)` in 2D; `g` along each axis and the diagonal in 4D.
pub fn momentum_grid(rep: &GammaRep, grid: &[f64]) -> Vec<Vec<f64>> {
    let n = rep.spatial_dim();
    let mut out = Vec::new();
    for &g in grid {
        if n == 1 {
            out.push(vec![g]);
            continue;
        }
        for axis in 0..n {
            let mut p = vec![0.0; n];
            p[axis] = g;
            out.push(p);
        }
        out.push(vec![g; n]);
    }
    out
}

/// [`verify_c_conditions`] with `[C, H]` taken as the worst case over a momentum grid.
pub fn verify_c_conditions_on_grid(
    c: &MomentumOperator,
    h: &Gamma5Hamiltonian,
    pt: &MomentumOperator,
    grid: &[f64],
) -> Result<Vec<OperatorCheckReport>> {
    let mut reports = verify_c_conditions(c, h, pt);
    for p in momentum_grid(h.rep(), grid) {
        let hp = h.at_momentum(&p)?;
        let candidate = verify_c_conditions(c, &hp, pt).pop().expect("three reports");
        let current = reports.last_mut().expect("three reports");
        if candidate.severity() > current.severity() {
            *current = candidate;
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_gamma_rep;
    use crate::dirac::{build_hamiltonian, SignVariant};

    fn rep2() -> GammaRep {
        build_gamma_rep(2).unwrap()
    }

    fn h2(p: f64, m1: f64, m2: f64) -> Gamma5Hamiltonian {
        build_hamiltonian(&rep2(), &[p], m1, m2, SignVariant::PlusPlus).unwrap()
    }

    #[test]
    fn parity_squares_to_identity_and_flips_m2() {
        let rep = rep2();
        let p = parity(&rep);
        assert_eq!(p.compose(&p).unwrap(), MomentumOperator::identity(2));
        let got = p.transform(&h2(3.0, 5.0, 3.0)).unwrap();
        assert_eq!(got, ComplexMatrix::from_real_rows([[-3.0, 8.0], [2.0, 3.0]]));
        assert_eq!(got, *h2(3.0, 5.0, -3.0).matrix());
        let h0 = h2(3.0, 5.0, 0.0);
        assert_eq!(&p.transform(&h0).unwrap(), h0.matrix());
    }

    #[test]
    fn time_reversal_and_pt() {
        let rep = rep2();
        let t = time_reversal(&rep);
        assert_eq!(t.compose(&t).unwrap(), MomentumOperator::identity(2));
        let h = h2(3.0, 5.0, 3.0);
        assert_eq!(t.transform(&h).unwrap(), ComplexMatrix::from_real_rows([[-3.0, 8.0], [2.0, 3.0]]));
        let h0 = h2(3.0, 5.0, 0.0);
        assert_eq!(&t.transform(&h0).unwrap(), h0.matrix());
        let pt = pt_operator(&rep);
        assert_eq!(pt, conjugation(&rep));
        assert_eq!(&pt.transform(&h).unwrap(), h.matrix());
    }

    #[test]
    fn four_dimensional_reflections() {
        let rep = build_gamma_rep(4).unwrap();
        let t = time_reversal(&rep);
        let tt = t.compose(&t).unwrap();
        assert!(tt.matrix().distance(&rep.identity().scale_real(-1.0)) < 1e-15);
        for v in SignVariant::ALL {
            let h = build_hamiltonian(&rep, &[0.3, -1.2, 2.5], 5.0, 3.0, v).unwrap();
            let flipped = h.with_masses(5.0, -3.0).unwrap();
            assert!(parity(&rep).transform(&h).unwrap().distance(flipped.matrix()) < 1e-13);
            assert!(t.transform(&h).unwrap().distance(flipped.matrix()) < 1e-13);
            assert!(pt_operator(&rep).transform(&h).unwrap().distance(h.matrix()) < 1e-13);
        }
    }

    #[test]
    fn explicit_c_matrix() {
        let rep = rep2();
        let c = c_operator(5.0, 3.0, &rep).unwrap();
        assert_eq!(c.matrix(), &ComplexMatrix::from_real_rows([[0.0, 0.5], [2.0, 0.0]]));
        assert!(c.flips_momentum() && !c.antilinear());
        let via_exp = &mat_exp_gamma5(-(2f64.ln()), &rep) * rep.gamma0();
        assert!(c.matrix().distance(&via_exp) < 1e-15);
        assert_eq!(c_operator(5.0, 0.0, &rep).unwrap(), parity(&rep));
    }

    #[test]
    fn c_refuses_outside_unbroken_phase() {
        let rep = rep2();
        assert_eq!(c_operator(3.0, 5.0, &rep), Err(Error::CUndefined));
        assert_eq!(c_operator(2.0, 2.0, &rep), Err(Error::BoundaryPhase));
        assert!(matches!(eta_operator(3.0, 5.0, &rep), Err(Error::BrokenPhase { .. })));
        assert_eq!(eta_operator(2.0, 2.0, &rep), Err(Error::BoundaryPhase));
    }

    #[test]
    fn c_conditions_hold() {
        let rep = rep2();
        let c = c_operator(5.0, 3.0, &rep).unwrap();
        let h = h2(3.0, 5.0, 3.0);
        let lhs = c.matrix() * h.at_momentum(&[-3.0]).unwrap().matrix();
        let rhs = h.matrix() * c.matrix();
        let want = ComplexMatrix::from_real_rows([[4.0, -1.5], [6.0, 4.0]]);
        assert_eq!(lhs, want);
        assert_eq!(rhs, want);
        let reports = verify_c_conditions_on_grid(&c, &h, &pt_operator(&rep), &DEFAULT_P_GRID).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    }

    #[test]
    fn c_conditions_in_four_dimensions() {
        let rep = build_gamma_rep(4).unwrap();
        let c = c_operator(5.0, 3.0, &rep).unwrap();
        let h = build_hamiltonian(&rep, &[1.0, 2.0, -0.5], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        let reports = verify_c_conditions_on_grid(&c, &h, &pt_operator(&rep), &DEFAULT_P_GRID).unwrap();
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");
    }

    #[test]
    fn wrong_c_is_caught() {
        let rep = rep2();
        let c = c_operator(5.0, 3.0, &rep).unwrap();
        let h = h2(3.0, 5.0, 2.0);
        let reports = verify_c_conditions(&c, &h, &pt_operator(&rep));
        assert!(!reports[2].passed);
    }

    #[test]
    fn eta_values() {
        let rep = rep2();
        let eta = eta_operator(5.0, 3.0, &rep).unwrap();
        let want = ComplexMatrix::from_real_rows([[2f64.sqrt(), 0.0], [0.0, 0.5f64.sqrt()]]);
        assert!(eta.matrix().distance(&want) < 1e-15);
        let sq = eta.compose(&eta).unwrap();
        assert!(sq.matrix().distance(&ComplexMatrix::from_real_rows([[2.0, 0.0], [0.0, 0.5]])) < 1e-15);
        assert!(sq.distance(&eta0_operator(5.0, 3.0, &rep).unwrap()) < 1e-15);
        assert_eq!(eta_operator(5.0, 0.0, &rep).unwrap(), MomentumOperator::identity(2));
    }

    #[test]
    fn pseudo_hermiticity_holds() {
        let r = pseudo_hermiticity_check(&h2(3.0, 5.0, 3.0)).unwrap();
        assert!(r.passed && r.residual < 1e-14, "{r:?}");
        let r = pseudo_hermiticity_check(&h2(3.0, 5.0, 0.0)).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(pseudo_hermiticity_check(&h2(3.0, 3.0, 5.0)).is_err());
    }

    #[test]
    fn q_relation() {
        let rep = rep2();
        let h = h2(3.0, 5.0, 3.0);
        let q = q_matrix(5.0, 3.0, &rep).unwrap();
        let alpha = -q.get(0, 0).re;
        let lhs = &(&mat_exp_gamma5(alpha, &rep) * h.matrix()) * &mat_exp_gamma5(-alpha, &rep);
        assert!(lhs.distance(&h.adjoint()) < 1e-13);
    }

    #[test]
    fn inverse_of_antilinear_operator() {
        let rep = build_gamma_rep(4).unwrap();
        let t = time_reversal(&rep);
        let tinv = t.inverse().unwrap();
        assert!(t.compose(&tinv).unwrap().distance(&MomentumOperator::identity(4)) < 1e-15);
    }

    #[test]
    fn report_severity() {
        let r = OperatorCheckReport::new("x", f64::NAN, 1.0, BTreeMap::new());
        assert!(!r.passed);
        assert_eq!(r.severity(), f64::INFINITY);
    }
}
