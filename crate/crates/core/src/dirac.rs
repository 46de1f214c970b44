//! The gamma5-mass Dirac Hamiltonian `H = α⃗·p⃗ + β(m1 + m2·γ5)` at fixed momentum.
//!
//! In the unbroken regime the mass term factors as `β·m·exp(γ5·α)` with
//! `cosh α = m1/m`, `sinh α = m2/m`, and `H` is similar to the ordinary
//! Hermitian Hamiltonian `H0 = α⃗·p⃗ + β·m` through `exp(±γ5·α/2)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{eigenvalues, mat_exp_gamma5, sort_eigenvalues, ComplexMatrix, GammaRep};
use crate::error::{Error, Result};
use crate::massdomain::{physical_mass, MassParams, PtPhase};

/// Signs `(s1, s2)` in front of `m1` and `m2` in `β(s1·m1 + s2·m2·γ5)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SignVariant {
    #[serde(rename = "--")]
    MinusMinus,
    #[serde(rename = "+-")]
    PlusMinus,
    #[serde(rename = "-+")]
    MinusPlus,
    #[default]
    #[serde(rename = "++")]
    PlusPlus,
}

impl SignVariant {
    pub const ALL: [SignVariant; 4] = [Self::MinusMinus, Self::PlusMinus, Self::MinusPlus, Self::PlusPlus];

    pub fn signs(self) -> (f64, f64) {
        match self {
            Self::MinusMinus => (-1.0, -1.0),
            Self::PlusMinus => (1.0, -1.0),
            Self::MinusPlus => (-1.0, 1.0),
            Self::PlusPlus => (1.0, 1.0),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::MinusMinus => "--",
            Self::PlusMinus => "+-",
            Self::MinusPlus => "-+",
            Self::PlusPlus => "++",
        }
    }

    /// Hamiltonian variant and `p5` sign of the mass-shell equation for `Ψ1..Ψ4`.
    ///
    /// `Ψ1, Ψ2` live on `p5 = −√(M² − m²)`, `Ψ3, Ψ4` on `p5 = +√(M² − m²)`;
    /// the equation `(p0 − H)Ψ = 0` fixes the signs in `H`.
    pub fn mass_shell_equation(index: usize) -> Result<(SignVariant, f64)> {
        match index {
            1 => Ok((Self::PlusPlus, -1.0)),
            2 => Ok((Self::MinusPlus, -1.0)),
            3 => Ok((Self::PlusMinus, 1.0)),
            4 => Ok((Self::MinusMinus, 1.0)),
            other => Err(Error::InvalidArgument(format!("mass-shell equation index {other} not in 1..=4"))),
        }
    }
}

impl std::str::FromStr for SignVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "--" | "mm" => Ok(Self::MinusMinus),
            "+-" | "pm" => Ok(Self::PlusMinus),
            "-+" | "mp" => Ok(Self::MinusPlus),
            "++" | "pp" => Ok(Self::PlusPlus),
            other => Err(Error::InvalidArgument(format!("unknown sign variant {other:?}"))),
        }
    }
}

/// Sign, physical mass and hyperbolic angle of an unbroken mass term
/// `a + b·γ5 = sign·m·exp(γ5·α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicMass {
    pub sign: f64,
    pub mass: f64,
    pub alpha: f64,
}

impl HyperbolicMass {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let mass = MassParams::new(a, b)?.real_mass()?;
        Ok(Self { sign: a.signum(), mass, alpha: (b / a).atanh() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gamma5Hamiltonian {
    rep: GammaRep,
    momentum: Vec<f64>,
    masses: MassParams,
    variant: SignVariant,
    matrix: ComplexMatrix,
}

/// Builds `H = Σ αᵢpᵢ + β(s1·m1 + s2·m2·γ5)`.
pub fn build_hamiltonian(rep: &GammaRep, p: &[f64], m1: f64, m2: f64, variant: SignVariant) -> Result<Gamma5Hamiltonian> {
    if p.len() != rep.spatial_dim() {
        return Err(Error::DimensionMismatch { expected: rep.spatial_dim(), found: p.len() });
    }
    if p.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("momentum must be finite".into()));
    }
    let masses = MassParams::new(m1, m2)?;
    let matrix = hamiltonian_matrix(rep, p, masses, variant);
    Ok(Gamma5Hamiltonian { rep: rep.clone(), momentum: p.to_vec(), masses, variant, matrix })
}

fn hamiltonian_matrix(rep: &GammaRep, p: &[f64], masses: MassParams, variant: SignVariant) -> ComplexMatrix {
    let (s1, s2) = variant.signs();
    let mass_term = &rep.identity().scale_real(s1 * masses.m1) + &rep.gamma5().scale_real(s2 * masses.m2);
    let mut h = rep.beta() * &mass_term;
    for (alpha, &pi) in rep.alphas().iter().zip(p) {
        h = &h + &alpha.scale_real(pi);
    }
    h
}

impl Gamma5Hamiltonian {
    pub fn rep(&self) -> &GammaRep {
        &self.rep
    }

    pub fn momentum(&self) -> &[f64] {
        &self.momentum
    }

    pub fn masses(&self) -> MassParams {
        self.masses
    }

    pub fn variant(&self) -> SignVariant {
        self.variant
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Signed masses `(s1·m1, s2·m2)` as they appear in the matrix.
    pub fn effective_masses(&self) -> (f64, f64) {
        let (s1, s2) = self.variant.signs();
        (s1 * self.masses.m1, s2 * self.masses.m2)
    }

    pub fn phase(&self) -> PtPhase {
        self.masses.phase()
    }

    pub fn physical_mass(&self) -> Complex64 {
        self.masses.physical_mass()
    }

    pub fn hyperbolic_mass(&self) -> Result<HyperbolicMass> {
        let (a, b) = self.effective_masses();
        HyperbolicMass::new(a, b)
    }

    /// The same Hamiltonian at another momentum.
    pub fn at_momentum(&self, p: &[f64]) -> Result<Self> {
        build_hamiltonian(&self.rep, p, self.masses.m1, self.masses.m2, self.variant)
    }

    pub fn with_masses(&self, m1: f64, m2: f64) -> Result<Self> {
        build_hamiltonian(&self.rep, &self.momentum, m1, m2, self.variant)
    }

    pub fn with_variant(&self, variant: SignVariant) -> Self {
        let matrix = hamiltonian_matrix(&self.rep, &self.momentum, self.masses, variant);
        Self { variant, matrix, ..self.clone() }
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        self.matrix.adjoint()
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }

    /// `β(s1·m1 + s2·m2·γ5)`
    pub fn mass_term(&self) -> ComplexMatrix {
        let (a, b) = self.effective_masses();
        self.rep.beta() * &(&self.rep.identity().scale_real(a) + &self.rep.gamma5().scale_real(b))
    }

    /// `Σ αᵢpᵢ`
    pub fn kinetic_term(&self) -> ComplexMatrix {
        self.rep
            .alphas()
            .iter()
            .zip(&self.momentum)
            .fold(ComplexMatrix::zeros(self.dim()), |acc, (a, &pi)| &acc + &a.scale_real(pi))
    }

    pub fn momentum_squared(&self) -> f64 {
        self.momentum.iter().map(|x| x * x).sum()
    }
}

/// `‖β(m1 + m2γ5) − β·m·exp(γ5α)‖`, the residual of the exponential form of the mass term.
pub fn exp_form_check(h: &Gamma5Hamiltonian) -> Result<f64> {
    let hm = h.hyperbolic_mass()?;
    let rep = h.rep();
    let exp_form = (rep.beta() * &mat_exp_gamma5(hm.alpha, rep)).scale_real(hm.sign * hm.mass);
    Ok(h.mass_term().distance(&exp_form))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<Complex64>,
    pub phase: PtPhase,
    pub physical_mass: Complex64,
}

pub fn spectrum(h: &Gamma5Hamiltonian) -> Result<SpectralReport> {
    Ok(SpectralReport { eigenvalues: eigenvalues(h.matrix())?, phase: h.phase(), physical_mass: h.physical_mass() })
}

/// `±√(p⃗² + m1² − m2²)` on the principal branch, each with the multiplicity
/// of the representation (1 in 2D, 2 in 4D), sorted like [`eigenvalues`].
pub fn expected_eigenvalues(h: &Gamma5Hamiltonian) -> Vec<Complex64> {
    let m = physical_mass(h.masses.m1, h.masses.m2);
    let energy = (Complex64::new(h.momentum_squared(), 0.0) + m * m).sqrt();
    let half = h.dim() / 2;
    let mut out: Vec<Complex64> = std::iter::repeat_n(-energy, half).chain(std::iter::repeat_n(energy, half)).collect();
    sort_eigenvalues(&mut out);
    out
}

/// `H0 = exp(γ5α/2)·H·exp(−γ5α/2)`, Hermitian and equal to `α⃗·p⃗ ± β·m`.
pub fn hermitian_partner(h: &Gamma5Hamiltonian) -> Result<ComplexMatrix> {
    let hm = h.hyperbolic_mass()?;
    let rep = h.rep();
    let left = mat_exp_gamma5(hm.alpha / 2.0, rep);
    let right = mat_exp_gamma5(-hm.alpha / 2.0, rep);
    Ok(&(&left * h.matrix()) * &right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_gamma_rep;

    fn rep2() -> GammaRep {
        build_gamma_rep(2).unwrap()
    }

    #[test]
    fn two_dimensional_matrix() {
        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        assert_eq!(h.matrix(), &ComplexMatrix::from_real_rows([[-3.0, 2.0], [8.0, 3.0]]));
        assert!(h.matrix().hermiticity_defect() > 1.0);

        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 3.0, SignVariant::MinusPlus).unwrap();
        assert_eq!(h.matrix(), &ComplexMatrix::from_real_rows([[-3.0, -8.0], [-2.0, 3.0]]));
    }

    #[test]
    fn hermitian_limit() {
        let h = build_hamiltonian(&rep2(), &[0.0], 2.5, 0.0, SignVariant::PlusPlus).unwrap();
        assert_eq!(h.matrix(), &ComplexMatrix::from_real_rows([[0.0, 2.5], [2.5, 0.0]]));
        assert_eq!(h.matrix().hermiticity_defect(), 0.0);
        let rep4 = build_gamma_rep(4).unwrap();
        let h = build_hamiltonian(&rep4, &[0.3, -1.0, 2.0], 2.5, 0.0, SignVariant::PlusPlus).unwrap();
        assert!(h.matrix().hermiticity_defect() < 1e-15);
    }

    #[test]
    fn momentum_length_must_match() {
        let err = build_hamiltonian(&rep2(), &[1.0, 2.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn exp_form_residuals() {
        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        let hm = h.hyperbolic_mass().unwrap();
        assert!((hm.alpha.exp() - 2.0).abs() < 1e-15);
        assert!(exp_form_check(&h).unwrap() <= 1e-12 * 5.0);

        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 0.0, SignVariant::PlusPlus).unwrap();
        assert_eq!(exp_form_check(&h).unwrap(), 0.0);

        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 5.0, SignVariant::PlusPlus).unwrap();
        assert_eq!(exp_form_check(&h), Err(Error::BoundaryPhase));
        let h = build_hamiltonian(&rep2(), &[3.0], 3.0, 5.0, SignVariant::PlusPlus).unwrap();
        assert!(matches!(exp_form_check(&h), Err(Error::BrokenPhase { .. })));
    }

    #[test]
    fn exp_form_for_every_variant() {
        for d in [2, 4] {
            let rep = build_gamma_rep(d).unwrap();
            let p = vec![0.7; d - 1];
            for v in SignVariant::ALL {
                let h = build_hamiltonian(&rep, &p, 5.0, 3.0, v).unwrap();
                assert!(exp_form_check(&h).unwrap() <= 1e-12 * 5.0, "{v:?} dim {d}");
            }
        }
    }

    #[test]
    fn spectrum_cases() {
        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        let s = spectrum(&h).unwrap();
        assert_eq!(s.phase, PtPhase::Unbroken);
        assert!((s.eigenvalues[0] + 5.0).norm() < 1e-14 && (s.eigenvalues[1] - 5.0).norm() < 1e-14);

        let h = build_hamiltonian(&rep2(), &[0.0], 3.0, 5.0, SignVariant::PlusPlus).unwrap();
        let s = spectrum(&h).unwrap();
        assert_eq!(s.phase, PtPhase::Broken);
        assert!((s.eigenvalues[0] - Complex64::new(0.0, -4.0)).norm() < 1e-14);
        assert!((s.eigenvalues[1] - Complex64::new(0.0, 4.0)).norm() < 1e-14);
        assert_eq!(s.physical_mass, Complex64::new(0.0, 4.0));

        let h = build_hamiltonian(&rep2(), &[0.0], 2.0, 2.0, SignVariant::PlusPlus).unwrap();
        let s = spectrum(&h).unwrap();
        assert_eq!(s.phase, PtPhase::Boundary);
        assert!(s.eigenvalues.iter().all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn four_dimensional_spectrum_is_doubled() {
        let rep = build_gamma_rep(4).unwrap();
        let h = build_hamiltonian(&rep, &[1.0, -2.0, 2.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        let got = spectrum(&h).unwrap().eigenvalues;
        let want = expected_eigenvalues(&h);
        assert_eq!(want.len(), 4);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() <= 1e-10 * w.norm(), "{g} vs {w}");
        }
        assert!((want[3].re - 5.0).abs() < 1e-14);
    }

    #[test]
    fn hermitian_partner_cases() {
        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 3.0, SignVariant::PlusPlus).unwrap();
        let h0 = hermitian_partner(&h).unwrap();
        assert!(h0.distance(&ComplexMatrix::from_real_rows([[-3.0, 4.0], [4.0, 3.0]])) < 1e-14);

        let h = build_hamiltonian(&rep2(), &[3.0], 5.0, 0.0, SignVariant::PlusPlus).unwrap();
        assert_eq!(&hermitian_partner(&h).unwrap(), h.matrix());

        let h = build_hamiltonian(&rep2(), &[3.0], 3.0, 5.0, SignVariant::PlusPlus).unwrap();
        assert!(hermitian_partner(&h).is_err());
    }

    #[test]
    fn mass_shell_equations_map_to_variants() {
        assert_eq!(SignVariant::mass_shell_equation(1).unwrap(), (SignVariant::PlusPlus, -1.0));
        assert_eq!(SignVariant::mass_shell_equation(4).unwrap(), (SignVariant::MinusMinus, 1.0));
        assert!(SignVariant::mass_shell_equation(5).is_err());
        assert_eq!("+-".parse::<SignVariant>().unwrap(), SignVariant::PlusMinus);
    }
}
