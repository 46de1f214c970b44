//! PT and CPT inner products on spinors at fixed momentum.
//!
//! Both pairings are plain transpose products against an antilinear image,
//! `⟨f|g⟩_O = (O f)ᵀ·g`, with `O = γ0·K` for PT and `O = C∘γ0·K` for CPT.
//! In 2D the CPT pairing is the diagonal form
//!
//! ```text
//! ⟨Ψ|Ψ⟩_CPT = (m1 − m2)/m·|Ψ1|² + (m1 + m2)/m·|Ψ2|²,
//! ```
//!
//! whose weight matrix is `exp(−αγ5) = η0⁻¹`. The metric that makes `H`
//! self-adjoint is `η0` itself and is exposed as [`metric_inner`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{eigenvalues, ComplexMatrix};
use crate::dirac::Gamma5Hamiltonian;
use crate::error::{Error, Result};
use crate::massdomain::MassParams;
use crate::symmetry::MomentumOperator;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spinor {
    components: Vec<Complex64>,
}

impl Spinor {
    pub fn new(components: Vec<Complex64>) -> Result<Self> {
        if components.len() != 2 && components.len() != 4 {
            return Err(Error::UnsupportedDimension(components.len()));
        }
        if components.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("spinor components must be finite".into()));
        }
        Ok(Self { components })
    }

    /// `(x + iy, u + iv)`.
    pub fn two(x: f64, y: f64, u: f64, v: f64) -> Result<Self> {
        Self::new(vec![Complex64::new(x, y), Complex64::new(u, v)])
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `M·ψ`.
    pub fn transformed(&self, m: &ComplexMatrix) -> Result<Self> {
        Self::new(m.apply(&self.components)?)
    }
}

fn check_dims(f: &Spinor, g: &Spinor, op: &MomentumOperator) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    if op.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: op.dim(), found: f.dim() });
    }
    Ok(())
}

/// `(O f)ᵀ·g`.
pub fn transpose_pairing(f: &Spinor, g: &Spinor, op: &MomentumOperator) -> Result<Complex64> {
    check_dims(f, g, op)?;
    let image = op.apply(f.components())?;
    Ok(image.iter().zip(g.components()).map(|(a, b)| a * b).sum())
}

/// `⟨f|g⟩_PT = (PT f)ᵀ·g` for the pairing operator `γ0·K` (see [`crate::symmetry::pt_pairing`]).
pub fn pt_inner(f: &Spinor, g: &Spinor, pt: &MomentumOperator) -> Result<Complex64> {
    transpose_pairing(f, g, pt)
}

/// `⟨f|g⟩_CPT = (C∘PT f)ᵀ·g`.
pub fn cpt_inner(f: &Spinor, g: &Spinor, c: &MomentumOperator, pt: &MomentumOperator) -> Result<Complex64> {
    let cpt = c.compose(pt)?;
    transpose_pairing(f, g, &cpt)
}

/// `((m1 − m2)/m, (m1 + m2)/m)`, the diagonal weights of the 2D CPT norm.
pub fn cpt_weights(m1: f64, m2: f64) -> Result<(f64, f64)> {
    let m = MassParams::new(m1, m2)?.real_mass()?;
    Ok(((m1 - m2) / m, (m1 + m2) / m))
}

/// `(m1 − m2)(x² + y²) + (m1 + m2)(u² + v²)`: the CPT norm times `m`, still
/// defined at `m1 = m2` where it is positive semidefinite.
pub fn cpt_quadratic_form(psi: &Spinor, m1: f64, m2: f64) -> Result<f64> {
    let [a, b] = two_components(psi)?;
    Ok((m1 - m2) * a.norm_sqr() + (m1 + m2) * b.norm_sqr())
}

/// Closed form of the 2D CPT norm.
pub fn cpt_norm_closed_form(psi: &Spinor, m1: f64, m2: f64) -> Result<f64> {
    let [a, b] = two_components(psi)?;
    let (w1, w2) = cpt_weights(m1, m2)?;
    Ok(w1 * a.norm_sqr() + w2 * b.norm_sqr())
}

fn two_components(psi: &Spinor) -> Result<[Complex64; 2]> {
    match psi.components() {
        [a, b] => Ok([*a, *b]),
        other => Err(Error::DimensionMismatch { expected: 2, found: other.len() }),
    }
}

/// `f†·η0·g`.
pub fn metric_inner(f: &Spinor, g: &Spinor, eta0: &MomentumOperator) -> Result<Complex64> {
    check_dims(f, g, eta0)?;
    let image = eta0.apply(g.components())?;
    Ok(f.components().iter().zip(&image).map(|(a, b)| a.conj() * b).sum())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenbasisReport {
    pub eigenvalues: Vec<Complex64>,
    /// Eigenvectors scaled so that the largest-magnitude component is `1`.
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub pt_norms: Vec<f64>,
    pub cpt_norms: Vec<f64>,
    /// Largest `|⟨vᵢ|vⱼ⟩_CPT|` over distinct eigenvectors.
    pub cpt_cross: f64,
    /// Norms under the `η0` metric, when one is supplied.
    pub metric_norms: Option<Vec<f64>>,
    pub metric_cross: Option<f64>,
}

impl EigenbasisReport {
    pub fn pt_signs_alternate(&self) -> bool {
        let pos = self.pt_norms.iter().filter(|&&x| x > 0.0).count();
        let neg = self.pt_norms.iter().filter(|&&x| x < 0.0).count();
        pos == neg && pos + neg == self.pt_norms.len()
    }

    pub fn cpt_positive(&self) -> bool {
        self.cpt_norms.iter().all(|&x| x > 0.0)
    }
}

/// PT and CPT norms of the eigenvectors of `H(p)`.
pub fn eigenbasis_diagnostics(
    h: &Gamma5Hamiltonian,
    c: &MomentumOperator,
    pt: &MomentumOperator,
    eta0: Option<&MomentumOperator>,
) -> Result<EigenbasisReport> {
    let lambdas = eigenvalues(h.matrix())?;
    let scale = h.norm().max(f64::MIN_POSITIVE);
    for (i, a) in lambdas.iter().enumerate() {
        for b in &lambdas[i + 1..] {
            if (a - b).norm() <= 1e-9 * scale {
                return Err(Error::DegenerateSpectrum);
            }
        }
    }

    let mut vectors = Vec::with_capacity(lambdas.len());
    for &lambda in &lambdas {
        let shifted = h.matrix() - &ComplexMatrix::identity(h.dim()).scale(lambda);
        vectors.push(Spinor::new(normalize_max(null_vector(&shifted)))?);
    }

    let mut pt_norms = Vec::new();
    let mut cpt_norms = Vec::new();
    let mut metric_norms = Vec::new();
    let mut cpt_cross: f64 = 0.0;
    let mut metric_cross: f64 = 0.0;
    for (i, vi) in vectors.iter().enumerate() {
        pt_norms.push(pt_inner(vi, vi, pt)?.re);
        cpt_norms.push(cpt_inner(vi, vi, c, pt)?.re);
        if let Some(eta0) = eta0 {
            metric_norms.push(metric_inner(vi, vi, eta0)?.re);
        }
        for vj in &vectors[i + 1..] {
            cpt_cross = cpt_cross.max(cpt_inner(vi, vj, c, pt)?.norm());
            if let Some(eta0) = eta0 {
                metric_cross = metric_cross.max(metric_inner(vi, vj, eta0)?.norm());
            }
        }
    }

    Ok(EigenbasisReport {
        eigenvalues: lambdas,
        eigenvectors: vectors.into_iter().map(|v| v.components).collect(),
        pt_norms,
        cpt_norms,
        cpt_cross,
        metric_norms: eta0.map(|_| metric_norms),
        metric_cross: eta0.map(|_| metric_cross),
    })
}

/// A vector spanning the kernel of a rank-deficient matrix (full-pivot elimination).
fn null_vector(m: &ComplexMatrix) -> Vec<Complex64> {
    let n = m.dim();
    let mut a: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j)).collect()).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    for k in 0..n {
        let mut best = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, z) in row.iter().enumerate().skip(k) {
                if z.norm() > best.2 {
                    best = (i, j, z.norm());
                }
            }
        }
        if best.2 == 0.0 || k == n - 1 {
            break;
        }
        a.swap(k, best.0);
        for row in a.iter_mut() {
            row.swap(k, best.1);
        }
        cols.swap(k, best.1);
        for i in k + 1..n {
            let factor = a[i][k] / a[k][k];
            for j in k..n {
                let delta = factor * a[k][j];
                a[i][j] -= delta;
            }
        }
        rank = k + 1;
    }
    // Free variables beyond the rank are set to zero except the first.
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    y[rank] = Complex64::new(1.0, 0.0);
    for k in (0..rank).rev() {
        let s: Complex64 = (k + 1..n).map(|j| a[k][j] * y[j]).sum();
        y[k] = -s / a[k][k];
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for (pos, &col) in cols.iter().enumerate() {
        x[col] = y[pos];
    }
    x
}

fn normalize_max(v: Vec<Complex64>) -> Vec<Complex64> {
    let pivot = v.iter().copied().fold(Complex64::new(0.0, 0.0), |best, z| if z.norm() > best.norm() { z } else { best });
    if pivot.norm() == 0.0 {
        return v;
    }
    v.into_iter().map(|z| z / pivot).collect()
}
