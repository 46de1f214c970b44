//! Clifford-algebra representations in (1+1) and (3+1) dimensions.
//!
//! The (1+1)-dimensional set is
//!
//! ```text
//! γ0 = [[0, 1], [1, 0]]    γ1 = [[0, 1], [-1, 0]]    γ5 = -γ0γ1 = diag(1, -1)
//! ```
//!
//! and the (3+1)-dimensional set is the Dirac basis
//! `γ0 = diag(1, 1, -1, -1)`, `γi = offdiag(σi, -σi)`, `γ5 = offdiag(I, I)`,
//! which keeps `β = γ0` diagonal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, ONE, ZERO};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Spacetime dimension of a gamma representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spacetime {
    /// (1+1) dimensions, 2×2 matrices.
    D2,
    /// (3+1) dimensions, 4×4 matrices.
    D4,
}

impl Spacetime {
    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            2 => Ok(Self::D2),
            4 => Ok(Self::D4),
            other => Err(Error::UnsupportedDimension(other)),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Self::D2 => 2,
            Self::D4 => 4,
        }
    }

    /// Number of spatial momentum components.
    pub fn spatial(self) -> usize {
        self.dim() - 1
    }

    /// Matrix size of the spinor representation.
    pub fn spinor_dim(self) -> usize {
        self.dim()
    }
}

/// A concrete set of gamma matrices with `β = γ0` and `αᵢ = γ0γᵢ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaRep {
    spacetime: Spacetime,
    /// `γ^0, γ^1[, γ^2, γ^3]`
    gammas: Vec<ComplexMatrix>,
    gamma5: ComplexMatrix,
    alphas: Vec<ComplexMatrix>,
}

impl GammaRep {
    pub fn spacetime(&self) -> Spacetime {
        self.spacetime
    }

    /// Spinor (matrix) dimension.
    pub fn dim(&self) -> usize {
        self.spacetime.spinor_dim()
    }

    pub fn spatial_dim(&self) -> usize {
        self.spacetime.spatial()
    }

    pub fn gamma(&self, mu: usize) -> &ComplexMatrix {
        &self.gammas[mu]
    }

    pub fn gammas(&self) -> &[ComplexMatrix] {
        &self.gammas
    }

    pub fn gamma0(&self) -> &ComplexMatrix {
        &self.gammas[0]
    }

    pub fn gamma5(&self) -> &ComplexMatrix {
        &self.gamma5
    }

    pub fn beta(&self) -> &ComplexMatrix {
        &self.gammas[0]
    }

    pub fn alpha(&self, i: usize) -> &ComplexMatrix {
        &self.alphas[i]
    }

    pub fn alphas(&self) -> &[ComplexMatrix] {
        &self.alphas
    }

    pub fn identity(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.dim())
    }

    /// Metric diagonal `g^{μμ}` with signature (+, −, …).
    pub fn metric(&self, mu: usize) -> f64 {
        if mu == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `p_ν γ^ν = γ^0 p_0 − Σ γ^i p_i` for a contravariant momentum `(p0, p⃗)`.
    pub fn slash(&self, p0: f64, p: &[f64]) -> Result<ComplexMatrix> {
        if p.len() != self.spatial_dim() {
            return Err(Error::DimensionMismatch { expected: self.spatial_dim(), found: p.len() });
        }
        let mut out = self.gammas[0].scale_real(p0);
        for (g, &pi) in self.gammas[1..].iter().zip(p) {
            out = &out - &g.scale_real(pi);
        }
        Ok(out)
    }

    /// Largest entrywise deviation from the Clifford relations
    /// `{γ^μ, γ^ν} = 2g^{μν}`, `{γ5, γ^ν} = 0` and `γ5² = 1`.
    pub fn clifford_defect(&self) -> f64 {
        let id = self.identity();
        let mut worst: f64 = 0.0;
        for (mu, gm) in self.gammas.iter().enumerate() {
            for (nu, gn) in self.gammas.iter().enumerate() {
                let expect = if mu == nu { id.scale_real(2.0 * self.metric(mu)) } else { ComplexMatrix::zeros(self.dim()) };
                let ac = gm.anticommutator(gn).expect("rep matrices share a dimension");
                worst = worst.max((&ac - &expect).max_abs());
            }
            let ac5 = self.gamma5.anticommutator(gm).expect("rep matrices share a dimension");
            worst = worst.max(ac5.max_abs());
        }
        worst.max((&(&self.gamma5 * &self.gamma5) - &id).max_abs())
    }
}

/// Builds the gamma representation for the given spacetime dimension (2 or 4).
pub fn build_gamma_rep(dim_spacetime: usize) -> Result<GammaRep> {
    let spacetime = Spacetime::from_dim(dim_spacetime)?;
    let (gammas, gamma5) = match spacetime {
        Spacetime::D2 => {
            let g0 = ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]);
            let g1 = ComplexMatrix::from_real_rows([[0.0, 1.0], [-1.0, 0.0]]);
            let g5 = -&(&g0 * &g1);
            (vec![g0, g1], g5)
        }
        Spacetime::D4 => {
            let sigma = pauli();
            let g0 = ComplexMatrix::diagonal(&[ONE, ONE, -ONE, -ONE]);
            let mut gammas = vec![g0];
            for s in &sigma {
                gammas.push(block_offdiag(s, &-s));
            }
            let id2 = ComplexMatrix::identity(2);
            let g5 = block_offdiag(&id2, &id2);
            (gammas, g5)
        }
    };
    let alphas = gammas[1..].iter().map(|g| &gammas[0] * g).collect();
    Ok(GammaRep { spacetime, gammas, gamma5, alphas })
}

fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_real_rows([[0.0, 1.0], [1.0, 0.0]]),
        ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]]),
        ComplexMatrix::from_real_rows([[1.0, 0.0], [0.0, -1.0]]),
    ]
}

/// `[[0, upper], [lower, 0]]` from 2×2 blocks.
fn block_offdiag(upper: &ComplexMatrix, lower: &ComplexMatrix) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            m.set(i, j + 2, upper.get(i, j));
            m.set(i + 2, j, lower.get(i, j));
        }
    }
    m
}

/// `exp(scale·γ5) = cosh(scale)·I + sinh(scale)·γ5`, exact because `γ5² = I`.
pub fn mat_exp_gamma5(scale: f64, rep: &GammaRep) -> ComplexMatrix {
    let id = rep.identity();
    &id.scale_real(scale.cosh()) + &rep.gamma5().scale_real(scale.sinh())
}
