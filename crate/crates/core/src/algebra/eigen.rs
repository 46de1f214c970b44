//! Eigenvalues of small dense complex matrices.
//!
//! Dimension 2 uses the closed form of the characteristic polynomial. Larger
//! matrices are reduced to Hessenberg form and iterated with Wilkinson-shifted
//! complex QR steps (Givens rotations), deflating from the bottom.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Largest dimension accepted by [`eigenvalues`].
pub const MAX_EIGEN_DIM: usize = 8;

/// All eigenvalues with multiplicity, sorted by (real, imaginary) ascending.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n == 0 || n > MAX_EIGEN_DIM {
        return Err(Error::UnsupportedDimension(n));
    }
    if !a.is_finite() {
        return Err(Error::InvalidArgument("non-finite matrix entry".into()));
    }
    let mut eigs = match n {
        1 => vec![a.get(0, 0)],
        2 => {
            let (l1, l2) = eig2(a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
            vec![l1, l2]
        }
        _ => hessenberg_qr(a)?,
    };
    sort_eigenvalues(&mut eigs);
    Ok(eigs)
}

/// Lexicographic (re, im) ordering.
pub fn sort_eigenvalues(eigs: &mut [Complex64]) {
    eigs.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
}

/// Largest distance between two spectra under greedy nearest matching.
///
/// Insensitive to the ordering ties that arise when real parts differ only by
/// roundoff. Infinite when the lengths differ.
pub fn spectral_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("lengths agree");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Roots of `λ² − (a+d)λ + (ad − bc)`.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = (a + d) * 0.5;
    let half_diff = (a - d) * 0.5;
    let root = (half_diff * half_diff + b * c).sqrt();
    (half_tr - root, half_tr + root)
}

fn hessenberg(a: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    let n = a.dim();
    let mut h: Vec<Vec<Complex64>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| h[i][k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[k + 1][k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[i][k]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // H <- (I - 2vv†) H
        for j in 0..n {
            let w: Complex64 = v.iter().enumerate().map(|(t, vt)| vt.conj() * h[k + 1 + t][j]).sum();
            for (t, vt) in v.iter().enumerate() {
                h[k + 1 + t][j] -= *vt * w * 2.0;
            }
        }
        // H <- H (I - 2vv†)
        for row in h.iter_mut() {
            let w: Complex64 = v.iter().enumerate().map(|(t, vt)| row[k + 1 + t] * vt).sum();
            for (t, vt) in v.iter().enumerate() {
                row[k + 1 + t] -= w * vt.conj() * 2.0;
            }
        }
        for row in h.iter_mut().skip(k + 2) {
            row[k] = ZERO;
        }
    }
    h
}

fn hessenberg_qr(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    let scale = a.norm();
    if scale == 0.0 {
        return Ok(vec![ZERO; n]);
    }
    let mut h = hessenberg(a);
    let eps = f64::EPSILON;
    let max_sweeps = 10 * n * n;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n as isize - 1;
    let mut sweeps = 0usize;
    let mut since_deflation = 0usize;

    while hi >= 0 {
        let hiu = hi as usize;
        if hiu == 0 {
            eigs.push(h[0][0]);
            break;
        }
        // Locate the start of the unreduced trailing block.
        let mut lo = hiu;
        while lo > 0 {
            let sub = h[lo][lo - 1].norm();
            let local = h[lo][lo].norm() + h[lo - 1][lo - 1].norm();
            if sub <= eps * local || sub <= eps * scale {
                h[lo][lo - 1] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hiu {
            eigs.push(h[hiu][hiu]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if lo + 1 == hiu {
            let (l1, l2) = eig2(h[lo][lo], h[lo][hiu], h[hiu][lo], h[hiu][hiu]);
            eigs.push(l1);
            eigs.push(l2);
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            return Err(Error::NonConvergence { residual: h[hiu][hiu - 1].norm() });
        }

        let shift = if since_deflation.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            h[hiu][hiu] + Complex64::new(0.75 * h[hiu][hiu - 1].norm(), 0.0)
        } else {
            let (l1, l2) = eig2(h[hiu - 1][hiu - 1], h[hiu - 1][hiu], h[hiu][hiu - 1], h[hiu][hiu]);
            let d = h[hiu][hiu];
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        qr_step(&mut h, lo, hiu, shift);
    }
    Ok(eigs)
}

/// One explicit shifted QR step `H − μI = QR`, `H ← RQ + μI` on the block `lo..=hi`.
fn qr_step(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[k][k] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (a, b) = (h[k][k], h[k + 1][k]);
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 { (Complex64::new(1.0, 0.0), ZERO) } else { (a / r, b / r) };
        for j in k..=hi {
            let (x, y) = (h[k][j], h[k + 1][j]);
            h[k][j] = c.conj() * x + s.conj() * y;
            h[k + 1][j] = -s * x + c * y;
        }
        rotations.push((c, s));
    }
    for (idx, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + idx;
        let last_row = (k + 2).min(hi);
        for row in h.iter_mut().take(last_row + 1).skip(lo) {
            let (x, y) = (row[k], row[k + 1]);
            row[k] = c * x + s * y;
            row[k + 1] = -s.conj() * x + c.conj() * y;
        }
    }
    for k in lo..=hi {
        h[k][k] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_case() {
        let a = ComplexMatrix::from_real_rows([[3.0, 0.0], [0.0, -3.0]]);
        assert_eq!(eigenvalues(&a).unwrap(), vec![c(-3.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn real_pair_from_non_hermitian() {
        let a = ComplexMatrix::from_real_rows([[-3.0, 2.0], [8.0, 3.0]]);
        let e = eigenvalues(&a).unwrap();
        assert!((e[0] - c(-5.0, 0.0)).norm() < 1e-14);
        assert!((e[1] - c(5.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn imaginary_pair() {
        let a = ComplexMatrix::from_real_rows([[0.0, -4.0], [4.0, 0.0]]);
        let e = eigenvalues(&a).unwrap();
        assert!((e[0] - c(0.0, -4.0)).norm() < 1e-14);
        assert!((e[1] - c(0.0, 4.0)).norm() < 1e-14);
    }

    #[test]
    fn rejects_oversized_matrix() {
        assert_eq!(eigenvalues(&ComplexMatrix::identity(9)), Err(Error::UnsupportedDimension(9)));
    }

    #[test]
    fn upper_triangular_4x4() {
        let a = ComplexMatrix::from_rows([
            [c(1.0, 0.0), c(2.0, 1.0), c(0.0, 3.0), c(4.0, 0.0)],
            [ZERO, c(-2.0, 0.5), c(1.0, 0.0), c(0.0, 0.0)],
            [ZERO, ZERO, c(3.0, -1.0), c(7.0, 0.0)],
            [ZERO, ZERO, ZERO, c(0.5, 0.0)],
        ]);
        let e = eigenvalues(&a).unwrap();
        let want = [c(-2.0, 0.5), c(0.5, 0.0), c(1.0, 0.0), c(3.0, -1.0)];
        for (x, y) in e.iter().zip(want) {
            assert!((x - y).norm() < 1e-12, "{x} vs {y}");
        }
    }

    #[test]
    fn permutation_matrix_with_unimodular_spectrum() {
        // Cyclic shift: eigenvalues are the fourth roots of unity, all of equal modulus.
        let mut a = ComplexMatrix::zeros(4);
        for i in 0..4 {
            a.set((i + 1) % 4, i, c(1.0, 0.0));
        }
        let e = eigenvalues(&a).unwrap();
        let want = [c(-1.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)];
        assert!(spectral_distance(&e, &want) < 1e-12, "{e:?}");
    }

    #[test]
    fn spectral_distance_ignores_order() {
        let a = [c(1e-17, 4.0), c(-1e-17, -4.0)];
        let b = [c(0.0, -4.0), c(0.0, 4.0)];
        assert!(spectral_distance(&a, &b) < 1e-16);
        assert_eq!(spectral_distance(&a, &b[..1]), f64::INFINITY);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(eigenvalues(&ComplexMatrix::zeros(4)).unwrap(), vec![ZERO; 4]);
    }
}
