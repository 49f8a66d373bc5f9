//! Complex Schur decomposition and eigenvector extraction.
//!
//! Householder reduction to Hessenberg form followed by single-shift complex QR
//! with Wilkinson shifts. Eigenvectors come from back-substitution on the
//! triangular factor; eigenvalues that agree to rounding are treated as one
//! eigenspace, so derogatory but diagonalizable inputs (scalar matrices,
//! repeated spectra from commuting families) get well-conditioned bases while
//! genuine Jordan blocks blow the condition number up.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvalues together with the 1-norm condition number of the eigenvector basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub eigvec_condition: f64,
}

/// `m = V diag(values) V^{-1}`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMatrix,
    pub inverse: ComplexMatrix,
    pub condition: f64,
}

impl EigenDecomposition {
    pub fn compute(m: &ComplexMatrix) -> Result<Self> {
        m.check_finite()?;
        let n = m.dim();
        if is_diagonal(m) {
            return Ok(EigenDecomposition {
                values: (0..n).map(|i| m[(i, i)]).collect(),
                vectors: ComplexMatrix::identity(n),
                inverse: ComplexMatrix::identity(n),
                condition: 1.0,
            });
        }
        let s = pow2_scale(m);
        let (t, z) = schur_unit(&m.scale_real(1.0 / s))?;
        let x = triangular_eigenvectors(&t);
        let mut v = &z * &x;
        for j in 0..n {
            let norm = (0..n).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
            for i in 0..n {
                v[(i, j)] /= norm;
            }
        }
        let values = (0..n).map(|i| t[(i, i)] * s).collect();
        match v.inverse() {
            Ok(inv) => {
                let condition = (v.norm_one() * inv.norm_one()).max(1.0);
                Ok(EigenDecomposition { values, vectors: v, inverse: inv, condition })
            }
            Err(_) => Ok(EigenDecomposition {
                values,
                inverse: ComplexMatrix::identity(n),
                vectors: v,
                condition: f64::INFINITY,
            }),
        }
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum { eigenvalues: self.values.clone(), eigvec_condition: self.condition }
    }

    pub fn ensure_condition(&self, cap: f64) -> Result<()> {
        if self.condition > cap {
            Err(Error::DefectiveMatrix { condition: self.condition, cap })
        } else {
            Ok(())
        }
    }

    /// `V diag(f(lambda)) V^{-1}`; `f` may refuse an eigenvalue.
    pub fn try_apply(&self, f: impl Fn(Complex64) -> Result<Complex64>) -> Result<ComplexMatrix> {
        let fv = self.values.iter().map(|&l| f(l)).collect::<Result<Vec<_>>>()?;
        for (&l, v) in self.values.iter().zip(&fv) {
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::DomainError {
                    re: l.re,
                    im: l.im,
                    what: "function value is not finite".into(),
                });
            }
        }
        Ok(self.rebuild(&fv))
    }

    pub fn apply(&self, f: impl Fn(Complex64) -> Complex64) -> Result<ComplexMatrix> {
        self.try_apply(|l| Ok(f(l)))
    }

    /// `V diag(d) V^{-1}` for precomputed eigenvalue images.
    pub fn rebuild(&self, d: &[Complex64]) -> ComplexMatrix {
        let n = self.values.len();
        let mut vd = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                vd[(i, j)] *= d[j];
            }
        }
        &vd * &self.inverse
    }
}

fn is_diagonal(m: &ComplexMatrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == ZERO))
}

/// Power of two near the Frobenius norm, so scaling by it is exact.
fn pow2_scale(m: &ComplexMatrix) -> f64 {
    // largest entry, since squared norms underflow for tiny matrices
    let n = m.dim();
    let f = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].norm()).fold(0.0, f64::max);
    if f > 0.0 && f.is_finite() {
        2f64.powi((f.log2().round() as i32).clamp(-1000, 1000))
    } else {
        1.0
    }
}

/// Unitary reduction `m = Z T Z^H` with `T` upper triangular.
pub fn schur(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let s = pow2_scale(m);
    let (t, z) = schur_unit(&m.scale_real(1.0 / s))?;
    Ok((t.scale_real(s), z))
}

/// [`schur`] for a matrix of moderate norm.
fn schur_unit(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = m.dim();
    let (mut h, mut z) = hessenberg(m);
    if n == 1 {
        return Ok((h, z));
    }
    let scale = h.norm_fro().max(f64::MIN_POSITIVE);
    let max_sweeps = 100 * n;
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let reference = if diag == 0.0 { scale } else { diag };
            if sub <= f64::EPSILON * reference {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        sweeps += 1;
        since_deflation += 1;
        if sweeps > max_sweeps {
            return Err(Error::EigenFailure { iterations: sweeps });
        }
        let shift = if since_deflation % 11 == 0 {
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_sweep(&mut h, &mut z, lo, hi, shift);
    }
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok((h, z))
}

fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Explicit shifted QR step on the active block `lo..=hi`, applied to the full matrix.
fn qr_sweep(h: &mut ComplexMatrix, z: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    let n = h.dim();
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for j in lo..hi {
        let a = h[(j, j)];
        let b = h[(j + 1, j)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 { (ONE, ZERO) } else { (a / r, b / r) };
        for col in j..n {
            let x = h[(j, col)];
            let y = h[(j + 1, col)];
            h[(j, col)] = c.conj() * x + s.conj() * y;
            h[(j + 1, col)] = -s * x + c * y;
        }
        rots.push((c, s));
    }
    for (off, &(c, s)) in rots.iter().enumerate() {
        let j = lo + off;
        for row in 0..=(j + 1).min(hi) {
            rotate_cols(h, row, j, c, s);
        }
        for row in 0..n {
            rotate_cols(z, row, j, c, s);
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

#[inline]
fn rotate_cols(m: &mut ComplexMatrix, row: usize, j: usize, c: Complex64, s: Complex64) {
    let u = m[(row, j)];
    let v = m[(row, j + 1)];
    m[(row, j)] = u * c + v * s;
    m[(row, j + 1)] = -u * s.conj() + v * c.conj();
}

fn hessenberg(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.dim();
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for j in 0..n.saturating_sub(2) {
        let norm = (j + 1..n).map(|i| h[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = h[(j + 1, j)];
        let phase = if x0.norm() == 0.0 { ONE } else { x0 / x0.norm() };
        let mut v: Vec<Complex64> = (j + 1..n).map(|i| h[(i, j)]).collect();
        v[0] += phase * norm;
        let vnorm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for c in v.iter_mut() {
            *c /= vnorm;
        }
        // H <- (I - 2vv^H) H
        for col in 0..n {
            let dot: Complex64 = (j + 1..n).map(|i| v[i - j - 1].conj() * h[(i, col)]).sum();
            for i in j + 1..n {
                h[(i, col)] -= v[i - j - 1] * dot * 2.0;
            }
        }
        // H <- H (I - 2vv^H), Q <- Q (I - 2vv^H)
        for target in [&mut h, &mut q] {
            for row in 0..n {
                let dot: Complex64 = (j + 1..n).map(|i| target[(row, i)] * v[i - j - 1]).sum();
                for i in j + 1..n {
                    target[(row, i)] -= dot * v[i - j - 1].conj() * 2.0;
                }
            }
        }
        for i in j + 2..n {
            h[(i, j)] = ZERO;
        }
    }
    (h, q)
}

/// Right eigenvectors of an upper-triangular matrix, one per column.
fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.dim();
    let tnorm = t.norm_fro().max(f64::MIN_POSITIVE);
    let small = f64::EPSILON * tnorm;
    let cluster = 64.0 * f64::EPSILON * tnorm;
    let mut x = ComplexMatrix::zeros(n);
    for i in 0..n {
        let lambda = t[(i, i)];
        x[(i, i)] = ONE;
        for j in (0..i).rev() {
            let num: Complex64 = (j + 1..=i).map(|m| t[(j, m)] * x[(m, i)]).sum();
            let den = t[(j, j)] - lambda;
            let xnorm = (j + 1..=i).map(|m| x[(m, i)].norm()).fold(0.0, f64::max);
            x[(j, i)] = if den.norm() <= cluster {
                if num.norm() <= cluster * xnorm {
                    // same eigenspace; stay inside it
                    ZERO
                } else {
                    // Jordan coupling: make the defect show up in the condition number
                    -num / Complex64::new(small, 0.0)
                }
            } else {
                -num / den
            };
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstructs(m: &ComplexMatrix) {
        let d = EigenDecomposition::compute(m).unwrap();
        let back = d.rebuild(&d.values);
        assert!(back.rel_residual(m) < 1e-12, "{back:?} vs {m:?}");
    }

    #[test]
    fn schur_is_similarity() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 2.0), c(0.3, 0.0), c(-1.0, 0.5), c(0.0, 0.1)],
            vec![c(2.0, 0.0), c(-1.0, 1.0), c(0.7, 0.0), c(1.0, 1.0)],
            vec![c(0.0, -1.0), c(0.5, 0.5), c(3.0, 0.0), c(0.2, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.4, -0.3), c(-2.0, 0.0)],
        ])
        .unwrap();
        let (t, z) = schur(&m).unwrap();
        let back = &(&z * &t) * &z.conj_transpose();
        assert!(back.rel_residual(&m) < 1e-13);
        assert!((&z * &z.conj_transpose()).rel_residual(&ComplexMatrix::identity(4)) < 1e-14);
        for i in 0..4 {
            for j in 0..i {
                assert_eq!(t[(i, j)], ZERO);
            }
        }
        reconstructs(&m);
    }

    #[test]
    fn real_rotation_has_conjugate_pair() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]).unwrap();
        let mut ev = EigenDecomposition::compute(&m).unwrap().values;
        ev.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((ev[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn repeated_eigenvalue_diagonalizable_is_well_conditioned() {
        let v = ComplexMatrix::from_real_rows(&[&[1.0, 0.2, -0.1], &[0.3, 1.1, 0.2], &[0.0, -0.2, 0.9]])
            .unwrap();
        let d = ComplexMatrix::from_real_diag(&[2.0, 2.0, -1.0]);
        let m = &(&v * &d) * &v.inverse().unwrap();
        let dec = EigenDecomposition::compute(&m).unwrap();
        assert!(dec.condition < 1e3, "condition {}", dec.condition);
        reconstructs(&m);
    }

    #[test]
    fn jordan_block_is_flagged() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        let dec = EigenDecomposition::compute(&m).unwrap();
        assert!(dec.ensure_condition(1e8).is_err());
    }
}
