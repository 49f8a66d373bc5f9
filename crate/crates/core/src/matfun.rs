//! Holomorphic functional calculus by diagonalization.

use num_complex::Complex64;

use crate::eigen::{EigenDecomposition, Spectrum};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Largest eigenvector condition number accepted by [`mat_func`].
pub const DEFAULT_CONDITION_CAP: f64 = 1e8;

/// Margin used by [`check_shift_invertible`].
pub const DEFAULT_SHIFT_EPS: f64 = 1e-10;

pub fn spectrum(m: &ComplexMatrix) -> Result<Spectrum> {
    Ok(EigenDecomposition::compute(m)?.spectrum())
}

/// `(M(m), m(m))`: largest and smallest real part of the spectrum.
pub fn spectral_bounds(m: &ComplexMatrix) -> Result<(f64, f64)> {
    let ev = EigenDecomposition::compute(m)?.values;
    Ok(bounds_of(&ev))
}

pub(crate) fn bounds_of(ev: &[Complex64]) -> (f64, f64) {
    ev.iter().fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), l| (hi.max(l.re), lo.min(l.re)))
}

/// Diagonalizes `m`, rejecting bases worse than `cap`.
pub fn decompose(m: &ComplexMatrix, cap: f64) -> Result<EigenDecomposition> {
    let d = EigenDecomposition::compute(m)?;
    d.ensure_condition(cap)?;
    Ok(d)
}

pub fn mat_func(m: &ComplexMatrix, f: impl Fn(Complex64) -> Complex64) -> Result<ComplexMatrix> {
    mat_func_with_cap(m, f, DEFAULT_CONDITION_CAP)
}

pub fn mat_func_with_cap(
    m: &ComplexMatrix,
    f: impl Fn(Complex64) -> Complex64,
    cap: f64,
) -> Result<ComplexMatrix> {
    decompose(m, cap)?.apply(f)
}

/// `base^m = exp(m ln base)` for a positive real base.
pub fn mat_power(base: f64, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !(base > 0.0 && base.is_finite()) {
        return Err(Error::InvalidArgument(format!("power base must be positive, got {base}")));
    }
    let lb = base.ln();
    mat_func(m, |l| (l * lb).exp())
}

pub fn mat_exp(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    mat_func(m, |l| l.exp())
}

/// True iff `m + k l I` is invertible for every `0 <= l <= lmax`.
pub fn check_shift_invertible(m: &ComplexMatrix, k: f64, lmax: usize) -> bool {
    check_shift_invertible_eps(m, k, lmax, DEFAULT_SHIFT_EPS)
}

pub fn check_shift_invertible_eps(m: &ComplexMatrix, k: f64, lmax: usize, eps: f64) -> bool {
    first_singular_shift(m, k, lmax, eps).map_or(false, |hit| hit.is_none())
}

/// The smallest `l` at which `m + k l I` is singular, `Ok(None)` when there is none.
pub(crate) fn first_singular_shift(
    m: &ComplexMatrix,
    k: f64,
    lmax: usize,
    eps: f64,
) -> Result<Option<usize>> {
    let ev = EigenDecomposition::compute(m)?.values;
    let mut worst: Option<usize> = None;
    for l in ev {
        let nearest = (-l.re / k).round().clamp(0.0, lmax as f64) as usize;
        let gap = (l + k * nearest as f64).norm();
        if gap < eps * (1.0 + l.norm()) {
            worst = Some(worst.map_or(nearest, |w| w.min(nearest)));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn bounds_of_diagonal() {
        let m = ComplexMatrix::from_diag(&[c(2.0, 0.0), c(-1.0, 3.0)]);
        assert_eq!(spectral_bounds(&m).unwrap(), (2.0, -1.0));
        assert_eq!(spectral_bounds(&ComplexMatrix::identity(4)).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn exp_and_power_on_diagonals() {
        let m = ComplexMatrix::from_real_diag(&[0.0, 2f64.ln()]);
        let e = mat_exp(&m).unwrap();
        assert!(e.rel_residual(&ComplexMatrix::from_real_diag(&[1.0, 2.0])) < 1e-15);
        assert_eq!(mat_power(7.0, &ComplexMatrix::zeros(3)).unwrap(), ComplexMatrix::identity(3));
        let p = mat_power(std::f64::consts::E, &ComplexMatrix::from_real_diag(&[1.0, 2.0])).unwrap();
        let want = ComplexMatrix::from_real_diag(&[1f64.exp(), 2f64.exp()]);
        assert!(p.rel_residual(&want) < 1e-15);
    }

    #[test]
    fn shift_invertibility_examples() {
        assert!(check_shift_invertible(&ComplexMatrix::identity(2), 1.0, 100));
        assert!(!check_shift_invertible(&ComplexMatrix::from_real_diag(&[-2.0, 1.0]), 1.0, 10));
        assert!(!check_shift_invertible(&ComplexMatrix::from_real_diag(&[-3.5]), 0.5, 10));
        assert!(check_shift_invertible(&ComplexMatrix::from_real_diag(&[-3.5]), 0.5, 6));
    }

    #[test]
    fn defective_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 2.0]]).unwrap();
        assert!(matches!(mat_exp(&m), Err(Error::DefectiveMatrix { .. })));
    }
}
