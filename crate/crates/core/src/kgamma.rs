//! Matrix k-Gamma, k-Beta and k-Pochhammer.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma;
use crate::matfun::{bounds_of, decompose, mat_power, DEFAULT_CONDITION_CAP};
use crate::matrix::ComplexMatrix;

pub(crate) fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("k must be a positive finite real, got {k}")))
    }
}

fn pole_error(l: Complex64) -> Error {
    Error::DomainError { re: l.re, im: l.im, what: "eigenvalue/k is a pole of Gamma".into() }
}

/// `Gamma_k(m) = k^{m/k - I} Gamma(m/k)`.
pub fn k_gamma(m: &ComplexMatrix, k: f64) -> Result<ComplexMatrix> {
    check_k(k)?;
    let d = decompose(m, DEFAULT_CONDITION_CAP)?;
    if bounds_of(&d.values).1 <= 0.0 {
        log::warn!("k_gamma: argument is not positive stable; using the analytic continuation");
    }
    d.try_apply(|l| {
        if gamma::is_gamma_pole(l / k) {
            Err(pole_error(l))
        } else {
            Ok(gamma::gamma_k(l, k))
        }
    })
}

/// `Gamma_k(m)^{-1}`, computed spectrally.
pub fn k_gamma_inv(m: &ComplexMatrix, k: f64) -> Result<ComplexMatrix> {
    check_k(k)?;
    let d = decompose(m, DEFAULT_CONDITION_CAP)?;
    d.try_apply(|l| {
        if gamma::is_gamma_pole(l / k) {
            Err(pole_error(l))
        } else {
            Ok(gamma::rgamma_k(l, k))
        }
    })
}

/// Entire reciprocal `Gamma_k^{-1}(m)`: zero on eigenvalues at poles instead of an error.
pub fn k_rgamma(m: &ComplexMatrix, k: f64) -> Result<ComplexMatrix> {
    check_k(k)?;
    decompose(m, DEFAULT_CONDITION_CAP)?.apply(|l| gamma::rgamma_k(l, k))
}

/// Fails with [`Error::NonCommuting`] unless `|ab - ba| <= 1e-12 |a| |b|`.
pub fn ensure_commute(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    a.same_dim(b)?;
    let norm = a.commutator(b).norm_fro();
    if norm <= 1e-12 * a.norm_fro() * b.norm_fro() {
        Ok(())
    } else {
        Err(Error::NonCommuting { norm })
    }
}

/// `B_k(a, b) = Gamma_k(a) Gamma_k(b) Gamma_k^{-1}(a + b)`.
pub fn k_beta(a: &ComplexMatrix, b: &ComplexMatrix, k: f64) -> Result<ComplexMatrix> {
    ensure_commute(a, b)?;
    let ga = k_gamma(a, k)?;
    let gb = k_gamma(b, k)?;
    let gab = k_gamma_inv(&(a + b), k)?;
    Ok(&(&ga * &gb) * &gab)
}

/// `(m)_{n,k} = m (m + kI) ... (m + (n-1)kI)`.
pub fn k_pochhammer(m: &ComplexMatrix, n: usize, k: f64) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(m.dim());
    for l in 0..n {
        acc = &acc * &m.shift_real(k * l as f64);
    }
    acc
}

/// The table `(base)_{l,k}` for `l = 0..len`, grown by the defining recurrence.
#[derive(Debug, Clone)]
pub struct KPochhammerSequence {
    base: ComplexMatrix,
    k: f64,
    terms: Vec<ComplexMatrix>,
}

impl KPochhammerSequence {
    pub fn new(base: ComplexMatrix, k: f64) -> Self {
        let id = ComplexMatrix::identity(base.dim());
        KPochhammerSequence { base, k, terms: vec![id] }
    }

    pub fn with_len(base: ComplexMatrix, k: f64, len: usize) -> Self {
        let mut s = Self::new(base, k);
        s.extend_to(len);
        s
    }

    pub fn base(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn terms(&self) -> &[ComplexMatrix] {
        &self.terms
    }

    pub fn extend_to(&mut self, len: usize) {
        while self.terms.len() < len {
            let l = self.terms.len() - 1;
            let next = &self.terms[l] * &self.base.shift_real(self.k * l as f64);
            self.terms.push(next);
        }
    }

    /// `(base)_{l,k}`, extending the table as needed.
    pub fn get(&mut self, l: usize) -> &ComplexMatrix {
        self.extend_to(l + 1);
        &self.terms[l]
    }
}

/// Partial sum `sum_{n <= nmax} (m)_{n,k} zeta^n / n!` of `(1 - k zeta)^{-m/k}`.
pub fn k_binomial_series(m: &ComplexMatrix, k: f64, zeta: Complex64, nmax: usize) -> Result<ComplexMatrix> {
    check_k(k)?;
    if zeta.norm() >= 1.0 / k {
        return Err(Error::RadiusViolation { modulus: zeta.norm(), radius: 1.0 / k });
    }
    let mut term = ComplexMatrix::identity(m.dim());
    let mut sum = term.clone();
    for n in 1..=nmax {
        let factor = m.shift_real(k * (n - 1) as f64);
        term = (&term * &factor).scale(zeta / n as f64);
        sum += &term;
    }
    Ok(sum)
}

/// `(1 - k zeta)^{-m/k}` by the functional calculus.
pub fn k_binomial_closed(m: &ComplexMatrix, k: f64, zeta: Complex64) -> Result<ComplexMatrix> {
    check_k(k)?;
    let base = Complex64::new(1.0, 0.0) - zeta * k;
    let lb = base.ln();
    decompose(m, DEFAULT_CONDITION_CAP)?.apply(|l| (-(l / k) * lb).exp())
}

/// `k^{m/k - I}`, the power prefactor of `Gamma_k`.
pub fn k_power_prefactor(m: &ComplexMatrix, k: f64) -> Result<ComplexMatrix> {
    check_k(k)?;
    mat_power(k, &m.scale_real(1.0 / k).shift_real(-1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(x: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[x])
    }

    #[test]
    fn gamma_k_of_k_is_one() {
        for &k in &[0.5, 1.0, 2.0, 3.3] {
            let g = k_gamma(&scalar(k), k).unwrap();
            assert!((g[(0, 0)].re - 1.0).abs() < 1e-14);
            let gi = k_gamma_inv(&scalar(k), k).unwrap();
            assert!((gi[(0, 0)].re - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn gamma_of_small_integers() {
        let g = k_gamma(&ComplexMatrix::from_real_diag(&[1.0, 2.0]), 1.0).unwrap();
        assert!(g.rel_residual(&ComplexMatrix::identity(2)) < 1e-14);
        let gi = k_gamma_inv(&ComplexMatrix::from_real_diag(&[3.0, 4.0]), 1.0).unwrap();
        assert!(gi.rel_residual(&ComplexMatrix::from_real_diag(&[0.5, 1.0 / 6.0])) < 1e-14);
        let g2 = k_gamma(&scalar(3.0), 2.0).unwrap();
        assert!((g2[(0, 0)].re - 1.253_314_137_315_500_3).abs() < 1e-14);
    }

    #[test]
    fn poles_are_domain_errors() {
        assert!(matches!(k_gamma(&scalar(-4.0), 2.0), Err(Error::DomainError { .. })));
        assert!(matches!(k_gamma_inv(&scalar(0.0), 1.0), Err(Error::DomainError { .. })));
        assert_eq!(k_rgamma(&scalar(-2.0), 1.0).unwrap()[(0, 0)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn beta_examples() {
        for &k in &[0.5, 1.0, 2.5] {
            let b = k_beta(&scalar(k), &scalar(k), k).unwrap();
            assert!((b[(0, 0)].re - 1.0 / k).abs() < 1e-14);
        }
        let b = k_beta(&scalar(2.0), &scalar(3.0), 1.0).unwrap();
        assert!((b[(0, 0)].re - 1.0 / 12.0).abs() < 1e-15);
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 2.0]]).unwrap();
        let bm = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[1.0, 2.0]]).unwrap();
        assert!(matches!(k_beta(&a, &bm, 1.0), Err(Error::NonCommuting { .. })));
    }

    #[test]
    fn pochhammer_examples() {
        let m = ComplexMatrix::from_real_rows(&[&[0.3, 1.0], &[-0.2, 0.7]]).unwrap();
        assert_eq!(k_pochhammer(&m, 0, 1.7), ComplexMatrix::identity(2));
        assert_eq!(k_pochhammer(&scalar(2.0), 3, 1.0), scalar(24.0));
        assert_eq!(k_pochhammer(&scalar(1.0), 4, 2.0), scalar(105.0));
        let mut seq = KPochhammerSequence::new(m.clone(), 1.7);
        for n in 0..6 {
            assert_eq!(seq.get(n).clone(), k_pochhammer(&m, n, 1.7));
        }
    }

    #[test]
    fn binomial_series_examples() {
        let z = k_binomial_series(&scalar(1.0), 1.0, Complex64::new(0.0, 0.0), 10).unwrap();
        assert_eq!(z, scalar(1.0));
        let g = k_binomial_series(&scalar(1.0), 1.0, Complex64::new(0.5, 0.0), 60).unwrap();
        assert!((g[(0, 0)].re - 2.0).abs() < 1e-12);
        let m = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        let s = k_binomial_series(&m, 2.0, Complex64::new(0.3, 0.0), 80).unwrap();
        let want = ComplexMatrix::from_real_diag(&[0.4f64.powf(-0.5), 0.4f64.powf(-1.0)]);
        assert!(s.rel_residual(&want) < 1e-10);
        assert!(matches!(
            k_binomial_series(&m, 2.0, Complex64::new(0.5, 0.0), 10),
            Err(Error::RadiusViolation { .. })
        ));
    }
}
