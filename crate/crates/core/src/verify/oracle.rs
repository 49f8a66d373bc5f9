//! Scalar reference sums, coded directly from the series definition.
//!
//! Every family drawn by the sampler shares one eigenbasis, so a matrix identity
//! reduces to `dim` scalar identities. These sums never touch the matrix series
//! code and serve as the independent side of a check.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma::rgamma_k;

const STOP_RATIO: f64 = 1e-17;
const MAX_TERMS: usize = 1200;

/// The scalar parameters at one eigen-index.
#[derive(Debug, Clone)]
pub(crate) struct Scalar {
    pub k: f64,
    /// `None` drops the `(a)_l` factor altogether.
    pub a: Option<Complex64>,
    pub p: Vec<Complex64>,
    pub q: Vec<Complex64>,
    pub b: Complex64,
    pub c: Complex64,
    /// `false` drops the reciprocal-Gamma factor (hypergeometric mode).
    pub gamma: bool,
}

impl Scalar {
    /// Coefficient of `z^l` without the Gamma factor, by the term ratio.
    fn next_ratio(&self, l: usize) -> Complex64 {
        let kl = self.k * l as f64;
        let mut r = Complex64::new(1.0 / (l + 1) as f64, 0.0);
        if let Some(a) = self.a {
            r *= a + kl;
        }
        for p in &self.p {
            r *= p + kl;
        }
        for q in &self.q {
            r /= q + kl;
        }
        r
    }

    fn gamma_factor(&self, l: usize) -> Complex64 {
        if self.gamma {
            rgamma_k(self.b * l as f64 + self.c, self.k)
        } else {
            Complex64::new(1.0, 0.0)
        }
    }

    /// `sum_l term(l, c_l)` where `c_l` is the coefficient of `z^l` in the series.
    pub fn sum(&self, term: impl Fn(usize, Complex64) -> Complex64) -> Result<Complex64> {
        let mut coef = Complex64::new(1.0, 0.0);
        let mut total = Complex64::new(0.0, 0.0);
        let mut quiet = 0;
        for l in 0..MAX_TERMS {
            let t = term(l, coef * self.gamma_factor(l));
            if !t.is_finite() {
                return Err(Error::InvalidArgument(format!("reference term {l} is not finite")));
            }
            total += t;
            quiet = if t.norm() <= STOP_RATIO * total.norm() { quiet + 1 } else { 0 };
            if quiet >= 3 && l >= 4 {
                return Ok(total);
            }
            coef *= self.next_ratio(l);
        }
        Err(Error::InvalidArgument(format!("reference sum did not settle in {MAX_TERMS} terms")))
    }

    /// Plain value of the series at `z`.
    pub fn value(&self, z: Complex64) -> Result<Complex64> {
        self.sum(|l, c| c * z.powu(l as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_geometric() {
        let one = Complex64::new(1.0, 0.0);
        let exp = Scalar { k: 1.0, a: None, p: vec![], q: vec![], b: one, c: one, gamma: false };
        let z = Complex64::new(0.3, -0.7);
        assert!((exp.value(z).unwrap() - z.exp()).norm() < 1e-15);
        let geo = Scalar { k: 1.0, a: Some(one), p: vec![], q: vec![], b: one, c: one, gamma: false };
        assert!((geo.value(z * 0.5).unwrap() - one / (one - z * 0.5)).norm() < 1e-14);
    }
}
