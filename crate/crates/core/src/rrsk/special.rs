//! Named reductions of the series.

use super::params::ParamSet;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Three-parameter Mittag-Leffler `E^A_{B,C}`: the series with no `P` or `Q`.
pub fn mittag_leffler(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix, k: f64) -> Result<ParamSet> {
    ParamSet::new(k, a.clone(), vec![], vec![], b.clone(), c.clone())
}

/// Classical functions that are the `k = 1` series with some parameters pinned.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecialCase {
    /// Matrix K-function: all of `A, P, Q, B, C` free.
    KFunction {
        a: ComplexMatrix,
        p: Vec<ComplexMatrix>,
        q: Vec<ComplexMatrix>,
        b: ComplexMatrix,
        c: ComplexMatrix,
    },
    /// Generalized matrix M-series: `A = I`.
    MSeries { p: Vec<ComplexMatrix>, q: Vec<ComplexMatrix>, b: ComplexMatrix, c: ComplexMatrix },
    /// The classical `rR(s-1)` function: `A = I` and an extra leading `Q = I`; needs `r >= 1`.
    RRSClassic { p: Vec<ComplexMatrix>, q: Vec<ComplexMatrix>, b: ComplexMatrix, c: ComplexMatrix },
    /// Generalized hypergeometric `rFs`: `A = I`, `B = C = I`.
    HypergeometricF { p: Vec<ComplexMatrix>, q: Vec<ComplexMatrix> },
}

impl SpecialCase {
    fn dim(&self) -> Result<usize> {
        let first = match self {
            SpecialCase::KFunction { a, .. } => Some(a),
            SpecialCase::MSeries { b, .. } | SpecialCase::RRSClassic { b, .. } => Some(b),
            SpecialCase::HypergeometricF { p, q } => p.first().or(q.first()),
        };
        first
            .map(|m| m.dim())
            .ok_or_else(|| Error::InvalidReduction("need at least one parameter to fix the dimension".into()))
    }

    pub fn build(&self) -> Result<ParamSet> {
        let n = self.dim()?;
        let id = ComplexMatrix::identity(n);
        match self.clone() {
            SpecialCase::KFunction { a, p, q, b, c } => ParamSet::new(1.0, a, p, q, b, c),
            SpecialCase::MSeries { p, q, b, c } => ParamSet::new(1.0, id, p, q, b, c),
            SpecialCase::RRSClassic { p, q, b, c } => {
                if p.is_empty() {
                    return Err(Error::InvalidReduction("the classical function needs r >= 1".into()));
                }
                let mut qs = vec![id.clone()];
                qs.extend(q);
                ParamSet::new(1.0, id, p, qs, b, c)
            }
            SpecialCase::HypergeometricF { p, q } => ParamSet::new(1.0, id.clone(), p, q, id.clone(), id),
        }
    }
}

/// [`SpecialCase::build`] as a free function.
pub fn special_case(kind: &SpecialCase) -> Result<ParamSet> {
    kind.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rrsk::{eval_series, EvalOptions};
    use num_complex::Complex64;

    fn s(x: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[x])
    }

    #[test]
    fn hypergeometric_with_cancelling_parameters_is_exp() {
        let p = special_case(&SpecialCase::HypergeometricF { p: vec![s(2.3)], q: vec![s(2.3)] }).unwrap();
        let v = eval_series(&p, Complex64::new(0.5, 0.0), &EvalOptions::default()).unwrap().value;
        assert!((v[(0, 0)].re - 0.5f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn k_function_at_zero() {
        let p = special_case(&SpecialCase::KFunction { a: s(1.2), p: vec![], q: vec![], b: s(1.0), c: s(4.0) })
            .unwrap();
        let v = eval_series(&p, Complex64::new(0.0, 0.0), &EvalOptions::default()).unwrap().value;
        assert!((v[(0, 0)].re - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn classic_needs_a_numerator() {
        let kind = SpecialCase::RRSClassic { p: vec![], q: vec![], b: s(1.0), c: s(1.0) };
        assert!(matches!(kind.build(), Err(Error::InvalidReduction(_))));
    }

    #[test]
    fn mittag_leffler_cosh() {
        let p = mittag_leffler(&s(1.0), &s(2.0), &s(1.0), 1.0).unwrap();
        let v = eval_series(&p, Complex64::new(4.0, 0.0), &EvalOptions::default()).unwrap().value;
        assert!((v[(0, 0)].re - 2f64.cosh()).abs() < 1e-13);
    }
}
