//! Term generation and summation.
//!
//! Coefficients are kept as a unit-norm matrix times `exp(log)` so that the
//! individually huge or tiny Pochhammer, factorial and reciprocal-Gamma
//! factors never overflow on their own. They are built once per [`Series`]
//! and reused across arguments.

use std::cell::RefCell;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::convergence::{classify_convergence, ConvergenceClass, ConvergenceTag, CIRCLE_RTOL};
use super::params::ParamSet;
use crate::eigen::EigenDecomposition;
use crate::error::{Error, Result};
use crate::gamma::ln_rgamma_k;
use crate::kgamma::k_pochhammer;
use crate::matfun::DEFAULT_CONDITION_CAP;
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    /// Stop once three consecutive `|term| / |sum|` fall below this.
    pub tol: f64,
    pub max_terms: usize,
    /// Reject arguments outside the disc of convergence.
    pub radius_guard: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { tol: 1e-14, max_terms: 500, radius_guard: true }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: ComplexMatrix,
    pub terms_used: usize,
    /// `|last term| / |sum|`.
    pub residual_estimate: f64,
    pub convergence: ConvergenceClass,
}

/// `m * exp(log)` with `|m|_F = 1`, or the zero matrix when `log = -inf`.
#[derive(Debug, Clone)]
struct Scaled {
    m: ComplexMatrix,
    log: f64,
}

impl Scaled {
    fn one(n: usize) -> Self {
        Self::new(ComplexMatrix::identity(n), 0.0)
    }

    fn new(m: ComplexMatrix, log: f64) -> Self {
        let norm = m.norm_fro();
        if norm == 0.0 || log == f64::NEG_INFINITY {
            Scaled { m: ComplexMatrix::zeros(m.dim()), log: f64::NEG_INFINITY }
        } else {
            Scaled { m: m.scale_real(1.0 / norm), log: log + norm.ln() }
        }
    }

    fn mul(&self, other: &Scaled) -> Scaled {
        Scaled::new(&self.m * &other.m, self.log + other.log)
    }

    fn is_zero(&self) -> bool {
        self.log == f64::NEG_INFINITY
    }
}

enum Argument<'a> {
    Scalar(Complex64),
    Matrix(&'a ComplexMatrix),
}

struct State {
    coefs: Vec<Scaled>,
    a: Scaled,
    p: Vec<Scaled>,
    q_inv: Vec<Scaled>,
    ln_factorial: f64,
}

/// A parameter set with its coefficient table.
///
/// Not `Sync`; build one per thread.
pub struct Series {
    params: ParamSet,
    gamma_factor: bool,
    state: RefCell<State>,
}

impl Series {
    pub fn new(params: &ParamSet) -> Self {
        Self::build(params, true)
    }

    /// The series with the `Gamma_k^{-1}(lB + C)` factor dropped (`B`, `C` are ignored).
    pub fn hypergeometric(params: &ParamSet) -> Self {
        Self::build(params, false)
    }

    fn build(params: &ParamSet, gamma_factor: bool) -> Self {
        let n = params.dim();
        let state = State {
            coefs: Vec::new(),
            a: Scaled::one(n),
            p: vec![Scaled::one(n); params.r()],
            q_inv: vec![Scaled::one(n); params.s()],
            ln_factorial: 0.0,
        };
        Series { params: params.clone(), gamma_factor, state: RefCell::new(state) }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    fn coefficient(&self, ell: usize) -> Result<Scaled> {
        let mut st = self.state.borrow_mut();
        while st.coefs.len() <= ell {
            let l = st.coefs.len();
            self.push_coefficient(&mut st, l)?;
        }
        Ok(st.coefs[ell].clone())
    }

    fn push_coefficient(&self, st: &mut State, l: usize) -> Result<()> {
        let p = &self.params;
        let k = p.k;
        if l > 0 {
            st.ln_factorial += (l as f64).ln();
        }
        let mut c = st.a.clone();
        for pi in &st.p {
            c = c.mul(pi);
        }
        for qi in st.q_inv.iter().rev() {
            c = c.mul(qi);
        }
        if self.gamma_factor {
            c = c.mul(&rgamma_scaled(&(&p.b.scale_real(l as f64) + &p.c), k, l)?);
        }
        c.log -= st.ln_factorial;
        st.coefs.push(c);

        let shift = k * l as f64;
        st.a = st.a.mul(&Scaled::new(p.a.shift_real(shift), 0.0));
        for (acc, m) in st.p.iter_mut().zip(&p.p) {
            *acc = acc.mul(&Scaled::new(m.shift_real(shift), 0.0));
        }
        for (j, (acc, m)) in st.q_inv.iter_mut().zip(&p.q).enumerate() {
            let inv = m
                .shift_real(shift)
                .inverse()
                .map_err(|_| Error::SingularQShift { index: j + 1, ell: l })?;
            *acc = Scaled::new(inv, 0.0).mul(acc);
        }
        Ok(())
    }

    /// `ln |term_l|_F` at scalar argument `z` for `l < n` (`-inf` for vanishing terms).
    pub fn term_log_norms(&self, z: Complex64, n: usize) -> Result<Vec<f64>> {
        let lz = z.norm().ln();
        (0..n)
            .map(|l| {
                let c = self.coefficient(l)?;
                Ok(if c.is_zero() {
                    f64::NEG_INFINITY
                } else if l == 0 {
                    c.log
                } else {
                    c.log + l as f64 * lz
                })
            })
            .collect()
    }

    fn check_radius(&self, modulus: f64, opts: &EvalOptions) -> Result<()> {
        if !opts.radius_guard || modulus == 0.0 {
            return Ok(());
        }
        let (r, s) = if self.gamma_factor {
            (self.params.r(), self.params.s())
        } else {
            (self.params.r() + 1, self.params.s())
        };
        if r > s + 1 {
            return Err(Error::RadiusViolation { modulus, radius: 0.0 });
        }
        let radius = 1.0 / self.params.k;
        if r == s + 1 && modulus >= radius * (1.0 - CIRCLE_RTOL) {
            // the circle is admitted where the classifier says the series converges there
            let on_circle = modulus <= radius * (1.0 + CIRCLE_RTOL);
            let admitted = on_circle
                && self.gamma_factor
                && matches!(
                    classify_convergence(&self.params, Complex64::new(modulus, 0.0))?.tag,
                    ConvergenceTag::OnCircleAbsolute | ConvergenceTag::OnCircleConditional
                );
            if !admitted {
                return Err(Error::RadiusViolation { modulus, radius });
            }
        }
        Ok(())
    }

    fn prepare(&self, opts: &EvalOptions) -> Result<()> {
        opts.validate()?;
        self.params.check_q(opts.max_terms)
    }

    pub fn eval(&self, z: Complex64, opts: &EvalOptions) -> Result<EvalResult> {
        self.prepare(opts)?;
        self.check_radius(z.norm(), opts)?;
        let (value, terms_used, residual_estimate) = self.sum(&Argument::Scalar(z), &|_| 1.0, opts)?;
        let convergence = classify_convergence(&self.params, z)?;
        Ok(EvalResult { value, terms_used, residual_estimate, convergence })
    }

    /// Evaluation at a matrix argument `X`, with `X^l` multiplying each term on the left.
    pub fn eval_matrix(&self, x: &ComplexMatrix, opts: &EvalOptions) -> Result<EvalResult> {
        self.prepare(opts)?;
        self.params.a.same_dim(x)?;
        let rho = spectral_radius(x)?;
        self.check_radius(rho, opts)?;
        let (value, terms_used, residual_estimate) = self.sum(&Argument::Matrix(x), &|_| 1.0, opts)?;
        let convergence = classify_convergence(&self.params, Complex64::new(rho, 0.0))?;
        Ok(EvalResult { value, terms_used, residual_estimate, convergence })
    }

    /// `sum_l w(l) term_l(z)`.
    pub fn weighted(&self, z: Complex64, weight: &dyn Fn(usize) -> f64, opts: &EvalOptions) -> Result<ComplexMatrix> {
        self.prepare(opts)?;
        self.check_radius(z.norm(), opts)?;
        Ok(self.sum(&Argument::Scalar(z), weight, opts)?.0)
    }

    /// `theta^m R` with `theta = z d/dz`, summed term by term.
    pub fn theta_power(&self, z: Complex64, m: u32, opts: &EvalOptions) -> Result<ComplexMatrix> {
        self.weighted(z, &|l| (l as f64).powi(m as i32), opts)
    }

    fn sum(
        &self,
        arg: &Argument,
        weight: &dyn Fn(usize) -> f64,
        opts: &EvalOptions,
    ) -> Result<(ComplexMatrix, usize, f64)> {
        let n = self.params.dim();
        let zero_arg = match arg {
            Argument::Scalar(z) => z.norm() == 0.0,
            Argument::Matrix(x) => x.norm_fro() == 0.0,
        };
        if zero_arg {
            let c = self.coefficient(0)?;
            let v = if c.is_zero() { ComplexMatrix::zeros(n) } else { c.m.scale_real(c.log.exp() * weight(0)) };
            return Ok((v, 1, 0.0));
        }
        let mut sum = ComplexMatrix::zeros(n);
        let mut xpow = Scaled::one(n);
        let mut small = 0;
        let mut ratio = f64::INFINITY;
        for l in 0..opts.max_terms {
            let c = self.coefficient(l)?;
            let w = weight(l);
            let term = if c.is_zero() || w == 0.0 {
                ComplexMatrix::zeros(n)
            } else {
                match arg {
                    Argument::Scalar(z) => {
                        let e = Complex64::new(c.log, 0.0) + z.ln() * l as f64;
                        c.m.scale(e.exp() * w)
                    }
                    Argument::Matrix(_) => {
                        if xpow.is_zero() {
                            ComplexMatrix::zeros(n)
                        } else {
                            (&xpow.m * &c.m).scale_real((xpow.log + c.log).exp() * w)
                        }
                    }
                }
            };
            if let Argument::Matrix(x) = arg {
                xpow = Scaled::new((*x).clone(), 0.0).mul(&xpow);
            }
            if !term.is_finite() {
                return Err(Error::TruncationFailure { terms: l + 1, ratio: f64::INFINITY });
            }
            sum += &term;
            let tn = term.norm_fro();
            let sn = sum.norm_fro();
            ratio = if tn == 0.0 {
                0.0
            } else if sn == 0.0 {
                f64::INFINITY
            } else {
                tn / sn
            };
            if ratio < opts.tol {
                small += 1;
                if small >= 3 {
                    return Ok((sum, l + 1, ratio));
                }
            } else {
                small = 0;
            }
        }
        Err(Error::TruncationFailure { terms: opts.max_terms, ratio })
    }
}

/// `Gamma_k^{-1}(m)` in scaled form, failing with the offending `l` if `m` is not diagonalizable.
fn rgamma_scaled(m: &ComplexMatrix, k: f64, ell: usize) -> Result<Scaled> {
    let d = EigenDecomposition::compute(m)?;
    if d.condition > DEFAULT_CONDITION_CAP {
        return Err(Error::GammaDomainError {
            ell,
            reason: format!("lB + C is not diagonalizable (eigenvector condition {:.3e})", d.condition),
        });
    }
    let logs: Vec<Option<Complex64>> = d.values.iter().map(|&l| ln_rgamma_k(l, k)).collect();
    let top = logs.iter().flatten().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Ok(Scaled::new(ComplexMatrix::zeros(m.dim()), f64::NEG_INFINITY));
    }
    let vals: Vec<Complex64> = logs
        .iter()
        .map(|l| l.map_or(Complex64::new(0.0, 0.0), |l| (l - top).exp()))
        .collect();
    Ok(Scaled::new(d.rebuild(&vals), top))
}

pub(crate) fn spectral_radius(x: &ComplexMatrix) -> Result<f64> {
    Ok(EigenDecomposition::compute(x)?.values.iter().map(|l| l.norm()).fold(0.0, f64::max))
}

/// Evaluates the series at `z`.
pub fn eval_series(p: &ParamSet, z: Complex64, opts: &EvalOptions) -> Result<EvalResult> {
    Series::new(p).eval(z, opts)
}

/// Evaluates the series at a matrix argument (`X^l` on the left of each term).
pub fn eval_series_matrix(p: &ParamSet, x: &ComplexMatrix, opts: &EvalOptions) -> Result<EvalResult> {
    Series::new(p).eval_matrix(x, opts)
}

/// `theta R = sum_l l term_l`.
pub fn theta_apply(p: &ParamSet, z: Complex64, opts: &EvalOptions) -> Result<ComplexMatrix> {
    Series::new(p).theta_power(z, 1, opts)
}

pub fn theta_power(p: &ParamSet, z: Complex64, m: u32, opts: &EvalOptions) -> Result<ComplexMatrix> {
    Series::new(p).theta_power(z, m, opts)
}

/// `d^mu/dz^mu R` in closed form: Pochhammer prefactors times the series with
/// `A, P_i, Q_j` moved by `mu k I` and `C` replaced by `mu B + C`.
pub fn derivative(p: &ParamSet, z: Complex64, mu: u32, opts: &EvalOptions) -> Result<ComplexMatrix> {
    if mu == 0 {
        return Err(Error::InvalidArgument("derivative order must be at least 1".into()));
    }
    let n = mu as usize;
    let step = mu as f64 * p.k;
    let mut pre = k_pochhammer(&p.a, n, p.k);
    for pi in &p.p {
        pre = &pre * &k_pochhammer(pi, n, p.k);
    }
    for qj in p.q.iter().rev() {
        pre = &pre * &k_pochhammer(qj, n, p.k).inverse()?;
    }
    let shifted = ParamSet {
        k: p.k,
        a: p.a.shift_real(step),
        p: p.p.iter().map(|m| m.shift_real(step)).collect(),
        q: p.q.iter().map(|m| m.shift_real(step)).collect(),
        b: p.b.clone(),
        c: &p.b.scale_real(mu as f64) + &p.c,
    };
    Ok(&pre * &eval_series(&shifted, z, opts)?.value)
}

/// `ln |term_l|` for `l < n`; a diagnostic for growth and decay of the terms.
pub fn term_log_norms(p: &ParamSet, z: Complex64, n: usize) -> Result<Vec<f64>> {
    Series::new(p).term_log_norms(z, n)
}

/// The k-hypergeometric companion `sum_l x^l/l! (A)_{l,k} prod (P_i)_{l,k} [prod (Q_j)_{l,k}]^{-1}`
/// at a matrix argument. `B` and `C` of `p` play no role.
pub fn eval_hypergeometric_k(p: &ParamSet, x: &ComplexMatrix, opts: &EvalOptions) -> Result<EvalResult> {
    Series::hypergeometric(p).eval_matrix(x, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rrsk::ConvergenceTag;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn collapses_to_exponential() {
        let p = ParamSet::scalar(1.0, 1.0, &[], &[], 1.0, 1.0).unwrap();
        let r = eval_series(&p, c(1.0), &EvalOptions::default()).unwrap();
        assert!((r.value[(0, 0)].re - std::f64::consts::E).abs() < 1e-15);
        assert!(r.terms_used <= 25);
        assert!(r.residual_estimate <= 1e-14);
        assert_eq!(r.convergence.tag, ConvergenceTag::EntireInZ);
    }

    #[test]
    fn zero_argument_is_reciprocal_gamma_of_c() {
        let p = ParamSet::scalar(1.5, 0.7, &[1.1], &[2.3], 1.2, 3.0).unwrap();
        let r = eval_series(&p, c(0.0), &EvalOptions::default()).unwrap();
        assert_eq!(r.terms_used, 1);
        let want = crate::gamma::rgamma_k(c(3.0), 1.5);
        assert!((r.value[(0, 0)] - want).norm() < 1e-15);
        assert_eq!(theta_apply(&p, c(0.0), &EvalOptions::default()).unwrap(), ComplexMatrix::zeros(1));
    }

    #[test]
    fn theta_and_derivative_on_exponential() {
        let p = ParamSet::scalar(1.0, 1.0, &[], &[], 1.0, 1.0).unwrap();
        let o = EvalOptions::default();
        let t = theta_apply(&p, c(0.7), &o).unwrap();
        assert!((t[(0, 0)].re - 0.7 * 0.7f64.exp()).abs() < 1e-14);
        let d = derivative(&p, c(0.7), 1, &o).unwrap();
        assert!((d[(0, 0)].re - 0.7f64.exp()).abs() < 1e-14);
    }

    #[test]
    fn guard_and_truncation() {
        let p = ParamSet::scalar(2.0, 1.0, &[1.0, 1.5], &[2.5], 2.0, 1.0).unwrap();
        let o = EvalOptions::default();
        assert!(matches!(eval_series(&p, c(0.55), &o), Err(Error::RadiusViolation { .. })));
        let off = EvalOptions { radius_guard: false, ..o };
        assert!(matches!(eval_series(&p, c(0.55), &off), Err(Error::TruncationFailure { .. })));
        let many = ParamSet::scalar(1.0, 1.0, &[1.0, 1.0, 1.0], &[2.0], 1.0, 1.0).unwrap();
        assert!(matches!(eval_series(&many, c(0.1), &o), Err(Error::RadiusViolation { .. })));
        assert!(eval_series(&many, c(0.0), &o).is_ok());
    }

    #[test]
    fn circle_follows_the_classifier() {
        let o = EvalOptions::default();
        let heavy = ParamSet::scalar(1.0, 1.0, &[1.0, 1.0], &[9.0], 1.0, 1.0).unwrap();
        let r = eval_series(&heavy, Complex64::from_polar(1.0, 0.4), &o).unwrap();
        assert_eq!(r.convergence.tag, ConvergenceTag::OnCircleAbsolute);
        let light = ParamSet::scalar(1.0, 1.0, &[1.0, 1.0], &[1.5], 1.0, 1.0).unwrap();
        assert!(matches!(eval_series(&light, c(1.0), &o), Err(Error::RadiusViolation { .. })));
    }

    #[test]
    fn terminating_series() {
        // A = -3k truncates the series after four terms
        let p = ParamSet::scalar(0.5, -1.5, &[], &[], 1.0, 1.0).unwrap();
        let z = 0.8;
        let r = eval_series(&p, c(z), &EvalOptions::default()).unwrap();
        let mut want = 0.0;
        let mut poch = 1.0;
        let mut fact = 1.0;
        for l in 0..4 {
            if l > 0 {
                poch *= -1.5 + 0.5 * (l - 1) as f64;
                fact *= l as f64;
            }
            want += z.powi(l) / fact * poch * crate::gamma::rgamma_k(c(l as f64 + 1.0), 0.5).re;
        }
        assert!((r.value[(0, 0)].re - want).abs() < 1e-14 * want.abs().max(1.0));
    }
}
