//! Tanh-sinh quadrature for matrix-valued integrands.
//!
//! The rule hands the integrand both distances to the interval ends, computed
//! without cancellation, so callers can evaluate kernels such as
//! `(x - t)^{gamma - 1}` accurately right up to a singular endpoint.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Number of step halvings after the initial `h = 1/2` level.
    pub max_refinements: usize,
    /// Power behaviour `(x - a)^p`, `(b - x)^q` at the two ends, if known.
    pub endpoint_exponents: Option<(f64, f64)>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-10, rel_tol: 1e-10, max_refinements: 9, endpoint_exponents: None }
    }
}

impl QuadratureSpec {
    pub fn with_tol(tol: f64) -> Self {
        QuadratureSpec { abs_tol: tol, rel_tol: tol, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument("quadrature tolerances must be positive".into()));
        }
        if let Some((p, q)) = self.endpoint_exponents {
            check_exponent(p)?;
            check_exponent(q)?;
        }
        Ok(())
    }
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p > -1.0 {
        Ok(())
    } else {
        Err(Error::IntegrandSingular { exponent: p })
    }
}

const H0: f64 = 0.5;
const T_MAX: f64 = 6.5;
const MIN_LEVELS: usize = 2;

/// `(da, db, weight)` for the abscissa `t` on an interval of length `len`.
fn node(t: f64, len: f64) -> (f64, f64, f64) {
    let u = 0.5 * PI * t.sinh();
    let e = (-2.0 * u.abs()).exp();
    let near = len * e / (1.0 + e);
    let w = len * PI * t.cosh() * e / ((1.0 + e) * (1.0 + e));
    if t >= 0.0 {
        (len - near, near, w)
    } else {
        (near, len - near, w)
    }
}

/// `int_0^len g(da, db)` where `da`, `db` are the distances of the node to the two ends.
pub(crate) fn tanh_sinh(
    len: f64,
    dim: usize,
    spec: &QuadratureSpec,
    g: &dyn Fn(f64, f64) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    spec.validate()?;
    if !(len > 0.0 && len.is_finite()) {
        return Err(Error::InvalidArgument(format!("interval length must be positive and finite, got {len}")));
    }
    let eval = |t: f64| -> Result<Option<ComplexMatrix>> {
        let (da, db, w) = node(t, len);
        if da <= 0.0 || db <= 0.0 || w == 0.0 {
            return Ok(None);
        }
        let v = g(da, db)?;
        if !v.is_finite() {
            return Err(Error::NonConvergentQuadrature { estimate: f64::NAN, change: f64::INFINITY });
        }
        Ok(Some(v.scale_real(w)))
    };

    // First level fixes how far out each tail needs to go.
    let mut sum = eval(0.0)?.unwrap_or_else(|| ComplexMatrix::zeros(dim));
    let mut limits = [0.0f64; 2];
    for (side, sign) in [(0, 1.0), (1, -1.0)] {
        let mut negligible = 0;
        let mut j = 1;
        loop {
            let t = sign * H0 * j as f64;
            if t.abs() > T_MAX {
                break;
            }
            match eval(t)? {
                None => break,
                Some(v) => {
                    let small = v.norm_fro() <= 1e-18 * sum.norm_fro().max(f64::MIN_POSITIVE);
                    sum += &v;
                    limits[side] = t.abs();
                    negligible = if small { negligible + 1 } else { 0 };
                    if negligible >= 2 && t.abs() >= 2.0 {
                        break;
                    }
                }
            }
            j += 1;
        }
    }
    let mut estimate = sum.scale_real(H0);
    let mut h = H0;
    let mut change = f64::INFINITY;
    for level in 1..=spec.max_refinements {
        h *= 0.5;
        let mut fresh = ComplexMatrix::zeros(dim);
        for (side, sign) in [(0, 1.0), (1, -1.0)] {
            let mut j = 1usize;
            loop {
                let t = h * j as f64;
                if t > limits[side] + H0 {
                    break;
                }
                if let Some(v) = eval(sign * t)? {
                    fresh += &v;
                }
                j += 2;
            }
        }
        let next = &estimate.scale_real(0.5) + &fresh.scale_real(h);
        change = (&next - &estimate).norm_fro();
        estimate = next;
        let target = spec.abs_tol.max(spec.rel_tol * estimate.norm_fro());
        if level >= MIN_LEVELS && change <= target {
            return Ok(estimate);
        }
    }
    Err(Error::NonConvergentQuadrature { estimate: estimate.norm_fro(), change })
}

/// `int_a^b f(t) dt` over a finite interval.
pub fn integrate_interval(
    a: f64,
    b: f64,
    dim: usize,
    spec: &QuadratureSpec,
    f: &dyn Fn(f64) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    if a == b {
        return Ok(ComplexMatrix::zeros(dim));
    }
    if a > b {
        return Ok(-&integrate_interval(b, a, dim, spec, f)?);
    }
    tanh_sinh(b - a, dim, spec, &|da, db| f(if da <= db { a + da } else { b - db }))
}

/// `int_a^inf f(t) dt` for `f` decaying like `exp(-rate t)`, via `t = a - ln(v) / rate`.
///
/// `g` receives `t` and the accurately computed `t - a`.
pub(crate) fn integrate_exp_tail(
    a: f64,
    rate: f64,
    dim: usize,
    spec: &QuadratureSpec,
    g: &dyn Fn(f64, f64) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    tanh_sinh(1.0, dim, spec, &|dv, dw| {
        // v = dv, 1 - v = dw
        let off = if dw < 0.5 { -(-dw).ln_1p() / rate } else { -dv.ln() / rate };
        Ok(g(a + off, off)?.scale_real(1.0 / (rate * dv)))
    })
}

/// `int_a^inf f(t) dt` for algebraically decaying `f`, via `t = a + w / (1 - w)`.
pub(crate) fn integrate_rational_tail(
    a: f64,
    dim: usize,
    spec: &QuadratureSpec,
    g: &dyn Fn(f64, f64) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    tanh_sinh(1.0, dim, spec, &|dw, dv| {
        // w = dw, 1 - w = dv
        let off = dw / dv;
        let jac = 1.0 / (dv * dv);
        if !jac.is_finite() {
            // far enough out that an integrable tail contributes nothing
            return Ok(ComplexMatrix::zeros(dim));
        }
        Ok(g(a + off, off)?.scale_real(jac))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(x: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[x])
    }

    #[test]
    fn constant_and_inverse_sqrt() {
        let s = QuadratureSpec::default();
        let one = integrate_interval(0.0, 1.0, 1, &s, &|_| Ok(id(1.0))).unwrap();
        assert!((one[(0, 0)].re - 1.0).abs() < 1e-14);
        let spec = QuadratureSpec { endpoint_exponents: Some((-0.5, 0.0)), ..s };
        let v = integrate_interval(0.0, 1.0, 1, &spec, &|t| Ok(id(t.powf(-0.5)))).unwrap();
        assert!((v[(0, 0)].re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn strong_endpoint_singularity() {
        // int_0^1 t^{-0.9} = 10
        let v = integrate_interval(0.0, 1.0, 1, &QuadratureSpec::default(), &|t| Ok(id(t.powf(-0.9)))).unwrap();
        assert!((v[(0, 0)].re - 10.0).abs() < 1e-8, "{}", v[(0, 0)].re);
    }

    #[test]
    fn tails() {
        let s = QuadratureSpec::default();
        let g = integrate_exp_tail(0.0, 1.0, 1, &s, &|t, _| Ok(id((-t).exp() * t * t))).unwrap();
        assert!((g[(0, 0)].re - 2.0).abs() < 1e-10);
        let r = integrate_rational_tail(1.0, 1, &s, &|t, _| Ok(id(t.powi(-3)))).unwrap();
        assert!((r[(0, 0)].re - 0.5).abs() < 1e-10);
    }

    #[test]
    fn bad_exponent_is_rejected() {
        let spec = QuadratureSpec { endpoint_exponents: Some((-1.0, 0.0)), ..Default::default() };
        assert_eq!(
            integrate_interval(0.0, 1.0, 1, &spec, &|_| Ok(id(1.0))).unwrap_err(),
            Error::IntegrandSingular { exponent: -1.0 }
        );
    }
}
