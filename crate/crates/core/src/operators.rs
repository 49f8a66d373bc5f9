//! Integral transforms and fractional k-operators on matrix-valued functions
//! of a real variable.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::eigen::EigenDecomposition;
use crate::error::{Error, Result};
use crate::gamma::gamma_k_real;
use crate::kgamma::check_k;
use crate::matfun::{bounds_of, decompose, DEFAULT_CONDITION_CAP};
use crate::matrix::ComplexMatrix;
pub use crate::quadrature::QuadratureSpec;
use crate::quadrature::{integrate_exp_tail, integrate_interval, integrate_rational_tail, tanh_sinh};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    /// `[a, b]`
    Interval { a: f64, b: f64 },
    /// `[a, inf)`
    RightHalfLine { a: f64 },
    /// `(-inf, b]`
    LeftHalfLine { b: f64 },
}

impl Domain {
    pub fn contains(&self, t: f64) -> bool {
        match *self {
            Domain::Interval { a, b } => a <= t && t <= b,
            Domain::RightHalfLine { a } => a <= t,
            Domain::LeftHalfLine { b } => t <= b,
        }
    }

    fn left(&self) -> f64 {
        match *self {
            Domain::Interval { a, .. } | Domain::RightHalfLine { a } => a,
            Domain::LeftHalfLine { .. } => f64::NEG_INFINITY,
        }
    }

    fn right(&self) -> f64 {
        match *self {
            Domain::Interval { b, .. } | Domain::LeftHalfLine { b } => b,
            Domain::RightHalfLine { .. } => f64::INFINITY,
        }
    }
}

/// Caller-declared behaviour at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    None,
    /// `|f(t)| = O(exp(-rate |t|))`
    Exponential { rate: f64 },
    /// `|f(t)| = O(|t|^-power)`
    Algebraic { power: f64 },
}

type Evaluator<'f> = Box<dyn Fn(f64) -> Result<ComplexMatrix> + 'f>;
type AnalyticEvaluator<'f> = Box<dyn Fn(Complex64) -> Result<ComplexMatrix> + 'f>;
type OffsetEvaluator<'f> = Box<dyn Fn(f64, f64) -> Result<ComplexMatrix> + 'f>;

/// A matrix-valued function on a real interval together with the hints the
/// quadrature needs. The evaluator is only called from the current thread.
pub struct MatrixFunction1D<'f> {
    dim: usize,
    domain: Domain,
    decay: Decay,
    growth: f64,
    exponents: (f64, f64),
    eval: Evaluator<'f>,
    analytic: Option<AnalyticEvaluator<'f>>,
    offset: Option<OffsetEvaluator<'f>>,
}

impl<'f> MatrixFunction1D<'f> {
    pub fn new(dim: usize, domain: Domain, f: impl Fn(f64) -> Result<ComplexMatrix> + 'f) -> Self {
        MatrixFunction1D { dim, domain, decay: Decay::None, growth: 0.0, exponents: (0.0, 0.0), eval: Box::new(f), analytic: None, offset: None }
    }

    pub fn constant(m: ComplexMatrix, domain: Domain) -> Self {
        let dim = m.dim();
        Self::new(dim, domain, move |_| Ok(m.clone()))
    }

    pub fn zero(dim: usize, domain: Domain) -> Self {
        Self::constant(ComplexMatrix::zeros(dim), domain).with_decay(Decay::Exponential { rate: f64::INFINITY })
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    /// Exponential growth rate bounding `|f(t)|`, used by the Laplace transform.
    pub fn with_growth(mut self, growth: f64) -> Self {
        self.growth = growth;
        self
    }

    /// Analytic continuation of `f` into the quadrant `Re z <= 0 <= Im z`, bounded
    /// there by `exp(growth |z|)`. Lets [`frac_fourier`] rotate its contour.
    pub fn with_analytic(mut self, g: impl Fn(Complex64) -> Result<ComplexMatrix> + 'f) -> Self {
        self.analytic = Some(Box::new(g));
        self
    }

    /// Evaluator `(t0, u) -> f(t0 + u)` that keeps full precision in small `u`.
    /// Operators pass the exact distance from their anchor point, which matters
    /// when `f` is singular there and `t0 + u` would round `u` away.
    pub fn with_offset_eval(mut self, g: impl Fn(f64, f64) -> Result<ComplexMatrix> + 'f) -> Self {
        self.offset = Some(Box::new(g));
        self
    }

    /// Power behaviour at the left and right ends of the domain.
    pub fn with_endpoint_exponents(mut self, left: f64, right: f64) -> Self {
        self.exponents = (left, right);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn decay(&self) -> Decay {
        self.decay
    }

    pub fn eval(&self, t: f64) -> Result<ComplexMatrix> {
        if !self.domain.contains(t) {
            return Err(Error::InvalidArgument(format!("t = {t} is outside the domain {:?}", self.domain)));
        }
        let v = (self.eval)(t)?;
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        Ok(v)
    }

    fn eval_offset(&self, t0: f64, u: f64) -> Result<ComplexMatrix> {
        match &self.offset {
            None => self.eval(t0 + u),
            Some(g) => {
                if !self.domain.contains(t0 + u) {
                    return Err(Error::InvalidArgument(format!(
                        "t = {} is outside the domain {:?}",
                        t0 + u,
                        self.domain
                    )));
                }
                let v = g(t0, u)?;
                if v.dim() != self.dim {
                    return Err(Error::DimensionMismatch(self.dim, v.dim()));
                }
                Ok(v)
            }
        }
    }

    fn require_on(&self, lo: f64, hi: f64) -> Result<()> {
        if self.domain.left() <= lo && hi <= self.domain.right() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("[{lo}, {hi}] is not inside the domain {:?}", self.domain)))
        }
    }
}

fn effective_spec(f: &MatrixFunction1D, spec: &QuadratureSpec) -> Result<QuadratureSpec> {
    let mut s = *spec;
    if s.endpoint_exponents.is_none() {
        s.endpoint_exponents = Some(f.exponents);
    }
    s.validate()?;
    Ok(s)
}

/// `int f` over the function's domain.
pub fn integrate(f: &MatrixFunction1D, spec: &QuadratureSpec) -> Result<ComplexMatrix> {
    let s = effective_spec(f, spec)?;
    match f.domain {
        Domain::Interval { a, b } => integrate_interval(a, b, f.dim, &s, &|t| f.eval(t)),
        Domain::RightHalfLine { a } => half_line(f, a, 1.0, &s),
        Domain::LeftHalfLine { b } => half_line(f, b, -1.0, &s),
    }
}

fn half_line(f: &MatrixFunction1D, start: f64, dir: f64, s: &QuadratureSpec) -> Result<ComplexMatrix> {
    let g = |_: f64, off: f64| f.eval_offset(start, dir * off);
    match f.decay {
        Decay::Exponential { rate } if rate.is_infinite() => Ok(ComplexMatrix::zeros(f.dim)),
        Decay::Exponential { rate } if rate > 0.0 => integrate_exp_tail(0.0, rate, f.dim, s, &g),
        Decay::Algebraic { power } if power > 1.0 => integrate_rational_tail(0.0, f.dim, s, &g),
        other => Err(Error::NonDecayingIntegrand(format!("declared decay {other:?} is not integrable"))),
    }
}

/// `t^M` for `t > 0` from a precomputed decomposition of `M`, given `ln t`.
fn power_from(d: &EigenDecomposition, ln_t: f64) -> ComplexMatrix {
    let vals: Vec<Complex64> = d.values.iter().map(|l| (l * ln_t).exp()).collect();
    d.rebuild(&vals)
}

/// Decomposition of `M / k - I`, requiring `M` to be positive stable.
fn weight_exponent(m: &ComplexMatrix, k: f64, name: &str) -> Result<EigenDecomposition> {
    let d = decompose(&m.scale_real(1.0 / k).shift_real(-1.0), DEFAULT_CONDITION_CAP)?;
    let (_, lo) = bounds_of(&d.values);
    if lo + 1.0 <= 0.0 {
        let worst = d.values.iter().find(|l| l.re + 1.0 <= 0.0).copied().unwrap_or_default();
        return Err(Error::DomainError {
            re: k * (worst.re + 1.0),
            im: k * worst.im,
            what: format!("weight {name} must be positive stable"),
        });
    }
    Ok(d)
}

/// k-Beta transform `(1/k) int_0^1 t^{A/k - I} (1 - t)^{B/k - I} f(t) dt`, weights on the left.
pub fn beta_transform(
    f: &MatrixFunction1D,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_k(k)?;
    a.same_dim(b)?;
    if a.dim() != f.dim {
        return Err(Error::DimensionMismatch(a.dim(), f.dim));
    }
    f.require_on(0.0, 1.0)?;
    let da = weight_exponent(a, k, "A")?;
    let db = weight_exponent(b, k, "B")?;
    let mut s = *spec;
    if s.endpoint_exponents.is_none() {
        let pa = bounds_of(&da.values).1 + f.exponents.0;
        s.endpoint_exponents = Some((pa, bounds_of(&db.values).1));
    }
    s.validate()?;
    let v = tanh_sinh(1.0, f.dim, &s, &|d0, d1| {
        let t = if d0 <= d1 { d0 } else { 1.0 - d1 };
        let w = &power_from(&da, d0.ln()) * &power_from(&db, d1.ln());
        Ok(&w * &f.eval(t)?)
    })?;
    Ok(v.scale_real(1.0 / k))
}

/// Laplace transform `int_0^inf exp(-s t) f(t) dt`; needs `Re s` above the declared growth.
pub fn laplace_transform(f: &MatrixFunction1D, s: Complex64, spec: &QuadratureSpec) -> Result<ComplexMatrix> {
    if s.re <= f.growth {
        return Err(Error::GrowthViolation { re_s: s.re, growth: f.growth });
    }
    f.require_on(0.0, f64::INFINITY)?;
    let q = effective_spec(f, spec)?;
    let rate = s.re - f.growth;
    integrate_exp_tail(0.0, rate, f.dim, &q, &|t, _| Ok(f.eval(t)?.scale((-s * t).exp())))
}

/// Fractional k-Fourier transform `int_{-inf}^0 exp(i w^{1/alpha} z) f(z) dz`.
///
/// With an analytic extension the contour is turned onto the positive
/// imaginary axis, giving `-i int_0^inf exp(-w^{1/alpha} y) f(iy) dy`. Otherwise
/// `(-inf, 0]` is cut at the first probe `-T` beyond which `f` is negligible
/// and integrated in panels of roughly one oscillation.
pub fn frac_fourier(f: &MatrixFunction1D, w: f64, alpha: f64, spec: &QuadratureSpec) -> Result<ComplexMatrix> {
    if !(w > 0.0 && alpha > 0.0) {
        return Err(Error::InvalidArgument("frac_fourier needs w > 0 and alpha > 0".into()));
    }
    f.require_on(f64::NEG_INFINITY, 0.0)?;
    let q = effective_spec(f, spec)?;
    let omega = w.powf(1.0 / alpha);
    let panel = (2.0 * PI / omega).clamp(0.5, 4.0);
    if let Some(g) = &f.analytic {
        if omega <= f.growth {
            return Err(Error::GrowthViolation { re_s: omega, growth: f.growth });
        }
        let ray = |y: f64| Ok(g(Complex64::new(0.0, y))?.scale_real((-omega * y).exp()));
        let cut = decay_cut(&ray, &q, 1.0)?;
        let v = panels(cut, panel, f.dim, &q, &ray)?;
        return Ok(v.scale(Complex64::new(0.0, -1.0)));
    }
    let kernel = |t: f64| Ok(f.eval(-t)?.scale(Complex64::new(0.0, -omega * t).exp()));
    let cut = decay_cut(&|t| f.eval(-t), &q, 2.0)?;
    panels(cut, panel, f.dim, &QuadratureSpec { endpoint_exponents: Some((f.exponents.1, 0.0)), ..q }, &kernel)
}

/// First `T` on a geometric grid with `g` negligible at `T` and `reach T`.
fn decay_cut(g: &dyn Fn(f64) -> Result<ComplexMatrix>, q: &QuadratureSpec, reach: f64) -> Result<f64> {
    let scale = g(0.0)?.norm_fro().max(1.0);
    let negligible = 1e-3 * q.abs_tol.min(q.rel_tol) * scale;
    let mut t = 1.0;
    while t <= 65_536.0 {
        if g(t)?.norm_fro() <= negligible && g(0.5 * (1.0 + reach) * t)?.norm_fro() <= negligible
            && g(reach * t)?.norm_fro() <= negligible
        {
            return Ok(t);
        }
        t *= 1.25;
    }
    Err(Error::NonDecayingIntegrand("integrand is not negligible anywhere below 65536".into()))
}

/// `int_0^cut g` in panels; the first panel keeps the caller's endpoint exponents.
fn panels(
    cut: f64,
    width: f64,
    dim: usize,
    q: &QuadratureSpec,
    g: &dyn Fn(f64) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let count = (cut / width).ceil() as usize;
    let mut total = ComplexMatrix::zeros(dim);
    for i in 0..count {
        let spec = if i == 0 { *q } else { QuadratureSpec { endpoint_exponents: None, ..*q } };
        total += &integrate_interval(i as f64 * width, (i + 1) as f64 * width, dim, &spec, g)?;
    }
    Ok(total)
}

fn check_order(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")))
    }
}

/// k-Riemann-Liouville integral `1/(k Gamma_k(mu)) int_a^x (x - t)^{mu/k - 1} f(t) dt`.
///
/// The kernel is absorbed by `x - t = (x - a) v^{k/mu}`.
pub fn rl_integral(
    f: &MatrixFunction1D,
    a: f64,
    x: f64,
    mu: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_k(k)?;
    check_order("mu", mu)?;
    if x <= a {
        return Err(Error::InvalidArgument(format!("need x > a, got x = {x}, a = {a}")));
    }
    f.require_on(a, x)?;
    let gamma = mu / k;
    let len = x - a;
    let mut s = *spec;
    s.endpoint_exponents = Some((0.0, f.exponents.0));
    s.validate()?;
    let v = tanh_sinh(1.0, f.dim, &s, &|dv, dw| {
        // v = dv, 1 - v = dw; t - a = len (1 - v^{1/gamma})
        let ln_v = if dw < 0.5 { (-dw).ln_1p() } else { dv.ln() };
        f.eval_offset(a, (len * -(ln_v / gamma).exp_m1()).clamp(0.0, len))
    })?;
    let pre = len.powf(gamma) / (gamma * k * gamma_k_real(mu, k));
    Ok(v.scale_real(pre))
}

/// Finite-difference step used when none is given: `1e-5 max(1, |x|)`.
pub fn default_step(x: f64) -> f64 {
    1e-5 * x.abs().max(1.0)
}

/// Five-point central difference, Richardson-extrapolated between `h` and `h/2`.
fn derivative_at(g: &dyn Fn(f64) -> Result<ComplexMatrix>, x: f64, h: f64) -> Result<ComplexMatrix> {
    let v = |d: f64| g(x + d);
    let (p2, m2, p1, m1, ph, mh) = (v(2.0 * h)?, v(-2.0 * h)?, v(h)?, v(-h)?, v(0.5 * h)?, v(-0.5 * h)?);
    let d_h = (&(&m2 - &p2) + &(&p1 - &m1).scale_real(8.0)).scale_real(1.0 / (12.0 * h));
    let d_half = (&(&m1 - &p1) + &(&ph - &mh).scale_real(8.0)).scale_real(1.0 / (6.0 * h));
    Ok((&d_half.scale_real(16.0) - &d_h).scale_real(1.0 / 15.0))
}

fn tightened(spec: &QuadratureSpec) -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: spec.abs_tol.min(1e-13),
        rel_tol: spec.rel_tol.min(1e-13),
        max_refinements: spec.max_refinements.max(10),
        ..*spec
    }
}

fn check_step(h: f64, x: f64, lo: f64) -> Result<()> {
    if !(h > 4.0 * f64::EPSILON * x.abs().max(1.0)) || x - 2.0 * h <= lo {
        Err(Error::StepTooSmall { step: h, x })
    } else {
        Ok(())
    }
}

/// k-Riemann-Liouville derivative `d/dx I^{1 - mu}_{a,k} f` for `0 < mu < 1`.
pub fn rl_derivative(
    f: &MatrixFunction1D,
    a: f64,
    x: f64,
    mu: f64,
    k: f64,
    spec: &QuadratureSpec,
    step: Option<f64>,
) -> Result<ComplexMatrix> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::InvalidArgument(format!("derivative order must lie in (0, 1), got {mu}")));
    }
    let h = step.unwrap_or_else(|| default_step(x));
    check_step(h, x, a)?;
    let inner = tightened(spec);
    derivative_at(&|y| rl_integral(f, a, y, 1.0 - mu, k, &inner), x, h)
}

/// k-Weyl integral `1/(k Gamma_k(alpha)) int_x^inf (t - x)^{alpha/k - 1} f(t) dt`.
pub fn weyl_integral(
    f: &MatrixFunction1D,
    x: f64,
    alpha: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<ComplexMatrix> {
    check_k(k)?;
    check_order("alpha", alpha)?;
    f.require_on(x, f64::INFINITY)?;
    let gamma = alpha / k;
    let mut s = *spec;
    s.endpoint_exponents = Some((gamma - 1.0, 0.0));
    s.validate()?;
    let kernel = |_: f64, off: f64| {
        let w = off.powf(gamma - 1.0);
        if !w.is_finite() {
            // only reached far out in the tail, where the declared decay wins
            return Ok(ComplexMatrix::zeros(f.dim));
        }
        Ok(f.eval_offset(x, off)?.scale_real(w))
    };
    let v = match f.decay {
        Decay::Exponential { rate } if rate.is_infinite() => return Ok(ComplexMatrix::zeros(f.dim)),
        Decay::Exponential { rate } if rate > 0.0 => integrate_exp_tail(x, rate, f.dim, &s, &kernel)?,
        Decay::Algebraic { power } if power > gamma => integrate_rational_tail(x, f.dim, &s, &kernel)?,
        Decay::Algebraic { power } => {
            return Err(Error::NonDecayingIntegrand(format!(
                "decay power {power} does not exceed alpha/k = {gamma}"
            )))
        }
        other => return Err(Error::NonDecayingIntegrand(format!("declared decay {other:?}"))),
    };
    Ok(v.scale_real(1.0 / (k * gamma_k_real(alpha, k))))
}

/// k-Weyl derivative `-d/dx W^{1 - alpha}_k f` for `0 < alpha < 1`.
pub fn weyl_derivative(
    f: &MatrixFunction1D,
    x: f64,
    alpha: f64,
    k: f64,
    spec: &QuadratureSpec,
    step: Option<f64>,
) -> Result<ComplexMatrix> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("derivative order must lie in (0, 1), got {alpha}")));
    }
    let h = step.unwrap_or_else(|| default_step(x));
    check_step(h, x, f.domain.left())?;
    let inner = tightened(spec);
    Ok(-&derivative_at(&|y| weyl_integral(f, y, 1.0 - alpha, k, &inner), x, h)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma_real;

    fn s(x: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_diag(&[x])
    }

    fn unit() -> Domain {
        Domain::Interval { a: 0.0, b: 1.0 }
    }

    #[test]
    fn integrate_examples() {
        let q = QuadratureSpec::default();
        let one = integrate(&MatrixFunction1D::constant(ComplexMatrix::identity(2), unit()), &q).unwrap();
        assert!(one.rel_residual(&ComplexMatrix::identity(2)) < 1e-14);
        let f = MatrixFunction1D::new(1, unit(), |t| Ok(s(t.powf(-0.5)))).with_endpoint_exponents(-0.5, 0.0);
        assert!((integrate(&f, &q).unwrap()[(0, 0)].re - 2.0).abs() < 1e-10);
        let g = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(s((-t).exp() * t * t)))
            .with_decay(Decay::Exponential { rate: 1.0 });
        assert!((integrate(&g, &q).unwrap()[(0, 0)].re - 2.0).abs() < 1e-10);
        let bad = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |_| Ok(s(1.0)));
        assert!(matches!(integrate(&bad, &q), Err(Error::NonDecayingIntegrand(_))));
    }

    #[test]
    fn beta_transform_examples() {
        let q = QuadratureSpec::default();
        let f = MatrixFunction1D::new(1, unit(), |t| Ok(s(t)));
        for &k in &[0.5, 1.0, 2.0] {
            let v = beta_transform(&f, &s(k), &s(k), k, &q).unwrap();
            assert!((v[(0, 0)].re - 1.0 / (2.0 * k)).abs() < 1e-12);
        }
        let neg = beta_transform(&f, &s(-0.5), &s(1.0), 1.0, &q);
        assert!(matches!(neg, Err(Error::DomainError { .. })));
    }

    #[test]
    fn laplace_examples() {
        let q = QuadratureSpec::default();
        let half = Domain::RightHalfLine { a: 0.0 };
        let one = MatrixFunction1D::constant(s(1.0), half);
        assert!((laplace_transform(&one, Complex64::new(2.0, 0.0), &q).unwrap()[(0, 0)].re - 0.5).abs() < 1e-12);
        let lin = MatrixFunction1D::new(1, half, |t| Ok(s(t)));
        assert!((laplace_transform(&lin, Complex64::new(1.0, 0.0), &q).unwrap()[(0, 0)].re - 1.0).abs() < 1e-10);
        let exp = MatrixFunction1D::new(1, half, |t| Ok(s(t.exp()))).with_growth(1.0);
        assert!((laplace_transform(&exp, Complex64::new(3.0, 0.0), &q).unwrap()[(0, 0)].re - 0.5).abs() < 1e-10);
        assert!(matches!(
            laplace_transform(&exp, Complex64::new(0.5, 0.0), &q),
            Err(Error::GrowthViolation { .. })
        ));
    }

    #[test]
    fn frac_fourier_examples() {
        let q = QuadratureSpec::default();
        let lam = 0.8;
        let f = MatrixFunction1D::new(1, Domain::LeftHalfLine { b: 0.0 }, move |z| Ok(s((lam * z).exp())));
        let v = frac_fourier(&f, 1.0, 1.0, &q).unwrap()[(0, 0)];
        let want = Complex64::new(1.0, 0.0) / Complex64::new(lam, 1.0);
        assert!((v - want).norm() < 1e-9, "{v} vs {want}");
        let g = MatrixFunction1D::new(1, Domain::LeftHalfLine { b: 0.0 }, move |z| Ok(s((lam * z).exp())))
            .with_analytic(move |z| Ok(ComplexMatrix::scalar(1, (z * lam).exp())));
        let v = frac_fourier(&g, 2.0, 0.5, &q).unwrap()[(0, 0)];
        let want = Complex64::new(1.0, 0.0) / Complex64::new(lam, 4.0);
        assert!((v - want).norm() < 1e-9, "{v} vs {want}");
        let z = MatrixFunction1D::zero(2, Domain::LeftHalfLine { b: 0.0 });
        assert_eq!(frac_fourier(&z, 2.0, 0.5, &q).unwrap(), ComplexMatrix::zeros(2));
        let flat = MatrixFunction1D::constant(s(1.0), Domain::LeftHalfLine { b: 0.0 });
        assert!(matches!(frac_fourier(&flat, 1.0, 1.0, &q), Err(Error::NonDecayingIntegrand(_))));
    }

    #[test]
    fn rl_examples() {
        let q = QuadratureSpec::default();
        let one = MatrixFunction1D::constant(s(1.0), Domain::RightHalfLine { a: 0.0 });
        for &(x, mu, k) in &[(0.7, 0.5, 1.0), (2.0, 1.3, 2.0), (1.5, 2.0, 2.0)] {
            let v = rl_integral(&one, 0.0, x, mu, k, &q).unwrap()[(0, 0)].re;
            let want = x.powf(mu / k) / gamma_k_real(mu + k, k);
            assert!((v - want).abs() < 1e-12 * want, "{v} vs {want}");
        }
        let x: f64 = 0.8;
        let d = rl_derivative(&one, 0.0, x, 0.5, 1.0, &q, None).unwrap()[(0, 0)].re;
        assert!((d - x.powf(-0.5) / gamma_real(0.5)).abs() < 1e-8);
        let lin = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(s(t)));
        let d = rl_derivative(&lin, 0.0, x, 0.5, 1.0, &q, None).unwrap()[(0, 0)].re;
        assert!((d - x.sqrt() / gamma_real(1.5)).abs() < 1e-8);
        assert!(matches!(
            rl_derivative(&one, 0.0, 1e-5, 0.5, 1.0, &q, None),
            Err(Error::StepTooSmall { .. })
        ));
    }

    #[test]
    fn weyl_examples() {
        let q = QuadratureSpec::default();
        let f = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(s((-t).exp())))
            .with_decay(Decay::Exponential { rate: 1.0 });
        for &(x, alpha, k) in &[(0.5, 0.5, 1.0), (1.2, 1.0, 2.0), (0.3, 2.5, 1.5)] {
            let v = weyl_integral(&f, x, alpha, k, &q).unwrap()[(0, 0)].re;
            let want = (-x).exp() * k.powf(-alpha / k);
            assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        }
        let d = weyl_derivative(&f, 0.9, 0.5, 1.0, &q, None).unwrap()[(0, 0)].re;
        assert!((d - (-0.9f64).exp()).abs() < 1e-8);
        let slow = MatrixFunction1D::new(1, Domain::RightHalfLine { a: 0.0 }, |t| Ok(s((1.0 + t).powf(-0.5))))
            .with_decay(Decay::Algebraic { power: 0.5 });
        assert!(matches!(weyl_integral(&slow, 1.0, 1.0, 1.0, &q), Err(Error::NonDecayingIntegrand(_))));
    }
}
