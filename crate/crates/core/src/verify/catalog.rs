//! Identity checks. Each entry draws one commuting family, computes the two sides
//! by different routes and returns their relative residual.

use num_complex::Complex64;

use super::oracle::Scalar;
use super::sampler::CommutingFamilySampler as Sampler;
use crate::error::Result;
use crate::gamma::gamma_k_real;
use crate::kgamma::{k_beta, k_gamma, k_gamma_inv, k_pochhammer, k_rgamma};
use crate::matfun::{mat_func, mat_power};
use crate::matrix::ComplexMatrix as M;
use crate::operators::{
    beta_transform, frac_fourier, integrate, laplace_transform, rl_derivative, rl_integral, weyl_derivative,
    weyl_integral, Decay, Domain, MatrixFunction1D, QuadratureSpec,
};
use crate::rrsk::{
    derivative, eval_hypergeometric_k, eval_series, eval_series_matrix, mittag_leffler, special_case, theta_apply,
    theta_power, EvalOptions, ParamSelector as Sel, ParamSet, SpecialCase,
};

type C = Complex64;

const KS: [f64; 5] = [0.5, 0.75, 1.0, 1.5, 2.0];

pub(crate) struct Ctx {
    pub eval: EvalOptions,
    pub quad: QuadratureSpec,
}

pub(crate) struct Case {
    pub id: &'static str,
    pub tol: f64,
    /// The two routes being compared.
    pub paths: &'static str,
    /// Form asserted where it differs from the plain reading.
    pub note: Option<&'static str>,
    pub run: fn(&mut Sampler, &Ctx) -> Result<f64>,
}

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Eigenvalues of every parameter of one series, per parameter.
#[derive(Debug, Clone)]
struct Draw {
    k: f64,
    a: Vec<C>,
    p: Vec<Vec<C>>,
    q: Vec<Vec<C>>,
    b: Vec<C>,
    c: Vec<C>,
}

impl Draw {
    fn params(&self, s: &Sampler) -> Result<ParamSet> {
        ParamSet::new(
            self.k,
            s.matrix(&self.a),
            self.p.iter().map(|e| s.matrix(e)).collect(),
            self.q.iter().map(|e| s.matrix(e)).collect(),
            s.matrix(&self.b),
            s.matrix(&self.c),
        )
    }

    fn scalar(&self, i: usize) -> Scalar {
        Scalar {
            k: self.k,
            a: Some(self.a[i]),
            p: self.p.iter().map(|e| e[i]).collect(),
            q: self.q.iter().map(|e| e[i]).collect(),
            b: self.b[i],
            c: self.c[i],
            gamma: true,
        }
    }

    fn entire(&self) -> bool {
        self.p.len() <= self.q.len()
    }
}

fn shift(v: &[C], d: C) -> Vec<C> {
    v.iter().map(|x| x + d).collect()
}

fn add(u: &[C], v: &[C]) -> Vec<C> {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

fn off(s: &mut Sampler, lo: f64, hi: f64, im: f64, k: f64) -> Result<Vec<C>> {
    s.spectrum_off_lattice(lo, hi, im, k)
}

/// A family with `r >= r_min`, `s >= s_min`, and `r <= s` when `entire`.
fn draw_k(s: &mut Sampler, k: f64, r_min: usize, s_min: usize, entire: bool) -> Result<Draw> {
    let s_lo = s_min.max(if entire { r_min } else { r_min.saturating_sub(1) });
    let nq = s.int(s_lo, s_lo.max(2));
    let r_hi = (nq + usize::from(!entire)).min(2).max(r_min);
    let np = s.int(r_min, r_hi);
    let a = off(s, 0.3 * k, 2.0 * k, 0.3, k)?;
    let p = (0..np).map(|_| off(s, 0.3 * k, 2.0 * k, 0.3, k)).collect::<Result<_>>()?;
    let q = (0..nq).map(|_| off(s, 1.3 * k, 3.0 * k, 0.3, k)).collect::<Result<_>>()?;
    let b = s.spectrum(k, 1.6 * k, 0.2);
    let cc = off(s, 0.5 * k, 2.5 * k, 0.3, k)?;
    Ok(Draw { k, a, p, q, b, c: cc })
}

fn draw(s: &mut Sampler, r_min: usize, s_min: usize, entire: bool) -> Result<Draw> {
    let k = s.pick(&KS);
    draw_k(s, k, r_min, s_min, entire)
}

fn draw_z(s: &mut Sampler, d: &Draw) -> C {
    if d.entire() {
        s.complex_in_annulus(0.2, 1.2)
    } else {
        s.complex_in_annulus(0.1 / d.k, 0.5 / d.k)
    }
}

fn draw_real_z(s: &mut Sampler, d: &Draw) -> f64 {
    if d.entire() {
        s.uniform(0.3, 1.5)
    } else {
        s.uniform(0.1 / d.k, 0.5 / d.k)
    }
}

fn positive(s: &mut Sampler, k: f64) -> Vec<C> {
    s.spectrum(0.3 * k, 2.0 * k, 0.2)
}

fn series(p: &ParamSet, z: C, cx: &Ctx) -> Result<M> {
    Ok(eval_series(p, z, &cx.eval)?.value)
}

fn series_at(p: &ParamSet, x: &M, cx: &Ctx) -> Result<M> {
    Ok(eval_series_matrix(p, x, &cx.eval)?.value)
}

fn res(lhs: &M, rhs: &M) -> f64 {
    lhs.rel_residual(rhs)
}

/// `V diag(sum_l term(i, l, c_l)) V^{-1}` from the scalar reference sums.
fn oracle(s: &Sampler, d: &Draw, term: impl Fn(usize, usize, C) -> C) -> Result<M> {
    s.spectral(|i| d.scalar(i).sum(|l, cl| term(i, l, cl)))
}

fn zpow(z: C, l: usize) -> C {
    z.powu(l as u32)
}

fn id(s: &Sampler) -> M {
    M::identity(s.dim())
}

/// `x^{M}` for complex `x` on the principal branch.
fn cpow(x: C, m: &M) -> Result<M> {
    let lx = x.ln();
    mat_func(m, |l| (l * lx).exp())
}

fn without<T: Clone>(v: &[T], i: usize) -> Vec<T> {
    v.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x.clone()).collect()
}

fn prepend(first: M, rest: &[M]) -> Vec<M> {
    std::iter::once(first).chain(rest.iter().cloned()).collect()
}

fn two_distinct(s: &mut Sampler, n: usize) -> (usize, usize) {
    let i = s.int(0, n - 1);
    let j = (i + 1 + s.int(0, n - 2)) % n;
    (i, j)
}

// ---- contiguous relations -------------------------------------------------

fn c2_3a(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 1, 0, false)?;
    let z = draw_z(s, &d);
    let i = s.int(0, d.p.len() - 1);
    let p = d.params(s)?;
    let lhs = &(&p.a - &p.p[i]) * &series(&p, z, cx)?;
    let rhs = &(&p.a * &series(&p.shifted(Sel::A, 1)?, z, cx)?) - &(&p.p[i] * &series(&p.shifted(Sel::P(i), 1)?, z, cx)?);
    Ok(res(&lhs, &rhs))
}

fn c2_3b(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 2, 0, false)?;
    let z = draw_z(s, &d);
    let (nu, i) = two_distinct(s, d.p.len());
    let p = d.params(s)?;
    let lhs = &(&p.p[nu] - &p.p[i]) * &series(&p, z, cx)?;
    let rhs = &(&p.p[nu] * &series(&p.shifted(Sel::P(nu), 1)?, z, cx)?)
        - &(&p.p[i] * &series(&p.shifted(Sel::P(i), 1)?, z, cx)?);
    Ok(res(&lhs, &rhs))
}

fn q_minus(p: &ParamSet, j: usize, z: C, cx: &Ctx) -> Result<M> {
    Ok(&p.q[j].shift_real(-p.k) * &series(&p.shifted(Sel::Q(j), -1)?, z, cx)?)
}

fn c2_4(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 2, false)?;
    let z = draw_z(s, &d);
    let (nu, j) = two_distinct(s, d.q.len());
    let p = d.params(s)?;
    let lhs = &(&p.q[nu] - &p.q[j]) * &series(&p, z, cx)?;
    let rhs = &q_minus(&p, nu, z, cx)? - &q_minus(&p, j, z, cx)?;
    Ok(res(&lhs, &rhs))
}

fn c2_5a(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 1, false)?;
    let z = draw_z(s, &d);
    let j = s.int(0, d.q.len() - 1);
    let p = d.params(s)?;
    let lhs = &(&p.a - &p.q[j]).shift_real(p.k) * &series(&p, z, cx)?;
    let rhs = &(&p.a * &series(&p.shifted(Sel::A, 1)?, z, cx)?) - &q_minus(&p, j, z, cx)?;
    Ok(res(&lhs, &rhs))
}

fn c2_5b(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 1, 1, false)?;
    let z = draw_z(s, &d);
    let i = s.int(0, d.p.len() - 1);
    let j = s.int(0, d.q.len() - 1);
    let p = d.params(s)?;
    let lhs = &(&p.p[i] - &p.q[j]).shift_real(p.k) * &series(&p, z, cx)?;
    let rhs = &(&p.p[i] * &series(&p.shifted(Sel::P(i), 1)?, z, cx)?) - &q_minus(&p, j, z, cx)?;
    Ok(res(&lhs, &rhs))
}

fn c2_6(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let k = d.k;
    let lhs = &p.a * &series(&p.shifted(Sel::A, 1)?, z, cx)?;
    let rhs = oracle(s, &d, |i, l, cl| (d.a[i] + k * l as f64) * cl * zpow(z, l))?;
    Ok(res(&lhs, &rhs))
}

fn c2_7(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 1, 1, false)?;
    let z = draw_z(s, &d);
    let i = s.int(0, d.p.len() - 1);
    let j = s.int(0, d.q.len() - 1);
    let p = d.params(s)?;
    let k = d.k;
    let kl = |l: usize| k * l as f64;
    let checks = [
        res(
            &series(&p.shifted(Sel::A, -1)?, z, cx)?,
            &oracle(s, &d, |e, l, cl| (d.a[e] - k) / (d.a[e] + kl(l) - k) * cl * zpow(z, l))?,
        ),
        res(
            &(&p.p[i] * &series(&p.shifted(Sel::P(i), 1)?, z, cx)?),
            &oracle(s, &d, |e, l, cl| (d.p[i][e] + kl(l)) * cl * zpow(z, l))?,
        ),
        res(
            &series(&p.shifted(Sel::P(i), -1)?, z, cx)?,
            &oracle(s, &d, |e, l, cl| (d.p[i][e] - k) / (d.p[i][e] + kl(l) - k) * cl * zpow(z, l))?,
        ),
        res(
            &series(&p.shifted(Sel::Q(j), 1)?, z, cx)?,
            &oracle(s, &d, |e, l, cl| d.q[j][e] / (d.q[j][e] + kl(l)) * cl * zpow(z, l))?,
        ),
        res(&q_minus(&p, j, z, cx)?, &oracle(s, &d, |e, l, cl| (d.q[j][e] + kl(l) - k) * cl * zpow(z, l))?),
    ];
    Ok(checks.into_iter().fold(0.0, f64::max))
}

fn c2_8(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 1, 1, false)?;
    let z = draw_z(s, &d);
    let i = s.int(0, d.p.len() - 1);
    let j = s.int(0, d.q.len() - 1);
    let n = s.int(1, 3);
    let p = d.params(s)?;
    let k = d.k;
    let ni = n as i64;
    // prod over mu = 1..n of f(mu)
    let prod = |f: &dyn Fn(f64) -> C| (1..=n).fold(c(1.0), |acc, m| acc * f(m as f64));
    let up = |x: C, l: usize| prod(&|m| (x + k * (l as f64 + m - 1.0)) / (x + k * (m - 1.0)));
    let down = |x: C, l: usize| prod(&|m| (x - k * m) / (x + k * (l as f64 - m)));
    let q_up = |x: C, l: usize| prod(&|m| (x + k * (m - 1.0)) / (x + k * (l as f64 + m - 1.0)));
    let q_down = |x: C, l: usize| prod(&|m| (x + k * (l as f64 - m)) / (x - k * m));
    let mut worst = 0.0f64;
    let cases: [(Sel, i64, &dyn Fn(usize, usize) -> C); 6] = [
        (Sel::A, ni, &|e, l| up(d.a[e], l)),
        (Sel::A, -ni, &|e, l| down(d.a[e], l)),
        (Sel::P(i), ni, &|e, l| up(d.p[i][e], l)),
        (Sel::P(i), -ni, &|e, l| down(d.p[i][e], l)),
        (Sel::Q(j), ni, &|e, l| q_up(d.q[j][e], l)),
        (Sel::Q(j), -ni, &|e, l| q_down(d.q[j][e], l)),
    ];
    for (which, steps, w) in cases {
        let lhs = series(&p.shifted(which, steps)?, z, cx)?;
        let rhs = oracle(s, &d, |e, l, cl| w(e, l) * cl * zpow(z, l))?;
        worst = worst.max(res(&lhs, &rhs));
    }
    Ok(worst)
}

/// `(k theta + X) R` from the library's theta operator.
fn k_theta_plus(p: &ParamSet, x: &M, z: C, cx: &Ctx) -> Result<M> {
    Ok(&(x * &series(p, z, cx)?) + &theta_apply(p, z, &cx.eval)?.scale_real(p.k))
}

fn c2_9(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let k = d.k;
    let mut worst = res(
        &k_theta_plus(&p, &p.a, z, cx)?,
        &oracle(s, &d, |e, l, cl| (d.a[e] + k * l as f64) * cl * zpow(z, l))?,
    );
    for (i, pi) in p.p.iter().enumerate() {
        let rhs = oracle(s, &d, |e, l, cl| (d.p[i][e] + k * l as f64) * cl * zpow(z, l))?;
        worst = worst.max(res(&k_theta_plus(&p, pi, z, cx)?, &rhs));
    }
    Ok(worst)
}

fn c2_10(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let mut worst = res(&k_theta_plus(&p, &p.a, z, cx)?, &(&p.a * &series(&p.shifted(Sel::A, 1)?, z, cx)?));
    for (i, pi) in p.p.iter().enumerate() {
        let rhs = pi * &series(&p.shifted(Sel::P(i), 1)?, z, cx)?;
        worst = worst.max(res(&k_theta_plus(&p, pi, z, cx)?, &rhs));
    }
    Ok(worst)
}

fn c2_11(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 1, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let mut worst = 0.0f64;
    for (j, qj) in p.q.iter().enumerate() {
        let lhs = k_theta_plus(&p, &qj.shift_real(-p.k), z, cx)?;
        worst = worst.max(res(&lhs, &q_minus(&p, j, z, cx)?));
    }
    Ok(worst)
}

fn c2_12(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let up = p.shifted(Sel::C, 1)?;
    let rhs = &(&p.c * &series(&up, z, cx)?) + &(&p.b * &theta_apply(&up, z, &cx.eval)?);
    Ok(res(&series(&p, z, cx)?, &rhs))
}

fn falling(x: C, n: usize) -> C {
    (0..n).fold(c(1.0), |acc, i| acc * (x - i as f64))
}

fn c2_13(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let mu = s.int(1, 3);
    let p = d.params(s)?;
    let lhs = derivative(&p, z, mu as u32, &cx.eval)?;
    let rhs = oracle(s, &d, |_, l, cl| if l < mu { c(0.0) } else { falling(c(l as f64), mu) * cl * zpow(z, l - mu) })?;
    Ok(res(&lhs, &rhs))
}

// ---- differential properties ---------------------------------------------

fn c2_14(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let z = s.uniform(0.3, 1.5);
    let mu = s.int(1, 3);
    let p = d.params(s)?;
    let k = d.k;
    let lz = z.ln();
    let lhs = oracle(s, &d, |e, l, cl| {
        let x = (d.b[e] * l as f64 + d.c[e]) / k - 1.0;
        falling(x, mu) * cl * ((x - mu as f64) * lz).exp()
    })?;
    let arg = mat_power(z, &p.b.scale_real(1.0 / k))?;
    let pre = mat_power(z, &p.c.scale_real(1.0 / k).shift_real(-(mu as f64 + 1.0)))?;
    let shifted = p.with_c(p.c.shift_real(-(mu as f64) * k));
    let rhs = (&pre * &series_at(&shifted, &arg, cx)?).scale_real(k.powi(-(mu as i32)));
    Ok(res(&lhs, &rhs))
}

/// `d^mu [z^{X/k + mu - 1} R]` against `k^{-mu} (X)_mu z^{X/k - 1} R(X + mu k)`.
fn power_derivative(s: &mut Sampler, cx: &Ctx, on_p: bool) -> Result<f64> {
    let d = draw(s, usize::from(on_p), 0, false)?;
    let z = draw_real_z(s, &d);
    let mu = s.int(1, 3);
    let i = if on_p { s.int(0, d.p.len() - 1) } else { 0 };
    let p = d.params(s)?;
    let k = d.k;
    let (x_eig, x, which) = if on_p { (&d.p[i], &p.p[i], Sel::P(i)) } else { (&d.a, &p.a, Sel::A) };
    let lz = z.ln();
    let lhs = oracle(s, &d, |e, l, cl| {
        let pw = x_eig[e] / k + (mu + l) as f64 - 1.0;
        falling(pw, mu) * cl * ((pw - mu as f64) * lz).exp()
    })?;
    let pre = &k_pochhammer(x, mu, k) * &mat_power(z, &x.scale_real(1.0 / k).shift_real(-1.0))?;
    let rhs = (&pre * &series(&p.shifted(which, mu as i64)?, c(z), cx)?).scale_real(k.powi(-(mu as i32)));
    Ok(res(&lhs, &rhs))
}

fn c2_15(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    power_derivative(s, cx, false)
}

fn c2_16(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    power_derivative(s, cx, true)
}

fn c2_17(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d0 = draw(s, 0, 1, false)?;
    let z = draw_real_z(s, &d0);
    let mu = s.int(1, 3);
    let j = s.int(0, d0.q.len() - 1);
    let k = d0.k;
    let mut d = d0.clone();
    d.q[j] = shift(&d0.q[j], c(k));
    let p = d0.params(s)?;
    let lz = z.ln();
    let lhs = oracle(s, &d, |e, l, cl| {
        let pw = d0.q[j][e] / k + l as f64;
        falling(pw, mu) * cl * ((pw - mu as f64) * lz).exp()
    })?;
    let qj = &p.q[j];
    let pre = &(&k_gamma(&qj.shift_real(k), k)? * &k_rgamma(&qj.shift_real(-(mu as f64 - 1.0) * k), k)?)
        * &mat_power(z, &qj.scale_real(1.0 / k).shift_real(-(mu as f64)))?;
    let rhs =
        (&pre * &series(&p.shifted(Sel::Q(j), 1 - mu as i64)?, c(z), cx)?).scale_real(k.powi(-(mu as i32)));
    Ok(res(&lhs, &rhs))
}

/// Coefficients of `prod (k theta + M_i)` as a polynomial in `theta`, lowest first.
fn theta_poly(k: f64, factors: &[M], dim: usize) -> Vec<M> {
    let mut poly = vec![M::identity(dim)];
    for f in factors {
        let mut next = vec![M::zeros(dim); poly.len() + 1];
        for (m, coef) in poly.iter().enumerate() {
            next[m] += &(f * coef);
            next[m + 1] += &coef.scale_real(k);
        }
        poly = next;
    }
    poly
}

fn apply_poly(poly: &[M], p: &ParamSet, z: C, cx: &Ctx) -> Result<M> {
    let mut acc = M::zeros(p.dim());
    for (m, coef) in poly.iter().enumerate() {
        acc += &(coef * &theta_power(p, z, m as u32, &cx.eval)?);
    }
    Ok(acc)
}

fn c2_18(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let k = d.k;
    let n = p.dim();
    // theta prod (k theta + Q_j - k): one extra factor k theta, divided back out by k
    let mut left: Vec<M> = p.q.iter().map(|q| q.shift_real(-k)).collect();
    left.push(M::zeros(n));
    let part1 = apply_poly(&theta_poly(k, &left, n), &p, z, cx)?.scale_real(1.0 / k);
    let right: Vec<M> = std::iter::once(p.a.clone()).chain(p.p.iter().cloned()).collect();
    let bc = p.with_c(&p.b + &p.c);
    let part2 = apply_poly(&theta_poly(k, &right, n), &bc, z, cx)?.scale(z);
    Ok(res(&part1, &part2))
}

// ---- integral representations -------------------------------------------

fn on_unit<'f>(dim: usize, f: impl Fn(f64) -> Result<M> + 'f) -> MatrixFunction1D<'f> {
    MatrixFunction1D::new(dim, Domain::Interval { a: 0.0, b: 1.0 }, f)
}

/// `Gamma_k(Y) Gamma_k^{-1}(X) Gamma_k^{-1}(Y - X)`.
fn beta_ratio(x: &M, y: &M, k: f64) -> Result<M> {
    Ok(&(&k_gamma(y, k)? * &k_gamma_inv(x, k)?) * &k_gamma_inv(&(y - x), k)?)
}

fn euler_beta(s: &mut Sampler, cx: &Ctx, on_p: bool) -> Result<f64> {
    let mut d = draw(s, 1, 1, false)?;
    let k = d.k;
    let i = s.int(0, d.p.len() - 1);
    let j = s.int(0, d.q.len() - 1);
    if on_p {
        d.p[i] = off(s, 0.3 * k, k, 0.2, k)?;
    } else {
        d.a = off(s, 0.3 * k, k, 0.2, k)?;
    }
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let inner = if on_p {
        ParamSet::new(k, p.a.clone(), without(&p.p, i), without(&p.q, j), p.b.clone(), p.c.clone())?
    } else {
        ParamSet::new(k, p.p[0].clone(), p.p[1..].to_vec(), without(&p.q, j), p.b.clone(), p.c.clone())?
    };
    let x = if on_p { &p.p[i] } else { &p.a };
    let f = on_unit(p.dim(), |t| series(&inner, z * t, cx));
    let rhs = &beta_ratio(x, &p.q[j], k)? * &beta_transform(&f, x, &(&p.q[j] - x), k, &cx.quad)?;
    Ok(res(&series(&p, z, cx)?, &rhs))
}

fn c2_19(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    euler_beta(s, cx, false)
}

fn c2_20(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    euler_beta(s, cx, true)
}

fn euler_gamma(s: &mut Sampler, cx: &Ctx, on_p: bool) -> Result<f64> {
    let d = draw(s, 1, 0, true)?;
    let z = draw_z(s, &d);
    let i = s.int(0, d.p.len() - 1);
    let p = d.params(s)?;
    let k = d.k;
    let (x, inner) = if on_p {
        (&p.p[i], ParamSet::new(k, p.a.clone(), without(&p.p, i), p.q.clone(), p.b.clone(), p.c.clone())?)
    } else {
        (&p.a, ParamSet::new(k, p.p[0].clone(), p.p[1..].to_vec(), p.q.clone(), p.b.clone(), p.c.clone())?)
    };
    let expo = x.scale_real(1.0 / k).shift_real(-1.0);
    let lo = d_min_re(if on_p { &d.p[i] } else { &d.a }) / k - 1.0;
    // xi = (k u)^{1/k}
    let f = MatrixFunction1D::new(p.dim(), Domain::RightHalfLine { a: 0.0 }, |u| {
        let w = &mat_power(k * u, &expo)? * &series(&inner, z * (k * u), cx)?;
        Ok(w.scale_real((-u).exp()))
    })
    .with_decay(Decay::Exponential { rate: 0.5 })
    .with_endpoint_exponents(lo, 0.0);
    let rhs = &k_gamma_inv(x, k)? * &integrate(&f, &cx.quad)?;
    Ok(res(&series(&p, z, cx)?, &rhs))
}

fn d_min_re(v: &[C]) -> f64 {
    v.iter().map(|x| x.re).fold(f64::INFINITY, f64::min)
}

fn c2_21(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    euler_gamma(s, cx, false)
}

fn c2_22(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    euler_gamma(s, cx, true)
}

/// `int_a^x (xi - a)^{Q_j/k - 1} (x - xi)^{E/k - 1} R(w(xi - a)) dxi` checked against
/// `k B_k(Q_j, E) (x - a)^{(Q_j + E)/k - 1} R(Q_j + E; w (x - a))`.
fn finite_beta(s: &mut Sampler, cx: &Ctx, shifted_origin: bool) -> Result<f64> {
    let d = draw(s, 0, 1, true)?;
    let k = d.k;
    let j = s.int(0, d.q.len() - 1);
    let e = positive(s, k);
    let len = s.uniform(0.5, 1.5);
    let w = if shifted_origin { c(-1.0) } else { s.complex_in_annulus(0.2, 1.0) };
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let qj = &p.q[j];
    let pre = mat_power(len, &(qj + &em).scale_real(1.0 / k).shift_real(-1.0))?;
    // xi = a + len t; only x - a = len enters
    let f = on_unit(p.dim(), |t| series(&p, w * (len * t), cx));
    let lhs = (&pre * &beta_transform(&f, qj, &em, k, &cx.quad)?).scale_real(k);
    let mut q2 = p.q.clone();
    q2[j] = qj + &em;
    let rhs = (&(&k_beta(qj, &em, k)? * &pre) * &series(&p.with_q(q2), w * len, cx)?).scale_real(k);
    Ok(res(&lhs, &rhs))
}

fn c2_24(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    finite_beta(s, cx, false)
}

fn c2_25(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    finite_beta(s, cx, true)
}

/// `(X + i k)/mu`, `i = 0..mu`.
fn delta(x: &M, mu: usize, k: f64) -> Vec<M> {
    (0..mu).map(|i| x.shift_real(i as f64 * k).scale_real(1.0 / mu as f64)).collect()
}

fn concat(a: &[M], b: &[M]) -> Vec<M> {
    a.iter().chain(b).cloned().collect()
}

fn c2_26(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let mu = s.int(1, 2);
    let z = s.uniform(0.3, 1.2);
    let cc = s.complex_in_annulus(0.2, 1.0);
    let (e, m) = (positive(s, k), positive(s, k));
    let p = d.params(s)?;
    let (em, mm) = (s.matrix(&e), s.matrix(&m));
    let big = ParamSet::new(
        k,
        p.a.clone(),
        concat(&p.p, &delta(&em, mu, k)),
        concat(&p.q, &delta(&(&em + &mm), mu, k)),
        p.b.clone(),
        p.c.clone(),
    )?;
    let lhs = series(&big, cc * z.powi(mu as i32), cx)?;
    let f = on_unit(p.dim(), |u| series(&p, cc * (z * u).powi(mu as i32), cx));
    let rhs = &beta_ratio(&em, &(&em + &mm), k)? * &beta_transform(&f, &em, &mm, k, &cx.quad)?;
    Ok(res(&lhs, &rhs))
}

fn c2_27(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let (mu, io) = (s.int(1, 2), s.int(1, 2));
    let alpha = s.complex_in_annulus(0.2, 1.5);
    let (e, m) = (positive(s, k), positive(s, k));
    let p = d.params(s)?;
    let (em, mm) = (s.matrix(&e), s.matrix(&m));
    let num = concat(&concat(&p.p, &delta(&em, mu, k)), &delta(&mm, io, k));
    let den = concat(&p.q, &delta(&(&em + &mm), mu + io, k));
    let big = ParamSet::new(k, p.a.clone(), num, den, p.b.clone(), p.c.clone())?;
    let (fm, fi) = (mu as f64, io as f64);
    let scale = fm.powf(fm) * fi.powf(fi) / (fm + fi).powf(fm + fi);
    let lhs = series(&big, alpha * scale, cx)?;
    let f = on_unit(p.dim(), |t| series(&p, alpha * t.powi(mu as i32) * (1.0 - t).powi(io as i32), cx));
    let rhs = &beta_ratio(&em, &(&em + &mm), k)? * &beta_transform(&f, &em, &mm, k, &cx.quad)?;
    Ok(res(&lhs, &rhs))
}

fn beta_of_series(s: &mut Sampler, cx: &Ctx, on_p: bool) -> Result<f64> {
    let d = draw(s, usize::from(on_p), 0, false)?;
    let z = draw_z(s, &d);
    let k = d.k;
    let i = if on_p { s.int(0, d.p.len() - 1) } else { 0 };
    let e = positive(s, k);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let (x, raised) = if on_p {
        let mut pp = p.p.clone();
        pp[i] = &pp[i] + &em;
        (&p.p[i], p.with_p(pp))
    } else {
        (&p.a, p.with_a(&p.a + &em))
    };
    let f = on_unit(p.dim(), |t| series(&raised, z * t, cx));
    let lhs = beta_transform(&f, x, &em, k, &cx.quad)?;
    let rhs = &(&(&k_gamma(x, k)? * &k_gamma(&em, k)?) * &k_gamma_inv(&(x + &em), k)?) * &series(&p, z, cx)?;
    Ok(res(&lhs, &rhs))
}

fn c2_28(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    beta_of_series(s, cx, false)
}

fn c2_29(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    beta_of_series(s, cx, true)
}

// ---- Laplace and Fourier --------------------------------------------------

fn laplace_point(s: &mut Sampler) -> C {
    C::new(s.uniform(1.0, 2.5), s.uniform(-0.5, 0.5))
}

fn on_half_line<'f>(dim: usize, lo_exp: f64, f: impl Fn(f64) -> Result<M> + 'f) -> MatrixFunction1D<'f> {
    MatrixFunction1D::new(dim, Domain::RightHalfLine { a: 0.0 }, f).with_endpoint_exponents(lo_exp, 0.0)
}

fn c2_30(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let mut d = draw(s, 0, 0, true)?;
    let k = d.k;
    // real spectrum: complex B/k makes t^{B/k} spin the argument and spoils the growth bound
    d.b = s.spectrum(k, 1.3 * k, 0.0);
    let sl = laplace_point(s);
    let mut z = s.complex_in_annulus(0.1, 0.5);
    let lks = (sl * k).ln();
    if d.p.len() == d.q.len() {
        let rho = d.b.iter().map(|b| z.norm() * (-b / k * lks).exp().norm()).fold(0.0, f64::max);
        if rho > 0.4 / k {
            z *= 0.4 / (k * rho);
        }
    }
    let p = d.params(s)?;
    let ce = p.c.scale_real(1.0 / k).shift_real(-1.0);
    let be = p.b.scale_real(1.0 / k);
    let f = on_half_line(p.dim(), d_min_re(&d.c) / k - 1.0, |t| {
        if sl.re * t > 230.0 {
            // the series argument overflows out here, long after exp(-s t) has buried the tail
            return Ok(M::zeros(p.dim()));
        }
        Ok(&mat_power(t, &ce)? * &series_at(&p, &mat_power(t, &be)?.scale(z), cx)?)
    });
    let lhs = laplace_transform(&f, sl, &cx.quad)?;
    let x = mat_func(&p.b, |b| (-b / k * lks).exp())?.scale(z);
    let pre = mat_func(&p.c, |c| (-c / k * lks).exp())?;
    let rhs = (&pre * &eval_hypergeometric_k(&p, &x, &cx.eval)?.value).scale_real(k);
    Ok(res(&lhs, &rhs))
}

/// `z` with `|z / (s k)| <= 0.4 / k` when the transformed series has a radius.
fn laplace_z(s: &mut Sampler, sl: C, radius_needed: bool) -> C {
    let z = s.complex_in_annulus(0.2, 1.0);
    if radius_needed && z.norm() > 0.4 * sl.norm() {
        z * (0.4 * sl.norm() / z.norm())
    } else {
        z
    }
}

fn c2_31(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let sl = laplace_point(s);
    let z = laplace_z(s, sl, d.p.len() == d.q.len());
    let e = positive(s, k);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let ee = em.scale_real(1.0 / k).shift_real(-1.0);
    let f = on_half_line(p.dim(), d_min_re(&e) / k - 1.0, |t| Ok(&mat_power(t, &ee)? * &series(&p, z * t, cx)?));
    let lhs = laplace_transform(&f, sl, &cx.quad)?;
    let big = p.with_p(prepend(em.clone(), &p.p));
    let pre = &k_gamma(&em, k)? * &cpow(sl * k, &em.scale_real(-1.0 / k))?;
    let rhs = (&pre * &series(&big, z / (sl * k), cx)?).scale_real(k);
    Ok(res(&lhs, &rhs))
}

fn c2_32(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let sl = laplace_point(s);
    let z = laplace_z(s, sl, d.p.len() == d.q.len());
    let p = d.params(s)?;
    let f = on_half_line(p.dim(), 0.0, |t| series(&p, z * t, cx));
    let lhs = laplace_transform(&f, sl, &cx.quad)?;
    let big = p.with_p(prepend(id(s).scale_real(k), &p.p));
    let rhs = series(&big, z / (sl * k), cx)?.scale(gamma_k_real(k, k) / sl);
    Ok(res(&lhs, &rhs))
}

fn laplace_power(s: &mut Sampler, cx: &Ctx, on_p: bool) -> Result<f64> {
    let d = draw(s, 1, 0, true)?;
    let k = d.k;
    let sl = laplace_point(s);
    let z = laplace_z(s, sl, false);
    let i = s.int(0, d.p.len() - 1);
    let p = d.params(s)?;
    let (x, x_eig, inner) = if on_p {
        (&p.p[i], &d.p[i], ParamSet::new(k, p.a.clone(), without(&p.p, i), p.q.clone(), p.b.clone(), p.c.clone())?)
    } else {
        (&p.a, &d.a, ParamSet::new(k, p.p[0].clone(), p.p[1..].to_vec(), p.q.clone(), p.b.clone(), p.c.clone())?)
    };
    let xe = x.scale_real(1.0 / k).shift_real(-1.0);
    let f = on_half_line(p.dim(), d_min_re(x_eig) / k - 1.0, |t| Ok(&mat_power(t, &xe)? * &series(&inner, z * t, cx)?));
    let lhs = laplace_transform(&f, sl, &cx.quad)?;
    let pre = &cpow(sl * k, &x.scale_real(-1.0 / k).shift_real(1.0))? * &k_gamma(x, k)?;
    let rhs = (&pre * &series(&p, z / (sl * k), cx)?).scale(1.0 / sl);
    Ok(res(&lhs, &rhs))
}

fn c2_33(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    laplace_power(s, cx, false)
}

fn c2_34(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    laplace_power(s, cx, true)
}

fn c2_35(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let k = s.pick(&KS);
    let cc = off(s, 0.5 * k, 2.0 * k, 0.3, k)?;
    let n = s.int(0, 2);
    let d = Draw { k, a: shift(&cc, c(n as f64 * k)), p: vec![], q: vec![], b: vec![c(k); s.dim()], c: cc };
    let omega = s.uniform(1.5, 4.0);
    let alpha = s.uniform(0.5, 2.0);
    let w = omega.powf(alpha);
    let p = d.params(s)?;
    let f = MatrixFunction1D::new(p.dim(), Domain::LeftHalfLine { b: 0.0 }, |t| series(&p, c(t), cx))
        .with_analytic(|z| series(&p, z, cx));
    let lhs = frac_fourier(&f, w, alpha, &cx.quad)?;
    let big = ParamSet::new(k, id(s).scale_real(k), vec![p.a.clone()], vec![], p.b.clone(), p.c.clone())?;
    let rhs = series(&big, C::new(0.0, 1.0 / (k * omega)), cx)?.scale(gamma_k_real(k, k) / C::new(0.0, omega));
    Ok(res(&lhs, &rhs))
}

// ---- Riemann-Liouville ----------------------------------------------------

/// `u^X R(nu u)`; zero for `u <= 0`.
fn power_series_at(p: &ParamSet, x: &M, u: f64, nu: C, cx: &Ctx) -> Result<M> {
    if u <= 0.0 {
        return Ok(M::zeros(p.dim()));
    }
    Ok(&mat_power(u, x)? * &series(p, nu * u, cx)?)
}

/// `(t - a)^X R(nu (t - a))` on `[a, b]`, taking the exact distance from `a`
/// when the operator supplies it.
fn anchored<'p>(p: &'p ParamSet, x: &'p M, a: f64, b: f64, nu: C, cx: &'p Ctx) -> MatrixFunction1D<'p> {
    MatrixFunction1D::new(p.dim(), Domain::Interval { a, b }, move |t| power_series_at(p, x, t - a, nu, cx))
        .with_offset_eval(move |t0, u| power_series_at(p, x, (t0 - a) + u, nu, cx))
}

fn c2_36(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let z = s.uniform(0.3, 1.5);
    let mu = s.uniform(0.2, 2.5);
    let e = positive(s, k);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let xe = em.scale_real(1.0 / k);
    let f = anchored(&p, &xe, 0.0, z, c(1.0), cx);
    let lhs = rl_integral(&f, 0.0, z, mu, k, &cx.quad)?;
    let top = em.shift_real(k);
    let bottom = em.shift_real(mu + k);
    let big = ParamSet::new(k, p.a.clone(), prepend(top.clone(), &p.p), prepend(bottom.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &(&k_gamma(&top, k)? * &k_gamma_inv(&bottom, k)?) * &mat_power(z, &em.shift_real(mu).scale_real(1.0 / k))?;
    Ok(res(&lhs, &(&pre * &series(&big, c(z), cx)?)))
}

fn c2_37(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let z = s.uniform(0.5, 1.5);
    let mu = s.uniform(0.2, 0.8);
    let e = positive(s, k);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let xe = em.scale_real(1.0 / k);
    let f = anchored(&p, &xe, 0.0, 2.0, c(1.0), cx);
    let lhs = rl_derivative(&f, 0.0, z, mu, k, &cx.quad, None)?;
    let top = em.shift_real(k);
    let bottom = em.shift_real(1.0 - mu);
    let big = ParamSet::new(k, p.a.clone(), prepend(top.clone(), &p.p), prepend(bottom.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &(&k_gamma(&top, k)? * &k_gamma_inv(&bottom, k)?)
        * &mat_power(z, &bottom.scale_real(1.0 / k).shift_real(-1.0))?;
    Ok(res(&lhs, &(&pre * &series(&big, c(z), cx)?).scale_real(1.0 / k)))
}

fn c2_38(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let a = s.uniform(-1.0, 1.0);
    let z = a + s.uniform(0.3, 1.5);
    let nu = s.complex_in_annulus(0.2, 1.0);
    let mu = s.uniform(0.2, 2.5);
    let e = s.spectrum(0.4 * k, 2.0 * k, 0.2);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let xe = em.scale_real(1.0 / k).shift_real(-1.0);
    let f = anchored(&p, &xe, a, z, nu, cx).with_endpoint_exponents(d_min_re(&e) / k - 1.0, 0.0);
    let lhs = rl_integral(&f, a, z, mu, k, &cx.quad)?;
    let bottom = em.shift_real(mu);
    let big = ParamSet::new(k, em.clone(), prepend(p.a.clone(), &p.p), prepend(bottom.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &(&k_gamma(&em, k)? * &k_gamma_inv(&bottom, k)?)
        * &mat_power(z - a, &bottom.scale_real(1.0 / k).shift_real(-1.0))?;
    Ok(res(&lhs, &(&pre * &series(&big, nu * (z - a), cx)?)))
}

fn c2_39(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let a = s.uniform(-1.0, 1.0);
    let z = a + s.uniform(0.5, 1.5);
    let nu = s.complex_in_annulus(0.2, 1.0);
    let mu = s.uniform(0.2, 0.8);
    // G = E + (1 - k - mu) stays off the lattice and E stays positive stable
    let lift = (1.0 - k - mu).max(0.0);
    let g = off(s, 0.3 * k + lift, 2.0 * k + lift, 0.2, k)?;
    let e = shift(&g, c(k + mu - 1.0));
    let p = d.params(s)?;
    let (em, gm) = (s.matrix(&e), s.matrix(&g));
    let xe = em.scale_real(1.0 / k).shift_real(-1.0);
    let f = anchored(&p, &xe, a, z + 1.0, nu, cx).with_endpoint_exponents(d_min_re(&e) / k - 1.0, 0.0);
    let lhs = rl_derivative(&f, a, z, mu, k, &cx.quad, None)?;
    let big = ParamSet::new(k, em.clone(), prepend(p.a.clone(), &p.p), prepend(gm.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &(&k_gamma(&em, k)? * &k_rgamma(&gm, k)?) * &mat_power(z - a, &gm.scale_real(1.0 / k).shift_real(-1.0))?;
    Ok(res(&lhs, &(&pre * &series(&big, nu * (z - a), cx)?).scale_real(1.0 / k)))
}

// ---- Weyl -----------------------------------------------------------------

/// `(u + a)^{-X/k} R(p; w(u))` on `[lo, inf)` with algebraic decay `min Re X / k`.
fn weyl_input<'f>(
    p: &'f ParamSet,
    x: &'f M,
    x_eig: &[C],
    a: f64,
    lo: f64,
    arg: impl Fn(f64) -> Result<M> + 'f,
    cx: &'f Ctx,
) -> MatrixFunction1D<'f> {
    let k = p.k;
    let power = d_min_re(x_eig) / k;
    MatrixFunction1D::new(p.dim(), Domain::RightHalfLine { a: lo }, move |u| {
        Ok(&mat_power(u + a, &x.scale_real(-1.0 / k))? * &series_at(p, &arg(u)?, cx)?)
    })
    .with_decay(Decay::Algebraic { power })
}

fn c2_40(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let beta = s.uniform(0.2, 2.0);
    let (z, a) = (s.uniform(0.0, 1.0), s.uniform(0.5, 1.5));
    let e = s.spectrum(beta + 0.3 * k, beta + 2.0 * k, 0.2);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let n = p.dim();
    let f = weyl_input(&p, &em, &e, a, z, move |u| Ok(M::identity(n).scale_real(1.0 / (u + a))), cx);
    let lhs = weyl_integral(&f, z, beta, k, &cx.quad)?;
    let top = em.shift_real(-beta);
    let big = ParamSet::new(k, p.a.clone(), prepend(top.clone(), &p.p), prepend(em.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &mat_power(z + a, &top.scale_real(-1.0 / k))? * &(&k_gamma_inv(&em, k)? * &k_gamma(&top, k)?);
    Ok(res(&lhs, &(&pre * &series(&big, c(1.0 / (z + a)), cx)?)))
}

fn c2_41(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let mut d = draw(s, 0, 0, true)?;
    let k = d.k;
    let beta = s.uniform(0.2, 2.0);
    let (z, a) = (s.uniform(0.0, 1.0), s.uniform(0.5, 1.5));
    let nu = s.complex_in_annulus(0.2, 1.0);
    d.c = s.spectrum(beta + 0.3 * k, beta + 2.0 * k, 0.2);
    let p = d.params(s)?;
    let lowered = p.with_c(p.c.shift_real(-beta));
    let be = p.b.scale_real(-1.0 / k);
    let f = weyl_input(&lowered, &p.c, &d.c, a, z, |u| Ok(mat_power(u + a, &be)?.scale(nu)), cx);
    let lhs = weyl_integral(&f, z, beta, k, &cx.quad)?;
    let pre = mat_power(z + a, &p.c.shift_real(-beta).scale_real(-1.0 / k))?;
    let rhs = &pre * &series_at(&p, &mat_power(z + a, &be)?.scale(nu), cx)?;
    Ok(res(&lhs, &rhs))
}

fn c2_42(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let beta = s.uniform(0.2, 0.8);
    let (z, a) = (s.uniform(0.0, 1.0), s.uniform(0.7, 1.5));
    let e = s.spectrum(1.0 - beta + 0.3 * k, 1.0 - beta + 2.0 * k, 0.2);
    let p = d.params(s)?;
    let em = s.matrix(&e);
    let n = p.dim();
    let f = weyl_input(&p, &em, &e, a, z - 0.5, move |u| Ok(M::identity(n).scale_real(1.0 / (u + a))), cx);
    let lhs = weyl_derivative(&f, z, beta, k, &cx.quad, None)?;
    let top = em.shift_real(beta + k - 1.0);
    let big = ParamSet::new(k, p.a.clone(), prepend(top.clone(), &p.p), prepend(em.clone(), &p.q), p.b.clone(), p.c.clone())?;
    let pre = &mat_power(z + a, &em.shift_real(beta - 1.0).scale_real(-1.0 / k).shift_real(-1.0))?
        * &(&k_gamma_inv(&em, k)? * &k_gamma(&top, k)?);
    Ok(res(&lhs, &(&pre * &series(&big, c(1.0 / (z + a)), cx)?).scale_real(1.0 / k)))
}

fn c2_43(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let mut d = draw(s, 0, 0, true)?;
    let k = d.k;
    let beta = s.uniform(0.2, 0.8);
    let (z, a) = (s.uniform(0.0, 1.0), s.uniform(0.7, 1.5));
    let nu = s.complex_in_annulus(0.2, 1.0);
    d.c = s.spectrum(1.0 - beta + 0.3 * k, 1.0 - beta + 2.0 * k, 0.2);
    let p = d.params(s)?;
    let raised = p.with_c(p.c.shift_real(beta + k - 1.0));
    let be = p.b.scale_real(-1.0 / k);
    let f = weyl_input(&raised, &p.c, &d.c, a, z - 0.5, |u| Ok(mat_power(u + a, &be)?.scale(nu)), cx);
    let lhs = weyl_derivative(&f, z, beta, k, &cx.quad, None)?;
    let pre = mat_power(z + a, &p.c.shift_real(beta - 1.0).scale_real(-1.0 / k).shift_real(-1.0))?;
    let rhs = (&pre * &series_at(&p, &mat_power(z + a, &be)?.scale(nu), cx)?).scale_real(1.0 / k);
    Ok(res(&lhs, &rhs))
}

// ---- special cases --------------------------------------------------------

fn c3_1(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw(s, 0, 0, true)?;
    let k = d.k;
    let r = s.int(1, 3);
    let z = s.complex_in_annulus(0.2, 1.2);
    let pe = off(s, 0.3 * k, k, 0.2, k)?;
    let qe = add(&pe, &s.spectrum(0.4 * k, 1.5 * k, 0.2));
    let p = d.params(s)?;
    let (pm, qm) = (s.matrix(&pe), s.matrix(&qe));
    let big = ParamSet::new(k, p.a.clone(), delta(&pm, r, k), delta(&qm, r, k), p.b.clone(), p.c.clone())?;
    let ml = mittag_leffler(&p.a, &p.b, &p.c, k)?;
    let f = on_unit(p.dim(), |t| series(&ml, z * t.powi(r as i32), cx));
    let rhs = &beta_ratio(&pm, &qm, k)? * &beta_transform(&f, &pm, &(&qm - &pm), k, &cx.quad)?;
    Ok(res(&series(&big, z, cx)?, &rhs))
}

fn scalar_oracle(s: &Sampler, z: C, at: impl Fn(usize) -> Scalar) -> Result<M> {
    s.spectral(|i| at(i).value(z))
}

fn c3_7(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw_k(s, 1.0, 0, 0, true)?;
    let z = s.complex_in_annulus(0.2, 1.5);
    let (a, b, cm) = (s.matrix(&d.a), s.matrix(&d.b), s.matrix(&d.c));
    let lhs = series(&mittag_leffler(&a, &b, &cm, 1.0)?, z, cx)?;
    let rhs = scalar_oracle(s, z, |i| Scalar { p: vec![], q: vec![], ..d.scalar(i) })?;
    Ok(res(&lhs, &rhs))
}

fn c3_8(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw_k(s, 1.0, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let built = special_case(&SpecialCase::KFunction { a: p.a, p: p.p, q: p.q, b: p.b, c: p.c })?;
    let rhs = scalar_oracle(s, z, |i| d.scalar(i))?;
    Ok(res(&series(&built, z, cx)?, &rhs))
}

fn c3_9(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw_k(s, 1.0, 0, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let built = special_case(&SpecialCase::MSeries { p: p.p, q: p.q, b: p.b, c: p.c })?;
    let rhs = scalar_oracle(s, z, |i| Scalar { a: Some(c(1.0)), ..d.scalar(i) })?;
    Ok(res(&series(&built, z, cx)?, &rhs))
}

fn c3_10(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw_k(s, 1.0, 1, 0, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let built = special_case(&SpecialCase::RRSClassic { p: p.p, q: p.q, b: p.b, c: p.c })?;
    let rhs = scalar_oracle(s, z, |i| Scalar { a: None, ..d.scalar(i) })?;
    Ok(res(&series(&built, z, cx)?, &rhs))
}

fn c3_11(s: &mut Sampler, cx: &Ctx) -> Result<f64> {
    let d = draw_k(s, 1.0, 0, 1, false)?;
    let z = draw_z(s, &d);
    let p = d.params(s)?;
    let built = special_case(&SpecialCase::HypergeometricF { p: p.p, q: p.q })?;
    let rhs = scalar_oracle(s, z, |i| Scalar { a: None, gamma: false, ..d.scalar(i) })?;
    Ok(res(&series(&built, z, cx)?, &rhs))
}

const SERIES: f64 = 1e-9;
const QUAD: f64 = 1e-6;

pub(crate) static CATALOG: &[Case] = &[
    Case { id: "2.3a", tol: SERIES, paths: "(A - P_i) R vs series at A + kI and P_i + kI", note: None, run: c2_3a },
    Case { id: "2.3b", tol: SERIES, paths: "(P_v - P_i) R vs series at P_v + kI and P_i + kI", note: None, run: c2_3b },
    Case { id: "2.4", tol: SERIES, paths: "(Q_v - Q_j) R vs series at Q_v - kI and Q_j - kI", note: None, run: c2_4 },
    Case { id: "2.5a", tol: SERIES, paths: "(A - Q_j + kI) R vs series at A + kI and Q_j - kI", note: None, run: c2_5a },
    Case { id: "2.5b", tol: SERIES, paths: "(P_i - Q_j + kI) R vs series at P_i + kI and Q_j - kI", note: None, run: c2_5b },
    Case { id: "2.6", tol: SERIES, paths: "A R(A + kI) vs eigenbasis sum of (A + k l) Psi_l", note: None, run: c2_6 },
    Case {
        id: "2.7",
        tol: SERIES,
        paths: "series at A - kI, P_i +- kI, Q_j +- kI vs eigenbasis sums",
        note: Some("third relation checked without the undefined extra weight"),
        run: c2_7,
    },
    Case { id: "2.8", tol: SERIES, paths: "series at every +-nkI shift vs eigenbasis sums", note: None, run: c2_8 },
    Case { id: "2.9", tol: SERIES, paths: "(k theta + X) R from the theta operator vs eigenbasis sums", note: None, run: c2_9 },
    Case { id: "2.10", tol: SERIES, paths: "(k theta + X) R vs X R(X + kI)", note: None, run: c2_10 },
    Case { id: "2.11", tol: SERIES, paths: "(k theta + Q_j - kI) R vs (Q_j - kI) R(Q_j - kI)", note: None, run: c2_11 },
    Case { id: "2.12", tol: SERIES, paths: "R vs C R(C + kI) + B theta R(C + kI)", note: None, run: c2_12 },
    Case { id: "2.13", tol: SERIES, paths: "closed-form derivative vs term-wise differentiated sums", note: None, run: c2_13 },
    Case {
        id: "2.14",
        tol: SERIES,
        paths: "term-wise derivative vs shifted series at a matrix argument",
        note: Some("general-k form uses C - mu k I; equals C - mu I at k = 1"),
        run: c2_14,
    },
    Case { id: "2.15", tol: SERIES, paths: "term-wise derivative vs (A)_mu R(A + mu k I)", note: None, run: c2_15 },
    Case { id: "2.16", tol: SERIES, paths: "term-wise derivative vs (P_i)_mu R(P_i + mu k I)", note: None, run: c2_16 },
    Case {
        id: "2.17",
        tol: SERIES,
        paths: "term-wise derivative vs shifted series",
        note: Some("prefactor Gamma_k(Q_j + kI) Gamma_k^-1(Q_j - (mu - 1) k I)"),
        run: c2_17,
    },
    Case { id: "2.18", tol: 1e-7, paths: "theta polynomial in Q vs z times theta polynomial in A, P at C + B", note: None, run: c2_18 },
    Case {
        id: "2.19",
        tol: QUAD,
        paths: "series vs k-Beta quadrature of the reduced series",
        note: Some("exponent (Q_j - A)/k"),
        run: c2_19,
    },
    Case {
        id: "2.20",
        tol: QUAD,
        paths: "series vs k-Beta quadrature of the reduced series",
        note: Some("exponent (Q_j - P_i)/k"),
        run: c2_20,
    },
    Case {
        id: "2.21",
        tol: QUAD,
        paths: "series vs half-line quadrature of the reduced series",
        note: Some("integrated in u = xi^k / k"),
        run: c2_21,
    },
    Case {
        id: "2.22",
        tol: QUAD,
        paths: "series vs half-line quadrature of the reduced series",
        note: Some("integrated in u = xi^k / k"),
        run: c2_22,
    },
    Case {
        id: "2.24",
        tol: QUAD,
        paths: "quadrature over [0, x] vs series with Q_j replaced by Q_j + E",
        note: Some("left side keeps Q_j among the denominators"),
        run: c2_24,
    },
    Case {
        id: "2.25",
        tol: QUAD,
        paths: "quadrature over [a, x] vs series with Q_j replaced by Q_j + E",
        note: Some("left side keeps Q_j among the denominators"),
        run: c2_25,
    },
    Case {
        id: "2.26",
        tol: QUAD,
        paths: "series with Delta arrays vs k-Beta quadrature",
        note: Some("general-k form uses argument c z^mu; equals the k = 1 form"),
        run: c2_26,
    },
    Case {
        id: "2.27",
        tol: QUAD,
        paths: "series with Delta arrays vs k-Beta quadrature",
        note: Some("general-k form uses xi^mu (1 - xi)^iota and the 1/k of the k-Beta weight"),
        run: c2_27,
    },
    Case { id: "2.28", tol: QUAD, paths: "k-Beta transform quadrature vs Gamma_k ratio times series", note: None, run: c2_28 },
    Case {
        id: "2.29",
        tol: QUAD,
        paths: "k-Beta transform quadrature vs Gamma_k ratio times series",
        note: Some("right side keeps P_i"),
        run: c2_29,
    },
    Case { id: "2.30", tol: QUAD, paths: "Laplace quadrature vs k-hypergeometric companion", note: None, run: c2_30 },
    Case { id: "2.31", tol: QUAD, paths: "Laplace quadrature vs series with E appended", note: None, run: c2_31 },
    Case { id: "2.32", tol: QUAD, paths: "Laplace quadrature vs series with kI appended", note: None, run: c2_32 },
    Case { id: "2.33", tol: QUAD, paths: "Laplace quadrature vs series", note: None, run: c2_33 },
    Case {
        id: "2.34",
        tol: QUAD,
        paths: "Laplace quadrature vs series",
        note: Some("prefactor (1/s)(sk)^{I - P_i/k}"),
        run: c2_34,
    },
    Case {
        id: "2.35",
        tol: QUAD,
        paths: "rotated-contour quadrature vs series with kI appended",
        note: Some("sampled on decaying families r = s = 0, B = kI, A = C + nkI with w^{1/alpha} > 1"),
        run: c2_35,
    },
    Case {
        id: "2.36",
        tol: QUAD,
        paths: "Riemann-Liouville quadrature vs series with E + kI, E + (mu + k)I appended",
        note: Some("power z^{(E + mu I)/k}"),
        run: c2_36,
    },
    Case {
        id: "2.37",
        tol: QUAD,
        paths: "finite-difference derivative of the fractional integral vs series",
        note: Some("derivative of order mu in (0, 1) taken as d/dx of the order 1 - mu integral"),
        run: c2_37,
    },
    Case {
        id: "2.38",
        tol: QUAD,
        paths: "Riemann-Liouville quadrature from a vs series",
        note: Some("Gamma_k^-1(E + mu I)"),
        run: c2_38,
    },
    Case {
        id: "2.39",
        tol: QUAD,
        paths: "finite-difference derivative of the fractional integral from a vs series",
        note: Some("general-k parameter E + (1 - k - mu)I with a 1/k; equals E - mu I at k = 1"),
        run: c2_39,
    },
    Case { id: "2.40", tol: QUAD, paths: "Weyl quadrature vs series with E - beta I, E appended", note: None, run: c2_40 },
    Case { id: "2.41", tol: QUAD, paths: "Weyl quadrature vs series at C", note: None, run: c2_41 },
    Case {
        id: "2.42",
        tol: QUAD,
        paths: "finite-difference Weyl derivative vs series",
        note: Some("left side carries (u + a)^{-E/k}; general-k parameter E + (beta + k - 1)I"),
        run: c2_42,
    },
    Case {
        id: "2.43",
        tol: QUAD,
        paths: "finite-difference Weyl derivative vs series",
        note: Some("general-k form uses C + (beta + k - 1)I and a 1/k"),
        run: c2_43,
    },
    Case {
        id: "3.1",
        tol: QUAD,
        paths: "series with Delta arrays vs k-Beta quadrature of the Mittag-Leffler function",
        note: Some("general-k form uses kI steps in the Delta arrays and argument z t^r"),
        run: c3_1,
    },
    Case { id: "3.7", tol: 1e-12, paths: "Mittag-Leffler reduction vs direct scalar sums", note: None, run: c3_7 },
    Case { id: "3.8", tol: SERIES, paths: "K-function reduction vs direct scalar sums", note: None, run: c3_8 },
    Case { id: "3.9", tol: SERIES, paths: "M-series reduction vs direct scalar sums", note: None, run: c3_9 },
    Case { id: "3.10", tol: SERIES, paths: "classical reduction vs direct sums without the A and Q_1 factors", note: None, run: c3_10 },
    Case { id: "3.11", tol: SERIES, paths: "hypergeometric reduction vs direct sums without Gamma factors", note: None, run: c3_11 },
];
