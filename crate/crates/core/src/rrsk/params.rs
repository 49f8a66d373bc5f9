use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kgamma::check_k;
use crate::matfun::{first_singular_shift, DEFAULT_SHIFT_EPS};
use crate::matrix::ComplexMatrix;

/// Shift-invertibility of every `Q_j` is checked up to this `l` on construction.
pub const DEFAULT_LMAX: usize = 500;

/// Parameters `(k, A, P_1..P_r, Q_1..Q_s, B, C)` of the series.
///
/// JSON form: `{"k": .., "A": m, "P": [m, ..], "Q": [m, ..], "B": m, "C": m}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParamSet")]
pub struct ParamSet {
    pub k: f64,
    #[serde(rename = "A")]
    pub a: ComplexMatrix,
    #[serde(rename = "P")]
    pub p: Vec<ComplexMatrix>,
    #[serde(rename = "Q")]
    pub q: Vec<ComplexMatrix>,
    #[serde(rename = "B")]
    pub b: ComplexMatrix,
    #[serde(rename = "C")]
    pub c: ComplexMatrix,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParamSet {
    k: f64,
    #[serde(rename = "A")]
    a: ComplexMatrix,
    #[serde(rename = "P", default)]
    p: Vec<ComplexMatrix>,
    #[serde(rename = "Q", default)]
    q: Vec<ComplexMatrix>,
    #[serde(rename = "B")]
    b: ComplexMatrix,
    #[serde(rename = "C")]
    c: ComplexMatrix,
}

impl TryFrom<RawParamSet> for ParamSet {
    type Error = Error;
    fn try_from(r: RawParamSet) -> Result<Self> {
        ParamSet::new(r.k, r.a, r.p, r.q, r.b, r.c)
    }
}

/// Which parameter [`ParamSet::shifted`] moves. Indices are zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamSelector {
    A,
    P(usize),
    Q(usize),
    C,
}

impl ParamSet {
    /// Validates dimensions, `k > 0` and shift-invertibility of each `Q_j` up to [`DEFAULT_LMAX`].
    pub fn new(
        k: f64,
        a: ComplexMatrix,
        p: Vec<ComplexMatrix>,
        q: Vec<ComplexMatrix>,
        b: ComplexMatrix,
        c: ComplexMatrix,
    ) -> Result<Self> {
        let ps = ParamSet { k, a, p, q, b, c };
        ps.validate(DEFAULT_LMAX)?;
        Ok(ps)
    }

    /// Scalar (1x1) convenience constructor.
    pub fn scalar(k: f64, a: f64, p: &[f64], q: &[f64], b: f64, c: f64) -> Result<Self> {
        let m = |x: f64| ComplexMatrix::from_real_diag(&[x]);
        Self::new(k, m(a), p.iter().map(|&x| m(x)).collect(), q.iter().map(|&x| m(x)).collect(), m(b), m(c))
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Number of numerator parameters `P_i`.
    pub fn r(&self) -> usize {
        self.p.len()
    }

    /// Number of denominator parameters `Q_j`.
    pub fn s(&self) -> usize {
        self.q.len()
    }

    pub fn validate(&self, lmax: usize) -> Result<()> {
        check_k(self.k)?;
        for m in self.matrices() {
            self.a.same_dim(m)?;
            m.check_finite()?;
        }
        self.check_q(lmax)
    }

    pub(crate) fn check_q(&self, lmax: usize) -> Result<()> {
        for (j, q) in self.q.iter().enumerate() {
            if let Some(ell) = first_singular_shift(q, self.k, lmax, DEFAULT_SHIFT_EPS)? {
                return Err(Error::SingularQShift { index: j + 1, ell });
            }
        }
        Ok(())
    }

    pub fn matrices(&self) -> impl Iterator<Item = &ComplexMatrix> {
        std::iter::once(&self.a).chain(&self.p).chain(&self.q).chain([&self.b, &self.c])
    }

    /// Copy with the selected parameter moved by `steps * k * I`.
    pub fn shifted(&self, which: ParamSelector, steps: i64) -> Result<ParamSet> {
        let mut out = self.clone();
        if steps == 0 {
            return Ok(out);
        }
        let delta = steps as f64 * self.k;
        let target = match which {
            ParamSelector::A => &mut out.a,
            ParamSelector::C => &mut out.c,
            ParamSelector::P(i) => out
                .p
                .get_mut(i)
                .ok_or_else(|| Error::InvalidArgument(format!("no parameter P[{i}]")))?,
            ParamSelector::Q(j) => out
                .q
                .get_mut(j)
                .ok_or_else(|| Error::InvalidArgument(format!("no parameter Q[{j}]")))?,
        };
        *target = target.shift_real(delta);
        if matches!(which, ParamSelector::Q(_)) {
            out.check_q(DEFAULT_LMAX)?;
        }
        Ok(out)
    }

    pub fn with_a(&self, a: ComplexMatrix) -> ParamSet {
        ParamSet { a, ..self.clone() }
    }

    pub fn with_c(&self, c: ComplexMatrix) -> ParamSet {
        ParamSet { c, ..self.clone() }
    }

    pub fn with_p(&self, p: Vec<ComplexMatrix>) -> ParamSet {
        ParamSet { p, ..self.clone() }
    }

    pub fn with_q(&self, q: Vec<ComplexMatrix>) -> ParamSet {
        ParamSet { q, ..self.clone() }
    }
}

/// [`ParamSet::shifted`] as a free function.
pub fn shift_param(p: &ParamSet, which: ParamSelector, steps: i64) -> Result<ParamSet> {
    p.shifted(which, steps)
}
