//! Dense square complex matrices.
//!
//! [`ComplexMatrix`] is the carrier for every parameter of the library. It is
//! deliberately small: row-major storage, the handful of BLAS-like kernels the
//! series and quadrature code need, an LU-based inverse and the repo-wide JSON
//! encoding (an `N x N` nested array of `[re, im]` pairs).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Shorthand for the complex unit `i`.
pub const I_UNIT: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        ComplexMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    /// `c * I`.
    pub fn scalar(dim: usize, c: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = c;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diag(&d)
    }

    /// Builds a matrix from rows, rejecting ragged, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare { rows: 0, cols: 0 });
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, cols: row.len() });
            }
            for (j, v) in row.into_iter().enumerate() {
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                data.push(v);
            }
        }
        Ok(ComplexMatrix { dim: n, data })
    }

    /// Real-valued convenience constructor.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// Returns an error naming the first non-finite entry, if any.
    pub fn check_finite(&self) -> Result<()> {
        match self.data.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            None => Ok(()),
            Some(p) => Err(Error::NonFinite { row: p / self.dim, col: p % self.dim }),
        }
    }

    pub fn same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|v| v * c)
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.map(|v| v * c)
    }

    /// `self + c * I`.
    pub fn shift(&self, c: Complex64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m.data[i * self.dim + i] += c;
        }
        m
    }

    pub fn shift_real(&self, c: f64) -> Self {
        self.shift(Complex64::new(c, 0.0))
    }

    pub fn conj_transpose(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &ComplexMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Integer power by repeated squaring; `n = 0` gives the identity.
    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Solves `self * X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(rhs)?;
        let lu = Lu::factor(self)?;
        Ok(lu.solve(rhs))
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve(&Self::identity(self.dim))
    }

    /// Relative Frobenius distance `|a - b| / max(1, |b|)`.
    pub fn rel_residual(&self, reference: &ComplexMatrix) -> f64 {
        (self - reference).norm_fro() / reference.norm_fro().max(1.0)
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim).map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec()).collect()
    }
}

struct Lu {
    dim: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(m: &ComplexMatrix) -> Result<Lu> {
        let n = m.dim;
        let mut a = m.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = m.data.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::SingularMatrix);
        }
        for col in 0..n {
            let (piv, pmax) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax <= scale * 1e-14 * n as f64 {
                return Err(Error::SingularMatrix);
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                perm.swap(col, piv);
            }
            let d = a[col * n + col];
            for r in col + 1..n {
                let f = a[r * n + col] / d;
                a[r * n + col] = f;
                for j in col + 1..n {
                    let u = a[col * n + j];
                    a[r * n + j] -= f * u;
                }
            }
        }
        Ok(Lu { dim: n, lu: a, perm })
    }

    fn solve(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let n = self.dim;
        let mut x = vec![Complex64::new(0.0, 0.0); n * n];
        for c in 0..n {
            let mut y: Vec<Complex64> = (0..n).map(|i| rhs.data[self.perm[i] * n + c]).collect();
            for i in 0..n {
                for j in 0..i {
                    let l = self.lu[i * n + j];
                    let yj = y[j];
                    y[i] -= l * yj;
                }
            }
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in i + 1..n {
                    s -= self.lu[i * n + j] * y[j];
                }
                y[i] = s / self.lu[i * n + i];
            }
            for i in 0..n {
                x[i * n + c] = y[i];
            }
        }
        ComplexMatrix { dim: n, data: x }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self * &rhs
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|v| -v)
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let v = self[(i, j)];
                write!(f, "{:>12.6e}{:+.6e}i  ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| [v.re, v.im]).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_ragged_and_nonfinite() {
        assert!(matches!(
            ComplexMatrix::from_rows(vec![vec![c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_rows(vec![vec![c(f64::NAN, 0.0)]]),
            Err(Error::NonFinite { row: 0, col: 0 })
        ));
    }

    #[test]
    fn inverse_of_complex_matrix() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(2.0, 1.0), c(0.5, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 0.3), c(1.0, 0.0), c(0.2, 0.2)],
            vec![c(1.0, 0.0), c(0.0, 0.0), c(3.0, -0.5)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).rel_residual(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn singular_is_reported() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn json_encoding_matches_documented_identity() {
        let json = serde_json::to_string(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(json, "[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[1.0,0.0]]]");
        let back: ComplexMatrix = serde_json::from_str("[[[1,0],[0,0]],[[0,0],[1,0]]]").unwrap();
        assert_eq!(back, ComplexMatrix::identity(2));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.5, 0.1), c(0.2, 0.0)],
            vec![c(-0.3, 0.0), c(0.9, -0.2)],
        ])
        .unwrap();
        let mut acc = ComplexMatrix::identity(2);
        for _ in 0..7 {
            acc = &acc * &m;
        }
        assert!(m.powi(7).rel_residual(&acc) < 1e-15);
        assert_eq!(m.powi(0), ComplexMatrix::identity(2));
    }
}
