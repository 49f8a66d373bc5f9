use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

const BASIS_CONDITION_MAX: f64 = 30.0;

/// Draws pairwise-commuting parameter matrices `V diag(lambda) V^{-1}` that share one
/// random, well-conditioned eigenbasis `V`, with each spectrum placed where the
/// caller needs it.
#[derive(Debug, Clone)]
pub struct CommutingFamilySampler {
    rng: ChaCha8Rng,
    seed: u64,
    basis: ComplexMatrix,
    inverse: ComplexMatrix,
}

impl CommutingFamilySampler {
    pub fn new(seed: u64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let mut v = ComplexMatrix::identity(dim);
            for i in 0..dim {
                for j in 0..dim {
                    v[(i, j)] += Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
                }
            }
            let Ok(inv) = v.inverse() else { continue };
            if v.norm_one() * inv.norm_one() <= BASIS_CONDITION_MAX {
                return Ok(CommutingFamilySampler { rng, seed, basis: v, inverse: inv });
            }
        }
        Err(Error::SamplerExhausted(format!("no well-conditioned basis for seed {seed}")))
    }

    /// Sampler with the dimension itself drawn from `1..=max_dim`.
    pub fn with_random_dim(seed: u64, max_dim: usize) -> Result<Self> {
        let dim = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed).gen_range(1..=max_dim.max(1));
        Self::new(seed, dim)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi > lo {
            self.rng.gen_range(lo..hi)
        } else {
            lo
        }
    }

    pub fn int(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn pick<T: Copy>(&mut self, items: &[T]) -> T {
        items[self.rng.gen_range(0..items.len())]
    }

    /// Complex number with modulus in `[lo, hi)` and uniform argument.
    pub fn complex_in_annulus(&mut self, lo: f64, hi: f64) -> Complex64 {
        let r = self.uniform(lo, hi);
        Complex64::from_polar(r, self.uniform(-std::f64::consts::PI, std::f64::consts::PI))
    }

    /// `dim` eigenvalues with real parts in `[lo, hi)` and imaginary parts in `(-im, im)`.
    pub fn spectrum(&mut self, lo: f64, hi: f64, im: f64) -> Vec<Complex64> {
        (0..self.dim()).map(|_| Complex64::new(self.uniform(lo, hi), self.uniform(-im, im))).collect()
    }

    /// Like [`spectrum`](Self::spectrum) but every eigenvalue stays at least `0.1 k`
    /// away from the lattice `k Z`, so shifts by multiples of `k` stay invertible.
    pub fn spectrum_off_lattice(&mut self, lo: f64, hi: f64, im: f64, k: f64) -> Result<Vec<Complex64>> {
        let mut out = Vec::with_capacity(self.dim());
        while out.len() < self.dim() {
            let mut ok = false;
            for _ in 0..200 {
                let l = Complex64::new(self.uniform(lo, hi), self.uniform(-im, im));
                let nearest = Complex64::new(k * (l.re / k).round(), 0.0);
                if (l - nearest).norm() >= 0.1 * k {
                    out.push(l);
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Err(Error::SamplerExhausted(format!("no off-lattice eigenvalue in [{lo}, {hi})")));
            }
        }
        Ok(out)
    }

    /// `V diag(eig) V^{-1}`.
    pub fn matrix(&self, eig: &[Complex64]) -> ComplexMatrix {
        let n = self.dim();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (l, e) in eig.iter().enumerate() {
                    acc += self.basis[(i, l)] * e * self.inverse[(l, j)];
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    /// A fresh family member with a [`spectrum`](Self::spectrum) drawn from `[lo, hi) x (-im, im)`.
    pub fn member(&mut self, lo: f64, hi: f64, im: f64) -> ComplexMatrix {
        let eig = self.spectrum(lo, hi, im);
        self.matrix(&eig)
    }

    /// `V diag(f(0), ..., f(n-1)) V^{-1}`, with `f` evaluated per eigen-index.
    pub fn spectral(&self, f: impl Fn(usize) -> Result<Complex64>) -> Result<ComplexMatrix> {
        let d = (0..self.dim()).map(f).collect::<Result<Vec<_>>>()?;
        Ok(self.matrix(&d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_commute_and_are_deterministic() {
        let mut s = CommutingFamilySampler::new(9, 3).unwrap();
        let (ea, eb) = (s.spectrum(0.5, 2.0, 0.3), s.spectrum_off_lattice(-2.0, 2.0, 0.3, 0.5).unwrap());
        let (a, b) = (s.matrix(&ea), s.matrix(&eb));
        assert!(a.commutator(&b).norm_fro() <= 1e-12 * a.norm_fro() * b.norm_fro());
        let mut t = CommutingFamilySampler::new(9, 3).unwrap();
        let ea2 = t.spectrum(0.5, 2.0, 0.3);
        let a2 = t.matrix(&ea2);
        assert_eq!(a, a2);
    }

    #[test]
    fn off_lattice_keeps_distance() {
        let mut s = CommutingFamilySampler::new(1, 4).unwrap();
        for _ in 0..20 {
            for l in s.spectrum_off_lattice(-3.0, 3.0, 0.0, 1.0).unwrap() {
                assert!((l.re - l.re.round()).abs() >= 0.1);
            }
        }
    }
}
