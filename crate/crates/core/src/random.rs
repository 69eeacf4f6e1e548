//! Seeded random test functions and mixed states.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::disk::{check_alpha, norm_sq_unchecked, TaylorFunction};
use crate::error::Result;
use crate::operators::MixedState;

pub const RANDOM_DEGREE: usize = 8;

/// Deterministic source of test objects.
#[derive(Debug, Clone)]
pub struct TestFamily {
    rng: ChaCha8Rng,
    degree: usize,
}

impl TestFamily {
    pub fn new(seed: u64) -> Self {
        TestFamily {
            rng: ChaCha8Rng::seed_from_u64(seed),
            degree: RANDOM_DEGREE,
        }
    }

    pub fn with_degree(seed: u64, degree: usize) -> Self {
        TestFamily {
            rng: ChaCha8Rng::seed_from_u64(seed),
            degree,
        }
    }

    fn complex_normal(&mut self, std: f64) -> Complex64 {
        let re: f64 = StandardNormal.sample(&mut self.rng);
        let im: f64 = StandardNormal.sample(&mut self.rng);
        Complex64::new(re, im) * (std * std::f64::consts::FRAC_1_SQRT_2)
    }

    /// Polynomial with `a_k ~ CN(0, 4^{-k})`, before normalization.
    pub fn raw_polynomial(&mut self) -> TaylorFunction {
        let coeffs = (0..=self.degree)
            .map(|k| self.complex_normal(0.5f64.powi(k as i32)))
            .collect();
        TaylorFunction::new(coeffs).expect("normal samples are finite")
    }

    /// Random polynomial with unit `A²_α` norm (`α = -1` gives `H²`).
    pub fn polynomial(&mut self, alpha: f64) -> Result<TaylorFunction> {
        if alpha != -1.0 {
            check_alpha(alpha)?;
        }
        loop {
            let f = self.raw_polynomial();
            let n2 = norm_sq_unchecked(&f, alpha);
            if n2 > 1e-12 {
                return Ok(f.scale_real(n2.sqrt().recip()));
            }
        }
    }

    pub fn polynomials(&mut self, alpha: f64, count: usize) -> Result<Vec<TaylorFunction>> {
        (0..count).map(|_| self.polynomial(alpha)).collect()
    }

    /// Mixed state of rank `1..=max_rank` with orthonormalized components and
    /// uniformly distributed weights on the simplex.
    pub fn mixed_state(&mut self, alpha: f64, max_rank: usize) -> Result<MixedState> {
        let rank = self.rng.random_range(1..=max_rank.max(1));
        let fs = (0..rank).map(|_| self.raw_polynomial()).collect::<Vec<_>>();
        let mut weights: Vec<f64> = (0..rank)
            .map(|_| -self.rng.random::<f64>().max(f64::MIN_POSITIVE).ln())
            .collect();
        let total: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= total);
        MixedState::orthonormalized(alpha, weights, fs)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_functions() {
        let a = TestFamily::new(7).polynomials(0.0, 3).unwrap();
        let b = TestFamily::new(7).polynomials(0.0, 3).unwrap();
        assert_eq!(a, b);
        let c = TestFamily::new(8).polynomial(0.0).unwrap();
        assert_ne!(a[0], c);
    }

    #[test]
    fn polynomials_are_normalized() {
        let mut fam = TestFamily::new(1);
        for alpha in [-1.0, 0.0, 2.5] {
            let f = fam.polynomial(alpha).unwrap();
            assert!((norm_sq_unchecked(&f, alpha) - 1.0).abs() < 1e-14);
            assert_eq!(f.degree(), RANDOM_DEGREE);
        }
    }

    #[test]
    fn coefficient_variance_decays() {
        let mut fam = TestFamily::new(3);
        let mut second = [0.0; 3];
        let n = 4000;
        for _ in 0..n {
            let f = fam.raw_polynomial();
            for (k, s) in second.iter_mut().enumerate() {
                *s += f.coefficients()[k].norm_sqr() / n as f64;
            }
        }
        for (k, s) in second.iter().enumerate() {
            let expected = 0.25f64.powi(k as i32);
            assert!((s / expected - 1.0).abs() < 0.1, "k={k}: {s}");
        }
    }
}
