//! Holomorphic functions on the unit disk as truncated Taylor series,
//! reproducing kernels of the weighted Bergman spaces, and disk automorphisms.
//!
//! Norms at the coefficient level use the orthogonality of monomials: in
//! `A²_α` the monomial `z^k` has squared norm
//! `c_k = k! Γ(α+2) / Γ(k+α+2) = Π_{j=1..k} j / (j+α+1)`, evaluated here as a
//! running product so that no gamma function ever overflows.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation degree for test functions.
pub const DEFAULT_DEGREE: usize = 64;
/// Default truncation degree for kernels.
pub const KERNEL_DEGREE: usize = 256;
/// Kernel centers beyond this modulus are rejected.
pub const KERNEL_RADIUS_CAP: f64 = 0.95;

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm_sqr() >= 1.0 {
            return Err(Error::OutsideDisk { re: z.re, im: z.im });
        }
        Ok(DiskPoint(z))
    }

    pub fn from_re_im(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn origin() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }
}

/// Exponent `p` and weight `α` of `A^p_α`; `α = -1` stands for the Hardy
/// space `H^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub alpha: f64,
    pub p: f64,
}

impl SpaceParams {
    pub fn bergman(p: f64, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        check_exponent(p)?;
        Ok(SpaceParams { alpha, p })
    }

    pub fn hardy(p: f64) -> Result<Self> {
        check_exponent(p)?;
        Ok(SpaceParams { alpha: -1.0, p })
    }

    pub fn is_hardy(&self) -> bool {
        self.alpha == -1.0
    }

    /// Exponent of `(1-|z|²)` in the Husimi field; `α + 2` (equal to 1 for Hardy).
    pub fn weight_exponent(&self) -> f64 {
        self.alpha + 2.0
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= -1.0 {
        return Err(Error::param("alpha", alpha, "must be finite and > -1"));
    }
    Ok(())
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::param("p", p, "must be finite and > 0"));
    }
    Ok(())
}

/// Truncated power series `Σ_{k=0..N} a_k z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorFunction {
    coeffs: Vec<Complex64>,
}

impl TaylorFunction {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("coefficient list is empty".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidInput(format!("coefficient {k} is not finite")));
        }
        Ok(TaylorFunction { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        TaylorFunction {
            coeffs: vec![Complex64::new(0.0, 0.0); degree + 1],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        TaylorFunction { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn monomial(k: usize) -> Self {
        let mut f = Self::zero(k);
        f.coeffs[k] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Storage degree `N` (may exceed the true degree if trailing coefficients vanish).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree after dropping exactly-zero trailing coefficients.
    pub fn effective_degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Horner evaluation at a validated disk point.
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.eval_raw(z.z())
    }

    pub fn eval_checked(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(DiskPoint::new(z)?))
    }

    /// Horner evaluation without domain checks; used in quadrature inner loops.
    #[inline]
    pub fn eval_raw(&self, z: Complex64) -> Complex64 {
        let n = self.effective_degree();
        let mut acc = self.coeffs[n];
        for c in self.coeffs[..n].iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Value and complex derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let n = self.effective_degree();
        let mut value = self.coeffs[n];
        let mut deriv = Complex64::new(0.0, 0.0);
        for c in self.coeffs[..n].iter().rev() {
            deriv = deriv * z + value;
            value = value * z + c;
        }
        (value, deriv)
    }

    /// `Σ |a_k|`, an upper bound for `|f|` on the closed disk.
    pub fn coefficient_l1(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TaylorFunction {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `a·self + b·other`, padded to the larger degree.
    pub fn combine(&self, a: Complex64, other: &TaylorFunction, b: Complex64) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        let coeffs = (0..n)
            .map(|k| {
                a * self.coeffs.get(k).copied().unwrap_or(zero)
                    + b * other.coeffs.get(k).copied().unwrap_or(zero)
            })
            .collect();
        TaylorFunction { coeffs }
    }

    pub fn add(&self, other: &TaylorFunction) -> Self {
        let one = Complex64::new(1.0, 0.0);
        self.combine(one, other, one)
    }

    /// Copy truncated (or zero-padded) to storage degree `n`.
    pub fn truncated(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, Complex64::new(0.0, 0.0));
        TaylorFunction { coeffs }
    }

    /// Parse the coefficient file format: a JSON array of `[re, im]` pairs,
    /// index = power.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let pairs: Vec<[f64; 2]> = serde_json::from_str(s)?;
        Self::new(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    pub fn to_json_string(&self) -> String {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        serde_json::to_string(&pairs).expect("finite coefficients always serialize")
    }
}

/// `c_k = ‖z^k‖²_{A²_α}`.
pub fn monomial_norm_sq(k: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(coefficient_weight(k, alpha))
}

/// Running product `Π_{j=1..k} j/(j+α+1)`. For `α = -1` this is 1, the
/// Hardy `H²` weight.
pub(crate) fn coefficient_weight(k: usize, alpha: f64) -> f64 {
    (1..=k).fold(1.0, |acc, j| {
        let j = j as f64;
        acc * j / (j + alpha + 1.0)
    })
}

/// `⟨f, g⟩_{A²_α} = Σ a_k conj(b_k) c_k`.
pub fn inner_product(f: &TaylorFunction, g: &TaylorFunction, alpha: f64) -> Result<Complex64> {
    check_alpha(alpha)?;
    Ok(inner_product_unchecked(f, g, alpha))
}

pub(crate) fn inner_product_unchecked(f: &TaylorFunction, g: &TaylorFunction, alpha: f64) -> Complex64 {
    let n = f.effective_degree().min(g.effective_degree());
    let mut weight = 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            weight *= kf / (kf + alpha + 1.0);
        }
        acc += f.coeffs[k] * g.coeffs[k].conj() * weight;
    }
    acc
}

/// `‖f‖²_{A²_α}` from coefficients (exact for polynomials).
pub(crate) fn norm_sq_unchecked(f: &TaylorFunction, alpha: f64) -> f64 {
    inner_product_unchecked(f, f, alpha).re
}

/// Truncated kernel expansion with a bound on the discarded tail.
#[derive(Debug, Clone)]
pub struct KernelExpansion {
    pub function: TaylorFunction,
    /// Upper bound on the `A²_α` norm of the discarded tail.
    pub tail_bound: f64,
}

/// `K_w(z) = (1 - w̄z)^{-α-2}`, coefficients `w̄^k / c_k`, truncated at degree `n`.
pub fn reproducing_kernel(w: DiskPoint, alpha: f64, n: usize) -> Result<KernelExpansion> {
    check_alpha(alpha)?;
    check_kernel_center(w)?;
    let wb = w.z().conj();
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut power = Complex64::new(1.0, 0.0);
    let mut inv_c = 1.0;
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            inv_c *= (kf + alpha + 1.0) / kf;
            power *= wb;
        }
        coeffs.push(power * inv_c);
    }
    Ok(KernelExpansion {
        function: TaylorFunction { coeffs },
        tail_bound: kernel_tail_bound(w.modulus(), alpha, n),
    })
}

/// `κ_w = K_w (1-|w|²)^{(α+2)/2}`, unit norm in `A²_α` up to truncation.
pub fn normalized_kernel(w: DiskPoint, alpha: f64, n: usize) -> Result<KernelExpansion> {
    let k = reproducing_kernel(w, alpha, n)?;
    let s = (1.0 - w.z().norm_sqr()).powf((alpha + 2.0) / 2.0);
    Ok(KernelExpansion {
        function: k.function.scale_real(s),
        tail_bound: k.tail_bound * s,
    })
}

fn check_kernel_center(w: DiskPoint) -> Result<()> {
    if w.modulus() > KERNEL_RADIUS_CAP {
        return Err(Error::param(
            "|w|",
            w.modulus(),
            "kernel centers are capped at 0.95",
        ));
    }
    Ok(())
}

/// Tail `(Σ_{k>n} |w|^{2k}/c_k)^{1/2}` bounded by a geometric series; the
/// ratio of consecutive terms is `|w|²(k+α+2)/(k+1)`, decreasing in `k`.
fn kernel_tail_bound(r: f64, alpha: f64, n: usize) -> f64 {
    let r2 = r * r;
    if r2 == 0.0 {
        return 0.0;
    }
    let first = r2.powi(n as i32 + 1) / coefficient_weight(n + 1, alpha);
    let ratio = r2 * ((n as f64 + alpha + 3.0) / (n as f64 + 2.0)).max(1.0);
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    (first / (1.0 - ratio)).sqrt()
}

/// Disk automorphism `φ_w(z) = (w - z)/(1 - w̄z)`, an involution.
pub fn mobius(w: DiskPoint, z: DiskPoint) -> DiskPoint {
    let v = mobius_raw(w.z(), z.z());
    // Rounding can push images of points near the circle onto it.
    if v.norm_sqr() >= 1.0 {
        DiskPoint(v / (v.norm() * (1.0 + f64::EPSILON)))
    } else {
        DiskPoint(v)
    }
}

#[inline]
pub(crate) fn mobius_raw(w: Complex64, z: Complex64) -> Complex64 {
    (w - z) / (Complex64::new(1.0, 0.0) - w.conj() * z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let one = TaylorFunction::one();
        assert_eq!(one.eval(DiskPoint::from_re_im(0.3, 0.4).unwrap()), c(1.0, 0.0));
        let id = TaylorFunction::monomial(1);
        assert_eq!(id.eval(DiskPoint::from_re_im(0.5, 0.0).unwrap()), c(0.5, 0.0));

        let w = DiskPoint::from_re_im(0.5, 0.0).unwrap();
        let k = reproducing_kernel(w, 0.0, KERNEL_DEGREE).unwrap();
        let v = k.function.eval(DiskPoint::from_re_im(0.5, 0.0).unwrap());
        assert_relative_eq!(v.re, 16.0 / 9.0, epsilon = 1e-14);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn eval_rejects_boundary() {
        let f = TaylorFunction::one();
        assert!(f.eval_checked(c(1.0, 0.0)).is_err());
        assert!(f.eval_checked(c(0.6, 0.8)).is_err());
        assert!(DiskPoint::from_re_im(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn derivative_matches_power_rule() {
        let f = TaylorFunction::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let (v, d) = f.eval_with_derivative(c(0.5, 0.0));
        assert_relative_eq!(v.re, 1.0 + 1.0 + 0.75);
        assert_relative_eq!(d.re, 2.0 + 3.0);
    }

    #[test]
    fn kernel_coefficients() {
        let k0 = reproducing_kernel(DiskPoint::origin(), 1.3, 10).unwrap();
        assert_eq!(k0.function.coefficients()[0], c(1.0, 0.0));
        assert!(k0.function.coefficients()[1..].iter().all(|a| a.norm() == 0.0));
        assert_eq!(k0.tail_bound, 0.0);

        let k = reproducing_kernel(DiskPoint::from_re_im(0.5, 0.0).unwrap(), 0.0, 20).unwrap();
        for (j, a) in k.function.coefficients().iter().enumerate() {
            assert_relative_eq!(a.re, (j as f64 + 1.0) * 0.5f64.powi(j as i32), epsilon = 1e-14);
        }
    }

    #[test]
    fn kernel_rejects_bad_alpha_and_far_center() {
        assert!(reproducing_kernel(DiskPoint::origin(), -1.0, 4).is_err());
        let far = DiskPoint::from_re_im(0.96, 0.0).unwrap();
        assert!(reproducing_kernel(far, 0.0, 4).is_err());
    }

    #[test]
    fn normalized_kernel_has_unit_norm() {
        let w = DiskPoint::from_re_im(0.3, 0.0).unwrap();
        let k = normalized_kernel(w, 1.0, KERNEL_DEGREE).unwrap();
        let n2 = inner_product(&k.function, &k.function, 1.0).unwrap().re;
        assert!((n2 - 1.0).abs() <= 2.0 * k.tail_bound + 1e-13, "{n2}");
        assert_eq!(
            normalized_kernel(DiskPoint::origin(), 0.0, 8).unwrap().function.eval_raw(c(0.2, 0.1)),
            c(1.0, 0.0)
        );
    }

    #[test]
    fn kernel_norm_within_tail_for_far_centers() {
        for &(r, alpha) in &[(0.9, 0.0), (0.9, 2.5), (0.6, -0.5)] {
            let w = DiskPoint::from_re_im(0.0, r).unwrap();
            let k = normalized_kernel(w, alpha, KERNEL_DEGREE).unwrap();
            let n2 = norm_sq_unchecked(&k.function, alpha);
            let tail = k.tail_bound;
            assert!(tail < 1e-5, "{tail}");
            // ‖κ‖² = 1 - ‖tail‖².
            assert!(n2 <= 1.0 + 1e-12 && n2 >= 1.0 - tail * tail - 1e-12, "{r} {alpha} {n2}");
        }
    }

    #[test]
    fn mobius_examples() {
        let w = DiskPoint::from_re_im(0.5, 0.0).unwrap();
        assert_eq!(mobius(w, DiskPoint::origin()).z(), w.z());
        assert!(mobius(w, w).z().norm() < 1e-16);
        let v = mobius(w, DiskPoint::from_re_im(0.2, 0.0).unwrap()).z();
        assert_relative_eq!(v.re, 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn monomial_norms() {
        for alpha in [0.0, 0.5, 3.0, -0.7] {
            assert_eq!(monomial_norm_sq(0, alpha).unwrap(), 1.0);
        }
        assert_relative_eq!(monomial_norm_sq(1, 0.0).unwrap(), 0.5);
        assert_relative_eq!(monomial_norm_sq(5, 0.0).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        assert_relative_eq!(monomial_norm_sq(2, 1.0).unwrap(), 1.0 / 6.0, epsilon = 1e-15);
        assert!(monomial_norm_sq(2, -1.0).is_err());
    }

    #[test]
    fn monomial_norm_matches_gamma_ratio() {
        use statrs::function::gamma::ln_gamma;
        for k in [0usize, 3, 16, 64, 200] {
            for alpha in [0.0, 0.5, 3.0] {
                let lg = ln_gamma(k as f64 + 1.0) + ln_gamma(alpha + 2.0)
                    - ln_gamma(k as f64 + alpha + 2.0);
                assert_relative_eq!(
                    monomial_norm_sq(k, alpha).unwrap(),
                    lg.exp(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn inner_product_examples() {
        let z = TaylorFunction::monomial(1);
        let one = TaylorFunction::one();
        assert_eq!(inner_product(&z, &one, 0.0).unwrap(), c(0.0, 0.0));
        assert_relative_eq!(inner_product(&z, &z, 0.0).unwrap().re, 0.5);

        let f = TaylorFunction::from_real(&[1.0, 1.0]).unwrap();
        let w = DiskPoint::from_re_im(0.4, 0.0).unwrap();
        let k = reproducing_kernel(w, 0.0, KERNEL_DEGREE).unwrap();
        let ip = inner_product(&f, &k.function, 0.0).unwrap();
        assert_relative_eq!(ip.re, 1.4, epsilon = 1e-14);
    }

    #[test]
    fn orthonormal_monomials() {
        for alpha in [0.0, 1.7] {
            for j in 0..6 {
                for k in 0..6 {
                    let fj = TaylorFunction::monomial(j)
                        .scale_real(1.0 / monomial_norm_sq(j, alpha).unwrap().sqrt());
                    let fk = TaylorFunction::monomial(k)
                        .scale_real(1.0 / monomial_norm_sq(k, alpha).unwrap().sqrt());
                    let ip = inner_product(&fj, &fk, alpha).unwrap();
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!((ip.re - expected).abs() < 1e-14 && ip.im.abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn coefficient_file_round_trip_and_rejection() {
        let f = TaylorFunction::new(vec![c(1.0, -2.0), c(0.25, 0.0)]).unwrap();
        let g = TaylorFunction::from_json_str(&f.to_json_string()).unwrap();
        assert_eq!(f, g);
        assert!(TaylorFunction::from_json_str("[]").is_err());
        assert!(TaylorFunction::from_json_str("[[1.0]]").is_err());
        assert!(TaylorFunction::from_json_str("[[1e400, 0]]").is_err());
        assert!(TaylorFunction::from_json_str("{not json").is_err());
    }
}
