//! The upper half-plane picture: Cauchy windows, the Bergman transform of a
//! spectral function, and its Cayley conjugation into `A²_α` of the disk.
//!
//! Spectral functions are finite sums `f̂(t) = Σ a_j t^{m_j} e^{-s_j t}` on
//! `t > 0`. For these, `B_α f(z) = c_α ∫₀^∞ t^{(α+1)/2} f̂(t) e^{izt} dt` has
//! the closed form `c_α Σ a_j Γ(κ_j)/(s_j - iz)^{κ_j}` with
//! `κ_j = m_j + (α+3)/2`.
//!
//! Normalizations: `‖f‖²_{H²(ℂ⁺)} = (1/2π)∫₀^∞ |f̂|² dt`, and
//! `c_α = 2^{(α+1)/2} / (2π √Γ(α+1))` makes
//! `∫|B_α f|² y^α dx dy = ‖f‖²_{H²(ℂ⁺)}`. The Cayley map carries this onto
//! `(α+1)/π ∫|T_α F|² (1-|w|²)^α dA` with
//! `T_α F(w) = √(4π/(α+1)) (1-w)^{-α-2} F(i(1+w)/(1-w))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma, ln_gamma};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::disk::{check_alpha, DiskPoint};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::rules::graded_both;

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::param("Im z", z.im, "half-plane points need y > 0"));
        }
        Ok(HalfPlanePoint(z))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralTerm {
    pub m: u32,
    pub s: f64,
    pub amplitude_re: f64,
    pub amplitude_im: f64,
}

impl SpectralTerm {
    pub fn amplitude(&self) -> Complex64 {
        Complex64::new(self.amplitude_re, self.amplitude_im)
    }
}

/// `f̂(t) = Σ a_j t^{m_j} e^{-s_j t}` on `t > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    terms: Vec<SpectralTerm>,
}

impl SpectralFunction {
    pub fn new(terms: Vec<SpectralTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("spectral function has no terms".into()));
        }
        for t in &terms {
            if !(t.s > 0.0 && t.s.is_finite()) {
                return Err(Error::param("s", t.s, "decay rates must be positive"));
            }
            if !(t.amplitude_re.is_finite() && t.amplitude_im.is_finite()) {
                return Err(Error::InvalidInput("amplitudes must be finite".into()));
            }
        }
        Ok(SpectralFunction { terms })
    }

    /// Single term `t^m e^{-st}`.
    pub fn term(m: u32, s: f64) -> Result<Self> {
        Self::new(vec![SpectralTerm {
            m,
            s,
            amplitude_re: 1.0,
            amplitude_im: 0.0,
        }])
    }

    pub fn terms(&self) -> &[SpectralTerm] {
        &self.terms
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let a = t.amplitude() * c;
                SpectralTerm {
                    amplitude_re: a.re,
                    amplitude_im: a.im,
                    ..*t
                }
            })
            .collect();
        SpectralFunction { terms }
    }

    pub fn add(&self, other: &SpectralFunction) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        SpectralFunction { terms }
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if t <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.terms
            .iter()
            .map(|j| j.amplitude() * t.powi(j.m as i32) * (-j.s * t).exp())
            .sum()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::new(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.terms).expect("finite terms always serialize")
    }

    /// `(1/2π)∫₀^∞ |f̂|² dt` from `∫ t^n e^{-σt} dt = Γ(n+1)/σ^{n+1}`.
    pub fn h2_norm_sq(&self) -> f64 {
        let mut acc = 0.0;
        for a in &self.terms {
            for b in &self.terms {
                let n = (a.m + b.m) as f64;
                let sigma = a.s + b.s;
                let moment = (ln_gamma(n + 1.0) - (n + 1.0) * sigma.ln()).exp();
                acc += (a.amplitude() * b.amplitude().conj()).re * moment;
            }
        }
        acc / (2.0 * PI)
    }
}

/// `c_β = 2^{2β-1} Γ(2β)`.
pub fn cauchy_constant(beta: f64) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::param("beta", beta, "Cauchy windows need β > 0"));
    }
    Ok((2.0 * beta - 1.0).exp2() * gamma(2.0 * beta))
}

/// `ψ̂_β(t) = t^β e^{-t} / c_β` for `t > 0`, zero otherwise.
pub fn cauchy_window(beta: f64, t: f64) -> Result<f64> {
    let c = cauchy_constant(beta)?;
    if t <= 0.0 {
        return Ok(0.0);
    }
    Ok(t.powf(beta) * (-t).exp() / c)
}

/// `c_α = 2^{(α+1)/2} / (2π √Γ(α+1))`.
pub fn bergman_constant(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((0.5 * (alpha + 1.0)).exp2() / (2.0 * PI * gamma(alpha + 1.0).sqrt()))
}

/// `√(4π/(α+1))`.
pub fn cayley_constant(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((4.0 * PI / (alpha + 1.0)).sqrt())
}

fn transform_terms(fhat: &SpectralFunction, alpha: f64, s_minus_iz: impl Fn(f64) -> Complex64) -> Complex64 {
    fhat.terms
        .iter()
        .map(|j| {
            let kappa = j.m as f64 + 0.5 * (alpha + 3.0);
            j.amplitude() * gamma(kappa) * s_minus_iz(j.s).powf(-kappa)
        })
        .sum()
}

/// `B_α f(z)` in closed form.
pub fn bergman_transform(fhat: &SpectralFunction, alpha: f64, z: HalfPlanePoint) -> Result<Complex64> {
    let c = bergman_constant(alpha)?;
    let iz = Complex64::i() * z.z();
    Ok(c * transform_terms(fhat, alpha, |s| s - iz))
}

/// `w ↦ i(1+w)/(1-w)`, the disk onto the upper half-plane, `0 ↦ i`.
pub fn cayley_point(w: DiskPoint) -> Result<HalfPlanePoint> {
    let one = Complex64::new(1.0, 0.0);
    let d = one - w.z();
    if d.norm() < 1e-8 {
        return Err(Error::param("|1-w|", d.norm(), "too close to the pole w = 1"));
    }
    HalfPlanePoint::new(Complex64::i() * (one + w.z()) / d)
}

/// `T_α F(w) = √(4π/(α+1)) (1-w)^{-α-2} F(i(1+w)/(1-w))`, principal branch.
pub fn cayley_map<F>(f: F, alpha: f64, w: DiskPoint) -> Result<Complex64>
where
    F: Fn(HalfPlanePoint) -> Result<Complex64>,
{
    let k = cayley_constant(alpha)?;
    let z = cayley_point(w)?;
    let d = Complex64::new(1.0, 0.0) - w.z();
    Ok(k * d.powf(-(alpha + 2.0)) * f(z)?)
}

/// `Π_α f = T_α(B_α f)` at a disk point.
pub fn pi_transform(fhat: &SpectralFunction, alpha: f64, w: DiskPoint) -> Result<Complex64> {
    cayley_map(|z| bergman_transform(fhat, alpha, z), alpha, w)
}

#[derive(Debug, Clone, Copy)]
pub struct UnitarityRule {
    pub order: usize,
    pub levels: usize,
    pub grading: f64,
}

impl Default for UnitarityRule {
    fn default() -> Self {
        UnitarityRule {
            order: 24,
            levels: 14,
            grading: 0.3,
        }
    }
}

/// `(α+1)/π ∫_𝔻 |Π_α f|² (1-|w|²)^α dA` with Bergman constant `c`.
///
/// Polar coordinates about the pole, `w = 1 - ρe^{iφ}`, `0 < ρ < 2cos φ`,
/// give `1-|w|² = ρ(2cos φ - ρ)` and `|1-w| = ρ`. Writing
/// `s - iz = (ρ(s-1) + 2e^{-iφ})/ρ` keeps every factor finite as `ρ → 0`.
fn disk_norm_sq_with(fhat: &SpectralFunction, alpha: f64, c: f64, rule: UnitarityRule) -> f64 {
    let k2 = 4.0 * PI / (alpha + 1.0);
    let kappa_shift = 0.5 * (alpha + 3.0);
    let inner = |phi: f64| -> f64 {
        let reach = 2.0 * phi.cos();
        if reach <= 0.0 {
            return 0.0;
        }
        let e = Complex64::from_polar(2.0, -phi);
        graded_both(0.0, 1.0, rule.levels, rule.grading, rule.order, |v| {
            let rho = reach * v;
            if rho <= 0.0 {
                return 0.0;
            }
            // Σ a_j Γ(κ_j) ρ^{κ_j} (ρ(s_j-1) + 2e^{-iφ})^{-κ_j}
            let b: Complex64 = fhat
                .terms
                .iter()
                .map(|j| {
                    let kappa = j.m as f64 + kappa_shift;
                    let x = e + rho * (j.s - 1.0);
                    j.amplitude() * gamma(kappa) * (kappa * rho.ln() - kappa * x.ln()).exp()
                })
                .sum();
            // |Π f|² ρ^{-2α-4} times the weight ρ^α (2cosφ - ρ)^α and the Jacobian ρ.
            let weight = (2.0 * phi.cos() - rho).max(0.0).powf(alpha) * rho.powf(-alpha - 3.0);
            k2 * c * c * b.norm_sqr() * weight * reach
        })
    };
    (alpha + 1.0) / PI * graded_both(-FRAC_PI_2, FRAC_PI_2, rule.levels, rule.grading, rule.order, inner)
}

pub fn disk_norm_sq(fhat: &SpectralFunction, alpha: f64, rule: UnitarityRule) -> Result<f64> {
    let c = bergman_constant(alpha)?;
    Ok(disk_norm_sq_with(fhat, alpha, c, rule))
}

/// Solves for the constant that makes `Π_α` isometric on `e^{-t}`.
pub fn calibrate_bergman_constant(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let fhat = SpectralFunction::term(0, 1.0)?;
    let raw = disk_norm_sq_with(&fhat, alpha, 1.0, UnitarityRule::default());
    Ok((fhat.h2_norm_sq() / raw).sqrt())
}

pub const UNITARITY_TOL: f64 = 1e-4;

/// Compares `‖Π_α f‖_{A²_α}` against `‖f‖_{H²(ℂ⁺)}`.
pub fn check_unitarity(fhat: &SpectralFunction, alpha: f64, tol: f64) -> Result<CheckReport> {
    let c = bergman_constant(alpha)?;
    let rule = UnitarityRule::default();
    let h2 = fhat.h2_norm_sq();
    if !(h2 > 0.0) {
        return Err(Error::InvalidInput("spectral function has zero norm".into()));
    }
    let disk = disk_norm_sq_with(fhat, alpha, c, rule);
    let coarse = disk_norm_sq_with(
        fhat,
        alpha,
        c,
        UnitarityRule {
            order: rule.order / 2,
            ..rule
        },
    );
    if !disk.is_finite() {
        return Err(Error::NonConvergent("disk quadrature of Π_α f".into()));
    }
    let ratio = (disk / h2).sqrt();
    Ok(CheckReport::new("unitarity")
        .param("alpha", alpha)
        .param("terms", fhat.terms.len())
        .param("h2_norm", h2.sqrt())
        .param("disk_norm", disk.sqrt())
        .param("ratio", ratio)
        .param("quadrature_error", ((disk - coarse) / h2).abs())
        .param("c_alpha", c)
        .param("cayley_constant", cayley_constant(alpha)?)
        .note("B_α integrates over the frequency variable t")
        .values((ratio - 1.0).abs(), 0.0, tol))
}
