//! Hardy-space counterparts: concentration on super-level sets, the `Φ` and
//! `Φ_α` monotonicity functions, and stability floors for `∫G(u)dμ` with
//! `u = |f|^p (1-|z|²)`.
//!
//! Throughout, `∫_{u>t} u dμ = tρ(t) + ∫_t^T ρ dτ` is read off the level-set
//! engine as `mass_above(t)`.

use serde::Serialize;
use std::f64::consts::PI;

use crate::disk::{check_alpha, norm_sq_unchecked, SpaceParams, TaylorFunction};
use crate::error::{Error, Result};
use crate::functionals::{bergman_norm, field_functional, field_peak, hardy_norm, husimi, normalize_p, ConvexG, HusimiField};
use crate::quadrature::{LevelSetOptions, LevelSets};
use crate::report::CheckReport;
use crate::rules::{gauss_legendre, stable_sum};
use crate::stability::{C_PRIME, NEAR_EXTREMAL};

const NORM_TOL: f64 = 1e-8;

fn check_hardy_normalized(f: &TaylorFunction, p: f64) -> Result<()> {
    let n = if p == 2.0 {
        norm_sq_unchecked(f, -1.0).sqrt()
    } else {
        hardy_norm(f, p)?
    };
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidInput(format!("expected ‖f‖ = 1 in H^{p}, got {n}")));
    }
    Ok(())
}

fn check_bergman_normalized(f: &TaylorFunction, params: SpaceParams) -> Result<()> {
    let n = if params.p == 2.0 {
        norm_sq_unchecked(f, params.alpha).sqrt()
    } else {
        bergman_norm(f, params)?
    };
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidInput(format!(
            "expected ‖f‖ = 1 in A^{}_{}, got {n}",
            params.p, params.alpha
        )));
    }
    Ok(())
}

fn hardy_field(f: &TaylorFunction, p: f64) -> Result<HusimiField> {
    check_hardy_normalized(f, p)?;
    Ok(husimi(f, SpaceParams::hardy(p)?))
}

/// `π log(1 + ρ/π)`, the largest `∫_Ω u dμ` over sets of measure `ρ`.
pub fn hardy_concentration_bound(rho: f64) -> f64 {
    PI * (rho / PI).ln_1p()
}

/// `(π/(α+1))(1 - (1+ρ/π)^{-α-1})`.
pub fn bergman_concentration_bound(rho: f64, alpha: f64) -> f64 {
    -PI / (alpha + 1.0) * (-(alpha + 1.0) * (rho / PI).ln_1p()).exp_m1()
}

/// `∫_{u>t} u dμ ≤ π log(1 + ρ(t)/π)`.
pub fn hardy_concentration_check(f: &TaylorFunction, p: f64, t: f64) -> Result<CheckReport> {
    let u = hardy_field(f, p)?;
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    let peak = sets.peak().value;
    let report = CheckReport::new("hardy_concentration")
        .param("p", p)
        .param("t", t)
        .param("T", peak);
    if t >= peak {
        return Ok(report.values(0.0, 0.0, 1e-12).note("t ≥ T: empty level set"));
    }
    let m = sets.measures(t)?;
    let rhs = hardy_concentration_bound(m.measure.value);
    let rhs_err = PI * m.measure.error / (PI + m.measure.value);
    let tol = m.mass_above.error + rhs_err + 1e-12 * (1.0 + rhs);
    Ok(report
        .param("rho", m.measure.value)
        .param("rho_err", m.measure.error)
        .values(m.mass_above.value, rhs, tol))
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiSample {
    pub t: f64,
    pub rho: f64,
    pub rho_err: f64,
    pub rho0: f64,
    pub phi: f64,
    pub phi_err: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HardyProfile {
    /// `α` of the bound in `Φ`; `-1` for the Hardy `Φ`.
    pub alpha: f64,
    pub peak: f64,
    pub samples: Vec<PhiSample>,
}

impl HardyProfile {
    /// Largest `Φ - err` over the samples; `≤ 0` when `Φ ≤ 0` holds.
    pub fn max_excess(&self) -> f64 {
        self.samples.iter().map(|s| s.phi - s.phi_err).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Largest drop of `Φ` between consecutive samples beyond error bars.
    pub fn monotonicity_violation(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| (w[0].phi - w[0].phi_err) - (w[1].phi + w[1].phi_err))
            .fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,rho,rho_err,rho0,phi,phi_err\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e},{:e},{:e}\n",
                s.t, s.rho, s.rho_err, s.rho0, s.phi, s.phi_err
            ));
        }
        out
    }

    pub fn report(&self, check: &str, tol: f64) -> CheckReport {
        let excess = self.max_excess().max(0.0);
        let mut r = CheckReport::new(check)
            .param("alpha", self.alpha)
            .param("T", self.peak)
            .param("samples", self.samples.len())
            .param("monotonicity_violation", self.monotonicity_violation())
            .values(excess, 0.0, tol);
        if excess > tol {
            r = r.note("anomaly: Φ positive beyond error bars");
        }
        r
    }
}

fn phi_samples<F>(sets: &LevelSets<'_, HusimiField>, t_grid: &[f64], alpha: f64, bound: F) -> Result<HardyProfile>
where
    F: Fn(f64) -> f64,
{
    if t_grid.windows(2).any(|w| w[1] <= w[0]) || t_grid.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::InvalidInput("level grid must be positive and increasing".into()));
    }
    let peak = sets.peak().value;
    let mut samples = Vec::new();
    for &t in t_grid.iter().filter(|t| **t < peak) {
        let m = sets.measures(t)?;
        let rho = m.measure.value;
        let b = bound(rho);
        // Both bounds have slope ≤ 1 in ρ.
        let phi_err = m.mass_above.error + m.measure.error + 1e-12 * (1.0 + b);
        samples.push(PhiSample {
            t,
            rho,
            rho_err: m.measure.error,
            rho0: PI * (t.powf(-1.0 / (alpha + 2.0)) - 1.0).max(0.0),
            phi: m.mass_above.value - b,
            phi_err,
        });
    }
    Ok(HardyProfile { alpha, peak, samples })
}

/// `Φ(t) = tρ(t) + ∫_t^T ρ dτ - π log(1 + ρ(t)/π)` on the grid below `T`.
pub fn phi_profile(f: &TaylorFunction, p: f64, t_grid: &[f64]) -> Result<HardyProfile> {
    let u = hardy_field(f, p)?;
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    phi_samples(&sets, t_grid, -1.0, hardy_concentration_bound)
}

/// `Φ_α(t) = tρ(t) + ∫_t^T ρ dτ - (π/(α+1))(1 - (1+ρ/π)^{-α-1})` for the
/// Bergman field `|f|^p (1-|z|²)^{α+2}`; passes when `Φ_α ≤ 0` on the grid.
pub fn phi_alpha_check(f: &TaylorFunction, p: f64, alpha: f64, t_grid: &[f64], tol: f64) -> Result<CheckReport> {
    check_alpha(alpha)?;
    let params = SpaceParams::bergman(p, alpha)?;
    check_bergman_normalized(f, params)?;
    let u = husimi(f, params);
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    let profile = phi_samples(&sets, t_grid, alpha, |rho| bergman_concentration_bound(rho, alpha))?;
    Ok(profile.report("phi_alpha", tol).param("p", p))
}

/// Log-spaced levels in `[t_min, T)`.
pub fn phi_grid(peak: f64, t_min: f64, n: usize) -> Vec<f64> {
    let hi = peak * (1.0 - 1e-6);
    if !(t_min < hi) || n == 0 {
        return Vec::new();
    }
    let (a, b) = (t_min.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n.max(2) - 1) as f64).exp()).collect()
}

/// Constants of the Theorem 3 floors.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Theorem3Params {
    pub t0: f64,
    pub c: f64,
    /// Branch threshold `T₀`.
    pub big_t0: f64,
    /// Overrides `γ` of the small-`T` chain; by default `1 - γ(1-T) = (1+T₀)/2`.
    pub gamma: Option<f64>,
}

impl Default for Theorem3Params {
    fn default() -> Self {
        Theorem3Params {
            t0: 0.1,
            c: 4.0,
            big_t0: 0.9,
            gamma: None,
        }
    }
}

impl Theorem3Params {
    fn validate(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.t0 < 1.0) {
            return Err(Error::param("t0", self.t0, "must lie in (0, 1)"));
        }
        if !(self.c > self.t0.powi(3)) {
            return Err(Error::param("C", self.c, "must exceed t0³"));
        }
        if !(self.big_t0 > 0.0 && self.big_t0 < 1.0) {
            return Err(Error::param("T0", self.big_t0, "must lie in (0, 1)"));
        }
        if let Some(g) = self.gamma {
            if !(g > 0.0 && g < 1.0) {
                return Err(Error::param("gamma", g, "must lie in (0, 1)"));
            }
        }
        Ok(())
    }
}

/// `∫_a^b h(τ) G'(τ) dτ`, split at the kinks of `G`.
fn integrate_against_derivative<H: Fn(f64) -> f64>(g: &ConvexG, a: f64, b: f64, h: H) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    let mut cuts = vec![a];
    if let Some((_, knots)) = g.linear_parts() {
        cuts.extend(knots.iter().map(|k| k.t).filter(|t| *t > a && *t < b));
    }
    cuts.push(b);
    let rule = gauss_legendre(24);
    stable_sum(cuts.windows(2).map(|w| {
        rule.integrate(w[0], w[1], |t| h(t) * g.derivative(t))
    }))
}

/// Large-`T` floor `π(1-T)∫_{t₁}^T (G'(τ)/τ)(1 - C(T-τ)/(t₀³T)) dτ`, `t₁ = T(1 - t₀³/C)`.
pub fn theorem3_large_floor(g: &ConvexG, peak: f64, params: &Theorem3Params) -> f64 {
    let k = params.c / (params.t0.powi(3) * peak);
    let t1 = peak * (1.0 - params.t0.powi(3) / params.c);
    PI * (1.0 - peak) * integrate_against_derivative(g, t1, peak, |tau| (1.0 - k * (peak - tau)) / tau)
}

/// Small-`T` floor. With the default `γ` this is
/// `π((1-T₀)/(1+T₀))(G((1+T₀)/2) - G(T₀))(1-T)`; an explicit `γ` uses the
/// chain `πγ(1-T)/(1-γ(1-T)) · (G(1-γ(1-T)) - G(T))`.
pub fn theorem3_small_floor(g: &ConvexG, peak: f64, params: &Theorem3Params) -> f64 {
    match params.gamma {
        None => {
            let t0 = params.big_t0;
            PI * (1.0 - t0) / (1.0 + t0) * (g.value(0.5 * (1.0 + t0)) - g.value(t0)) * (1.0 - peak)
        }
        Some(gamma) => {
            let s = gamma * (1.0 - peak);
            PI * s / (1.0 - s) * (g.value(1.0 - s) - g.value(peak)).max(0.0)
        }
    }
}

/// Smallest `C` with `ρ(t) ≤ π(1 + C(1-T)/(t₀³T))(T/t - 1)` at the sampled
/// levels of `(t₁, T)`.
fn refined_minimal_c(sets: &LevelSets<'_, HusimiField>, peak: f64, params: &Theorem3Params) -> Result<f64> {
    let t1 = peak * (1.0 - params.t0.powi(3) / params.c);
    let scale = params.t0.powi(3) * peak / (1.0 - peak);
    let mut worst: f64 = 0.0;
    for i in 0..16 {
        let t = t1 + (peak - t1) * (i as f64 + 0.5) / 16.0;
        let m = sets.measures(t)?;
        let base = PI * (peak / t - 1.0);
        let needed = ((m.measure.value - m.measure.error) / base - 1.0) * scale;
        worst = worst.max(needed);
    }
    Ok(worst)
}

fn hardy_rhs(g: &ConvexG) -> Result<f64> {
    Ok(field_functional(&husimi(&TaylorFunction::one(), SpaceParams::hardy(2.0)?), g)?.value)
}

fn check_hardy_g(g: &ConvexG) -> Result<()> {
    g.validate()?;
    if g.derivative_at_zero() > 0.0 {
        return Err(Error::InvalidInput(format!(
            "∫G(1-|z|²)dμ diverges for G = {} (needs G(t) = O(t^(1+ε)) at 0)",
            g.describe()
        )));
    }
    Ok(())
}

/// `∫G(u)dμ ≤ ∫G(1-|z|²)dμ - floor` for `f` normalized in `H^p`, with the
/// floor of the branch selected by `T` against `T₀` (ties go to large `T`).
pub fn verify_theorem3(f: &TaylorFunction, g: &ConvexG, p: f64, params: &Theorem3Params) -> Result<CheckReport> {
    check_hardy_g(g)?;
    params.validate()?;
    let u = hardy_field(f, p)?;
    let lhs = field_functional(&u, g)?;
    let rhs = hardy_rhs(g)?;
    let peak = field_peak(&u)?.value;
    let tol = lhs.error + 1e-9 * (1.0 + rhs.abs());
    let base = CheckReport::new("theorem3")
        .param("p", p)
        .param("G", g.describe())
        .param("t0", params.t0)
        .param("C", params.c)
        .param("T0", params.big_t0)
        .param("T", peak);
    if peak >= 1.0 - NEAR_EXTREMAL {
        return Ok(base
            .param("floor", 0.0)
            .values(lhs.value, rhs, tol)
            .note("T = 1: extremal case, both floors vanish"));
    }
    let large = peak >= params.big_t0;
    let floor = if large {
        theorem3_large_floor(g, peak, params)
    } else {
        theorem3_small_floor(g, peak, params)
    };
    let gamma = params.gamma.unwrap_or(0.5 * (1.0 - params.big_t0) / (1.0 - peak));
    let mut report = base
        .param("branch", if large { "large_T" } else { "small_T" })
        .param("gamma", gamma)
        .param("floor", floor)
        .param("kulikov_rhs", rhs)
        .values(lhs.value, rhs - floor, tol);
    if large {
        let sets = LevelSets::new(&u, LevelSetOptions::default());
        let minimal = refined_minimal_c(&sets, peak, params)?;
        report = report.param("refined_minimal_C", minimal);
        if minimal > params.c {
            report = report.note("refined distribution bound fails for the configured C; floor not certified");
        }
    }
    if floor < tol {
        report = report.note("vacuous: floor below tolerance");
    }
    Ok(report)
}

/// Which deficit coefficient the Hardy remark uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemarkForm {
    /// `(1/C)∫_0^T G''(t) K_{-1}(t)/(1 + log(1/t)) dt`, with
    /// `K_{-1}(t) = π(t - 1 + log(1/t))`.
    #[default]
    Derived,
    /// `(C'/(Cπ))∫_0^T G''(t)/((1 + log(1/t))(t - 1 + log(1/t))) dt`.
    Displayed,
}

/// `t - 1 + log(1/t)` without cancellation near `t = 1`.
fn hardy_gap(t: f64) -> f64 {
    let d = 1.0 - t;
    if d.abs() < 1e-2 {
        // d²/2 + d³/3 + d⁴/4 + ...
        let mut acc = 0.0;
        let mut pw = d * d;
        for n in 2..20 {
            acc += pw / n as f64;
            pw *= d;
        }
        acc
    } else {
        -t.ln() - d
    }
}

pub fn hardy_remark_coefficient(g: &ConvexG, c: f64, upper: f64, form: RemarkForm) -> f64 {
    match form {
        RemarkForm::Derived => {
            g.integrate_second(upper, |t| PI * hardy_gap(t) / (1.0 - t.ln())) / c
        }
        RemarkForm::Displayed => {
            C_PRIME / (c * PI) * g.integrate_second(upper, |t| 1.0 / ((1.0 - t.ln()) * hardy_gap(t)))
        }
    }
}

/// `∫G(u)dμ ≤ ∫G(v_{-1})dμ - c(1-T)` for convex `G` and `f` normalized in `H²`.
pub fn hardy_remark_bound(f: &TaylorFunction, g: &ConvexG, c: f64, form: RemarkForm) -> Result<CheckReport> {
    check_hardy_g(g)?;
    if !(c > 0.0) {
        return Err(Error::param("C", c, "must be > 0"));
    }
    let u = hardy_field(f, 2.0)?;
    let lhs = field_functional(&u, g)?;
    let rhs = hardy_rhs(g)?;
    let peak = field_peak(&u)?.value;
    let tol = lhs.error + 1e-9 * (1.0 + rhs.abs());
    let base = CheckReport::new("hardy_remark")
        .param("G", g.describe())
        .param("C", c)
        .param("C_prime", C_PRIME)
        .param("form", serde_json::to_value(form).unwrap_or_default())
        .param("T", peak);
    if peak >= 1.0 - NEAR_EXTREMAL {
        return Ok(base
            .param("coefficient", 0.0)
            .values(lhs.value, rhs, tol)
            .note("T = 1: extremal case, deficit vanishes"));
    }
    let coefficient = hardy_remark_coefficient(g, c, peak, form);
    let lowered = hardy_remark_coefficient(g, c, peak - 1e-3 * (1.0 - peak), form);
    let sensitivity = if coefficient > 0.0 {
        (coefficient - lowered).abs() / coefficient
    } else {
        0.0
    };
    let mut report = base
        .param("coefficient", coefficient)
        .param("cutoff_sensitivity", sensitivity)
        .param("kulikov_rhs", rhs)
        .values(lhs.value, rhs - coefficient * (1.0 - peak), tol);
    if coefficient * (1.0 - peak) < tol {
        report = report.note("vacuous: deficit term below tolerance");
    }
    Ok(report)
}

/// Per-level form of the remark: `∫(u-t)_+ ≤ (1 - (1-T)/M_{-1}(ρ(t))) K_{-1}(t)`
/// with `M_{-1}(s) = C(1 + log(1 + s/π))`. Returns the smallest margin over
/// the grid.
pub fn hardy_level_deficit_margin(f: &TaylorFunction, c: f64, t_grid: &[f64]) -> Result<f64> {
    let u = hardy_field(f, 2.0)?;
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    let peak = sets.peak().value;
    let mut worst = f64::INFINITY;
    for &t in t_grid.iter().filter(|t| **t < peak) {
        let m = sets.measures(t)?;
        let k = PI * hardy_gap(t);
        let big_m = c * (1.0 + (m.measure.value / PI).ln_1p());
        let margin = (1.0 - (1.0 - peak) / big_m) * k - m.excess.value + m.excess.error;
        worst = worst.min(margin);
    }
    Ok(worst)
}

/// Normalizes in `H^p` (quadrature for `p ≠ 2`).
pub fn normalize_hardy(f: &TaylorFunction, p: f64) -> Result<TaylorFunction> {
    normalize_p(f, SpaceParams::hardy(p)?)
}
