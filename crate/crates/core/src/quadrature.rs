//! Integration against the hyperbolic measure `dμ = dA/(1-|z|²)²` and
//! measures of super-level sets.
//!
//! Points are addressed by `(x, θ)` with `x = -ln(1-|z|²)`, in which
//! `dμ = ½ eˣ dx dθ`. A field bounded by `B(1-|z|²)^γ` becomes
//! `≤ ½ B e^{-(γ-1)x}` in these coordinates, so the tail beyond a cutoff has a
//! closed-form bound. The angle uses the trapezoid rule, spectrally accurate
//! for smooth periodic integrands; the radial variable uses composite
//! Gauss–Legendre panels.
//!
//! Level sets `{u > t}` are measured ray by ray: crossings of `u = t` along
//! each ray are bracketed on a cached sample grid and refined by bisection,
//! after which the measure of each radial interval is exact
//! (`½(e^b - e^a)` per unit angle). Rays are cast from the maximizer of `u`
//! (via a disk automorphism, which preserves `μ`), so that small level sets
//! near the peak are close to star-shaped about the ray origin.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::extremum::{maximize_field, MaximizeOptions, Peak};
use crate::report::CheckReport;
use crate::rules::{gauss_legendre, stable_sum, Sum};

/// Bound `field(z) ≤ bound·(1-|z|²)^decay`; the field vanishes wherever
/// `bound·(1-|z|²)^decay ≤ zero_below`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub bound: f64,
    pub decay: f64,
    pub zero_below: f64,
}

impl Envelope {
    pub fn new(bound: f64, decay: f64) -> Self {
        Envelope {
            bound,
            decay,
            zero_below: 0.0,
        }
    }

    /// Radial coordinate `x` beyond which the envelope is below `level`.
    pub fn x_below(&self, level: f64) -> f64 {
        if level <= 0.0 || self.bound <= level {
            return if self.bound <= level { 0.0 } else { f64::INFINITY };
        }
        (self.bound / level).ln() / self.decay
    }
}

/// Nonnegative real field on the disk.
///
/// `one_minus_r2` is `1-|z|²`, supplied by the caller so that points close to
/// the circle keep full relative accuracy in the weight.
pub trait ScalarField: Sync {
    fn value_at(&self, z: Complex64, one_minus_r2: f64) -> f64;

    fn envelope(&self) -> Envelope;

    fn value(&self, z: Complex64) -> f64 {
        self.value_at(z, 1.0 - z.norm_sqr())
    }
}

impl<T: ScalarField + ?Sized> ScalarField for &T {
    fn value_at(&self, z: Complex64, w: f64) -> f64 {
        (**self).value_at(z, w)
    }
    fn envelope(&self) -> Envelope {
        (**self).envelope()
    }
}

/// Field from a closure `(z, 1-|z|²) -> value`.
pub struct FnField<F> {
    f: F,
    envelope: Envelope,
}

impl<F: Fn(Complex64, f64) -> f64 + Sync> FnField<F> {
    pub fn new(f: F, envelope: Envelope) -> Self {
        FnField { f, envelope }
    }
}

impl<F: Fn(Complex64, f64) -> f64 + Sync> ScalarField for FnField<F> {
    fn value_at(&self, z: Complex64, w: f64) -> f64 {
        (self.f)(z, w)
    }
    fn envelope(&self) -> Envelope {
        self.envelope
    }
}

/// `u ∘ φ_c`: the field seen from `c`, which is moved to the origin.
pub struct Recentered<F> {
    inner: F,
    center: Complex64,
}

impl<F: ScalarField> Recentered<F> {
    pub fn new(inner: F, center: Complex64) -> Self {
        Recentered { inner, center }
    }
}

impl<F: ScalarField> ScalarField for Recentered<F> {
    fn value_at(&self, zeta: Complex64, w: f64) -> f64 {
        let c = self.center;
        let denom = Complex64::new(1.0, 0.0) - c.conj() * zeta;
        let z = (c - zeta) / denom;
        let wz = (1.0 - c.norm_sqr()) * w / denom.norm_sqr();
        self.inner.value_at(z, wz)
    }

    fn envelope(&self) -> Envelope {
        let e = self.inner.envelope();
        let r = self.center.norm();
        let factor = ((1.0 + r) / (1.0 - r)).powf(e.decay);
        Envelope {
            bound: e.bound * factor,
            decay: e.decay,
            zero_below: e.zero_below * factor,
        }
    }
}

/// Value of a quadrature with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureReport {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
    pub r_max: f64,
}

impl QuadratureReport {
    pub fn zero() -> Self {
        QuadratureReport {
            value: 0.0,
            error: 0.0,
            nodes: 0,
            r_max: 0.0,
        }
    }
}

/// Tensor rule in `(x, θ)`.
#[derive(Debug, Clone, Copy)]
pub struct DiskRule {
    /// Trapezoid nodes in θ (even).
    pub angular: usize,
    /// Gauss–Legendre order per radial panel.
    pub radial_order: usize,
    /// Maximum panel width in `x`.
    pub panel_width: f64,
    /// Minimum number of radial panels.
    pub min_panels: usize,
}

impl Default for DiskRule {
    fn default() -> Self {
        DiskRule {
            angular: 512,
            radial_order: 16,
            panel_width: 0.75,
            min_panels: 16,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrationOptions {
    pub tol: f64,
    /// Explicit truncation radius; required when the field decays too slowly.
    pub r_max: Option<f64>,
    pub rule: DiskRule,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            tol: 1e-10,
            r_max: None,
            rule: DiskRule::default(),
        }
    }
}

impl IntegrationOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegrationOptions {
            tol,
            ..Default::default()
        }
    }
}

#[inline]
pub(crate) fn polar_point(x: f64, dir: Complex64) -> (Complex64, f64) {
    let w = (-x).exp();
    let r = (-(-x).exp_m1()).sqrt();
    (dir * r, w)
}

/// Resolution doublings tried before giving up on the tolerance.
pub const MAX_REFINEMENTS: usize = 3;

/// `∫ g dμ` over the disk.
pub fn integrate_hyperbolic<F: ScalarField + ?Sized>(g: &F, tol: f64) -> Result<QuadratureReport> {
    integrate_hyperbolic_with(g, &IntegrationOptions::with_tol(tol))
}

pub fn integrate_hyperbolic_with<F: ScalarField + ?Sized>(
    g: &F,
    opts: &IntegrationOptions,
) -> Result<QuadratureReport> {
    if !(opts.tol > 0.0) {
        return Err(Error::param("tol", opts.tol, "must be > 0"));
    }
    let env = g.envelope();
    let (x_max, tail) = match opts.r_max {
        Some(r) => {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::param("r_max", r, "must lie in (0, 1)"));
            }
            let x = -(-r * r).ln_1p();
            let tail = if env.decay > 1.0 {
                PI * env.bound * (-(env.decay - 1.0) * x).exp() / (env.decay - 1.0)
            } else if env.zero_below > 0.0 && x >= env.x_below(env.zero_below) {
                0.0
            } else {
                f64::INFINITY
            };
            (x, tail)
        }
        None => {
            let support = if env.zero_below > 0.0 {
                env.x_below(env.zero_below)
            } else {
                f64::INFINITY
            };
            if env.bound == 0.0 {
                (0.0, 0.0)
            } else if support.is_finite() {
                (support, 0.0)
            } else if env.decay > 1.0 {
                let k = env.decay - 1.0;
                let target = opts.tol / 100.0;
                let x = ((PI * env.bound / (k * target)).ln() / k).max(1.0);
                (x, PI * env.bound * (-k * x).exp() / k)
            } else {
                return Err(Error::NonConvergent(format!(
                    "field decays like (1-|z|²)^{} against dμ; supply r_max",
                    env.decay
                )));
            }
        }
    };
    if x_max == 0.0 {
        return Ok(QuadratureReport::zero());
    }

    let mut rule = opts.rule;
    let mut report = integrate_ball(g, x_max, &rule);
    for _ in 0..MAX_REFINEMENTS {
        if !(report.error + tail > opts.tol) || !report.value.is_finite() {
            break;
        }
        rule.angular *= 2;
        rule.panel_width /= 2.0;
        rule.min_panels *= 2;
        report = integrate_ball(g, x_max, &rule);
    }
    report.error += tail;
    let full = report.value;
    let error = report.error;
    if !full.is_finite() {
        return Err(Error::NonConvergent("integral is not finite".into()));
    }
    if error > opts.tol && opts.r_max.is_none() {
        return Err(Error::ToleranceNotMet {
            value: full,
            error,
            tol: opts.tol,
        });
    }
    Ok(report)
}

/// `∫ g dμ` over the centered disk `{x < x_max}`; the error excludes any tail.
pub(crate) fn integrate_ball<F: ScalarField + ?Sized>(g: &F, x_max: f64, rule: &DiskRule) -> QuadratureReport {
    let panels = ((x_max / rule.panel_width).ceil() as usize).max(rule.min_panels);
    let h = x_max / panels as f64;
    let fine = gauss_legendre(rule.radial_order);
    let coarse = gauss_legendre((rule.radial_order / 2).max(2));
    let na = rule.angular.max(4) & !1;

    let per_ray: Vec<(f64, f64)> = (0..na)
        .into_par_iter()
        .map(|j| {
            let dir = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / na as f64);
            let integrand = |x: f64| {
                let (z, w) = polar_point(x, dir);
                0.5 * g.value_at(z, w) / w
            };
            let mut f_acc = Sum::default();
            let mut c_acc = Sum::default();
            for k in 0..panels {
                let lo = h * k as f64;
                f_acc.add(fine.integrate(lo, lo + h, integrand));
                c_acc.add(coarse.integrate(lo, lo + h, integrand));
            }
            (f_acc.value(), c_acc.value())
        })
        .collect();

    let dtheta = 2.0 * PI / na as f64;
    let full = dtheta * stable_sum(per_ray.iter().map(|p| p.0));
    let half = 2.0 * dtheta * stable_sum(per_ray.iter().step_by(2).map(|p| p.0));
    let coarse_radial = dtheta * stable_sum(per_ray.iter().map(|p| p.1));
    QuadratureReport {
        value: full,
        error: (full - half).abs() + (full - coarse_radial).abs() + 1e-15 * full.abs(),
        nodes: na * panels * (rule.radial_order + rule.radial_order / 2),
        r_max: (-(-x_max).exp_m1()).sqrt(),
    }
}

/// Sampling parameters of the level-set engine.
#[derive(Debug, Clone, Copy)]
pub struct LevelSetOptions {
    pub angular: usize,
    /// Sample spacing in `r` near the ray origin (up to `r = 0.95`).
    pub dr: f64,
    /// Sample spacing in `x` further out.
    pub dx: f64,
    /// Lowest supported level, relative to the peak.
    pub floor_rel: f64,
    pub bisection_steps: usize,
}

impl Default for LevelSetOptions {
    fn default() -> Self {
        LevelSetOptions {
            angular: 512,
            dr: 0.005,
            dx: 0.02,
            floor_rel: 1e-12,
            bisection_steps: 48,
        }
    }
}

impl LevelSetOptions {
    /// Lighter sampling for interactive use.
    pub fn coarse() -> Self {
        LevelSetOptions {
            angular: 128,
            dr: 0.01,
            dx: 0.05,
            floor_rel: 1e-9,
            bisection_steps: 40,
        }
    }
}

/// Super-level-set measurements of one field.
pub struct LevelSets<'a, F: ScalarField + ?Sized> {
    field: Recentered<&'a F>,
    peak: Peak,
    opts: LevelSetOptions,
    xs: Vec<f64>,
    dirs: Vec<Complex64>,
    samples: Vec<Vec<f64>>,
    floor: f64,
}

/// Per-level quantities measured together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelMeasures {
    pub t: f64,
    /// `μ({u > t})`
    pub measure: QuadratureReport,
    /// `∫ (u - t)_+ dμ`
    pub excess: QuadratureReport,
    /// `∫_{u > t} u dμ`
    pub mass_above: QuadratureReport,
}

impl<'a, F: ScalarField + ?Sized> LevelSets<'a, F> {
    pub fn new(field: &'a F, opts: LevelSetOptions) -> Self {
        let peak = maximize_field(field, MaximizeOptions::default());
        Self::with_peak(field, peak, opts)
    }

    pub fn with_peak(field: &'a F, peak: Peak, opts: LevelSetOptions) -> Self {
        let rec = Recentered::new(field, peak.argmax);
        let env = rec.envelope();
        let floor = (peak.value * opts.floor_rel).max(f64::MIN_POSITIVE);
        let x_end = env.x_below(floor).min(60.0);

        let mut xs = Vec::new();
        let r_switch: f64 = 0.95;
        let x_switch = -(-(r_switch * r_switch)).ln_1p();
        let mut r = 0.0;
        while r < r_switch {
            let x = -(-(r * r)).ln_1p();
            if x >= x_end {
                break;
            }
            xs.push(x);
            r += opts.dr;
        }
        let mut x = x_switch;
        while x < x_end {
            xs.push(x);
            x += opts.dx;
        }
        xs.push(x_end);

        let na = opts.angular.max(8) & !3;
        let dirs: Vec<Complex64> = (0..na)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / na as f64))
            .collect();
        let samples: Vec<Vec<f64>> = dirs
            .par_iter()
            .map(|&d| {
                xs.iter()
                    .map(|&x| {
                        let (z, w) = polar_point(x, d);
                        rec.value_at(z, w)
                    })
                    .collect()
            })
            .collect();
        LevelSets {
            field: rec,
            peak,
            opts,
            xs,
            dirs,
            samples,
            floor,
        }
    }

    pub fn peak(&self) -> Peak {
        self.peak
    }

    /// Lowest level the sampled region supports.
    pub fn floor(&self) -> f64 {
        self.floor
    }

    /// `∫ u dμ` of the underlying field.
    pub fn total_mass(&self) -> Result<QuadratureReport> {
        let env = self.field.inner.envelope();
        integrate_hyperbolic(self.field.inner, 1e-10 * (1.0 + env.bound))
    }

    fn ray_value(&self, j: usize, x: f64) -> f64 {
        let (z, w) = polar_point(x, self.dirs[j]);
        self.field.value_at(z, w)
    }

    /// Intervals in `x` along ray `j` where the field exceeds `t`.
    fn intervals(&self, j: usize, t: f64) -> Vec<(f64, f64)> {
        let s = &self.samples[j];
        let mut out = Vec::new();
        let mut start: Option<f64> = if s[0] > t { Some(0.0) } else { None };
        for i in 1..s.len() {
            let above_prev = s[i - 1] > t;
            let above = s[i] > t;
            if above_prev != above {
                let mut lo = self.xs[i - 1];
                let mut hi = self.xs[i];
                for _ in 0..self.opts.bisection_steps {
                    let mid = 0.5 * (lo + hi);
                    if (self.ray_value(j, mid) > t) == above_prev {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let cross = 0.5 * (lo + hi);
                if above {
                    start = Some(cross);
                } else if let Some(a) = start.take() {
                    out.push((a, cross));
                }
            }
        }
        if let Some(a) = start {
            // Still above t at the sampled end; cannot happen for t ≥ floor.
            out.push((a, *self.xs.last().unwrap()));
        }
        out
    }

    /// Measure, excess and mass above level `t`.
    pub fn measures(&self, t: f64) -> Result<LevelMeasures> {
        if !(t > 0.0) {
            return Err(Error::param("t", t, "level must be > 0"));
        }
        if t >= self.peak.value {
            return Ok(LevelMeasures {
                t,
                measure: QuadratureReport::zero(),
                excess: QuadratureReport::zero(),
                mass_above: QuadratureReport::zero(),
            });
        }
        if t < self.floor {
            return Err(Error::param(
                "t",
                t,
                "level below the sampled floor of the level-set engine",
            ));
        }
        let rule = gauss_legendre(12);
        let per_ray: Vec<[f64; 3]> = (0..self.dirs.len())
            .into_par_iter()
            .map(|j| {
                let mut m = Sum::default();
                let mut ex = Sum::default();
                let mut ma = Sum::default();
                for (a, b) in self.intervals(j, t) {
                    m.add(0.5 * (b.exp() - a.exp()));
                    let panels = ((b - a) / 0.5).ceil().max(1.0) as usize;
                    let h = (b - a) / panels as f64;
                    for k in 0..panels {
                        let lo = a + h * k as f64;
                        for (x, wt) in rule.mapped(lo, lo + h) {
                            let u = self.ray_value(j, x);
                            let jac = 0.5 * x.exp();
                            ex.add(wt * (u - t).max(0.0) * jac);
                            ma.add(wt * u * jac);
                        }
                    }
                }
                [m.value(), ex.value(), ma.value()]
            })
            .collect();
        let na = self.dirs.len();
        let dtheta = 2.0 * PI / na as f64;
        let r_max = (-(-*self.xs.last().unwrap()).exp_m1()).sqrt();
        let nodes = na * self.xs.len();
        let build = |k: usize| {
            let full = dtheta * stable_sum(per_ray.iter().map(|v| v[k]));
            let half = 2.0 * dtheta * stable_sum(per_ray.iter().step_by(2).map(|v| v[k]));
            let quarter = 4.0 * dtheta * stable_sum(per_ray.iter().step_by(4).map(|v| v[k]));
            // Piecewise smooth in θ, so one halving can cancel by accident.
            let spread = (full - half).abs().max((half - quarter).abs());
            QuadratureReport {
                value: full,
                error: spread + 1e-12 * full.abs(),
                nodes,
                r_max,
            }
        };
        Ok(LevelMeasures {
            t,
            measure: build(0),
            excess: build(1),
            mass_above: build(2),
        })
    }

    pub fn measure(&self, t: f64) -> Result<QuadratureReport> {
        Ok(self.measures(t)?.measure)
    }

    pub fn excess(&self, t: f64) -> Result<QuadratureReport> {
        Ok(self.measures(t)?.excess)
    }

    pub fn mass_above(&self, t: f64) -> Result<QuadratureReport> {
        Ok(self.measures(t)?.mass_above)
    }
}

/// `ρ(t) = μ({u > t})`.
pub fn superlevel_measure<F: ScalarField + ?Sized>(u: &F, t: f64) -> Result<QuadratureReport> {
    LevelSets::new(u, LevelSetOptions::default()).measure(t)
}

/// One row of a distribution profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileSample {
    pub t: f64,
    pub rho: f64,
    pub rho_err: f64,
    pub rho0: f64,
    /// `∫(u - t)_+ dμ`
    pub excess: f64,
    pub excess_err: f64,
    /// `∫_{u>t} u dμ`
    pub mass_above: f64,
    pub mass_above_err: f64,
}

/// Sampled distribution function `ρ(t)` of a field with its extremal
/// companion `ρ₀(t) = π(t^{-1/(α+2)} - 1)`.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionProfile {
    pub alpha: f64,
    /// `T = max u`
    pub peak: f64,
    pub argmax: Complex64,
    /// Crossing point `t*` of `ρ - ρ₀`, when the samples locate one.
    pub crossing: Option<f64>,
    /// `∫ u dμ`, when finite.
    pub total_mass: Option<QuadratureReport>,
    pub samples: Vec<ProfileSample>,
}

/// Closed form `μ({(1-|z|²)^{α+2} > t})`, zero for `t ≥ 1`; `α = -1` is the
/// Hardy case `π(1/t - 1)`.
pub(crate) fn rho0_any(t: f64, alpha: f64) -> f64 {
    if t >= 1.0 {
        0.0
    } else {
        PI * (t.powf(-1.0 / (alpha + 2.0)) - 1.0)
    }
}

/// Sample `ρ` on an increasing grid of levels. The weight `α` of the
/// companion `ρ₀` is read off the field's envelope (`decay = α + 2`).
pub fn distribution_profile<F: ScalarField + ?Sized>(u: &F, t_grid: &[f64]) -> Result<DistributionProfile> {
    let sets = LevelSets::new(u, LevelSetOptions::default());
    profile_from_sets(&sets, t_grid)
}

pub fn profile_from_sets<F: ScalarField + ?Sized>(
    sets: &LevelSets<'_, F>,
    t_grid: &[f64],
) -> Result<DistributionProfile> {
    if t_grid.iter().any(|t| !(*t > 0.0)) {
        return Err(Error::InvalidInput("levels must be positive".into()));
    }
    if t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("level grid must be strictly increasing".into()));
    }
    let env = sets.field.inner.envelope();
    let alpha = env.decay - 2.0;
    let total_mass = if env.decay > 1.0 {
        Some(sets.total_mass()?)
    } else {
        None
    };
    let mut samples = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let m = sets.measures(t)?;
        samples.push(ProfileSample {
            t,
            rho: m.measure.value,
            rho_err: m.measure.error,
            rho0: rho0_any(t, alpha),
            excess: m.excess.value,
            excess_err: m.excess.error,
            mass_above: m.mass_above.value,
            mass_above_err: m.mass_above.error,
        });
    }
    let mut profile = DistributionProfile {
        alpha,
        peak: sets.peak.value,
        argmax: sets.peak.argmax,
        crossing: None,
        total_mass,
        samples,
    };
    profile.crossing = sign_changes(&profile).first().map(|&(a, b)| 0.5 * (a + b));
    Ok(profile)
}

/// Brackets `(t_i, t_j)` where `ρ - ρ₀` changes sign beyond the error bars.
pub fn sign_changes(profile: &DistributionProfile) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut last: Option<(f64, bool)> = None;
    for s in &profile.samples {
        if s.t >= profile.peak {
            break;
        }
        let d = s.rho - s.rho0;
        if d.abs() <= s.rho_err {
            continue;
        }
        let positive = d > 0.0;
        if let Some((t_prev, sign_prev)) = last {
            if sign_prev != positive {
                out.push((t_prev, s.t));
            }
        }
        last = Some((s.t, positive));
    }
    out
}

impl DistributionProfile {
    /// CSV with header `t,rho,rho_err,rho0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,rho,rho_err,rho0\n");
        for s in &self.samples {
            out.push_str(&format!("{:e},{:e},{:e},{:e}\n", s.t, s.rho, s.rho_err, s.rho0));
        }
        out
    }
}

/// Discrete form of `ρ'(t) ≤ -(π + ρ(t))/((α+2)t)`: the function
/// `φ(t) = t^{1/(α+2)}(ρ(t) + π)` must be non-increasing on `(0, T)`.
pub fn check_differential_inequality(profile: &DistributionProfile, alpha: f64, tol: f64) -> CheckReport {
    let a = 1.0 / (alpha + 2.0);
    let mut worst = f64::NEG_INFINITY;
    let mut worst_t = f64::NAN;
    let mut running_min = f64::INFINITY;
    let mut used = 0usize;
    for s in &profile.samples {
        if s.t >= profile.peak || s.rho <= s.rho_err {
            continue;
        }
        let scale = s.t.powf(a);
        let phi = scale * (s.rho + PI);
        let err = scale * s.rho_err;
        if running_min.is_finite() {
            let violation = (phi - err) - running_min;
            if violation > worst {
                worst = violation;
                worst_t = s.t;
            }
        }
        running_min = running_min.min(phi + err);
        used += 1;
    }
    if !worst.is_finite() {
        worst = 0.0;
    }
    let mut report = CheckReport::new("differential_inequality")
        .param("alpha", alpha)
        .param("samples", used as f64)
        .values(worst.max(0.0), 0.0, tol);
    if worst > 0.0 {
        report = report.note(format!("largest increase of t^(1/(α+2))(ρ+π) at t = {worst_t:e}"));
    }
    report
}
