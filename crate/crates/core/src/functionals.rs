//! Norms, Husimi fields, closed-form extremal profiles and convex functionals.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::disk::{check_alpha, check_exponent, norm_sq_unchecked, DiskPoint, SpaceParams, TaylorFunction};
use crate::error::{Error, Result};
use crate::extremum::{maximize_field, MaximizeOptions, Peak};
use crate::quadrature::{
    integrate_ball, integrate_hyperbolic, DiskRule, Envelope, LevelSetOptions, LevelSets, QuadratureReport,
    Recentered, ScalarField,
};
use crate::report::CheckReport;
use crate::rules::{composite, graded_toward_left, stable_sum};

/// `|f|^p (1-|z|²)^{α+2}`, with `α = -1` giving the Hardy field `|f|^p (1-|z|²)`.
#[derive(Debug, Clone)]
pub struct HusimiField {
    f: TaylorFunction,
    params: SpaceParams,
    envelope: Envelope,
}

impl HusimiField {
    pub fn function(&self) -> &TaylorFunction {
        &self.f
    }

    pub fn params(&self) -> SpaceParams {
        self.params
    }
}

impl ScalarField for HusimiField {
    fn value_at(&self, z: Complex64, w: f64) -> f64 {
        let m2 = self.f.eval_raw(z).norm_sqr();
        let modp = if self.params.p == 2.0 {
            m2
        } else {
            m2.powf(0.5 * self.params.p)
        };
        modp * w.powf(self.params.weight_exponent())
    }

    fn envelope(&self) -> Envelope {
        self.envelope
    }
}

pub fn husimi(f: &TaylorFunction, params: SpaceParams) -> HusimiField {
    let bound = f.coefficient_l1().powf(params.p);
    HusimiField {
        f: f.clone(),
        params,
        envelope: Envelope::new(bound, params.weight_exponent()),
    }
}

/// `v_α = (1-|z|²)^{α+2}`, the Husimi field of the constant function 1.
pub fn extremal_field(alpha: f64) -> HusimiField {
    husimi(&TaylorFunction::one(), SpaceParams { alpha, p: 2.0 })
}

fn auto_tol(env: &Envelope) -> f64 {
    1e-10 * (1.0 + env.bound)
}

/// Looser target for integrands `|f|^p` or `u^r` that are only finitely
/// smooth at zeros of `f`.
fn rough_tol(env: &Envelope, smooth: bool) -> f64 {
    if smooth {
        auto_tol(env)
    } else {
        100.0 * auto_tol(env)
    }
}

/// `‖f‖_{A^p_α}` by quadrature.
pub fn bergman_norm(f: &TaylorFunction, params: SpaceParams) -> Result<f64> {
    check_alpha(params.alpha)?;
    check_exponent(params.p)?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let u = husimi(f, params);
    let r = integrate_hyperbolic(&u, rough_tol(&u.envelope, (0.5 * params.p).fract() == 0.0))?;
    Ok(((params.alpha + 1.0) / PI * r.value).max(0.0).powf(1.0 / params.p))
}

/// `‖f‖_{A²_α}` from coefficients.
pub fn bergman_norm2_exact(f: &TaylorFunction, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(norm_sq_unchecked(f, alpha).max(0.0).sqrt())
}

/// `‖f‖_{H^p}` as the circle mean at `r = 1`.
pub fn hardy_norm(f: &TaylorFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let n = (16 * (f.effective_degree() + 1) * (p.ceil() as usize).max(1)).max(1024);
    let mean = stable_sum((0..n).map(|j| {
        let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
        f.eval_raw(z).norm().powf(p)
    })) / n as f64;
    Ok(mean.powf(1.0 / p))
}

/// `f / ‖f‖_{A²_α}` (or `H²` for `α = -1`).
pub fn normalize(f: &TaylorFunction, alpha: f64) -> Result<TaylorFunction> {
    if alpha != -1.0 {
        check_alpha(alpha)?;
    }
    let n = norm_sq_unchecked(f, alpha).sqrt();
    if !(n > 0.0) {
        return Err(Error::InvalidInput("cannot normalize the zero function".into()));
    }
    Ok(f.scale_real(1.0 / n))
}

/// `f / ‖f‖_{A^p_α}`; the norm is the exact coefficient norm for `p = 2`
/// and a quadrature otherwise.
pub fn normalize_p(f: &TaylorFunction, params: SpaceParams) -> Result<TaylorFunction> {
    let n = if params.p == 2.0 {
        norm_sq_unchecked(f, params.alpha).sqrt()
    } else if params.is_hardy() {
        hardy_norm(f, params.p)?
    } else {
        bergman_norm(f, params)?
    };
    if !(n > 0.0) {
        return Err(Error::InvalidInput("cannot normalize the zero function".into()));
    }
    Ok(f.scale_real(1.0 / n))
}

pub fn field_peak<F: ScalarField + ?Sized>(u: &F) -> Result<Peak> {
    let peak = maximize_field(u, MaximizeOptions::default());
    if peak.on_rim {
        return Err(Error::RimMaximizer {
            radius: peak.argmax.norm(),
        });
    }
    Ok(peak)
}

/// `T = max u` and its location.
pub fn sup_u(f: &TaylorFunction, params: SpaceParams) -> Result<(f64, DiskPoint)> {
    if f.is_zero() {
        return Err(Error::InvalidInput("sup of the zero field is not defined".into()));
    }
    let peak = field_peak(&husimi(f, params))?;
    Ok((peak.value, DiskPoint::new(peak.argmax)?))
}

/// Closed-form quantities of the extremal field `v_α`, for a fixed weight
/// and the constant `C` of `M_α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedForms {
    pub alpha: f64,
    pub c: f64,
}

impl ClosedForms {
    pub fn new(alpha: f64, c: f64) -> Result<Self> {
        if !(alpha >= -1.0) || !alpha.is_finite() {
            return Err(Error::param("alpha", alpha, "must be finite and >= -1"));
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::param("C", c, "must be finite and > 0"));
        }
        Ok(ClosedForms { alpha, c })
    }

    pub fn rho0(&self, t: f64) -> Result<f64> {
        rho0(t, self.alpha)
    }

    pub fn k_alpha(&self, t: f64) -> Result<f64> {
        k_alpha(t, self.alpha)
    }

    pub fn m_alpha(&self, s: f64) -> Result<f64> {
        m_alpha(s, self.alpha, self.c)
    }

    /// `M_α(μ(B_t))`.
    pub fn m_alpha_ball(&self, t: f64) -> Result<f64> {
        self.m_alpha(self.rho0(t)?)
    }

    pub fn a_deficit(&self, s: f64, t: f64) -> Result<f64> {
        a_deficit(s, t, self.alpha)
    }

    /// `μ(B_t)`, the measure of the disk where `v_α > t`.
    pub fn mu_ball(&self, t: f64) -> Result<f64> {
        self.rho0(t)
    }

    /// Euclidean radius of `B_t`.
    pub fn r_ball(&self, t: f64) -> Result<f64> {
        check_level(t)?;
        Ok((-(t.ln() / (self.alpha + 2.0)).exp_m1()).sqrt())
    }
}

fn check_level(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::param("t", t, "must lie in (0, 1]"));
    }
    Ok(())
}

/// `expm1(b·L)/b`, continuous at `b = 0`.
fn expm1_over(b: f64, l: f64) -> f64 {
    if b == 0.0 {
        l
    } else {
        (b * l).exp_m1() / b
    }
}

/// `ρ₀(t) = π(t^{-1/(α+2)} - 1)`.
pub fn rho0(t: f64, alpha: f64) -> Result<f64> {
    check_level(t)?;
    if !(alpha >= -1.0) {
        return Err(Error::param("alpha", alpha, "must be >= -1"));
    }
    Ok(PI * (-t.ln() / (alpha + 2.0)).exp_m1())
}

/// `K_α(t) = ∫(v_α - t)_+ dμ = πt(1 - t^{-1/(α+2)}) + (π/(α+1))(1 - t^{(α+1)/(α+2)})`;
/// `α = -1` gives the limit `π(t - 1 + log(1/t))`.
pub fn k_alpha(t: f64, alpha: f64) -> Result<f64> {
    check_level(t)?;
    if !(alpha >= -1.0) {
        return Err(Error::param("alpha", alpha, "must be >= -1"));
    }
    let b = (alpha + 1.0) / (alpha + 2.0);
    let l = t.ln();
    // K/π = expm1(L) - expm1(bL)/b = Σ_{n≥2} (1 - b^{n-1}) Lⁿ/n!
    let v = if l.abs() < 0.5 {
        let mut term = l;
        let mut bp = 1.0;
        let mut acc = 0.0;
        for n in 2..60 {
            term *= l / n as f64;
            bp *= b;
            let add = (1.0 - bp) * term;
            acc += add;
            if add.abs() < 1e-18 * acc.abs() {
                break;
            }
        }
        acc
    } else {
        l.exp_m1() - expm1_over(b, l)
    };
    Ok(PI * v.max(0.0))
}

/// `M_α(s) = C(1 + ((α+2)/(α+1))((1+s/π)^{α+1} - 1))`; `α = -1` gives `C(1 + log(1+s/π))`.
pub fn m_alpha(s: f64, alpha: f64, c: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::param("s", s, "must be >= 0"));
    }
    if !(c > 0.0) {
        return Err(Error::param("C", c, "must be > 0"));
    }
    if !(alpha >= -1.0) {
        return Err(Error::param("alpha", alpha, "must be >= -1"));
    }
    let e = alpha + 1.0;
    Ok(c * (1.0 + (alpha + 2.0) * expm1_over(e, (s / PI).ln_1p())))
}

/// `A(s, t) = t(π+s) + (π/(α+1))((1+s/π)^{-α-1} - (α+2)t^{(α+1)/(α+2)})`.
pub fn a_deficit(s: f64, t: f64, alpha: f64) -> Result<f64> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::param("s", s, "must be finite and >= 0"));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::param("t", t, "must lie in (0, 1)"));
    }
    check_alpha(alpha)?;
    let e = alpha + 1.0;
    let b = e / (alpha + 2.0);
    let lx = (s / PI).ln_1p();
    Ok(t * (PI + s) - PI - PI * expm1_over(-e, lx) - PI * expm1_over(b, t.ln()))
}

/// Lower bound for `A(s, t)` and the threshold `s` beyond which it holds:
/// `A(s) ≥ (πt^{(α+1)/(α+2)}/(α+1))((α+1)2^{1/(α+1)} - α - 3/2)` for
/// `s ≥ π(2^{1/(α+1)}t^{-1/(α+2)} - 1)`.
pub fn a_deficit_lower_bound(t: f64, alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::param("t", t, "must lie in (0, 1)"));
    }
    let e = alpha + 1.0;
    let two = 2f64.powf(1.0 / e);
    let threshold = PI * (two * t.powf(-1.0 / (alpha + 2.0)) - 1.0);
    let bound = PI * t.powf(e / (alpha + 2.0)) / e * (e * two - alpha - 1.5);
    Ok((threshold.max(0.0), bound))
}

/// Convex, non-decreasing `G` with `G(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexG {
    /// `t^r`, `r > 1`.
    Power { r: f64 },
    /// `slope0·t + Σ mass·(t - knot)_+`.
    PiecewiseLinear { slope0: f64, knots: Vec<Knot> },
    /// Values at increasing nodes starting at `(0, 0)`, interpolated linearly
    /// and extended with the last slope.
    Table { points: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Knot {
    pub t: f64,
    pub mass: f64,
}

impl ConvexG {
    pub fn power(r: f64) -> Result<Self> {
        if !(r > 1.0) || !r.is_finite() {
            return Err(Error::param("r", r, "power must be finite and > 1"));
        }
        Ok(ConvexG::Power { r })
    }

    pub fn linear() -> Self {
        ConvexG::PiecewiseLinear {
            slope0: 1.0,
            knots: Vec::new(),
        }
    }

    pub fn piecewise_linear(slope0: f64, knots: Vec<Knot>) -> Result<Self> {
        let g = ConvexG::PiecewiseLinear { slope0, knots };
        g.validate()?;
        Ok(g)
    }

    pub fn single_knot(t0: f64, mass: f64) -> Result<Self> {
        Self::piecewise_linear(0.0, vec![Knot { t: t0, mass }])
    }

    pub fn table(points: Vec<[f64; 2]>) -> Result<Self> {
        let g = ConvexG::Table { points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ConvexG::Power { r } => {
                Self::power(*r)?;
            }
            ConvexG::PiecewiseLinear { slope0, knots } => {
                if !(*slope0 >= 0.0) || !slope0.is_finite() {
                    return Err(Error::param("slope0", *slope0, "G must be non-decreasing"));
                }
                let mut prev = 0.0;
                for k in knots {
                    if !(k.t > prev) || !k.t.is_finite() {
                        return Err(Error::param("knot", k.t, "knots must be positive and increasing"));
                    }
                    if !(k.mass >= 0.0) || !k.mass.is_finite() {
                        return Err(Error::param("mass", k.mass, "knot masses must be >= 0 (convexity)"));
                    }
                    prev = k.t;
                }
            }
            ConvexG::Table { points } => {
                if points.len() < 2 || points[0] != [0.0, 0.0] {
                    return Err(Error::InvalidInput("table must start at (0, 0) and have two or more nodes".into()));
                }
                let mut prev_slope = 0.0;
                for w in points.windows(2) {
                    let dt = w[1][0] - w[0][0];
                    if !(dt > 0.0) || !w[1][1].is_finite() {
                        return Err(Error::InvalidInput("table nodes must be finite and increasing".into()));
                    }
                    let slope = (w[1][1] - w[0][1]) / dt;
                    if slope < prev_slope - 1e-12 * (1.0 + slope.abs()) {
                        return Err(Error::InvalidInput("table is not convex and non-decreasing".into()));
                    }
                    prev_slope = slope;
                }
            }
        }
        Ok(())
    }

    /// Slope at 0 and knot masses of the piecewise-linear kinds.
    pub(crate) fn linear_parts(&self) -> Option<(f64, Vec<Knot>)> {
        match self {
            ConvexG::Power { .. } => None,
            ConvexG::PiecewiseLinear { slope0, knots } => Some((*slope0, knots.clone())),
            ConvexG::Table { points } => {
                let slopes: Vec<f64> = points
                    .windows(2)
                    .map(|w| (w[1][1] - w[0][1]) / (w[1][0] - w[0][0]))
                    .collect();
                let knots = (1..slopes.len())
                    .map(|i| Knot {
                        t: points[i][0],
                        mass: (slopes[i] - slopes[i - 1]).max(0.0),
                    })
                    .filter(|k| k.mass > 0.0)
                    .collect();
                Some((slopes[0], knots))
            }
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        match self {
            ConvexG::Power { r } => t.max(0.0).powf(*r),
            _ => {
                let (s0, knots) = self.linear_parts().unwrap();
                s0 * t + knots.iter().map(|k| k.mass * (t - k.t).max(0.0)).sum::<f64>()
            }
        }
    }

    /// Right derivative.
    pub fn derivative(&self, t: f64) -> f64 {
        match self {
            ConvexG::Power { r } => r * t.max(0.0).powf(r - 1.0),
            _ => {
                let (s0, knots) = self.linear_parts().unwrap();
                s0 + knots.iter().filter(|k| k.t <= t).map(|k| k.mass).sum::<f64>()
            }
        }
    }

    pub fn derivative_at_zero(&self) -> f64 {
        self.derivative(0.0)
    }

    /// Density of `G''` for the power kind.
    pub fn second_density(&self, t: f64) -> Option<f64> {
        match self {
            ConvexG::Power { r } => Some(r * (r - 1.0) * t.powf(r - 2.0)),
            _ => None,
        }
    }

    /// `∫_{(0, upper)} h(t) dG'(t)`.
    pub fn integrate_second<H: FnMut(f64) -> f64>(&self, upper: f64, mut h: H) -> f64 {
        if !(upper > 0.0) {
            return 0.0;
        }
        match self {
            ConvexG::Power { r } => {
                // Substituting G'(t) = v·G'(upper) removes the t^{r-2} singularity.
                let r = *r;
                let m = 1.0 / (r - 1.0);
                let mut h = |v: f64| h(upper * v.powf(m));
                // Critical levels of u put kinks anywhere in (0, 1), so the interior needs even panels too.
                let w = 1.0 / 16.0;
                let ends = graded_toward_left(0.0, w, 14, 0.2, 12, &mut h)
                    + graded_toward_left(0.0, w, 14, 0.2, 12, |s| h(1.0 - s));
                r * upper.powf(r - 1.0) * (ends + composite(w, 1.0 - w, 28, 12, &mut h))
            }
            _ => {
                let (_, knots) = self.linear_parts().unwrap();
                stable_sum(knots.iter().filter(|k| k.t < upper).map(|k| k.mass * h(k.t)))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ConvexG::Power { r } => format!("t^{r}"),
            ConvexG::PiecewiseLinear { slope0, knots } => {
                let mut s = format!("{slope0}t");
                for k in knots {
                    s.push_str(&format!(" + {}(t-{})_+", k.mass, k.t));
                }
                s
            }
            ConvexG::Table { points } => format!("table[{} nodes]", points.len()),
        }
    }
}

/// `G ∘ u`.
pub struct ComposedField<'a, F: ?Sized> {
    inner: &'a F,
    g: &'a ConvexG,
}

impl<'a, F: ScalarField + ?Sized> ComposedField<'a, F> {
    pub fn new(inner: &'a F, g: &'a ConvexG) -> Self {
        ComposedField { inner, g }
    }
}

impl<F: ScalarField + ?Sized> ScalarField for ComposedField<'_, F> {
    fn value_at(&self, z: Complex64, w: f64) -> f64 {
        self.g.value(self.inner.value_at(z, w))
    }

    fn envelope(&self) -> Envelope {
        let e = self.inner.envelope();
        match self.g {
            ConvexG::Power { r } => Envelope {
                bound: e.bound.powf(*r),
                decay: e.decay * r,
                zero_below: 0.0,
            },
            _ => {
                // Convexity with G(0) = 0 gives G(s) ≤ s·G(B)/B on [0, B].
                let (s0, knots) = self.g.linear_parts().unwrap();
                let first = if s0 == 0.0 {
                    knots.first().map(|k| k.t).unwrap_or(f64::INFINITY)
                } else {
                    0.0
                };
                let gb = self.g.value(e.bound);
                let scale = if e.bound > 0.0 { gb / e.bound } else { 0.0 };
                Envelope {
                    bound: gb,
                    decay: e.decay,
                    zero_below: if first.is_finite() { first * scale } else { gb },
                }
            }
        }
    }
}

/// `∫ G(u) dμ` by direct quadrature.
pub fn convex_functional(f: &TaylorFunction, g: &ConvexG, params: SpaceParams) -> Result<QuadratureReport> {
    g.validate()?;
    let u = husimi(f, params);
    field_functional(&u, g)
}

pub fn field_functional<F: ScalarField + ?Sized>(u: &F, g: &ConvexG) -> Result<QuadratureReport> {
    let composed = ComposedField::new(u, g);
    let env = composed.envelope();
    if env.decay <= 1.0 && !(env.zero_below > 0.0) {
        return Err(Error::NonConvergent(format!(
            "∫G(u)dμ diverges near the circle for G = {} (needs G(t) = O(t^(1+ε)) at 0)",
            g.describe()
        )));
    }
    let smooth = !matches!(g, ConvexG::Power { r } if r.fract() != 0.0);
    integrate_hyperbolic(&composed, rough_tol(&env, smooth))
}

/// `G'(0)∫u dμ + ∫_0^T (∫(u-t)_+ dμ) dG'(t)`.
pub fn layer_cake_functional(f: &TaylorFunction, g: &ConvexG, params: SpaceParams) -> Result<f64> {
    g.validate()?;
    let u = husimi(f, params);
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    layer_cake_from_sets(&sets, g)
}

pub fn layer_cake_from_sets<F: ScalarField + ?Sized>(sets: &LevelSets<'_, F>, g: &ConvexG) -> Result<f64> {
    let peak = sets.peak().value;
    let slope0 = g.derivative_at_zero();
    let linear = if slope0 > 0.0 {
        slope0 * sets.total_mass()?.value
    } else {
        0.0
    };
    let mut failure = None;
    let floor = sets.floor();
    let curved = g.integrate_second(peak, |t| match sets.excess(t.max(floor)) {
        Ok(r) => r.value,
        Err(e) => {
            failure.get_or_insert(e);
            f64::NAN
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(linear + curved)
}

/// `1 - (1+s/π)^{-α-1}`, the largest possible concentration on a set of
/// hyperbolic measure `s`.
pub fn concentration_bound(s: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(s > 0.0) {
        return Err(Error::param("s", s, "must be > 0"));
    }
    Ok(-(-(alpha + 1.0) * (s / PI).ln_1p()).exp_m1())
}

/// Share of `‖f‖²_{A²_α}` carried by the hyperbolic disk of measure `s` about `center`.
pub fn concentration_ratio(f: &TaylorFunction, alpha: f64, center: DiskPoint, s: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::param("s", s, "must be finite and > 0"));
    }
    let norm = norm_sq_unchecked(f, alpha);
    if !(norm > 0.0) {
        return Err(Error::InvalidInput("concentration of the zero function".into()));
    }
    let u = husimi(f, SpaceParams { alpha, p: 2.0 });
    let shifted = Recentered::new(&u, center.z());
    // μ({|ζ| < r}) = π r²/(1-r²) = s  ⇔  -ln(1-r²) = ln(1+s/π)
    let x = (s / PI).ln_1p();
    let inside = integrate_ball(&shifted, x, &DiskRule::default());
    Ok(((alpha + 1.0) / PI * inside.value / norm).clamp(0.0, 1.0))
}

/// `∫G(u)dμ ≤ ∫G(v)dμ` for unit-norm `f`, with `v` the field of the constant 1.
pub fn check_kulikov(f: &TaylorFunction, g: &ConvexG, params: SpaceParams) -> Result<CheckReport> {
    let norm = space_norm(f, params)?;
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::param("‖f‖", norm, "Kulikov check needs a unit-norm function"));
    }
    let lhs = convex_functional(f, g, params)?;
    let rhs = convex_functional(&TaylorFunction::one(), g, params)?;
    let tol = lhs.error + rhs.error + 1e-9 * (1.0 + rhs.value.abs());
    Ok(CheckReport::new("kulikov")
        .param("alpha", params.alpha)
        .param("p", params.p)
        .param("G", g.describe())
        .values(lhs.value, rhs.value, tol))
}

fn space_norm(f: &TaylorFunction, params: SpaceParams) -> Result<f64> {
    match (params.is_hardy(), params.p == 2.0) {
        (_, true) => Ok(norm_sq_unchecked(f, params.alpha).sqrt()),
        (true, false) => hardy_norm(f, params.p),
        (false, false) => bergman_norm(f, params),
    }
}

/// `R(f, B) ≤ 1 - (1+s/π)^{-α-1}` for the hyperbolic disk of measure `s`
/// centred at the maximizer of `u`.
pub fn check_concentration(f: &TaylorFunction, alpha: f64, s: f64) -> Result<CheckReport> {
    let (peak, center) = sup_u(f, SpaceParams { alpha, p: 2.0 })?;
    let ratio = concentration_ratio(f, alpha, center, s)?;
    let bound = concentration_bound(s, alpha)?;
    Ok(CheckReport::new("concentration")
        .param("alpha", alpha)
        .param("s", s)
        .param("T", peak)
        .param("center_re", center.z().re)
        .param("center_im", center.z().im)
        .values(ratio, bound, 1e-9))
}

/// Contractive chain `‖f‖_{A^q_β} ≤ ‖f‖_{A^p_α} ≤ ‖f‖_{H^h}` with
/// `(β+2)/q = (α+2)/p` and `h = p/(α+2)`.
pub fn check_embedding(f: &TaylorFunction, p: f64, q: f64, alpha: f64) -> Result<CheckReport> {
    check_alpha(alpha)?;
    check_exponent(p)?;
    check_exponent(q)?;
    if p >= q {
        return Err(Error::param("q", q, "embedding needs p < q"));
    }
    let beta = q * (alpha + 2.0) / p - 2.0;
    let h = p / (alpha + 2.0);
    let nq = bergman_norm(f, SpaceParams { alpha: beta, p: q })?;
    let np = bergman_norm(f, SpaceParams { alpha, p })?;
    let nh = hardy_norm(f, h)?;
    let tol = 1e-8 * (1.0 + np);
    let mut report = CheckReport::new("embedding")
        .param("p", p)
        .param("q", q)
        .param("alpha", alpha)
        .param("beta", beta)
        .param("hardy_exponent", h)
        .param("hardy_norm", nh)
        .param("hardy_margin", nh - np)
        .values(nq, np, tol);
    if np > nh + tol {
        report = report.fail(format!("‖f‖_A^{p}_{alpha} = {np} exceeds ‖f‖_H^{h} = {nh}"));
    }
    Ok(report)
}
