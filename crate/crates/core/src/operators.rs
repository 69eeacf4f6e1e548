//! Mixed states on `A²_α`, their covariant symbols, and trace-norm distances
//! to rank-one kernel projections.
//!
//! A mixed state is `A = Σ p_j ⟨·, f_j⟩ f_j` with an orthonormal family
//! `f_j`. Its symbol `u(z) = ⟨A κ_z, κ_z⟩ = Σ p_j |f_j(z)|² (1-|z|²)^{α+2}`
//! follows from the reproducing property, so no kernel is ever truncated.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::disk::{check_alpha, inner_product_unchecked, TaylorFunction};
use crate::error::{Error, Result};
use crate::extremum::Peak;
use crate::functionals::field_peak;
use crate::quadrature::{Envelope, ScalarField};
use crate::report::CheckReport;

pub const MAX_COMPONENTS: usize = 16;
pub const ORTHONORMALITY_THRESHOLD: f64 = 1e-8;
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Complex64>>,
    /// `max |G - I|` over all entries.
    pub residual: f64,
}

impl GramMatrix {
    pub fn is_orthonormal(&self) -> bool {
        self.residual <= ORTHONORMALITY_THRESHOLD
    }
}

pub fn gram_matrix(fs: &[TaylorFunction], alpha: f64) -> Result<GramMatrix> {
    check_alpha(alpha)?;
    let n = fs.len();
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            let g = inner_product_unchecked(&fs[i], &fs[j], alpha);
            entries[i][j] = g;
            entries[j][i] = g.conj();
            let target = if i == j { 1.0 } else { 0.0 };
            residual = residual.max((g - target).norm());
        }
    }
    Ok(GramMatrix { entries, residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    alpha: f64,
    weights: Vec<f64>,
    functions: Vec<TaylorFunction>,
    residual: f64,
    warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ComponentFile {
    weight: f64,
    coefficients: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    alpha: f64,
    components: Vec<ComponentFile>,
}

impl MixedState {
    /// Validates weights and orthonormality. Families whose Gram residual
    /// exceeds the threshold are orthonormalized, with a warning.
    pub fn new(alpha: f64, weights: Vec<f64>, functions: Vec<TaylorFunction>) -> Result<Self> {
        check_alpha(alpha)?;
        if weights.len() != functions.len() || weights.is_empty() {
            return Err(Error::InvalidInput(format!(
                "{} weights for {} components",
                weights.len(),
                functions.len()
            )));
        }
        if weights.len() > MAX_COMPONENTS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_COMPONENTS} components are supported, got {}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
            return Err(Error::param("weight", *w, "weights must be finite and ≥ 0"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::param("sum of weights", total, "must equal 1"));
        }
        let gram = gram_matrix(&functions, alpha)?;
        if gram.is_orthonormal() {
            return Ok(MixedState {
                alpha,
                weights,
                functions,
                residual: gram.residual,
                warnings: Vec::new(),
            });
        }
        let before = gram.residual;
        let mut state = Self::orthonormalized(alpha, weights, functions)?;
        state.warnings.push(format!(
            "components were not orthonormal (Gram residual {before:.3e}); orthonormalized"
        ));
        Ok(state)
    }

    /// Orthonormalizes the family by modified Gram–Schmidt with one
    /// reorthogonalization pass, keeping the weights in order.
    pub fn orthonormalized(alpha: f64, weights: Vec<f64>, functions: Vec<TaylorFunction>) -> Result<Self> {
        check_alpha(alpha)?;
        let mut basis: Vec<TaylorFunction> = Vec::with_capacity(functions.len());
        for f in &functions {
            let scale = inner_product_unchecked(f, f, alpha).re.sqrt();
            let mut v = f.clone();
            for _ in 0..2 {
                for e in &basis {
                    let c = inner_product_unchecked(&v, e, alpha);
                    v = v.combine(Complex64::new(1.0, 0.0), e, -c);
                }
            }
            let n = inner_product_unchecked(&v, &v, alpha).re.sqrt();
            if !(n > 1e-10 * scale) || scale == 0.0 {
                return Err(Error::InvalidInput(
                    "mixed-state components are linearly dependent".into(),
                ));
            }
            basis.push(v.scale_real(n.recip()));
        }
        let residual = gram_matrix(&basis, alpha)?.residual;
        let state = MixedState {
            alpha,
            weights,
            functions: basis,
            residual,
            warnings: Vec::new(),
        };
        state.check_weights()?;
        Ok(state)
    }

    fn check_weights(&self) -> Result<()> {
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL || self.weights.iter().any(|w| !(*w >= 0.0)) {
            return Err(Error::param("sum of weights", total, "must equal 1 with weights ≥ 0"));
        }
        if self.weights.len() > MAX_COMPONENTS {
            return Err(Error::InvalidInput(format!(
                "at most {MAX_COMPONENTS} components are supported"
            )));
        }
        Ok(())
    }

    /// Rank-one state `⟨·, f⟩ f`; `f` must have unit norm.
    pub fn pure(f: TaylorFunction, alpha: f64) -> Result<Self> {
        Self::new(alpha, vec![1.0], vec![f])
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn functions(&self) -> &[TaylorFunction] {
        &self.functions
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn rank(&self) -> usize {
        self.weights.iter().filter(|w| **w > 0.0).count()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: StateFile = serde_json::from_str(s)?;
        let mut weights = Vec::with_capacity(file.components.len());
        let mut functions = Vec::with_capacity(file.components.len());
        for c in file.components {
            weights.push(c.weight);
            functions.push(TaylorFunction::new(
                c.coefficients.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            )?);
        }
        Self::new(file.alpha, weights, functions)
    }

    pub fn to_json_string(&self) -> String {
        let file = StateFile {
            alpha: self.alpha,
            components: self
                .weights
                .iter()
                .zip(&self.functions)
                .map(|(w, f)| ComponentFile {
                    weight: *w,
                    coefficients: f.coefficients().iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&file).expect("finite state always serializes")
    }

    pub fn symbol(&self) -> CovariantSymbol {
        CovariantSymbol::from_terms(
            self.alpha,
            self.weights.iter().copied().zip(self.functions.iter().cloned()).collect(),
        )
    }
}

/// `z ↦ Σ p_j |f_j(z)|² (1-|z|²)^{α+2}`.
#[derive(Debug, Clone)]
pub struct CovariantSymbol {
    alpha: f64,
    terms: Vec<(f64, TaylorFunction)>,
    bound: f64,
}

impl CovariantSymbol {
    /// Symbol of the positive operator `Σ p_j ⟨·, f_j⟩ f_j`; the family need
    /// not be orthonormal.
    pub fn from_terms(alpha: f64, terms: Vec<(f64, TaylorFunction)>) -> Self {
        let bound = terms.iter().map(|(p, f)| p * f.coefficient_l1().powi(2)).sum();
        CovariantSymbol { alpha, terms, bound }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn terms(&self) -> &[(f64, TaylorFunction)] {
        &self.terms
    }
}

impl ScalarField for CovariantSymbol {
    fn value_at(&self, z: Complex64, w: f64) -> f64 {
        let s: f64 = self.terms.iter().map(|(p, f)| p * f.eval_raw(z).norm_sqr()).sum();
        s * w.powf(self.alpha + 2.0)
    }

    fn envelope(&self) -> Envelope {
        Envelope::new(self.bound, self.alpha + 2.0)
    }
}

pub fn covariant_symbol(state: &MixedState) -> CovariantSymbol {
    state.symbol()
}

/// Polar evaluation grid `{r e^{iθ}}`; `r = 0` contributes one point.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub angular: usize,
}

impl Default for PolarGrid {
    fn default() -> Self {
        PolarGrid {
            radii: (0..=9).map(|i| 0.1 * i as f64).collect(),
            angular: 24,
        }
    }
}

impl PolarGrid {
    pub fn points(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for &r in &self.radii {
            if r == 0.0 {
                out.push(Complex64::new(0.0, 0.0));
                continue;
            }
            for j in 0..self.angular {
                out.push(Complex64::from_polar(r, 2.0 * PI * j as f64 / self.angular as f64));
            }
        }
        out
    }
}

pub const LAPLACIAN_STEP: f64 = 1e-3;

enum Stencil {
    Value(f64),
    NearZero,
}

fn five_point<F: ScalarField + ?Sized>(u: &F, z: Complex64, h: f64) -> Stencil {
    let pts = [
        z,
        z + h,
        z - h,
        z + Complex64::new(0.0, h),
        z - Complex64::new(0.0, h),
    ];
    let vals = pts.map(|p| u.value(p));
    let hi = vals.iter().copied().fold(0.0, f64::max);
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    // A zero of u within the stencil shows up as a collapse of the smallest value.
    if !(lo > 1e-300) || lo < 1e-8 * hi {
        return Stencil::NearZero;
    }
    let l = vals.map(f64::ln);
    Stencil::Value((l[1] + l[2] + l[3] + l[4] - 4.0 * l[0]) / (h * h))
}

/// Checks `(1-|z|²)² Δ log u + 4(α+2) ≥ -tol` on the grid with the five-point
/// Laplacian. Points failing at step `h` are recomputed by Richardson
/// extrapolation from `h` and `h/2`.
pub fn check_log_laplacian<F: ScalarField + ?Sized>(
    u: &F,
    alpha: f64,
    grid: &PolarGrid,
    h: f64,
    tol: f64,
) -> Result<CheckReport> {
    check_alpha(alpha)?;
    if !(h > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidInput("step and tolerance must be positive".into()));
    }
    let target = 4.0 * (alpha + 2.0);
    let pts = grid.points();
    if let Some(p) = pts.iter().find(|p| p.norm() + h >= 1.0) {
        return Err(Error::OutsideDisk { re: p.re, im: p.im });
    }
    let results: Vec<(Option<f64>, bool)> = pts
        .par_iter()
        .map(|&z| {
            let w2 = (1.0 - z.norm_sqr()).powi(2);
            match five_point(u, z, h) {
                Stencil::NearZero => (None, false),
                Stencil::Value(d) => {
                    let v = w2 * d + target;
                    if v >= -tol {
                        return (Some(v), false);
                    }
                    match five_point(u, z, 0.5 * h) {
                        Stencil::Value(d2) => (Some(w2 * (4.0 * d2 - d) / 3.0 + target), true),
                        Stencil::NearZero => (None, true),
                    }
                }
            }
        })
        .collect();
    let skipped = results.iter().filter(|r| r.0.is_none()).count();
    let refined = results.iter().filter(|r| r.1).count();
    let mut min = f64::INFINITY;
    let mut at = Complex64::new(0.0, 0.0);
    for (v, z) in results.iter().zip(&pts) {
        if let Some(v) = v.0 {
            if v < min {
                min = v;
                at = *z;
            }
        }
    }
    let mut report = CheckReport::new("lemma4")
        .param("alpha", alpha)
        .param("h", h)
        .param("grid_points", pts.len())
        .param("skipped_near_zeros", skipped)
        .param("richardson_refined", refined)
        .param("argmin_re", at.re)
        .param("argmin_im", at.im)
        .values(-min, 0.0, tol);
    if skipped == pts.len() {
        report = report.fail("every grid point lies near a zero of u");
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankOneDistanceResult {
    pub value: f64,
    pub overlap: f64,
}

pub const NORMALIZATION_TOL: f64 = 1e-10;

/// `‖⟨·,f⟩f - ⟨·,g⟩g‖_{S₁} = 2√(1 - |⟨f,g⟩|²)` for unit vectors.
pub fn rank_one_distance(f: &TaylorFunction, g: &TaylorFunction, alpha: f64) -> Result<RankOneDistanceResult> {
    check_alpha(alpha)?;
    for (name, h) in [("‖f‖", f), ("‖g‖", g)] {
        let n = inner_product_unchecked(h, h, alpha).re.sqrt();
        if (n - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::param(name, n, "rank-one distance needs unit vectors"));
        }
    }
    let overlap = inner_product_unchecked(f, g, alpha).norm().min(1.0);
    Ok(RankOneDistanceResult {
        value: 2.0 * (1.0 - overlap * overlap).max(0.0).sqrt(),
        overlap,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelDistance {
    /// Best upper bound for `inf_z ‖A - ⟨·,κ_z⟩κ_z‖_{S₁}` found on the grid.
    pub d_ub: f64,
    pub at: Complex64,
    /// `T = sup u`.
    pub t: f64,
    pub argmax: Complex64,
    /// `2√(1-T)`.
    pub bound: f64,
}

/// Upper bound for the distance from `A` to the rank-one kernel projections.
///
/// Two bounds are evaluated at each point: the triangle inequality over the
/// components, `Σ p_j 2√(1 - |⟨f_j,κ_z⟩|²)`, and the fidelity bound
/// `2√(1 - u(z))`. `|⟨f_j,κ_z⟩|² = |f_j(z)|²(1-|z|²)^{α+2}` exactly.
pub fn kernel_distance_bound(state: &MixedState, grid: &PolarGrid) -> Result<KernelDistance> {
    let symbol = state.symbol();
    let peak: Peak = field_peak(&symbol)?;
    let alpha = state.alpha;
    let bound_at = |z: Complex64| -> f64 {
        let w = (1.0 - z.norm_sqr()).powf(alpha + 2.0);
        let mut mixture = 0.0;
        let mut u = 0.0;
        for (p, f) in state.weights.iter().zip(&state.functions) {
            let o = (f.eval_raw(z).norm_sqr() * w).min(1.0);
            mixture += p * 2.0 * (1.0 - o).sqrt();
            u += p * o;
        }
        mixture.min(2.0 * (1.0 - u.min(1.0)).sqrt())
    };
    let mut pts = grid.points();
    pts.push(peak.argmax);
    let vals: Vec<f64> = pts.par_iter().map(|&z| bound_at(z)).collect();
    let (mut d_ub, mut at) = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for (v, z) in vals.iter().zip(&pts) {
        if *v < d_ub {
            d_ub = *v;
            at = *z;
        }
    }
    let t = peak.value.min(1.0);
    Ok(KernelDistance {
        d_ub,
        at,
        t,
        argmax: peak.argmax,
        bound: 2.0 * (1.0 - t).sqrt(),
    })
}
