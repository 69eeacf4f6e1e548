//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use bergmanlab::disk::{inner_product, monomial_norm_sq, normalized_kernel, KERNEL_DEGREE};
use bergmanlab::functionals::{
    bergman_norm, check_embedding, concentration_bound, concentration_ratio, convex_functional,
    extremal_field, husimi, k_alpha, normalize, rho0, sup_u, ConvexG,
};
use bergmanlab::halfplane::{check_unitarity, SpectralFunction, UNITARITY_TOL};
use bergmanlab::hardy::{hardy_concentration_check, phi_grid, phi_profile};
use bergmanlab::operators::{
    check_log_laplacian, kernel_distance_bound, rank_one_distance, MixedState, PolarGrid, LAPLACIAN_STEP,
};
use bergmanlab::quadrature::{
    check_differential_inequality, profile_from_sets, LevelSetOptions, LevelSets, ScalarField,
};
use bergmanlab::random::TestFamily;
use bergmanlab::stability::{check_crossing, check_lemma5_bound, default_t_grid, kernel_deficit, verify_theorem1};
use bergmanlab::{DiskPoint, SpaceParams, TaylorFunction};
use nalgebra::Matrix2;
use num_complex::Complex64;
use rayon::prelude::*;

const SEED: u64 = 20240611;

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn family(alpha: f64, count: usize) -> Vec<TaylorFunction> {
    TestFamily::new(SEED).polynomials(alpha, count).unwrap()
}

fn kernel(w: Complex64, alpha: f64) -> TaylorFunction {
    let k = normalized_kernel(DiskPoint::new(w).unwrap(), alpha, KERNEL_DEGREE).unwrap().function;
    normalize(&k, alpha).unwrap()
}

/// Named test functions plus seeded random ones, all normalized in `A²_α`.
fn test_set(alpha: f64, random: usize) -> Vec<TaylorFunction> {
    let mut out = vec![
        normalize(&TaylorFunction::monomial(1), alpha).unwrap(),
        normalize(&TaylorFunction::from_real(&[1.0, 1.0]).unwrap(), alpha).unwrap(),
        normalize(&TaylorFunction::from_real(&[1.0, 0.0, 0.5]).unwrap(), alpha).unwrap(),
    ];
    out.extend(family(alpha, random));
    out
}

fn c1_closed_forms() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [0.0, 1.0, 2.5] {
        let v = extremal_field(alpha);
        let sets = LevelSets::new(&v, LevelSetOptions::default());
        for t in [0.1, 0.25, 0.5, 0.9] {
            let m = sets.measures(t).map_err(e2s)?;
            let dk = (m.excess.value - k_alpha(t, alpha).map_err(e2s)?).abs();
            let dr = (m.measure.value - rho0(t, alpha).map_err(e2s)?).abs();
            ensure(dk <= 1e-6 && dr <= 1e-6, || format!("α={alpha} t={t}: ΔK={dk:e} Δρ={dr:e}"))?;
            worst = worst.max(dk).max(dr);
        }
    }
    let k = k_alpha(0.25, 0.0).map_err(e2s)?;
    let r = rho0(0.25, 0.0).map_err(e2s)?;
    ensure((k - PI / 4.0).abs() < 1e-14 && (r - PI).abs() < 1e-14, || format!("anchors {k} {r}"))?;
    Ok(format!("max deviation {worst:.2e}; K_0(1/4) = π/4, ρ₀(1/4) = π"))
}

fn c2_monomial_norms() -> Outcome {
    use statrs::function::gamma::ln_gamma;
    let mut worst: f64 = 0.0;
    for alpha in [0.0, 0.5, 3.0] {
        for k in 0..=16usize {
            let kf = k as f64;
            let ck = (ln_gamma(kf + 1.0) + ln_gamma(alpha + 2.0) - ln_gamma(kf + alpha + 2.0)).exp();
            let q = bergman_norm(&TaylorFunction::monomial(k), SpaceParams::bergman(2.0, alpha).unwrap())
                .map_err(e2s)?
                .powi(2);
            let d = (q - ck).abs();
            ensure(d <= 1e-8, || format!("α={alpha} k={k}: {q} vs {ck}"))?;
            ensure((monomial_norm_sq(k, alpha).unwrap() - ck).abs() <= 1e-11 * ck, || format!("running product, k={k}"))?;
            worst = worst.max(d);
        }
    }
    Ok(format!("max |quadrature - c_k| = {worst:.2e}"))
}

fn c3_kulikov() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    let mut count = 0;
    for alpha in [0.0, 1.0] {
        let params = SpaceParams::bergman(2.0, alpha).unwrap();
        let fs = family(alpha, 100);
        for r in [1.5, 2.0, 3.0] {
            let g = ConvexG::power(r).unwrap();
            let extremal = convex_functional(&TaylorFunction::one(), &g, params).map_err(e2s)?.value;
            let excesses: Vec<f64> = fs
                .par_iter()
                .enumerate()
                .map(|(i, f)| {
                    convex_functional(f, &g, params)
                        .map(|q| q.value - extremal)
                        .map_err(|e| format!("α={alpha} r={r} function {i}: {e}"))
                })
                .collect::<std::result::Result<_, String>>()?;
            for e in &excesses {
                ensure(*e <= 1e-6, || format!("α={alpha} r={r}: excess {e:e}"))?;
                worst = worst.max(*e);
                count += 1;
            }
            for w in [Complex64::new(0.0, 0.0), Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.6)] {
                let v = convex_functional(&kernel(w, alpha), &g, params)
                    .map_err(|e| format!("κ_{w} α={alpha} r={r}: {e}"))?
                    .value;
                ensure((v - extremal).abs() <= 1e-6, || format!("κ_{w} α={alpha} r={r}: {v} vs {extremal}"))?;
            }
        }
    }
    let anchor = convex_functional(&TaylorFunction::one(), &ConvexG::power(2.0).unwrap(), SpaceParams::bergman(2.0, 0.0).unwrap())
        .map_err(e2s)?
        .value;
    ensure((anchor - PI / 3.0).abs() <= 1e-9, || format!("anchor {anchor}"))?;
    Ok(format!("{count} random cases, largest ∫G(u) - ∫G(v) = {worst:.3e}; kernels attain equality"))
}

fn c4_embedding() -> Outcome {
    let fs = family(0.0, 100);
    let margins: Vec<f64> = fs
        .par_iter()
        .map(|f| check_embedding(f, 2.0, 4.0, 0.0).map(|r| r.margin))
        .collect::<bergmanlab::Result<_>>()
        .map_err(e2s)?;
    let worst = margins.iter().copied().fold(f64::INFINITY, f64::min);
    ensure(worst >= -1e-8, || format!("smallest margin {worst:e}"))?;
    let z = TaylorFunction::monomial(1);
    let a = bergman_norm(&z, SpaceParams::bergman(4.0, 2.0).unwrap()).map_err(e2s)?;
    let b = bergman_norm(&z, SpaceParams::bergman(2.0, 0.0).unwrap()).map_err(e2s)?;
    ensure((a - 0.1f64.powf(0.25)).abs() < 1e-9 && (b - 0.5f64.sqrt()).abs() < 1e-9, || format!("anchor {a} {b}"))?;
    Ok(format!("smallest ‖f‖_A²_0 - ‖f‖_A⁴_2 = {worst:.3e}; anchor (1/10)^(1/4) ≤ (1/2)^(1/2)"))
}

fn c5_concentration() -> Outcome {
    let sizes = [PI / 2.0, PI, 4.0 * PI];
    let mut worst = f64::NEG_INFINITY;
    for alpha in [0.0, 1.0] {
        let fs = test_set(alpha, 100);
        let excess: Vec<f64> = fs
            .par_iter()
            .map(|f| -> bergmanlab::Result<f64> {
                let (_, center) = sup_u(f, SpaceParams::bergman(2.0, alpha)?)?;
                let mut e = f64::NEG_INFINITY;
                for &s in &sizes {
                    for c in [center, DiskPoint::origin()] {
                        e = e.max(concentration_ratio(f, alpha, c, s)? - concentration_bound(s, alpha)?);
                    }
                }
                Ok(e)
            })
            .collect::<bergmanlab::Result<_>>()
            .map_err(e2s)?;
        for e in excess {
            ensure(e <= 1e-6, || format!("α={alpha}: R - bound = {e:e}"))?;
            worst = worst.max(e);
        }
        for &s in &sizes {
            let r = concentration_ratio(&TaylorFunction::one(), alpha, DiskPoint::origin(), s).map_err(e2s)?;
            let b = concentration_bound(s, alpha).map_err(e2s)?;
            ensure((r - b).abs() <= 1e-6, || format!("f = 1, s = {s}: {r} vs {b}"))?;
        }
    }
    Ok(format!("largest R - bound = {worst:.3e}; f = 1 attains the bound"))
}

fn c6_deficit_identity() -> Outcome {
    let z = normalize(&TaylorFunction::monomial(1), 0.0).unwrap();
    let d = kernel_deficit(&z, 0.0).map_err(e2s)?;
    let want = 2.0 * (1.0 - (8.0f64 / 27.0).sqrt());
    ensure((d.d2 - want).abs() <= 1e-6, || format!("z: {} vs {want}", d.d2))?;
    ensure((d.d2 - 0.9113).abs() < 1e-4, || format!("z: d² = {}", d.d2))?;
    let mut worst: f64 = 0.0;
    for f in family(0.0, 20) {
        let d = kernel_deficit(&f, 0.0).map_err(e2s)?;
        let (t, _) = sup_u(&f, SpaceParams::bergman(2.0, 0.0).unwrap()).map_err(e2s)?;
        let diff = (d.d2 - 2.0 * (1.0 - t.sqrt())).abs();
        ensure(diff <= 1e-6, || format!("random: {} vs {}", d.d2, 2.0 * (1.0 - t.sqrt())))?;
        worst = worst.max(diff);
    }
    Ok(format!("z: d² = {:.6}; random max |d² - 2(1-√T)| = {worst:.2e}", d.d2))
}

fn differential_margin<F: ScalarField>(u: &F, alpha: f64, tol: f64) -> bergmanlab::Result<bool> {
    let sets = LevelSets::new(u, LevelSetOptions::default());
    let profile = profile_from_sets(&sets, &default_t_grid(sets.peak().value))?;
    Ok(check_differential_inequality(&profile, alpha, tol).pass)
}

fn c7_differential() -> Outcome {
    let mut n = 0;
    for alpha in [0.0, 1.0] {
        let params = SpaceParams::bergman(2.0, alpha).unwrap();
        let fs = test_set(alpha, 20);
        let ok: Vec<bool> = fs
            .par_iter()
            .map(|f| differential_margin(&husimi(f, params), alpha, 1e-9))
            .collect::<bergmanlab::Result<_>>()
            .map_err(e2s)?;
        ensure(ok.iter().all(|b| *b), || format!("α={alpha}: failures at {:?}", ok.iter().positions_false()))?;
        n += ok.len();
    }
    let mut fam = TestFamily::new(SEED + 7);
    let states: Vec<MixedState> = (0..10).map(|_| fam.mixed_state(0.0, 4).unwrap()).collect();
    let ok: Vec<bool> = states
        .par_iter()
        .map(|s| differential_margin(&s.symbol(), 0.0, 1e-9))
        .collect::<bergmanlab::Result<_>>()
        .map_err(e2s)?;
    ensure(ok.iter().all(|b| *b), || format!("mixed states: failures at {:?}", ok.iter().positions_false()))?;
    Ok(format!("{n} functions and {} mixed states non-increasing", ok.len()))
}

trait PositionsFalse {
    fn positions_false(self) -> Vec<usize>;
}

impl<'a, I: Iterator<Item = &'a bool>> PositionsFalse for I {
    fn positions_false(self) -> Vec<usize> {
        self.enumerate().filter(|(_, b)| !**b).map(|(i, _)| i).collect()
    }
}

fn c8_crossing() -> Outcome {
    let mut n = 0;
    let mut least = f64::INFINITY;
    for alpha in [0.0, 1.0] {
        let params = SpaceParams::bergman(2.0, alpha).unwrap();
        let fs = test_set(alpha, 20);
        let reports: Vec<_> = fs
            .par_iter()
            .map(|f| {
                let u = husimi(f, params);
                let sets = LevelSets::new(&u, LevelSetOptions::default());
                check_crossing(&sets, &default_t_grid(sets.peak().value))
            })
            .collect::<bergmanlab::Result<_>>()
            .map_err(e2s)?;
        for r in reports {
            ensure(r.pass, || r.to_json())?;
            least = least.min(r.margin);
            n += 1;
        }
    }
    Ok(format!("{n} functions: one sign change, H = K_α past T, smallest H(t*) - floor = {least:.3e}"))
}

fn c9_theorem1() -> Outcome {
    let mut least = f64::INFINITY;
    let mut n = 0;
    for alpha in [0.0, 1.0] {
        for r in [2.0, 3.0] {
            let g = ConvexG::power(r).unwrap();
            let fs = test_set(alpha, 30);
            let reports: Vec<_> = fs
                .par_iter()
                .map(|f| verify_theorem1(f, &g, alpha, 1.0))
                .collect::<bergmanlab::Result<_>>()
                .map_err(e2s)?;
            for rep in reports {
                ensure(rep.pass && rep.margin > 0.0, || rep.to_json())?;
                least = least.min(rep.margin);
                n += 1;
            }
        }
    }
    // Blend family toward κ_0 = 1.
    let g = ConvexG::power(2.0).unwrap();
    let mut margins = Vec::new();
    for k in 0..=10 {
        let lambda = k as f64 / 10.0;
        let f = normalize(&TaylorFunction::from_real(&[1.0 - lambda, lambda]).unwrap(), 0.0).unwrap();
        margins.push(verify_theorem1(&f, &g, 0.0, 1.0).map_err(e2s)?.margin);
    }
    ensure(margins[0].abs() <= 1e-8, || format!("λ = 0 margin {}", margins[0]))?;
    ensure(margins.windows(2).all(|w| w[1] > w[0]), || format!("blend margins not increasing: {margins:?}"))?;
    Ok(format!(
        "{n} cases with positive margin (least {least:.3e}); blend margins {:.2e} → {:.2e}",
        margins[1], margins[10]
    ))
}

fn brute_force_trace_distance(f: &TaylorFunction, g: &TaylorFunction, alpha: f64) -> f64 {
    // Orthonormal basis e1 = f, e2 ∝ g - ⟨g,f⟩f; then g = a e1 + b e2.
    let a = inner_product(g, f, alpha).unwrap();
    let rest = g.combine(Complex64::new(1.0, 0.0), f, -a);
    let b = inner_product(&rest, &rest, alpha).unwrap().re.max(0.0).sqrt();
    let b = Complex64::new(b, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let pf = Matrix2::new(one, zero, zero, zero);
    let pg = Matrix2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj());
    let eig = (pf - pg).symmetric_eigenvalues();
    eig.iter().map(|l| l.abs()).sum()
}

fn c10_rank_one() -> Outcome {
    let mut fam = TestFamily::new(SEED + 10);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let alpha = [0.0, 1.0][i % 2];
        let f = fam.polynomial(alpha).unwrap();
        let mut g = fam.polynomial(alpha).unwrap();
        if i % 3 == 0 {
            // Push some pairs toward large overlap.
            let mix = f.combine(Complex64::new(1.0, 0.0), &g, Complex64::new(0.05, 0.02));
            g = normalize(&mix, alpha).unwrap();
        }
        let r = rank_one_distance(&f, &g, alpha).map_err(e2s)?;
        let bf = brute_force_trace_distance(&f, &g, alpha);
        worst = worst.max((r.value - bf).abs());
    }
    ensure(worst <= 1e-10, || format!("max deviation {worst:e}"))?;
    let k5 = kernel(Complex64::new(0.5, 0.0), 0.0);
    let r = rank_one_distance(&TaylorFunction::one(), &k5, 0.0).map_err(e2s)?;
    let want = 2.0 * 0.4375f64.sqrt();
    ensure((r.value - want).abs() <= 1e-10 && (r.overlap - 0.75).abs() <= 1e-10, || format!("anchor {r:?}"))?;
    Ok(format!("max |formula - eigen| = {worst:.2e}; κ_0/κ_0.5 → {:.10}", r.value))
}

fn c11_kernel_distance() -> Outcome {
    let grid = PolarGrid::default();
    let mut fam = TestFamily::new(SEED + 11);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..20 {
        let alpha = [0.0, 1.0][i % 2];
        let st = fam.mixed_state(alpha, 4).unwrap();
        let d = kernel_distance_bound(&st, &grid).map_err(e2s)?;
        ensure(d.d_ub <= d.bound + 1e-8, || format!("state {i}: {} > {}", d.d_ub, d.bound))?;
        worst = worst.max(d.d_ub - d.bound);
    }
    let mut pure_dev: f64 = 0.0;
    for f in family(0.0, 10) {
        let d = kernel_distance_bound(&MixedState::pure(f, 0.0).unwrap(), &grid).map_err(e2s)?;
        pure_dev = pure_dev.max((d.d_ub - d.bound).abs());
    }
    ensure(pure_dev <= 1e-6, || format!("pure states deviate by {pure_dev:e}"))?;
    Ok(format!("largest D_ub - 2√(1-T) = {worst:.3e}; pure-state equality within {pure_dev:.2e}"))
}

fn c12_hardy() -> Outcome {
    let fs = family(-1.0, 20);
    let excess: Vec<f64> = fs
        .par_iter()
        .map(|f| -> bergmanlab::Result<f64> {
            let (t, _) = sup_u(f, SpaceParams::hardy(2.0)?)?;
            let prof = phi_profile(f, 2.0, &phi_grid(t, 1e-3, 40))?;
            Ok(prof.max_excess())
        })
        .collect::<bergmanlab::Result<_>>()
        .map_err(e2s)?;
    let worst = excess.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    ensure(worst <= 0.0, || format!("Φ exceeds its error bar by {worst:e}"))?;
    for t in [0.2, 0.5] {
        let r = hardy_concentration_check(&TaylorFunction::one(), 2.0, t).map_err(e2s)?;
        let exact = PI * (1.0 / t).ln();
        ensure((r.lhs - exact).abs() <= 1e-8 && (r.rhs - exact).abs() <= 1e-8, || r.to_json())?;
    }
    Ok(format!("largest Φ - err = {worst:.3e}; f = 1 gives π log(1/t) on both sides"))
}

fn c13_unitarity() -> Outcome {
    let mut worst: f64 = 0.0;
    for alpha in [0.0, 1.0] {
        for m in 0..3 {
            for s in [0.5, 1.0, 2.0] {
                let f = SpectralFunction::term(m, s).map_err(e2s)?;
                let r = check_unitarity(&f, alpha, UNITARITY_TOL).map_err(e2s)?;
                ensure(r.pass, || r.to_json())?;
                worst = worst.max(r.lhs);
            }
        }
    }
    Ok(format!("max |ratio - 1| = {worst:.2e}"))
}

fn c14_log_laplacian() -> Outcome {
    let grid = PolarGrid::default();
    let mut fam = TestFamily::new(SEED + 14);
    let mut states = Vec::new();
    for alpha in [0.0, 1.0] {
        states.push(MixedState::pure(normalize(&TaylorFunction::from_real(&[1.0, 1.0]).unwrap(), alpha).unwrap(), alpha).unwrap());
        for _ in 0..5 {
            states.push(MixedState::pure(fam.polynomial(alpha).unwrap(), alpha).unwrap());
            states.push(fam.mixed_state(alpha, 4).unwrap());
        }
    }
    let mut least = f64::INFINITY;
    let mut skipped = 0;
    for st in &states {
        let r = check_log_laplacian(&st.symbol(), st.alpha(), &grid, LAPLACIAN_STEP, 1e-2).map_err(e2s)?;
        ensure(r.pass, || r.to_json())?;
        least = least.min(r.margin);
        skipped += r.params["skipped_near_zeros"].as_u64().unwrap_or(0);
    }
    Ok(format!(
        "{} states, least (1-|z|²)²Δ log u + 4(α+2) = {least:.3e}, {skipped} points skipped",
        states.len()
    ))
}

fn c15_lemma5() -> Outcome {
    let (t0, c) = (0.1, 4.0);
    let mut n = 0;
    let mut skipped = 0;
    let mut max_needed: f64 = 0.0;
    for alpha in [0.0, 1.0] {
        let params = SpaceParams::bergman(2.0, alpha).unwrap();
        for f in test_set(alpha, 20) {
            let u = husimi(&f, params);
            let (t, _) = sup_u(&f, params).map_err(e2s)?;
            if t <= t0 {
                skipped += 1;
                continue;
            }
            let table = check_lemma5_bound(&u, alpha, t0, c).map_err(e2s)?;
            ensure(table.report.pass, || table.report.to_json())?;
            max_needed = max_needed.max(table.minimal_c);
            n += 1;
        }
    }
    Ok(format!("{n} functions pass with C = 4 ({skipped} with T ≤ t₀); largest minimal C = {max_needed:.3}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 15] = [
        ("closed forms K_α, ρ₀ against level-set quadrature", c1_closed_forms),
        ("monomial norms against c_k", c2_monomial_norms),
        ("Kulikov extremality of the constant function", c3_kulikov),
        ("contractive embedding A²_0 into A⁴_2", c4_embedding),
        ("sharp concentration on hyperbolic disks", c5_concentration),
        ("kernel deficit identity d² = 2(1-√T)", c6_deficit_identity),
        ("differential inequality for ρ", c7_differential),
        ("single crossing and H(t*) floor", c8_crossing),
        ("Theorem 1 harness and blend margins", c9_theorem1),
        ("rank-one trace distance", c10_rank_one),
        ("distance to kernel projections", c11_kernel_distance),
        ("Hardy concentration Φ ≤ 0", c12_hardy),
        ("Bergman transform unitarity", c13_unitarity),
        ("log-Laplacian lower bound", c14_log_laplacian),
        ("Lemma 5 distribution bound", c15_lemma5),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:6.1}s] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{secs:6.1}s] {name}: {detail}", i + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
