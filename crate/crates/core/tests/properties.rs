use std::f64::consts::PI;

use approx::assert_relative_eq;
use bergmanlab::disk::{inner_product, mobius, monomial_norm_sq, normalized_kernel, reproducing_kernel};
use bergmanlab::functionals::{
    bergman_norm, bergman_norm2_exact, convex_functional, husimi, k_alpha, layer_cake_functional, normalize, sup_u,
    ConvexG,
};
use bergmanlab::halfplane::SpectralFunction;
use bergmanlab::hardy::{phi_grid, phi_profile};
use bergmanlab::operators::{CovariantSymbol, PolarGrid};
use bergmanlab::quadrature::{
    distribution_profile, integrate_hyperbolic, LevelSetOptions, LevelSets, Recentered, ScalarField,
};
use bergmanlab::random::TestFamily;
use bergmanlab::stability::{default_t_grid, h_profile, kernel_deficit};
use bergmanlab::{DiskPoint, SpaceParams, TaylorFunction};
use num_complex::Complex64;
use proptest::prelude::*;

fn disk_point(max_r: f64) -> impl Strategy<Value = DiskPoint> {
    (0.0..max_r, 0.0..2.0 * PI).prop_map(|(r, th)| DiskPoint::new(Complex64::from_polar(r, th)).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| Complex64::new(a, b))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = TaylorFunction> {
    prop::collection::vec(complex(), 1..=max_degree + 1)
        .prop_filter("nonzero", |c| c.iter().any(|a| a.norm() > 1e-3))
        .prop_map(|c| TaylorFunction::new(c).unwrap())
}

fn alpha() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(0.5), Just(1.0), Just(3.0), 0.0..4.0]
}

fn cheap() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn costly() -> ProptestConfig {
    ProptestConfig::with_cases(8)
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn reproducing_property(f in polynomial(16), w in disk_point(0.9), a in alpha()) {
        let k = reproducing_kernel(w, a, 4 * 16.max(f.degree()) + 192).unwrap();
        let ip = inner_product(&f, &k.function, a).unwrap();
        let fw = f.eval(w);
        let norm = inner_product(&f, &f, a).unwrap().re.sqrt();
        prop_assert!((ip - fw).norm() <= k.tail_bound * norm + 1e-10 * (1.0 + fw.norm()));
    }

    #[test]
    fn monomials_orthonormal(j in 0usize..30, k in 0usize..30, a in alpha()) {
        let ej = TaylorFunction::monomial(j).scale_real(monomial_norm_sq(j, a).unwrap().sqrt().recip());
        let ek = TaylorFunction::monomial(k).scale_real(monomial_norm_sq(k, a).unwrap().sqrt().recip());
        let ip = inner_product(&ej, &ek, a).unwrap();
        let want = if j == k { 1.0 } else { 0.0 };
        prop_assert!((ip - want).norm() < 1e-14);
    }

    #[test]
    fn mobius_involution(w in disk_point(0.95), z in disk_point(0.95)) {
        let back = mobius(w, mobius(w, z));
        prop_assert!((back.z() - z.z()).norm() < 1e-12);
    }

    #[test]
    fn kernel_unit_norm(w in disk_point(0.9), a in alpha()) {
        let k = normalized_kernel(w, a, 256).unwrap();
        let n = inner_product(&k.function, &k.function, a).unwrap().re.sqrt();
        prop_assert!((n - 1.0).abs() <= 2.0 * k.tail_bound + 1e-12);
    }

    #[test]
    fn extremal_k_alpha_bounded(t in 1e-6..1.0f64, a in alpha()) {
        let k = k_alpha(t, a).unwrap();
        prop_assert!(k >= 0.0 && k <= PI / (a + 1.0) * (1.0 + 1e-12));
    }

    #[test]
    fn symbol_bounded_by_one(seed in any::<u64>(), a in alpha()) {
        let st = TestFamily::new(seed).mixed_state(a, 4).unwrap();
        let u = st.symbol();
        for z in PolarGrid::default().points() {
            prop_assert!(u.value(z) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn symbol_mixture_is_convex(s1 in any::<u64>(), s2 in any::<u64>(), lam in 0.0..1.0f64, z in disk_point(0.95)) {
        let a = TestFamily::new(s1).mixed_state(0.0, 3).unwrap();
        let b = TestFamily::new(s2).mixed_state(0.0, 3).unwrap();
        let mut terms = Vec::new();
        for (w, f) in a.weights().iter().zip(a.functions()) {
            terms.push((lam * w, f.clone()));
        }
        for (w, f) in b.weights().iter().zip(b.functions()) {
            terms.push(((1.0 - lam) * w, f.clone()));
        }
        let mix = CovariantSymbol::from_terms(0.0, terms);
        let want = lam * a.symbol().value(z.z()) + (1.0 - lam) * b.symbol().value(z.z());
        prop_assert!((mix.value(z.z()) - want).abs() <= 1e-14 * (1.0 + want));
    }

    #[test]
    fn h2_norm_matches_spectral_quadrature(m in 0u32..3, s in 0.3..3.0f64, c in complex()) {
        let f = SpectralFunction::term(m, s).unwrap().scale(c)
            .add(&SpectralFunction::term(m + 1, 1.3 * s).unwrap());
        // Composite Gauss–Legendre on [0, L]; the integrand is negligible beyond.
        let l = 80.0 / s;
        let panels = 60;
        let h = l / panels as f64;
        let nodes = gauss_legendre_nodes(20);
        let mut acc = 0.0;
        for k in 0..panels {
            for &(x, w) in &nodes {
                acc += 0.5 * h * w * f.eval(h * (k as f64 + 0.5 * (x + 1.0))).norm_sqr();
            }
        }
        let quad = acc / (2.0 * PI);
        prop_assert!((quad - f.h2_norm_sq()).abs() <= 1e-10 * (1.0 + quad));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn norm_homogeneity(f in polynomial(8), c in complex(), a in alpha(), p in prop_oneof![Just(2.0), Just(4.0), 1.0..5.0f64]) {
        prop_assume!(c.norm() > 1e-2);
        let params = SpaceParams::bergman(p, a).unwrap();
        let n1 = bergman_norm(&f, params).unwrap();
        let nc = bergman_norm(&f.scale(c), params).unwrap();
        prop_assert!((nc - c.norm() * n1).abs() <= 1e-8 * (1.0 + nc));
    }

    #[test]
    fn quadrature_matches_coefficient_norm(f in polynomial(16), a in prop_oneof![Just(0.0), Just(0.5), Just(3.0)]) {
        let q = bergman_norm(&f, SpaceParams::bergman(2.0, a).unwrap()).unwrap().powi(2);
        let e = bergman_norm2_exact(&f, a).unwrap().powi(2);
        prop_assert!((q - e).abs() <= 1e-8 * (1.0 + e));
    }

    #[test]
    fn husimi_bounded_by_norm(seed in any::<u64>(), a in alpha()) {
        let f = TestFamily::new(seed).polynomial(a).unwrap();
        let u = husimi(&f, SpaceParams::bergman(2.0, a).unwrap());
        for z in PolarGrid::default().points() {
            prop_assert!(u.value(z) <= 1.0 + 1e-9);
        }
    }

    #[test]
    fn deficit_matches_peak(seed in any::<u64>(), a in prop_oneof![Just(0.0), Just(1.0)]) {
        let f = TestFamily::new(seed).polynomial(a).unwrap();
        let d = kernel_deficit(&f, a).unwrap();
        let (t, _) = sup_u(&f, SpaceParams::bergman(2.0, a).unwrap()).unwrap();
        prop_assert!((d.d2 - 2.0 * (1.0 - t.sqrt())).abs() <= 1e-6);
    }
}

proptest! {
    #![proptest_config(costly())]

    #[test]
    fn superlevel_measure_non_increasing(seed in any::<u64>(), a in prop_oneof![Just(0.0), Just(1.0)]) {
        let f = TestFamily::new(seed).polynomial(a).unwrap();
        let u = husimi(&f, SpaceParams::bergman(2.0, a).unwrap());
        let sets = LevelSets::new(&u, LevelSetOptions::default());
        let grid = default_t_grid(sets.peak().value);
        let ms: Vec<_> = grid.iter().map(|&t| sets.measure(t).unwrap()).collect();
        for w in ms.windows(2) {
            prop_assert!(w[1].value <= w[0].value + w[0].error + w[1].error);
        }
    }

    #[test]
    fn layer_cake_agrees_with_direct(seed in any::<u64>(), r in prop_oneof![Just(1.5), Just(2.0), Just(3.0)]) {
        let f = TestFamily::new(seed).polynomial(0.0).unwrap();
        let params = SpaceParams::bergman(2.0, 0.0).unwrap();
        let g = ConvexG::power(r).unwrap();
        let direct = convex_functional(&f, &g, params).unwrap().value;
        let cake = layer_cake_functional(&f, &g, params).unwrap();
        prop_assert!((direct - cake).abs() <= 1e-6 * direct);
    }

    #[test]
    fn integral_equals_layer_cake_of_measures(seed in any::<u64>()) {
        let f = TestFamily::new(seed).polynomial(1.0).unwrap();
        let u = husimi(&f, SpaceParams::bergman(2.0, 1.0).unwrap());
        let direct = integrate_hyperbolic(&u, 1e-10).unwrap().value;
        let sets = LevelSets::new(&u, LevelSetOptions::default());
        // ∫u dμ = ∫_0^T μ({u > t}) dt, with t = floor + (T - floor)s³ taming ρ ~ t^{-1/3}.
        // The part below the floor is ∫min(u, floor)dμ, far below the tolerance.
        let floor = sets.floor();
        let peak = sets.peak().value;
        let mut total = 0.0;
        for (x, w) in gauss_legendre_nodes(200) {
            let s = 0.5 * (x + 1.0);
            let t = floor + (peak - floor) * s.powi(3);
            total += 0.5 * w * 3.0 * (peak - floor) * s * s * sets.measure(t).unwrap().value;
        }
        prop_assert!((direct - total).abs() <= 1e-4 * direct, "{direct} vs {total}");
    }

    #[test]
    fn profile_is_mobius_invariant(seed in any::<u64>(), w in disk_point(0.6)) {
        let f = TestFamily::new(seed).polynomial(0.0).unwrap();
        let u = husimi(&f, SpaceParams::bergman(2.0, 0.0).unwrap());
        let moved = Recentered::new(&u, w.z());
        let peak = LevelSets::new(&u, LevelSetOptions::default()).peak().value;
        let grid = default_t_grid(peak);
        let a = distribution_profile(&u, &grid).unwrap();
        let b = distribution_profile(&moved, &grid).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            prop_assert!((x.rho - y.rho).abs() <= x.rho_err + y.rho_err + 1e-9 * (1.0 + x.rho));
        }
    }

    #[test]
    fn h_vanishes_at_one_and_is_nonnegative(seed in any::<u64>()) {
        let f = TestFamily::new(seed).polynomial(0.0).unwrap();
        let u = husimi(&f, SpaceParams::bergman(2.0, 0.0).unwrap());
        let peak = LevelSets::new(&u, LevelSetOptions::default()).peak().value;
        let mut grid = default_t_grid(peak);
        grid.push(1.0);
        let prof = distribution_profile(&u, &grid).unwrap();
        let h = h_profile(&prof).unwrap();
        for (v, e) in h.h.iter().zip(&h.h_err) {
            prop_assert!(*v >= -e - 1e-9);
        }
        prop_assert!(h.h.last().unwrap().abs() <= h.h_err.last().unwrap() + 1e-9);
    }

    #[test]
    fn hardy_measure_below_extremal(seed in any::<u64>()) {
        let f = TestFamily::new(seed).polynomial(-1.0).unwrap();
        let (t, _) = sup_u(&f, SpaceParams::hardy(2.0).unwrap()).unwrap();
        let prof = phi_profile(&f, 2.0, &phi_grid(t, 1e-3, 30)).unwrap();
        let mut prev = f64::INFINITY;
        for s in &prof.samples {
            prop_assert!(s.rho <= PI * (1.0 / s.t - 1.0) + s.rho_err + 1e-9);
            // t(ρ(t) + π) non-increasing
            let q = s.t * (s.rho + PI);
            prop_assert!(q <= prev + s.t * s.rho_err * 2.0 + 1e-9);
            prev = q;
        }
    }
}

fn gauss_legendre_nodes(n: usize) -> Vec<(f64, f64)> {
    // Golub–Welsch via nalgebra's symmetric eigen solver.
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = k as f64 / ((4 * k * k - 1) as f64).sqrt();
        m[(k, k - 1)] = b;
        m[(k - 1, k)] = b;
    }
    let eig = m.symmetric_eigen();
    (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect()
}

#[test]
fn level_set_measure_matches_grid_count() {
    // Dense (x, θ) cell count with midpoint values; an oracle independent of the ray caster.
    let f = normalize(&TaylorFunction::from_real(&[1.0, 0.8, -0.5]).unwrap(), 0.0).unwrap();
    let u = husimi(&f, SpaceParams::bergman(2.0, 0.0).unwrap());
    let sets = LevelSets::new(&u, LevelSetOptions::default());
    let peak = sets.peak().value;
    for rel in [0.3, 0.6, 0.9] {
        let t = rel * peak;
        let (nx, nt) = (4000, 2000);
        let x_max = 12.0;
        let dx = x_max / nx as f64;
        let dth = 2.0 * PI / nt as f64;
        let mut count = 0.0;
        for i in 0..nx {
            let x = (i as f64 + 0.5) * dx;
            let w = (-x).exp();
            let r = (1.0 - w).sqrt();
            let mut hits = 0usize;
            for j in 0..nt {
                let z = Complex64::from_polar(r, (j as f64 + 0.5) * dth);
                if u.value_at(z, w) > t {
                    hits += 1;
                }
            }
            count += hits as f64 * 0.5 * x.exp() * dx * dth;
        }
        let m = sets.measure(t).unwrap();
        assert_relative_eq!(m.value, count, max_relative = 2e-3);
    }
}
