//! One-dimensional quadrature rules and deterministic summation.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mut acc = Sum::default();
        for (x, w) in self.mapped(a, b) {
            acc.add(w * f(x));
        }
        acc.value()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Shared rule of the given order (cached for the common small orders).
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    static CACHE: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=64).map(|k| GaussLegendre::new(k.max(1))).collect());
    assert!((1..=64).contains(&n), "cached Gauss-Legendre orders are 1..=64");
    &cache[n]
}

/// Composite Gauss–Legendre over `panels` equal subintervals of `[a, b]`.
pub fn composite<F: FnMut(f64) -> f64>(a: f64, b: f64, panels: usize, order: usize, mut f: F) -> f64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut acc = Sum::default();
    for k in 0..panels {
        let lo = a + h * k as f64;
        acc.add(rule.integrate(lo, lo + h, &mut f));
    }
    acc.value()
}

/// Composite rule on panels geometrically graded toward `a` (ratio `q`),
/// resolving algebraic endpoint singularities at `a`. The innermost piece
/// `[a, a + (b-a) q^levels]` is integrated with a single panel.
pub fn graded_toward_left<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    levels: usize,
    q: f64,
    order: usize,
    mut f: F,
) -> f64 {
    let rule = gauss_legendre(order);
    let mut acc = Sum::default();
    let mut hi = b;
    let len = b - a;
    for k in 1..=levels {
        let lo = a + len * q.powi(k as i32);
        acc.add(rule.integrate(lo, hi, &mut f));
        hi = lo;
    }
    acc.add(rule.integrate(a, hi, &mut f));
    acc.value()
}

/// Composite rule graded toward both endpoints of `[a, b]`.
pub fn graded_both<F: FnMut(f64) -> f64>(a: f64, b: f64, levels: usize, q: f64, order: usize, mut f: F) -> f64 {
    let mid = 0.5 * (a + b);
    // Keep reflected nodes `b - s` distinguishable from `b`.
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    let cap = ((1e-13 * scale / (mid - a)).ln() / q.ln()).floor().max(0.0) as usize;
    let levels = levels.min(cap);
    let left = graded_toward_left(a, mid, levels, q, order, &mut f);
    // Reflect so that grading accumulates at `b`.
    let right = graded_toward_left(0.0, b - mid, levels, q, order, |s| f(b - s));
    left + right
}

/// Neumaier-compensated sum with a fixed accumulation order.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sum {
    sum: f64,
    comp: f64,
}

impl Sum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn stable_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut s = Sum::default();
    for x in items {
        s.add(x);
    }
    s.value()
}
