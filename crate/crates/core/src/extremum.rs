//! Global maximization of smooth fields on the disk: a polar seeding grid
//! followed by Nelder–Mead refinement from the best local grid maxima.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::quadrature::ScalarField;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Peak {
    pub value: f64,
    pub argmax: Complex64,
    /// Outer radius of the seeding grid; beyond it the envelope is below `value`.
    pub rim_radius: f64,
    pub on_rim: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct MaximizeOptions {
    pub radial: usize,
    pub angular: usize,
    pub seeds: usize,
}

impl Default for MaximizeOptions {
    fn default() -> Self {
        MaximizeOptions {
            radial: 128,
            angular: 128,
            seeds: 8,
        }
    }
}

pub fn maximize_field<F: ScalarField + ?Sized>(field: &F, opts: MaximizeOptions) -> Peak {
    let env = field.envelope();
    let origin = Complex64::new(0.0, 0.0);
    let mut lower = field.value_at(origin, 1.0);
    // A few rings give a usable lower bound when the field vanishes at 0.
    for &r in &[0.25, 0.5, 0.7, 0.85] {
        for k in 0..16 {
            let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / 16.0);
            lower = lower.max(field.value_at(z, 1.0 - r * r));
        }
    }
    let x_rim = if lower > 0.0 && env.bound > lower {
        ((env.bound / lower).ln() / env.decay).clamp(0.5, 40.0)
    } else {
        40.0
    };
    let rim_radius = (-(-x_rim).exp_m1()).sqrt();

    // Radial grid: uniform in r up to 0.9, then uniform in x = -ln(1-r²).
    let nr = opts.radial.max(8);
    let x_switch = -(1.0f64 - 0.81).ln();
    let mut radii: Vec<(f64, f64)> = Vec::with_capacity(nr);
    if x_rim <= x_switch {
        for i in 0..nr {
            let r = rim_radius * i as f64 / (nr - 1) as f64;
            radii.push((r, 1.0 - r * r));
        }
    } else {
        let n_inner = nr / 2;
        for i in 0..n_inner {
            let r = 0.9 * i as f64 / n_inner as f64;
            radii.push((r, 1.0 - r * r));
        }
        let n_outer = nr - n_inner;
        for i in 0..n_outer {
            let x = x_switch + (x_rim - x_switch) * i as f64 / (n_outer - 1) as f64;
            radii.push(((-(-x).exp_m1()).sqrt(), (-x).exp()));
        }
    }
    let na = opts.angular.max(8);
    let grid: Vec<Vec<f64>> = radii
        .iter()
        .map(|&(r, w)| {
            (0..na)
                .map(|j| field.value_at(Complex64::from_polar(r, 2.0 * PI * j as f64 / na as f64), w))
                .collect()
        })
        .collect();

    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..radii.len() {
        for j in 0..na {
            let v = grid[i][j];
            let mut is_max = true;
            'nb: for di in [-1i64, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= radii.len() as i64 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(na as i64) as usize;
                    if grid[ii as usize][jj] > v {
                        is_max = false;
                        break 'nb;
                    }
                }
            }
            if is_max {
                candidates.push((v, i, j));
            }
            // The origin row is degenerate in θ.
            if i == 0 {
                break;
            }
        }
    }
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(opts.seeds.max(1));

    let objective = |p: [f64; 2]| -> f64 {
        let z = Complex64::new(p[0], p[1]);
        let n2 = z.norm_sqr();
        if n2 >= 1.0 {
            return f64::INFINITY;
        }
        -field.value_at(z, 1.0 - n2)
    };

    let mut best = Peak {
        value: lower.max(grid[0][0]),
        argmax: origin,
        rim_radius,
        on_rim: false,
    };
    if let Some(&(v, i, j)) = candidates.first() {
        best.value = v;
        best.argmax = Complex64::from_polar(radii[i].0, 2.0 * PI * j as f64 / na as f64);
    }
    for &(_, i, j) in &candidates {
        let r = radii[i].0;
        let theta = 2.0 * PI * j as f64 / na as f64;
        let z0 = Complex64::from_polar(r, theta);
        let dr = if i + 1 < radii.len() {
            radii[i + 1].0 - r
        } else {
            r - radii[i - 1].0
        };
        let step = dr.max(r * 2.0 * PI / na as f64).max(1e-4);
        let (p, fval) = nelder_mead(objective, [z0.re, z0.im], step, 2000);
        if -fval > best.value {
            best.value = -fval;
            best.argmax = Complex64::new(p[0], p[1]);
        }
    }
    best.on_rim = best.argmax.norm() >= rim_radius - 1e-6 && rim_radius < 1.0 - 1e-12;
    best
}

/// Plain Nelder–Mead in two dimensions; returns the best vertex and value.
pub(crate) fn nelder_mead<F: Fn([f64; 2]) -> f64>(f: F, start: [f64; 2], step: f64, max_iter: usize) -> ([f64; 2], f64) {
    let mut simplex = [
        start,
        [start[0] + step, start[1]],
        [start[0], start[1] + step],
    ];
    let mut values = simplex.map(&f);
    for _ in 0..max_iter {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let (b, m, w) = (order[0], order[1], order[2]);
        let size = dist(simplex[b], simplex[w]).max(dist(simplex[b], simplex[m]));
        let spread = (values[w] - values[b]).abs();
        if size < 1e-13 || (spread <= 1e-17 * values[b].abs().max(1e-300) && size < 1e-9) {
            break;
        }
        let centroid = [
            0.5 * (simplex[b][0] + simplex[m][0]),
            0.5 * (simplex[b][1] + simplex[m][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[w][0] - centroid[0]),
                centroid[1] + t * (simplex[w][1] - centroid[1]),
            ]
        };
        let xr = along(-1.0);
        let fr = f(xr);
        if fr < values[b] {
            let xe = along(-2.0);
            let fe = f(xe);
            if fe < fr {
                simplex[w] = xe;
                values[w] = fe;
            } else {
                simplex[w] = xr;
                values[w] = fr;
            }
        } else if fr < values[m] {
            simplex[w] = xr;
            values[w] = fr;
        } else {
            let (xc, fc) = if fr < values[w] {
                let x = along(-0.5);
                (x, f(x))
            } else {
                let x = along(0.5);
                (x, f(x))
            };
            if fc < values[w].min(fr) {
                simplex[w] = xc;
                values[w] = fc;
            } else {
                for k in [m, w] {
                    simplex[k] = [
                        simplex[b][0] + 0.5 * (simplex[k][0] - simplex[b][0]),
                        simplex[b][1] + 0.5 * (simplex[k][1] - simplex[b][1]),
                    ];
                    values[k] = f(simplex[k]);
                }
            }
        }
    }
    let mut best = 0;
    for k in 1..3 {
        if values[k] < values[best] {
            best = k;
        }
    }
    (simplex[best], values[best])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}
