//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's numerics.
#![allow(dead_code)]

use bpb_core::{EstimatorConfig, Vector};

pub const INV_PHI: f64 = 0.618_033_988_749_894_9;

pub fn psi(mu: f64, theta: f64, delta: f64) -> f64 {
    (2.0 - mu - theta + ((mu - theta).powi(2) + 8.0 * (mu * theta - 1.0 + delta)).sqrt()) / 2.0
}

pub fn min_bound(mu: f64, theta: f64, delta: f64) -> f64 {
    psi(mu, theta, delta).min(1.0 + mu).min(1.0 + theta)
}

/// Golden-section minimum of `f` on `[a, b]`.
pub fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    while b - a > 1e-13 {
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - INV_PHI * (b - a);
        d = a + INV_PHI * (b - a);
    }
    f(0.5 * (a + b)).min(f(a)).min(f(b))
}

/// Minimum of `f` on `[lo, hi]`: a grid of `n` intervals
/// followed by golden-section refinement around the best few.
pub fn grid_then_golden(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let mut vals: Vec<(f64, usize)> = (0..=n).map(|i| (f(lo + h * i as f64), i)).collect();
    vals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best = vals[0].0;
    for &(_, i) in vals.iter().take(8) {
        let a = (lo + h * (i as f64 - 1.0)).max(lo);
        let b = (lo + h * (i as f64 + 1.0)).min(hi);
        best = best.min(golden(&f, a, b));
    }
    best
}

fn e2(a: [f64; 2]) -> f64 {
    (a[0] * a[0] + a[1] * a[1]).sqrt()
}

/// `min_{|z|=1} max(|x - z|, |y - z|)` in the Euclidean plane.
pub fn hilbert_circle_min(x: [f64; 2], y: [f64; 2]) -> f64 {
    let f = |t: f64| {
        let z = [t.cos(), t.sin()];
        e2([x[0] - z[0], x[1] - z[1]]).max(e2([y[0] - z[0], y[1] - z[1]]))
    };
    grid_then_golden(f, -std::f64::consts::PI, std::f64::consts::PI, 4000)
}

fn linf(a: [f64; 2]) -> f64 {
    a[0].abs().max(a[1].abs())
}

fn l1(a: [f64; 2]) -> f64 {
    a[0].abs() + a[1].abs()
}

type Family = Box<dyn Fn(f64) -> ([f64; 2], [f64; 2])>;

/// One-parameter families covering `Π(ℓ∞²)`: `t ↦ (y(t), g(t))` on `[0, 1]`.
fn linf2_families() -> Vec<Family> {
    let mut fams: Vec<Family> = Vec::new();
    for s in [1.0, -1.0] {
        // facets x = s and y = s with their normal functionals
        fams.push(Box::new(move |t| ([s, 2.0 * t - 1.0], [s, 0.0])));
        fams.push(Box::new(move |t| ([2.0 * t - 1.0, s], [0.0, s])));
        // vertices with their dual faces
        for r in [1.0, -1.0] {
            fams.push(Box::new(move |t| ([s, r], [s * t, r * (1.0 - t)])));
        }
    }
    fams
}

/// `d_∞((x, f), Π(ℓ∞²))`, primal norm sup, dual norm sum.
pub fn linf2_pi_distance(x: [f64; 2], f: [f64; 2]) -> f64 {
    linf2_families()
        .iter()
        .map(|fam| {
            grid_then_golden(
                |t| {
                    let (y, g) = fam(t);
                    linf([x[0] - y[0], x[1] - y[1]]).max(l1([f[0] - g[0], f[1] - g[1]]))
                },
                0.0,
                1.0,
                2000,
            )
        })
        .fold(f64::INFINITY, f64::min)
}

/// `d_∞((x, f), Π(ℓ₁²))`: the families of `ℓ∞²` with roles swapped.
pub fn l12_pi_distance(x: [f64; 2], f: [f64; 2]) -> f64 {
    linf2_families()
        .iter()
        .map(|fam| {
            grid_then_golden(
                |t| {
                    let (g, y) = fam(t);
                    l1([x[0] - y[0], x[1] - y[1]]).max(linf([f[0] - g[0], f[1] - g[1]]))
                },
                0.0,
                1.0,
                2000,
            )
        })
        .fold(f64::INFINITY, f64::min)
}

/// `d_∞((x, f), Π(ℝ))` by enumerating `Π(ℝ) = {(1, 1), (-1, -1)}`.
pub fn real_pi_distance(x: f64, f: f64) -> f64 {
    [(1.0, 1.0), (-1.0, -1.0)]
        .iter()
        .map(|&(y, g): &(f64, f64)| (x - y).abs().max((f - g).abs()))
        .fold(f64::INFINITY, f64::min)
}

pub fn v2(v: &Vector) -> [f64; 2] {
    [v.coords()[0], v.coords()[1]]
}

pub fn euclid(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Estimator settings sized for the 2-D checks.
pub fn config(resolution: usize, pair_resolution: usize, refine_top: usize) -> EstimatorConfig {
    EstimatorConfig::default()
        .with_resolution(resolution)
        .with_pair_resolution(pair_resolution)
        .with_refine_top(refine_top)
}
