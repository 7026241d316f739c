//! Supremum of `d_∞(·, Π(X))` over a level set of pairs
//! `{(x, f) : ‖x‖ ∈ R_x, ‖f‖ ∈ R_f, f(x) ≥ 1 - δ}`.
//!
//! The search runs in three passes:
//! 1. every pair of a coarse primal × dual sphere grid (plus every scaled pair
//!    of a coarse `Π(X)` mesh, which keeps thin constraint sets nonempty) is
//!    scored against a coarse `Π(X)` mesh;
//! 2. the best few well-separated candidates are refined by pattern search on
//!    the sphere parametrization, scored against a finer refined mesh;
//! 3. the refined pairs are re-scored against the full-resolution mesh.

use serde::{Deserialize, Serialize};

use crate::config::EstimatorConfig;
use crate::error::{BpbError, Result};
use crate::optimize::pattern_max;
use crate::par::{self, Exec};
use crate::pi::{PairState, PiMesh, PiWitness};
use crate::sampling::{chart_decode, chart_encode, chart_len, check_sampled_dim, sphere_mesh, Side};
use crate::space::NormedSpace;
use crate::vector::{dot, euclid, Coords, Functional, Vector};

/// Norm constraint on one component of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Radius {
    Fixed(f64),
    /// Anywhere in `[0, 1]`.
    Free,
}

impl Radius {
    fn levels(self) -> Vec<f64> {
        match self {
            Radius::Fixed(r) => vec![r],
            Radius::Free => vec![0.0, 0.25, 0.5, 0.75, 1.0],
        }
    }
}

/// A sampled supremum together with the pair attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    /// Covering gap of the `Π(X)` mesh: the distance reported for `pair`
    /// exceeds its true distance by at most this much.
    pub mesh_error: f64,
    pub pair: PairState,
    pub witness: PiWitness,
}

const TERMINAL_STEP: f64 = 1e-6;
const MAX_EVALS: usize = 20_000;
const SEPARATION: f64 = 0.1;

#[derive(Debug, Clone)]
struct Seed {
    u: Coords,
    w: Coords,
    rx: f64,
    rf: f64,
}

/// Maps search parameters to pairs: sphere-chart coordinates for each side
/// followed by a radius for each free side.
struct Layout<'a> {
    space: &'a NormedSpace,
    rx: Radius,
    rf: Radius,
    angle_step: f64,
}

impl Layout<'_> {
    fn encode(&self, seed: &Seed) -> (Vec<f64>, Vec<f64>) {
        let mut params = Vec::new();
        let mut steps = Vec::new();
        chart_encode(&seed.u, self.angle_step, &mut params, &mut steps);
        chart_encode(&seed.w, self.angle_step, &mut params, &mut steps);
        for (r, value) in [(self.rx, seed.rx), (self.rf, seed.rf)] {
            if r == Radius::Free {
                params.push(value);
                steps.push(0.125);
            }
        }
        (params, steps)
    }

    fn decode(&self, params: &[f64], seed: &Seed) -> Option<(Coords, Coords)> {
        let k = chart_len(self.space.dim());
        let u = chart_decode(self.space, Side::Primal, &params[..k], &seed.u)?;
        let w = chart_decode(self.space, Side::Dual, &params[k..2 * k], &seed.w)?;
        let mut next = 2 * k;
        let mut radius = |r: Radius| match r {
            Radius::Fixed(v) => Some(v),
            Radius::Free => {
                let v = params[next];
                next += 1;
                (0.0..=1.0).contains(&v).then_some(v)
            }
        };
        let rx = radius(self.rx)?;
        let rf = radius(self.rf)?;
        Some((u.iter().map(|c| rx * c).collect(), w.iter().map(|c| rf * c).collect()))
    }

    /// Turns an infeasible functional `f` toward the functional of the same
    /// norm that norms `x`, stopping at the first point with `f(x) ≥ floor`,
    /// and writes its chart coordinates into `params`.
    fn repair(&self, params: &mut [f64], x: &[f64], f: &[f64], floor: f64) -> Option<Coords> {
        let dim = self.space.dim();
        let rf = self.space.dual_norm_of(f);
        if dim == 1 || rf == 0.0 || rf * self.space.norm_of(x) < floor {
            return None;
        }
        let j = self.space.support_of(x);
        let at = |s: f64| -> Option<Coords> {
            let g: Coords = f.iter().zip(&j).map(|(a, b)| (1.0 - s) * a + s * rf * b).collect();
            let n = self.space.dual_norm_of(&g);
            (n > 0.0).then(|| g.iter().map(|c| rf * c / n).collect())
        };
        let feasible = |g: &Option<Coords>| g.as_ref().is_some_and(|g| dot(x, g) >= floor);
        let (mut lo, mut hi) = (0.0, 1.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if feasible(&at(mid)) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let g = at(hi)?;
        let k = chart_len(dim);
        let mut chart = Vec::with_capacity(k);
        let mut steps = Vec::with_capacity(k);
        let unit: Coords = g.iter().map(|c| c / rf).collect();
        chart_encode(&unit, 0.0, &mut chart, &mut steps);
        params[k..2 * k].copy_from_slice(&chart);
        Some(g)
    }
}

/// Sampled `sup d_∞((x, f), Π(X))` over pairs with `‖x‖ ∈ rx`, `‖f‖ ∈ rf`
/// and `f(x) ≥ 1 - δ + delta_slack`.
pub fn sup_distance(
    space: &NormedSpace,
    delta: f64,
    rx: Radius,
    rf: Radius,
    config: &EstimatorConfig,
) -> Result<SupEstimate> {
    config.validate()?;
    check_sampled_dim(space)?;
    for r in [rx, rf] {
        if let Radius::Fixed(v) = r {
            if !(0.0..=1.0).contains(&v) {
                return Err(BpbError::Regime(format!("prescribed norm must lie in [0, 1], got {v}")));
            }
        }
    }
    let floor = 1.0 - delta + config.delta_slack - config.tol;
    let exec = config.exec();

    let coarse = PiMesh::new(space, 2 * config.pair_resolution)?.coarse();
    let us = sphere_mesh(space, Side::Primal, config.pair_resolution)?.points;
    let ws = sphere_mesh(space, Side::Dual, config.pair_resolution)?.points;
    let mut directions: Vec<(Coords, Coords)> = Vec::with_capacity(us.len() * ws.len() + coarse.len());
    for u in &us {
        for w in &ws {
            directions.push((u.clone(), w.clone()));
        }
    }
    for i in 0..coarse.len() {
        let (y, g) = coarse.entry(i);
        directions.push((y.clone(), g.clone()));
    }
    let radii: Vec<(f64, f64)> = rx
        .levels()
        .into_iter()
        .flat_map(|a| rf.levels().into_iter().map(move |b| (a, b)))
        .collect();

    let n = directions.len() * radii.len();
    let seed_at = |i: usize| {
        let (u, w) = &directions[i % directions.len()];
        let (a, b) = radii[i / directions.len()];
        Seed {
            u: u.clone(),
            w: w.clone(),
            rx: a,
            rf: b,
        }
    };
    let scores: Vec<Option<f64>> = par::map_range(n, exec, |i| {
        let (u, w) = &directions[i % directions.len()];
        let (a, b) = radii[i / directions.len()];
        if a * b * dot(u, w) < floor {
            return None;
        }
        let x: Coords = u.iter().map(|c| a * c).collect();
        let f: Coords = w.iter().map(|c| b * c).collect();
        Some(coarse.distance_coords(&x, &f, Exec::SEQUENTIAL).2)
    });
    let mut order: Vec<usize> = (0..n).filter(|&i| scores[i].is_some()).collect();
    if order.is_empty() {
        return Err(BpbError::EmptyConstraintSet(format!(
            "no sampled pair satisfies f(x) >= {} at pair resolution {}",
            1.0 - delta + config.delta_slack,
            config.pair_resolution
        )));
    }
    order.sort_by(|&i, &j| scores[j].unwrap().total_cmp(&scores[i].unwrap()).then(i.cmp(&j)));
    let mut chosen: Vec<(Seed, Coords)> = Vec::new();
    for i in order {
        let s = seed_at(i);
        let key: Coords =
            s.u.iter()
                .map(|c| s.rx * c)
                .chain(s.w.iter().map(|c| s.rf * c))
                .collect();
        let far = chosen
            .iter()
            .all(|(_, k)| euclid(&crate::vector::diff(k, &key)) > SEPARATION);
        if far {
            chosen.push((s, key));
            if chosen.len() == config.refine_top {
                break;
            }
        }
    }

    let layout = Layout {
        space,
        rx,
        rf,
        angle_step: std::f64::consts::TAU / config.pair_resolution as f64,
    };
    let mid = PiMesh::new(space, config.resolution.min(4 * config.pair_resolution))?;
    let full = PiMesh::new(space, config.resolution)?;
    let refined: Vec<(Coords, Coords, Coords, Coords, f64)> = par::map_range(chosen.len(), exec, |c| {
        let seed = &chosen[c].0;
        let score = |p: &mut [f64]| {
            let (x, mut f) = layout.decode(p, seed)?;
            if dot(&x, &f) < floor {
                f = layout.repair(p, &x, &f, floor)?;
            }
            Some(mid.distance_coords(&x, &f, Exec::SEQUENTIAL).2)
        };
        let (start, scales) = layout.encode(seed);
        let start_val = score(&mut start.clone()).unwrap_or(f64::NEG_INFINITY);
        let (best, _) = pattern_max(score, start, start_val, &scales, TERMINAL_STEP, MAX_EVALS);
        let (x, f) = layout
            .decode(&best, seed)
            .expect("pattern search only accepts decodable points");
        let (y, g, d) = full.distance_coords(&x, &f, Exec::SEQUENTIAL);
        (x, f, y, g, d)
    });
    let (best, _) = par::argmax(refined.len(), Exec::SEQUENTIAL, |i| Some(refined[i].4))
        .expect("at least one candidate was refined");
    let (x, f, y, g, value) = refined[best].clone();
    Ok(SupEstimate {
        value,
        mesh_error: full.gap(),
        pair: PairState::from_coords(space, x, f),
        witness: PiWitness {
            y: Vector::from_coords(y),
            g: Functional::from_coords(g),
            distance: value,
        },
    })
}
