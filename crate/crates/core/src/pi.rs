//! The norm-attainment set `Π(X) = {(y, g) : ‖y‖ = ‖g‖ = g(y) = 1}` and the
//! distance `d_∞((x, f), Π(X)) = inf max(‖x - y‖, ‖f - g‖)`.
//!
//! `Π(X)` is sampled from both ends: every primal sphere point paired with
//! its supporting functional, and every dual sphere point paired with the
//! vector where it attains its norm. The first family covers the smooth
//! part of the ball, the second covers its corners (where a whole dual face
//! supports a single point).

use serde::{Deserialize, Serialize};

use crate::closed_form::guarded_sqrt;
use crate::config::EstimatorConfig;
use crate::error::{BpbError, Result};
use crate::optimize::golden_min;
use crate::par::{self, Exec};
use crate::sampling::{check_sampled_dim, planar_point, sphere_mesh, Side, SphereMesh};
use crate::search::{Radius, SupEstimate};
use crate::space::NormedSpace;
use crate::vector::{dot, euclid, Coords, Functional, Vector};

/// A point-functional pair with its norms and action cached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    pub x: Vector,
    pub f: Functional,
    pub norm_x: f64,
    pub norm_f: f64,
    pub action: f64,
}

impl PairState {
    pub fn new(space: &NormedSpace, x: Vector, f: Functional) -> Result<Self> {
        let norm_x = space.norm(&x)?;
        let norm_f = space.dual_norm(&f)?;
        let action = f.apply(&x);
        Ok(Self {
            x,
            f,
            norm_x,
            norm_f,
            action,
        })
    }

    pub(crate) fn from_coords(space: &NormedSpace, x: Coords, f: Coords) -> Self {
        let norm_x = space.norm_of(&x);
        let norm_f = space.dual_norm_of(&f);
        let action = dot(&x, &f);
        Self {
            x: Vector::from_coords(x),
            f: Functional::from_coords(f),
            norm_x,
            norm_f,
            action,
        }
    }
}

/// A pair of `Π(X)` together with its `d_∞` distance to a query pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiWitness {
    pub y: Vector,
    pub g: Functional,
    pub distance: f64,
}

pub fn is_in_pi(p: &PairState, tol: f64) -> bool {
    (p.norm_x - 1.0).abs() <= tol && (p.norm_f - 1.0).abs() <= tol && (p.action - 1.0).abs() <= tol
}

/// `d_∞((x, f), (y, g))`.
pub fn pair_distance(space: &NormedSpace, x: &Vector, f: &Functional, y: &Vector, g: &Functional) -> Result<f64> {
    let dx = space.norm(&(x - y))?;
    let df = space.dual_norm(&(f - g))?;
    Ok(dx.max(df))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Origin {
    side: Side,
    index: usize,
}

/// A sampled copy of `Π(X)`.
#[derive(Debug, Clone)]
pub struct PiMesh {
    space: NormedSpace,
    primal: SphereMesh,
    dual: SphereMesh,
    ys: Vec<Coords>,
    gs: Vec<Coords>,
    origin: Vec<Origin>,
    refine: bool,
}

impl PiMesh {
    pub fn new(space: &NormedSpace, resolution: usize) -> Result<Self> {
        check_sampled_dim(space)?;
        let primal = sphere_mesh(space, Side::Primal, resolution)?;
        let dual = sphere_mesh(space, Side::Dual, resolution)?;
        let mut ys = Vec::with_capacity(primal.len() + dual.len());
        let mut gs = Vec::with_capacity(primal.len() + dual.len());
        let mut origin = Vec::with_capacity(primal.len() + dual.len());
        for (i, y) in primal.points.iter().enumerate() {
            ys.push(y.clone());
            gs.push(space.support_of(y));
            origin.push(Origin {
                side: Side::Primal,
                index: i,
            });
        }
        for (i, g) in dual.points.iter().enumerate() {
            ys.push(space.dual_support_of(g));
            gs.push(g.clone());
            origin.push(Origin {
                side: Side::Dual,
                index: i,
            });
        }
        Ok(Self {
            space: space.clone(),
            primal,
            dual,
            ys,
            gs,
            origin,
            refine: true,
        })
    }

    /// Same mesh without the local refinement step; used for cheap coarse
    /// ranking.
    pub(crate) fn coarse(mut self) -> Self {
        self.refine = false;
        self
    }

    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    /// Covering estimate for the sampled set in the `d_∞` metric.
    pub fn gap(&self) -> f64 {
        self.primal.gap.max(self.dual.gap)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vector, Functional)> + '_ {
        self.ys
            .iter()
            .zip(&self.gs)
            .map(|(y, g)| (Vector::from_coords(y.clone()), Functional::from_coords(g.clone())))
    }

    pub(crate) fn entry(&self, i: usize) -> (&Coords, &Coords) {
        (&self.ys[i], &self.gs[i])
    }

    fn d_inf(&self, x: &[f64], f: &[f64], y: &[f64], g: &[f64]) -> f64 {
        let dx = self.space.norm_of_diff(x, y);
        let df = self.space.dual_norm_of_diff(f, g);
        dx.max(df)
    }

    /// The point of `Π(X)` reached by moving along one sampling family to
    /// the given angle (planar spaces only).
    fn family_point(&self, side: Side, angle: f64) -> (Coords, Coords) {
        match side {
            Side::Primal => {
                let y = planar_point(&self.space, Side::Primal, angle);
                let g = self.space.support_of(&y);
                (y, g)
            }
            Side::Dual => {
                let g = planar_point(&self.space, Side::Dual, angle);
                let y = self.space.dual_support_of(&g);
                (y, g)
            }
        }
    }

    /// Minimizes `score(y, g)` over the sample, then refines along each
    /// planar family around its best sample.
    pub(crate) fn minimize<S>(&self, exec: Exec, score: S) -> (Coords, Coords, f64)
    where
        S: Fn(&[f64], &[f64]) -> f64 + Sync + Send,
    {
        let n_primal = self.primal.len();
        let best_in = |range: std::ops::Range<usize>| {
            let start = range.start;
            par::argmin(range.len(), exec, |k| {
                let i = start + k;
                Some(score(&self.ys[i], &self.gs[i]))
            })
            .map(|(k, v)| (start + k, v))
        };
        let primal_best = best_in(0..n_primal);
        let dual_best = best_in(n_primal..self.len());
        let (mut i_best, mut v_best) = match (primal_best, dual_best) {
            (Some(a), Some(b)) if b.1 < a.1 => b,
            (Some(a), _) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("meshes are never empty"),
        };
        let mut best = (self.ys[i_best].clone(), self.gs[i_best].clone());
        if !self.refine {
            return (best.0, best.1, v_best);
        }
        for cand in [primal_best, dual_best].into_iter().flatten() {
            let o = self.origin[cand.0];
            let mesh = match o.side {
                Side::Primal => &self.primal,
                Side::Dual => &self.dual,
            };
            let Some((lo, hi)) = mesh.bracket(o.index) else {
                continue;
            };
            let (a, val) = golden_min(
                |a| {
                    let (y, g) = self.family_point(o.side, a);
                    score(&y, &g)
                },
                lo,
                hi,
                1e-13,
            );
            if val < v_best {
                v_best = val;
                best = self.family_point(o.side, a);
                i_best = cand.0;
            }
        }
        let _ = i_best;
        (best.0, best.1, v_best)
    }

    /// `d_∞((x, f), Π)` with its minimizing pair.
    pub(crate) fn distance_coords(&self, x: &[f64], f: &[f64], exec: Exec) -> (Coords, Coords, f64) {
        let (mut y, mut g, mut d) = self.minimize(exec, |y, g| self.d_inf(x, f, y, g));
        if self.refine && self.space.is_hilbert() {
            for z in hilbert_candidates(x, f) {
                let dz = self.d_inf(x, f, &z, &z);
                if dz < d {
                    d = dz;
                    y = z.clone();
                    g = z;
                }
            }
        }
        (y, g, d)
    }

    pub fn distance(&self, p: &PairState, exec: Exec) -> PiWitness {
        let (y, g, distance) = self.distance_coords(&p.x.0, &p.f.0, exec);
        PiWitness {
            y: Vector::from_coords(y),
            g: Functional::from_coords(g),
            distance,
        }
    }
}

/// Unit-sphere points that can realize the Hilbert distance of `(x, f)`:
/// the radial projections and the two sphere points equidistant from both,
/// taken in the plane spanned by the pair.
fn hilbert_candidates(x: &[f64], f: &[f64]) -> Vec<Coords> {
    let mut out = Vec::new();
    for v in [x, f] {
        let n = euclid(v);
        if n > 0.0 {
            out.push(v.iter().map(|c| c / n).collect());
        }
    }
    let d: Coords = x.iter().zip(f).map(|(a, b)| a - b).collect();
    let nd = euclid(&d);
    if nd == 0.0 {
        return out;
    }
    let e1: Coords = d.iter().map(|c| c / nd).collect();
    let c: Coords = x.iter().zip(f).map(|(a, b)| (a + b) / 2.0).collect();
    // second in-plane direction: component of c (or of a basis vector, when c
    // is parallel to e1) orthogonal to e1
    let mut seeds: Vec<Coords> = vec![c.clone()];
    for i in 0..x.len() {
        let mut e: Coords = smallvec::smallvec![0.0; x.len()];
        e[i] = 1.0;
        seeds.push(e);
    }
    let e2 = seeds.into_iter().find_map(|s| {
        let proj = dot(&s, &e1);
        let r: Coords = s.iter().zip(&e1).map(|(a, b)| a - proj * b).collect();
        let nr = euclid(&r);
        (nr > 1e-9).then(|| r.iter().map(|v| v / nr).collect::<Coords>())
    });
    if let Some(e2) = e2 {
        let b = dot(&c, &e2);
        let disc = guarded_sqrt(b * b - dot(&c, &c) + 1.0);
        for s in [-b + disc, -b - disc] {
            let z: Coords = c.iter().zip(&e2).map(|(ci, ei)| ci + s * ei).collect();
            let nz = euclid(&z);
            out.push(z.iter().map(|v| v / nz).collect());
        }
    }
    out
}

/// Sampled `Π(X)` as explicit pairs.
pub fn sample_pi(space: &NormedSpace, config: &EstimatorConfig) -> Result<Vec<(Vector, Functional)>> {
    Ok(PiMesh::new(space, config.resolution)?.pairs().collect())
}

/// Upper estimate of `d_∞((x, f), Π(X))` with the minimizing pair.
pub fn distance_to_pi(space: &NormedSpace, p: &PairState, config: &EstimatorConfig) -> Result<PiWitness> {
    config.validate()?;
    if p.x.dim() != space.dim() || p.f.dim() != space.dim() {
        return Err(BpbError::DimensionMismatch {
            expected: space.dim(),
            found: if p.x.dim() != space.dim() { p.x.dim() } else { p.f.dim() },
        });
    }
    let mesh = PiMesh::new(space, config.resolution)?;
    Ok(mesh.distance(p, config.exec()))
}

/// Which level set the supremum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `B_X × B_{X*}`
    Ball,
    /// `S_X × S_{X*}`
    Sphere,
}

/// Sampled supremum of `d_∞(·, Π(X))` over the pairs of the chosen level set
/// with `f(x) ≥ 1 - δ + slack`: an estimate of the Bishop-Phelps-Bollobás
/// modulus (ball) or its spherical version.
pub fn hausdorff_modulus_set(
    space: &NormedSpace,
    delta: f64,
    mode: Mode,
    config: &EstimatorConfig,
) -> Result<SupEstimate> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(BpbError::Regime(format!("delta must lie in (0, 2), got {delta}")));
    }
    let sphere = crate::search::sup_distance(space, delta, Radius::Fixed(1.0), Radius::Fixed(1.0), config)?;
    match mode {
        Mode::Sphere => Ok(sphere),
        Mode::Ball => {
            // the sphere pairs belong to the ball too; keeping the better of
            // both searches makes the two estimates ordered
            let ball = crate::search::sup_distance(space, delta, Radius::Free, Radius::Free, config)?;
            Ok(if ball.value >= sphere.value { ball } else { sphere })
        }
    }
}
