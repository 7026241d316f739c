//! Estimators for the Bishop-Phelps-Bollobás moduli, the non-squareness
//! parameter, the modulus of convexity and the constructive corrector.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closed_form::{corrector_bounds, nonsquare_corrector_k, ModulusQuery};
use crate::config::EstimatorConfig;
use crate::error::{BpbError, Result};
use crate::optimize::{golden_min, pattern_max};
use crate::par;
use crate::pi::{hausdorff_modulus_set, Mode, PairState, PiMesh, PiWitness};
use crate::sampling::{chart_decode, chart_encode, chart_len, check_sampled_dim, planar_point, sphere_mesh, Side};
use crate::search::{sup_distance, Radius, SupEstimate};
use crate::space::NormedSpace;
use crate::vector::{Coords, Functional, Vector};

const TERMINAL_STEP: f64 = 1e-9;
const MAX_EVALS: usize = 50_000;

/// `Φ_X(μ, θ, δ)`: the supremum over `‖x‖ = μ`, `‖x*‖ = θ`, `x*(x) ≥ 1 - δ`.
pub fn estimate_phi_mut(space: &NormedSpace, q: &ModulusQuery, config: &EstimatorConfig) -> Result<SupEstimate> {
    if !q.feasible() {
        return Err(BpbError::Regime(format!(
            "need mu*theta >= 1 - delta, got mu={}, theta={}, delta={}",
            q.mu, q.theta, q.delta
        )));
    }
    sup_distance(space, q.delta, Radius::Fixed(q.mu), Radius::Fixed(q.theta), config)
}

/// `Φ_X(δ)` (ball) or `Φ_X^S(δ)` (sphere).
pub fn estimate_phi(space: &NormedSpace, delta: f64, mode: Mode, config: &EstimatorConfig) -> Result<SupEstimate> {
    hausdorff_modulus_set(space, delta, mode, config)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub alpha: f64,
    pub maximizer: (Vector, Vector),
    pub mesh_error: f64,
}

fn alpha_objective(space: &NormedSpace, x: &[f64], y: &[f64]) -> f64 {
    let s: Coords = x.iter().zip(y).map(|(a, b)| a + b).collect();
    0.5 * (space.norm_of(&s) + space.norm_of_diff(x, y))
}

/// `α(X) = 2 - sup ½(‖x + y‖ + ‖x - y‖)`.
///
/// The objective is convex in each argument, so the supremum over the ball
/// is a supremum over the sphere: all sphere-mesh pairs are scored, the best
/// is refined by pattern search, and `resolution` seeded random pairs from
/// the interior of the ball are checked against it.
pub fn estimate_alpha(space: &NormedSpace, config: &EstimatorConfig) -> Result<AlphaReport> {
    config.validate()?;
    check_sampled_dim(space)?;
    let mesh = sphere_mesh(space, Side::Primal, config.resolution)?;
    let pts = &mesh.points;
    let n = pts.len();
    let (best, _) = par::argmax(n * n, config.exec(), |i| {
        let (a, b) = (i / n, i % n);
        (a <= b).then(|| alpha_objective(space, &pts[a], &pts[b]))
    })
    .expect("sphere meshes are never empty");
    let (x0, y0) = (&pts[best / n], &pts[best % n]);

    let mut params = Vec::new();
    let mut steps = Vec::new();
    let angle_step = std::f64::consts::TAU / config.resolution as f64;
    chart_encode(x0, angle_step, &mut params, &mut steps);
    chart_encode(y0, angle_step, &mut params, &mut steps);
    let k = chart_len(space.dim());
    let decode = |p: &[f64]| -> Option<(Coords, Coords)> {
        Some((
            chart_decode(space, Side::Primal, &p[..k], x0)?,
            chart_decode(space, Side::Primal, &p[k..], y0)?,
        ))
    };
    let start = alpha_objective(space, x0, y0);
    let (p, _) = pattern_max(
        |p: &mut [f64]| decode(p).map(|(x, y)| alpha_objective(space, &x, &y)),
        params,
        start,
        &steps,
        TERMINAL_STEP,
        MAX_EVALS,
    );
    let (mut x, mut y) = decode(&p).expect("pattern search only accepts decodable points");
    let mut value = alpha_objective(space, &x, &y);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.resolution {
        let a = &pts[rng.random_range(0..n)];
        let b = &pts[rng.random_range(0..n)];
        let (ra, rb): (f64, f64) = (rng.random(), rng.random());
        let xi: Coords = a.iter().map(|c| ra * c).collect();
        let yi: Coords = b.iter().map(|c| rb * c).collect();
        let v = alpha_objective(space, &xi, &yi);
        if v > value + config.tol {
            (x, y, value) = (xi, yi, v);
        }
    }
    Ok(AlphaReport {
        alpha: 2.0 - value,
        maximizer: (Vector::from_coords(x), Vector::from_coords(y)),
        mesh_error: 2.0 * mesh.gap,
    })
}

/// `α(X)` and `α(X*)`, estimated independently.
pub fn check_alpha_self_dual(space: &NormedSpace, config: &EstimatorConfig) -> Result<(AlphaReport, AlphaReport)> {
    if space.dim() > 3 {
        return Err(BpbError::DimensionTooLarge(space.dim()));
    }
    Ok((estimate_alpha(space, config)?, estimate_alpha(&space.dual(), config)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub eps: f64,
    pub delta_x: f64,
    pub mesh_error: f64,
}

/// First point `y` on the arc from `x` (angle `a`) toward `-x`, turning in
/// direction `turn`, with `‖x - y‖ = ε`.
///
/// Along such an arc `‖x - y‖` is non-decreasing and `‖x + y‖` is
/// non-increasing, so the first crossing is the best `y` for this `x` and
/// bisection finds it.
fn first_crossing(space: &NormedSpace, a: f64, turn: f64, eps: f64) -> Coords {
    let x = planar_point(space, Side::Primal, a);
    let at = |t: f64| planar_point(space, Side::Primal, a + turn * t);
    let (mut lo, mut hi) = (0.0, std::f64::consts::PI);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if space.norm_of_diff(&x, &at(mid)) >= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    at(hi)
}

fn planar_midpoint_norm(space: &NormedSpace, a: f64, eps: f64) -> f64 {
    let x = planar_point(space, Side::Primal, a);
    [1.0, -1.0]
        .into_iter()
        .map(|turn| {
            let y = first_crossing(space, a, turn, eps);
            let s: Coords = x.iter().zip(&y).map(|(p, q)| p + q).collect();
            0.5 * space.norm_of(&s)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `δ_X(ε) = 1 - sup{‖x + y‖/2 : x, y ∈ S_X, ‖x - y‖ = ε}`.
///
/// In the plane the constraint is solved exactly along the circle; in
/// higher dimensions pairs of mesh points within a band of width twice the
/// mesh gap around `ε` are scored.
pub fn estimate_convexity_modulus(space: &NormedSpace, eps: f64, config: &EstimatorConfig) -> Result<ConvexityReport> {
    if !(eps > 0.0 && eps <= 2.0) {
        return Err(BpbError::Regime(format!("eps must lie in (0, 2], got {eps}")));
    }
    config.validate()?;
    check_sampled_dim(space)?;
    let mesh = sphere_mesh(space, Side::Primal, config.resolution)?;
    match space.dim() {
        1 => {
            if (eps - 2.0).abs() <= config.tol {
                Ok(ConvexityReport {
                    eps,
                    delta_x: 1.0,
                    mesh_error: 0.0,
                })
            } else {
                Err(BpbError::EmptyConstraintSet(format!(
                    "unit sphere of the line has no pair at distance {eps}"
                )))
            }
        }
        2 => {
            let angles = mesh.angles.as_ref().expect("planar meshes carry angles");
            let (i, mut best) = par::argmax(angles.len(), config.exec(), |i| {
                Some(planar_midpoint_norm(space, angles[i], eps))
            })
            .expect("sphere meshes are never empty");
            if let Some((lo, hi)) = mesh.bracket(i) {
                let (_, v) = golden_min(|a| -planar_midpoint_norm(space, a, eps), lo, hi, 1e-12);
                best = best.max(-v);
            }
            Ok(ConvexityReport {
                eps,
                delta_x: 1.0 - best,
                mesh_error: mesh.gap,
            })
        }
        _ => {
            let pts = &mesh.points;
            let n = pts.len();
            let band = 2.0 * mesh.gap;
            let best = par::argmax(n * n, config.exec(), |i| {
                let (a, b) = (i / n, i % n);
                if a >= b || (space.norm_of_diff(&pts[a], &pts[b]) - eps).abs() > band {
                    return None;
                }
                let s: Coords = pts[a].iter().zip(&pts[b]).map(|(p, q)| p + q).collect();
                Some(0.5 * space.norm_of(&s))
            });
            let Some((_, best)) = best else {
                return Err(BpbError::EmptyConstraintSet(format!(
                    "no mesh pair within {band} of distance {eps}; raise the resolution"
                )));
            };
            Ok(ConvexityReport {
                eps,
                delta_x: 1.0 - best,
                mesh_error: band + mesh.gap,
            })
        }
    }
}

/// A corrected pair of `Π(X)` and how it compares with the guaranteed bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectorReport {
    pub witness: PiWitness,
    pub point_bound: f64,
    pub functional_bound: f64,
    /// `point_bound - ‖x - y‖`
    pub point_slack: f64,
    /// `functional_bound - ‖x* - y*‖`
    pub functional_slack: f64,
}

/// Finds `(y, y*) ∈ Π(X)` with `‖x - y‖ ≤ δ/k` and
/// `‖x* - y*‖ ≤ 2k - (2/3)kα̃` for a unit pair with `x*(x) > 1 - δ`, for a
/// space whose dual has non-squareness parameter above `α̃`.
///
/// `alpha_dual` is that parameter if already known; otherwise it is
/// estimated. The pair minimizing the larger of the two bound ratios over
/// the sampled `Π(X)` is returned.
pub fn bpb_corrector(
    space: &NormedSpace,
    p: &PairState,
    delta: f64,
    k: f64,
    alpha_tilde: f64,
    alpha_dual: Option<f64>,
    config: &EstimatorConfig,
) -> Result<CorrectorReport> {
    config.validate()?;
    let unit = 1e-9;
    if (p.norm_x - 1.0).abs() > unit || (p.norm_f - 1.0).abs() > unit {
        return Err(BpbError::InvalidParameter(format!(
            "pair must lie on the unit spheres, got ‖x‖={}, ‖x*‖={}",
            p.norm_x, p.norm_f
        )));
    }
    if !(delta > 0.0 && delta < 2.0) || p.action <= 1.0 - delta {
        return Err(BpbError::Regime(format!(
            "need x*(x) > 1 - delta with delta in (0, 2), got x*(x)={}, delta={delta}",
            p.action
        )));
    }
    if !(k > 0.0 && k <= 0.5) {
        return Err(BpbError::Regime(format!("k must lie in (0, 1/2], got {k}")));
    }
    let alpha_dual = match alpha_dual {
        Some(a) => a,
        None => estimate_alpha(&space.dual(), config)?.alpha,
    };
    if !(alpha_tilde > 0.0 && alpha_tilde < alpha_dual) {
        return Err(BpbError::Regime(format!(
            "alpha_tilde must lie in (0, {alpha_dual}), got {alpha_tilde}"
        )));
    }
    let (point_bound, functional_bound) = corrector_bounds(delta, k, alpha_tilde);
    let mesh = PiMesh::new(space, config.resolution)?;
    let (x, f) = (p.x.coords(), p.f.coords());
    let (y, g, _) = mesh.minimize(config.exec(), |y, g| {
        (space.norm_of_diff(x, y) / point_bound).max(space.dual_norm_of_diff(f, g) / functional_bound)
    });
    let point_gap = space.norm_of_diff(x, &y);
    let functional_gap = space.dual_norm_of_diff(f, &g);
    if point_gap > point_bound + config.tol || functional_gap > functional_bound + config.tol {
        return Err(BpbError::CorrectorFailed {
            point_gap,
            point_bound,
            functional_gap,
            functional_bound,
        });
    }
    Ok(CorrectorReport {
        witness: PiWitness {
            y: Vector::from_coords(y),
            g: Functional::from_coords(g),
            distance: point_gap.max(functional_gap),
        },
        point_bound,
        functional_bound,
        point_slack: point_bound - point_gap,
        functional_slack: functional_bound - functional_gap,
    })
}

/// [`bpb_corrector`] at the step `k` where both bounds meet (`1/2` past the
/// breakpoint), which gives the non-square modulus bound.
pub fn theorem_corrector(
    space: &NormedSpace,
    p: &PairState,
    delta: f64,
    alpha_tilde: f64,
    alpha_dual: Option<f64>,
    config: &EstimatorConfig,
) -> Result<CorrectorReport> {
    let k = nonsquare_corrector_k(delta, alpha_tilde)?;
    bpb_corrector(space, p, delta, k, alpha_tilde, alpha_dual, config)
}
