use bpb_core::{
    bpb_corrector, canonical_pin, check_alpha_self_dual, distance_to_pi, estimate_alpha, estimate_convexity_modulus,
    estimate_phi, estimate_phi_mut, hilbert_distance, hilbert_modulus, linf2_witness, nonsquare_phi_bound, parse_space,
    phi_lower_bound, phi_upper_bound, psi, real_line_distance, real_witness, sum1_witness, suminf_witness,
    theorem_corrector, AlphaReport, EstimatorConfig, Functional, HilbertPair, Mode, ModulusQuery, NormedSpace,
    PairState, Result as CoreResult, Vector,
};
use serde_json::{json, Map, Value};

use crate::args::{ModulusMode, WitnessKind};
use crate::error::CliError;
use crate::input::{parse_coords, parse_range};
use crate::output::{Cell, Table};

type Report = Map<String, Value>;

fn obj(v: Value) -> Report {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("report bodies are objects"),
    }
}

fn space_arg(spec: &str) -> Result<NormedSpace, CliError> {
    Ok(parse_space(spec)?)
}

fn pair_arg(space: &NormedSpace, x: &str, f: &str) -> Result<PairState, CliError> {
    let x = Vector::new(parse_coords(x)?)?;
    let f = Functional::new(parse_coords(f)?)?;
    Ok(PairState::new(space, x, f)?)
}

fn pair_json(p: &PairState) -> Value {
    json!({ "x": p.x, "f": p.f, "norm_x": p.norm_x, "norm_f": p.norm_f, "action": p.action })
}

pub fn psi_table(mu: f64, theta: f64, delta: &str) -> Result<Table, CliError> {
    let mut t = Table::new("psi", &["delta", "psi", "min_bound", "lower_bound"]);
    t.meta.insert("mu".into(), json!(mu));
    t.meta.insert("theta".into(), json!(theta));
    for d in parse_range(delta)? {
        let row = (|| -> CoreResult<Vec<Cell>> {
            let q = ModulusQuery::new(mu, theta, d)?;
            Ok(vec![
                d.into(),
                psi(&q)?.into(),
                phi_upper_bound(&q)?.into(),
                phi_lower_bound(&q)?.value.into(),
            ])
        })();
        match row {
            Ok(cells) => t.push_ok(cells),
            Err(e) => t.push_err(d, e),
        }
    }
    Ok(t)
}

pub fn bound_table(mu: f64, theta: f64, delta: &str, alpha_tilde: Option<f64>) -> Result<Table, CliError> {
    let mut t = Table::new(
        "bound",
        &[
            "delta",
            "upper_bound",
            "lower_bound",
            "lower_exact",
            "hilbert",
            "nonsquare",
        ],
    );
    t.meta.insert("mu".into(), json!(mu));
    t.meta.insert("theta".into(), json!(theta));
    if let Some(a) = alpha_tilde {
        t.meta.insert("alpha_tilde".into(), json!(a));
    }
    for d in parse_range(delta)? {
        let row = (|| -> CoreResult<Vec<Cell>> {
            let q = ModulusQuery::new(mu, theta, d)?;
            let lower = phi_lower_bound(&q)?;
            let upper = if q.regime_psi() {
                Some(phi_upper_bound(&q)?)
            } else {
                None
            };
            let nonsquare = match alpha_tilde {
                Some(a) if mu == 1.0 && theta == 1.0 => nonsquare_phi_bound(d, a).ok(),
                _ => None,
            };
            Ok(vec![
                d.into(),
                upper.into(),
                lower.value.into(),
                lower.exact.into(),
                hilbert_modulus(&q).ok().into(),
                nonsquare.into(),
            ])
        })();
        match row {
            Ok(cells) => t.push_ok(cells),
            Err(e) => t.push_err(d, e),
        }
    }
    Ok(t)
}

/// Exact distance to `Π(X)` where a closed form exists.
fn closed_distance(space: &NormedSpace, p: &PairState) -> Option<f64> {
    if space.is_real_line() {
        return real_line_distance(p.x.coords()[0], p.f.coords()[0]).ok();
    }
    if space.is_hilbert() {
        // identify the functional with its Riesz representative
        let pair = HilbertPair::new(p.x.clone(), p.f.as_vector()).ok()?;
        return Some(hilbert_distance(&pair));
    }
    None
}

pub fn distance(spec: &str, x: &str, f: &str, cfg: &EstimatorConfig) -> Result<Report, CliError> {
    let space = space_arg(spec)?;
    let p = pair_arg(&space, x, f)?;
    let w = distance_to_pi(&space, &p, cfg)?;
    let closed = closed_distance(&space, &p);
    Ok(obj(json!({
        "space": space.to_string(),
        "pair": pair_json(&p),
        "distance": w.distance,
        "witness": w,
        "resolution": cfg.resolution,
        "closed_form": closed,
        "discrepancy": closed.map(|c| w.distance - c),
    })))
}

fn is_planar_square(space: &NormedSpace) -> bool {
    let r = NormedSpace::real_line;
    [
        NormedSpace::linf(2).unwrap(),
        NormedSpace::l1(2).unwrap(),
        NormedSpace::sum1(r(), r()),
        NormedSpace::suminf(r(), r()),
    ]
    .contains(space)
}

/// Known value of the modulus for the query, if the space has one.
fn closed_modulus(space: &NormedSpace, q: &ModulusQuery) -> Option<f64> {
    if space.is_real_line() {
        return real_witness(q).ok().map(|(_, v)| v);
    }
    if space.is_hilbert() {
        return hilbert_modulus(q).ok();
    }
    if is_planar_square(space) && q.regime_psi() {
        return phi_upper_bound(q).ok();
    }
    None
}

pub fn modulus_table(
    spec: &str,
    mode: ModulusMode,
    delta: &str,
    mu: Option<f64>,
    theta: Option<f64>,
    cfg: &EstimatorConfig,
) -> Result<Table, CliError> {
    let space = space_arg(spec)?;
    let (mu, theta) = match (mode, mu, theta) {
        (ModulusMode::Mut, Some(m), Some(t)) => (m, t),
        (ModulusMode::Mut, _, _) => return Err(CliError::Usage("--mode mut needs --mu and --theta".into())),
        (_, None, None) => (1.0, 1.0),
        _ => return Err(CliError::Usage("--mu and --theta only apply to --mode mut".into())),
    };
    let mut t = Table::new(
        "modulus",
        &["delta", "estimate", "mesh_error", "sqrt_2delta", "closed_form"],
    );
    t.meta.insert("space".into(), json!(space.to_string()));
    t.meta.insert(
        "mode".into(),
        json!(match mode {
            ModulusMode::Ball => "ball",
            ModulusMode::Sphere => "sphere",
            ModulusMode::Mut => "mut",
        }),
    );
    if mode == ModulusMode::Mut {
        t.meta.insert("mu".into(), json!(mu));
        t.meta.insert("theta".into(), json!(theta));
    }
    for d in parse_range(delta)? {
        let row = (|| -> CoreResult<Vec<Cell>> {
            let q = ModulusQuery::new(mu, theta, d)?;
            let est = match mode {
                ModulusMode::Ball => estimate_phi(&space, d, Mode::Ball, cfg)?,
                ModulusMode::Sphere => estimate_phi(&space, d, Mode::Sphere, cfg)?,
                ModulusMode::Mut => estimate_phi_mut(&space, &q, cfg)?,
            };
            let closed = if mode == ModulusMode::Ball {
                None
            } else {
                closed_modulus(&space, &q)
            };
            Ok(vec![
                d.into(),
                est.value.into(),
                est.mesh_error.into(),
                (2.0 * d).sqrt().into(),
                closed.into(),
            ])
        })();
        match row {
            Ok(cells) => t.push_ok(cells),
            Err(e) => t.push_err(d, e),
        }
    }
    Ok(t)
}

fn alpha_json(r: &AlphaReport) -> Value {
    json!({ "alpha": r.alpha, "maximizer": [r.maximizer.0, r.maximizer.1], "mesh_error": r.mesh_error })
}

pub fn alpha(spec: &str, dual: bool, cfg: &EstimatorConfig) -> Result<Report, CliError> {
    let space = space_arg(spec)?;
    let mut body = obj(json!({ "space": space.to_string(), "cap": 2.0 - std::f64::consts::SQRT_2 }));
    if dual {
        let (a, b) = check_alpha_self_dual(&space, cfg)?;
        body.insert("primal".into(), alpha_json(&a));
        body.insert("dual".into(), alpha_json(&b));
        body.insert("dual_space".into(), json!(space.dual().to_string()));
        body.insert("difference".into(), json!((a.alpha - b.alpha).abs()));
    } else {
        body.insert("primal".into(), alpha_json(&estimate_alpha(&space, cfg)?));
    }
    Ok(body)
}

pub fn convexity_table(spec: &str, eps: &str, cfg: &EstimatorConfig) -> Result<Table, CliError> {
    let space = space_arg(spec)?;
    let mut t = Table::new("convexity", &["eps", "delta_x", "mesh_error", "ceiling"]);
    t.meta.insert("space".into(), json!(space.to_string()));
    for e in parse_range(eps)? {
        match estimate_convexity_modulus(&space, e, cfg) {
            Ok(r) => t.push_ok(vec![
                e.into(),
                r.delta_x.into(),
                r.mesh_error.into(),
                (1.0 - (1.0 - e * e / 4.0).max(0.0).sqrt()).into(),
            ]),
            Err(err) => t.push_err(e, err),
        }
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
pub fn corrector(
    spec: &str,
    x: &str,
    f: &str,
    delta: f64,
    k: Option<f64>,
    alpha_tilde: f64,
    alpha_dual: Option<f64>,
    cfg: &EstimatorConfig,
) -> Result<Report, CliError> {
    let space = space_arg(spec)?;
    let p = pair_arg(&space, x, f)?;
    let r = match k {
        Some(k) => bpb_corrector(&space, &p, delta, k, alpha_tilde, alpha_dual, cfg)?,
        None => theorem_corrector(&space, &p, delta, alpha_tilde, alpha_dual, cfg)?,
    };
    Ok(obj(json!({
        "space": space.to_string(),
        "pair": pair_json(&p),
        "delta": delta,
        "alpha_tilde": alpha_tilde,
        "report": r,
    })))
}

#[allow(clippy::too_many_arguments)]
pub fn witness(
    kind: WitnessKind,
    mu: f64,
    theta: f64,
    delta: f64,
    a: &str,
    b: &str,
    check: bool,
    cfg: &EstimatorConfig,
) -> Result<Report, CliError> {
    let q = ModulusQuery::new(mu, theta, delta)?;
    let (space, (p, predicted)) = match kind {
        WitnessKind::Linf2 => (NormedSpace::linf(2)?, linf2_witness(&q)?),
        WitnessKind::Real => (NormedSpace::real_line(), real_witness(&q)?),
        WitnessKind::Sum1 | WitnessKind::Suminf => {
            let (sa, sb) = (space_arg(a)?, space_arg(b)?);
            let (pa, pb) = (canonical_pin(&sa)?, canonical_pin(&sb)?);
            if kind == WitnessKind::Sum1 {
                let w = sum1_witness(&sa, &sb, &q, &pa, &pb)?;
                (NormedSpace::sum1(sa, sb), w)
            } else {
                let w = suminf_witness(&sa, &sb, &q, &pa, &pb)?;
                (NormedSpace::suminf(sa, sb), w)
            }
        }
    };
    let mut body = obj(json!({
        "space": space.to_string(),
        "query": { "mu": mu, "theta": theta, "delta": delta },
        "pair": pair_json(&p),
        "predicted": predicted,
        "residuals": {
            "norm_x": p.norm_x - mu,
            "norm_f": p.norm_f - theta,
            "action": p.action - (1.0 - delta),
        },
    }));
    if check {
        let w = distance_to_pi(&space, &p, cfg)?;
        body.insert("sampled_distance".into(), json!(w.distance));
        body.insert("discrepancy".into(), json!(w.distance - predicted));
        body.insert("witness".into(), json!(w));
    }
    Ok(body)
}
