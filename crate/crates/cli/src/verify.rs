//! Verification suites. Each check measures a nonnegative discrepancy and
//! passes when it stays within its allowance.

use bpb_core::{
    canonical_pin, check_alpha_self_dual, distance_to_pi, estimate_alpha, estimate_phi, estimate_phi_mut,
    hilbert_distance, hilbert_modulus, linf2_witness, nonsquare_phi_bound, phi_upper_bound, psi, real_line_distance,
    real_witness, sum1_witness, suminf_witness, EstimatorConfig, Functional, HilbertPair, Mode, ModulusQuery,
    NormedSpace, PairState, Result as CoreResult, Vector,
};

use crate::args::Suite;
use crate::output::{Cell, Table};

struct Runner<'a> {
    cfg: &'a EstimatorConfig,
    table: Table,
    failures: Vec<String>,
}

impl Runner<'_> {
    fn check(&mut self, suite: &str, name: String, allowed: f64, measure: impl FnOnce() -> CoreResult<f64>) {
        let (measured, status) = match measure() {
            Ok(m) if m <= allowed => (Some(m), "pass".to_string()),
            Ok(m) => (Some(m), "fail".to_string()),
            Err(e) => (None, format!("error: {e}")),
        };
        if status != "pass" {
            self.failures.push(format!("{suite}/{name}"));
        }
        self.table.rows.push(vec![
            Cell::Text(suite.into()),
            Cell::Text(name),
            measured.into(),
            allowed.into(),
            measured.map(|m| allowed - m).into(),
            Cell::Text(status),
        ]);
    }
}

fn q(mu: f64, theta: f64, delta: f64) -> CoreResult<ModulusQuery> {
    ModulusQuery::new(mu, theta, delta)
}

fn sharpness(r: &mut Runner) {
    let linf = NormedSpace::linf(2).unwrap();
    for mu in [0.5, 0.8, 1.0] {
        for theta in [0.5, 0.8, 1.0] {
            for delta in [0.3, 0.8, 1.5] {
                let qq = q(mu, theta, delta).unwrap();
                if !qq.regime_psi() {
                    continue;
                }
                let cfg = r.cfg.clone();
                let s = linf.clone();
                r.check(
                    "sharpness",
                    format!("linf:2 witness ({mu},{theta},{delta})"),
                    5e-3,
                    || {
                        let (p, _) = linf2_witness(&qq)?;
                        Ok((distance_to_pi(&s, &p, &cfg)?.distance - phi_upper_bound(&qq)?).abs())
                    },
                );
                let s = linf.clone();
                r.check(
                    "sharpness",
                    format!("linf:2 modulus ({mu},{theta},{delta})"),
                    1e-2,
                    || Ok((estimate_phi_mut(&s, &qq, &cfg)?.value - phi_upper_bound(&qq)?).abs()),
                );
            }
        }
    }
    let real = NormedSpace::real_line();
    let pin = canonical_pin(&real).unwrap();
    let qq = q(0.9, 0.9, 0.4).unwrap();
    let cfg = r.cfg.clone();
    r.check("sharpness", "sum1(r:1,r:1) witness (0.9,0.9,0.4)".into(), 5e-3, || {
        let (p, _) = sum1_witness(&real, &real, &qq, &pin, &pin)?;
        let s = NormedSpace::sum1(real.clone(), real.clone());
        Ok((distance_to_pi(&s, &p, &cfg)?.distance - psi(&qq)?).abs())
    });
    r.check(
        "sharpness",
        "suminf(r:1,r:1) witness (0.9,0.9,0.4)".into(),
        5e-3,
        || {
            let (p, _) = suminf_witness(&real, &real, &qq, &pin, &pin)?;
            let s = NormedSpace::suminf(real.clone(), real.clone());
            Ok((distance_to_pi(&s, &p, &cfg)?.distance - psi(&qq)?).abs())
        },
    );
    for (mu, theta, delta) in [(0.5, 0.9, 0.8), (0.8, 0.9, 1.2), (0.6, 0.7, 1.9)] {
        r.check(
            "sharpness",
            format!("r:1 witness ({mu},{theta},{delta})"),
            1e-12,
            || {
                let (p, predicted) = real_witness(&q(mu, theta, delta)?)?;
                Ok((real_line_distance(p.x.coords()[0], p.f.coords()[0])? - predicted).abs())
            },
        );
    }
}

fn hilbert(r: &mut Runner) {
    let l2 = NormedSpace::l2(2).unwrap();
    let cfg = r.cfg.clone();
    for (x, y) in [
        ([1.0, 0.0], [0.5, 0.0]),
        ([1.0, 0.0], [0.0, 1.0]),
        ([0.6, 0.3], [-0.2, 0.7]),
    ] {
        r.check("hilbert", format!("distance {x:?} {y:?}"), 1e-3, || {
            let p = PairState::new(&l2, Vector::new(x.to_vec())?, Functional::new(y.to_vec())?)?;
            let closed = hilbert_distance(&HilbertPair::new(Vector::new(x.to_vec())?, Vector::new(y.to_vec())?)?);
            Ok((distance_to_pi(&l2, &p, &cfg)?.distance - closed).abs())
        });
    }
    for (mu, theta, delta) in [(1.0, 1.0, 0.2), (1.0, 0.5, 0.55), (1.0, 1.0, 0.4)] {
        r.check("hilbert", format!("modulus ({mu},{theta},{delta})"), 1e-2, || {
            let qq = q(mu, theta, delta)?;
            Ok((estimate_phi_mut(&l2, &qq, &cfg)?.value - hilbert_modulus(&qq)?).abs())
        });
    }
}

fn alpha(r: &mut Runner) {
    let cfg = r.cfg.clone();
    for spec in ["l1:2", "linf:2"] {
        r.check("alpha", format!("alpha({spec}) = 0"), 1e-9, || {
            Ok(estimate_alpha(&bpb_core::parse_space(spec)?, &cfg)?.alpha.abs())
        });
    }
    r.check("alpha", "alpha(l2:2) = 2 - sqrt 2".into(), 1e-3, || {
        Ok((estimate_alpha(&NormedSpace::l2(2)?, &cfg)?.alpha - (2.0 - std::f64::consts::SQRT_2)).abs())
    });
    for spec in ["l2:2", "poly:hexagon"] {
        r.check("alpha", format!("self-duality {spec}"), 2e-2, || {
            let (a, b) = check_alpha_self_dual(&bpb_core::parse_space(spec)?, &cfg)?;
            Ok((a.alpha - b.alpha).abs())
        });
    }
}

fn nonsquare(r: &mut Runner) {
    let l2 = NormedSpace::l2(2).unwrap();
    let cfg = r.cfg.clone();
    for delta in [0.05, 0.1, 0.2, 0.3, 0.4, 0.45] {
        r.check(
            "nonsquare",
            format!("l2:2 sphere excess at delta={delta}"),
            1e-2,
            || {
                let est = estimate_phi(&l2, delta, Mode::Sphere, &cfg)?.value;
                Ok((est - nonsquare_phi_bound(delta, 0.58)?).max(0.0))
            },
        );
    }
}

/// Runs the suite; returns the report table and the names of failed checks.
pub fn run(suite: Suite, cfg: &EstimatorConfig) -> (Table, Vec<String>) {
    let mut r = Runner {
        cfg,
        table: Table::new("verify", &["suite", "check", "measured", "allowed", "slack"]),
        failures: Vec::new(),
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Sharpness {
        sharpness(&mut r);
    }
    if all || suite == Suite::Hilbert {
        hilbert(&mut r);
    }
    if all || suite == Suite::Alpha {
        alpha(&mut r);
    }
    if all || suite == Suite::Nonsquare {
        nonsquare(&mut r);
    }
    (r.table, r.failures)
}
