mod common;

use approx::assert_abs_diff_eq;
use bpb_core::closed_form::hilbert_bisector_value;
use bpb_core::{
    corrector_bounds, hilbert_branch, hilbert_distance, hilbert_modulus, k_eta_auxiliaries, nonsquare_breakpoint,
    nonsquare_corrector_k, nonsquare_phi_bound, phi_lower_bound, phi_upper_bound, psi, real_line_bound,
    real_line_distance, HilbertBranch, HilbertPair, ModulusQuery, Vector,
};
use proptest::prelude::*;

fn q(mu: f64, theta: f64, delta: f64) -> ModulusQuery {
    ModulusQuery::new(mu, theta, delta).unwrap()
}

fn hpair(x: [f64; 2], y: [f64; 2]) -> HilbertPair {
    HilbertPair::ordered(Vector::new(x.to_vec()).unwrap(), Vector::new(y.to_vec()).unwrap()).unwrap()
}

#[test]
fn psi_examples() {
    assert_abs_diff_eq!(psi(&q(1.0, 1.0, 0.5)).unwrap(), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(psi(&q(0.5, 0.8, 1.25)).unwrap(), 1.5, epsilon = 1e-12);
    assert_abs_diff_eq!(
        psi(&q(0.5, 0.5, 0.8)).unwrap(),
        (1.0 + 0.4f64.sqrt()) / 2.0,
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(psi(&q(0.9, 0.9, 0.4)).unwrap(), 0.748_074_069_840_786, epsilon = 1e-12);
}

#[test]
fn psi_rejects_infeasible() {
    assert!(psi(&q(0.5, 0.5, 0.5)).unwrap_err().is_regime());
}

#[test]
fn upper_bound_examples() {
    assert_abs_diff_eq!(phi_upper_bound(&q(1.0, 0.5, 1.5)).unwrap(), 1.5, epsilon = 1e-12);
    assert_abs_diff_eq!(phi_upper_bound(&q(1.0, 1.0, 0.5)).unwrap(), 1.0, epsilon = 1e-15);
    assert_abs_diff_eq!(phi_upper_bound(&q(0.5, 1.0, 1.25)).unwrap(), 1.5, epsilon = 1e-12);
    assert_abs_diff_eq!(
        psi(&q(1.0, 0.5, 1.5)).unwrap(),
        common::psi(1.0, 0.5, 1.5),
        epsilon = 1e-15
    );
}

#[test]
fn lower_bound_examples() {
    let b = phi_lower_bound(&q(0.5, 0.8, 0.6)).unwrap();
    assert_abs_diff_eq!(b.value, 0.5, epsilon = 1e-15);
    assert!(b.exact);
    assert_abs_diff_eq!(phi_lower_bound(&q(1.0, 1.0, 0.3)).unwrap().value, 0.0);
    let z = phi_lower_bound(&q(0.0, 0.7, 1.0)).unwrap();
    assert_abs_diff_eq!(z.value, 1.0, epsilon = 1e-15);
    assert!(z.exact);
    assert!(!phi_lower_bound(&q(0.9, 0.9, 0.4)).unwrap().exact);
    assert!(phi_lower_bound(&q(0.5, 0.5, 0.5)).unwrap_err().is_regime());
}

#[test]
fn k_eta_examples() {
    let (k, eta) = k_eta_auxiliaries(&q(1.0, 1.0, 0.5)).unwrap();
    assert_abs_diff_eq!(k, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(eta, 0.5, epsilon = 1e-15);
    let (k, eta) = k_eta_auxiliaries(&q(0.5, 0.8, 0.8)).unwrap();
    assert_abs_diff_eq!(k, (0.3 + 1.69f64.sqrt()) / 3.2, epsilon = 1e-15);
    assert_abs_diff_eq!(k, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(eta, 0.25, epsilon = 1e-15);
    assert!(k_eta_auxiliaries(&q(0.5, 0.8, 1.3)).unwrap_err().is_regime());
}

proptest! {
    #[test]
    fn psi_lemma_items(mu in 0.05f64..=1.0, theta in 0.05f64..=1.0, u in 0.0f64..1.0) {
        let lo = 1.0 - mu * theta;
        let delta = lo + (1.0 - lo) * u;
        prop_assume!(delta > lo);
        let p = psi(&q(mu, theta, delta)).unwrap();
        prop_assert!(p <= 1.0 + mu + 1e-12 && p <= 1.0 + theta + 1e-12);
        let c = psi(&q(mu, theta, 1.0 + theta * theta)).unwrap();
        prop_assert!((c - (1.0 + theta)).abs() <= 1e-12);
        prop_assert_eq!(psi(&q(theta, mu, delta)).unwrap(), p);
    }

    #[test]
    fn k_eta_identity(mu in 0.05f64..=1.0, theta in 0.05f64..=1.0, u in 0.0f64..1.0) {
        let lo = 1.0 - mu * theta;
        let hi = (1.0 + mu * mu).min(1.0 + theta * theta);
        let delta = lo + (hi - lo) * u;
        prop_assume!(delta > lo && delta < hi);
        let (k, eta) = k_eta_auxiliaries(&q(mu, theta, delta)).unwrap();
        let p = psi(&q(mu, theta, delta)).unwrap();
        prop_assert!(k > 0.0 && k < 1.0);
        prop_assert!((eta / k + 1.0 - mu - p).abs() <= 1e-10);
        prop_assert!((2.0 * k * theta + 1.0 - theta - p).abs() <= 1e-10);
    }

    #[test]
    fn hilbert_rotation_invariance(a in 0.0f64..=1.0, b in 0.0f64..=1.0, t in -3.2f64..3.2, r in -3.2f64..3.2) {
        let x = [a, 0.0];
        let y = [b * t.cos(), b * t.sin()];
        let rot = |v: [f64; 2]| [v[0] * r.cos() - v[1] * r.sin(), v[0] * r.sin() + v[1] * r.cos()];
        let (big, small) = if a >= b { (x, y) } else { (y, x) };
        let d0 = hilbert_distance(&hpair(big, small));
        let d1 = hilbert_distance(&hpair(rot(big), rot(small)));
        prop_assert!((d0 - d1).abs() <= 1e-12);
    }

    #[test]
    fn hilbert_distance_matches_circle_oracle(a in 0.0f64..=1.0, b in 0.0f64..=1.0, t in 0.0f64..3.2) {
        let (a, b) = (a.max(b), a.min(b));
        let x = [a, 0.0];
        let y = [b * t.cos(), b * t.sin()];
        prop_assume!(a > 0.0 && (x[0] - y[0]).hypot(x[1] - y[1]) > 1e-9);
        let d = hilbert_distance(&hpair(x, y));
        prop_assert!((d - common::hilbert_circle_min(x, y)).abs() <= 1e-7);
    }
}

#[test]
fn hilbert_distance_examples() {
    assert_abs_diff_eq!(hilbert_distance(&hpair([1.0, 0.0], [0.5, 0.0])), 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(
        hilbert_distance(&hpair([1.0, 0.0], [0.0, 1.0])),
        (2.0 - 2f64.sqrt()).sqrt(),
        epsilon = 1e-12
    );
    assert_abs_diff_eq!(hilbert_distance(&hpair([0.8, 0.0], [0.0, 0.0])), 1.0, epsilon = 1e-12);
    assert_eq!(hilbert_branch(1.0, 0.5, 0.5), HilbertBranch::Radial);
    assert_eq!(hilbert_branch(1.0, 1.0, 0.0), HilbertBranch::Bisector);
}

#[test]
fn hilbert_degenerate_pairs() {
    assert_abs_diff_eq!(hilbert_distance(&hpair([0.6, 0.0], [0.6, 0.0])), 0.4, epsilon = 1e-15);
    assert_abs_diff_eq!(hilbert_distance(&hpair([0.0, 0.0], [0.0, 0.0])), 1.0, epsilon = 1e-15);
}

#[test]
fn hilbert_branch_seam_is_continuous() {
    for i in 1..=100 {
        let a = i as f64 / 100.0;
        for j in 1..i {
            let b = a * j as f64 / i as f64;
            let ip = b * b + b * (a * a - b * b) / 2.0;
            if ip > a * b {
                continue;
            }
            let t = (ip / (a * b)).clamp(-1.0, 1.0).acos();
            let d = hilbert_distance(&hpair([a, 0.0], [b * t.cos(), b * t.sin()]));
            assert_abs_diff_eq!(d, hilbert_bisector_value(a, b, ip), epsilon = 1e-9);
            assert_abs_diff_eq!(d, 1.0 - b, epsilon = 1e-9);
        }
    }
}

#[test]
fn hilbert_modulus_examples() {
    let want = 2.0 * (0.8f64.acos() / 4.0).sin();
    assert_abs_diff_eq!(hilbert_modulus(&q(1.0, 1.0, 0.2)).unwrap(), want, epsilon = 1e-12);
    assert_abs_diff_eq!(hilbert_modulus(&q(1.0, 0.5, 0.55)).unwrap(), 0.5, epsilon = 1e-12);
    assert!(hilbert_modulus(&q(1.0, 0.5, 0.45)).unwrap_err().is_regime());
    assert!(hilbert_modulus(&q(0.5, 1.0, 0.8)).unwrap_err().is_regime());
    assert!(hilbert_modulus(&q(1.0, 1.0, 1e-9)).unwrap() < 1e-4);
}

#[test]
fn hilbert_modulus_matches_the_circle() {
    for i in 1..40 {
        let delta = i as f64 / 20.0;
        let v = hilbert_modulus(&q(1.0, 1.0, delta)).unwrap();
        assert_abs_diff_eq!(v, 2.0 * ((1.0 - delta).acos() / 4.0).sin(), epsilon = 1e-12);
    }
}

#[test]
fn real_line_examples() {
    assert_eq!(real_line_distance(1.0, 1.0).unwrap(), 0.0);
    assert_abs_diff_eq!(real_line_distance(0.5, 0.9).unwrap(), 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(real_line_distance(0.3, -0.2).unwrap(), 1.2, epsilon = 1e-15);
    assert!(real_line_distance(1.5, 0.0).is_err());
}

#[test]
fn real_line_bound_scan() {
    for i in 1..40 {
        let delta = i as f64 / 20.0;
        for a in 0..=100 {
            for b in 0..=100 {
                let (x, f) = (-1.0 + a as f64 / 50.0, -1.0 + b as f64 / 50.0);
                if x * f > 1.0 - delta {
                    let d = real_line_distance(x, f).unwrap();
                    assert!(d <= real_line_bound(x, f, delta) + 1e-15);
                    assert_eq!(d, common::real_pi_distance(x, f));
                }
            }
        }
    }
}

#[test]
fn nonsquare_examples() {
    let v = nonsquare_phi_bound(0.2, 0.5858).unwrap();
    assert_abs_diff_eq!(v, 0.4f64.sqrt() * (1.0 - 0.5858 / 3.0f64).sqrt(), epsilon = 1e-12);
    assert_abs_diff_eq!(v, 0.56734, epsilon = 5e-5);
    assert_abs_diff_eq!(nonsquare_phi_bound(0.45, 0.5858).unwrap(), 0.9, epsilon = 1e-15);
    assert_abs_diff_eq!(nonsquare_phi_bound(0.3, 1e-12).unwrap(), 0.6f64.sqrt(), epsilon = 1e-9);
    assert_abs_diff_eq!(nonsquare_breakpoint(0.5858), 0.5 - 0.5858 / 6.0, epsilon = 1e-15);
    assert!(nonsquare_phi_bound(0.5, 0.3).unwrap_err().is_regime());
    assert!(nonsquare_phi_bound(0.2, 0.7).unwrap_err().is_regime());
    for i in 1..50 {
        let delta = i as f64 / 100.0;
        for a in [0.01, 0.2, 0.4, 0.58] {
            assert!(nonsquare_phi_bound(delta, a).unwrap() < (2.0 * delta).sqrt());
        }
    }
}

#[test]
fn corrector_step_balances_bounds() {
    let (delta, a) = (0.2, 0.58);
    let k = nonsquare_corrector_k(delta, a).unwrap();
    let (b1, b2) = corrector_bounds(delta, k, a);
    assert_abs_diff_eq!(b1, b2, epsilon = 1e-12);
    assert_abs_diff_eq!(b1, nonsquare_phi_bound(delta, a).unwrap(), epsilon = 1e-12);
    assert_eq!(nonsquare_corrector_k(0.45, a).unwrap(), 0.5);
    let (b1, b2) = corrector_bounds(0.3, 0.25, 0.58);
    assert_abs_diff_eq!(b1, 1.2, epsilon = 1e-15);
    assert_abs_diff_eq!(b2, 0.5 - 0.58 / 6.0, epsilon = 1e-15);
}
