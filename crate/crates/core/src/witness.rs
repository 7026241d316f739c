//! Extremal pairs whose distance to `Π(X)` is known in closed form.

use crate::closed_form::{phi_upper_bound, psi, split_weight, ModulusQuery, BOUNDARY_EPS};
use crate::error::{BpbError, Result};
use crate::pi::{is_in_pi, PairState};
use crate::space::NormedSpace;
use crate::vector::{Functional, Vector};

const PIN_TOL: f64 = 1e-9;

/// Which construction [`linf2_witness`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Linf2Case {
    /// `Ψ` is the smallest of the three terms.
    Psi,
    /// `1 + θ` is the smallest.
    ThetaCap,
    /// `1 + μ` is the smallest.
    MuCap,
}

pub fn linf2_case(q: &ModulusQuery) -> Result<Linf2Case> {
    let p = psi(q)?;
    let (a, b) = (1.0 + q.mu, 1.0 + q.theta);
    Ok(if p <= a + BOUNDARY_EPS && p <= b + BOUNDARY_EPS {
        Linf2Case::Psi
    } else if b <= a {
        Linf2Case::ThetaCap
    } else {
        Linf2Case::MuCap
    })
}

fn pair(space: &NormedSpace, x: Vec<f64>, f: Vec<f64>) -> Result<PairState> {
    PairState::new(space, Vector::new(x)?, Functional::new(f)?)
}

/// Pair of `ℓ∞²` with `‖x‖ = μ`, `‖x*‖ = θ`, `x*(x) ≥ 1 - δ` at distance
/// `min{Ψ, 1 + μ, 1 + θ}` from `Π`.
pub fn linf2_witness(q: &ModulusQuery) -> Result<(PairState, f64)> {
    let predicted = phi_upper_bound(q)?;
    let space = NormedSpace::linf(2)?;
    let (mu, theta) = (q.mu, q.theta);
    let p = match linf2_case(q)? {
        Linf2Case::Psi => {
            let k = split_weight(q);
            let s = psi(q)?;
            pair(&space, vec![mu, 1.0 - s], vec![theta * (1.0 - k), theta * k])?
        }
        Linf2Case::ThetaCap => pair(&space, vec![mu, -theta], vec![0.0, theta])?,
        Linf2Case::MuCap => pair(&space, vec![mu, -mu], vec![(theta - mu) / 2.0, (theta + mu) / 2.0])?,
    };
    Ok((p, predicted))
}

/// `(e₁/‖e₁‖, J(e₁/‖e₁‖))`: for `ℓp` spaces this is `(e₁, e₁)`.
pub fn canonical_pin(space: &NormedSpace) -> Result<(Vector, Functional)> {
    let e = Vector::basis(space.dim(), 0);
    let y = e.scale(1.0 / space.norm(&e)?);
    let g = space.support_functional(&y)?;
    Ok((y, g))
}

fn check_pin(space: &NormedSpace, pin: &(Vector, Functional), name: &str) -> Result<()> {
    let p = PairState::new(space, pin.0.clone(), pin.1.clone())?;
    if is_in_pi(&p, PIN_TOL) {
        Ok(())
    } else {
        Err(BpbError::InvalidParameter(format!(
            "{name} pin is not a norm-attaining pair: ‖y‖={}, ‖g‖={}, g(y)={}",
            p.norm_x, p.norm_f, p.action
        )))
    }
}

fn require_sum_regime(q: &ModulusQuery) -> Result<()> {
    if q.regime_sum() {
        Ok(())
    } else {
        Err(BpbError::Regime(format!(
            "need delta < 1 and 1 - delta < mu*theta <= 2(1 - delta), got mu={}, theta={}, delta={}",
            q.mu, q.theta, q.delta
        )))
    }
}

/// Extremal pair of `A ⊕₁ B`, built from norm-attaining pins of `A` and `B`.
pub fn sum1_witness(
    a: &NormedSpace,
    b: &NormedSpace,
    q: &ModulusQuery,
    pin_a: &(Vector, Functional),
    pin_b: &(Vector, Functional),
) -> Result<(PairState, f64)> {
    require_sum_regime(q)?;
    check_pin(a, pin_a, "first")?;
    check_pin(b, pin_b, "second")?;
    let s = psi(q)?;
    let k = split_weight(&q.swapped());
    let x = pin_a.0.scale(q.mu * k).concat(&pin_b.0.scale(q.mu * (1.0 - k)));
    let f = pin_a.1.scale(1.0 - s).concat(&pin_b.1.scale(q.theta));
    let space = NormedSpace::sum1(a.clone(), b.clone());
    Ok((PairState::new(&space, x, f)?, s))
}

/// Extremal pair of `A ⊕∞ B`, the dual mirror of [`sum1_witness`].
pub fn suminf_witness(
    a: &NormedSpace,
    b: &NormedSpace,
    q: &ModulusQuery,
    pin_a: &(Vector, Functional),
    pin_b: &(Vector, Functional),
) -> Result<(PairState, f64)> {
    require_sum_regime(q)?;
    check_pin(a, pin_a, "first")?;
    check_pin(b, pin_b, "second")?;
    let s = psi(q)?;
    let k = split_weight(q);
    let x = pin_a.0.scale(1.0 - s).concat(&pin_b.0.scale(q.mu));
    let f = pin_a.1.scale(k * q.theta).concat(&pin_b.1.scale((1.0 - k) * q.theta));
    let space = NormedSpace::suminf(a.clone(), b.clone());
    Ok((PairState::new(&space, x, f)?, s))
}

/// Extremal pair of the real line for each range of `δ`.
pub fn real_witness(q: &ModulusQuery) -> Result<(PairState, f64)> {
    if !q.feasible() {
        return Err(BpbError::Regime(format!(
            "need mu*theta >= 1 - delta, got mu={}, theta={}, delta={}",
            q.mu, q.theta, q.delta
        )));
    }
    let (mu, theta, delta) = (q.mu, q.theta, q.delta);
    let f = if delta <= 1.0 {
        theta
    } else if delta < 1.0 + mu * theta {
        if mu <= 0.0 {
            return Err(BpbError::Regime("need mu > 0 when 1 < delta < 1 + mu*theta".into()));
        }
        (1.0 - delta) / mu
    } else {
        -theta
    };
    let predicted = if delta <= 1.0 {
        1.0 - mu.min(theta)
    } else {
        1.0 + mu.min(f.abs())
    };
    let p = pair(&NormedSpace::real_line(), vec![mu], vec![f])?;
    Ok((p, predicted))
}

/// The three identities every witness satisfies: `(‖x‖ - μ, ‖x*‖ - θ,
/// x*(x) - (1 - δ))`. The action entry is nonnegative rather than zero for
/// the `ℓ∞²` caps.
pub fn identity_residuals(p: &PairState, q: &ModulusQuery) -> (f64, f64, f64) {
    (p.norm_x - q.mu, p.norm_f - q.theta, p.action - (1.0 - q.delta))
}
