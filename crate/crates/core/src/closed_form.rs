//! Closed-form moduli and bounds.
//!
//! Every radicand is passed through [`guarded_sqrt`]: regime boundaries
//! produce radicands that are zero in exact arithmetic but a few ulps
//! negative in floating point.

use serde::{Deserialize, Serialize};

use crate::error::{BpbError, Result};
use crate::vector::{dot, Vector};

/// Window used for equality tests at regime boundaries.
pub const BOUNDARY_EPS: f64 = 1e-12;

pub(crate) fn guarded_sqrt(r: f64) -> f64 {
    if r < 0.0 && r > -BOUNDARY_EPS {
        0.0
    } else {
        r.max(0.0).sqrt()
    }
}

/// Prescribed norms `μ = ‖x‖`, `θ = ‖x*‖` and slack `δ` in `x*(x) ≥ 1 - δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusQuery {
    pub mu: f64,
    pub theta: f64,
    pub delta: f64,
}

impl ModulusQuery {
    pub fn new(mu: f64, theta: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&mu) || !(0.0..=1.0).contains(&theta) {
            return Err(BpbError::Regime(format!(
                "norms must lie in [0, 1], got mu={mu}, theta={theta}"
            )));
        }
        if !(delta > 0.0 && delta < 2.0) {
            return Err(BpbError::Regime(format!("delta must lie in (0, 2), got {delta}")));
        }
        Ok(Self { mu, theta, delta })
    }

    /// `μθ > 1 - δ`: the domain of `Ψ`.
    pub fn regime_psi(&self) -> bool {
        self.mu * self.theta > 1.0 - self.delta
    }

    /// `μθ = 1 - δ`, where the lower bound is the exact modulus.
    pub fn regime_eq(&self) -> bool {
        (self.mu * self.theta - (1.0 - self.delta)).abs() <= BOUNDARY_EPS
    }

    /// `δ < 1` and `1 - δ < μθ ≤ 2(1 - δ)`: where direct-sum witnesses are sharp.
    pub fn regime_sum(&self) -> bool {
        let a = 1.0 - self.delta;
        let mt = self.mu * self.theta;
        self.delta < 1.0 && a < mt && mt <= 2.0 * a + BOUNDARY_EPS
    }

    /// `μθ ≥ 1 - δ`: the constraint set is nonempty.
    pub fn feasible(&self) -> bool {
        self.mu * self.theta >= 1.0 - self.delta - BOUNDARY_EPS
    }

    pub fn swapped(&self) -> Self {
        Self {
            mu: self.theta,
            theta: self.mu,
            delta: self.delta,
        }
    }

    fn require_psi(&self) -> Result<()> {
        if self.regime_psi() {
            Ok(())
        } else {
            Err(BpbError::Regime(format!(
                "need mu*theta > 1 - delta, got mu={}, theta={}, delta={}",
                self.mu, self.theta, self.delta
            )))
        }
    }

    fn radicand_root(&self) -> f64 {
        let d = self.mu - self.theta;
        guarded_sqrt(d * d + 8.0 * (self.mu * self.theta - 1.0 + self.delta))
    }
}

/// `Ψ(μ, θ, δ)`, the sharp general upper bound.
pub fn psi(q: &ModulusQuery) -> Result<f64> {
    q.require_psi()?;
    Ok((2.0 - (q.mu + q.theta) + q.radicand_root()) / 2.0)
}

/// `min{Ψ, 1 + μ, 1 + θ}`.
pub fn phi_upper_bound(q: &ModulusQuery) -> Result<f64> {
    Ok(psi(q)?.min(1.0 + q.mu).min(1.0 + q.theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: f64,
    /// The bound is the exact modulus (`μθ = 1 - δ`).
    pub exact: bool,
}

/// `1 - min{μ, θ}`, valid whenever the constraint set is nonempty.
pub fn phi_lower_bound(q: &ModulusQuery) -> Result<LowerBound> {
    if !q.feasible() {
        return Err(BpbError::Regime(format!(
            "need mu*theta >= 1 - delta, got mu={}, theta={}, delta={}",
            q.mu, q.theta, q.delta
        )));
    }
    Ok(LowerBound {
        value: 1.0 - q.mu.min(q.theta),
        exact: q.regime_eq(),
    })
}

/// Step size `k` and attainment gap `η` of the general bound's construction.
pub fn k_eta_auxiliaries(q: &ModulusQuery) -> Result<(f64, f64)> {
    q.require_psi()?;
    if q.theta <= 0.0 {
        return Err(BpbError::Regime("need theta > 0".into()));
    }
    let cap = (1.0 + q.mu * q.mu).min(1.0 + q.theta * q.theta);
    if q.delta >= cap {
        return Err(BpbError::Regime(format!(
            "need delta < min(1 + mu^2, 1 + theta^2) = {cap}, got {}",
            q.delta
        )));
    }
    let k = (q.theta - q.mu + q.radicand_root()) / (4.0 * q.theta);
    let eta = (q.mu * q.theta - 1.0 + q.delta) / q.theta;
    Ok((k, eta))
}

/// Split weight `(θ - μ + √R) / (4θ)` used by the extremal constructions,
/// without the `δ` cap of [`k_eta_auxiliaries`].
pub(crate) fn split_weight(q: &ModulusQuery) -> f64 {
    (q.theta - q.mu + q.radicand_root()) / (4.0 * q.theta)
}

/// Exact `d_∞((x, f), Π(ℝ))`, with `Π(ℝ) = {(1, 1), (-1, -1)}`.
pub fn real_line_distance(x: f64, f: f64) -> Result<f64> {
    if !(x.abs() <= 1.0 && f.abs() <= 1.0) {
        return Err(BpbError::InvalidParameter(format!(
            "real-line pair must lie in the unit ball, got ({x}, {f})"
        )));
    }
    let plus = (x - 1.0).abs().max((f - 1.0).abs());
    let minus = (x + 1.0).abs().max((f + 1.0).abs());
    Ok(plus.min(minus))
}

/// Upper bound on the real-line distance for pairs with `x f > 1 - δ`.
pub fn real_line_bound(x: f64, f: f64, delta: f64) -> f64 {
    let m = x.abs().min(f.abs());
    if delta <= 1.0 {
        1.0 - m
    } else {
        1.0 + m
    }
}

/// A point-functional pair of a Hilbert space, functionals identified with
/// vectors through the inner product. Stored with `‖x‖ ≥ ‖y‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertPair {
    x: Vector,
    y: Vector,
}

impl HilbertPair {
    /// Builds the pair, swapping the entries if needed so that `‖x‖ ≥ ‖y‖`.
    pub fn new(x: Vector, y: Vector) -> Result<Self> {
        let (nx, ny) = Self::check(&x, &y)?;
        Ok(if nx >= ny { Self { x, y } } else { Self { x: y, y: x } })
    }

    /// Builds the pair as given; fails if `‖x‖ < ‖y‖`.
    pub fn ordered(x: Vector, y: Vector) -> Result<Self> {
        let (nx, ny) = Self::check(&x, &y)?;
        if nx < ny {
            return Err(BpbError::InvalidParameter(format!("need ‖x‖ >= ‖y‖, got {nx} < {ny}")));
        }
        Ok(Self { x, y })
    }

    fn check(x: &Vector, y: &Vector) -> Result<(f64, f64)> {
        if x.dim() != y.dim() {
            return Err(BpbError::DimensionMismatch {
                expected: x.dim(),
                found: y.dim(),
            });
        }
        let nx = dot(&x.0, &x.0).sqrt();
        let ny = dot(&y.0, &y.0).sqrt();
        if nx > 1.0 + BOUNDARY_EPS || ny > 1.0 + BOUNDARY_EPS {
            return Err(BpbError::InvalidParameter(format!(
                "Hilbert pair must lie in the unit ball, got norms {nx}, {ny}"
            )));
        }
        Ok((nx, ny))
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn y(&self) -> &Vector {
        &self.y
    }

    /// `(‖x‖, ‖y‖, ⟨x, y⟩)`.
    pub fn gram(&self) -> (f64, f64, f64) {
        (
            dot(&self.x.0, &self.x.0).sqrt(),
            dot(&self.y.0, &self.y.0).sqrt(),
            dot(&self.x.0, &self.y.0),
        )
    }
}

/// Which formula of the Hilbert distance applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HilbertBranch {
    /// The pair is closest to `(y/‖y‖, y/‖y‖)`: distance `1 - ‖y‖`.
    Radial,
    /// The pair is closest to the equidistant sphere point.
    Bisector,
    /// `x = y`.
    Diagonal,
}

pub fn hilbert_branch(nx: f64, ny: f64, ip: f64) -> HilbertBranch {
    if ip >= ny * ny + ny * (nx * nx - ny * ny) / 2.0 - BOUNDARY_EPS {
        HilbertBranch::Radial
    } else {
        HilbertBranch::Bisector
    }
}

/// Second-branch formula `√(1 - ⟨x,y⟩ - 2λ√(‖x‖²‖y‖² - ⟨x,y⟩²))`, valid for
/// `x ≠ y`.
pub fn hilbert_bisector_value(nx: f64, ny: f64, ip: f64) -> f64 {
    let (nx2, ny2) = (nx * nx, ny * ny);
    let g = guarded_sqrt(nx2 * ny2 - ip * ip);
    let d = nx2 + ny2 - 2.0 * ip;
    let lambda = (-2.0 * g + guarded_sqrt(4.0 * d - (nx2 - ny2).powi(2))) / (2.0 * d);
    guarded_sqrt(1.0 - ip - 2.0 * lambda * g)
}

/// Exact `d_∞((x, y), Π(H))` from the Gram data of the pair.
///
/// The coincident case `x = y` is extended by its limit `|1 - ‖x‖|`.
pub fn hilbert_distance(p: &HilbertPair) -> f64 {
    if p.x == p.y {
        let (nx, _, _) = p.gram();
        return (1.0 - nx).abs();
    }
    let (nx, ny, ip) = p.gram();
    match hilbert_branch(nx, ny, ip) {
        HilbertBranch::Radial => 1.0 - ny,
        _ => hilbert_bisector_value(nx, ny, ip),
    }
}

/// Exact Hilbert-space modulus `Φ_H(μ, θ, δ)` for `μ ≥ θ`.
pub fn hilbert_modulus(q: &ModulusQuery) -> Result<f64> {
    q.require_psi()?;
    let (mu, theta, delta) = (q.mu, q.theta, q.delta);
    if mu < theta {
        return Err(BpbError::Regime(format!("need mu >= theta, got {mu} < {theta}")));
    }
    let a = 1.0 - delta;
    if a >= theta * theta + theta * (mu * mu - theta * theta) / 2.0 - BOUNDARY_EPS {
        return Ok(1.0 - theta);
    }
    let s = guarded_sqrt(mu * mu * theta * theta - a * a);
    let d = mu * mu + theta * theta - 2.0 + 2.0 * delta;
    let lambda = (-2.0 * s + guarded_sqrt(4.0 * d - (mu * mu - theta * theta).powi(2))) / (2.0 * d);
    Ok((1.0 - theta).max(guarded_sqrt(delta - 2.0 * lambda * s)))
}

/// Breakpoint `1/2 - α̃/6` between the two non-square bounds.
pub fn nonsquare_breakpoint(alpha_tilde: f64) -> f64 {
    0.5 - alpha_tilde / 6.0
}

/// Slack on the cap `α̃ ≤ 2 - √2`, so that the usual four-digit rounding
/// 0.5858 is accepted.
const ALPHA_CAP_SLACK: f64 = 1e-4;

fn check_alpha_tilde(alpha_tilde: f64) -> Result<()> {
    let cap = 2.0 - std::f64::consts::SQRT_2 + ALPHA_CAP_SLACK;
    if alpha_tilde > 0.0 && alpha_tilde <= cap {
        Ok(())
    } else {
        Err(BpbError::Regime(format!(
            "alpha_tilde must lie in (0, 2 - sqrt 2], got {alpha_tilde}"
        )))
    }
}

/// Upper bound on the spherical modulus of a space whose dual has
/// non-squareness parameter above `alpha_tilde`, for `δ ∈ (0, 1/2)`.
pub fn nonsquare_phi_bound(delta: f64, alpha_tilde: f64) -> Result<f64> {
    check_alpha_tilde(alpha_tilde)?;
    if !(delta > 0.0 && delta < 0.5) {
        return Err(BpbError::Regime(format!("delta must lie in (0, 1/2), got {delta}")));
    }
    let root = (2.0 * delta).sqrt() * (1.0 - alpha_tilde / 3.0).sqrt();
    let linear = 2.0 * delta;
    let b = nonsquare_breakpoint(alpha_tilde);
    Ok(if (delta - b).abs() <= BOUNDARY_EPS {
        root.min(linear)
    } else if delta < b {
        root
    } else {
        linear
    })
}

/// Step `k` at which the corrector's two bounds coincide (or `1/2` past the
/// breakpoint).
pub fn nonsquare_corrector_k(delta: f64, alpha_tilde: f64) -> Result<f64> {
    check_alpha_tilde(alpha_tilde)?;
    if delta < nonsquare_breakpoint(alpha_tilde) {
        Ok((delta / (2.0 - 2.0 * alpha_tilde / 3.0)).sqrt())
    } else {
        Ok(0.5)
    }
}

/// The corrector's guaranteed bounds `(δ/k, 2k - (2/3)kα̃)`.
pub fn corrector_bounds(delta: f64, k: f64, alpha_tilde: f64) -> (f64, f64) {
    (delta / k, 2.0 * k - 2.0 / 3.0 * k * alpha_tilde)
}
