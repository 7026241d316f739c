//! Numerical Bishop-Phelps-Bollobás moduli for finite-dimensional real
//! normed spaces.
//!
//! A [`NormedSpace`] is a norm oracle with an exact dual norm and exact
//! supporting functionals. On top of it the crate samples the norm-attainment
//! set `Π(X)`, measures distances to it, estimates the moduli `Φ_X`,
//! `Φ_X^S` and `Φ_X(μ, θ, δ)`, the non-squareness parameter `α(X)` and the
//! modulus of convexity, and evaluates the closed-form bounds and extremal
//! constructions these estimates are checked against.
//!
//! Estimators run their index-range loops on rayon when the `parallel`
//! feature is enabled (the default) and [`EstimatorConfig::parallel`] is set;
//! results are identical either way.

pub mod closed_form;
pub mod config;
pub mod error;
pub mod moduli;
mod optimize;
pub mod par;
pub mod parse;
pub mod pi;
pub mod polytope;
pub mod sampling;
pub mod search;
pub mod space;
pub mod vector;
pub mod witness;

pub use closed_form::{
    corrector_bounds, hilbert_branch, hilbert_distance, hilbert_modulus, k_eta_auxiliaries, nonsquare_breakpoint,
    nonsquare_corrector_k, nonsquare_phi_bound, phi_lower_bound, phi_upper_bound, psi, real_line_bound,
    real_line_distance, HilbertBranch, HilbertPair, LowerBound, ModulusQuery,
};
pub use config::EstimatorConfig;
pub use error::{BpbError, Result};
pub use moduli::{
    bpb_corrector, check_alpha_self_dual, estimate_alpha, estimate_convexity_modulus, estimate_phi, estimate_phi_mut,
    theorem_corrector, AlphaReport, ConvexityReport, CorrectorReport,
};
pub use parse::parse_space;
pub use pi::{
    distance_to_pi, hausdorff_modulus_set, is_in_pi, pair_distance, sample_pi, Mode, PairState, PiMesh, PiWitness,
};
pub use polytope::Polytope;
pub use sampling::{dual_sphere_sample, sphere_sample};
pub use search::{sup_distance, Radius, SupEstimate};
pub use space::{Exponent, NormedSpace};
pub use vector::{Functional, Vector};
pub use witness::{canonical_pin, linf2_witness, real_witness, sum1_witness, suminf_witness};
