use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "bpb",
    version,
    about = "Bishop-Phelps-Bollobás moduli of finite-dimensional normed spaces",
    long_about = "Evaluates closed forms and sampling estimates of Bishop-Phelps-Bollobás moduli.\n\n\
        Space specs: r:1, l1:N, l2:N, linf:N, lp:N:p=P, poly:hexagon, poly:[[x,y],...], \
        poly:@file.json, sum1(A,B), suminf(A,B).\n\
        Ranges: a single value or a:b:step, inclusive of both ends.\n\n\
        Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 parameter regime error."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Sphere samples per dimension for the Π(X) mesh
    #[arg(long, global = true, default_value_t = 1000)]
    pub resolution: usize,
    /// Coarse grid for the supremum searches
    #[arg(long, global = true, default_value_t = 48)]
    pub pair_resolution: usize,
    /// Coarse candidates refined by local search
    #[arg(long, global = true, default_value_t = 6)]
    pub refine_top: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, env = "BPB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 lets the runtime decide)
    #[arg(long, global = true, env = "BPB_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Disable data parallelism
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Table format; reports are always JSON
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to a file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModulusMode {
    Ball,
    Sphere,
    /// Prescribed norms μ, θ
    Mut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessKind {
    Linf2,
    Sum1,
    Suminf,
    Real,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Sharpness,
    Hilbert,
    Alpha,
    Nonsquare,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate Ψ(μ, θ, δ) with the upper and lower bounds
    #[command(long_about = "Tabulate Ψ(μ, θ, δ).\n\nCSV columns: delta, psi, min_bound, lower_bound, status")]
    Psi {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        delta: String,
    },
    /// Tabulate every closed-form bound that applies to (μ, θ, δ)
    #[command(
        long_about = "Tabulate the closed-form bounds.\n\nCSV columns: delta, upper_bound, lower_bound, \
            lower_exact, hilbert, nonsquare, status\n\
            hilbert is the Hilbert-space modulus when it applies; nonsquare needs --alpha-tilde and μ = θ = 1."
    )]
    Bound {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        alpha_tilde: Option<f64>,
    },
    /// Distance of a pair (x, f) to Π(X)
    Distance {
        #[arg(long)]
        space: String,
        /// Comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
    },
    /// Sampled Bishop-Phelps-Bollobás modulus over a δ range
    #[command(long_about = "Sampled Bishop-Phelps-Bollobás modulus over a δ range.\n\n\
            CSV columns: delta, estimate, mesh_error, sqrt_2delta, closed_form, status")]
    Modulus {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum, default_value = "sphere")]
        mode: ModulusMode,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        theta: Option<f64>,
    },
    /// Non-squareness parameter α(X)
    Alpha {
        #[arg(long)]
        space: String,
        /// Also estimate α of the dual space
        #[arg(long)]
        dual: bool,
    },
    /// Modulus of convexity over an ε range
    #[command(long_about = "Modulus of convexity over an ε range.\n\n\
            CSV columns: eps, delta_x, mesh_error, ceiling, status\n\
            ceiling is the Euclidean value 1 - sqrt(1 - ε²/4).")]
    Convexity {
        #[arg(long)]
        space: String,
        #[arg(long)]
        eps: String,
    },
    /// Move a unit pair into Π(X) within the corrector bounds
    Corrector {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        delta: f64,
        /// Step in (0, 1/2]; defaults to the step that balances both bounds
        #[arg(long)]
        k: Option<f64>,
        #[arg(long)]
        alpha_tilde: f64,
        /// Non-squareness of the dual, estimated when omitted
        #[arg(long)]
        alpha_dual: Option<f64>,
    },
    /// Extremal pair showing that the upper bound is sharp
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        delta: f64,
        /// First summand for sum1/suminf
        #[arg(long, default_value = "r:1")]
        a: String,
        /// Second summand for sum1/suminf
        #[arg(long, default_value = "r:1")]
        b: String,
        /// Also measure the distance to Π(X) by sampling
        #[arg(long)]
        check: bool,
    },
    /// Run a verification suite and report each check with its slack
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}
