mod args;
mod commands;
mod error;
mod input;
mod output;
mod verify;

use std::process::ExitCode;

use bpb_core::EstimatorConfig;
use clap::Parser;

use args::{Cli, Command, Global};
use error::CliError;
use output::{emit_report, emit_table};

fn estimator_config(g: &Global) -> Result<EstimatorConfig, CliError> {
    let mut cfg = EstimatorConfig::default()
        .with_resolution(g.resolution)
        .with_pair_resolution(g.pair_resolution)
        .with_refine_top(g.refine_top)
        .with_seed(g.seed);
    cfg.tol = g.tol;
    if g.sequential {
        cfg = cfg.sequential();
    }
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(feature = "parallel")]
fn set_threads(n: usize) -> Result<(), CliError> {
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn set_threads(_: usize) -> Result<(), CliError> {
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    set_threads(g.threads)?;
    let cfg = estimator_config(g)?;
    let out = g.output.as_deref();
    match cli.command {
        Command::Psi { mu, theta, delta } => emit_table(&commands::psi_table(mu, theta, &delta)?, g.format, out),
        Command::Bound {
            mu,
            theta,
            delta,
            alpha_tilde,
        } => emit_table(&commands::bound_table(mu, theta, &delta, alpha_tilde)?, g.format, out),
        Command::Distance { space, x, f } => {
            emit_report("distance", commands::distance(&space, &x, &f, &cfg)?, g.format, out)
        }
        Command::Modulus {
            space,
            mode,
            delta,
            mu,
            theta,
        } => emit_table(
            &commands::modulus_table(&space, mode, &delta, mu, theta, &cfg)?,
            g.format,
            out,
        ),
        Command::Alpha { space, dual } => emit_report("alpha", commands::alpha(&space, dual, &cfg)?, g.format, out),
        Command::Convexity { space, eps } => emit_table(&commands::convexity_table(&space, &eps, &cfg)?, g.format, out),
        Command::Corrector {
            space,
            x,
            f,
            delta,
            k,
            alpha_tilde,
            alpha_dual,
        } => emit_report(
            "corrector",
            commands::corrector(&space, &x, &f, delta, k, alpha_tilde, alpha_dual, &cfg)?,
            g.format,
            out,
        ),
        Command::Witness {
            kind,
            mu,
            theta,
            delta,
            a,
            b,
            check,
        } => emit_report(
            "witness",
            commands::witness(kind, mu, theta, delta, &a, &b, check, &cfg)?,
            g.format,
            out,
        ),
        Command::Verify { suite } => {
            let (table, failures) = verify::run(suite, &cfg);
            emit_table(&table, g.format, out)?;
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed(format!(
                    "{} check(s) failed: {}",
                    failures.len(),
                    failures.join(", ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bpb: {e}");
            e.exit_code()
        }
    }
}
