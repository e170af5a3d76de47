//! `gerbeforge`: reports as deterministic JSON on stdout.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
//! 3 a size cap was hit.

mod battery;
mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gerbeforge::Error;
use serde_json::json;

use report::{Outcome, Report};

#[derive(Parser, Debug)]
#[command(name = "gerbeforge", version, about = "Finite group cohomology, gerbes and Clifford theory workbench")]
struct Cli {
    /// seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// human-readable output instead of one JSON line
    #[arg(long, global = true)]
    pretty: bool,
    /// record wall-clock time (makes output run-dependent)
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// H^n(G, M) for C^× or trivial finite coefficients
    Cohomology {
        #[arg(long)]
        group: String,
        /// cx, mu:N or ab:d1,d2,...
        #[arg(long, default_value = "cx")]
        coeff: String,
        /// shorthand for --coeff cx
        #[arg(long)]
        cx: bool,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// gerbes on the action groupoid Q⋉X
    Gerbes {
        #[arg(long)]
        group: String,
        /// trivial:n, regular, cosets:<selector> or JSON {"points", "perms"}
        #[arg(long)]
        action: String,
        /// count or decompose
        #[arg(long, default_value = "count")]
        mode: String,
        /// class coordinates, comma-separated (decompose only)
        #[arg(long)]
        class: Option<String>,
    },
    /// extensions A → G → Q and their graded algebras
    Extension {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "mu:2")]
        coeff: String,
        /// trivial or invert[:selector]
        #[arg(long, default_value = "trivial")]
        band: String,
        /// build, classify or center
        #[arg(long, default_value = "classify")]
        mode: String,
        #[arg(long)]
        class: Option<String>,
    },
    /// Clifford theory for K ⊲ G: orbits, stabilizer gerbes and counts
    Clifford {
        #[arg(long)]
        group: String,
        /// center, derived, whole, trivial, gens:..., members:..., normal-order:k[:i]
        #[arg(long, default_value = "center")]
        kernel: String,
    },
    /// pointed fusion data: pentagon, phi-f, alpha, rep-ext
    Fusion {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "pentagon")]
        mode: String,
        #[arg(long, default_value = "mu:2")]
        coeff: String,
        #[arg(long, default_value = "trivial")]
        band: String,
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        kernel: Option<String>,
    },
    /// mixed cocycle pairs for Q and K and their transpose
    Symmetry {
        #[arg(long)]
        q: String,
        #[arg(long)]
        k: String,
    },
    /// a named acceptance battery
    Battery { name: String },
    /// built-in groups and battery names
    Catalog,
}

fn execute(cmd: &Command, seed: u64) -> gerbeforge::Result<Outcome> {
    match cmd {
        Command::Cohomology { group, coeff, cx, degree } => {
            let c = if *cx { input::Coeff::Cx } else { input::coeff(coeff)? };
            commands::cohomology_cmd(group, &c, *degree)
        }
        Command::Gerbes { group, action, mode, class } => commands::gerbes_cmd(group, action, mode, class.as_deref()),
        Command::Extension { group, coeff, band, mode, class } => {
            commands::extension_cmd(group, &input::coeff(coeff)?, band, mode, class.as_deref())
        }
        Command::Clifford { group, kernel } => commands::clifford_cmd(group, kernel, seed),
        Command::Fusion { group, mode, coeff, band, class, kernel } => commands::fusion_cmd(&commands::FusionArgs {
            group,
            mode,
            coeff: &input::coeff(coeff)?,
            band,
            class: class.as_deref(),
            kernel: kernel.as_deref(),
            seed,
        }),
        Command::Symmetry { q, k } => commands::symmetry_cmd(q, k),
        Command::Battery { name } => battery::run(name, seed),
        Command::Catalog => Ok(Outcome::new(battery::catalog(), vec![])),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut report = Report::new(args, cli.seed);
    let start = Instant::now();
    let code = match execute(&cli.command, cli.seed) {
        Ok(out) => {
            report.results = out.results;
            report.checks = out.checks;
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            report.error = Some(json!({ "kind": error_kind(&e), "message": e.to_string() }));
            match e {
                _ if e.is_cap() => 3,
                // an internal consistency check failed mid-computation
                Error::Tolerance { .. } | Error::Convention(_) => 1,
                _ => 2,
            }
        }
    };
    if cli.timing {
        report.timing = json!({ "recorded": true, "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 });
    }
    // a closed pipe (`| head`) is not an error of ours
    let _ = writeln!(std::io::stdout(), "{}", report.render(cli.pretty));
    ExitCode::from(code)
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::CapExceeded { .. } => "cap",
        Error::Parse(_) => "parse",
        Error::InvalidGroup(_) | Error::NotLatinSquare(_) | Error::NotAssociative(..) => "invalid-group",
        Error::NotNormal | Error::NotSubgroup(_) => "subgroup",
        Error::NotCocycle { .. } => "not-cocycle",
        Error::Tolerance { .. } | Error::Convention(_) => "self-check",
        _ => "computation",
    }
}
