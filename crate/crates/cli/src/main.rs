//! `lcoalg`: run the L-coalgebra checkers and simulations from the command line.
//!
//! Exit status 0 when every required check passes, 1 when one fails, 2 on invalid input.

mod audit;
mod calculus;
mod inputs;
mod processes;
mod report;
mod structure;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::inputs::CliResult;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "lcoalg", version, about = "Check L-coalgebra axioms, Ito calculus identities and graph-driven processes")]
struct Cli {
    /// Seed for every stochastic step; required by sampling subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for floating-point comparisons of complex matrices.
    #[arg(long, global = true, default_value_t = lcoalg::cp_semigroup::CP_TOL)]
    tol: f64,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the built-in coalgebras and algebras, or show one of them.
    Catalog(structure::CatalogArgs),
    /// Check the axioms of a catalog coalgebra, a graph's Markov coalgebra, or an algebra.
    Axioms(structure::AxiomArgs),
    /// Sample walks on a graph and compare walk expansions with transition probabilities.
    Walks(structure::WalkArgs),
    /// Reading maps, map classification, the f_n complex and related Ito identities.
    Ito(calculus::ItoArgs),
    /// Forms: star product, differential, dialgebra and dendriform laws, traces.
    Forms(calculus::FormArgs),
    /// Graph-driven composition of completely positive maps.
    Cp(processes::CpArgs),
    /// Pointer products, matrix and cross-product comparisons, random products.
    Poly(processes::PolyArgs),
    /// Run a fixed or random sequence of mutation states.
    Mutate(processes::MutateArgs),
    /// Run the whole battery on built-in inputs, or print the coverage table.
    Report(audit::ReportArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Catalog(_) => "catalog",
            Command::Axioms(_) => "axioms",
            Command::Walks(_) => "walks",
            Command::Ito(_) => "ito",
            Command::Forms(_) => "forms",
            Command::Cp(_) => "cp",
            Command::Poly(_) => "poly",
            Command::Mutate(_) => "mutate",
            Command::Report(_) => "report",
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return inputs::input_error("--tol must be a non-negative number");
    }
    match &cli.command {
        Command::Catalog(a) => structure::catalog_cmd(a),
        Command::Axioms(a) => structure::axioms_cmd(a),
        Command::Walks(a) => structure::walks_cmd(a, cli.seed),
        Command::Ito(a) => calculus::ito_cmd(a, cli.seed),
        Command::Forms(a) => calculus::forms_cmd(a, cli.seed),
        Command::Cp(a) => processes::cp_cmd(a, cli.tol),
        Command::Poly(a) => processes::poly_cmd(a, cli.seed),
        Command::Mutate(a) => processes::mutate_cmd(a, cli.seed),
        Command::Report(a) => audit::report_cmd(a, cli.seed, cli.tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    match run(&cli) {
        Ok(rep) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep.to_json(name)).unwrap_or_default());
            } else {
                print!("{}", rep.to_text(name));
            }
            if rep.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("lcoalg {name}: {e}");
            ExitCode::from(2)
        }
    }
}
