use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use homlie_cli::{
    evidence_table, load_batch, parse_params, render, run, AlgebraSource, AnalysisRequest, Constructor, RunOutput, Task,
};
use homlie_core::binhom::Symmetry;
use homlie_core::FieldSpec;

#[derive(Parser)]
#[command(
    name = "homlie",
    version,
    about = "Hom-Lie structures on finite-dimensional Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Named constructor: abelian, heisenberg, sl2, witt_mod_p, zassenhaus, current, direct_sum.
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Constructor parameters as k=v, repeatable or comma-separated.
    #[arg(long, global = true)]
    params: Vec<String>,
    /// Ground field: Q or GF:p.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Algebra JSON document.
    #[arg(long, global = true, conflicts_with = "algebra")]
    input: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate budget for idempotent and square-zero searches.
    #[arg(long, global = true, default_value_t = homlie_core::jordancheck::DEFAULT_BUDGET)]
    budget: usize,
    /// Write the JSON report here, timings to <out>.timings.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text rendering.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity.
    Validate,
    /// Basis of the Hom-Lie structure space.
    Homlie,
    /// Basis of the centroid.
    Centroid,
    /// Anticommutator closure and idempotent / square-zero harvests.
    Jordan,
    /// Closure under the product twisted by a map.
    Twisted {
        /// Matrix JSON for the twisting map.
        #[arg(long)]
        alpha: PathBuf,
    },
    /// Searches for diamond and heart witnesses.
    Suits,
    /// Solution space of the cyclic bilinear equation.
    Fspace {
        /// Symmetry class of the unknown bilinear map: any, skew or sym.
        #[arg(long, default_value = "any", value_parser = parse_symmetry)]
        symmetry: Symmetry,
    },
    /// R-matrix check for a map.
    Rmatrix {
        /// Matrix JSON for the candidate map.
        #[arg(long)]
        phi: PathBuf,
    },
    /// Evidence table over a batch file.
    Table {
        /// JSON array of batch entries.
        #[arg(long)]
        batch: PathBuf,
    },
}

fn parse_symmetry(s: &str) -> Result<Symmetry, String> {
    Symmetry::parse(s).map_err(|e| e.to_string())
}

fn timings_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".timings.json");
    PathBuf::from(name)
}

fn emit(out: &RunOutput, common: &Common, text: impl Fn(&serde_json::Value) -> String) -> Result<()> {
    let bytes = out.report_bytes();
    if let Some(path) = &common.out {
        fs::write(path, &bytes).with_context(|| format!("cannot write {}", path.display()))?;
        let timings = serde_json::to_string_pretty(&out.timings)? + "\n";
        let tp = timings_path(path);
        fs::write(&tp, timings).with_context(|| format!("cannot write {}", tp.display()))?;
    }
    if common.json {
        print!("{bytes}");
    } else {
        print!("{}", text(&out.report));
    }
    Ok(())
}

fn request(cli: &Cli) -> Result<AnalysisRequest> {
    let c = &cli.common;
    let source = match (&c.input, &c.algebra) {
        (Some(p), _) => {
            anyhow::ensure!(c.params.is_empty(), "--params applies to --algebra, not --input");
            AlgebraSource::File(p.clone())
        }
        (None, Some(name)) => AlgebraSource::Constructor(Constructor::new(name, parse_params(&c.params)?)?),
        (None, None) => anyhow::bail!("pass --algebra <name> or --input <file>"),
    };
    let task = match &cli.command {
        Command::Validate => Task::Validate,
        Command::Homlie => Task::Homlie,
        Command::Centroid => Task::Centroid,
        Command::Jordan => Task::Jordan,
        Command::Twisted { .. } => Task::Twisted,
        Command::Suits => Task::Suits,
        Command::Fspace { .. } => Task::Fspace,
        Command::Rmatrix { .. } => Task::Rmatrix,
        Command::Table { .. } => unreachable!("handled separately"),
    };
    let mut req = AnalysisRequest::new(source, vec![task]);
    req.field = c.field;
    req.seed = c.seed;
    req.budget = c.budget;
    match &cli.command {
        Command::Twisted { alpha } => req.alpha = Some(alpha.clone()),
        Command::Fspace { symmetry } => req.symmetry = *symmetry,
        Command::Rmatrix { phi } => req.phi = Some(phi.clone()),
        _ => {}
    }
    Ok(req)
}

fn main_inner(cli: Cli) -> Result<bool> {
    let out = if let Command::Table { batch } = &cli.command {
        let specs = load_batch(batch)?;
        let out = evidence_table(&specs, cli.common.seed, cli.common.budget);
        emit(&out, &cli.common, render::table_text)?;
        out
    } else {
        let out = run(&request(&cli)?)?;
        emit(&out, &cli.common, render::report_text)?;
        out
    };
    Ok(out.completed)
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
