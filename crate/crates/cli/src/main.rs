//! `nullplane` — command-line verifier for the null-plane quantum Poincare
//! algebras and their R-matrices.
//!
//! Exit codes: 0 when every gating check passes, 1 when at least one check
//! fails, 2 on configuration or I/O errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nullplane_core::algebras::{load, parse_presentation_file, Presentation, BUILTIN_NAMES};
use nullplane_core::contraction::CONTRACTION_NAMES;
use nullplane_core::hopf::parse_tensor;
use nullplane_core::ncpoly::parse_series;
use nullplane_core::matrixrep::{builtin_representation, dump_matrices, REPRESENTATION_BEARING};
use nullplane_core::report::{all_passed, summarize, CheckReport};
use nullplane_core::suite::{run, SuiteConfig, SUITE_NAMES};

#[derive(Parser)]
#[command(
    name = "nullplane",
    version,
    about = "Verify null-plane quantum Poincare algebras, order by order, with exact arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run check suites over the algebra catalogue.
    Verify(VerifyArgs),
    /// Print the canonical normal form of an expression.
    Expand(ExpandArgs),
    /// List the built-in algebras, suites, and contractions.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict to one algebra (a built-in name, or the name declared by
    /// the --definitions file).
    #[arg(long)]
    algebra: Option<String>,

    /// Suite to run (repeatable, comma lists accepted); every applicable
    /// suite when omitted.
    #[arg(long = "suite", value_name = "SUITE", value_delimiter = ',')]
    suites: Vec<String>,

    /// Truncation order for the symbolic checks.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=8))]
    order: u32,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (all cores when omitted).
    #[arg(long)]
    jobs: Option<usize>,

    /// Seed for the randomized associativity probe.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Add a presentation file to the catalogue for this run.
    #[arg(long, value_name = "FILE")]
    definitions: Option<PathBuf>,

    /// Write the evaluated matrix representations (generators and, for
    /// deformed algebras, the R-matrix) to this directory as JSON.
    #[arg(long, value_name = "DIR")]
    dump_matrices: Option<PathBuf>,
}

#[derive(Args)]
struct ExpandArgs {
    /// Algebra defining the normal order (a built-in name or a file path).
    #[arg(long)]
    algebra: String,

    /// Truncation order.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=8))]
    order: u32,

    /// Tensor rank of the expression; 1 is a plain algebra element.
    #[arg(long, default_value_t = 1)]
    rank: usize,

    /// Expression to normalize, e.g. "(* (gen K) (gen P+))" or
    /// "(exp (z^ 1 (ten (gen K) (gen P+))))".
    expr: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => run_verify(&args),
        Command::Expand(args) => run_expand(&args),
        Command::List => run_list(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let config = SuiteConfig {
        algebra: args.algebra.clone(),
        suites: args.suites.clone(),
        order: args.order,
        jobs: args.jobs,
        seed: args.seed,
    };
    let definitions = match &args.definitions {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read definitions file {}", path.display()))?;
            Some(parse_presentation_file(&text, Some(args.order))?)
        }
        None => None,
    };
    let reports = run(&config, definitions)?;

    if let Some(dir) = &args.dump_matrices {
        write_matrix_dumps(dir, &config)?;
    }

    let rendered = match args.format {
        Format::Text => render_text(&reports),
        Format::Json => render_json(&reports, &config)?,
    };
    print_all(&rendered)?;
    Ok(all_passed(&reports))
}

/// Write to stdout, treating a closed pipe as a normal end of output.
fn print_all(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn render_text(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&r.line());
        out.push('\n');
    }
    let s = summarize(reports);
    out.push_str(&format!(
        "{} checks: {} passed, {} failed ({} informational)\n",
        s.total, s.passed, s.failed, s.informational
    ));
    out
}

fn render_json(reports: &[CheckReport], config: &SuiteConfig) -> Result<String> {
    let generated_at_unix =
        SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let doc = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "generated_at_unix": generated_at_unix,
        "config": {
            "algebra": config.algebra,
            "suites": config.suites,
            "order": config.order,
            "seed": config.seed,
        },
        "reports": reports,
        "summary": summarize(reports),
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// One JSON file per algebra with a stored representation, named after the
/// algebra.
fn write_matrix_dumps(dir: &PathBuf, config: &SuiteConfig) -> Result<()> {
    let selected: Vec<&str> = REPRESENTATION_BEARING
        .into_iter()
        .filter(|name| config.algebra.as_deref().is_none_or(|wanted| wanted == *name))
        .collect();
    if selected.is_empty() {
        anyhow::bail!(
            "--dump-matrices: no stored representation for the selected algebra (available: {})",
            REPRESENTATION_BEARING.join(", ")
        );
    }
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create dump directory {}", dir.display()))?;
    for name in selected {
        let p = load(name, config.order)?;
        let rep = builtin_representation(&p)?;
        let text = dump_matrices(&p, &rep)?;
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, text)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn run_expand(args: &ExpandArgs) -> Result<bool> {
    let p: Presentation = load(&args.algebra, args.order)?;
    let rendered = if args.rank == 1 {
        parse_series(&args.expr, p.system())?.display()
    } else {
        parse_tensor(&args.expr, p.system(), args.rank)?.display()
    };
    print_all(&(rendered + "\n"))?;
    Ok(true)
}

fn run_list() -> Result<bool> {
    let mut out = String::from("algebras:\n");
    for name in BUILTIN_NAMES {
        out.push_str(&format!("  {name}\n"));
    }
    out.push_str("suites:\n");
    for name in SUITE_NAMES {
        out.push_str(&format!("  {name}\n"));
    }
    out.push_str("contractions:\n");
    for name in CONTRACTION_NAMES {
        out.push_str(&format!("  {name}\n"));
    }
    print_all(&out)?;
    Ok(true)
}
