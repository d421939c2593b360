//! `graphcx`: enumeration, differentials and cohomology of graph complexes.

mod config;
mod error;
mod vector;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use graphcx::cohomology::{
    build_slice, combination, degree_basis, representative as slice_representative, slice_report, ComplexKind, Flags,
    SliceComplex, SliceSpec,
};
use rayon::prelude::*;

use config::{Config, OutputFormat, Overrides, BUDGET_ENV};
use error::CliError;
use vector::{from_ambient, Vector};

#[derive(Parser, Debug)]
#[command(name = "graphcx", version, about = "Exact computations in graph operads and graph complexes")]
struct Cli {
    /// Optional TOML file with vertex_budget, edge_budget, parallelism, output_format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    vertex_budget: Option<usize>,
    #[arg(long, global = true)]
    edge_budget: Option<usize>,
    /// Worker threads for slice assembly.
    #[arg(long, global = true)]
    parallelism: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ComplexArgs {
    /// fgc, fgc-conn, gc-conn, gc-noloop-conn, cables, polygons, twgra,
    /// conv-gra, conv-gra-conn, conv-ger, conv-ger-conn.
    #[arg(long)]
    complex: String,
    /// Operational arity for `twgra`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    valence3: bool,
    #[arg(long)]
    noloop: bool,
    #[arg(long)]
    neutral_valence3: bool,
    #[arg(long)]
    no_neutral_component: bool,
    #[arg(long)]
    arity_at_least3: bool,
}

impl ComplexArgs {
    fn kind(&self) -> Result<ComplexKind, CliError> {
        if self.complex == "twgra" && self.n.is_none() {
            return Err(CliError::Parse("twgra needs --n".into()));
        }
        Ok(ComplexKind::parse(&self.complex, self.n)?)
    }

    fn flags(&self) -> Flags {
        Flags {
            valence3: self.valence3,
            noloop: self.noloop,
            neutral_valence3: self.neutral_valence3,
            no_neutral_component: self.no_neutral_component,
            arity_at_least3: self.arity_at_least3,
        }
    }

    fn chi(&self, chi: Option<i64>) -> Result<i64, CliError> {
        let kind = self.kind()?;
        kind.forced_chi().or(chi).ok_or_else(|| CliError::Parse(format!("{kind} needs --chi")))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the basis of one degree of a slice.
    Basis {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Apply the differential to a serialized vector.
    Diff {
        #[arg(long)]
        input: PathBuf,
    },
    /// Bracket of two serialized vectors of the same kind.
    Bracket {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Cohomology table of one or more slices.
    Cohomology {
        #[command(flatten)]
        complex: ComplexArgs,
        /// Repeat for several slices, built in parallel.
        #[arg(long, allow_hyphen_values = true)]
        chi: Vec<i64>,
        /// Degree window `lo:hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
    },
    /// Cocycles spanning the cohomology in one degree.
    Representative {
        #[command(flatten)]
        complex: ComplexArgs,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Suite {
    /// The differentials square to zero on small elements.
    DSquared,
    /// The two two-point twisted graphs are closed.
    #[command(name = "appendix-d")]
    TwoPointClosed,
    /// Dimension of Ger(n) and injectivity of its embedding into Gra.
    GerDim {
        #[arg(long)]
        n: usize,
    },
    /// The Maurer-Cartan elements square to zero.
    MaurerCartan,
    /// The odd-graph classifier on squares, pentagons, cables and polygons.
    Parity,
    /// Every suite above, with Ger dimensions up to n = 5.
    All,
}

fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Parse(format!("window {s:?} is not lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn read(path: &PathBuf) -> Result<Vector, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Vector::parse(&text)
}

fn cmd_basis(cfg: &Config, c: &ComplexArgs, chi: Option<i64>, degree: i64) -> Result<String, CliError> {
    let kind = c.kind()?;
    let chi = c.chi(chi)?;
    let spec = SliceSpec::new(kind, chi, degree - 1, degree + 1).with_flags(c.flags()).with_budget(cfg.budget());
    let space = degree_basis(&spec, degree)?;
    let mut out = String::new();
    for (i, label) in space.labels.iter().enumerate() {
        let line = match cfg.output_format {
            OutputFormat::Text => format!("deg={degree}  {label}\n"),
            OutputFormat::Machine => format!("basis complex={kind} chi={chi} degree={degree} index={i} label={label}\n"),
        };
        out.push_str(&line);
    }
    Ok(out)
}

fn cmd_cohomology(cfg: &Config, c: &ComplexArgs, chis: &[i64], window: &str) -> Result<String, CliError> {
    let kind = c.kind()?;
    let (lo, hi) = parse_window(window)?;
    let chis: Vec<i64> = match kind.forced_chi() {
        Some(x) => vec![x],
        None if chis.is_empty() => return Err(CliError::Parse(format!("{kind} needs --chi"))),
        None => chis.to_vec(),
    };
    let specs: Vec<SliceSpec> =
        chis.iter().map(|&chi| SliceSpec::new(kind, chi, lo, hi).with_flags(c.flags()).with_budget(cfg.budget())).collect();
    let slices: Vec<SliceComplex> = specs.par_iter().map(build_slice).collect::<Result<_, _>>()?;
    Ok(slice_report(&slices, cfg.output_format.into()))
}

fn cmd_representative(cfg: &Config, c: &ComplexArgs, chi: Option<i64>, degree: i64) -> Result<String, CliError> {
    let kind = c.kind()?;
    let chi = c.chi(chi)?;
    let spec = SliceSpec::new(kind, chi, degree - 1, degree + 1).with_flags(c.flags()).with_budget(cfg.budget());
    let slice = build_slice(&spec)?;
    let reps = slice_representative(&slice, degree)?;
    let mut out = format!("h_dim={}\n", reps.len());
    for r in &reps {
        let v = combination(&slice, degree, r);
        out.push_str(&from_ambient(kind, degree, &v)?.to_string());
    }
    Ok(out)
}

fn cmd_verify(suite: &Suite) -> Result<String, CliError> {
    let items = match suite {
        Suite::DSquared => verify::d_squared(),
        Suite::TwoPointClosed => verify::two_point_closed(),
        Suite::GerDim { n } => verify::ger_dim(*n),
        Suite::MaurerCartan => verify::maurer_cartan(),
        Suite::Parity => verify::parity(),
        Suite::All => {
            let mut v = verify::d_squared();
            v.extend(verify::two_point_closed());
            v.extend((1..=5).flat_map(verify::ger_dim));
            v.extend(verify::maurer_cartan());
            v.extend(verify::parity());
            v
        }
    };
    let mut out = String::new();
    let mut failed = 0;
    for it in &items {
        match &it.outcome {
            Ok(d) => out.push_str(&format!("PASS {}: {d}\n", it.name)),
            Err(d) => {
                failed += 1;
                out.push_str(&format!("FAIL {}: {d}\n", it.name));
            }
        }
    }
    if failed > 0 {
        print!("{out}");
        return Err(CliError::Verify(format!("{failed} of {} checks failed", items.len())));
    }
    out.push_str(&format!("all {} checks passed\n", items.len()));
    Ok(out)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let flags = Overrides {
        vertex_budget: cli.vertex_budget,
        edge_budget: cli.edge_budget,
        parallelism: cli.parallelism,
        output_format: cli.format,
    };
    let env = std::env::var(BUDGET_ENV).ok();
    let cfg = Config::resolve(cli.config.as_deref(), env.as_deref(), &flags)?;
    // Fails only if a pool already exists, in which case that one is used.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.parallelism).build_global();
    match &cli.command {
        Command::Basis { complex, chi, degree } => cmd_basis(&cfg, complex, *chi, *degree),
        Command::Diff { input } => Ok(read(input)?.diff()?.to_string()),
        Command::Bracket { left, right } => Ok(read(left)?.bracket(&read(right)?)?.to_string()),
        Command::Cohomology { complex, chi, window } => cmd_cohomology(&cfg, complex, chi, window),
        Command::Representative { complex, chi, degree } => cmd_representative(&cfg, complex, *chi, *degree),
        Command::Verify { suite } => cmd_verify(suite),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { 3 } else { 0 };
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
