//! Command-line front end. `run` is the whole program minus process exit so
//! that tests can drive it in-process.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::classify::{check_physical, classify_family};
use crate::construct::{blend, build_family, count_interleavings, for_each_interleaving};
use crate::error::Error;
use crate::grid::{grid_search, GridConfig};
use crate::poly::Word;
use crate::presentation::Presentation;
use crate::report::{classification_report, Format};
use crate::rewrite::{is_pbw, normalize};
use crate::scalar::Scalar;
use crate::spec_file::{parse_blend_plan, parse_family_spec};
use crate::transform;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "diffalg", version, about = "Diffusion algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the PBW normal form of a word.
    Normalize {
        file: PathBuf,
        /// Whitespace-separated generator indices, e.g. "1 2 3".
        word: String,
    },
    /// Run the diamond check on every triple of generators.
    Check { file: PathBuf },
    /// Assign a PBW presentation to its family and extract parameters.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Build the presentation described by a family spec file.
    Construct {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Glue the building blocks of a plan file along its interleaving.
    Blend {
        #[arg(long)]
        plan: PathBuf,
    },
    /// List every interleaving compatible with the blocks of a plan file.
    Enumerate {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        count_only: bool,
    },
    /// Apply a generator transformation and print the result.
    Transform(TransformArgs),
    /// Sweep a coefficient grid and classify every PBW point.
    GridSearch {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Draw this many random grid points instead of the full product.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("op").required(true).args(["rescale", "permute", "mirror", "shift_c"])))]
struct TransformArgs {
    file: PathBuf,
    /// File with one scaling factor per generator.
    #[arg(long)]
    rescale: Option<PathBuf>,
    /// New position of each generator, e.g. "2 1 3".
    #[arg(long)]
    permute: Option<String>,
    #[arg(long)]
    mirror: bool,
    /// Shift a family C presentation to a homogeneous one.
    #[arg(long)]
    shift_c: bool,
}

/// Failure split by exit code.
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ScalarSyntax(_)
            | Error::ZeroDenominator(_)
            | Error::Parse { .. }
            | Error::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Domain(format!("write failed: {e}"))
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_presentation(path: &Path) -> std::result::Result<Presentation, Failure> {
    Presentation::parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the command, writes the report
/// to `out` and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DOMAIN
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Normalize { file, word } => {
            let p = read_presentation(&file)?;
            let w = Word::parse(&word, p.n())?;
            writeln!(out, "{}", normalize(&p, &w)?)?;
            Ok(EXIT_OK)
        }
        Command::Check { file } => {
            let p = read_presentation(&file)?;
            let report = is_pbw(&p);
            let verdict = if report.passed { "yes" } else { "no" };
            writeln!(out, "PBW: {verdict}, triples checked: {}", report.triples_checked)?;
            for (a, b) in &report.degenerate {
                writeln!(out, "degenerate pair: ({a},{b})")?;
            }
            for f in &report.failures {
                let (a, b, c) = f.triple;
                writeln!(out, "failing triple: ({a},{b},{c}) difference: {}", f.difference)?;
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_DOMAIN })
        }
        Command::Classify { file, format } => {
            let p = read_presentation(&file)?;
            let assignment = match classify_family(&p) {
                Ok(a) => a,
                Err(Error::NotPbw) => {
                    writeln!(out, "PBW: no")?;
                    return Ok(EXIT_DOMAIN);
                }
                Err(e) => return Err(e.into()),
            };
            let phys = check_physical(&p, &assignment.decomposition);
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Structured => Format::Structured,
            };
            out.write_all(classification_report(&assignment, &phys, format).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Construct { spec } => {
            let spec = parse_family_spec(&read(&spec)?)?;
            out.write_all(build_family(&spec)?.to_text().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Blend { plan } => {
            let plan = parse_blend_plan(&read(&plan)?)?.into_plan()?;
            out.write_all(blend(&plan)?.to_text().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { plan, count_only } => {
            let plan = parse_blend_plan(&read(&plan)?)?;
            if count_only {
                writeln!(out, "{}", count_interleavings(&plan.blocks)?)?;
            } else {
                let mut io = Ok(());
                for_each_interleaving(&plan.blocks, |labels| {
                    let line: Vec<String> = labels.iter().map(ToString::to_string).collect();
                    io = writeln!(out, "{}", line.join(" "));
                    if io.is_ok() {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(())
                    }
                })?;
                io?;
            }
            Ok(EXIT_OK)
        }
        Command::Transform(t) => {
            let p = read_presentation(&t.file)?;
            let q = if let Some(path) = t.rescale {
                let kappa = read(&path)?
                    .split_whitespace()
                    .map(str::parse::<Scalar>)
                    .collect::<crate::Result<Vec<_>>>()?;
                if kappa.len() != p.n() {
                    return Err(Failure::Usage(format!(
                        "expected {} scaling factors, got {}",
                        p.n(),
                        kappa.len()
                    )));
                }
                transform::rescale(&p, &kappa)?
            } else if let Some(sigma) = t.permute {
                let sigma = sigma
                    .split_whitespace()
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| Failure::Usage(format!("bad permutation entry `{s}`")))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                transform::permute(&p, &sigma)?
            } else if t.mirror {
                transform::mirror(&p)
            } else {
                transform::shift_c_to_d(&p)?
            };
            out.write_all(q.to_text().as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::GridSearch { n, sample, seed } => {
            if n < 2 {
                return Err(Failure::Usage("grid search needs n >= 2".into()));
            }
            let mut cfg = GridConfig::standard(n);
            cfg.sample = sample;
            cfg.seed = seed;
            if sample.is_none() && n > 3 {
                return Err(Failure::Usage(
                    "the full grid is only supported for n <= 3; pass --sample".into(),
                ));
            }
            let summary = grid_search(&cfg);
            write!(out, "{summary}")?;
            Ok(if summary.inconsistencies == 0 {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            })
        }
    }
}
