use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tautring::classes::Notation;
use tautring::hom::{conjugated_hom, connected_sum_hom};
use tautring::localization::{fibre_integrate, ChartFrame};
use tautring::manifolds::{builtin, from_json, to_json};
use tautring::parse::parse_class;
use tautring::verify::run_all;
use tautring::{Error, TorusManifold};

// Output is buffered so a closed pipe cannot abort a half-written table.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        let _ = writeln!($out, $($arg)*);
    };
}

#[derive(Parser)]
#[command(
    name = "tautring",
    version,
    about = "Exact κ-class pullbacks by torus localization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a class over the fibre and rewrite the result in e, p_i.
    Localize {
        #[command(flatten)]
        manifold: ManifoldArg,
        /// Class expression, e.g. "e*p1" or "7*p1 - 7*e".
        #[arg(long)]
        class: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the generator table of the map from the tautological ring of M # N to that of N.
    Homomorphism {
        #[command(flatten)]
        manifold: ManifoldArg,
        #[arg(long, env = "TAUTRING_MAX_DEGREE", default_value_t = 16)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Conjugate the point-class images (e ↦ −e).
        #[arg(long)]
        conjugated: bool,
    },
    /// Replay every reference identity and report PASS/FAIL per check.
    VerifyPaper {
        /// Seed for the random-point oracle and random classes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a manifold in the JSON file format.
    EchoManifold {
        #[command(flatten)]
        manifold: ManifoldArg,
    },
}

#[derive(Args)]
struct ManifoldArg {
    /// `builtin:NAME` (s2, s4xs2, cp3, ...) or a path to a JSON file.
    #[arg(long)]
    manifold: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    fn notation(self) -> Notation {
        match self {
            Format::Latex => Notation::Latex,
            _ => Notation::Text,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Engine(Error),
    Io(PathBuf, std::io::Error),
    ChecksFailed(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

fn load_manifold(arg: &ManifoldArg) -> Result<TorusManifold, Failure> {
    match arg.manifold.strip_prefix("builtin:") {
        Some(name) => Ok(builtin(name)?),
        None => {
            let path = PathBuf::from(&arg.manifold);
            let text = std::fs::read_to_string(&path).map_err(|e| Failure::Io(path, e))?;
            Ok(from_json(&text)?)
        }
    }
}

fn localize(
    out: &mut String,
    m: &TorusManifold,
    class: &str,
    format: Format,
) -> Result<(), Failure> {
    let c = parse_class(class, m.rank())?;
    let integral = fibre_integrate(m, &c)?;
    let rewritten = ChartFrame::new(&m.chart_point().rep).and_then(|f| f.rewrite(&integral));
    match format {
        Format::Json => {
            let value = json!({
                "manifold": m.name(),
                "class": c.to_string(),
                "integral": integral.to_string(),
                "result": rewritten.as_ref().ok().map(|q| q.to_string()),
            });
            emit!(out, "{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text => {
            if let Ok(q) = &rewritten {
                emit!(out, "{q}");
            }
            emit!(out, "integral: {integral}");
        }
        Format::Latex => {
            if let Ok(q) = &rewritten {
                emit!(out, "{}", q.render(Notation::Latex));
            }
        }
    }
    rewritten.map(|_| ()).map_err(Failure::from)
}

fn run(out: &mut String, cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Localize {
            manifold,
            class,
            format,
        } => localize(out, &load_manifold(&manifold)?, &class, format),
        Command::Homomorphism {
            manifold,
            max_degree,
            format,
            conjugated,
        } => {
            let m = load_manifold(&manifold)?;
            let mut g = connected_sum_hom(&m, max_degree)?;
            if conjugated {
                g = conjugated_hom(&g)?;
            }
            match format {
                Format::Json => {
                    emit!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&g.to_json()).unwrap()
                    );
                }
                f => out.push_str(&g.render(f.notation())),
            }
            Ok(())
        }
        Command::VerifyPaper { seed, format } => {
            let checks = run_all(seed);
            match format {
                Format::Text => {
                    for c in &checks {
                        emit!(out, "{}", c.line());
                    }
                }
                Format::Json => {
                    emit!(out, "{}", serde_json::to_string_pretty(&checks).unwrap());
                }
                Format::Latex => {
                    emit!(out, "\\begin{{align*}}");
                    for c in &checks {
                        emit!(out, "{}", c.latex_line());
                    }
                    emit!(out, "\\end{{align*}}");
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            if format == Format::Text {
                emit!(out, "{} passed, {failed} failed", checks.len() - failed);
            }
            match failed {
                0 => Ok(()),
                n => Err(Failure::ChecksFailed(n)),
            }
        }
        Command::EchoManifold { manifold } => {
            emit!(out, "{}", to_json(&load_manifold(&manifold)?));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let mut out = String::new();
    let result = run(&mut out, Cli::parse());
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed(n)) => {
            eprintln!("{n} checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotPolynomial { .. } => 3,
                Error::NonIsolatedFixedPoint { .. } | Error::NotMaximal { .. } => 4,
                Error::NotInvariant { .. } => 5,
                _ => 2,
            })
        }
    }
}
