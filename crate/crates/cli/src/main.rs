use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

mod commands;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "affbuild", version, about = "Lattices over K((t)): determinantal valuations, distances and star witnesses")]
struct Cli {
    /// Base field: `rational` or `prime:p` for p in {2, 3, 5, 7, 11, 13}.
    /// Defaults to the input document's field, else rational.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of candidates examined per strategy.
    #[arg(long, global = true, default_value_t = 100_000.0)]
    budget: f64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinantal valuation of an instance.
    ComputeF {
        /// Instance file, or `-` for stdin.
        file: PathBuf,
        /// Comma-separated indices, overriding those in the file.
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
    },
    /// Coweight distance between the first two lattices of an instance.
    Distance { file: PathBuf },
    /// Searches for a lattice attaining the star identity.
    Verify {
        file: PathBuf,
        /// `close`, `apartment`, `enumerate`, `random`, or `all` to try them in turn.
        #[arg(long, default_value = "all")]
        strategy: String,
    },
    /// Value, quiver decomposition and witness for a triple between E and t⁻¹E.
    CloseCase { file: PathBuf },
    /// Witness for points of one apartment.
    Apartment { file: PathBuf },
    /// Linearized König value and representatives for a list of subspaces.
    Konig { file: PathBuf },
    /// Maximal transversal of an integer matrix with its dual certificate.
    Hungarian { file: PathBuf },
    /// Emits a random input document.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of lattices, points or subspaces.
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GenKind {
    /// Lattices with Laurent-polynomial generators, exponents in [−3, 3].
    Random,
    /// Lattices between E and t⁻¹E.
    Close,
    /// Points of a random apartment, also written out as lattices.
    Apartment,
    Subspaces,
    /// Integer matrix for `hungarian`.
    Matrix,
}

pub struct Settings {
    pub seed: u64,
    pub budget: usize,
    pub threads: usize,
}

fn read_document(path: &PathBuf) -> anyhow::Result<Value> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// The field of the run: the flag, the document's field, or rational.
fn resolve_field(flag: &Option<String>, doc: Option<&Value>) -> anyhow::Result<String> {
    let from_doc = match doc.and_then(|d| d.get("field")) {
        Some(_) => Some(affbuild::io::field_label(doc.unwrap())?),
        None => None,
    };
    match (flag, from_doc) {
        (Some(f), Some(d)) if *f != d => bail!("--field={f} but the document is over {d}"),
        (Some(f), _) => Ok(f.clone()),
        (None, Some(d)) => Ok(d),
        (None, None) => Ok("rational".into()),
    }
}

macro_rules! with_field {
    ($label:expr, $f:ident => $body:expr) => {
        match $label.as_str() {
            "rational" => {
                type $f = affbuild::Rational;
                $body
            }
            "prime:2" => {
                type $f = affbuild::Fp<2>;
                $body
            }
            "prime:3" => {
                type $f = affbuild::Fp<3>;
                $body
            }
            "prime:5" => {
                type $f = affbuild::Fp<5>;
                $body
            }
            "prime:7" => {
                type $f = affbuild::Fp<7>;
                $body
            }
            "prime:11" => {
                type $f = affbuild::Fp<11>;
                $body
            }
            "prime:13" => {
                type $f = affbuild::Fp<13>;
                $body
            }
            other => bail!("unsupported field {other:?}; expected rational or prime:p with p in {{2, 3, 5, 7, 11, 13}}"),
        }
    };
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if !(cli.budget >= 0.0 && cli.budget.is_finite()) {
        bail!("--budget must be a nonnegative number");
    }
    let settings = Settings { seed: cli.seed, budget: cli.budget as usize, threads: cli.threads.max(1) };
    match &cli.command {
        Command::Hungarian { file } => commands::hungarian(&read_document(file)?),
        Command::Gen { kind, n, k } => {
            let label = resolve_field(&cli.field, None)?;
            with_field!(label, F => commands::gen::<F>(*kind, *n, *k, &settings))
        }
        Command::ComputeF { file, indices } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::compute_f::<F>(&doc, indices.clone()))
        }
        Command::Distance { file } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::distance::<F>(&doc))
        }
        Command::Verify { file, strategy } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::verify::<F>(&doc, strategy, &settings))
        }
        Command::CloseCase { file } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::close_case::<F>(&doc))
        }
        Command::Apartment { file } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::apartment::<F>(&doc))
        }
        Command::Konig { file } => {
            let doc = read_document(file)?;
            let label = resolve_field(&cli.field, Some(&doc))?;
            with_field!(label, F => commands::konig::<F>(&doc))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"))
            } else {
                out.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
