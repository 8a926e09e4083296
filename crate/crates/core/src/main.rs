use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use finmod::corpus::{augment_with_generated, builtin_corpus, load_dir, load_path, CorpusEntry};
use finmod::predicates::Fault;
use finmod::report::{
    analyze_report, certificates_text, classify_report, lattice_dump, parse_generators, supplements_report, Format,
};
use finmod::structure::SupplementKind;
use finmod::suite::{run_suite, SuiteConfig};
use finmod::{Bounds, Error};

/// Exhaustive analysis of finite modules over finite rings.
#[derive(Parser)]
#[command(name = "finmod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Text => Format::Text,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Supplement,
    Delta,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    InvertSingular,
    InvertSmall,
    InvertDeltaSmall,
    InvertEssential,
    InvertCoclosed,
    InvertDeltaCoclosed,
    InvertProjectiveSemisimple,
    InvertProjective,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Self {
        match f {
            FaultArg::InvertSingular => Fault::InvertSingular,
            FaultArg::InvertSmall => Fault::InvertSmall,
            FaultArg::InvertDeltaSmall => Fault::InvertDeltaSmall,
            FaultArg::InvertEssential => Fault::InvertEssential,
            FaultArg::InvertCoclosed => Fault::InvertCoclosed,
            FaultArg::InvertDeltaCoclosed => Fault::InvertDeltaCoclosed,
            FaultArg::InvertProjectiveSemisimple => Fault::InvertProjectiveSemisimple,
            FaultArg::InvertProjective => Fault::InvertProjective,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Fundamental submodules, classification and predicate matrix per module.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Submodule lattice of one module.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Supplement certificates of the submodule generated by `--sub`.
    Supplements {
        file: PathBuf,
        #[arg(long)]
        module: String,
        /// Generators as coefficient lists, e.g. "1,0;0,1".
        #[arg(long, allow_hyphen_values = true)]
        sub: String,
        /// Only this kind; all kinds by default.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Classification record of one module.
    Classify {
        file: PathBuf,
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Built-in corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run the theorem suite.
    Suite {
        /// `builtin` or a directory of instance files.
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
        #[arg(long)]
        max_ring_size: Option<usize>,
        #[arg(long)]
        max_module_size: Option<usize>,
        /// Adds seeded generated modules of order at most 16 to each entry.
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt one predicate, to replay fault-injection runs.
        #[arg(long, value_enum)]
        fault: Option<FaultArg>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Entry names, module names and tags.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: OutFormat,
    },
    /// Write each entry as `<dir>/<n>.json`.
    Export { dir: PathBuf },
}

enum Failure {
    Checks,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn emit<T: Serialize>(format: OutFormat, value: &T, text: impl FnOnce(&T) -> String) {
    match format {
        OutFormat::Text => print!("{}", text(value)),
        OutFormat::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
    }
}

fn load_corpus(source: &str, bounds: &Bounds) -> Result<Vec<CorpusEntry>, Error> {
    if source == "builtin" {
        Ok(builtin_corpus())
    } else {
        load_dir(Path::new(source), bounds)
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let bounds = Bounds::default();
    match cli.command {
        Command::Validate { file } => {
            let e = load_path(&file, &bounds)?;
            println!("ok: ring {} of order {}, {} module(s)", e.name(), e.ring.size(), e.modules.len());
            for m in &e.modules {
                println!("  {} (order {})", m.name(), m.size());
            }
        }
        Command::Analyze { file, format } => {
            let e = load_path(&file, &bounds)?;
            print!("{}", analyze_report(&e, format.into(), &bounds)?);
            if matches!(format, OutFormat::Json) {
                println!();
            }
        }
        Command::Lattice { file, module: name, format } => {
            let e = load_path(&file, &bounds)?;
            let dump = lattice_dump(e.module(&name)?, &bounds)?;
            emit(format, &dump, |d| d.to_text());
        }
        Command::Supplements {
            file,
            module: name,
            sub,
            kind,
            format,
        } => {
            let e = load_path(&file, &bounds)?;
            let gens = parse_generators(&sub)?;
            let kinds: Vec<SupplementKind> = match kind {
                Some(Kind::Supplement) => vec![SupplementKind::Supplement],
                Some(Kind::Delta) => vec![SupplementKind::DeltaSupplement],
                Some(Kind::Weak) => vec![SupplementKind::WeakDeltaSupplement],
                None => vec![
                    SupplementKind::Supplement,
                    SupplementKind::DeltaSupplement,
                    SupplementKind::WeakDeltaSupplement,
                ],
            };
            let certs = supplements_report(e.module(&name)?, &gens, &kinds, &bounds)?;
            emit(format, &certs, |c| certificates_text(c));
        }
        Command::Classify { file, module: name, format } => {
            let e = load_path(&file, &bounds)?;
            let c = classify_report(e.module(&name)?, &bounds)?;
            emit(format, &c, |c| {
                format!(
                    "local {}\ndelta_local {}\nsemilocal {}\nsemisimple {}\nsingular {}\n",
                    c.local, c.delta_local, c.semilocal, c.semisimple, c.singular
                )
            });
        }
        Command::Corpus {
            action: CorpusAction::List { format },
        } => {
            #[derive(Serialize)]
            struct Listed {
                ring: String,
                modules: Vec<String>,
                tags: Vec<String>,
            }
            let listed: Vec<Listed> = builtin_corpus()
                .iter()
                .map(|e| Listed {
                    ring: e.name().to_string(),
                    modules: e.modules.iter().map(|m| m.name().to_string()).collect(),
                    tags: e.tags.clone(),
                })
                .collect();
            emit(format, &listed, |l| {
                l.iter()
                    .map(|e| format!("{}  [{}]\n  {}\n", e.ring, e.tags.join(", "), e.modules.join("  ")))
                    .collect()
            });
        }
        Command::Corpus {
            action: CorpusAction::Export { dir },
        } => {
            std::fs::create_dir_all(&dir).map_err(Error::from)?;
            for (i, e) in builtin_corpus().iter().enumerate() {
                std::fs::write(dir.join(format!("{i:02}.json")), e.to_json()).map_err(Error::from)?;
            }
        }
        Command::Suite {
            corpus,
            format,
            max_ring_size,
            max_module_size,
            seed,
            fault,
        } => {
            let mut bounds = bounds;
            if let Some(n) = max_ring_size {
                bounds.max_ring_size = n;
            }
            if let Some(n) = max_module_size {
                bounds.max_module_size = n;
            }
            let mut entries = load_corpus(&corpus, &bounds)?;
            if let Some(seed) = seed {
                augment_with_generated(&mut entries, 16.min(bounds.max_module_size), seed);
            }
            let config = SuiteConfig {
                bounds,
                seed,
                fault: fault.map(Fault::from),
            };
            let report = run_suite(&entries, &config);
            emit(format, &report, |r| r.to_text());
            if !report.all_passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
