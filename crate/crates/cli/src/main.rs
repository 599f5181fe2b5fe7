//! `twofib`: command-line access to the engine. Every command prints a JSON
//! report (or writes it to `--out`) and a one-line summary on stderr.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twofib_core::homotopy_engine::Budgets;

use report::{Envelope, SCHEMA};

#[derive(Parser)]
#[command(name = "twofib", version, about = "Free 2-Cartesian fibrations, lifting checks and cofinality of strict 2-functors")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Dimension cap for simplicial data; at least 3.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..))]
    pub cap: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().collapse_states as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub collapse_states: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().tietze_steps as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub tietze_steps: u64,
    #[arg(long, global = true, default_value_t = Budgets::default().max_relator_len as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_relator_len: u64,
    /// Top dimension materialized for nerves of categories.
    #[arg(long, global = true, default_value_t = Budgets::default().nerve_top as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub nerve_top: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Global {
    pub fn budgets(&self) -> Budgets {
        Budgets {
            collapse_states: self.collapse_states as usize,
            tietze_steps: self.tietze_steps as usize,
            max_relator_len: self.max_relator_len as usize,
            nerve_top: self.nerve_top as usize,
        }
    }

    pub fn cap(&self) -> usize {
        self.cap as usize
    }
}

/// A 2-functor `f: C → D` with markings, from files or a bundled fixture.
#[derive(Args, Clone)]
pub struct FunctorInput {
    /// A bundled fixture: terminal, bracket-pt-pt, bracket-empty-pt,
    /// bracket-pt-arrow-0, bracket-pt-arrow-1, walking-two-cell.
    #[arg(long, conflicts_with_all = ["source", "target", "functor"])]
    pub fixture: Option<String>,
    #[arg(long, requires_all = ["target", "functor"])]
    pub source: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub functor: Option<PathBuf>,
    /// `minimal`, `sharp`, or a JSON list of 1-cell names.
    #[arg(long, default_value = "minimal")]
    pub source_marking: String,
    #[arg(long, default_value = "minimal")]
    pub target_marking: String,
}

/// A functor `p: K → S` of 1-categories, from files or a named example.
#[derive(Args, Clone)]
pub struct PosetFunctorInput {
    /// A named example: id-pt, bottom-of-arrow, bottom-of-diamond, id-chain3,
    /// top-of-arrow, top-of-diamond, feet-of-vee, empty-into-pt.
    #[arg(long, conflicts_with_all = ["source", "target", "functor"])]
    pub example: Option<String>,
    #[arg(long, requires_all = ["target", "functor"])]
    pub source: Option<PathBuf>,
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub functor: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ModeArg {
    Natural,
    Dagger,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    Mb,
    Ms,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlatSharp {
    Flat,
    Sharp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeArg {
    Cospan,
    Arrow,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarkingArg {
    None,
    F,
    G,
    Both,
}

#[derive(Subcommand)]
pub enum Command {
    /// Scaled nerve of a strict 2-category.
    Nerve {
        file: PathBuf,
        #[arg(long, default_value = "minimal")]
        marking: String,
        #[arg(long, default_value_t = 3)]
        top: usize,
        /// Include the simplicial set itself in the report.
        #[arg(long)]
        emit_sset: bool,
    },
    /// The decorated Gray product `Δ¹ ⊗̂ Δⁿ`.
    Gray {
        n: usize,
        #[arg(long, value_enum, default_value = "flat")]
        marked: FlatSharp,
        #[arg(long, value_enum, default_value = "flat")]
        thin: FlatSharp,
        #[arg(long, value_enum, default_value = "flat")]
        lean: FlatSharp,
    },
    /// Face and degeneracy identities of the extension operators.
    Ext {
        #[command(flatten)]
        input: FunctorInput,
        #[arg(long, value_enum, default_value = "natural")]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Builds the free fibration, compares it with Fr and audits the filtration.
    Freefib {
        #[command(flatten)]
        input: FunctorInput,
        #[arg(long, value_enum, default_value = "natural")]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
    /// Right lifting checks of the free fibration's projection.
    CheckFibration {
        #[command(flatten)]
        input: FunctorInput,
        #[arg(long, value_enum, default_value = "natural")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "mb")]
        family: FamilyArg,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Largest number of lifting problems to try.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Marked cofinality of a 2-functor.
    CheckCofinal {
        #[command(flatten)]
        input: FunctorInput,
    },
    /// Cofinality of a functor of finite categories.
    Joyal {
        #[command(flatten)]
        input: PosetFunctorInput,
    },
    /// Compares `2[p]` cofinality with cofinality of `p^op`.
    Duality {
        #[command(flatten)]
        input: PosetFunctorInput,
    },
    /// A partially lax limit as a multiplication table.
    Laxlim {
        #[arg(long, value_enum, default_value = "cospan")]
        shape: ShapeArg,
        /// Invertible legs. For `--shape arrow` only `none` and `both` apply.
        #[arg(long, value_enum, default_value = "none")]
        marking: MarkingArg,
        /// A named cospan: worked-instance, same-vertex, iso-ends, id-arrow, id-iso.
        #[arg(long, conflicts_with_all = ["a", "b", "c", "f", "g"])]
        example: Option<String>,
        #[arg(long)]
        a: Option<PathBuf>,
        #[arg(long)]
        b: Option<PathBuf>,
        #[arg(long)]
        c: Option<PathBuf>,
        /// `F: A → C`, or `E: A → B` for the arrow shape.
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long)]
        g: Option<PathBuf>,
        /// Run the cone oracle on the probes pt and the walking arrow.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 200_000)]
        oracle_limit: usize,
    },
    /// Integral homology of a simplicial set (file or shape such as `boundary:3`).
    Homology {
        input: String,
        #[arg(long)]
        max_deg: Option<usize>,
    },
    /// Weak contractibility of a simplicial set, or of the nerve of a category.
    Contractible {
        input: Option<String>,
        #[arg(long, conflicts_with = "input")]
        category: Option<PathBuf>,
    },
    /// Runs the bundled corpus, one section per acceptance criterion.
    Corpus {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Run a single section.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        section: Option<u8>,
        /// Print the JSON report instead of the summary table.
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Nerve { .. } => "nerve",
            Command::Gray { .. } => "gray",
            Command::Ext { .. } => "ext",
            Command::Freefib { .. } => "freefib",
            Command::CheckFibration { .. } => "check-fibration",
            Command::CheckCofinal { .. } => "check-cofinal",
            Command::Joyal { .. } => "joyal",
            Command::Duality { .. } => "duality",
            Command::Laxlim { .. } => "laxlim",
            Command::Homology { .. } => "homology",
            Command::Contractible { .. } => "contractible",
            Command::Corpus { .. } => "corpus",
        }
    }
}

fn main() -> ExitCode {
    // usage errors are input errors; clap's own code 2 means something else here
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let name = cli.command.name();
    let done = match commands::run(&cli.command, &cli.global) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("twofib {name}: {e}");
            return ExitCode::from(e.code());
        }
    };
    let env = Envelope {
        schema: SCHEMA,
        command: name,
        outcome: done.outcome,
        cap: cli.global.cap(),
        budgets: cli.global.budgets(),
        params: &done.params,
        result: &done.result,
    };
    let text = serde_json::to_string_pretty(&env).expect("reports serialize");
    match (&cli.global.out, done.table) {
        (Some(path), table) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("twofib {name}: {}: {e}", path.display());
                return ExitCode::from(1);
            }
            if let Some(t) = table {
                print!("{t}");
            }
        }
        (None, Some(t)) => print!("{t}"),
        (None, None) => println!("{text}"),
    }
    eprintln!("{}", done.summary);
    ExitCode::from(done.outcome.code())
}
