//! Batch CLI for the finite universal algebra engine.
//!
//! Exit codes: 0 success (or checked property true), 1 checked property
//! false, 2 input error, 3 resource cap exceeded, 4 internal invariant
//! violation. Reports go to stdout and are byte-deterministic for fixed
//! inputs and flags; timing goes to stderr.

use std::collections::BTreeSet;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use clone_forge::clone::generate_clone;
use clone_forge::commutant::{classify, commutant_clone, Strategy};
use clone_forge::document::{load_presentation, PresentationDocument};
use clone_forge::error::{Error, Result};
use clone_forge::pairs::{pair_status, rcom as rcom_pair, transport_bifold, AlgebraPair};
use clone_forge::report::{
    render, CheckCommuteReport, ClassifyReport, CloneReport, Format, LayerTables,
    PairStatusReport, RcomReport, SelfcheckReport, TransportReport,
};
use clone_forge::selfcheck::{self, SelfcheckConfig};
use clone_forge::{algebras_commute, library, AlgebraPresentation};

#[derive(Parser)]
#[command(
    name = "clone-forge",
    about = "Finite universal algebra engine: clones, commutants, commuting pairs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Arity bound N for clone and commutant computations.
    #[arg(long, default_value_t = 2)]
    max_arity: usize,

    /// Restrict to these arities (comma separated, e.g. "0,1,2"); generators
    /// outside the profile are dropped and reported.
    #[arg(long)]
    profile: Option<String>,

    /// Cap on per-layer operation counts and enumeration spaces.
    #[arg(long, default_value_t = clone_forge::DEFAULT_OP_CAP)]
    op_cap: usize,

    /// Report format.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Args, Clone)]
struct StrategyOpt {
    /// Centralizer search strategy.
    #[arg(long, default_value = "enumerate")]
    strategy: String,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the truncated clone of a presentation.
    GenClone {
        /// Presentation document path or library name.
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        /// What to print per layer: counts or tables.
        #[arg(long, default_value = "counts")]
        emit: String,
    },
    /// Compute the commutant (centralizer) clone of a presentation.
    Commutant {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
        #[arg(long, default_value = "counts")]
        emit: String,
    },
    /// Classify a presentation: commutative, contracommutative, saturated
    /// and balanced at the bound.
    Classify {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
    },
    /// Check whether two presentations commute. Exit 0 if they do, 1 with a
    /// witness otherwise.
    CheckCommute {
        input_a: String,
        input_b: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify the pair (A, B): right-/left-commutant, commutant, balanced.
    PairStatus {
        input_a: String,
        input_b: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
    },
    /// Pair a presentation with its commutant (commutant on the right).
    Rcom {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
        /// Write the commutant presentation document here; without this the
        /// document itself is printed.
        #[arg(long)]
        out: Option<String>,
    },
    /// Pair a presentation with its commutant (commutant on the left).
    Lcom {
        input: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
        #[arg(long)]
        out: Option<String>,
    },
    /// Transport a commutant pair's left-face structure onto a target
    /// presentation over the same right-face generator names.
    Transport {
        input_left: String,
        input_right: String,
        target: String,
        #[command(flatten)]
        common: CommonOpts,
        #[command(flatten)]
        strategy: StrategyOpt,
        /// Write the induced left-face presentation document here.
        #[arg(long)]
        out: Option<String>,
    },
    /// Built-in presentation catalog.
    Library {
        #[command(subcommand)]
        action: LibraryAction,
    },
    /// Run the engine's law suite over the built-ins plus seeded random
    /// instances. Exit 0 when every law holds.
    Selfcheck {
        /// RNG seed for the random generator sets.
        #[arg(long, default_value_t = 0x00C10F0E)]
        seed: u64,
        /// How many random generator sets to draw.
        #[arg(long, default_value_t = 50)]
        instances: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum LibraryAction {
    /// Print every catalog name.
    List,
    /// Print a catalog entry as a presentation document.
    Show {
        name: String,
        /// Arity sweep for affine entries.
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
}

fn parse_profile(text: &str) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        set.insert(
            part.parse::<usize>()
                .map_err(|_| Error::input(format!("bad profile entry {part:?}")))?,
        );
    }
    if set.is_empty() {
        return Err(Error::input("empty profile"));
    }
    Ok(set)
}

/// Load an input and apply an optional profile restriction; returns the
/// presentation and the names of generators the restriction dropped.
fn load_restricted(
    input: &str,
    profile: Option<&String>,
    max_arity: usize,
) -> Result<(AlgebraPresentation, Vec<String>)> {
    let pres = load_presentation(input, max_arity)?;
    match profile {
        None => Ok((pres, Vec::new())),
        Some(text) => {
            let set = parse_profile(text)?;
            let dropped = pres.generators_outside(&set);
            let restricted = pres.restrict_to_profile(set)?;
            Ok((restricted, dropped))
        }
    }
}

fn parse_format(common: &CommonOpts) -> Result<Format> {
    common.format.parse()
}

fn parse_strategy(opt: &StrategyOpt) -> Result<Strategy> {
    opt.strategy.parse()
}

fn strategy_name(strategy: Strategy) -> &'static str {
    match strategy {
        Strategy::Enumerate => "enumerate",
        Strategy::Backtrack => "backtrack",
    }
}

fn emit_tables(emit: &str, build: impl FnOnce() -> LayerTables) -> Result<Option<LayerTables>> {
    match emit {
        "counts" => Ok(None),
        "tables" => Ok(Some(build())),
        other => Err(Error::input(format!("unknown emit mode {other:?}"))),
    }
}

fn run_com_pair(
    input: String,
    common: CommonOpts,
    strategy: StrategyOpt,
    out: Option<String>,
    swap: bool,
) -> Result<i32> {
    let format = parse_format(&common)?;
    let strategy = parse_strategy(&strategy)?;
    let (pres, _dropped) = load_restricted(&input, common.profile.as_ref(), common.max_arity)?;
    let pair = rcom_pair(&pres, common.max_arity, strategy, common.op_cap)?;
    let commutant_pres = if swap {
        pair.swapped()?.left().clone()
    } else {
        pair.right().clone()
    };
    let document = PresentationDocument::from_presentation(&commutant_pres);
    match out {
        Some(path) => {
            document.write_file(std::path::Path::new(&path))?;
            let com = generate_clone(&commutant_pres, common.max_arity, common.op_cap)?;
            let report = RcomReport {
                command: if swap { "lcom" } else { "rcom" }.to_string(),
                input,
                carrier: commutant_pres.carrier_size(),
                bound: common.max_arity,
                commutant_layer_counts: com.clone.layer_sizes(),
                wrote: Some(path),
            };
            print!("{}", render(&report, format));
        }
        None => {
            print!("{}", document.render());
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::GenClone {
            input,
            common,
            emit,
        } => {
            let format = parse_format(&common)?;
            let (pres, dropped) =
                load_restricted(&input, common.profile.as_ref(), common.max_arity)?;
            let generated = generate_clone(&pres, common.max_arity, common.op_cap)?;
            let report = CloneReport {
                command: "gen-clone".to_string(),
                input,
                strategy: None,
                carrier: pres.carrier_size(),
                bound: common.max_arity,
                profile: generated.clone.profile().arities().collect(),
                dropped_generators: dropped,
                closure_fixpoint: generated.clone.closure_fixpoint(),
                layer_counts: generated.clone.layer_sizes(),
                tables: emit_tables(&emit, || {
                    LayerTables(
                        generated
                            .clone
                            .layers()
                            .map(|(a, ops)| (a, ops.to_vec()))
                            .collect(),
                    )
                })?,
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::Commutant {
            input,
            common,
            strategy,
            emit,
        } => {
            let format = parse_format(&common)?;
            let strategy = parse_strategy(&strategy)?;
            let (pres, dropped) =
                load_restricted(&input, common.profile.as_ref(), common.max_arity)?;
            let com = commutant_clone(&pres, common.max_arity, strategy, common.op_cap)?;
            let report = CloneReport {
                command: "commutant".to_string(),
                input,
                strategy: Some(strategy_name(strategy).to_string()),
                carrier: pres.carrier_size(),
                bound: common.max_arity,
                profile: com.profile().arities().collect(),
                dropped_generators: dropped,
                closure_fixpoint: com.closure_fixpoint(),
                layer_counts: com.layer_sizes(),
                tables: emit_tables(&emit, || {
                    LayerTables(com.layers().map(|(a, ops)| (a, ops.to_vec())).collect())
                })?,
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::Classify {
            input,
            common,
            strategy,
        } => {
            let format = parse_format(&common)?;
            let strategy = parse_strategy(&strategy)?;
            let (pres, _dropped) =
                load_restricted(&input, common.profile.as_ref(), common.max_arity)?;
            let classification = classify(&pres, common.max_arity, strategy, common.op_cap)?;
            let report = ClassifyReport {
                command: "classify".to_string(),
                input,
                carrier: pres.carrier_size(),
                bound: common.max_arity,
                classification,
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::CheckCommute {
            input_a,
            input_b,
            common,
        } => {
            let format = parse_format(&common)?;
            let (a, _) = load_restricted(&input_a, common.profile.as_ref(), common.max_arity)?;
            let (b, _) = load_restricted(&input_b, common.profile.as_ref(), common.max_arity)?;
            let outcome = algebras_commute(&a, &b)?;
            let report = CheckCommuteReport {
                command: "check-commute".to_string(),
                input_a,
                input_b,
                carrier: a.carrier_size(),
                commutes: outcome.commutes(),
                witness: outcome.witness().cloned(),
            };
            print!("{}", render(&report, format));
            Ok(if report.commutes { 0 } else { 1 })
        }
        Command::PairStatus {
            input_a,
            input_b,
            common,
            strategy,
        } => {
            let format = parse_format(&common)?;
            let strategy = parse_strategy(&strategy)?;
            let (a, _) = load_restricted(&input_a, common.profile.as_ref(), common.max_arity)?;
            let (b, _) = load_restricted(&input_b, common.profile.as_ref(), common.max_arity)?;
            let pair = AlgebraPair::new(a, b)?;
            let status = pair_status(&pair, common.max_arity, strategy, common.op_cap)?;
            let report = PairStatusReport {
                command: "pair-status".to_string(),
                input_a,
                input_b,
                carrier: pair.left().carrier_size(),
                status,
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::Rcom {
            input,
            common,
            strategy,
            out,
        } => run_com_pair(input, common, strategy, out, false),
        Command::Lcom {
            input,
            common,
            strategy,
            out,
        } => run_com_pair(input, common, strategy, out, true),
        Command::Transport {
            input_left,
            input_right,
            target,
            common,
            strategy,
            out,
        } => {
            let format = parse_format(&common)?;
            let strategy = parse_strategy(&strategy)?;
            let left = load_presentation(&input_left, common.max_arity)?;
            let right = load_presentation(&input_right, common.max_arity)?;
            let target_pres = load_presentation(&target, common.max_arity)?;
            let pair = AlgebraPair::new(left, right)?;
            let transported = transport_bifold(
                &pair,
                common.max_arity,
                &target_pres,
                strategy,
                common.op_cap,
            )?;
            let wrote = match &out {
                Some(path) => {
                    PresentationDocument::from_presentation(transported.left())
                        .write_file(std::path::Path::new(path))?;
                    Some(path.clone())
                }
                None => None,
            };
            let report = TransportReport {
                command: "transport".to_string(),
                input_left,
                input_right,
                target,
                bound: common.max_arity,
                target_carrier: transported.left().carrier_size(),
                commutes: transported.is_commuting(),
                induced_generators: transported.left().generators().clone(),
                wrote,
            };
            print!("{}", render(&report, format));
            Ok(0)
        }
        Command::Library { action } => {
            match action {
                LibraryAction::List => {
                    for name in library::catalog() {
                        println!("{name}");
                    }
                }
                LibraryAction::Show { name, max_arity } => {
                    let pres = library::resolve(&name, max_arity)?;
                    print!(
                        "{}",
                        PresentationDocument::from_presentation(&pres).render()
                    );
                }
            }
            Ok(0)
        }
        Command::Selfcheck {
            seed,
            instances,
            common,
        } => {
            let format = parse_format(&common)?;
            let config = SelfcheckConfig {
                seed,
                random_instances: instances,
                bound: common.max_arity,
                op_cap: common.op_cap,
                include_library: true,
            };
            let checks = selfcheck::run(&config)?;
            let passed = checks.iter().all(|c| c.violations == 0);
            let report = SelfcheckReport {
                command: "selfcheck".to_string(),
                seed,
                random_instances: instances,
                bound: common.max_arity,
                checks,
                passed,
            };
            print!("{}", render(&report, format));
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    eprintln!("elapsed_ms={}", started.elapsed().as_millis());
    std::process::exit(code);
}
