//! Command-line front end: validate documents, run the monotonicity and
//! game checkers, compute fixed points and equilibria, and drive the
//! seeded suites.
//!
//! Exit codes: 0 when every requested check holds, 1 when a property fails
//! or a witness is found (including semantic defects inside an otherwise
//! well-formed document), 2 for unreadable or unparseable input and usage
//! errors. Reports go to stdout; diagnostics for exit 2 go to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use latfix::doc::{load_correspondence, load_game_doc, load_lattice};
use latfix::{
    build_game, check_increasing_differences, check_supermodular, check_theorem_hypotheses,
    fixed_points_brute, greatest_fixed_point, is_ascending, is_subcomplete, is_v_ascending,
    least_fixed_point_via_min_selection, least_fixed_point_via_prefixed_points, nash_brute,
    nash_via_fixpoint, run_theorem_suite, search_counterexample, sup_of_fixed_subset,
    verify_fix_complete, CheckReport, Correspondence, CorrespondenceError, DocError,
    DroppedHypothesis, FixTheorem, GeneratorConfig, LfpMethod, SupVariant, DEFAULT_SEED,
};

#[derive(Parser)]
#[command(name = "latfix", version, about = "Finite lattices, monotone correspondences, and supermodular games")]
struct Cli {
    /// Emit machine-readable JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice document checks.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Correspondence document checks.
    Corr {
        #[command(subcommand)]
        cmd: CorrCmd,
    },
    /// Fixed-point computation and theorem verification.
    Fix {
        #[command(subcommand)]
        cmd: FixCmd,
    },
    /// Game validation and equilibrium solving.
    Game {
        #[command(subcommand)]
        cmd: GameCmd,
    },
    /// Seeded theorem suites and counterexample searches.
    Fuzz(FuzzArgs),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Parse a lattice document and validate the order axioms.
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum CorrCmd {
    /// Parse a correspondence document; optionally check a property.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        property: Option<PropertyArg>,
    },
}

#[derive(Subcommand)]
enum FixCmd {
    /// Compute fixed points of a correspondence.
    Compute {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
        method: MethodArg,
    },
    /// Check a fixed-point theorem's hypotheses and conclusion.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: TheoremArg,
    },
    /// Least fixed point dominating a subset of fixed points.
    Sup {
        file: PathBuf,
        /// Comma-separated element ids, all of them fixed points.
        #[arg(long)]
        subset: String,
    },
}

#[derive(Subcommand)]
enum GameCmd {
    /// Validate a game document and its two order hypotheses.
    Check { file: PathBuf },
    /// Compute the Nash set.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethodArg::Brute)]
        method: SolveMethodArg,
    },
}

#[derive(Args)]
struct FuzzArgs {
    /// Theorem suite to run.
    #[arg(long, value_enum, required_unless_present = "drop", conflicts_with = "drop")]
    theorem: Option<TheoremArg>,
    /// Search for a counterexample with this hypothesis dropped instead.
    #[arg(long, value_enum)]
    drop: Option<DropArg>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Carrier size cap for generated lattices.
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Ascending,
    VAscending,
    SubcompleteValues,
    CompleteValues,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    FactZhou,
    Myzhou,
    Cpltval,
}

impl From<TheoremArg> for FixTheorem {
    fn from(arg: TheoremArg) -> FixTheorem {
        match arg {
            TheoremArg::FactZhou => FixTheorem::Zhou,
            TheoremArg::Myzhou => FixTheorem::ChainValues,
            TheoremArg::Cpltval => FixTheorem::CompleteValues,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    /// Scan every element.
    Brute,
    /// Infimum of the prefixed points (least fixed point).
    InfC,
    /// Minimum-selection iteration (least fixed point).
    MinSel,
    /// Greatest fixed point through the dual order.
    Dual,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SolveMethodArg {
    Brute,
    Fixpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum DropArg {
    LowerV,
    UpperV,
    NonemptyValues,
}

impl From<DropArg> for DroppedHypothesis {
    fn from(arg: DropArg) -> DroppedHypothesis {
        match arg {
            DropArg::LowerV => DroppedHypothesis::LowerV,
            DropArg::UpperV => DroppedHypothesis::UpperV,
            DropArg::NonemptyValues => DroppedHypothesis::NonemptyValues,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match cli.command {
        Command::Lattice { cmd: LatticeCmd::Check { file } } => lattice_check(&file, json),
        Command::Corr { cmd: CorrCmd::Check { file, property } } => corr_check(&file, property, json),
        Command::Fix { cmd } => match cmd {
            FixCmd::Compute { file, method } => fix_compute(&file, method, json),
            FixCmd::Verify { file, theorem } => fix_verify(&file, theorem, json),
            FixCmd::Sup { file, subset } => fix_sup(&file, &subset, json),
        },
        Command::Game { cmd } => match cmd {
            GameCmd::Check { file } => game_check(&file, json),
            GameCmd::Solve { file, method } => game_solve(&file, method, json),
        },
        Command::Fuzz(args) => fuzz(&args, json),
    }
}

const OK: ExitCode = ExitCode::SUCCESS;
const PROPERTY_FAILED: ExitCode = ExitCode::FAILURE;

fn input_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

/// A well-formed file whose content breaks a semantic rule is a witnessed
/// failure (exit 1); unreadable or unparseable input is exit 2.
fn classify_doc_error(err: DocError, json: bool) -> ExitCode {
    match err {
        DocError::Io { .. } | DocError::Parse { .. } => input_error(err),
        DocError::Order(inner) => {
            emit_failure(json, "document order relation", &inner.to_string());
            PROPERTY_FAILED
        }
        DocError::Correspondence(inner) => {
            emit_failure(json, "correspondence values", &inner.to_string());
            PROPERTY_FAILED
        }
    }
}

#[derive(Serialize)]
struct FailureReport<'a> {
    holds: bool,
    subject: &'a str,
    detail: &'a str,
}

fn emit_failure(json: bool, subject: &str, detail: &str) {
    if json {
        let report = FailureReport { holds: false, subject, detail };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("{subject} failed: {detail}");
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).unwrap());
    } else {
        println!("{text}");
    }
}

fn render_witness(report: &CheckReport) -> String {
    match &report.witness {
        Some(w) => format!("{} [witness: {}]", report.detail, w.join(", ")),
        None => report.detail.clone(),
    }
}

fn check_exit(json: bool, label: &str, report: &CheckReport) -> ExitCode {
    emit(
        json,
        report,
        if report.holds {
            format!("{label} holds: {}", report.detail)
        } else {
            format!("{label} fails: {}", render_witness(report))
        },
    );
    if report.holds {
        OK
    } else {
        PROPERTY_FAILED
    }
}

fn lattice_check(file: &Path, json: bool) -> ExitCode {
    let l = match load_lattice(file) {
        Ok(l) => l,
        Err(err) => return classify_doc_error(err, json),
    };
    let report = CheckReport::pass(format!(
        "lattice with {} elements; bottom {}, top {}",
        l.len(),
        l.id(l.bottom()),
        l.id(l.top())
    ));
    check_exit(json, "lattice document", &report)
}

fn load_corr_or_exit(file: &Path, json: bool) -> Result<Correspondence, ExitCode> {
    load_correspondence(file).map_err(|err| classify_doc_error(err, json))
}

fn corr_check(file: &Path, property: Option<PropertyArg>, json: bool) -> ExitCode {
    let f = match load_corr_or_exit(file, json) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let Some(property) = property else {
        let report = CheckReport::pass(format!(
            "correspondence on {} elements; every value nonempty",
            f.lattice().len()
        ));
        return check_exit(json, "correspondence document", &report);
    };
    match property {
        PropertyArg::Ascending => check_exit(json, "ascending", &is_ascending(&f)),
        PropertyArg::VAscending => {
            let report = is_v_ascending(&f);
            let code = if report.is_v_ascending() { OK } else { PROPERTY_FAILED };
            let text = if report.is_v_ascending() {
                "v-ascending holds: both strict-pair conditions".to_string()
            } else if !report.lower_v.holds {
                format!("v-ascending fails: lower condition: {}", render_witness(&report.lower_v))
            } else {
                format!("v-ascending fails: upper condition: {}", render_witness(&report.upper_v))
            };
            emit(json, &report, text);
            code
        }
        PropertyArg::SubcompleteValues => {
            value_property(json, &f, "subcomplete values", |f, x| {
                is_subcomplete(f.lattice(), &f.value_view(x)).expect("values are owned subsets")
            })
        }
        PropertyArg::CompleteValues => value_property(json, &f, "complete values", |f, x| {
            latfix::induced_complete(f.lattice(), &f.value_view(x))
        }),
    }
}

/// Apply a per-value check everywhere; fail on the first bad value with
/// the element prepended to the witness.
fn value_property(
    json: bool,
    f: &Correspondence,
    label: &str,
    check: impl Fn(&Correspondence, usize) -> CheckReport,
) -> ExitCode {
    for x in 0..f.lattice().len() {
        let report = check(f, x);
        if !report.holds {
            let mut witness = vec![format!("at {}", f.lattice().id(x))];
            witness.extend(report.witness.clone().unwrap_or_default());
            let failed = CheckReport::fail(witness, report.detail.clone());
            return check_exit(json, label, &failed);
        }
    }
    check_exit(json, label, &CheckReport::pass("every value passes"))
}

#[derive(Serialize)]
struct FixedPointReport {
    members: Vec<String>,
    least: Option<String>,
    greatest: Option<String>,
    is_complete_lattice: bool,
}

fn fix_compute(file: &Path, method: MethodArg, json: bool) -> ExitCode {
    let f = match load_corr_or_exit(file, json) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let l = f.lattice_arc();
    if method == MethodArg::Brute {
        let fix = fixed_points_brute(&f);
        let report = FixedPointReport {
            members: fix.members.indices().into_iter().map(|i| l.id(i).to_string()).collect(),
            least: fix.least.map(|i| l.id(i).to_string()),
            greatest: fix.greatest.map(|i| l.id(i).to_string()),
            is_complete_lattice: fix.is_complete_lattice,
        };
        let text = format!(
            "Fix = {{{}}}; least {}; greatest {}; {}",
            report.members.join(", "),
            report.least.as_deref().unwrap_or("none"),
            report.greatest.as_deref().unwrap_or("none"),
            if report.is_complete_lattice { "complete lattice in the induced order" } else { "not complete in the induced order" },
        );
        emit(json, &report, text);
        return OK;
    }
    let (what, outcome) = match method {
        MethodArg::InfC => ("least fixed point", least_fixed_point_via_prefixed_points(&f)),
        MethodArg::MinSel => ("least fixed point", least_fixed_point_via_min_selection(&f)),
        MethodArg::Dual => ("greatest fixed point", greatest_fixed_point(&f, LfpMethod::PrefixedPoints)),
        MethodArg::Brute => unreachable!(),
    };
    match outcome {
        Ok(point) => {
            #[derive(Serialize)]
            struct PointReport<'a> {
                what: &'a str,
                element: &'a str,
            }
            let id = l.id(point);
            emit(json, &PointReport { what, element: id }, format!("{what}: {id}"));
            OK
        }
        Err(err) => correspondence_failure(json, err),
    }
}

fn correspondence_failure(json: bool, err: CorrespondenceError) -> ExitCode {
    match err {
        CorrespondenceError::HypothesisViolated { hypothesis, report } => {
            let failed = CheckReport::fail(
                report.witness.clone().unwrap_or_default(),
                format!("hypothesis not met: {hypothesis}: {}", report.detail),
            );
            check_exit(json, "fixed-point route", &failed)
        }
        other => {
            emit_failure(json, "fixed-point route", &other.to_string());
            PROPERTY_FAILED
        }
    }
}

fn fix_verify(file: &Path, theorem: TheoremArg, json: bool) -> ExitCode {
    let f = match load_corr_or_exit(file, json) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let theorem: FixTheorem = theorem.into();
    // Reported for completeness even though the outcome repeats it.
    let hypotheses_hold = check_theorem_hypotheses(&f, theorem).is_ok();
    let outcome = verify_fix_complete(&f, theorem);
    debug_assert_eq!(hypotheses_hold, !outcome.is_hypotheses_not_met());
    emit(json, &outcome, outcome.describe());
    if outcome.is_verified() {
        OK
    } else {
        PROPERTY_FAILED
    }
}

fn fix_sup(file: &Path, subset: &str, json: bool) -> ExitCode {
    let f = match load_corr_or_exit(file, json) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let l = f.lattice_arc();
    let ids: Vec<&str> = subset.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if ids.is_empty() {
        return input_error("--subset needs at least one element id");
    }
    // Unknown ids are a flag mistake, not a failed property of the file.
    let view = match l.subset_from_ids(&ids) {
        Ok(view) => view,
        Err(err) => return input_error(err),
    };
    match sup_of_fixed_subset(&f, &view, SupVariant::ChainSubcomplete) {
        Ok(point) => {
            #[derive(Serialize)]
            struct SupReport<'a> {
                subset: Vec<&'a str>,
                sup_in_fixed_set: &'a str,
            }
            let id = l.id(point);
            emit(
                json,
                &SupReport { subset: ids.clone(), sup_in_fixed_set: id },
                format!("least fixed point above {{{}}}: {id}", ids.join(", ")),
            );
            OK
        }
        Err(err) => correspondence_failure(json, err),
    }
}

fn game_check(file: &Path, json: bool) -> ExitCode {
    let g = match load_game(file, json) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let sup = check_supermodular(&g);
    if !sup.holds {
        return check_exit(json, "sectionwise supermodularity", &sup);
    }
    let diffs = check_increasing_differences(&g);
    if !diffs.holds {
        return check_exit(json, "increasing differences", &diffs);
    }
    let report = CheckReport::pass(format!(
        "valid game: {} players, {} feasible profiles; supermodular with increasing differences",
        g.num_players(),
        g.num_profiles()
    ));
    check_exit(json, "game document", &report)
}

fn load_game(file: &Path, json: bool) -> Result<latfix::Game, ExitCode> {
    let doc = load_game_doc(file).map_err(|err| classify_doc_error(err, json))?;
    build_game(&doc).map_err(|err| {
        emit_failure(json, "game validation", &err.to_string());
        PROPERTY_FAILED
    })
}

fn game_solve(file: &Path, method: SolveMethodArg, json: bool) -> ExitCode {
    let g = match load_game(file, json) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let solved = match method {
        SolveMethodArg::Brute => Ok(nash_brute(&g)),
        SolveMethodArg::Fixpoint => nash_via_fixpoint(&g),
    };
    match solved {
        Ok(set) => {
            let render = |p: &Vec<String>| format!("({})", p.join(","));
            let text = format!(
                "Nash = {{{}}}; least {}; greatest {}; {}",
                set.members.iter().map(render).collect::<Vec<_>>().join(", "),
                set.least.as_ref().map(render).unwrap_or_else(|| "none".into()),
                set.greatest.as_ref().map(render).unwrap_or_else(|| "none".into()),
                if set.is_complete_lattice { "complete lattice in the induced order" } else { "not complete in the induced order" },
            );
            emit(json, &set, text);
            OK
        }
        Err(err) => {
            emit_failure(json, "equilibrium solve", &err.to_string());
            PROPERTY_FAILED
        }
    }
}

fn fuzz(args: &FuzzArgs, json: bool) -> ExitCode {
    let mut cfg = GeneratorConfig::default().with_seed(args.seed);
    cfg.max_lattice_size = args.max_size;
    if let Some(dropped) = args.drop {
        return match search_counterexample(dropped.into(), &cfg, args.trials) {
            Some(witness) => {
                let text = format!(
                    "counterexample at trial {}: {} (lattice of {} elements); values {:?}",
                    witness.trial,
                    witness.failure,
                    witness.lattice.elements.len(),
                    witness.values,
                );
                emit(json, &witness, text);
                PROPERTY_FAILED
            }
            None => {
                let report = CheckReport::pass(format!(
                    "no counterexample in {} trials with the hypothesis dropped",
                    args.trials
                ));
                check_exit(json, "counterexample search", &report)
            }
        };
    }
    let theorem: FixTheorem = args.theorem.expect("clap enforces --theorem without --drop").into();
    let report = run_theorem_suite(theorem, &cfg, args.trials);
    let text = format!(
        "trials {}; hypothesis hits {}; verified {}; violations {}; generation skipped {}",
        report.trials,
        report.hypothesis_hits,
        report.conclusion_verified,
        report.conclusion_violations,
        report.generation_skipped,
    );
    emit(json, &report, text);
    if report.conclusion_violations == 0 {
        OK
    } else {
        PROPERTY_FAILED
    }
}
