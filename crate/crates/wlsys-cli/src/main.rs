//! Command-line front end: parse instance documents, dispatch to the
//! solver, quotient, and automata layers, and emit JSON results.
//!
//! Exit codes: `0` success (including a stabilized solve), `1` a candidate
//! failed verification in `check`, `2` command-line usage errors, `3` the
//! iteration cap was reached, `4` file/JSON/tag parse errors, `5` other
//! validation errors (shapes, labels, lattice membership, …).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wlsys::automata::{greatest_bisimulation_equivalence, reduce, solve_between, BisimulationMode};
use wlsys::io::{
    from_json_str, parse_matrix, parse_solution_matrix, status_tag, to_pretty_json,
    AutomatonDocument, CheckOutputDocument, QuotientOutputDocument, QuotientRequestDocument,
    ReduceOutputDocument, ScalarStyle, SolveOutputDocument, SystemDocument,
};
use wlsys::oracle::brute_force_greatest;
use wlsys::quotient::quotient_system;
use wlsys::solver::DEFAULT_MAX_ITERATIONS;
use wlsys::{Error, SolveOptions, SolveStatus};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_CAP_REACHED: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_INVALID: u8 = 5;

#[derive(Parser)]
#[command(
    name = "wlsys",
    version,
    about = "Greatest solutions of weakly linear systems of fuzzy relation \
             inequalities and equations, with quotient constructions and \
             fuzzy-automata state reduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the greatest solution of a system instance
    Solve(SolveArgs),
    /// Verify a candidate solution; exits 0 iff it solves the system
    Check(CheckArgs),
    /// Factor a relational system by a fuzzy equivalence
    Quotient(QuotientArgs),
    /// Reduce an automaton by its greatest bisimulation equivalence
    Reduce(ReduceArgs),
    /// Solve a simulation/bisimulation system between two automata
    Bisim(BisimArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// System instance document (JSON)
    instance: PathBuf,
    /// System variant (wl1-1 … wl2-6); overrides the document
    #[arg(long)]
    variant: Option<String>,
    /// Iteration cap; overrides the document, default 1000
    #[arg(long, value_name = "N")]
    max_iters: Option<usize>,
    /// Compute the greatest crisp (0/1-valued) solution instead
    #[arg(long)]
    crisp: bool,
    /// Render scalars as exact decimals where possible
    #[arg(long)]
    decimal: bool,
    /// Solve by exhaustive enumeration instead of iteration (debugging)
    #[arg(long, hide = true)]
    oracle: bool,
    /// Write the output document here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    /// System instance document (JSON)
    instance: PathBuf,
    /// Candidate solution: a JSON matrix, or a document with a
    /// "solution" or "matrix" field (solve output works as-is)
    solution: PathBuf,
    /// System variant (wl1-1 … wl2-6); overrides the document
    #[arg(long)]
    variant: Option<String>,
    /// Write the output document here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct QuotientArgs {
    /// Quotient request document (JSON): lattice, labels, relations,
    /// equivalence
    request: PathBuf,
    /// Render scalars as exact decimals where possible
    #[arg(long)]
    decimal: bool,
    /// Write the output document here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Forward,
    Backward,
}

#[derive(Args)]
struct ReduceArgs {
    /// Automaton document (JSON)
    automaton: PathBuf,
    /// Which bisimulation equivalence drives the reduction
    #[arg(long, value_enum, default_value_t = ModeArg::Forward)]
    mode: ModeArg,
    /// Iteration cap for the equivalence computation, default 1000
    #[arg(long, value_name = "N")]
    max_iters: Option<usize>,
    /// Render scalars as exact decimals where possible
    #[arg(long)]
    decimal: bool,
    /// Write the output document here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BisimArgs {
    /// First automaton document (JSON)
    left: PathBuf,
    /// Second automaton document (JSON)
    right: PathBuf,
    /// Heterogeneous variant relating the automata: wl2-1 … wl2-6 (or
    /// just the number)
    #[arg(long)]
    variant: String,
    /// Upper-bound matrix file (states of LEFT × states of RIGHT);
    /// defaults to the universal relation
    #[arg(long, value_name = "FILE")]
    bound: Option<PathBuf>,
    /// Iteration cap, default 1000
    #[arg(long, value_name = "N")]
    max_iters: Option<usize>,
    /// Render scalars as exact decimals where possible
    #[arg(long)]
    decimal: bool,
    /// Write the output document here instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Io(_)
        | Error::Json(_)
        | Error::Document(_)
        | Error::InvalidScalar { .. }
        | Error::UnknownLattice(_)
        | Error::UnknownVariant(_) => EXIT_PARSE,
        Error::NotAnEquivalence(reason) if *reason == CAP_BEFORE_STABLE => EXIT_CAP_REACHED,
        _ => EXIT_INVALID,
    }
}

/// Reason string used by the bisimulation-equivalence computation when the
/// iteration cap cuts it off; mapped to the cap exit code.
const CAP_BEFORE_STABLE: &str = "the iteration hit its cap before stabilizing";

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Check(args) => cmd_check(args),
        Command::Quotient(args) => cmd_quotient(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Bisim(args) => cmd_bisim(args),
    }
}

fn style_for(decimal: bool) -> ScalarStyle {
    if decimal {
        ScalarStyle::Decimal
    } else {
        ScalarStyle::Fraction
    }
}

fn emit(text: String, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn status_exit(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Stabilized => EXIT_OK,
        SolveStatus::CapReached => EXIT_CAP_REACHED,
    }
}

fn solve_options(max_iters: Option<usize>, document_default: Option<usize>) -> SolveOptions {
    SolveOptions {
        max_iterations: max_iters
            .or(document_default)
            .unwrap_or(DEFAULT_MAX_ITERATIONS),
        parallel: true,
    }
}

fn cmd_solve(args: SolveArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.instance)?;
    let document: SystemDocument = from_json_str(&text)?;
    let system = document.to_system(args.variant.as_deref())?;
    let style = style_for(args.decimal);

    if args.oracle {
        let solution = brute_force_greatest(&system)?;
        let output = SolveOutputDocument {
            lattice: system.lattice().to_string(),
            variant: system.kind().to_string(),
            a_labels: system.domain().to_vec(),
            b_labels: system.codomain().to_vec(),
            solution: wlsys::io::render_matrix(&solution, style),
            iterations: 0,
            status: "enumerated".to_string(),
            verified: true,
        };
        emit(to_pretty_json(&output), args.output.as_deref())?;
        eprintln!(
            "{} over {}: greatest solution by exhaustive enumeration",
            system.kind(),
            system.lattice()
        );
        return Ok(EXIT_OK);
    }

    let options = solve_options(
        args.max_iters,
        document.options.as_ref().and_then(|o| o.max_iterations),
    );
    let report = if args.crisp {
        system.solve_greatest_crisp(&options)?
    } else {
        system.solve_greatest(&options)?
    };
    let output = SolveOutputDocument::new(&system, &report, style);
    emit(to_pretty_json(&output), args.output.as_deref())?;
    eprintln!(
        "{}{} over {}: {} after {} iteration{}; {}",
        system.kind(),
        if args.crisp { " (crisp)" } else { "" },
        system.lattice(),
        status_tag(report.status),
        report.iterations,
        if report.iterations == 1 { "" } else { "s" },
        if report.verified {
            "verified"
        } else {
            "NOT verified"
        }
    );
    Ok(status_exit(report.status))
}

fn cmd_check(args: CheckArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.instance)?;
    let document: SystemDocument = from_json_str(&text)?;
    let system = document.to_system(args.variant.as_deref())?;

    let solution_text = std::fs::read_to_string(&args.solution)?;
    let matrix = parse_solution_matrix(&solution_text)?;
    let candidate = parse_matrix(
        system.lattice(),
        system.domain().to_vec(),
        system.codomain().to_vec(),
        &matrix,
    )?;
    let verified = system.verify_solution(&candidate)?;
    let output = CheckOutputDocument {
        variant: system.kind().to_string(),
        verified,
    };
    emit(to_pretty_json(&output), args.output.as_deref())?;
    eprintln!(
        "{}: the candidate {} the system",
        system.kind(),
        if verified { "solves" } else { "does NOT solve" }
    );
    Ok(if verified { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_quotient(args: QuotientArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.request)?;
    let document: QuotientRequestDocument = from_json_str(&text)?;
    let (system, equivalence) = document.to_parts()?;
    let (quotient, factor) = quotient_system(&system, &equivalence)?;
    let output = QuotientOutputDocument::new(
        &quotient,
        &factor,
        system.carrier(),
        style_for(args.decimal),
    );
    emit(to_pretty_json(&output), args.output.as_deref())?;
    eprintln!(
        "factored {} elements into {} classes",
        system.carrier().len(),
        factor.class_count()
    );
    Ok(EXIT_OK)
}

fn cmd_reduce(args: ReduceArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(&args.automaton)?;
    let document: AutomatonDocument = from_json_str(&text)?;
    let automaton = document.to_automaton()?;
    let (mode, mode_name) = match args.mode {
        ModeArg::Forward => (BisimulationMode::Forward, "forward"),
        ModeArg::Backward => (BisimulationMode::Backward, "backward"),
    };
    let options = solve_options(args.max_iters, None);
    let (equivalence, _report) = greatest_bisimulation_equivalence(&automaton, mode, &options)?;
    let (reduced, factor) = reduce(&automaton, &equivalence)?;
    let output = ReduceOutputDocument::new(
        mode_name,
        &equivalence,
        &factor,
        automaton.states(),
        &reduced,
        style_for(args.decimal),
    );
    emit(to_pretty_json(&output), args.output.as_deref())?;
    eprintln!(
        "reduced {} states to {} ({} bisimulation equivalence)",
        automaton.states().len(),
        reduced.states().len(),
        mode_name
    );
    Ok(EXIT_OK)
}

fn parse_heterogeneous_variant(tag: &str) -> Result<u8, Error> {
    let digit = tag.strip_prefix("wl2-").unwrap_or(tag);
    match digit.parse::<u8>() {
        Ok(variant @ 1..=6) => Ok(variant),
        _ => Err(Error::UnknownVariant(tag.to_string())),
    }
}

fn cmd_bisim(args: BisimArgs) -> Result<u8, Error> {
    let left: AutomatonDocument = from_json_str(&std::fs::read_to_string(&args.left)?)?;
    let right: AutomatonDocument = from_json_str(&std::fs::read_to_string(&args.right)?)?;
    let m = left.to_automaton()?;
    let n = right.to_automaton()?;
    let variant = parse_heterogeneous_variant(&args.variant)?;

    let bound = match &args.bound {
        Some(path) => {
            let matrix = parse_solution_matrix(&std::fs::read_to_string(path)?)?;
            Some(parse_matrix(
                m.lattice(),
                m.states().to_vec(),
                n.states().to_vec(),
                &matrix,
            )?)
        }
        None => None,
    };

    let options = solve_options(args.max_iters, None);
    let report = solve_between(&m, &n, variant, bound, &options)?;
    let style = style_for(args.decimal);
    let output = SolveOutputDocument {
        lattice: m.lattice().to_string(),
        variant: format!("wl2-{variant}"),
        a_labels: m.states().to_vec(),
        b_labels: n.states().to_vec(),
        solution: wlsys::io::render_matrix(&report.solution, style),
        iterations: report.iterations,
        status: status_tag(report.status).to_string(),
        verified: report.verified,
    };
    emit(to_pretty_json(&output), args.output.as_deref())?;
    eprintln!(
        "wl2-{variant} between the automata: {} after {} iteration{}; {}",
        status_tag(report.status),
        report.iterations,
        if report.iterations == 1 { "" } else { "s" },
        if report.verified {
            "verified"
        } else {
            "NOT verified"
        }
    );
    Ok(status_exit(report.status))
}
