//! Command-line surface: analyze cycles, construct realizations, enumerate
//! and verify periodic orbits, and emit circle-diagram SVGs.
//!
//! Exit codes: 0 success/PASS, 1 usage error, 2 domain error, 3 verification
//! FAIL, 4 budget exceeded.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use cyclic::cycles::DEFAULT_TYPE_BOUND;
use cyclic::oracle::DEFAULT_ORBIT_BUDGET;
use cyclic::{
    enumerate_orbits, enumerate_types, realize_from_dep, realize_general, realize_minimal,
    regularity_index, verify_counts, Cycle, DepVector, Error, FixVector, Orbit, Signature,
    TransitionMatrix,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_VERIFY_FAIL: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "cyclic",
    version,
    about = "Exact analysis of q-cycles and their realizations as period-q orbits of x -> kx (mod 1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout (required for `diagram`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Enumeration budget: refuse when k^q exceeds this. Defaults to the
    /// CYCLIC_BUDGET environment variable, then to 10^7.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Worker threads for orbit enumeration; output is identical for any
    /// value.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupBy {
    Cycle,
    Type,
}

#[derive(Args)]
struct CycleInput {
    /// Cycle in cycle notation, e.g. "(1 2 4 5 3)"; parentheses optional.
    #[arg(short = 'c', long)]
    cycle: String,

    /// Interpret --cycle as one-line images instead, e.g. "2 4 1 5 3".
    #[arg(long)]
    one_line: bool,
}

#[derive(Args)]
struct Selector {
    /// Degree of the realizing map m_k.
    #[arg(short = 'k', long)]
    k: Option<u32>,

    /// The unique minimal realization (degree = descent number).
    #[arg(long)]
    minimal: bool,

    /// Fixed point distribution "n1,...,nq"; requires -k.
    #[arg(long, conflicts_with_all = ["minimal", "dep"])]
    fix: Option<String>,

    /// Fixed points of m_k inside (0, x_1); only with --fix.
    #[arg(long, default_value_t = 0, requires = "fix")]
    shift: u64,

    /// Deployment vector "w1,...,w(k-1)".
    #[arg(long, conflicts_with = "minimal")]
    dep: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Descent number, symmetry order, signature, transition matrix, and
    /// combinatorial type of a cycle.
    Analyze(CycleInput),

    /// Construct a realization of a cycle under m_k.
    Realize {
        #[command(flatten)]
        input: CycleInput,
        #[command(flatten)]
        selector: Selector,
    },

    /// Enumerate every period-q orbit of m_k, optionally grouped with
    /// tallies.
    Enumerate {
        #[arg(long)]
        q: usize,
        #[arg(short = 'k', long)]
        k: u32,
        #[arg(long, value_enum)]
        group_by: Option<GroupBy>,
    },

    /// Cross-check the closed-form realization counts against the
    /// brute-force orbit catalog.
    Verify {
        #[arg(long)]
        q: usize,
        #[arg(short = 'k', long)]
        k: u32,
        /// Restrict the checks to the combinatorial type of this cycle.
        #[arg(short = 'c', long)]
        cycle: Option<String>,
        #[arg(long)]
        one_line: bool,
    },

    /// List the combinatorial types of q-cycles.
    Types {
        #[arg(long)]
        q: usize,
        /// Cap on q for the (q-1)!-cycle sweep.
        #[arg(long, default_value_t = DEFAULT_TYPE_BOUND)]
        bound: usize,
    },

    /// Render a realization as an SVG circle diagram (requires --out).
    Diagram {
        #[command(flatten)]
        input: CycleInput,
        #[command(flatten)]
        selector: Selector,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successes, everything else is a usage
            // error (exit 1, not clap's default 2).
            let code = if err.use_stderr() {
                eprint!("{err}");
                EXIT_USAGE
            } else {
                print!("{err}");
                0
            };
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidCycle(_) | Error::MalformedVector(_) | Error::InvalidOrbit(_) => EXIT_USAGE,
        Error::BudgetExceeded { .. } | Error::EnumerationBound { .. } => EXIT_BUDGET,
        _ => EXIT_DOMAIN,
    }
}

fn budget(cli: &Cli) -> u64 {
    cli.budget
        .or_else(|| {
            std::env::var("CYCLIC_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_ORBIT_BUDGET)
}

fn parse_cycle(input: &CycleInput) -> Result<Cycle, Error> {
    parse_cycle_str(&input.cycle, input.one_line)
}

fn parse_cycle_str(text: &str, one_line: bool) -> Result<Cycle, Error> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let mut symbols = Vec::new();
    for (pos, token) in trimmed.split([' ', ',']).filter(|t| !t.is_empty()).enumerate() {
        let value: usize = token.parse().map_err(|_| {
            Error::InvalidCycle(format!("symbol {pos} ({token:?}) is not a positive integer"))
        })?;
        symbols.push(value);
    }
    if one_line {
        Cycle::from_one_line(&symbols)
    } else {
        Cycle::from_cycle_notation(&symbols)
    }
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, Error> {
    text.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|_| {
                Error::MalformedVector(format!("{what} component {t:?} is not a non-negative integer"))
            })
        })
        .collect()
}

fn emit(cli: &Cli, text: &str) -> Result<(), Error> {
    let io_err = |e: std::io::Error| Error::InvalidOrbit(format!("cannot write output: {e}"));
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(io_err),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err),
    }
}

#[derive(Serialize, Deserialize)]
struct TypeSummary {
    canonical: String,
    size: usize,
    symmetry_order: usize,
    descent: usize,
    representatives: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct AnalyzeReport {
    cycle: String,
    one_line: Vec<usize>,
    q: usize,
    descent: usize,
    symmetry_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation_number: Option<String>,
    signature: Vec<u8>,
    marked_indices: Vec<usize>,
    transition_matrix: Vec<Vec<String>>,
    regularity_index: Option<usize>,
    #[serde(rename = "type")]
    combinatorial_type: TypeSummary,
}

fn cmd_analyze(cli: &Cli, input: &CycleInput) -> Result<ExitCode, Error> {
    let sigma = parse_cycle(input)?;
    let sig = Signature::of_cycle(&sigma);
    let ty = sigma.combinatorial_type();
    let report = AnalyzeReport {
        cycle: sigma.to_string(),
        one_line: sigma.one_line().to_vec(),
        q: sigma.q(),
        descent: sigma.descent(),
        symmetry_order: sigma.symmetry_order(),
        rotation_number: sigma
            .rotation_power()
            .map(|p| format!("{p}/{}", sigma.q())),
        signature: sig.as_u8_vec(),
        marked_indices: sig.marked_indices(),
        transition_matrix: TransitionMatrix::of_cycle(&sigma).to_decimal_rows(),
        regularity_index: regularity_index(&sigma),
        combinatorial_type: TypeSummary {
            canonical: ty.canonical().to_string(),
            size: ty.size(),
            symmetry_order: ty.symmetry_order(),
            descent: ty.descent(),
            representatives: ty.representatives().iter().map(Cycle::to_string).collect(),
        },
    };

    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let join = |v: &[usize]| {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            };
            let mut s = String::new();
            s += &format!("cycle:            {}\n", report.cycle);
            s += &format!("one-line:         {}\n", join(&report.one_line));
            s += &format!("q:                {}\n", report.q);
            s += &format!("descent:          {}\n", report.descent);
            s += &format!("symmetry order:   {}\n", report.symmetry_order);
            if let Some(rot) = &report.rotation_number {
                s += &format!("rotation number:  {rot}\n");
            }
            s += &format!("signature:        {sig}\n");
            s += &format!("marked intervals: {}\n", join(&report.marked_indices));
            s += "transition matrix:\n";
            for row in &report.transition_matrix {
                s += &format!("  {}\n", row.join(" "));
            }
            s += &format!(
                "regularity index: {}\n",
                report
                    .regularity_index
                    .map_or("none (rotation cycle)".into(), |n| n.to_string())
            );
            s += &format!(
                "type:             {} ({} cycles, sym {})\n",
                report.combinatorial_type.canonical,
                report.combinatorial_type.size,
                report.combinatorial_type.symmetry_order
            );
            s
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn realize_from_selector(sigma: &Cycle, selector: &Selector) -> Result<Orbit, Error> {
    if selector.minimal {
        if let Some(k) = selector.k {
            if k as usize != sigma.descent() {
                return Err(Error::MalformedVector(format!(
                    "--minimal realizes under m_{}; drop -k or pass -k {}",
                    sigma.descent(),
                    sigma.descent()
                )));
            }
        }
        return realize_minimal(sigma);
    }
    if let Some(fix) = &selector.fix {
        let k = selector.k.ok_or_else(|| {
            Error::MalformedVector("--fix requires the degree -k".into())
        })?;
        let n = FixVector::new(parse_u64_list(fix, "fix")?, selector.shift)?;
        return realize_general(sigma, k, &n);
    }
    if let Some(dep) = &selector.dep {
        let w = DepVector::new(parse_u64_list(dep, "dep")?)?;
        let k = selector.k.unwrap_or_else(|| w.degree());
        if k != w.degree() {
            return Err(Error::MalformedVector(format!(
                "dep vector has {} components, so the degree is {}; got -k {k}",
                w.components().len(),
                w.degree()
            )));
        }
        return realize_from_dep(sigma, k, &w);
    }
    Err(Error::MalformedVector(
        "pick a realization: --minimal, --fix with -k, or --dep".into(),
    ))
}

#[derive(Serialize, Deserialize)]
struct RealizeReport {
    cycle: String,
    #[serde(flatten)]
    orbit: cyclic::OrbitRecord,
}

fn cmd_realize(cli: &Cli, input: &CycleInput, selector: &Selector) -> Result<ExitCode, Error> {
    let sigma = parse_cycle(input)?;
    let orbit = realize_from_selector(&sigma, selector)?;
    let record = orbit.to_record();
    let text = match cli.format {
        Format::Json => {
            let report = RealizeReport {
                cycle: sigma.to_string(),
                orbit: record,
            };
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            s += &format!("{}\n", orbit.reduced_points().join(" "));
            s += &format!("cycle: {}  k: {}\n", sigma, record.k);
            s += &format!(
                "numerators over {}: {}\n",
                record.denominator,
                record.numerators.join(" ")
            );
            if let (Some(_), Some(shift)) = (&record.fix, record.shift) {
                s += &format!("fix: {}  shift: {}\n", orbit.fix(), shift);
            }
            s += &format!("dep: {}\n", orbit.dep());
            s
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize, Deserialize)]
struct GroupLine {
    group: String,
    kind: String,
    tally: usize,
}

fn cmd_enumerate(
    cli: &Cli,
    q: usize,
    k: u32,
    group_by: Option<GroupBy>,
) -> Result<ExitCode, Error> {
    let catalog = enumerate_orbits(q, k, budget(cli), cli.jobs.max(1))?;
    let mut text = String::new();
    match group_by {
        None => {
            for i in 0..catalog.len() {
                match cli.format {
                    Format::Json => {
                        text += &serde_json::to_string(&catalog.record(i)).expect("serializable");
                        text.push('\n');
                    }
                    Format::Text => {
                        text += &format!(
                            "{}  ->  {}\n",
                            catalog.orbits()[i].reduced_points().join(" "),
                            catalog.classification(i)
                        );
                    }
                }
            }
        }
        Some(group) => {
            let (groups, kind) = match group {
                GroupBy::Cycle => (catalog.by_cycle(), "cycle"),
                GroupBy::Type => (catalog.by_type(), "type"),
            };
            for (key, indices) in groups {
                match cli.format {
                    Format::Json => {
                        let line = GroupLine {
                            group: key.to_string(),
                            kind: kind.into(),
                            tally: indices.len(),
                        };
                        text += &serde_json::to_string(&line).expect("serializable");
                        text.push('\n');
                    }
                    Format::Text => {
                        text += &format!("{kind} {key}: {} orbits\n", indices.len());
                    }
                }
            }
        }
    }
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    cli: &Cli,
    q: usize,
    k: u32,
    cycle: &Option<String>,
    one_line: bool,
) -> Result<ExitCode, Error> {
    let filter = cycle
        .as_ref()
        .map(|text| parse_cycle_str(text, one_line))
        .transpose()?;
    let report = verify_counts(q, k, budget(cli), filter.as_ref(), cli.jobs.max(1))?;
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => {
            let mut s = String::new();
            s += &format!(
                "q={} k={}: {} orbits ({} points; Möbius count {})\n",
                report.q, report.k, report.total_orbits, report.found_points, report.expected_points
            );
            for c in &report.cycles {
                s += &format!(
                    "cycle {}: tally {} expected {} reconstructed {} ... {}\n",
                    c.cycle,
                    c.tally,
                    c.expected,
                    c.reconstructed,
                    if c.pass { "PASS" } else { "FAIL" }
                );
            }
            for t in &report.types {
                s += &format!(
                    "type {} (size {}, sym {}): tally {} expected {} ... {}\n",
                    t.representative,
                    t.size,
                    t.symmetry_order,
                    t.tally,
                    t.expected,
                    if t.pass { "PASS" } else { "FAIL" }
                );
            }
            s += &format!(
                "fix/dep round trips: {} orbits, {} failures\n",
                report.orbit_consistency.orbits_checked, report.orbit_consistency.fix_dep_failures
            );
            s += &format!("overall: {}\n", if report.pass { "PASS" } else { "FAIL" });
            s
        }
    };
    emit(cli, &text)?;
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    })
}

fn cmd_types(cli: &Cli, q: usize, bound: usize) -> Result<ExitCode, Error> {
    let types = enumerate_types(q, bound)?;
    let text = match cli.format {
        Format::Json => {
            let summaries: Vec<TypeSummary> = types
                .iter()
                .map(|ty| TypeSummary {
                    canonical: ty.canonical().to_string(),
                    size: ty.size(),
                    symmetry_order: ty.symmetry_order(),
                    descent: ty.descent(),
                    representatives: ty.representatives().iter().map(Cycle::to_string).collect(),
                })
                .collect();
            serde_json::to_string_pretty(&summaries).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for ty in &types {
                s += &format!(
                    "{}  size {}  sym {}  des {}\n",
                    ty.canonical(),
                    ty.size(),
                    ty.symmetry_order(),
                    ty.descent()
                );
            }
            let total: usize = types.iter().map(|t| t.size()).sum();
            s += &format!("{} types, {} cycles\n", types.len(), total);
            s
        }
    };
    emit(cli, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_diagram(cli: &Cli, input: &CycleInput, selector: &Selector) -> Result<ExitCode, Error> {
    if cli.out.is_none() {
        return Err(Error::MalformedVector("diagram requires --out PATH".into()));
    }
    let sigma = parse_cycle(input)?;
    let orbit = realize_from_selector(&sigma, selector)?;
    let svg = cyclic::diagram::render_orbit_svg(&orbit);
    emit(cli, &svg)?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Analyze(input) => cmd_analyze(&cli, input),
        Command::Realize { input, selector } => cmd_realize(&cli, input, selector),
        Command::Enumerate { q, k, group_by } => cmd_enumerate(&cli, *q, *k, *group_by),
        Command::Verify { q, k, cycle, one_line } => cmd_verify(&cli, *q, *k, cycle, *one_line),
        Command::Types { q, bound } => cmd_types(&cli, *q, *bound),
        Command::Diagram { input, selector } => cmd_diagram(&cli, input, selector),
    }
}
