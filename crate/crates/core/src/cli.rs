//! Command-line front end. Exit codes: 0 success, 1 input or validation
//! error, 2 no equilibrium within the step cap, 64 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{Semiring, SuperMatrix};
use crate::error::Error;
use crate::fuzzy::{minor_product_moment, super_pseudo_product, FuzzyMatrix, SuperStateVector};
use crate::io::{self, LoadError};
use crate::models::{self, ModelKind, ModelSpec, RunTrace, Side, Space, Verdict, DEFAULT_FAM_TOL};
use crate::partition::{
    classify_partition, count_partitions, count_pseudo_partitions, count_symmetric_partitions, enumerate_partitions,
    PartitionClass,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_EQUILIBRIUM: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const MAX_STEPS_ENV: &str = "SUPERFUZZ_MAX_STEPS";

/// Listing more schemes than this needs --count-only.
const LIST_LIMIT: u128 = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "superfuzz",
    version,
    about = "Supermatrix algebra and multi-expert fuzzy models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate a model from an initial state to its hidden pattern
    Run(RunArgs),
    /// Combine or transform matrices; prints the result as matrix JSON
    Compose(ComposeArgs),
    /// List or count the partition schemes of an n×m matrix
    Enumerate(EnumerateArgs),
    /// Report the partition class and symmetry predicates of a matrix
    Classify {
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    #[arg(long)]
    model: PathBuf,
    /// state vector JSON, either a file path or an inline object
    #[arg(long)]
    initial: String,
    /// stimulus side (required for frm/bam/fam, rejected for fcm)
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// FAM convergence tolerance (max-norm)
    #[arg(long, default_value_t = DEFAULT_FAM_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Domain,
    Range,
    X,
    Y,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Domain | SideArg::X => Side::Domain,
            SideArg::Range | SideArg::Y => Side::Range,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Op {
    Multiply,
    Add,
    Transpose,
    PseudoTranspose,
    Moment,
    PseudoProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SemiringArg {
    Plus,
    Maxmin,
}

#[derive(Debug, clap::Args)]
struct ComposeArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long, value_enum, default_value_t = SemiringArg::Plus)]
    semiring: SemiringArg,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    All,
    Symmetric,
    Pseudo,
}

#[derive(Debug, clap::Args)]
struct EnumerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    rows: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    cols: u32,
    #[arg(long, value_enum, default_value_t = ClassArg::All)]
    class: ClassArg,
    #[arg(long)]
    count_only: bool,
}

/// Failure of a subcommand, mapped onto an exit code.
enum Fail {
    Usage(String),
    Input(String),
}

impl From<LoadError> for Fail {
    fn from(e: LoadError) -> Self {
        Fail::Input(e.to_string())
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Input(e.to_string())
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{text}");
                EXIT_OK
            } else {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            };
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a, out),
        Command::Compose(a) => cmd_compose(a, out),
        Command::Enumerate(a) => cmd_enumerate(a, out),
        Command::Classify { a } => cmd_classify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            EXIT_USAGE
        }
        Err(Fail::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn cmd_run(args: RunArgs, out: &mut dyn Write) -> Result<i32, Fail> {
    let model = io::load_model(&args.model)?;
    let side = match (model.kind, args.side) {
        (ModelKind::Fcm, Some(_)) => return Err(Fail::Usage("--side is not accepted for fcm models".into())),
        (ModelKind::Fcm, None) => Side::Domain,
        (kind, None) => return Err(Fail::Usage(format!("--side is required for {kind} models"))),
        (_, Some(s)) => s.side(),
    };
    let initial = if args.initial.trim_start().starts_with('{') {
        io::parse_state(&args.initial)?
    } else {
        io::load_state(&args.initial)?
    };
    let max_steps = match args.max_steps {
        Some(n) => n,
        None => match std::env::var(MAX_STEPS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Fail::Usage(format!("{MAX_STEPS_ENV}={v:?} is not a step count")))?,
            Err(_) => models::default_max_steps(&model),
        },
    };
    let trace = models::run_model(&model, &initial, side, max_steps, args.tol)?;
    let side_name = (model.kind != ModelKind::Fcm).then(|| Space::from(side).name());
    let request = json!({
        "model": args.model.display().to_string(),
        "initial": args.initial,
        "side": side_name,
        "max_steps": max_steps,
        "tol": args.tol,
        "format": match args.format { Format::Text => "text", Format::Json => "json" },
    });
    let written = match args.format {
        Format::Text => out.write_all(render_text(&model, &trace, &request).as_bytes()),
        Format::Json => writeln!(out, "{}", render_json(&model, &trace, request)),
    };
    written.map_err(|e| Fail::Input(e.to_string()))?;
    Ok(if trace.verdict.converged() {
        EXIT_OK
    } else {
        EXIT_NO_EQUILIBRIUM
    })
}

fn step_label(trace: &RunTrace, index: usize) -> String {
    let step = &trace.steps[index];
    format!("step {index} (round {}) {}", index / trace.round_len, step.space.name())
}

/// Per-expert breakdown of one state: block values plus the labels of the
/// coordinates that are on.
fn expert_blocks(model: &ModelSpec, space: Space, state: &SuperStateVector) -> Vec<(Vec<f64>, Vec<String>)> {
    let labels = model.labels(space);
    state
        .blocks()
        .into_iter()
        .enumerate()
        .map(|(k, block)| {
            let on = block
                .iter()
                .enumerate()
                .filter(|(_, &v)| v > 0.0)
                .map(|(i, _)| {
                    labels
                        .get(k)
                        .and_then(|g| g.get(i))
                        .cloned()
                        .unwrap_or_else(|| format!("#{}", i + 1))
                })
                .collect();
            (block.to_vec(), on)
        })
        .collect()
}

pub fn render_text(model: &ModelSpec, trace: &RunTrace, request: &Value) -> String {
    let mut s = String::new();
    let c = &model.connection;
    s += &format!(
        "model: {} {} {}x{} row_cuts {:?} col_cuts {:?}\n",
        model.kind,
        model.variant,
        c.rows(),
        c.cols(),
        c.scheme().row_cuts,
        c.scheme().col_cuts
    );
    s += &format!("request: {request}\n");
    for (i, step) in trace.steps.iter().enumerate() {
        let label = step_label(trace, i);
        if let Some(raw) = &step.raw {
            s += &format!(
                "{label} raw:   {}\n",
                crate::algebra::render_values(raw, step.state.cuts())
            );
        }
        s += &format!("{label} state: {}\n", step.state.render());
    }
    s += &format!("verdict: {}\n", trace.verdict);
    if let Some(rounds) = trace.equilibrium() {
        s += "hidden pattern:\n";
        for k in rounds {
            for step in trace.round(k) {
                s += &format!("  round {k} {} {}\n", step.space.name(), step.state.render());
                for (b, (values, on)) in expert_blocks(model, step.space, &step.state).iter().enumerate() {
                    s += &format!(
                        "    expert {}: {} on: {}\n",
                        b + 1,
                        crate::algebra::render_values(values, &[]),
                        if on.is_empty() { "-".to_string() } else { on.join(", ") }
                    );
                }
            }
        }
    }
    s
}

pub fn render_json(model: &ModelSpec, trace: &RunTrace, request: Value) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, st)| {
            json!({
                "index": i,
                "round": i / trace.round_len,
                "space": st.space.name(),
                "raw": st.raw,
                "rendered": st.state.render(),
                "state": io::state_to_value(&st.state),
            })
        })
        .collect();
    let verdict = match trace.verdict {
        Verdict::FixedPoint { round } => json!({"type": "fixed_point", "round": round}),
        Verdict::LimitCycle { start, period } => json!({"type": "limit_cycle", "start": start, "period": period}),
        Verdict::MaxStepsExceeded => json!({"type": "max_steps_exceeded"}),
    };
    let hidden: Vec<Value> = trace
        .equilibrium()
        .into_iter()
        .flatten()
        .flat_map(|k| trace.round(k).iter().map(move |st| (k, st)))
        .map(|(k, st)| {
            let experts: Vec<Value> = expert_blocks(model, st.space, &st.state)
                .into_iter()
                .enumerate()
                .map(|(b, (values, on))| json!({"expert": b + 1, "values": values, "on": on}))
                .collect();
            json!({"round": k, "space": st.space.name(), "state": io::state_to_value(&st.state), "experts": experts})
        })
        .collect();
    json!({
        "request": request,
        "model": {
            "kind": model.kind.name(),
            "variant": model.variant.name(),
            "rows": model.connection.rows(),
            "cols": model.connection.cols(),
        },
        "steps": steps,
        "verdict": verdict,
        "hidden_pattern": hidden,
    })
}

fn semiring(s: SemiringArg) -> Semiring {
    match s {
        SemiringArg::Plus => Semiring::PlusTimes,
        SemiringArg::Maxmin => Semiring::MaxMin,
    }
}

fn moment(a: SuperMatrix, s: Semiring) -> Result<SuperMatrix, Error> {
    if s == Semiring::MaxMin {
        return Ok(minor_product_moment(&FuzzyMatrix::new(a)?)?.into_inner());
    }
    let t = a.transpose();
    if a.scheme().row_cuts.is_empty() {
        a.multiply(&t, s)
    } else if a.scheme().col_cuts.is_empty() {
        t.multiply(&a, s)
    } else {
        Err(Error::NotSpecial)
    }
}

fn cmd_compose(args: ComposeArgs, out: &mut dyn Write) -> Result<i32, Fail> {
    let a = io::load_matrix(&args.a)?;
    let s = semiring(args.semiring);
    let needs_b = matches!(args.op, Op::Multiply | Op::Add);
    let b = match (&args.b, needs_b) {
        (Some(p), true) => Some(io::load_matrix(p)?),
        (None, true) => return Err(Fail::Usage("--b is required for this operation".into())),
        (Some(_), false) => return Err(Fail::Usage("--b is not used by this operation".into())),
        (None, false) => None,
    };
    let result = match args.op {
        Op::Multiply => a.multiply(b.as_ref().expect("checked"), s)?,
        Op::Add => a.add(b.as_ref().expect("checked"))?,
        Op::Transpose => a.transpose(),
        Op::PseudoTranspose => a.pseudo_transpose(),
        Op::Moment => moment(a, s)?,
        Op::PseudoProduct => super_pseudo_product(&FuzzyMatrix::new(a)?)?.into_inner(),
    };
    writeln!(out, "{}", io::matrix_to_json(&result)).map_err(|e| Fail::Input(e.to_string()))?;
    Ok(EXIT_OK)
}

/// Known hand counts that undercount the exhaustive enumeration.
fn census_note(rows: usize, cols: usize, class: ClassArg) -> Option<&'static str> {
    match (rows, cols, class) {
        (3, 3, ClassArg::All) => Some(
            "note: 15 is exhaustive; the commonly quoted hand listing of 14 omits row_cuts [2] with col_cuts [1, 2]",
        ),
        (4, 4, ClassArg::Symmetric) => {
            Some("note: 7 is exhaustive; the commonly quoted hand listing of 6 omits the cell partition [1, 2, 3]")
        }
        _ => None,
    }
}

fn cmd_enumerate(args: EnumerateArgs, out: &mut dyn Write) -> Result<i32, Fail> {
    let (n, m) = (args.rows as usize, args.cols as usize);
    if args.class != ClassArg::All && n != m {
        return Err(Fail::Usage("symmetric and pseudo classes need a square matrix".into()));
    }
    let count = match args.class {
        ClassArg::All => count_partitions(n, m),
        ClassArg::Symmetric => count_symmetric_partitions(n),
        ClassArg::Pseudo => count_pseudo_partitions(n),
    }
    .ok_or_else(|| Fail::Usage("count does not fit in 128 bits".into()))?;
    let mut text = String::new();
    if args.count_only {
        text += &format!("{count}\n");
    } else {
        if count > LIST_LIMIT {
            return Err(Fail::Usage(format!(
                "{count} schemes is too many to list; use --count-only"
            )));
        }
        let keep = |c: PartitionClass| match args.class {
            ClassArg::All => true,
            ClassArg::Symmetric => c.is_symmetric(true),
            ClassArg::Pseudo => c.is_pseudo(true),
        };
        for s in enumerate_partitions(n, m) {
            if keep(classify_partition(&s, n, m)) {
                text += &io::scheme_to_json(&s);
                text.push('\n');
            }
        }
        text += &format!("count: {count}\n");
    }
    if let Some(note) = census_note(n, m, args.class) {
        text += note;
        text.push('\n');
    }
    out.write_all(text.as_bytes()).map_err(|e| Fail::Input(e.to_string()))?;
    Ok(EXIT_OK)
}

fn class_name(c: PartitionClass) -> &'static str {
    match c {
        PartitionClass::Trivial => "trivial",
        PartitionClass::General => "general",
        PartitionClass::Symmetric => "symmetric",
        PartitionClass::Pseudo => "pseudo",
        PartitionClass::SymmetricAndPseudo => "symmetric_and_pseudo",
        PartitionClass::Cell => "cell",
    }
}

fn cmd_classify(path: PathBuf, out: &mut dyn Write) -> Result<i32, Fail> {
    let a = io::load_matrix(&path)?;
    let class = classify_partition(a.scheme(), a.rows(), a.cols());
    let report = json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "class": class_name(class),
        "flat_symmetric": a.is_flat_symmetric(),
        "symmetric_supermatrix": a.is_symmetric_supermatrix(),
        "pseudo_symmetric": a.is_pseudo_symmetric(),
        "pseudo_symmetric_supermatrix": a.is_pseudo_symmetric_supermatrix(),
    });
    writeln!(out, "{report}").map_err(|e| Fail::Input(e.to_string()))?;
    Ok(EXIT_OK)
}
