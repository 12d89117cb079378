//! `biliaison`: command line front end for the biliaison calculus.
//!
//! Every argument that takes a document accepts inline JSON, a file path, or
//! `-` for standard input. Results go to stdout as JSON, diagnostics to
//! stderr. Exit codes: 0 success, 1 negative verdict, 2 usage or input error.

use std::fmt::Display;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use biliaison::classrep::Ambient;
use biliaison::io::{self, ElementDoc, IoError};
use biliaison::minimality::{self, Verdict};
use biliaison::moves;
use biliaison::seqlattice::{self, SortedSeq};
use biliaison::sigmacalc::{validate_profile, ProfileBounds, SignedStep};
use biliaison::{
    ClassElement, ClassError, DescriptorRegistry, MinimalityError, MoveError, PrimitiveDescriptor,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "biliaison",
    version,
    about = "Exact calculus for biliaison classes of sheaves"
)]
struct Cli {
    /// Descriptor file (one object or an array) to register; repeatable.
    #[arg(long, global = true, value_name = "FILE")]
    ancestor: Vec<PathBuf>,
    /// Ambient space for built-in descriptors, e.g. `pn:2`.
    #[arg(long, global = true, value_name = "pn:N")]
    ambient: Option<Ambient>,
    /// Reject unsorted sequences instead of sorting them.
    #[arg(long, global = true, env = "BILIAISON_STRICT", value_parser = parse_flag, num_args = 0, default_missing_value = "1", default_value = "0")]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

fn parse_flag(s: &str) -> Result<bool, String> {
    match s {
        "" | "0" | "false" => Ok(false),
        "1" | "true" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sorted integer sequences and their counting functions.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Signed step functions.
    #[command(subcommand)]
    Sigma(SigmaCmd),
    /// Class members given by ancestor presentations.
    #[command(subcommand)]
    Class(ClassCmd),
    /// Minimality criteria.
    #[command(subcommand)]
    Minimal(MinimalCmd),
    /// Move chains.
    #[command(subcommand)]
    Chain(ChainCmd),
}

#[derive(Subcommand)]
enum SeqCmd {
    /// Pointwise minimum of counting functions.
    Meet {
        a: String,
        b: String,
        /// Cross-check against the padding algorithm.
        #[arg(long)]
        oracle: bool,
    },
    /// Pointwise maximum of counting functions.
    Join {
        a: String,
        b: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Whether Σ(a, l) ≤ Σ(b, l) for every l.
    Le { a: String, b: String },
    /// Counting function, as a table or at one degree.
    Sigma {
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        l: Option<i64>,
    },
}

#[derive(Subcommand)]
enum SigmaCmd {
    /// Σ(b, −) − Σ(a, −).
    FromPair {
        #[arg(long)]
        b: String,
        #[arg(long)]
        a: String,
    },
    /// Pointwise comparison.
    Leq { s: String, t: String },
    /// Admissibility for given class data.
    Validate {
        s: String,
        /// First section degree of the ancestor; omit for the zero ancestor.
        #[arg(long, allow_hyphen_values = true)]
        e: Option<i64>,
        #[arg(long = "rank-e")]
        rank_e: u64,
        /// Minimal rank of the class.
        #[arg(long, default_value_t = 0)]
        r: u64,
    },
    /// Value on each constant segment.
    Table { s: String },
}

#[derive(Subcommand)]
enum ClassCmd {
    /// Normalize an element and add its Σ and rank.
    Build { f: String },
    /// Compare two elements under ⪯.
    Compare { f: String, g: String },
    /// Meet of two elements (pointwise min of Σ), or join with `--join`.
    Meet {
        f: String,
        g: String,
        #[arg(long)]
        join: bool,
    },
    /// h⁰(F(l)) from the presentation.
    Hilbert {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
        /// Evaluate on the range [l, to].
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
    },
}

#[derive(Subcommand)]
enum MinimalCmd {
    /// Necessary condition from a surjection O(c) → E and a reduction O(a) → E.
    Necessary {
        #[arg(long)]
        c: String,
        #[arg(long)]
        a: String,
        #[arg(long = "rank-e")]
        rank_e: u64,
        #[arg(long)]
        m: u32,
    },
    /// Sufficient condition for a reduction 0 → O(a) → E → F → 0.
    Sufficient {
        f: String,
        /// Assert that F has the minimal rank of its class.
        #[arg(long = "minimal-rank")]
        minimal_rank: bool,
    },
    /// Minimum of a pool of elements with its meet certificate.
    Pool {
        /// Elements, or a single JSON array of elements.
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Bound on strictly descending chains below an element.
    Bound {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        lower: i64,
        #[arg(long, allow_hyphen_values = true)]
        upper: i64,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    /// Chain of moves from START down to MIN.
    Make {
        start: String,
        min: String,
        /// Write the chain here instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Replay a chain; one JSON line per step, then a summary.
    Check {
        start: String,
        chain: String,
        target: String,
    },
}

struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl Display) -> Self {
        CliError {
            code,
            message: message.to_string(),
        }
    }
}

macro_rules! coded {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.code(), e)
            }
        }
    )*};
}
coded!(IoError, ClassError, MinimalityError, MoveError);

type Outcome = Result<ExitCode, CliError>;

struct Ctx {
    registry: DescriptorRegistry,
    strict: bool,
}

impl Ctx {
    fn warn(&self, warnings: Vec<String>) {
        for w in warnings {
            eprintln!("warning: {w}");
        }
    }

    fn seq(&self, arg: &str) -> Result<SortedSeq, CliError> {
        let (s, w) = io::read_seq(&load(arg)?, self.strict)?;
        self.warn(w);
        Ok(s)
    }

    fn step(&self, arg: &str) -> Result<SignedStep, CliError> {
        Ok(io::read_step(&load(arg)?)?)
    }

    fn element(&mut self, arg: &str) -> Result<ClassElement, CliError> {
        let (el, w) = io::read_element(&load(arg)?, &mut self.registry, self.strict)?;
        self.warn(w);
        Ok(el)
    }

    fn elements(&mut self, args: &[String]) -> Result<Vec<ClassElement>, CliError> {
        let mut out = Vec::new();
        for arg in args {
            let text = load(arg)?;
            if text.trim_start().starts_with('[') {
                let docs: Vec<ElementDoc> = serde_json::from_str(&text).map_err(IoError::from)?;
                for doc in docs {
                    let (el, w) = doc.into_element(&mut self.registry, self.strict)?;
                    self.warn(w);
                    out.push(el);
                }
            } else {
                let (el, w) = io::read_element(&text, &mut self.registry, self.strict)?;
                self.warn(w);
                out.push(el);
            }
        }
        Ok(out)
    }
}

/// Inline JSON, `-` for stdin, or a file path.
fn load(arg: &str) -> Result<String, CliError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::new("io", format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::new("io", format!("{arg}: {e}")))
}

fn emit(v: &impl Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn verdict_code(v: Verdict) -> ExitCode {
    match v {
        Verdict::NotMinimal => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn seq_json(s: &SortedSeq) -> Value {
    json!({ "seq": s.entries() })
}

fn run_seq(ctx: &Ctx, cmd: SeqCmd) -> Outcome {
    match cmd {
        SeqCmd::Meet { a, b, oracle } => lattice_op(ctx, &a, &b, oracle, false),
        SeqCmd::Join { a, b, oracle } => lattice_op(ctx, &a, &b, oracle, true),
        SeqCmd::Le { a, b } => {
            match seqlattice::le_witness(&ctx.seq(&a)?, &ctx.seq(&b)?) {
                None => emit(&json!({ "le": true })),
                Some(l) => emit(&json!({ "le": false, "witness": l })),
            }
            Ok(ExitCode::SUCCESS)
        }
        SeqCmd::Sigma { a, l } => {
            let a = ctx.seq(&a)?;
            match l {
                Some(l) => emit(&json!({ "l": l, "sigma": a.sigma_at(l) })),
                None => emit(&json!({ "sigma": a.sigma_profile() })),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn lattice_op(ctx: &Ctx, a: &str, b: &str, oracle: bool, join: bool) -> Outcome {
    let (a, b) = (ctx.seq(a)?, ctx.seq(b)?);
    let out = if join {
        seqlattice::seq_join(&a, &b)
    } else {
        seqlattice::seq_meet(&a, &b)
    };
    if oracle {
        let (m, j) = seqlattice::padded_oracle(&a, &b);
        let expected = if join { j } else { m };
        if expected != out {
            eprintln!("error: result {out} disagrees with the padding oracle ({expected})");
            return Ok(ExitCode::from(1));
        }
    }
    emit(&seq_json(&out));
    Ok(ExitCode::SUCCESS)
}

fn run_sigma(ctx: &Ctx, cmd: SigmaCmd) -> Outcome {
    match cmd {
        SigmaCmd::FromPair { b, a } => {
            emit(&SignedStep::from_pair(&ctx.seq(&b)?, &ctx.seq(&a)?));
            Ok(ExitCode::SUCCESS)
        }
        SigmaCmd::Leq { s, t } => {
            match ctx.step(&s)?.leq_witness(&ctx.step(&t)?) {
                None => emit(&json!({ "leq": true })),
                Some(l) => emit(&json!({ "leq": false, "witness": l })),
            }
            Ok(ExitCode::SUCCESS)
        }
        SigmaCmd::Validate { s, e, rank_e, r } => {
            let bounds = ProfileBounds {
                first_section: e,
                ancestor_rank: rank_e,
                min_rank: r,
            };
            let report = validate_profile(&ctx.step(&s)?, &bounds);
            emit(&report);
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        SigmaCmd::Table { s } => {
            let s = ctx.step(&s)?;
            emit(&json!({ "table": s.table(), "eventual": s.eventual() }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_class(ctx: &mut Ctx, cmd: ClassCmd) -> Outcome {
    match cmd {
        ClassCmd::Build { f } => {
            let f = ctx.element(&f)?;
            emit(&ElementDoc::from_element(&f));
        }
        ClassCmd::Compare { f, g } => {
            let (f, g) = (ctx.element(&f)?, ctx.element(&g)?);
            f.check_comparable(&g)?;
            let witness = f.sigma().leq_witness(g.sigma());
            let mut out =
                json!({ "preceq": witness.is_none(), "succeq": g.sigma().leq(f.sigma()) });
            if let Some(l) = witness {
                out["witness"] = json!(l);
            }
            emit(&out);
        }
        ClassCmd::Meet { f, g, join } => {
            let (f, g) = (ctx.element(&f)?, ctx.element(&g)?);
            let out = if join { f.join(&g)? } else { f.meet(&g)? };
            emit(&ElementDoc::from_element(&out));
        }
        ClassCmd::Hilbert { f, l, to } => {
            let f = ctx.element(&f)?;
            match to {
                None => emit(&json!({ "l": l, "hilbert": f.hilbert(l)? })),
                Some(to) => {
                    let values = (l..=to)
                        .map(|d| f.hilbert(d))
                        .collect::<Result<Vec<_>, _>>()?;
                    emit(&json!({ "from": l, "to": to, "hilbert": values }));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_minimal(ctx: &mut Ctx, cmd: MinimalCmd) -> Outcome {
    match cmd {
        MinimalCmd::Necessary { c, a, rank_e, m } => {
            let r = minimality::necessary_check(&ctx.seq(&c)?, &ctx.seq(&a)?, rank_e, m)?;
            emit(&r);
            Ok(verdict_code(r.verdict))
        }
        MinimalCmd::Sufficient { f, minimal_rank } => {
            let r = minimality::sufficient_check(&ctx.element(&f)?, minimal_rank)?;
            emit(&r);
            Ok(verdict_code(r.verdict))
        }
        MinimalCmd::Pool { elements } => {
            let pool = ctx.elements(&elements)?;
            let r = minimality::pool_minimum(&pool)?;
            emit(&json!({
                "minimum": ElementDoc::from_element(&r.minimum),
                "attained_by": r.attained_by,
                "certificate": r.certificate,
            }));
            Ok(ExitCode::SUCCESS)
        }
        MinimalCmd::Bound { f, lower, upper } => {
            let f = ctx.element(&f)?;
            let bound = minimality::descent_bound(f.sigma(), &f.bounds(), lower, upper)?;
            // u128 does not fit every JSON reader; emit it as a string when large.
            let value =
                u64::try_from(bound).map_or_else(|_| json!(bound.to_string()), |b| json!(b));
            emit(&json!({ "bound": value, "lower": lower, "upper": upper }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_chain(ctx: &mut Ctx, cmd: ChainCmd) -> Outcome {
    match cmd {
        ChainCmd::Make { start, min, out } => {
            let (start, min) = (ctx.element(&start)?, ctx.element(&min)?);
            let chain = moves::synthesize_chain(&start, &min)?;
            let text = serde_json::to_string(&chain).expect("serializable");
            match out {
                Some(path) => std::fs::write(&path, format!("{text}\n"))
                    .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?,
                None => println!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        ChainCmd::Check {
            start,
            chain,
            target,
        } => {
            let start = ctx.element(&start)?;
            let chain = io::read_chain(&load(&chain)?)?;
            let target = ctx.element(&target)?;
            let report = moves::verify_chain(&start, &chain, &target);
            print!("{}", report.to_json_lines());
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn register_files(registry: &mut DescriptorRegistry, files: &[PathBuf]) -> Result<(), CliError> {
    for path in files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
        let descs: Vec<PrimitiveDescriptor> = if text.trim_start().starts_with('[') {
            serde_json::from_str(&text).map_err(IoError::from)?
        } else {
            vec![io::read_descriptor(&text)?]
        };
        for d in descs {
            registry.register(d)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        registry: DescriptorRegistry::new(cli.ambient),
        strict: cli.strict,
    };
    register_files(&mut ctx.registry, &cli.ancestor)?;
    match cli.command {
        Command::Seq(c) => run_seq(&ctx, c),
        Command::Sigma(c) => run_sigma(&ctx, c),
        Command::Class(c) => run_class(&mut ctx, c),
        Command::Minimal(c) => run_minimal(&mut ctx, c),
        Command::Chain(c) => run_chain(&mut ctx, c),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": { "code": e.code, "message": e.message } })
            );
            ExitCode::from(2)
        }
    }
}
