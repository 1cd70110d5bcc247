//! Command-line front end. `run` is separate from `main` so it can be driven
//! in-process with arbitrary streams.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::json;

use crate::automorphism::enumerate_automorphisms;
use crate::enumeration::{corpus_verify, enumerate_semigroups, EnumerationTask};
use crate::error::{Error, Result};
use crate::inflation::{
    build_inflation, verify_inflation, verify_kernel_in_h, FiberSizeSpec, InflationAnalysis,
    TransversalPolicy,
};
use crate::partition::Partition;
use crate::table::{check_associativity, product_set, CayleyTable, Magma};
use crate::theorem::verify_theorem;
use crate::Limits;

/// Environment variable holding the default worker thread count.
pub const THREADS_ENV: &str = "SEMIAUT_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "semiaut", version, about = "Inflation structure and automorphisms of finite semigroups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Override the table-order and enumeration-order caps.
    #[arg(long, global = true)]
    max_order: Option<usize>,

    /// Worker threads (defaults to $SEMIAUT_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyKind {
    Least,
    Greatest,
    Seeded,
}

#[derive(Debug, Args)]
struct PolicyArgs {
    /// Transversal choice.
    #[arg(long, value_enum, default_value_t = PolicyKind::Least)]
    policy: PolicyKind,

    /// Seed for `--policy seeded`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl PolicyArgs {
    fn policy(&self) -> TransversalPolicy {
        match self.policy {
            PolicyKind::Least => TransversalPolicy::Least,
            PolicyKind::Greatest => TransversalPolicy::Greatest,
            PolicyKind::Seeded => TransversalPolicy::Seeded(self.seed),
        }
    }
}

#[derive(Debug, Args)]
struct EnumerationArgs {
    /// Order of the semigroups to enumerate.
    #[arg(long)]
    order: usize,

    /// `labelled` or `up-to-iso`.
    #[arg(long, default_value = "labelled")]
    mode: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Associativity verdict for a table.
    Check {
        /// Table file, or `-` for standard input.
        input: String,
    },
    /// h, psi, S^2, transversal, theta and the inflation verdict.
    Analyze {
        input: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// The automorphism group of a table.
    Aut { input: String },
    /// Full semidirect-decomposition report.
    VerifyTheorem {
        input: String,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Build an inflation from a fiber-size spec (base table + `sizes:` line).
    BuildInflation { input: String },
    /// List all semigroups of a given order.
    Enumerate {
        #[command(flatten)]
        task: EnumerationArgs,
    },
    /// Verify the decomposition on every semigroup of a given order.
    Corpus {
        #[command(flatten)]
        task: EnumerationArgs,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Write one JSON record per table to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

struct Context<'a> {
    format: Format,
    limits: Limits,
    threads: Option<usize>,
    pool: Option<rayon::ThreadPool>,
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Context<'_> {
    /// Runs `f` inside the configured thread pool, if any.
    fn compute<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(f),
            None => f(),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let limits = match cli.max_order {
        Some(m) => Limits::default().with_max_order(m),
        None => Limits::default(),
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()));
    let pool = match threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => Some(pool),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT_ERROR;
            }
        },
        None => None,
    };
    let mut ctx = Context {
        format: cli.format,
        limits,
        threads,
        pool,
        stdin,
        out: stdout,
    };
    match dispatch(&cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_resource_bound() {
                EXIT_RESOURCE
            } else {
                EXIT_INPUT_ERROR
            }
        }
    }
}

fn read_input(ctx: &mut Context<'_>, input: &str) -> Result<String> {
    let mut text = String::new();
    if input == "-" {
        ctx.stdin.read_to_string(&mut text)?;
    } else {
        File::open(input)?.read_to_string(&mut text)?;
    }
    Ok(text)
}

fn read_table(ctx: &mut Context<'_>, input: &str) -> Result<CayleyTable> {
    crate::table::parse_table(&read_input(ctx, input)?)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn join(v: impl IntoIterator<Item = usize>) -> String {
    v.into_iter().join(" ")
}

fn blocks_json(p: &Partition) -> serde_json::Value {
    json!(p.blocks())
}

fn rows_json(t: &Magma) -> serde_json::Value {
    json!((0..t.order()).map(|i| t.row(i).to_vec()).collect::<Vec<_>>())
}

fn dispatch(command: &Command, ctx: &mut Context<'_>) -> Result<i32> {
    match command {
        Command::Check { input } => check(ctx, input),
        Command::Analyze { input, policy } => analyze(ctx, input, policy.policy()),
        Command::Aut { input } => aut(ctx, input),
        Command::VerifyTheorem { input, policy } => theorem(ctx, input, policy.policy()),
        Command::BuildInflation { input } => build(ctx, input),
        Command::Enumerate { task } => enumerate(ctx, task),
        Command::Corpus {
            task,
            policy,
            report,
        } => corpus(ctx, task, policy.policy(), report.as_ref()),
    }
}

fn check(ctx: &mut Context<'_>, input: &str) -> Result<i32> {
    let magma = Magma::parse(&read_input(ctx, input)?)?;
    let verdict = check_associativity(&magma);
    match ctx.format {
        Format::Text => match verdict {
            Ok(()) => writeln!(ctx.out, "associative")?,
            Err(w) => writeln!(
                ctx.out,
                "not associative: ({i}*{j})*{k} != {i}*({j}*{k})",
                i = w.i,
                j = w.j,
                k = w.k
            )?,
        },
        Format::Structured => emit_json(
            ctx.out,
            &match verdict {
                Ok(()) => json!({ "associative": true }),
                Err(w) => json!({ "associative": false, "witness": [w.i, w.j, w.k] }),
            },
        )?,
    }
    Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_VERDICT_FALSE })
}

fn analyze(ctx: &mut Context<'_>, input: &str, policy: TransversalPolicy) -> Result<i32> {
    let table = read_table(ctx, input)?;
    let a = InflationAnalysis::new(&table, policy);
    let inflation = verify_inflation(&table, &a.retraction);
    let kernel = verify_kernel_in_h(&a.retraction, &a.h);
    let mut sizes = a.psi.block_sizes();
    sizes.sort_unstable();
    let square = product_set(&table);
    match ctx.format {
        Format::Text => {
            let out = &mut ctx.out;
            writeln!(out, "order: {}", table.order())?;
            writeln!(out, "productSet: {}", join(square.iter().copied()))?;
            writeln!(out, "h: {}", a.h)?;
            writeln!(out, "psi: {}", a.psi)?;
            writeln!(out, "psiClassSizes: {}", join(sizes.iter().copied()))?;
            writeln!(out, "transversal: {}", join(a.transversal.representatives().iter().copied()))?;
            writeln!(out, "policy: {policy}")?;
            writeln!(out, "theta: {}", join(a.retraction.theta().iter().copied()))?;
            match inflation {
                Ok(()) => writeln!(out, "inflation: ok")?,
                Err(w) => writeln!(out, "inflation: failed ({w})")?,
            }
            match kernel {
                Ok(()) => writeln!(out, "kernelInH: ok")?,
                Err(w) => writeln!(out, "kernelInH: failed ({}, {})", w.a, w.b)?,
            }
        }
        Format::Structured => emit_json(
            ctx.out,
            &json!({
                "order": table.order(),
                "productSet": square,
                "h": blocks_json(&a.h),
                "psi": blocks_json(&a.psi),
                "psiClassSizes": sizes,
                "transversal": a.transversal.representatives(),
                "policy": policy.to_string(),
                "theta": a.retraction.theta(),
                "inflation": inflation.is_ok(),
                "kernelInH": kernel.is_ok(),
            }),
        )?,
    }
    Ok(if inflation.is_ok() && kernel.is_ok() { EXIT_OK } else { EXIT_VERDICT_FALSE })
}

fn aut(ctx: &mut Context<'_>, input: &str) -> Result<i32> {
    let table = read_table(ctx, input)?;
    let group = ctx.compute(|| enumerate_automorphisms(&table, &ctx.limits))?;
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "autOrder: {}", group.order())?;
            ctx.out.write_all(group.to_text().as_bytes())?;
        }
        Format::Structured => emit_json(
            ctx.out,
            &json!({ "autOrder": group.order(), "elements": group.elements() }),
        )?,
    }
    Ok(EXIT_OK)
}

fn theorem(ctx: &mut Context<'_>, input: &str, policy: TransversalPolicy) -> Result<i32> {
    let table = read_table(ctx, input)?;
    let report = ctx.compute(|| verify_theorem(&table, policy, &ctx.limits))?;
    match ctx.format {
        Format::Text => ctx.out.write_all(report.to_text().as_bytes())?,
        Format::Structured => emit_json(
            ctx.out,
            &serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?,
        )?,
    }
    Ok(if report.all_flags_hold() { EXIT_OK } else { EXIT_VERDICT_FALSE })
}

fn build(ctx: &mut Context<'_>, input: &str) -> Result<i32> {
    let spec = FiberSizeSpec::parse(&read_input(ctx, input)?)?;
    let (table, r) = build_inflation(&spec, ctx.limits.max_order)?;
    let verdict = verify_inflation(&table, &r);
    match ctx.format {
        Format::Text => {
            ctx.out.write_all(table.to_text().as_bytes())?;
            writeln!(ctx.out, "# theta: {}", join(r.theta().iter().copied()))?;
        }
        Format::Structured => emit_json(
            ctx.out,
            &json!({
                "order": table.order(),
                "table": rows_json(&table),
                "theta": r.theta(),
                "inflation": verdict.is_ok(),
            }),
        )?,
    }
    Ok(if verdict.is_ok() { EXIT_OK } else { EXIT_VERDICT_FALSE })
}

fn task_from(ctx: &Context<'_>, args: &EnumerationArgs) -> Result<EnumerationTask> {
    Ok(EnumerationTask {
        order: args.order,
        mode: args.mode.parse()?,
        parallelism: ctx.threads,
    })
}

fn enumerate(ctx: &mut Context<'_>, args: &EnumerationArgs) -> Result<i32> {
    let task = task_from(ctx, args)?;
    let tables = ctx.compute(|| enumerate_semigroups(&task, &ctx.limits))?;
    match ctx.format {
        Format::Text => {
            writeln!(ctx.out, "# count: {}", tables.len())?;
            for t in &tables {
                writeln!(ctx.out)?;
                ctx.out.write_all(t.to_text().as_bytes())?;
            }
        }
        Format::Structured => emit_json(
            ctx.out,
            &json!({
                "order": task.order,
                "mode": task.mode.to_string(),
                "count": tables.len(),
                "tables": tables.iter().map(|t| rows_json(t)).collect::<Vec<_>>(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn corpus(
    ctx: &mut Context<'_>,
    args: &EnumerationArgs,
    policy: TransversalPolicy,
    report: Option<&PathBuf>,
) -> Result<i32> {
    let task = task_from(ctx, args)?;
    let limits = ctx.limits;
    let summary = match report {
        Some(path) => {
            let mut sink = BufWriter::new(File::create(path)?);
            ctx.compute(|| corpus_verify(&task, policy, &limits, Some(&mut sink)))?
        }
        None => ctx.compute(|| corpus_verify(&task, policy, &limits, None))?,
    };
    match ctx.format {
        Format::Text => ctx.out.write_all(summary.to_text().as_bytes())?,
        Format::Structured => emit_json(
            ctx.out,
            &json!({
                "tablesSeen": summary.tables_seen,
                "theoremFailures": summary.theorem_failures,
                "histogram": summary.histogram.iter().map(|((a, h, g), c)| {
                    json!({ "autOrder": a, "hOrder": h, "gOrder": g, "count": c })
                }).collect::<Vec<_>>(),
                "elapsedMs": summary.elapsed.as_millis() as u64,
            }),
        )?,
    }
    Ok(if summary.theorem_failures == 0 { EXIT_OK } else { EXIT_VERDICT_FALSE })
}
