//! Command front end shared by the `help-psl2` binary and its tests.
//!
//! Exit codes: 0 verified (or nothing to verify), 1 a nontrivial admissible
//! chain was found by `verify`, 2 usage or parameter error.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::psl2::{ClassId, GroupData};
use crate::report::{self, ReportDocument};
use crate::solver::{self, format_rat, Constraints, SearchOptions, SolverReport, Verdict};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONTRIVIAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable with the worker thread count (0 = automatic).
pub const THREADS_ENV: &str = "HELP_PSL2_THREADS";

#[derive(Debug, Parser)]
#[command(name = "help-psl2", version, about = "HeLP-method checks for torsion units in Z PSL(2,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Brauer characters φ_0..φ_kmax on the p-regular classes.
    Table(TableArgs),
    /// Check that every admissible unit of order r^n is a group element.
    Verify(SolveArgs),
    /// List every admissible chain without judging it.
    Solve(SolveArgs),
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Characteristic p (prime).
    #[arg(long)]
    p: u64,
    /// Exponent f, q = p^f.
    #[arg(long, default_value_t = 1)]
    f: u32,
}

#[derive(Debug, Args)]
struct JsonArg {
    /// Write the report document to PATH, or to standard output when no
    /// path (or `-`) is given.
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, default_value_t = 3)]
    kmax: u32,
    #[command(flatten)]
    json: JsonArg,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Prime r != p.
    #[arg(long)]
    r: u64,
    /// The unit order is r^n.
    #[arg(long)]
    n: u32,
    /// Character indices, e.g. `--k 1,2,5`. Defaults to 1..=min(r^(n-1)+1, max(o_a,o_b)-1).
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<u32>>,
    /// Box bound B for partial augmentations.
    #[arg(long, default_value_t = 5)]
    bound: i64,
    /// Use only the character multiplicities and skip the mod-r congruences.
    #[arg(long)]
    pure_help: bool,
    #[command(flatten)]
    json: JsonArg,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) => n,
            Err(_) => {
                let _ = writeln!(err, "error: {THREADS_ENV} must be a non-negative integer, got {v:?}");
                return EXIT_USAGE;
            }
        },
        Err(_) => 0,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return EXIT_USAGE;
        }
    };
    match cli.command {
        Command::Table(a) => cmd_table(&a, out, err),
        Command::Verify(a) => cmd_solve(&a, true, &pool, out, err),
        Command::Solve(a) => cmd_solve(&a, false, &pool, out, err),
    }
}

fn usage(err: &mut dyn Write, e: Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    EXIT_USAGE
}

fn emit_json(doc: &ReportDocument, target: &str, out: &mut dyn Write, err: &mut dyn Write) -> bool {
    let text = report::to_json(doc);
    if target == "-" {
        return out.write_all(text.as_bytes()).is_ok();
    }
    match std::fs::write(target, text) {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {target}: {e}");
            false
        }
    }
}

fn class_label(g: &GroupData, id: ClassId) -> String {
    match g.class(id) {
        Ok(c) => format!("{}[{}]", c.family, c.id.0),
        Err(_) => id.to_string(),
    }
}

fn print_group(g: &GroupData, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "PSL(2,{}): p = {}, f = {}, d = {}, o_a = {}, o_b = {}", g.q, g.p, g.f, g.d, g.o_a, g.o_b)?;
    writeln!(out, "{} classes:", g.classes().len())?;
    for c in g.classes() {
        writeln!(out, "  [{}] {:<8} order {}", c.id.0, c.family.to_string(), c.order)?;
    }
    Ok(())
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let g = match GroupData::build(a.group.p, a.group.f) {
        Ok(g) => g,
        Err(e) => return usage(err, e),
    };
    let doc = match report::table_document(&g, a.kmax, start.elapsed().as_millis() as u64) {
        Ok(doc) => doc,
        Err(e) => return usage(err, e),
    };
    match a.json.json.as_deref() {
        Some("-") => {}
        target => {
            let _ = render_table(&g, &doc, out);
            if let Some(path) = target {
                if !emit_json(&doc, path, out, err) {
                    return EXIT_USAGE;
                }
            }
            return EXIT_OK;
        }
    }
    if emit_json(&doc, "-", out, err) {
        EXIT_OK
    } else {
        EXIT_USAGE
    }
}

fn render_table(g: &GroupData, doc: &ReportDocument, out: &mut dyn Write) -> std::io::Result<()> {
    print_group(g, out)?;
    let report::Results::Table(t) = &doc.results else {
        return Ok(());
    };
    for row in &t.characters {
        writeln!(out, "φ_{} (degree {}):", row.k, row.degree)?;
        for v in &row.values {
            writeln!(out, "  {:<12} {:<40} ≈ {:.6}", class_label(g, v.class), v.display, v.numeric[0])?;
        }
    }
    Ok(())
}

fn cmd_solve(a: &SolveArgs, verify: bool, pool: &rayon::ThreadPool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let g = match GroupData::build(a.group.p, a.group.f) {
        Ok(g) => g,
        Err(e) => return usage(err, e),
    };
    if a.r == g.p {
        return usage(err, Error::RIsCharacteristic(a.r));
    }
    let chars = a.k.clone().unwrap_or_else(|| solver::default_characters(&g, a.r, a.n));
    let constraints = if a.pure_help { Constraints::help_only() } else { Constraints::default() };
    let opts = SearchOptions { bound: a.bound, constraints, check_stability: verify };
    let rep = match pool.install(|| solver::solve(&g, a.r, a.n, &chars, &opts)) {
        Ok(rep) => rep,
        Err(e) => return usage(err, e),
    };
    let command = if verify { "verify" } else { "solve" };
    let doc = report::solver_document(&g, command, &rep, start.elapsed().as_millis() as u64);
    let to_stdout = a.json.json.as_deref() == Some("-");
    if !to_stdout {
        let _ = render_solver(&g, &rep, verify, out);
    }
    if let Some(target) = a.json.json.as_deref() {
        if !emit_json(&doc, target, out, err) {
            return EXIT_USAGE;
        }
    }
    if verify && rep.verdict == Verdict::NontrivialChainFound {
        EXIT_NONTRIVIAL
    } else {
        EXIT_OK
    }
}

fn render_solver(g: &GroupData, rep: &SolverReport, verify: bool, out: &mut dyn Write) -> std::io::Result<()> {
    let order = rep.r.pow(rep.n);
    writeln!(out, "PSL(2,{}): p = {}, f = {}, d = {}, o_a = {}, o_b = {}", g.q, g.p, g.f, g.d, g.o_a, g.o_b)?;
    let ks: Vec<String> = rep.characters.iter().map(u32::to_string).collect();
    writeln!(
        out,
        "units of order {order} = {}^{}; characters k = {}; box [-{b}, {b}]; congruences {}",
        rep.r,
        rep.n,
        ks.join(","),
        if rep.constraints.wagner { "on" } else { "off" },
        b = rep.bound,
    )?;
    if rep.group_classes_of_order == 0 {
        writeln!(out, "note: no elements of this order in G")?;
    }
    writeln!(out, "admissible chains: {}", rep.chains.len())?;
    for (i, c) in rep.chains.iter().enumerate() {
        let levels: Vec<String> = c
            .chain
            .vectors()
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let name = if j == 0 { "u".to_string() } else { format!("u^{}", rep.r.pow(j as u32)) };
                let ents: Vec<String> = v.nonzero().map(|(id, e)| format!("{}: {e}", class_label(g, id))).collect();
                format!("{name} {{{}}}", ents.join(", "))
            })
            .collect();
        writeln!(out, "  #{} {}  {}", i + 1, if c.trivial { "trivial   " } else { "NONTRIVIAL" }, levels.join("  "))?;
        for t in &c.tables {
            let vals: Vec<String> = t
                .values
                .iter()
                .map(|v| if v.is_integer() { v.to_integer().to_string() } else { format_rat(v) })
                .collect();
            writeln!(out, "      μ(ζ^e, u, φ_{}) for e = 0..{}: [{}]", t.k, t.order - 1, vals.join(", "))?;
        }
    }
    let cuts: Vec<String> = rep.stats.cuts_by_character.iter().map(|(k, v)| format!("φ_{k}: {v}")).collect();
    writeln!(
        out,
        "search: {} leaves; cuts {}; congruence rejections {}",
        rep.stats.leaves,
        if cuts.is_empty() { "none".to_string() } else { cuts.join(", ") },
        rep.stats.congruence_rejections
    )?;
    if let Some((b, same)) = rep.stability {
        writeln!(out, "box stability at B = {b}: {}", if same { "identical" } else { "CHANGED" })?;
    }
    if verify {
        let verdict = match rep.verdict {
            Verdict::Verified => "verified",
            Verdict::NoUnitsOfThisOrder => "verified (no units of this order)",
            Verdict::NontrivialChainFound => "NOT verified: nontrivial admissible chain",
        };
        writeln!(out, "verdict: {verdict}")?;
    }
    Ok(())
}
