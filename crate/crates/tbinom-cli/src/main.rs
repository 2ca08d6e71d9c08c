//! Command line front end for the `tbinom` coefficient engine.
//!
//! Four subcommands: `coeff` prints `<x, k>` (optionally specialized at `x`
//! and `t`), `table` dumps the binomial-basis coefficient table with a
//! cross-method agreement column, `verify` streams identity reports as JSON
//! lines, and `psi` prints a hook ODE solution with its verification
//! verdicts. The process exits nonzero as soon as any emitted check fails,
//! so every subcommand can serve as a CI step.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tbinom::hookpsi::{verify_system_s0, verify_system_s1, verify_system_s2};
use tbinom::identities::{run_all, run_identity, IdentityId, SweepRanges};
use tbinom::latex;
use tbinom::{
    expansion_method1, expansion_method2, psi_r, psi_r1, psi_r11, to_binomial_basis, FTable,
    GenBinomTable, HookSolution, PolyT, Rational,
};

#[derive(Parser)]
#[command(name = "tbinom", version, about = "Exact t-deformed binomial coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print <x, k>, optionally specialized at x and then at t.
    Coeff(CoeffArgs),
    /// Print the binomial-basis coefficients c_i(k) for 1 <= i <= k <= max-k.
    Table(TableArgs),
    /// Run identity sweeps, one JSON report per line; exit 0 iff all hold.
    Verify(VerifyArgs),
    /// Print the hook ODE solution for shape (r, 1^s) with its verdicts.
    Psi(PsiArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, env = "TBINOM_FORMAT", default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CoeffArgs {
    /// Column index k.
    #[arg(long)]
    k: usize,
    /// Evaluate at x (integer or n/d).
    #[arg(long)]
    x: Option<Rational>,
    /// Evaluate at t as well; only meaningful once x is fixed.
    #[arg(long, requires = "x")]
    t: Option<Rational>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Largest column index k.
    #[arg(long)]
    max_k: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, or "all" for the whole catalog.
    #[arg(long)]
    identity: String,
    /// Series truncation order for the series-level checks.
    #[arg(long)]
    order: Option<usize>,
    /// Largest column index for the coefficient sweeps.
    #[arg(long)]
    max_k: Option<usize>,
    /// Largest row / sample index for the integer sweeps.
    #[arg(long)]
    max_n: Option<usize>,
    /// Largest hook row length.
    #[arg(long)]
    max_r: Option<usize>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PsiArgs {
    /// Row length r >= 1 of the hook shape.
    #[arg(long)]
    r: usize,
    /// Column depth s of the hook shape (0, 1, or 2).
    #[arg(long)]
    s: usize,
    #[command(flatten)]
    out: OutputArgs,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Returns whether everything the command checked (if anything) held.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Coeff(args) => cmd_coeff(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Psi(args) => cmd_psi(args),
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn render_rational(v: &Rational, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string(v)?,
        Format::Csv => v.to_string(),
        Format::Latex => latex::rational(v),
    })
}

fn render_poly(p: &PolyT, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string(p)?,
        Format::Csv => {
            let mut s = String::from("power,coeff\n");
            for (e, c) in p.coeffs().iter().enumerate() {
                writeln!(s, "{e},{c}")?;
            }
            s.truncate(s.trim_end().len());
            s
        }
        Format::Latex => latex::poly_t(p),
    })
}

fn cmd_coeff(args: CoeffArgs) -> Result<bool> {
    let rendered = match (&args.x, &args.t) {
        (Some(x), Some(t)) => {
            let table = GenBinomTable::up_to(args.k);
            render_rational(&table.at(x, args.k).eval(t), args.out.format)?
        }
        (Some(x), None) => {
            let table = GenBinomTable::up_to(args.k);
            render_poly(&table.at(x, args.k), args.out.format)?
        }
        // <x, 0> = 1 has no expansion over binom(x, i), i >= 1.
        (None, _) if args.k == 0 => render_poly(&PolyT::one(), args.out.format)?,
        (None, _) => {
            let expansion = expansion_method1(args.k);
            match args.out.format {
                Format::Json => serde_json::to_string(&expansion)?,
                Format::Csv => {
                    let mut s = String::from("i,coeff\n");
                    for (i, c) in expansion.iter() {
                        writeln!(s, "{i},{c}")?;
                    }
                    s.truncate(s.trim_end().len());
                    s
                }
                Format::Latex => latex::binomial_expansion(&expansion),
            }
        }
    };
    emit(&args.out.output, &format!("{rendered}\n"))?;
    Ok(true)
}

#[derive(Serialize)]
struct TableRow<'a> {
    k: String,
    i: String,
    method1: &'a PolyT,
    method2: &'a PolyT,
    agree: bool,
}

fn cmd_table(args: TableArgs) -> Result<bool> {
    if args.max_k < 1 {
        bail!("--max-k must be at least 1");
    }
    let table = GenBinomTable::up_to(args.max_k);
    let ftable = FTable::up_to(args.max_k.saturating_sub(1).max(1));
    let mut all_agree = true;
    let mut body = match args.out.format {
        Format::Csv => String::from("k,i,method1,method2,agree\n"),
        _ => String::new(),
    };
    for k in 1..=args.max_k {
        let m1 = expansion_method1(k);
        let m2 = expansion_method2(k, &ftable);
        let m3 = to_binomial_basis(table.symbolic(k));
        for i in 1..=k {
            let agree = m1.coeff(i) == m2.coeff(i) && m1.coeff(i) == m3.coeff(i);
            all_agree &= agree;
            match args.out.format {
                Format::Json => {
                    let row = TableRow {
                        k: k.to_string(),
                        i: i.to_string(),
                        method1: m1.coeff(i),
                        method2: m2.coeff(i),
                        agree,
                    };
                    writeln!(body, "{}", serde_json::to_string(&row)?)?;
                }
                Format::Csv => {
                    writeln!(body, "{k},{i},{},{},{agree}", m1.coeff(i), m2.coeff(i))?;
                }
                Format::Latex => {
                    writeln!(body, "c_{{{i}}}({k}) = {}", latex::poly_t(m1.coeff(i)))?;
                }
            }
        }
    }
    emit(&args.out.output, &body)?;
    Ok(all_agree)
}

fn cmd_verify(args: VerifyArgs) -> Result<bool> {
    if let (Some(order), Some(max_k)) = (args.order, args.max_k) {
        if order < max_k {
            bail!("--order ({order}) must be at least --max-k ({max_k})");
        }
    }
    let ranges = SweepRanges {
        order: args.order,
        max_k: args.max_k,
        max_n: args.max_n,
        max_r: args.max_r,
    };
    let reports = if args.identity == "all" {
        run_all(&ranges)
    } else {
        vec![run_identity(args.identity.parse::<IdentityId>()?, &ranges)]
    };
    let mut body = String::new();
    for report in &reports {
        writeln!(body, "{}", report.to_json_line())?;
    }
    emit(&args.output, &body)?;
    Ok(reports.iter().all(|report| report.holds))
}

#[derive(Serialize)]
struct PsiOutput {
    solution: HookSolution,
    verdicts: BTreeMap<&'static str, bool>,
}

fn cmd_psi(args: PsiArgs) -> Result<bool> {
    if args.r < 1 {
        bail!("--r must be at least 1");
    }
    if args.s > 2 {
        bail!("--s must be 0, 1, or 2");
    }
    let table = GenBinomTable::up_to(args.r + 2);
    let solution = match args.s {
        0 => psi_r(&table, args.r),
        1 => psi_r1(&table, args.r),
        _ => psi_r11(&table, args.r),
    };
    // The residual of the system instance that differentiates this member.
    let residual = match args.s {
        0 => verify_system_s0(&table, args.r.saturating_sub(1).max(1)),
        1 => verify_system_s1(&table, args.r),
        _ => verify_system_s2(&table, args.r),
    };
    let mut verdicts = BTreeMap::new();
    verdicts.insert("initial_condition", solution.initial_condition_holds());
    verdicts.insert("ode_residual", residual.holds);
    if (args.r, args.s) != (1, 0) {
        verdicts.insert("t1_specialization", solution.t1_specialization_holds());
    }
    let all_hold = verdicts.values().all(|&v| v);
    let rendered = match args.out.format {
        Format::Json => serde_json::to_string(&PsiOutput { solution, verdicts })?,
        Format::Csv => {
            let mut s = format!("scale,{}\n", solution.scale());
            s.push_str("exponent,coeff\n");
            for (i, c) in solution.body().terms().iter().rev() {
                writeln!(s, "{i},{c}")?;
            }
            s.truncate(s.trim_end().len());
            s
        }
        Format::Latex => latex::hook_solution(&solution),
    };
    emit(&args.out.output, &format!("{rendered}\n"))?;
    Ok(all_hold)
}
