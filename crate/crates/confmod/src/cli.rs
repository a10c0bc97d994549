//! Batch command-line front end. All output is deterministic: identical
//! inputs (including seed flags) produce byte-identical reports. Exit
//! status 0 on success, 1 on failing verdicts, 2 on usage or parse errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::action::NormalizedWord;
use crate::axioms::{verify_axioms, SampleLimits};
use crate::display::{render_element, render_module_element, render_module_monomial};
use crate::error::Error;
use crate::gsb::{
    check_gsb, free_module_report, irr, reduce, ReduceStep, Presentation,
};
use crate::parse::{parse_algebra_element, parse_any_element, parse_module_element};
use crate::presets::{load_lie_data, load_presentation, Alpha, PresetConfig};
use crate::report::Verdict;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct PresetArgs {
    /// virasoro | vircur | remark | file:PATH
    #[arg(long)]
    pub preset: String,
    /// Weight parameter, restricted to 0 or 1
    #[arg(long, default_value_t = 0)]
    pub delta: u8,
    /// Shift parameter: a rational such as 1/2, or the literal `alpha`
    #[arg(long, default_value = "alpha")]
    pub alpha: String,
    /// Lie structure data (JSON) for the vircur preset
    #[arg(long)]
    pub lie: Option<std::path::PathBuf>,
}

#[derive(Parser, Debug)]
#[command(name = "confmod", version, about = "Rewriting kernel for conformal modules")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize an expression onto the canonical basis
    Normalize {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long)]
        expr: String,
    },
    /// Apply an acting algebra element at a level to a module expression
    Act {
        #[command(flatten)]
        preset: PresetArgs,
        /// The acting algebra expression
        #[arg(long)]
        acting: String,
        /// The product level n
        #[arg(long)]
        n: u32,
        #[arg(long)]
        expr: String,
    },
    /// Reduce an expression modulo the module relations
    Reduce {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long)]
        expr: String,
    },
    /// Check the module relations under the three composition types
    CheckGsb {
        #[command(flatten)]
        preset: PresetArgs,
        /// Left-multiplication window size K (levels N..N+K)
        #[arg(long)]
        window: Option<u32>,
    },
    /// Enumerate the irreducible basis words within bounds
    Irr {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long = "max-len")]
        max_len: u32,
        #[arg(long = "max-d")]
        max_d: u32,
    },
    /// Run the randomized identity suite
    VerifyAxioms {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long, default_value_t = 500)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build and audit the free module over the quotient algebra
    Freemod {
        #[command(flatten)]
        preset: PresetArgs,
        #[arg(long = "max-len", default_value_t = 3)]
        max_len: u32,
        #[arg(long = "max-d", default_value_t = 3)]
        max_d: u32,
        /// Optional expression to reduce to its quotient normal form
        #[arg(long)]
        expr: Option<String>,
    },
}

pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

fn resolve_preset(args: &PresetArgs) -> Result<(Presentation, Vec<String>), Error> {
    if let Some(path) = args.preset.strip_prefix("file:") {
        let source = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
        return Ok((load_presentation(&source, &args.preset)?, Vec::new()));
    }
    let mut warnings = Vec::new();
    let lie = match &args.lie {
        None => None,
        Some(path) => {
            let source =
                std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
            let lie = load_lie_data(&source)?;
            warnings.extend(lie.validate().into_iter().map(|w| format!("warning: {w}")));
            Some(lie)
        }
    };
    let config = PresetConfig {
        name: args.preset.clone(),
        delta: args.delta,
        alpha: Alpha::parse(&args.alpha)?,
        lie,
    };
    Ok((config.build()?, warnings))
}

fn render_trace(p: &Presentation, trace: &[ReduceStep]) -> Vec<String> {
    let table = p.context().symbols();
    trace
        .iter()
        .map(|step| {
            let prefix = step
                .pattern
                .prefix
                .iter()
                .map(|&(b, n)| format!("{}_({})", table.algebra_name(b), n))
                .collect::<Vec<_>>()
                .join(" ");
            format!(
                "rewrote {} via q{} (prefix [{}], D-shift {}) with multiplier {}",
                render_module_monomial(&step.monomial, table),
                step.pattern.relation + 1,
                prefix,
                step.pattern.d_shift,
                step.multiplier
            )
        })
        .collect()
}

fn verdict_status(v: Verdict) -> i32 {
    if v.is_fail() {
        1
    } else {
        0
    }
}

fn run_inner(cli: &Cli) -> Result<Outcome, Error> {
    let format = cli.format;
    match &cli.command {
        Command::Normalize { preset, expr } => {
            let (p, warnings) = resolve_preset(preset)?;
            let ctx = p.context();
            let table = ctx.symbols();
            let rendered = match parse_any_element(expr, ctx, p.parameters())? {
                NormalizedWord::Module(f) => render_element(&f, table),
                NormalizedWord::Algebra(g) => render_element(&g, table),
            };
            let stdout = match format {
                Format::Text => format!("{rendered}\n"),
                Format::Json => pretty(json!({
                    "schema": "confmod.normalize/v1",
                    "presentation": p.name(),
                    "input": expr,
                    "result": rendered,
                })),
            };
            Ok(Outcome { status: 0, stdout, stderr: warnings.join("\n") })
        }
        Command::Act { preset, acting, n, expr } => {
            let (p, warnings) = resolve_preset(preset)?;
            let ctx = p.context();
            let acting_elem = parse_algebra_element(acting, ctx, p.parameters())?;
            let target = parse_module_element(expr, ctx, p.parameters())?;
            let result = ctx.act_element(&acting_elem, *n, &target);
            let rendered = render_module_element(&result, ctx.symbols());
            let stdout = match format {
                Format::Text => format!("{rendered}\n"),
                Format::Json => pretty(json!({
                    "schema": "confmod.act/v1",
                    "presentation": p.name(),
                    "acting": acting,
                    "n": n,
                    "input": expr,
                    "result": rendered,
                })),
            };
            Ok(Outcome { status: 0, stdout, stderr: warnings.join("\n") })
        }
        Command::Reduce { preset, expr } => {
            let (p, warnings) = resolve_preset(preset)?;
            let ctx = p.context();
            let h = parse_module_element(expr, ctx, p.parameters())?;
            let (nf, trace) = reduce(ctx, p.module_relations(), &h)?;
            let rendered = render_module_element(&nf, ctx.symbols());
            let steps = render_trace(&p, &trace);
            let stdout = match format {
                Format::Text => {
                    let mut out = String::new();
                    writeln!(out, "normal form: {rendered}").unwrap();
                    for s in &steps {
                        writeln!(out, "  {s}").unwrap();
                    }
                    out
                }
                Format::Json => pretty(json!({
                    "schema": "confmod.reduce/v1",
                    "presentation": p.name(),
                    "input": expr,
                    "normal_form": rendered,
                    "trace": steps,
                })),
            };
            Ok(Outcome { status: 0, stdout, stderr: warnings.join("\n") })
        }
        Command::CheckGsb { preset, window } => {
            let (p, warnings) = resolve_preset(preset)?;
            let report = check_gsb(&p, *window)?;
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(report.to_json()),
            };
            Ok(Outcome {
                status: verdict_status(report.verdict),
                stdout,
                stderr: warnings.join("\n"),
            })
        }
        Command::Irr { preset, max_len, max_d } => {
            let (p, warnings) = resolve_preset(preset)?;
            let table = p.context().symbols();
            let words = irr(&p, *max_len, *max_d);
            let rendered: Vec<String> = words
                .iter()
                .map(|u| render_module_monomial(u, table))
                .collect();
            let stdout = match format {
                Format::Text => {
                    let mut out = rendered.join("\n");
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    out
                }
                Format::Json => pretty(json!({
                    "schema": "confmod.irr/v1",
                    "presentation": p.name(),
                    "max_len": max_len,
                    "max_d": max_d,
                    "monomials": rendered,
                })),
            };
            Ok(Outcome { status: 0, stdout, stderr: warnings.join("\n") })
        }
        Command::VerifyAxioms { preset, samples, seed } => {
            let (p, warnings) = resolve_preset(preset)?;
            let report = verify_axioms(&p, *samples, *seed, &SampleLimits::default());
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(report.to_json()),
            };
            Ok(Outcome {
                status: if report.pass { 0 } else { 1 },
                stdout,
                stderr: warnings.join("\n"),
            })
        }
        Command::Freemod { preset, max_len, max_d, expr } => {
            let (p, warnings) = resolve_preset(preset)?;
            let quotient = match expr {
                None => None,
                Some(text) => Some(parse_module_element(text, p.context(), p.parameters())?),
            };
            let report = free_module_report(&p, *max_len, *max_d, quotient.as_ref())?;
            let stdout = match format {
                Format::Text => report.to_text(),
                Format::Json => pretty(report.to_json()),
            };
            Ok(Outcome {
                status: verdict_status(report.verdict),
                stdout,
                stderr: warnings.join("\n"),
            })
        }
    }
}

fn pretty(value: serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("report serialization");
    out.push('\n');
    out
}

/// Run a parsed command line; errors map to exit status 2.
pub fn run(cli: &Cli) -> Outcome {
    match run_inner(cli) {
        Ok(mut outcome) => {
            if !outcome.stderr.is_empty() {
                outcome.stderr.push('\n');
            }
            outcome
        }
        Err(e) => Outcome {
            status: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
