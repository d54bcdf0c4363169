//! `qschur`: compute in the quantum Schur algebra `S_v(2,d)` and verify it
//! against the tensor-space representation.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qschur::schur::{Fault, ReductionRange};
use qschur::suites::{self, Options, OracleFault, Suite, ORACLE_MAX_D};
use qschur::text::{format_monomial, parse_element_auto, ElementJson};
use qschur::{Context, Element, Monomial, Orientation};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qschur",
    version,
    about = "Exact arithmetic in the quantum Schur algebra S_v(2,d)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements.
    Multiply {
        #[command(flatten)]
        common: Common,
        /// Left factor: a file, or the element inline (text or JSON).
        #[arg(long)]
        lhs: String,
        /// Right factor: a file, or the element inline (text or JSON).
        #[arg(long)]
        rhs: String,
    },
    /// Rewrite a monomial in the canonical basis.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// The quadruple `a,b1,b2,c`.
        #[arg(long, value_parser = parse_quadruple)]
        monomial: Monomial,
    },
    /// List a basis, or express an element in one.
    Basis {
        #[command(flatten)]
        common: Common,
        /// Use the basis `e^(a) [K1;b] f^(c)` instead of the monomial basis.
        #[arg(long)]
        kbinom: bool,
        /// Element to express in the basis (file or inline).
        #[arg(long)]
        of: Option<String>,
    },
    /// Emit all structure constants as JSON lines.
    Table {
        #[command(flatten)]
        common: Common,
        /// Allow d beyond the default guard.
        #[arg(long)]
        max_d_override: bool,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Allow d beyond the per-suite guards.
        #[arg(long)]
        max_d_override: bool,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = Options::default().seed)]
        seed: u64,
        #[arg(long, hide = true, value_enum)]
        inject_fault: Option<InjectFault>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    d: u32,
    #[arg(long, value_enum, default_value = "ekf")]
    orientation: OrientationArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Ekf,
    Fke,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Ekf => Orientation::Ekf,
            OrientationArg::Fke => Orientation::Fke,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectFault {
    SkipReduction,
    MutateCoproduct,
}

fn parse_quadruple(s: &str) -> Result<Monomial, String> {
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b1, b2, c] => Ok(Monomial::new(a, b1, b2, c)),
        _ => Err(format!(
            "expected four comma-separated naturals, got {}",
            parts.len()
        )),
    }
}

/// Failure modes, mapped to exit codes.
enum Failure {
    Usage(String),
    Verification,
}

impl From<qschur::Error> for Failure {
    fn from(e: qschur::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Reads `arg` as a file if one exists at that path, else uses it inline.
fn read_input(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_owned())
    }
}

fn element_arg(arg: &str, ctx: &Context, o: Orientation) -> Result<Element, Failure> {
    let src = read_input(arg)?;
    parse_element_auto(&src, ctx, o).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
}

fn emit(common: &Common, body: &str) -> Result<(), Failure> {
    let mut text = body.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &common.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn render(x: &Element, format: Format) -> String {
    match format {
        Format::Text => x.to_string(),
        Format::Json => x.to_json_string(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Multiply { common, lhs, rhs } => {
            let ctx = Context::new(common.d);
            let o = common.orientation.into();
            let x = element_arg(&lhs, &ctx, o)?;
            let y = element_arg(&rhs, &ctx, o)?;
            emit(&common, &render(&x.multiply(&y)?, common.format))
        }
        Command::Reduce { common, monomial } => {
            let ctx = Context::new(common.d);
            let o = common.orientation.into();
            let r = ctx.reduce_monomial(monomial, o)?;
            let info = ctx.reduction_range(monomial, o);
            let body = match common.format {
                Format::Json => to_json(&ReduceOutput {
                    monomial: [monomial.a, monomial.b1, monomial.b2, monomial.c],
                    result: r.to_json(),
                    info,
                }),
                Format::Text => {
                    let range = match info.range {
                        Some((lo, hi)) => format!("k = {lo}..={hi}"),
                        None if info.defect <= 0 => "none (already canonical)".to_owned(),
                        None => "empty".to_owned(),
                    };
                    format!("{r}\ndefect s = {}\nrange: {range}", info.defect)
                }
            };
            emit(&common, &body)
        }
        Command::Basis { common, kbinom, of } => {
            let ctx = Context::new(common.d);
            let o: Orientation = common.orientation.into();
            let body = match (of, kbinom) {
                (None, false) => {
                    let basis = ctx.basis(o);
                    match common.format {
                        Format::Text => basis
                            .iter()
                            .map(|m| format_monomial(m, o))
                            .collect::<Vec<_>>()
                            .join("\n"),
                        Format::Json => json!(basis
                            .iter()
                            .map(|m| json!({"a": m.a, "b1": m.b1, "b2": m.b2, "c": m.c}))
                            .collect::<Vec<_>>())
                        .to_string(),
                    }
                }
                (None, true) => {
                    let triples: Vec<_> = ctx
                        .basis(Orientation::Ekf)
                        .iter()
                        .map(|m| (m.a, m.b1, m.c))
                        .collect();
                    match common.format {
                        Format::Text => triples
                            .iter()
                            .map(|(a, b, c)| kbinom_label(*a, *b, *c))
                            .collect::<Vec<_>>()
                            .join("\n"),
                        Format::Json => json!(triples
                            .iter()
                            .map(|(a, b, c)| json!({"a": a, "b": b, "c": c}))
                            .collect::<Vec<_>>())
                        .to_string(),
                    }
                }
                (Some(src), false) => render(&element_arg(&src, &ctx, o)?, common.format),
                (Some(src), true) => {
                    let coords =
                        element_arg(&src, &ctx, Orientation::Ekf)?.change_to_kbinom_basis()?;
                    match common.format {
                        Format::Text if coords.is_empty() => "0".to_owned(),
                        Format::Text => coords
                            .iter()
                            .map(|((a, b, c), x)| {
                                if x.is_one() {
                                    kbinom_label(*a, *b, *c)
                                } else {
                                    format!("({x}) * {}", kbinom_label(*a, *b, *c))
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(" + "),
                        Format::Json => json!(coords
                            .iter()
                            .map(|((a, b, c), x)| json!({"a": a, "b": b, "c": c, "coeff": x}))
                            .collect::<Vec<_>>())
                        .to_string(),
                    }
                }
            };
            emit(&common, &body)
        }
        Command::Table {
            common,
            max_d_override,
        } => {
            if common.d > ORACLE_MAX_D && !max_d_override {
                return Err(Failure::Usage(format!(
                    "table is limited to d <= {ORACLE_MAX_D}; pass --max-d-override to go further"
                )));
            }
            if max_d_override && common.d > ORACLE_MAX_D {
                eprintln!(
                    "warning: d = {} produces {} lines and may take a long time",
                    common.d,
                    suites::expected_dimension(common.d).pow(2)
                );
            }
            let ctx = Context::new(common.d);
            let o = common.orientation.into();
            let basis = ctx.basis(o);
            let mut lines = Vec::with_capacity(basis.len() * basis.len());
            for x in &basis {
                let ex = ctx.basis_element(*x, o)?;
                for y in &basis {
                    let p = ex.multiply(&ctx.basis_element(*y, o)?)?;
                    lines.push(to_json(&TableLine {
                        lhs: format_monomial(x, o),
                        rhs: format_monomial(y, o),
                        product: p.to_json(),
                    }));
                }
            }
            emit(&common, &lines.join("\n"))
        }
        Command::Verify {
            common,
            suite,
            max_d_override,
            seed,
            inject_fault,
        } => {
            let mut opts = Options {
                allow_large_d: max_d_override,
                seed,
                ..Options::default()
            };
            match inject_fault {
                Some(InjectFault::SkipReduction) => opts.fault = Some(Fault::SkipReduction),
                Some(InjectFault::MutateCoproduct) => {
                    opts.oracle_fault = Some(OracleFault::ClassicalCoproduct)
                }
                None => {}
            }
            if max_d_override && common.d > suite.default_max_d() {
                eprintln!(
                    "warning: d = {} exceeds the default limit {} for suite `{suite}`; expect long run times and large memory use",
                    common.d,
                    suite.default_max_d()
                );
            }
            let report = suites::run_suite(suite, common.d, &opts)?;
            let body = match common.format {
                Format::Text => report.to_string(),
                Format::Json => report.to_json_string(),
            };
            emit(&common, &body)?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
    }
}

#[derive(Serialize)]
struct ReduceOutput {
    monomial: [u32; 4],
    result: ElementJson,
    #[serde(flatten)]
    info: ReductionRange,
}

#[derive(Serialize)]
struct TableLine {
    lhs: String,
    rhs: String,
    product: ElementJson,
}

fn to_json(x: &impl Serialize) -> String {
    serde_json::to_string(x).expect("output is always serializable")
}

fn kbinom_label(a: u32, b: u32, c: u32) -> String {
    let mut parts = Vec::with_capacity(3);
    if a > 0 {
        parts.push(format!("e^({a})"));
    }
    parts.push(format!("[K1;{b}]"));
    if c > 0 {
        parts.push(format!("f^({c})"));
    }
    parts.join(" ")
}
