//! Command-line front end for the `invsys` library.
//!
//! Exit codes: 0 success, 1 a computation ran but its verification failed,
//! 2 bad usage or malformed input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use invsys::constructions::{self, ConstructionReport, Direction};
use invsys::hvector::{self, join, lemma1_predict, HVector};
use invsys::inverse::annihilator_component;
use invsys::wlp::{wlp_certify, wlp_probe, WlpCertificate};
use invsys::{Arithmetic, Error, InverseSystem};

#[derive(Parser, Debug)]
#[command(name = "invsys", version, about = "Inverse systems, level h-vectors and Weak Lefschetz checks")]
pub struct Cli {
    /// Field for ranks: `q`, `fp:P` or `two-prime`.
    #[arg(long, global = true, default_value = "two-prime")]
    pub field: String,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    pub out: OutFormat,
    /// Compute every rank over the rationals.
    #[arg(long, global = true)]
    pub exact: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build and verify a level inverse system.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// h-vector of a module file.
    Hvector {
        #[arg(long)]
        module: PathBuf,
    },
    /// Basis of the annihilator in one degree.
    Annihilator {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Weak Lefschetz probe or certificate.
    Wlp {
        #[command(subcommand)]
        mode: WlpMode,
    },
    /// h-vector predictions.
    Predict {
        #[command(subcommand)]
        which: Prediction,
    },
    /// Properties of a sequence.
    Analyze {
        #[arg(long)]
        h: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ConstructOpts {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Raise the codimension to R by appending pure powers.
    #[arg(long)]
    pub lift: Option<usize>,
    /// Also write the module JSON to this file.
    #[arg(long)]
    pub module_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Construction {
    Example2 {
        #[command(flatten)]
        opts: ConstructOpts,
    },
    Tail {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        opts: ConstructOpts,
    },
    Nmaxima {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        e: Option<u32>,
        #[command(flatten)]
        opts: ConstructOpts,
    },
    Example7 {
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        opts: ConstructOpts,
    },
    Prop8 {
        #[command(flatten)]
        opts: ConstructOpts,
    },
    Remark9 {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        e: u32,
        /// lex-first or lex-last; both are tried when omitted.
        #[arg(long)]
        direction: Option<String>,
        #[command(flatten)]
        opts: ConstructOpts,
    },
}

#[derive(Subcommand, Debug)]
pub enum WlpMode {
    Probe {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Certify {
        #[arg(long)]
        module: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum Prediction {
    /// h-vector after adding a generic form of the socle degree.
    Lemma1 {
        #[arg(long)]
        h: String,
        #[arg(long)]
        r: u64,
    },
}

/// Collected output of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Invalid(_) | Error::Infeasible(_) | Error::InvalidHVector(_) => Failure::Usage(e.to_string()),
            Error::AmbientMismatch { .. } | Error::NotLevel(_) | Error::OrderExceedsDegree { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

struct Ctx {
    arith: Arithmetic,
    out: OutFormat,
}

fn text(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes") + "\n"
}

fn pair(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

/// Reads either a bare module file or a construction report embedding one.
pub fn load_module(path: &Path) -> Result<InverseSystem, Error> {
    let raw = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&raw).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let module = value.get("module").cloned().unwrap_or(value);
    serde_json::from_value(module).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn construct(ctx: &Ctx, which: Construction) -> Result<(String, bool), Failure> {
    let arith = ctx.arith;
    let (report, opts): (ConstructionReport, ConstructOpts) = match which {
        Construction::Example2 { opts } => (constructions::build_example2(opts.seed, arith)?, opts),
        Construction::Tail { p, e, opts } => (constructions::build_arithmetic_tail(p, e, opts.seed, arith)?, opts),
        Construction::Nmaxima { n, e, opts } => (constructions::build_n_maxima(n, opts.seed, e, arith)?, opts),
        Construction::Example7 { e, opts } => (constructions::report_example7(e, arith)?, opts),
        Construction::Prop8 { opts } => (constructions::report_prop8(arith)?, opts),
        Construction::Remark9 { t, e, direction, opts } => {
            let direction = direction.map(|d| d.parse::<Direction>()).transpose()?;
            (constructions::build_remark9(t, e, opts.seed, direction, arith)?, opts)
        }
    };
    let report = match opts.lift {
        Some(r) => constructions::lift_report(report, r, arith)?,
        None => report,
    };
    if let Some(path) = &opts.module_out {
        fs::write(path, report.module.to_json_pretty() + "\n")
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let body = match ctx.out {
        OutFormat::Json => json(&report),
        OutFormat::Text => text(&constructions::describe(&report)),
    };
    Ok((body, report.passed()))
}

fn certificate_text(c: &WlpCertificate) -> String {
    let mut pairs = vec![pair("verdict", c.verdict.as_str())];
    for d in &c.degrees {
        pairs.push((
            format!("degree.{}", d.i),
            format!("{} -> {} required {} rank {} ({})", d.dim_a_i, d.dim_a_next, d.required, d.rank, serde_json::to_value(d.mode).unwrap().as_str().unwrap_or("")),
        ));
    }
    pairs.push(pair("failing", join(&c.failing)));
    text(&pairs)
}

#[derive(Serialize)]
struct Analysis {
    h: Vec<u64>,
    unimodal: bool,
    maxima: usize,
    plateau_maxima: usize,
    o_sequence: bool,
    differentiable: bool,
    symmetric: bool,
    si_sequence: bool,
}

fn analyze(h: Vec<u64>) -> Analysis {
    Analysis {
        unimodal: hvector::is_unimodal(&h),
        maxima: hvector::count_maxima(&h),
        plateau_maxima: hvector::count_plateau_maxima(&h),
        o_sequence: hvector::is_o_sequence(&h),
        differentiable: hvector::is_differentiable(&h),
        symmetric: hvector::is_symmetric(&h),
        si_sequence: hvector::is_si_sequence(&h),
        h,
    }
}

fn dispatch(cli: Cli) -> Result<(String, bool), Failure> {
    let arith = if cli.exact {
        Arithmetic::Exact
    } else {
        cli.field.parse::<Arithmetic>().map_err(|e| Failure::Usage(e.to_string()))?
    };
    let ctx = Ctx { arith, out: cli.out };
    match cli.command {
        Command::Construct { which } => construct(&ctx, which),
        Command::Hvector { module } => {
            let m = load_module(&module)?;
            let h = m.h_vector_with(arith)?;
            let body = match ctx.out {
                OutFormat::Json => json(&serde_json::json!({ "h": h, "socle_degree": h.socle_degree(), "field": arith.name() })),
                OutFormat::Text => text(&[pair("h", &h), pair("socle_degree", h.socle_degree())]),
            };
            Ok((body, true))
        }
        Command::Annihilator { module, degree } => {
            let m = load_module(&module)?;
            let basis: Vec<String> = annihilator_component(&m, degree)?.iter().map(|f| f.display_with('x')).collect();
            let body = match ctx.out {
                OutFormat::Json => json(&serde_json::json!({ "degree": degree, "dimension": basis.len(), "basis": basis })),
                OutFormat::Text => {
                    let mut pairs = vec![pair("degree", degree), pair("dimension", basis.len())];
                    pairs.extend(basis.iter().map(|f| pair("generator", f)));
                    text(&pairs)
                }
            };
            Ok((body, true))
        }
        Command::Wlp { mode } => {
            let cert = match mode {
                WlpMode::Probe { module, seed } => wlp_probe(&load_module(&module)?, seed, arith)?,
                WlpMode::Certify { module } => wlp_certify(&load_module(&module)?)?,
            };
            let body = match ctx.out {
                OutFormat::Json => json(&cert),
                OutFormat::Text => certificate_text(&cert),
            };
            Ok((body, true))
        }
        Command::Predict { which: Prediction::Lemma1 { h, r } } => {
            let h: HVector = h.parse()?;
            let predicted = lemma1_predict(&h, r);
            let body = match ctx.out {
                OutFormat::Json => json(&serde_json::json!({ "h": h, "r": r, "predicted": predicted })),
                OutFormat::Text => text(&[pair("predicted", &predicted)]),
            };
            Ok((body, true))
        }
        Command::Analyze { h } => {
            let a = analyze(hvector::parse_sequence(&h)?);
            let body = match ctx.out {
                OutFormat::Json => json(&a),
                OutFormat::Text => text(&[
                    pair("h", join(&a.h)),
                    pair("unimodal", a.unimodal),
                    pair("maxima", a.maxima),
                    pair("plateau_maxima", a.plateau_maxima),
                    pair("o_sequence", a.o_sequence),
                    pair("differentiable", a.differentiable),
                    pair("symmetric", a.symmetric),
                    pair("si_sequence", a.si_sequence),
                ]),
            };
            Ok((body, true))
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: rendered, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match dispatch(cli) {
        Ok((stdout, true)) => Output { code: 0, stdout, stderr: String::new() },
        Ok((stdout, false)) => Output { code: 1, stdout, stderr: "error: verification failed\n".into() },
        Err(Failure::Usage(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Verification(msg)) => Output { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
