//! Command-line interface: argument model, request canonicalisation and dispatch.

use crate::cache::{Cache, CacheStatus};
use crate::format::{self, Format};
use crate::numerics::Scheme;
use crate::verify::{self, NumericOptions, Suite};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use spintau_core::kappa::{bracket_psi_correlators, zk_correlators};
use spintau_core::spectral::{eta_reexpand, required_order, tr_correlators, SpectralCurve};
use spintau_core::spincorr::spin_correlators;
use spintau_core::supervol::volume_polynomial;
use spintau_core::virasoro::{bgw_correlators, kw_correlators, CorrelatorTable};
use spintau_core::{Error, Truncation};
use std::path::PathBuf;

#[derive(Parser, Debug, Clone)]
#[command(name = "spintau", version, about = "Exact intersection numbers, KdV tau functions and super volumes")]
pub struct Cli {
    /// Cache directory (default: $SPINTAU_CACHE_DIR, then the user cache directory).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Skip the on-disk cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TruncArgs {
    #[arg(long, default_value_t = 2)]
    pub gmax: u32,
    #[arg(long, default_value_t = 6)]
    pub kmax: u32,
    #[arg(long, default_value_t = 5)]
    pub dmax: u32,
    #[arg(long, default_value_t = 8)]
    pub smax: u32,
}

impl TruncArgs {
    pub fn truncation(&self) -> Truncation {
        Truncation::new(self.gmax, self.kmax, self.dmax, self.smax)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Kw,
    Bgw,
    Spin,
    Zk,
    ZkBracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveArg {
    Airy,
    Bessel,
    Ck,
    Cns,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    #[value(name = "theorem1")]
    TripleRoute,
    Kdv,
    Homogeneity,
    Virasoro,
    Vanishing,
    Trr,
    Laplace,
    Recursion,
    Spectral,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Correlator table of one engine.
    Correlators {
        #[arg(value_enum)]
        engine: EngineArg,
        #[command(flatten)]
        trunc: TruncArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Super volume polynomial V[g,n] through s^smax.
    Volume {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
        /// Highest power of s kept (even).
        #[arg(long, default_value_t = 4)]
        smax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Topological recursion correlators on a spectral curve.
    Tr {
        #[arg(long, value_enum)]
        curve: CurveArg,
        #[arg(long, default_value_t = 2)]
        gmax: u32,
        #[arg(long, default_value_t = 3)]
        nmax: u32,
        /// Re-expand ck in the eta coordinate (legs up to --kmax).
        #[arg(long)]
        eta: bool,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite; exit 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        trunc: TruncArgs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Quadrature scheme for the integral recursion.
        #[arg(long, value_enum, default_value_t = SchemeArg::TanhSinh)]
        scheme: SchemeArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    TanhSinh,
    Adaptive,
}

/// What a run prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code: 2 }
    }
}

fn format_tag(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    }
}

fn engine_tag(e: EngineArg) -> &'static str {
    match e {
        EngineArg::Kw => "kw",
        EngineArg::Bgw => "bgw",
        EngineArg::Spin => "spin",
        EngineArg::Zk => "zk",
        EngineArg::ZkBracket => "zk-bracket",
    }
}

fn curve_tag(c: CurveArg) -> &'static str {
    match c {
        CurveArg::Airy => "airy",
        CurveArg::Bessel => "bessel",
        CurveArg::Ck => "ck",
        CurveArg::Cns => "cns",
    }
}

/// Canonical request for the cacheable commands; `None` for `verify`.
pub fn request(cmd: &Command) -> Option<Value> {
    match *cmd {
        Command::Correlators { engine, trunc, format } => Some(json!({
            "command": "correlators",
            "engine": engine_tag(engine),
            "trunc": format::truncation(&trunc.truncation()),
            "format": format_tag(format),
        })),
        Command::Volume { g, n, smax, format } => Some(json!({
            "command": "volume", "g": g, "n": n, "smax": smax, "format": format_tag(format),
        })),
        Command::Tr { curve, gmax, nmax, eta, kmax, format } => Some(json!({
            "command": "tr",
            "curve": curve_tag(curve),
            "gmax": gmax,
            "nmax": nmax,
            "eta": eta,
            "kmax": if eta { Some(kmax) } else { None },
            "format": format_tag(format),
        })),
        Command::Verify { .. } => None,
    }
}

fn correlator_table(engine: EngineArg, trunc: Truncation) -> Result<CorrelatorTable, Error> {
    Ok(match engine {
        EngineArg::Kw => kw_correlators(trunc),
        EngineArg::Bgw => bgw_correlators(trunc),
        EngineArg::Spin => spin_correlators(trunc)?,
        EngineArg::Zk => zk_correlators(trunc)?,
        EngineArg::ZkBracket => bracket_psi_correlators(&zk_correlators(trunc)?)?,
    })
}

fn emit_table(t: &CorrelatorTable, f: Format) -> String {
    match f {
        Format::Json => format::canonical(&format::table(t)),
        Format::Csv => format::table_csv(t),
        Format::Text => format::table_text(t),
    }
}

/// Compute the artifact for a cacheable command.
pub fn compute(cmd: &Command) -> Result<String, Error> {
    match *cmd {
        Command::Correlators { engine, trunc, format } => {
            Ok(emit_table(&correlator_table(engine, trunc.truncation())?, format))
        }
        Command::Volume { g, n, smax, format } => {
            if n == 0 {
                return Err(Error::Unstable { g, n });
            }
            if smax % 2 == 1 {
                return Err(Error::Domain(format!("--smax {smax} must be even (powers of s)")));
            }
            let v = volume_polynomial(g, n, smax / 2);
            Ok(match format {
                Format::Json => format::canonical(&format::volume(&v)),
                Format::Csv => format::volume_csv(&v),
                Format::Text => format::volume_text(&v),
            })
        }
        Command::Tr { curve, gmax, nmax, eta, kmax, format } => {
            if nmax == 0 {
                return Err(Error::Domain("--nmax must be at least 1".into()));
            }
            let chi = 2 * gmax + nmax - 2;
            let c = match curve {
                CurveArg::Airy => SpectralCurve::airy(),
                CurveArg::Bessel => SpectralCurve::bessel(),
                CurveArg::Ck => SpectralCurve::ck(2 * chi as usize + 4)?,
                CurveArg::Cns => SpectralCurve::cns(required_order(chi)),
            };
            if eta && curve != CurveArg::Ck {
                return Err(Error::Domain("--eta applies to the ck curve only".into()));
            }
            let mut t = tr_correlators(&c, gmax, nmax)?;
            if eta {
                t = eta_reexpand(&t, kmax);
            }
            Ok(match format {
                Format::Json => format::canonical(&format::spectral(&t, eta)),
                Format::Csv => format::spectral_csv(&t),
                Format::Text => format::spectral_text(&t),
            })
        }
        Command::Verify { .. } => unreachable!("verify is not an artifact"),
    }
}

fn verify(suite: SuiteArg, trunc: Truncation, format: ReportFormat, scheme: SchemeArg) -> Outcome {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::all().to_vec(),
        SuiteArg::TripleRoute => vec![Suite::TripleRoute],
        SuiteArg::Kdv => vec![Suite::Kdv],
        SuiteArg::Homogeneity => vec![Suite::Homogeneity],
        SuiteArg::Virasoro => vec![Suite::Virasoro],
        SuiteArg::Vanishing => vec![Suite::Vanishing],
        SuiteArg::Trr => vec![Suite::Trr],
        SuiteArg::Laplace => vec![Suite::Laplace],
        SuiteArg::Recursion => vec![Suite::Recursion],
        SuiteArg::Spectral => vec![Suite::Spectral],
    };
    let opts = NumericOptions {
        scheme: match scheme {
            SchemeArg::TanhSinh => Scheme::TanhSinh,
            SchemeArg::Adaptive => Scheme::Adaptive,
        },
        ..NumericOptions::default()
    };
    // Suites run in parallel; reports are emitted in suite order.
    let results: Vec<_> = suites.par_iter().map(|&s| verify::run(s, trunc, &opts)).collect();
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::usage(format!("error: {e}\n")),
        }
    }
    let passed = reports.iter().all(|r| r.passed());
    let stdout = match format {
        ReportFormat::Json => {
            let v = json!({
                "passed": passed,
                "trunc": format::truncation(&trunc),
                "reports": reports.iter().map(|r| r.json()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialise"))
        }
        ReportFormat::Text => reports.iter().map(|r| r.text()).collect(),
    };
    Outcome { stdout, stderr: String::new(), code: if passed { 0 } else { 1 } }
}

fn run_inner(cli: &Cli) -> Outcome {
    if let Command::Verify { suite, trunc, format, scheme } = cli.command {
        return verify(suite, trunc.truncation(), format, scheme);
    }
    let req = format::canonical(&request(&cli.command).expect("artifact command"));
    let mut cache = if cli.no_cache { Cache::disabled() } else { Cache::open(cli.cache_dir.clone()) };
    match cache.get_or_compute(&req, || compute(&cli.command)) {
        Ok((payload, status)) => {
            let mut stderr: String = cache.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            if status != CacheStatus::Disabled {
                stderr.push_str(&format!("cache: {}\n", status.tag()));
            }
            Outcome { stdout: payload, stderr, code: 0 }
        }
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

/// Run a parsed command, inside a dedicated pool when `--threads` is given.
pub fn run(cli: &Cli) -> Outcome {
    match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_inner(cli)),
            Err(e) => Outcome::usage(format!("error: cannot start {n} threads: {e}\n")),
        },
        None => run_inner(cli),
    }
}

/// Parse and run `args` (including the program name).
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome::usage(text)
            }
        }
    }
}
