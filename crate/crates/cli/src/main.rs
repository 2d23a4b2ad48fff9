//! `ztl`: verify transformation formulas for powers of odd zeta values,
//! evaluate `Psi_{rho,k}(x)` and run the self-test suites.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use config::{parse_list, ConfigFile};
use ztl_core::hp::format::{format_real, parse_real};
use ztl_core::identities::{format_theta, series_traces, verify, Identity, IdentityParams, VerificationReport, CSV_HEADER};
use ztl_core::psi::{psi, PsiRequest, Strategy};
use ztl_core::selftest::{format_table, run_suites, DEFAULT_SEED};
use ztl_core::{Error, PrecisionContext};

const DEFAULT_DIGITS: u32 = 50;
const SELFTEST_DIGITS: u32 = 40;
/// Largest accepted `|2m + 1|`.
const MAX_WEIGHT: i32 = 15;

#[derive(Parser)]
#[command(name = "ztl", version, about = "Transformation formulas for powers of odd zeta values")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Working precision in decimal digits [default: ZTL_DIGITS, else 50; 40 for selftest]
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Flat key = value file; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write results to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sweeps [default: available parallelism]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print quadrature refinement traces to stderr
    #[arg(long, global = true)]
    trace: bool,
    /// Fill the `seconds` column
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity at one parameter point
    Verify {
        /// main, ramanujan, dixit, eisenstein, quasimodular, eta or lerch
        identity: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        m: Option<i32>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha")]
        theta: Option<String>,
        /// Sets theta = log(alpha / pi)
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Verify identities over a parameter grid; lists are comma-separated
    Sweep {
        #[arg(long)]
        identity: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<String>,
    },
    /// Evaluate Psi_{rho,k}(x); x may be a comma-separated list
    Psi {
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        rho: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// auto, inverse_mellin, term_sum or closed_form
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Run the property suites of every module
    Selftest {
        /// Run only suites whose name or module contains this text
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::Pole { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

type CliResult<T> = Result<T, Failure>;

/// Flags merged over the config file.
struct Settings {
    file: ConfigFile,
    digits: u32,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    trace: bool,
    timing: bool,
}

impl Settings {
    fn resolve(common: Common, default_digits: u32) -> CliResult<Self> {
        let file = match &common.config {
            Some(p) => ConfigFile::load(p)?,
            None => ConfigFile::default(),
        };
        let env_digits = match std::env::var("ZTL_DIGITS") {
            Ok(v) => Some(v.trim().parse::<u32>().map_err(|e| format!("ZTL_DIGITS: cannot parse {v:?}: {e}"))?),
            Err(_) => None,
        };
        let digits = match common.digits {
            Some(d) => d,
            None => file.parsed("digits")?.or(env_digits).unwrap_or(default_digits),
        };
        Ok(Settings {
            digits,
            format: match common.format {
                Some(f) => Some(f),
                None => file.parsed("format")?,
            },
            out: common.out.or_else(|| file.get("out").map(PathBuf::from)),
            jobs: match common.jobs {
                Some(j) => Some(j),
                None => file.parsed("jobs")?,
            },
            trace: common.trace || file.flag("trace")?,
            timing: common.timing || file.flag("timing")?,
            file,
        })
    }

    /// Flag value, else the config file value.
    fn pick(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.file.get(key).map(str::to_string))
    }

    fn context(&self) -> CliResult<PrecisionContext> {
        Ok(ztl_core::with_precision(self.digits)?)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
            }
        }
    }
}

fn parse_one<T: std::str::FromStr>(what: &str, src: &str) -> CliResult<T>
where
    T::Err: std::fmt::Display,
{
    src.trim().parse::<T>().map_err(|e| Failure::Usage(format!("{what}: cannot parse {src:?}: {e}")))
}

fn check_weight(m: i32) -> CliResult<()> {
    if (2 * m + 1).abs() > MAX_WEIGHT {
        return Err(Failure::Usage(format!("|2m+1| must not exceed {MAX_WEIGHT} (got m = {m})")));
    }
    Ok(())
}

fn print_traces(identity: Identity, params: &IdentityParams, ctx: &PrecisionContext) -> CliResult<()> {
    for (label, trace) in series_traces(identity, params, ctx)? {
        let json = serde_json::to_string_pretty(&trace).expect("trace serializes");
        eprintln!("trace {label}:\n{json}");
    }
    Ok(())
}

fn render_reports(reports: &[VerificationReport], format: Format, timing: bool) -> String {
    match format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in reports {
                out.push_str(&r.csv_row(timing));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let records: Vec<_> = reports.iter().map(|r| r.record(timing)).collect();
            serde_json::to_string_pretty(&records).expect("reports serialize") + "\n"
        }
    }
}

fn cmd_verify(
    settings: &Settings,
    identity: Option<String>,
    k: Option<u32>,
    m: Option<i32>,
    theta: Option<String>,
    alpha: Option<String>,
) -> CliResult<ExitCode> {
    let identity: Identity = settings
        .pick(identity, "identity")
        .ok_or_else(|| Failure::Usage("verify needs an identity".into()))?
        .parse()?;
    let k = match k {
        Some(k) => k,
        None => settings.file.parsed("k")?.unwrap_or(1),
    };
    let m = match m {
        Some(m) => m,
        None => settings.file.parsed("m")?.unwrap_or(1),
    };
    check_weight(m)?;
    let ctx = settings.context()?;
    let params = match (settings.pick(theta, "theta"), settings.pick(alpha, "alpha")) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either theta or alpha, not both".into())),
        (_, Some(a)) => IdentityParams::from_alpha(k, m, &parse_real(&a, ctx.bits())?, &ctx)?,
        (t, None) => IdentityParams::new(k, m, parse_real(t.as_deref().unwrap_or("0"), ctx.bits())?),
    };
    let report = verify(identity, &params, &ctx)?;
    if settings.trace {
        print_traces(identity, &params, &ctx)?;
    }
    let format = settings.format.unwrap_or(Format::Text);
    settings.emit(&render_reports(std::slice::from_ref(&report), format, settings.timing))?;
    Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Grid point after fixing the parameters an identity ignores.
#[derive(Clone, Debug, PartialEq)]
struct GridPoint {
    identity: Identity,
    k: u32,
    m: i32,
    theta: String,
}

fn normalise(identity: Identity, k: u32, m: i32, theta: &str) -> GridPoint {
    GridPoint {
        identity,
        k: match identity {
            Identity::Ramanujan => 1,
            Identity::Dixit => 2,
            _ => k,
        },
        m: match identity {
            Identity::Quasimodular => -1,
            Identity::Eta => 0,
            _ => m,
        },
        theta: if identity.uses_theta() { theta.to_string() } else { "0".to_string() },
    }
}

fn cmd_sweep(
    settings: &Settings,
    identity: Option<String>,
    k: Option<String>,
    m: Option<String>,
    theta: Option<String>,
) -> CliResult<ExitCode> {
    let identities: Vec<Identity> = parse_list("identity", &settings.pick(identity, "identity").unwrap_or_else(|| "main".into()))?;
    let ks: Vec<u32> = parse_list("k", &settings.pick(k, "k").unwrap_or_else(|| "1".into()))?;
    let ms: Vec<i32> = parse_list("m", &settings.pick(m, "m").unwrap_or_else(|| "1".into()))?;
    let thetas: Vec<String> = parse_list("theta", &settings.pick(theta, "theta").unwrap_or_else(|| "0".into()))?;
    for &m in &ms {
        check_weight(m)?;
    }
    let ctx = settings.context()?;

    let mut grid: Vec<GridPoint> = Vec::new();
    for &identity in &identities {
        for &k in &ks {
            for &m in &ms {
                for t in &thetas {
                    let p = normalise(identity, k, m, t);
                    if grid.contains(&p) {
                        continue;
                    }
                    if let Err(e) = identity.validate(p.k, p.m) {
                        eprintln!("skipping {identity} k={} m={}: {e}", p.k, p.m);
                        continue;
                    }
                    grid.push(p);
                }
            }
        }
    }
    if grid.is_empty() {
        return Err(Failure::Usage("the sweep grid has no valid points".into()));
    }

    let run = |p: &GridPoint| -> Result<VerificationReport, Error> {
        let theta = parse_real(&p.theta, ctx.bits())?;
        verify(p.identity, &IdentityParams::new(p.k, p.m, theta), &ctx)
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = settings.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| Failure::Usage(format!("cannot start worker pool: {e}")))?;
    let results: Vec<Result<VerificationReport, Error>> = pool.install(|| grid.par_iter().map(run).collect());

    let format = settings.format.unwrap_or(Format::Csv);
    let mut numeric = false;
    let mut usage = false;
    let mut failed = false;
    let mut text = String::new();
    match format {
        Format::Csv => text.push_str(&format!("{CSV_HEADER}\n")),
        Format::Json => text.push_str("[\n"),
        Format::Text => {}
    }
    for (i, (p, r)) in grid.iter().zip(&results).enumerate() {
        let theta_echo = format_theta(&parse_real(&p.theta, 64).unwrap_or_else(|_| ctx.zero()));
        match r {
            Ok(report) => {
                failed |= !report.passed;
                match format {
                    Format::Csv => text.push_str(&format!("{}\n", report.csv_row(settings.timing))),
                    Format::Text => text.push_str(&format!("{report}\n")),
                    Format::Json => {
                        let json = serde_json::to_string(&report.record(settings.timing)).expect("report serializes");
                        text.push_str(&format!("  {json}"));
                    }
                }
            }
            Err(e) => {
                match e {
                    Error::NonConvergence { .. } | Error::Pole { .. } => numeric = true,
                    _ => usage = true,
                }
                eprintln!("{} k={} m={} theta={}: {e}", p.identity, p.k, p.m, theta_echo);
                match format {
                    Format::Csv => text.push_str(&format!("{},{},{},{},,,,,{},\n", p.identity, p.k, p.m, theta_echo, ctx.digits())),
                    Format::Text => text.push_str(&format!("{} k={} m={} theta={}: {e}\n", p.identity, p.k, p.m, theta_echo)),
                    Format::Json => {
                        let json = serde_json::json!({
                            "identity": p.identity.name(), "k": p.k, "m": p.m, "theta": theta_echo, "error": e.to_string()
                        });
                        text.push_str(&format!("  {json}"));
                    }
                }
            }
        }
        if format == Format::Json {
            text.push_str(if i + 1 < grid.len() { ",\n" } else { "\n" });
        }
    }
    if format == Format::Json {
        text.push_str("]\n");
    }
    settings.emit(&text)?;
    Ok(if numeric {
        ExitCode::from(3)
    } else if usage {
        ExitCode::from(2)
    } else if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_psi(settings: &Settings, k: Option<u32>, rho: Option<String>, x: Option<String>, strategy: Option<String>) -> CliResult<ExitCode> {
    let k = match k {
        Some(k) => k,
        None => settings.file.parsed("k")?.unwrap_or(1),
    };
    let rho_src = settings.pick(rho, "rho").ok_or_else(|| Failure::Usage("psi needs --rho".into()))?;
    let xs: Vec<String> = parse_list("x", &settings.pick(x, "x").unwrap_or_else(|| "1".into()))?;
    let strategy: Strategy = match settings.pick(strategy, "strategy") {
        Some(s) => parse_one("strategy", &s)?,
        None => Strategy::Auto,
    };
    let ctx = settings.context()?;
    let rho = parse_real(&rho_src, ctx.bits())?;
    let digits = ctx.digits() as usize;
    let format = settings.format.unwrap_or(Format::Text);
    let mut rows = Vec::new();
    for x_src in &xs {
        let x = parse_real(x_src, ctx.bits())?;
        let v = psi(&PsiRequest::new(rho.clone(), k, x.clone()).with_strategy(strategy), &ctx)?;
        if settings.trace && !v.trace.is_empty() {
            eprintln!("trace x={x_src}:\n{}", serde_json::to_string_pretty(&v.trace).expect("trace serializes"));
        }
        rows.push((x_src.clone(), v));
    }
    let text = match format {
        Format::Text => rows
            .iter()
            .map(|(x, v)| {
                let terms = v.terms.map(|t| format!(", {t} terms")).unwrap_or_default();
                format!(
                    "Psi_{{{},{}}}({}) = {}\n  error estimate {} ({}{})\n",
                    rho_src,
                    k,
                    x,
                    format_real(&v.value, digits),
                    format_real(&v.error_estimate, 3),
                    v.strategy,
                    terms
                )
            })
            .collect(),
        Format::Csv => {
            let mut out = String::from("rho,k,x,value,error_estimate,strategy,terms\n");
            for (x, v) in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    rho_src,
                    k,
                    x,
                    format_real(&v.value, digits),
                    format_real(&v.error_estimate, 3),
                    v.strategy,
                    v.terms.map(|t| t.to_string()).unwrap_or_default()
                ));
            }
            out
        }
        Format::Json => {
            let records: Vec<_> = rows
                .iter()
                .map(|(x, v)| {
                    serde_json::json!({
                        "rho": rho_src, "k": k, "x": x,
                        "value": format_real(&v.value, digits),
                        "error_estimate": format_real(&v.error_estimate, 3),
                        "strategy": v.strategy.name(),
                        "terms": v.terms,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&records).expect("values serialize") + "\n"
        }
    };
    settings.emit(&text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_selftest(settings: &Settings, filter: Option<String>, seed: Option<u64>) -> CliResult<ExitCode> {
    let filter = settings.pick(filter, "filter");
    let seed = match seed {
        Some(s) => s,
        None => settings.file.parsed("seed")?.unwrap_or(DEFAULT_SEED),
    };
    let ctx = settings.context()?;
    let reports = run_suites(&ctx, filter.as_deref(), seed);
    if reports.is_empty() {
        return Err(Failure::Usage(format!("no suite matches filter {:?}", filter.unwrap_or_default())));
    }
    let text = match settings.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Csv => {
            let mut out = String::from("suite,module,cases,passed\n");
            for r in &reports {
                out.push_str(&format!("{},{},{},{}\n", r.name, r.module, r.cases, r.passed()));
            }
            out
        }
        Format::Text => format!("selftest at {} digits\n{}", ctx.digits(), format_table(&reports)),
    };
    settings.emit(&text)?;
    Ok(if reports.iter().all(|r| r.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let default_digits = match cli.command {
        Command::Selftest { .. } => SELFTEST_DIGITS,
        _ => DEFAULT_DIGITS,
    };
    let settings = Settings::resolve(cli.common, default_digits)?;
    match cli.command {
        Command::Verify {
            identity,
            k,
            m,
            theta,
            alpha,
        } => cmd_verify(&settings, identity, k, m, theta, alpha),
        Command::Sweep { identity, k, m, theta } => cmd_sweep(&settings, identity, k, m, theta),
        Command::Psi { k, rho, x, strategy } => cmd_psi(&settings, k, rho, x, strategy),
        Command::Selftest { filter, seed } => cmd_selftest(&settings, filter, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(3)
        }
    }
}
