use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsf::{run_suite, serialize_report, Format, HarnessError, SuiteConfig};
use qsf_core::catalog::{run_check, Verdict};
use qsf_core::identities::identity_sweep;
use qsf_core::qcore::{self, Phi10Form};
use qsf_core::qgamma::{self, PsiDerivOrder};
use qsf_core::roots::{self, GSign, RootStatus};
use qsf_core::{Approx, Error, QContext};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "qsf", version, about = "q-gamma, q-digamma and inequality checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Func {
    Bracket,
    Qpoch,
    Qpochinf,
    Phi10,
    Gamma,
    Loggamma,
    Psi,
    Psideriv,
    Gammaconst,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Psi,
    Gplus,
    Gminus,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function.
    Eval {
        #[arg(value_enum)]
        func: Func,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        x: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Locate a zero in (1, 2).
    Zero {
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = roots::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "psi")]
        which: Which,
    },
    /// Run one catalog check.
    Check {
        id: String,
        #[arg(long)]
        q: Option<f64>,
        /// `name=value`, repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Run the sampled inequality suite.
    Suite {
        #[arg(long, default_value_t = qsf::suite::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = qsf::suite::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = qsf::suite::DEFAULT_Q_MIN)]
        q_min: f64,
        #[arg(long, default_value_t = qsf::suite::DEFAULT_Q_MAX)]
        q_max: f64,
        #[arg(long, value_delimiter = ',')]
        include: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutFormat,
    },
    /// Run the identity residual checks.
    Identities {
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric() {
            Failure::Numeric(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Core(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<u8, Failure>;

/// `--eps`, then `QSF_EPS`, then the default.
fn resolve_eps(flag: Option<f64>) -> Result<f64, Failure> {
    if let Some(e) = flag {
        return Ok(e);
    }
    match std::env::var("QSF_EPS") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Usage(format!("QSF_EPS is not a number: {s}"))),
        Err(_) => Ok(QContext::DEFAULT_EPS),
    }
}

fn context(q: f64, eps: f64) -> Result<QContext, Failure> {
    Ok(QContext::with_params(q, eps, QContext::DEFAULT_MAX_TERMS)?)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("this function needs --{flag}")))
}

fn print_approx(a: Approx) {
    println!("value {:.16e}", a.value);
    println!("err   {:.16e}", a.err);
}

fn eval(func: Func, q: f64, x: Option<f64>, k: Option<u32>, a: Option<f64>, n: Option<usize>, eps: Option<f64>) -> Outcome {
    let ctx = context(q, resolve_eps(eps)?)?;
    let v = match func {
        Func::Bracket => Approx::new(qcore::q_bracket(&ctx, need(x, "x")?), 0.0),
        Func::Qpoch => Approx::new(qcore::qpoch_finite(&ctx, need(x, "x")?, need(n, "n")?), 0.0),
        Func::Qpochinf => qcore::qpoch_inf(&ctx, need(x, "x")?)?,
        Func::Phi10 => qcore::phi10(&ctx, need(a, "a")?, need(x, "x")?, Phi10Form::Series)?,
        Func::Gamma => qgamma::gamma_q(&ctx, need(x, "x")?)?,
        Func::Loggamma => qgamma::log_gamma_q(&ctx, need(x, "x")?)?,
        Func::Psi => qgamma::psi_q(&ctx, need(x, "x")?)?,
        Func::Psideriv => qgamma::psi_q_deriv(&ctx, need(x, "x")?, PsiDerivOrder::new(need(k, "k")?)?)?,
        Func::Gammaconst => qgamma::gamma_q_constant(&ctx)?,
    };
    match func {
        Func::Bracket | Func::Qpoch => println!("value {:.16e}", v.value),
        _ => print_approx(v),
    }
    Ok(0)
}

fn zero(q: f64, tol: f64, which: Which) -> Outcome {
    let ctx = context(q, resolve_eps(None)?)?;
    let r = match which {
        Which::Psi => roots::psi_zero(&ctx, tol)?,
        Which::Gplus => roots::g_plus_minus_zero(&ctx, GSign::Plus, tol)?,
        Which::Gminus => roots::g_plus_minus_zero(&ctx, GSign::Minus, tol)?,
    };
    println!("x0         {:.16e}", r.x0);
    println!("residual   {:.16e} +- {:.3e}", r.residual.value, r.residual.err);
    println!("bracket    [{:.16e}, {:.16e}]", r.bracket.0, r.bracket.1);
    println!("iterations {}", r.iterations);
    println!("status     {:?}", r.status);
    Ok(if r.status == RootStatus::Converged { 0 } else { EXIT_NUMERIC })
}

fn check(id: &str, q: Option<f64>, raw: &[String]) -> Outcome {
    let mut params = BTreeMap::new();
    if let Some(q) = q {
        params.insert("q".to_string(), q);
    }
    for kv in raw {
        let (k, v) = kv.split_once('=').ok_or_else(|| Failure::Usage(format!("expected name=value, got `{kv}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| Failure::Usage(format!("`{v}` is not a number")))?;
        params.insert(k.trim().to_string(), v);
    }
    let ctx = context(0.5, resolve_eps(None)?)?;
    let o = run_check(&ctx, id, &params)?;
    println!("check   {}", o.id);
    for (k, v) in &o.params {
        println!("param   {k} = {v}");
    }
    for v in &o.values {
        println!("value   {} = {:.16e} +- {:.3e}", v.label, v.value, v.err);
    }
    println!("margin  {:.16e} +- {:.3e}", o.margin, o.margin_err);
    println!("verdict {}", o.verdict.as_str());
    if let Some(r) = &o.reason {
        println!("reason  {r}");
    }
    Ok(match o.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_NUMERIC,
    })
}

fn suite(config: SuiteConfig, out: Option<PathBuf>, format: OutFormat) -> Outcome {
    let report = run_suite(&config)?;
    let fmt = match format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    let bytes = serialize_report(&report, fmt)?;
    match out {
        Some(path) => std::fs::write(&path, bytes).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{}", String::from_utf8_lossy(&bytes)),
    }
    for e in &report.entries {
        eprintln!(
            "{:<26} pass {:>6} fail {:>6} inconclusive {:>6}",
            e.id, e.pass, e.fail, e.inconclusive
        );
    }
    eprintln!("verdict {} in {:.2} s", report.verdict.as_str(), report.wall_time_s);
    Ok(if report.verdict == Verdict::Pass { 0 } else { EXIT_FAIL })
}

fn identities(q: Option<f64>, n_max: u32) -> Outcome {
    let qs = match q {
        Some(q) => vec![q],
        None => vec![0.1, 0.3, 0.5, 0.7, 0.9],
    };
    let eps = resolve_eps(None)?;
    let mut failed = 0;
    for q in qs {
        for r in identity_sweep(&context(q, eps)?, n_max)? {
            let ok = r.passed();
            failed += usize::from(!ok);
            println!(
                "q={q:<5} {:<40} residual {:.3e} tol {:.3e} {}",
                r.id,
                r.residual,
                r.tol,
                if ok { "pass" } else { "FAIL" }
            );
        }
    }
    Ok(if failed == 0 { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Eval { func, q, x, k, a, n, eps } => eval(func, q, x, k, a, n, eps),
        Cmd::Zero { q, tol, which } => zero(q, tol, which),
        Cmd::Check { id, q, params } => check(&id, q, &params),
        Cmd::Suite { seed, samples, q_min, q_max, include, exclude, out, format } => {
            match resolve_eps(None) {
                Ok(eps) => suite(
                    SuiteConfig { seed, samples_per_entry: samples, q_min, q_max, eps, include, exclude, parallelism: 0 },
                    out,
                    format,
                ),
                Err(e) => Err(e),
            }
        }
        Cmd::Identities { q, n_max } => identities(q, n_max),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("numeric error: {m}");
            ExitCode::from(EXIT_NUMERIC)
        }
    }
}
