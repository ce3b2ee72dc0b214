use std::time::Instant;

use qsf_core::catalog::{list_entries, run_check, CatalogEntry, CheckOutcome, Params, Verdict};
use qsf_core::{QContext, Q_MAX, Q_MIN};
use rayon::prelude::*;

use crate::error::{HarnessError, Result};
use crate::sample::sample_params;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 1000;
pub const DEFAULT_Q_MIN: f64 = 0.05;
pub const DEFAULT_Q_MAX: f64 = 0.95;
pub const DEFAULT_EPS: f64 = 1e-12;
pub const MAX_SAMPLES: usize = 100_000;
/// Failing parameter sets kept per entry in the report.
pub const FAILING_KEPT: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples_per_entry: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub eps: f64,
    pub include: Vec<String>,
    pub exclude: Vec<String>,
    /// Worker threads; 0 picks automatically.
    pub parallelism: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: DEFAULT_SEED,
            samples_per_entry: DEFAULT_SAMPLES,
            q_min: DEFAULT_Q_MIN,
            q_max: DEFAULT_Q_MAX,
            eps: DEFAULT_EPS,
            include: Vec::new(),
            exclude: Vec::new(),
            parallelism: 0,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HarnessError::Config(m));
        if self.samples_per_entry == 0 || self.samples_per_entry > MAX_SAMPLES {
            return bad(format!("samples_per_entry must be in 1..={MAX_SAMPLES}"));
        }
        if !(Q_MIN <= self.q_min && self.q_min < self.q_max && self.q_max <= Q_MAX) {
            return bad(format!("need {Q_MIN} <= q_min < q_max <= {Q_MAX}, got [{}, {}]", self.q_min, self.q_max));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad(format!("eps must be in (0, 1), got {}", self.eps));
        }
        for id in self.include.iter().chain(&self.exclude) {
            if !list_entries().iter().any(|e| e.id == id) {
                return bad(format!("unknown check id `{id}`"));
            }
        }
        Ok(())
    }

    /// Entries selected by include/exclude, sorted by id.
    pub fn selected(&self) -> Vec<&'static CatalogEntry> {
        let mut v: Vec<_> = list_entries()
            .iter()
            .filter(|e| self.include.is_empty() || self.include.iter().any(|i| i == e.id))
            .filter(|e| !self.exclude.iter().any(|x| x == e.id))
            .collect();
        v.sort_by_key(|e| e.id);
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryReport {
    pub id: String,
    pub count: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    /// Smallest finite margin over all samples.
    pub min_margin: Option<f64>,
    pub argmin_params: Option<Params>,
    /// The first few failing parameter sets, by sample index.
    pub failing_params: Vec<Params>,
}

impl EntryReport {
    pub fn from_outcomes(id: &str, outcomes: &[CheckOutcome]) -> Self {
        let mut r = EntryReport {
            id: id.to_string(),
            count: outcomes.len(),
            pass: 0,
            fail: 0,
            inconclusive: 0,
            min_margin: None,
            argmin_params: None,
            failing_params: Vec::new(),
        };
        for o in outcomes {
            match o.verdict {
                Verdict::Pass => r.pass += 1,
                Verdict::Fail => {
                    r.fail += 1;
                    if r.failing_params.len() < FAILING_KEPT {
                        r.failing_params.push(o.params.clone());
                    }
                }
                Verdict::Inconclusive => r.inconclusive += 1,
            }
            if o.margin.is_finite() && r.min_margin.map_or(true, |m| o.margin < m) {
                r.min_margin = Some(o.margin);
                r.argmin_params = Some(o.params.clone());
            }
        }
        r
    }

    pub fn inconclusive_fraction(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.inconclusive as f64 / self.count as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub entries: Vec<EntryReport>,
    /// Pass iff no entry has a failing sample.
    pub verdict: Verdict,
    pub wall_time_s: f64,
}

impl SuiteReport {
    pub fn total_fails(&self) -> usize {
        self.entries.iter().map(|e| e.fail).sum()
    }
}

/// Evaluate one sample, turning harness-level errors into inconclusive outcomes.
fn evaluate(ctx: &QContext, id: &str, params: Params) -> CheckOutcome {
    match run_check(ctx, id, &params) {
        Ok(o) => o,
        Err(e) => CheckOutcome {
            id: id.to_string(),
            params,
            values: Vec::new(),
            margin: f64::NAN,
            margin_err: f64::NAN,
            verdict: Verdict::Inconclusive,
            reason: Some(e.to_string()),
        },
    }
}

/// All outcomes, grouped per selected entry in id order and by sample index.
pub fn run_outcomes(config: &SuiteConfig) -> Result<Vec<(&'static str, Vec<CheckOutcome>)>> {
    config.validate()?;
    let ctx = QContext::with_params(0.5, config.eps, QContext::DEFAULT_MAX_TERMS)?;
    let entries = config.selected();
    let jobs: Vec<(usize, Params)> = entries
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            (0..config.samples_per_entry as u64)
                .map(move |k| (i, sample_params(e, config.seed, k, config.q_min, config.q_max)))
        })
        .collect();
    let eval = || -> Vec<CheckOutcome> {
        jobs.into_par_iter().map(|(i, p)| evaluate(&ctx, entries[i].id, p)).collect()
    };
    let outcomes = if config.parallelism == 0 {
        eval()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?
            .install(eval)
    };
    let mut it = outcomes.into_iter();
    Ok(entries
        .iter()
        .map(|e| (e.id, it.by_ref().take(config.samples_per_entry).collect()))
        .collect())
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let grouped = run_outcomes(config)?;
    let entries: Vec<EntryReport> =
        grouped.iter().map(|(id, o)| EntryReport::from_outcomes(id, o)).collect();
    let verdict = if entries.iter().any(|e| e.fail > 0) { Verdict::Fail } else { Verdict::Pass };
    Ok(SuiteReport { config: config.clone(), entries, verdict, wall_time_s: start.elapsed().as_secs_f64() })
}
