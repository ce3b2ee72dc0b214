//! Registry of inequality, convexity and monotonicity checks.
//!
//! Every check evaluates one or more chains `m_0 ⋖ m_1 ⋖ …` and reports the
//! smallest oriented gap. Members that share a large common term are
//! evaluated with that term removed, so that exponentially small gaps
//! remain resolvable in double precision.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::approx::Approx;
use crate::context::{QContext, Q_MAX, Q_MIN};
use crate::error::{Error, Result};

mod entries;
mod probe;

pub use entries::petrovic_gap;
pub use probe::{convexity_probe, monotonicity_probe, Convexity, FunctionHandle, Monotone, ProbeMargin};

/// Sampled parameters by name. Integer parameters are stored as integral `f64`.
pub type Params = BTreeMap<String, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    ChainInequality,
    Convexity,
    Monotonicity,
    Bound,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParamDomain {
    /// The base `q`; sampled from the harness window, validated against
    /// [`Q_MIN`]..=[`Q_MAX`].
    Base,
    /// A second base `p` with `Q_MIN <= p < q`.
    BelowBase,
    Real { lo: f64, hi: f64, lo_open: bool, hi_open: bool },
    Int { lo: i64, hi: i64 },
}

impl ParamDomain {
    pub const fn open_closed(lo: f64, hi: f64) -> Self {
        ParamDomain::Real { lo, hi, lo_open: true, hi_open: false }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        ParamDomain::Real { lo, hi, lo_open: true, hi_open: true }
    }

    pub const fn closed(lo: f64, hi: f64) -> Self {
        ParamDomain::Real { lo, hi, lo_open: false, hi_open: false }
    }

    fn contains(&self, v: f64, params: &Params) -> bool {
        match *self {
            ParamDomain::Base => (Q_MIN..=Q_MAX).contains(&v),
            ParamDomain::BelowBase => {
                let q = params.get("q").copied().unwrap_or(f64::NAN);
                v >= Q_MIN && v < q
            }
            ParamDomain::Real { lo, hi, lo_open, hi_open } => {
                let above = if lo_open { v > lo } else { v >= lo };
                let below = if hi_open { v < hi } else { v <= hi };
                above && below
            }
            ParamDomain::Int { lo, hi } => {
                libm::trunc(v) == v && v >= lo as f64 && v <= hi as f64
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: ParamDomain,
    pub note: &'static str,
}

pub(crate) type EvalFn = fn(&QContext, &Args) -> Result<Vec<Chain>>;

/// One registered check.
#[derive(Clone, Copy)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub statement: &'static str,
    /// Short description of the source result.
    pub anchor: &'static str,
    pub kind: Kind,
    pub params: &'static [ParamSpec],
    /// A condition joining several parameters, with its description.
    pub constraint: Option<(fn(&Params) -> bool, &'static str)>,
    pub(crate) eval: EvalFn,
}

impl core::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("params", &self.params)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Less,
    LessEq,
}

/// `gap = right - left` for one adjacent pair of a chain.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub gap: Approx,
    pub relation: Relation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        }
    }
}

impl Link {
    pub fn verdict(&self) -> Verdict {
        let g = self.gap;
        match self.relation {
            Relation::Less if g.value > g.err => Verdict::Pass,
            Relation::LessEq if g.value >= -g.err => Verdict::Pass,
            _ if g.value < -g.err => Verdict::Fail,
            _ => Verdict::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Member {
    pub label: String,
    pub value: Approx,
}

/// An ascending chain of members with the gaps between them.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    pub label: String,
    pub members: Vec<Member>,
    pub links: Vec<Link>,
}

impl Chain {
    /// `m_0 ⋖ m_1 ⋖ …` with one relation for every link.
    pub fn ascending<S: AsRef<str>>(label: &str, relation: Relation, members: &[(S, Approx)]) -> Self {
        let links = members
            .windows(2)
            .map(|w| Link { gap: w[1].1 - w[0].1, relation })
            .collect();
        Chain {
            label: label.to_string(),
            members: members
                .iter()
                .map(|(l, v)| Member { label: l.as_ref().to_string(), value: *v })
                .collect(),
            links,
        }
    }

    pub fn lt(label: &str, members: &[(&str, Approx)]) -> Self {
        Self::ascending(label, Relation::Less, members)
    }

    pub fn le(label: &str, members: &[(&str, Approx)]) -> Self {
        Self::ascending(label, Relation::LessEq, members)
    }

    /// A chain given directly by its gaps, for members whose difference
    /// is computed without forming the members.
    pub fn from_gaps<S: AsRef<str>>(label: &str, relation: Relation, gaps: &[(S, Approx)]) -> Self {
        Chain {
            label: label.to_string(),
            members: gaps
                .iter()
                .map(|(l, v)| Member { label: l.as_ref().to_string(), value: *v })
                .collect(),
            links: gaps.iter().map(|(_, g)| Link { gap: *g, relation }).collect(),
        }
    }

    /// The same chain read in the opposite direction.
    pub fn reversed(&self) -> Self {
        Chain {
            label: self.label.clone(),
            members: self.members.iter().rev().cloned().collect(),
            links: self
                .links
                .iter()
                .rev()
                .map(|l| Link { gap: -l.gap, relation: l.relation })
                .collect(),
        }
    }

    /// Smallest gap and its error.
    pub fn margin(&self) -> Option<Approx> {
        self.links
            .iter()
            .map(|l| l.gap)
            .min_by(|a, b| a.value.total_cmp(&b.value))
    }

    pub fn verdict(&self) -> Verdict {
        self.links.iter().map(Link::verdict).max().unwrap_or(Verdict::Inconclusive)
    }
}

/// A reported chain member.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedValue {
    pub label: String,
    pub value: f64,
    pub err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub id: String,
    pub params: Params,
    pub values: Vec<NamedValue>,
    /// Smallest oriented gap over all chains; positive means the claim holds.
    /// `NaN` when evaluation failed.
    pub margin: f64,
    /// Error bound of the gap that attains `margin`.
    pub margin_err: f64,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

impl CheckOutcome {
    fn from_chains(id: &str, params: Params, chains: &[Chain]) -> Self {
        let mut values = Vec::new();
        for c in chains {
            for m in &c.members {
                values.push(NamedValue {
                    label: format!("{}: {}", c.label, m.label),
                    value: m.value.value,
                    err: m.value.err,
                });
            }
        }
        let verdict = chains.iter().map(Chain::verdict).max().unwrap_or(Verdict::Inconclusive);
        let margin = chains
            .iter()
            .filter_map(Chain::margin)
            .min_by(|a, b| a.value.total_cmp(&b.value));
        let (margin, margin_err) = match margin {
            Some(m) => (m.value, m.err),
            None => (f64::NAN, f64::NAN),
        };
        let reason = match verdict {
            Verdict::Inconclusive => Some("a gap lies inside its error band".to_string()),
            _ => None,
        };
        CheckOutcome { id: id.to_string(), params, values, margin, margin_err, verdict, reason }
    }

    fn numeric_failure(id: &str, params: Params, err: &Error) -> Self {
        CheckOutcome {
            id: id.to_string(),
            params,
            values: Vec::new(),
            margin: f64::NAN,
            margin_err: f64::NAN,
            verdict: Verdict::Inconclusive,
            reason: Some(err.to_string()),
        }
    }
}

/// Typed access to validated parameters.
pub(crate) struct Args<'a> {
    params: &'a Params,
}

impl Args<'_> {
    pub fn f(&self, name: &str) -> f64 {
        self.params[name]
    }

    pub fn n(&self, name: &str) -> u32 {
        self.params[name] as u32
    }
}

/// All registered checks in a stable order.
pub fn list_entries() -> &'static [CatalogEntry] {
    entries::ENTRIES
}

pub fn find_entry(id: &str) -> Result<&'static CatalogEntry> {
    list_entries()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Check that `params` holds exactly the entry's parameters, each in domain.
pub fn validate_params(entry: &CatalogEntry, params: &Params) -> Result<()> {
    for spec in entry.params {
        let v = params.get(spec.name).ok_or_else(|| {
            Error::DomainViolation(format!("{}: missing parameter `{}`", entry.id, spec.name))
        })?;
        if !spec.domain.contains(*v, params) {
            return Err(Error::DomainViolation(format!(
                "{}: {} = {v} is outside {:?}",
                entry.id, spec.name, spec.domain
            )));
        }
    }
    if let Some((holds, what)) = entry.constraint {
        if !holds(params) {
            return Err(Error::DomainViolation(format!("{}: requires {what}", entry.id)));
        }
    }
    if let Some(extra) = params.keys().find(|k| !entry.params.iter().any(|s| s.name == *k)) {
        return Err(Error::DomainViolation(format!("{}: unknown parameter `{extra}`", entry.id)));
    }
    Ok(())
}

/// Evaluate one check. The base is taken from `params["q"]` when the
/// entry has one; `ctx` supplies `eps` and `max_terms`.
///
/// Numeric failures become inconclusive outcomes; only unknown ids and
/// invalid parameters are errors.
pub fn run_check(ctx: &QContext, id: &str, params: &Params) -> Result<CheckOutcome> {
    let entry = find_entry(id)?;
    validate_params(entry, params)?;
    let local = match params.get("q") {
        Some(&q) => ctx.with_q(q)?,
        None => *ctx,
    };
    let args = Args { params };
    Ok(match (entry.eval)(&local, &args) {
        Ok(chains) => CheckOutcome::from_chains(id, params.clone(), &chains),
        Err(e) => CheckOutcome::numeric_failure(id, params.clone(), &e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, f64)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    #[test]
    fn registry_shape() {
        let e = list_entries();
        assert_eq!(e.len(), 40);
        assert!(e.iter().any(|x| x.id == "GAUTSCHI-Q"));
        for (i, a) in e.iter().enumerate() {
            assert!(!a.anchor.is_empty() && !a.statement.is_empty(), "{}", a.id);
            for b in &e[i + 1..] {
                assert_ne!(a.id, b.id);
            }
        }
    }

    #[test]
    fn link_verdicts() {
        let strict = |v, e| Link { gap: Approx::new(v, e), relation: Relation::Less }.verdict();
        let loose = |v, e| Link { gap: Approx::new(v, e), relation: Relation::LessEq }.verdict();
        assert_eq!(strict(1.0, 0.5), Verdict::Pass);
        assert_eq!(strict(0.1, 0.5), Verdict::Inconclusive);
        assert_eq!(strict(-1.0, 0.5), Verdict::Fail);
        assert_eq!(loose(-0.1, 0.5), Verdict::Pass);
        assert_eq!(loose(-1.0, 0.5), Verdict::Fail);
    }

    #[test]
    fn reversal_negates_margin() {
        let c = Chain::lt(
            "t",
            &[("a", Approx::new(0.1, 1e-17)), ("b", Approx::new(0.7, 0.0)), ("c", Approx::exact(0.75))],
        );
        let r = c.reversed();
        assert_eq!(r.margin().unwrap().value, -(0.7 - 0.1));
        assert_eq!(r.links[1].gap.value, -c.links[0].gap.value);
        assert_eq!(c.verdict(), Verdict::Pass);
        assert_eq!(r.verdict(), Verdict::Fail);
    }

    #[test]
    fn unknown_and_out_of_domain() {
        assert_eq!(
            run_check(&ctx(), "NOPE", &Params::new()).unwrap_err(),
            Error::UnknownCheck("NOPE".into())
        );
        let e = run_check(&ctx(), "GAUTSCHI-Q", &params(&[("q", 0.5), ("x", 1.0)]));
        assert!(matches!(e, Err(Error::DomainViolation(_))));
        let e = run_check(&ctx(), "GAUTSCHI-Q", &params(&[("q", 0.5), ("x", 1.0), ("a", 1.0)]));
        assert!(matches!(e, Err(Error::DomainViolation(_))));
        let e = run_check(&ctx(), "PSI-HALF", &params(&[("q", 0.9999)]));
        assert!(matches!(e, Err(Error::DomainViolation(_))));
    }

    #[test]
    fn gautschi_example() {
        let o = run_check(&ctx(), "GAUTSCHI-Q", &params(&[("q", 0.5), ("x", 1.0), ("a", 0.5)]))
            .unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert!(o.margin > 0.0);
        assert_eq!(o.values.len(), 3);
    }

    #[test]
    fn ratio_vs_composed_equality_at_half() {
        let o = run_check(&ctx(), "RATIO-VS-COMPOSED", &params(&[("q", 0.5), ("x", 0.5)])).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert!(o.margin.abs() <= o.margin_err);
    }

    #[test]
    fn means_example() {
        let o = run_check(&ctx(), "MEANS-GLA", &params(&[("a", 4.0), ("b", 1.0)])).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        let v: Vec<f64> = o.values.iter().map(|v| v.value).collect();
        assert!((v[0] - 2.0).abs() < 1e-15);
        assert!((v[1] - 3.0 / libm::log(4.0)).abs() < 1e-15);
        assert!((v[2] - 2.5).abs() < 1e-15);
    }
}
