//! Grid probes for convexity and monotonicity of named functions.

use alloc::format;

use crate::approx::Approx;
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::qgamma::{log_gamma_q, psi_q};
use crate::roots::{g_plus_minus, GSign};

/// Functions that can be probed on a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FunctionHandle {
    LogGammaQ,
    PsiQ,
    XPsiQ,
    /// `ln Γ_q(x+1)^{1/x}`
    LogF,
    /// `-ln Γ_q(x+1)^{1/x}`
    LogRecipF,
    /// `ln(Γ_q(x+1)^{1/x}/x)`
    LogFOverX,
    /// `ln Γ_q(x)/x`
    LogGammaPowInvX,
    /// `x ln Γ_q(x)`
    LogGammaPowX,
    /// `ln Γ_q((1-x)/x)`
    LogRatioMap,
    /// `ln(Γ_q(1-x)/Γ_q(x))`
    LogReflectionRatio,
    GPlus,
    GMinus,
    Constant(f64),
    /// `c x`
    Linear(f64),
}

impl FunctionHandle {
    /// Open interval on which the function is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            FunctionHandle::LogRatioMap | FunctionHandle::LogReflectionRatio => (0.0, 1.0),
            FunctionHandle::Constant(_) | FunctionHandle::Linear(_) => (f64::NEG_INFINITY, f64::INFINITY),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn eval(&self, ctx: &QContext, x: f64) -> Result<Approx> {
        let (lo, hi) = self.domain();
        if !(x > lo && x < hi) {
            return Err(Error::DomainViolation(format!("{self:?} is undefined at {x}")));
        }
        let log_f = |x: f64| log_gamma_q(ctx, x + 1.0)?.div(Approx::exact(x));
        match *self {
            FunctionHandle::LogGammaQ => log_gamma_q(ctx, x),
            FunctionHandle::PsiQ => psi_q(ctx, x),
            FunctionHandle::XPsiQ => Ok(psi_q(ctx, x)? * x),
            FunctionHandle::LogF => log_f(x),
            FunctionHandle::LogRecipF => log_f(x).map(|v| -v),
            FunctionHandle::LogFOverX => Ok(log_f(x)? - Approx::rounded(libm::log(x))),
            FunctionHandle::LogGammaPowInvX => log_gamma_q(ctx, x)?.div(Approx::exact(x)),
            FunctionHandle::LogGammaPowX => Ok(log_gamma_q(ctx, x)? * x),
            FunctionHandle::LogRatioMap => log_gamma_q(ctx, (1.0 - x) / x),
            FunctionHandle::LogReflectionRatio => Ok(log_gamma_q(ctx, 1.0 - x)? - log_gamma_q(ctx, x)?),
            FunctionHandle::GPlus => g_plus_minus(ctx, GSign::Plus, x),
            FunctionHandle::GMinus => g_plus_minus(ctx, GSign::Minus, x),
            FunctionHandle::Constant(c) => Ok(Approx::exact(c)),
            FunctionHandle::Linear(c) => Ok(Approx::rounded(c * x)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convexity {
    Convex,
    Concave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
}

/// Smallest oriented difference found by a probe.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeMargin {
    pub margin: f64,
    pub err: f64,
    /// Grid node where the margin is attained.
    pub at: f64,
}

impl ProbeMargin {
    /// The margin is positive beyond its error.
    pub fn certified(&self) -> bool {
        self.margin > self.err
    }

    /// The margin is within its error of zero.
    pub fn flat(&self) -> bool {
        self.margin.abs() <= self.err
    }
}

fn grid(f: FunctionHandle, lo: f64, hi: f64, points: usize, min_points: usize) -> Result<()> {
    let (dlo, dhi) = f.domain();
    if points < min_points {
        return Err(Error::DomainViolation(format!("probe needs at least {min_points} points")));
    }
    if !(lo < hi && lo > dlo && hi < dhi && lo.is_finite() && hi.is_finite()) {
        return Err(Error::DomainViolation(format!("[{lo}, {hi}] is not inside the domain of {f:?}")));
    }
    Ok(())
}

fn node(lo: f64, hi: f64, points: usize, i: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (points - 1) as f64
}

fn smallest(acc: Option<ProbeMargin>, d: Approx, at: f64) -> Option<ProbeMargin> {
    match acc {
        Some(m) if m.margin <= d.value => Some(m),
        _ => Some(ProbeMargin { margin: d.value, err: d.err, at }),
    }
}

/// Minimum oriented second difference `f(x_{i-1}) - 2 f(x_i) + f(x_{i+1})`
/// over a uniform grid on `[lo, hi]`.
pub fn convexity_probe(
    ctx: &QContext,
    f: FunctionHandle,
    lo: f64,
    hi: f64,
    points: usize,
    sense: Convexity,
) -> Result<ProbeMargin> {
    grid(f, lo, hi, points, 3)?;
    let mut prev = (f.eval(ctx, lo)?, f.eval(ctx, node(lo, hi, points, 1))?);
    let mut best = None;
    for i in 2..points {
        let x = node(lo, hi, points, i);
        let cur = f.eval(ctx, x)?;
        let d = prev.0 - prev.1 * 2.0 + cur;
        let d = match sense {
            Convexity::Convex => d,
            Convexity::Concave => -d,
        };
        best = smallest(best, d, node(lo, hi, points, i - 1));
        prev = (prev.1, cur);
    }
    Ok(best.expect("at least one interior node"))
}

/// Minimum oriented forward difference over a uniform grid on `[lo, hi]`.
pub fn monotonicity_probe(
    ctx: &QContext,
    f: FunctionHandle,
    lo: f64,
    hi: f64,
    points: usize,
    sense: Monotone,
) -> Result<ProbeMargin> {
    grid(f, lo, hi, points, 2)?;
    let mut prev = f.eval(ctx, lo)?;
    let mut best = None;
    for i in 1..points {
        let x = node(lo, hi, points, i);
        let cur = f.eval(ctx, x)?;
        let d = match sense {
            Monotone::Increasing => cur - prev,
            Monotone::Decreasing => prev - cur,
        };
        best = smallest(best, d, node(lo, hi, points, i - 1));
        prev = cur;
    }
    Ok(best.expect("at least two nodes"))
}
