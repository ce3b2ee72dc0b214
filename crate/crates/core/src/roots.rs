//! Bisection for the zero of ψ_q and of `ln Γ_q(x) ± x ψ_q(x)`.

use crate::approx::Approx;
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::qgamma::{gamma_q, log_gamma_q, psi_q};

pub const DEFAULT_TOL: f64 = 1e-12;
const MIN_TOL: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootStatus {
    Converged,
    /// The sign at some midpoint stayed inside its error band even at a
    /// tighter `eps`; `bracket` is the last certified one.
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootResult {
    pub x0: f64,
    /// `f(x0)` as evaluated, with its error bound.
    pub residual: Approx,
    pub bracket: (f64, f64),
    pub iterations: usize,
    pub status: RootStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GSign {
    Plus,
    Minus,
}

/// Location and value of the minimum of Γ_q on `(0, ∞)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaMin {
    pub root: RootResult,
    pub gmin: Approx,
}

/// Sign of `v` if it is certified by its error bound.
fn certain_sign(v: Approx) -> Option<bool> {
    if v.value > v.err {
        Some(true)
    } else if v.value < -v.err {
        Some(false)
    } else {
        None
    }
}

/// Iteration bound for shrinking a unit-scale bracket to `tol`.
pub fn max_iterations(width: f64, tol: f64) -> usize {
    libm::ceil(libm::log2(width / tol)) as usize + 2
}

/// Bisection on `[lo, hi]` for a function whose endpoint signs differ.
pub fn bisect<F>(ctx: &QContext, f: F, lo: f64, hi: f64, tol: f64) -> Result<RootResult>
where
    F: Fn(&QContext, f64) -> Result<Approx>,
{
    if !(tol >= MIN_TOL) {
        return Err(Error::invalid(alloc::format!("tol = {tol} is below {MIN_TOL}")));
    }
    if !(lo < hi) {
        return Err(Error::invalid("empty bracket"));
    }
    let fine = ctx.with_eps(ctx.eps() / 100.0)?;
    let sign_at = |x: f64| -> Result<(Option<bool>, Approx)> {
        let v = f(ctx, x)?;
        match certain_sign(v) {
            Some(s) => Ok((Some(s), v)),
            None => {
                let v = f(&fine, x)?;
                Ok((certain_sign(v), v))
            }
        }
    };
    let (s_lo, f_lo) = sign_at(lo)?;
    let (s_hi, f_hi) = sign_at(hi)?;
    let s_lo = match (s_lo, s_hi) {
        (Some(a), Some(b)) if a != b => a,
        _ => {
            return Err(Error::BracketFailure { lo, hi, f_lo: f_lo.value, f_hi: f_hi.value });
        }
    };
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    let mut status = RootStatus::Converged;
    while b - a > tol {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        iterations += 1;
        match sign_at(m)?.0 {
            Some(s) if s == s_lo => a = m,
            Some(_) => b = m,
            None => {
                status = RootStatus::Inconclusive;
                break;
            }
        }
    }
    let x0 = 0.5 * (a + b);
    Ok(RootResult { x0, residual: f(ctx, x0)?, bracket: (a, b), iterations, status })
}

/// The zero of ψ_q, which lies in `(1, 2)`.
pub fn psi_zero(ctx: &QContext, tol: f64) -> Result<RootResult> {
    bisect(ctx, psi_q, 1.0, 2.0, tol)
}

/// Minimum of Γ_q, attained at the zero of ψ_q.
pub fn gamma_min(ctx: &QContext, tol: f64) -> Result<GammaMin> {
    let root = psi_zero(ctx, tol)?;
    Ok(GammaMin { root, gmin: gamma_q(ctx, root.x0)? })
}

/// `ln Γ_q(x) + x ψ_q(x)` or `ln Γ_q(x) - x ψ_q(x)`.
pub fn g_plus_minus(ctx: &QContext, sign: GSign, x: f64) -> Result<Approx> {
    let lg = log_gamma_q(ctx, x)?;
    let xp = psi_q(ctx, x)? * x;
    Ok(match sign {
        GSign::Plus => lg + xp,
        GSign::Minus => lg - xp,
    })
}

/// The zero of `ln Γ_q(x) ± x ψ_q(x)` in `(1, 2)`.
pub fn g_plus_minus_zero(ctx: &QContext, sign: GSign, tol: f64) -> Result<RootResult> {
    bisect(ctx, |c, x| g_plus_minus(c, sign, x), 1.0, 2.0, tol)
}
