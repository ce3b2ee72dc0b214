//! q-bracket, q-Pochhammer symbols and the ₁φ₀ series.

use crate::approx::{Approx, ROUND};
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::sum::Accum;

/// How many terms a series or product may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Stop once the a-priori tail bound and the last term are below target.
    Auto,
    /// Use exactly this many terms; `err` then covers rounding only.
    Terms(usize),
}

/// An approximation plus the number of terms it used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub approx: Approx,
    pub terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi10Form {
    Series,
    Product,
}

/// Truncation target for a partial sum: `eps` absolute, tightened to
/// relative for small sums.
pub(crate) fn target(eps: f64, partial: f64) -> f64 {
    eps * partial.abs().min(1.0)
}

/// `ln(1 - e^z)` for `z < 0` with an error bound.
pub(crate) fn ln1m_exp(z: f64) -> (f64, f64) {
    debug_assert!(z < 0.0);
    if z < -core::f64::consts::LN_2 {
        let y = libm::exp(z);
        let t = libm::log1p(-y);
        (t, ROUND * t.abs() * (2.0 * z.abs() + 3.0))
    } else {
        let t = libm::log(-libm::expm1(z));
        (t, ROUND * (2.0 + t.abs()))
    }
}

/// `ln(1 + e^z)` with an error bound.
pub(crate) fn ln1p_exp(z: f64) -> (f64, f64) {
    let y = libm::exp(z);
    let t = libm::log1p(y);
    (t, ROUND * t.abs() * (z.abs() + 3.0))
}

/// `1/(1-q)` evaluated without cancellation.
pub(crate) fn inv_one_minus_q(ctx: &QContext) -> f64 {
    -1.0 / libm::expm1(ctx.ln_q())
}

/// `[x]_q = (1 - q^x)/(1 - q)`.
pub fn q_bracket(ctx: &QContext, x: f64) -> f64 {
    let z = x * ctx.ln_q();
    let den = -libm::expm1(ctx.ln_q());
    if z > 700.0 {
        // q^x overflows: (1 - q^x) = -q^x (1 - q^{-x})
        let ln_mag = z + libm::log(-libm::expm1(-z)) - libm::log(den);
        -libm::exp(ln_mag)
    } else {
        -libm::expm1(z) / den
    }
}

/// `ln(1 - q^s)` for `s > 0`.
pub fn ln1m_qpow(ctx: &QContext, s: f64) -> Result<Approx> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid(alloc::format!("ln(1 - q^s) needs s > 0, got {s}")));
    }
    let (t, e) = ln1m_exp(s * ctx.ln_q());
    Ok(Approx::new(t, e))
}

/// `(a;q)_n`, a plain finite product.
///
/// Products longer than 64 factors are accumulated in log space with sign
/// tracking, so they neither underflow nor overflow prematurely.
pub fn qpoch_finite(ctx: &QContext, a: f64, n: usize) -> f64 {
    let factor = |i: usize| 1.0 - a * libm::pow(ctx.q(), i as f64);
    if n <= 64 {
        let mut p = 1.0;
        for i in 0..n {
            p *= factor(i);
        }
        return p;
    }
    let mut log_mag = 0.0;
    let mut negative = false;
    for i in 0..n {
        let f = factor(i);
        if f == 0.0 {
            return 0.0;
        }
        negative ^= f < 0.0;
        log_mag += libm::log(f.abs());
    }
    let m = libm::exp(log_mag);
    if negative {
        -m
    } else {
        m
    }
}

/// `ln (a;q)_∞` for `|a| < 1`.
pub fn ln_qpoch_inf_eval(ctx: &QContext, a: f64, trunc: Truncation) -> Result<Evaluation> {
    if !(a.abs() < 1.0) {
        return Err(Error::invalid(alloc::format!(
            "(a;q)_inf needs |a| < 1 for a bounded tail, got a = {a}"
        )));
    }
    if a == 0.0 {
        return Ok(Evaluation { approx: Approx::ZERO, terms: 0 });
    }
    let lq = ctx.ln_q();
    let inv1mq = inv_one_minus_q(ctx);
    let aa = a.abs();
    let mut acc = Accum::new();
    let mut i = 0usize;
    loop {
        let z = i as f64 * lq;
        let qi = libm::exp(z);
        let v = a * qi;
        if let Truncation::Terms(n) = trunc {
            if i == n {
                return Ok(Evaluation { approx: acc.finish(0.0), terms: n });
            }
        } else if i > 0 {
            let tail = aa * qi * inv1mq / (1.0 - aa * qi);
            let goal = target(ctx.eps(), acc.value());
            if tail <= goal {
                return Ok(Evaluation { approx: acc.finish(tail), terms: i });
            }
            if i >= ctx.max_terms() {
                return Err(Error::NonConvergent { terms: i });
            }
        }
        let t = libm::log1p(-v);
        let rel = ROUND * (z.abs() + 2.0);
        let e = v.abs() / (1.0 - v) * rel + ROUND * t.abs();
        acc.push(t, e);
        i += 1;
    }
}

/// `(a;q)_∞` for `|a| < 1`.
pub fn qpoch_inf(ctx: &QContext, a: f64) -> Result<Approx> {
    qpoch_inf_eval(ctx, a, Truncation::Auto).map(|e| e.approx)
}

pub fn qpoch_inf_eval(ctx: &QContext, a: f64, trunc: Truncation) -> Result<Evaluation> {
    if a == 0.0 {
        return Ok(Evaluation { approx: Approx::ONE, terms: 0 });
    }
    let l = ln_qpoch_inf_eval(ctx, a, trunc)?;
    Ok(Evaluation { approx: l.approx.exp()?, terms: l.terms })
}

/// `ln (q^s;q)_∞ = Σ_{i≥0} ln(1 - q^{s+i})` for `s > 0`.
pub fn ln_qpoch_pow(ctx: &QContext, s: f64) -> Result<Approx> {
    ln_qpoch_pow_eval(ctx, s, Truncation::Auto).map(|e| e.approx)
}

pub fn ln_qpoch_pow_eval(ctx: &QContext, s: f64, trunc: Truncation) -> Result<Evaluation> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::invalid(alloc::format!("(q^s;q)_inf needs s > 0, got {s}")));
    }
    let lq = ctx.ln_q();
    let inv1mq = inv_one_minus_q(ctx);
    let mut acc = Accum::new();
    let mut last = f64::INFINITY;
    let mut i = 0usize;
    loop {
        let z = (s + i as f64) * lq;
        match trunc {
            Truncation::Terms(n) if i == n => {
                return Ok(Evaluation { approx: acc.finish(0.0), terms: n });
            }
            Truncation::Auto if i > 0 => {
                let r = libm::exp(z);
                let tail = r * inv1mq / (1.0 - r);
                let goal = target(ctx.eps(), acc.value());
                if tail <= goal && last.abs() <= goal {
                    return Ok(Evaluation { approx: acc.finish(tail), terms: i });
                }
                if i >= ctx.max_terms() {
                    return Err(Error::NonConvergent { terms: i });
                }
            }
            _ => {}
        }
        let (t, e) = ln1m_exp(z);
        acc.push(t, e);
        last = t;
        i += 1;
    }
}

/// `Σ_{i<n} ln(1 - q^{s+i})`, the log of `(q^s;q)_n`.
pub fn ln_qpoch_pow_finite(ctx: &QContext, s: f64, n: usize) -> Result<Approx> {
    ln_qpoch_pow_eval(ctx, s, Truncation::Terms(n)).map(|e| e.approx)
}

/// `Σ_{i<n} ln(1 + q^{s+i})`, the log of `(-q^s;q)_n`.
pub fn ln_qpoch_neg_pow_finite(ctx: &QContext, s: f64, n: usize) -> Result<Approx> {
    if !s.is_finite() {
        return Err(Error::invalid("non-finite exponent"));
    }
    let mut acc = Accum::new();
    for i in 0..n {
        let (t, e) = ln1p_exp((s + i as f64) * ctx.ln_q());
        acc.push(t, e);
    }
    Ok(acc.finish(0.0))
}

/// One factor of a ratio product: `ln((1 - q^{lo+i})/(1 - q^{hi+i}))`
/// for `lo < hi`, computed without cancellation. `gap = -expm1((hi-lo) ln q)`.
fn ratio_term(lq: f64, lo: f64, hi: f64, gap: f64, i: f64) -> (f64, f64, f64) {
    let z_lo = (lo + i) * lq;
    let z_hi = (hi + i) * lq;
    let den_hi = -libm::expm1(z_hi);
    let num = libm::exp(z_lo) * gap;
    let r = num / den_hi;
    if r <= 0.5 {
        let rel = ROUND * (z_lo.abs() + 7.0);
        let d = libm::log1p(-r);
        (d, d.abs() * (2.0 * rel + ROUND), r)
    } else {
        let a = libm::log(-libm::expm1(z_lo));
        let b = libm::log(den_hi);
        let d = a - b;
        (d, ROUND * (4.0 + a.abs() + b.abs() + d.abs()), r)
    }
}

/// `ln (q^s;q)_∞ - ln (q^t;q)_∞` summed factor by factor, `s, t > 0`.
///
/// Accurate even when the two products nearly cancel.
pub fn ln_qpoch_ratio(ctx: &QContext, s: f64, t: f64) -> Result<Approx> {
    ln_qpoch_ratio_eval(ctx, s, t, Truncation::Auto).map(|e| e.approx)
}

/// Finite-product counterpart of [`ln_qpoch_ratio`]: `ln((q^s;q)_n/(q^t;q)_n)`.
pub fn ln_qpoch_ratio_finite(ctx: &QContext, s: f64, t: f64, n: usize) -> Result<Approx> {
    ln_qpoch_ratio_eval(ctx, s, t, Truncation::Terms(n)).map(|e| e.approx)
}

pub fn ln_qpoch_ratio_eval(ctx: &QContext, s: f64, t: f64, trunc: Truncation) -> Result<Evaluation> {
    if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
        return Err(Error::invalid(alloc::format!(
            "ratio of q-products needs positive exponents, got {s}, {t}"
        )));
    }
    if s == t {
        return Ok(Evaluation { approx: Approx::ZERO, terms: 0 });
    }
    let (lo, hi, sign) = if s < t { (s, t, 1.0) } else { (t, s, -1.0) };
    let lq = ctx.ln_q();
    let inv1mq = inv_one_minus_q(ctx);
    let gap = -libm::expm1((hi - lo) * lq);
    let mut acc = Accum::new();
    let mut last = f64::INFINITY;
    let mut i = 0usize;
    let finish = |acc: &Accum, tail: f64, terms: usize| {
        let a = acc.finish(tail);
        Evaluation { approx: Approx::new(sign * a.value, a.err), terms }
    };
    loop {
        match trunc {
            Truncation::Terms(n) if i == n => return Ok(finish(&acc, 0.0, n)),
            Truncation::Auto if i > 0 => {
                let r_lo = libm::exp((lo + i as f64) * lq);
                let r_hi = libm::exp((hi + i as f64) * lq);
                let tail = r_lo * gap * inv1mq / (1.0 - r_hi);
                let goal = target(ctx.eps(), acc.value());
                if tail <= goal && last.abs() <= goal {
                    return Ok(finish(&acc, tail, i));
                }
                if i >= ctx.max_terms() {
                    return Err(Error::NonConvergent { terms: i });
                }
            }
            _ => {}
        }
        let (d, e, _) = ratio_term(lq, lo, hi, gap, i as f64);
        acc.push(d, e);
        last = d;
        i += 1;
    }
}

/// The basic hypergeometric series `₁φ₀(a; q, x)` for `|x| < 1`.
pub fn phi10(ctx: &QContext, a: f64, x: f64, form: Phi10Form) -> Result<Approx> {
    phi10_eval(ctx, a, x, form, Truncation::Auto).map(|e| e.approx)
}

pub fn phi10_eval(
    ctx: &QContext,
    a: f64,
    x: f64,
    form: Phi10Form,
    trunc: Truncation,
) -> Result<Evaluation> {
    if !(x.abs() < 1.0) || !a.is_finite() {
        return Err(Error::invalid(alloc::format!("1phi0 needs |x| < 1, got x = {x}")));
    }
    match form {
        Phi10Form::Series => phi10_series(ctx, a, x, trunc),
        Phi10Form::Product => {
            let l = ln_phi10_product_eval(ctx, a, x, trunc)?;
            Ok(Evaluation { approx: l.approx.exp()?, terms: l.terms })
        }
    }
}

/// `ln((a x;q)_∞ / (x;q)_∞)`, the log of the product form of `₁φ₀(a; q, x)`.
/// Requires `|x| < 1` and `|a x| < 1`.
pub fn ln_phi10_product(ctx: &QContext, a: f64, x: f64) -> Result<Approx> {
    ln_phi10_product_eval(ctx, a, x, Truncation::Auto).map(|e| e.approx)
}

fn ln_phi10_product_eval(ctx: &QContext, a: f64, x: f64, trunc: Truncation) -> Result<Evaluation> {
    if !(x.abs() < 1.0 && (a * x).abs() < 1.0) {
        return Err(Error::invalid("product form of 1phi0 needs |x| < 1 and |a x| < 1"));
    }
    let num = ln_qpoch_inf_eval(ctx, a * x, trunc)?;
    let den = ln_qpoch_inf_eval(ctx, x, trunc)?;
    Ok(Evaluation { approx: num.approx - den.approx, terms: num.terms.max(den.terms) })
}

fn phi10_series(ctx: &QContext, a: f64, x: f64, trunc: Truncation) -> Result<Evaluation> {
    if x == 0.0 {
        return Ok(Evaluation { approx: Approx::ONE, terms: 1 });
    }
    let lq = ctx.ln_q();
    let mut acc = Accum::new();
    // t holds the n-th term, rel its accumulated relative error
    let mut t = 1.0f64;
    let mut rel = 0.0f64;
    let mut n = 0usize;
    loop {
        let qn = libm::exp(n as f64 * lq);
        let den = -libm::expm1((n + 1) as f64 * lq);
        match trunc {
            Truncation::Terms(m) if n == m => {
                return Ok(Evaluation { approx: acc.finish(0.0), terms: m });
            }
            Truncation::Auto if n > 0 => {
                let rho = x.abs() * (1.0 + a.abs() * qn) / den;
                if rho < 1.0 {
                    let tail = t.abs() * (1.0 + rel) / (1.0 - rho);
                    if tail <= target(ctx.eps(), acc.value()) {
                        return Ok(Evaluation { approx: acc.finish(tail), terms: n });
                    }
                }
                if n >= ctx.max_terms() {
                    return Err(Error::NonConvergent { terms: n });
                }
            }
            _ => {}
        }
        acc.push(t, t.abs() * rel);
        let aq = a * qn;
        let num = 1.0 - aq;
        let num_rel = if num == 0.0 {
            0.0
        } else {
            aq.abs() * (n as f64 * lq.abs() + 2.0) / num.abs()
        };
        t *= x * num / den;
        rel += ROUND * (4.0 + num_rel);
        n += 1;
    }
}
