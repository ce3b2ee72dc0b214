use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{Args, CatalogEntry, Chain, Kind, ParamDomain, ParamSpec, Params, Relation};
use crate::approx::{Approx, ROUND};
use crate::context::QContext;
use crate::error::Result;
use crate::identities::{divisors, moebius, totient};
use crate::qcore::{
    ln1m_qpow, ln_phi10_product, ln_qpoch_neg_pow_finite, ln_qpoch_pow, ln_qpoch_ratio,
    ln_qpoch_ratio_finite,
};
use crate::qgamma::{
    classical_log_gamma, gamma_q_constant, log_gamma_q, psi_q, psi_q_deriv, psi_series, PsiDerivOrder,
};
use crate::roots::{g_plus_minus_zero, psi_zero, GSign, DEFAULT_TOL};

// Shorthand used below:
//   L1      = ln(1 - q)
//   S(x)    = Σ_{n≥1} q^{nx}/(1 - q^n), so ψ_q(x) = -L1 + ln q · S(x)
//   R(s, t) = ln (q^s;q)_∞ - ln (q^t;q)_∞
//   ln Γ_q(u) - ln Γ_q(v) = R(v, u) + (v - u) L1
//   h(x)    = R(1, x + 1)/x, so ln (Γ_q(x+1))^{1/x} = h(x) - L1
// Terms common to every member of a chain are dropped before comparing.

pub(crate) fn s(c: &QContext, x: f64) -> Result<Approx> {
    psi_series(c, x, 0)
}

fn lq(c: &QContext) -> Approx {
    Approx::rounded(c.ln_q())
}

fn l1(c: &QContext) -> Result<Approx> {
    ln1m_qpow(c, 1.0)
}

fn r(c: &QContext, s: f64, t: f64) -> Result<Approx> {
    ln_qpoch_ratio(c, s, t)
}

pub(crate) fn h(c: &QContext, x: f64) -> Result<Approx> {
    r(c, 1.0, x + 1.0)?.div(Approx::exact(x))
}

fn deriv(c: &QContext, x: f64, k: u32) -> Result<Approx> {
    psi_q_deriv(c, x, PsiDerivOrder::new(k)?)
}

/// `q^x ln q/(1 - q^x)` and `q^x (ln q)²/(1 - q^x)²`.
fn qx_terms(c: &QContext, x: f64) -> (Approx, Approx) {
    let z = x * c.ln_q();
    let e = libm::exp(z);
    let om = -libm::expm1(z);
    let a = e * c.ln_q() / om;
    let b = a * c.ln_q() / om;
    let rel = ROUND * (z.abs() + 8.0);
    (Approx::new(a, a.abs() * rel), Approx::new(b, b.abs() * 2.0 * rel))
}

fn ln1p_sqrt_q(c: &QContext) -> Result<Approx> {
    ln_qpoch_neg_pow_finite(c, 0.5, 1)
}

#[derive(Clone, Copy)]
enum Shape {
    Convex,
    Concave,
}

/// Midpoint test for `λ f(x) + (1-λ) f(y)` against `f(λx + (1-λ)y)`.
fn midpoint<F>(label: &str, f: F, x: f64, y: f64, lam: f64, shape: Shape) -> Result<Chain>
where
    F: Fn(f64) -> Result<Approx>,
{
    let m = lam * x + (1.0 - lam) * y;
    let fm = f(m)?;
    let mean = f(x)? * lam + f(y)? * (1.0 - lam);
    Ok(match shape {
        Shape::Convex => Chain::lt(label, &[("f(mid)", fm), ("chord", mean)]),
        Shape::Concave => Chain::lt(label, &[("chord", mean), ("f(mid)", fm)]),
    })
}

/// `f(min(x, y)) < f(max(x, y))`.
fn increasing<F>(label: &str, f: F, x: f64, y: f64) -> Result<Chain>
where
    F: Fn(f64) -> Result<Approx>,
{
    let (a, b) = if x <= y { (x, y) } else { (y, x) };
    Ok(Chain::lt(label, &[("f(lo)", f(a)?), ("f(hi)", f(b)?)]))
}

fn xs(a: &Args, count: u32) -> Vec<f64> {
    (1..=count).map(|i| a.f(&format!("x{i}"))).collect()
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn l2_psi_bounds(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let (t, _) = qx_terms(c, x);
    let ln1m = ln1m_qpow(c, x)?;
    Ok(vec![Chain::lt(
        "lower < psi < log bracket",
        &[("lower", t + ln1m), ("psi", lq(c) * s(c, x)?), ("log bracket", ln1m)],
    )])
}

fn psi12_signs(c: &QContext, _: &Args) -> Result<Vec<Chain>> {
    let (t1, _) = qx_terms(c, 1.0);
    let (t2, _) = qx_terms(c, 2.0);
    Ok(vec![
        Chain::lt("psi(1)", &[("q ln q/(1-q)", t1), ("psi(1)", psi_q(c, 1.0)?), ("0", Approx::ZERO)]),
        Chain::lt(
            "psi(2)",
            &[
                ("0", Approx::ZERO),
                ("lower", t2 + ln_qpoch_neg_pow_finite(c, 1.0, 1)?),
                ("psi(2)", psi_q(c, 2.0)?),
            ],
        ),
    ])
}

fn psi1_range(c: &QContext, _: &Args) -> Result<Vec<Chain>> {
    Ok(vec![Chain::lt(
        "psi(1)",
        &[("-1", Approx::exact(-1.0)), ("psi(1)", psi_q(c, 1.0)?), ("0", Approx::ZERO)],
    )])
}

fn gammaq_const_range(c: &QContext, _: &Args) -> Result<Vec<Chain>> {
    Ok(vec![Chain::lt(
        "gamma_q",
        &[("0", Approx::ZERO), ("gamma_q", gamma_q_constant(c)?), ("1", Approx::ONE)],
    )])
}

fn gamma_global_min(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let x0 = psi_zero(c, DEFAULT_TOL)?.x0;
    let diff = r(c, x0, x)? + l1(c)? * (x0 - x);
    Ok(vec![Chain::le(
        "ln G(x) - ln G(x0)",
        &[("0", Approx::ZERO), ("ln G(x) - ln G(x0)", diff)],
    )])
}

/// `(ln Γ_q + x ψ_q)(y) - (ln Γ_q + x ψ_q)(x)` for `x < y`.
fn g_plus_step(c: &QContext, x: f64, y: f64, sx: Approx, sy: Approx) -> Result<Approx> {
    Ok(r(c, x, y)? + l1(c)? * (2.0 * (x - y)) + lq(c) * (sy * y - sx * x))
}

/// `(ln Γ_q - x ψ_q)(x) - (ln Γ_q - x ψ_q)(y)` for `x < y`.
fn g_minus_step(c: &QContext, x: f64, y: f64, sx: Approx, sy: Approx) -> Result<Approx> {
    Ok(r(c, y, x)? - lq(c) * (sx * x - sy * y))
}

type Step = fn(&QContext, f64, f64, Approx, Approx) -> Result<Approx>;

fn grid_steps(c: &QContext, lo: f64, hi: f64, n: usize, step: Step) -> Result<Vec<(String, Approx)>> {
    let pts: Vec<f64> = linspace(lo, hi, n).collect();
    let ss = pts.iter().map(|&x| s(c, x)).collect::<Result<Vec<_>>>()?;
    (1..n)
        .map(|i| {
            let g = step(c, pts[i - 1], pts[i], ss[i - 1], ss[i])?;
            Ok((format!("step at {:.3}", pts[i - 1]), g))
        })
        .collect()
}

fn gpm_mono_zero(c: &QContext, _: &Args) -> Result<Vec<Chain>> {
    let root = |sign| -> Result<Approx> {
        let r = g_plus_minus_zero(c, sign, DEFAULT_TOL)?;
        Ok(Approx::new(r.x0, 0.5 * (r.bracket.1 - r.bracket.0)))
    };
    let one = Approx::ONE;
    let two = Approx::exact(2.0);
    Ok(vec![
        Chain::lt("zero of ln G + x psi", &[("1", one), ("root", root(GSign::Plus)?), ("2", two)]),
        Chain::lt("zero of ln G - x psi", &[("1", one), ("root", root(GSign::Minus)?), ("2", two)]),
        Chain::from_gaps("ln G + x psi increasing", Relation::Less, &grid_steps(c, 1.0, 10.0, 41, g_plus_step)?),
        Chain::from_gaps(
            "ln G - x psi decreasing",
            Relation::Less,
            &grid_steps(c, 0.05, 10.0, 41, g_minus_step)?,
        ),
    ])
}

fn telescope(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let n = a.n("n") as f64;
    let y = x + n;
    let d = lq(c) * (s(c, x)? * x - s(c, y)? * y);
    let upper = l1(c)? * (-2.0 * n) - d;
    Ok(vec![Chain::lt("telescoping", &[("lower", d), ("ln ratio", r(c, y, x)?), ("upper", upper)])])
}

fn xpsi_convex(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let f = |x: f64| Ok(lq(c) * s(c, x)? * x);
    Ok(vec![midpoint("x psi convex", f, a.f("x"), a.f("y"), a.f("lam"), Shape::Convex)?])
}

fn psisum_a(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n") as f64;
    let lhs = lq(c) * (s(c, 1.0)? - s(c, 0.5)?) * (n - 1.0);
    let rhs = (l1(c)? - ln1m_qpow(c, 1.0 / n)?) * n;
    Ok(vec![Chain::lt("psi(1) - psi(1/2)", &[("lhs", lhs), ("rhs", rhs)])])
}

fn psisum_b(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n") as f64;
    let k = a.n("k");
    let m = 2 * k - 1;
    let lhs = deriv(c, 0.5, m)? * (n - 1.0);
    let rhs = deriv(c, 1.0, m)? * (libm::pow(n, (2 * k) as f64) - 1.0);
    Ok(vec![Chain::lt("odd derivative", &[("lhs", lhs), ("rhs", rhs)])])
}

fn psisum_c(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n") as f64;
    let k = a.n("k");
    let m = 2 * k;
    let lhs = deriv(c, 0.5, m)? * (n - 1.0);
    let rhs = deriv(c, 1.0, m)? * (libm::pow(n, (2 * k + 1) as f64) - 1.0);
    Ok(vec![Chain::lt("even derivative", &[("rhs", rhs), ("lhs", lhs)])])
}

fn logconvex_ratio_sandwich(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, al) = (a.f("x"), a.f("a"));
    Ok(vec![Chain::lt(
        "sandwich",
        &[
            ("lower", r(c, x, x + 1.0)? * (1.0 - al)),
            ("ratio", r(c, x + al, x + 1.0)?),
            ("upper", r(c, x + al, x + al + 1.0)? * (1.0 - al)),
        ],
    )])
}

fn gautschi_q(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, al) = (a.f("x"), a.f("a"));
    Ok(vec![Chain::lt(
        "Gautschi",
        &[
            ("lower", ln1m_qpow(c, x)? * (1.0 - al)),
            ("ratio", r(c, x + al, x + 1.0)?),
            ("upper", ln1m_qpow(c, x + al)? * (1.0 - al)),
        ],
    )])
}

fn psi_diff_d1(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let (t, _) = qx_terms(c, x);
    Ok(vec![Chain::lt(
        "first derivative",
        &[("psi'(x+1)", deriv(c, x + 1.0, 1)?), ("middle", -t), ("psi'(x)", deriv(c, x, 1)?)],
    )])
}

fn psi_diff_d2(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let (_, t) = qx_terms(c, x);
    Ok(vec![Chain::lt(
        "second derivative",
        &[("psi''(x)", deriv(c, x, 2)?), ("middle", -t), ("psi''(x+1)", deriv(c, x + 1.0, 2)?)],
    )])
}

fn add1_a(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    Ok(vec![Chain::lt("psi'(x+1) < 1/x", &[("psi'(x+1)", deriv(c, x + 1.0, 1)?), ("1/x", Approx::rounded(1.0 / x))])])
}

fn add1_b(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    Ok(vec![Chain::lt(
        "psi''(x+1) > -1/x^2",
        &[("-1/x^2", Approx::new(-1.0 / (x * x), 2.0 * ROUND / (x * x))), ("psi''(x+1)", deriv(c, x + 1.0, 2)?)],
    )])
}

fn f_logconcave_inc(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, y) = (a.f("x"), a.f("y"));
    let f = |t| h(c, t);
    Ok(vec![
        midpoint("log f concave", f, x, y, a.f("lam"), Shape::Concave)?,
        increasing("f increasing", f, x, y)?,
    ])
}

fn f_range(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let lower = l1(c)? - gamma_q_constant(c)?;
    Ok(vec![Chain::lt(
        "range of f",
        &[("-gamma_q", lower), ("log f", h(c, a.f("x"))?), ("-ln(1-q)", Approx::ZERO)],
    )])
}

fn recip_f_logconvex(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let f = |t| h(c, t).map(|v| -v);
    Ok(vec![midpoint("log(1/f) convex", f, a.f("x"), a.f("y"), a.f("lam"), Shape::Convex)?])
}

fn g_sandwich(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, al) = (a.f("x"), a.f("a"));
    let ln_g = |t: f64| -> Result<Approx> {
        (h(c, t)? - ln1m_qpow(c, t + 1.0)?).div(Approx::exact(t + 1.0))
    };
    Ok(vec![Chain::lt(
        "sandwich",
        &[
            ("lower", ln_g(x)? * (1.0 - al)),
            ("ratio", h(c, x + al)? - h(c, x + 1.0)?),
            ("upper", ln_g(x + al)? * (1.0 - al)),
        ],
    )])
}

fn f_over_x(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, y) = (a.f("x"), a.f("y"));
    let f = |t: f64| Ok(h(c, t)? - Approx::rounded(libm::log(t)));
    Ok(vec![
        increasing("F decreasing", f, x, y)?.reversed(),
        midpoint("log F convex", f, x, y, a.f("lam"), Shape::Convex)?,
    ])
}

fn gpow_inv_x(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let f = |t: f64| (r(c, 1.0, t)? + l1(c)?).div(Approx::exact(t));
    Ok(vec![midpoint("ln G / x convex", f, a.f("x"), a.f("y"), a.f("lam"), Shape::Convex)?])
}

fn gpow_x(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let f = |t: f64| Ok(log_gamma_q(c, t)? * t);
    Ok(vec![midpoint("x ln G convex", f, a.f("x"), a.f("y"), a.f("lam"), Shape::Convex)?])
}

/// `F(u) - F(v)` with `F(t) = ln Γ_q(t) + ln Γ_q(1 - t)`, constants dropped.
fn refl_diff(c: &QContext, u: f64, v: f64) -> Result<Approx> {
    Ok(r(c, v, u)? + r(c, 1.0 - v, 1.0 - u)?)
}

fn symm_lemma(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let w = 2.0 * x * (1.0 - x);
    Ok(vec![Chain::lt(
        "symmetric lemma",
        &[
            ("lower", refl_diff(c, 1.0 - w, 1.0 - x)?),
            ("middle", refl_diff(c, x, 1.0 - x)? * x),
            ("upper", refl_diff(c, x, w)?),
        ],
    )])
}

fn symm_gamma_prod(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let w = 2.0 * x * (1.0 - x);
    let pp = |t: f64| -> Result<Approx> { Ok(psi_q(c, t)? * psi_q(c, 1.0 - t)?) };
    Ok(vec![
        Chain::lt("gamma products", &[("at w minus at x", refl_diff(c, w, x)?), ("0", Approx::ZERO)]),
        Chain::lt("psi products", &[("at x", pp(x)?), ("at w", pp(w)?)]),
    ])
}

/// Gap of the q-Petrović inequality for `xs`, with the common
/// `(n - Σx) ln(1-q)` removed from both sides. Zero when `xs.len() == 1`.
pub fn petrovic_gap(ctx: &QContext, xs: &[f64]) -> Result<Approx> {
    Ok(petrovic(ctx, xs)?.links[0].gap)
}

fn petrovic(c: &QContext, xs: &[f64]) -> Result<Chain> {
    let total: f64 = xs.iter().sum();
    let mut lhs = Approx::ZERO;
    let mut rhs = ln1m_qpow(c, total)? + r(c, 1.0, total)?;
    for &x in xs {
        lhs = lhs + r(c, 1.0, x)?;
        rhs = rhs - ln1m_qpow(c, x)?;
    }
    Ok(Chain::le("Petrovic", &[("product", lhs), ("bound", rhs)]))
}

fn petrovic_q(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    Ok(vec![petrovic(c, &xs(a, a.n("n")))?])
}

fn ratiomap_convexity(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, y, lam) = (a.f("x"), a.f("y"), a.f("lam"));
    let comp = |t: f64| log_gamma_q(c, (1.0 - t) / t);
    let refl = |t: f64| r(c, t, 1.0 - t);
    Ok(vec![
        midpoint("composed convex", comp, x, y, lam, Shape::Convex)?,
        midpoint("reflection ratio concave", refl, x, y, lam, Shape::Concave)?,
    ])
}

fn psi_half(c: &QContext, _: &Args) -> Result<Vec<Chain>> {
    Ok(vec![Chain::lt("psi(1/2) < 2 psi(1)", &[("psi(1/2)", psi_q(c, 0.5)?), ("2 psi(1)", psi_q(c, 1.0)? * 2.0)])])
}

fn reflection_ratio(c: &QContext, x: f64) -> Result<Approx> {
    Ok(r(c, x, 1.0 - x)? + l1(c)? * (2.0 * x - 1.0))
}

fn ratio_vs_composed(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    Ok(vec![Chain::le(
        "ratio vs composed",
        &[("ln ratio", reflection_ratio(c, x)?), ("ln composed", log_gamma_q(c, (1.0 - x) / x)?)],
    )])
}

fn kyfan_a(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let v = xs(a, a.n("k"));
    let k = v.len() as f64;
    let mean = v.iter().sum::<f64>() / k;
    let lhs = log_gamma_q(c, (1.0 - mean) / mean)?;
    let mut rhs = Approx::ZERO;
    for &x in &v {
        rhs = rhs + log_gamma_q(c, (1.0 - x) / x)?;
    }
    Ok(vec![Chain::le("Ky Fan, composed", &[("at mean", lhs), ("mean of logs", rhs * (1.0 / k))])])
}

fn kyfan_b(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let v = xs(a, a.n("k"));
    let k = v.len() as f64;
    let mean = v.iter().sum::<f64>() / k;
    let mut lhs = Approx::ZERO;
    for &x in &v {
        lhs = lhs + r(c, x, 1.0 - x)?;
    }
    Ok(vec![Chain::le("Ky Fan, ratio", &[("mean of logs", lhs * (1.0 / k)), ("at mean", r(c, mean, 1.0 - mean)?)])])
}

fn qpoch_ratio(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, al, n) = (a.f("x"), a.f("a"), a.n("n") as usize);
    Ok(vec![Chain::lt(
        "finite product ratio",
        &[
            ("lower", ln1m_qpow(c, x)? * (1.0 - al)),
            ("ratio", ln_qpoch_ratio_finite(c, x + al, x + 1.0, n)?),
            ("upper", ln1m_qpow(c, x + al)? * (1.0 - al)),
        ],
    )])
}

fn phi10_bounds(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, al) = (a.f("x"), a.f("a"));
    let arg = libm::exp((al - 1.0) * c.ln_q());
    let z = libm::exp((x + 1.0) * c.ln_q());
    Ok(vec![Chain::le(
        "1phi0",
        &[
            ("lower", ln1m_qpow(c, x)? * (1.0 - al)),
            ("ln 1phi0", ln_phi10_product(c, arg, z)?),
            ("upper", ln1m_qpow(c, x + al)? * (1.0 - al)),
        ],
    )])
}

fn inf3(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n");
    let m = (n - 1) as f64;
    let cn = c.power(1.0 / n as f64)?;
    let lhs = -ln_qpoch_pow(c, 1.0)?;
    let head = ln_qpoch_pow(c, 0.5)? * m;
    let base_n = ln_qpoch_pow(&cn, 1.0)?;
    let e1 = head - ln_qpoch_pow(&cn, n as f64)? - ln1m_qpow(c, 0.5)? * m;
    let e2 = head - base_n;
    let e3 = head + ln_qpoch_neg_pow_finite(&cn, 1.0, (n - 1) as usize)? - base_n - ln1p_sqrt_q(c)? * m;
    Ok(vec![
        Chain::le("first", &[("-ln (q;q)", lhs), ("bound", e1)]),
        Chain::le("second", &[("-ln (q;q)", lhs), ("bound", e2)]),
        Chain::le("third", &[("-ln (q;q)", lhs), ("bound", e3)]),
    ])
}

fn sup3(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n") as u64;
    let phi = totient(n)? as f64;
    let top = ln_qpoch_pow(c, 0.5)? * phi;
    let mut t1 = Approx::ZERO;
    let mut t2 = ln1m_qpow(c, 0.5)? * phi;
    let mut t3 = ln1p_sqrt_q(c)? * phi;
    for d in divisors(n)? {
        let mu = moebius(n / d)? as f64;
        if mu == 0.0 {
            continue;
        }
        let cd = c.power(1.0 / d as f64)?;
        let full = ln_qpoch_pow(&cd, 1.0)?;
        t1 = t1 + full * mu;
        t2 = t2 + ln_qpoch_pow(&cd, d as f64)? * mu;
        t3 = t3 + (full - ln_qpoch_neg_pow_finite(&cd, 1.0, (d - 1) as usize)?) * mu;
    }
    Ok(vec![
        Chain::le("first", &[("bound", t1), ("phi(n) ln (q^1/2;q)", top)]),
        Chain::le("second", &[("bound", t2), ("phi(n) ln (q^1/2;q)", top)]),
        Chain::le("third", &[("bound", t3), ("phi(n) ln (q^1/2;q)", top)]),
    ])
}

fn classical(x: f64) -> Result<Approx> {
    let v = classical_log_gamma(x)?;
    Ok(Approx::new(v, 1e-14 * (1.0 + v.abs())))
}

fn askey_qmono(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let x = a.f("x");
    let cp = c.with_q(a.f("p"))?;
    let members = [
        ("ln G_p", log_gamma_q(&cp, x)?),
        ("ln G_q", log_gamma_q(c, x)?),
        ("ln G", classical(x)?),
    ];
    let chain = Chain::le("monotone in q", &members);
    Ok(vec![if x <= 1.0 || x >= 2.0 { chain } else { chain.reversed() }])
}

fn ln_2pi() -> f64 {
    libm::log(2.0 * core::f64::consts::PI)
}

fn qprod_a_value(c: &QContext, n: u32) -> Result<Approx> {
    let nf = n as f64;
    Ok(ln_qpoch_pow(c, 1.0)? * nf - ln_qpoch_pow(&c.power(1.0 / nf)?, 1.0)? + l1(c)? * (0.5 * (nf - 1.0)))
}

fn qprod_b_value(c: &QContext, n: u32) -> Result<Approx> {
    let nf = n as f64;
    Ok(ln_qpoch_pow(c, 1.0)? * nf - ln_qpoch_pow(&c.power(1.0 / nf)?, nf)? - l1(c)? * (0.5 * (nf - 1.0)))
}

fn qprod_mono_a(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n");
    let nf = n as f64;
    let cp = c.with_q(a.f("p"))?;
    let bound = Approx::new(0.5 * (nf - 1.0) * ln_2pi() - 0.5 * libm::log(nf), 8.0 * ROUND * nf);
    Ok(vec![Chain::le(
        "product chain",
        &[("at p", qprod_a_value(&cp, n)?), ("at q", qprod_a_value(c, n)?), ("classical", bound)],
    )])
}

fn qprod_mono_b(c: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let n = a.n("n");
    let nf = n as f64;
    let cp = c.with_q(a.f("p"))?;
    let ln_fact: f64 = (2..n).map(|i| libm::log(i as f64)).sum();
    let bound = Approx::new(
        ln_fact + 0.5 * (nf - 1.0) * ln_2pi() - (nf - 0.5) * libm::log(nf),
        8.0 * ROUND * nf * nf,
    );
    Ok(vec![Chain::le(
        "product chain",
        &[("classical", bound), ("at q", qprod_b_value(c, n)?), ("at p", qprod_b_value(&cp, n)?)],
    )])
}

fn means_gla(_: &QContext, a: &Args) -> Result<Vec<Chain>> {
    let (x, y) = (a.f("a"), a.f("b"));
    let g = libm::sqrt(x * y);
    let l = (y - x) / libm::log1p((y - x) / x);
    let m = 0.5 * (x + y);
    Ok(vec![Chain::lt(
        "G < L < A",
        &[
            ("G", Approx::new(g, 2.0 * ROUND * g)),
            ("L", Approx::new(l, 6.0 * ROUND * l)),
            ("A", Approx::rounded(m)),
        ],
    )])
}

const fn real(name: &'static str, lo: f64, hi: f64) -> ParamSpec {
    ParamSpec { name, domain: ParamDomain::open_closed(lo, hi), note: "" }
}

const fn closed(name: &'static str, lo: f64, hi: f64) -> ParamSpec {
    ParamSpec { name, domain: ParamDomain::closed(lo, hi), note: "" }
}

const fn int(name: &'static str, lo: i64, hi: i64) -> ParamSpec {
    ParamSpec { name, domain: ParamDomain::Int { lo, hi }, note: "" }
}

const Q: ParamSpec = ParamSpec { name: "q", domain: ParamDomain::Base, note: "base" };
const P: ParamSpec = ParamSpec { name: "p", domain: ParamDomain::BelowBase, note: "second base, p < q" };
const A01: ParamSpec = ParamSpec { name: "a", domain: ParamDomain::open(0.0, 1.0), note: "" };
const LAM: ParamSpec = ParamSpec { name: "lam", domain: ParamDomain::open(0.0, 1.0), note: "midpoint weight" };
const X01: ParamSpec = ParamSpec { name: "x", domain: ParamDomain::open(0.0, 1.0), note: "x != 1/2" };

macro_rules! triple {
    ($lo:expr, $hi:expr) => {
        &[Q, real("x", $lo, $hi), real("y", $lo, $hi), LAM]
    };
}

macro_rules! six {
    ($first:expr, $lo:expr, $hi:expr) => {
        &[
            Q,
            $first,
            real("x1", $lo, $hi),
            real("x2", $lo, $hi),
            real("x3", $lo, $hi),
            real("x4", $lo, $hi),
            real("x5", $lo, $hi),
            real("x6", $lo, $hi),
        ]
    };
}

fn not_half(p: &Params) -> bool {
    p["x"] != 0.5
}

fn distinct_ab(p: &Params) -> bool {
    p["a"] != p["b"]
}

const fn entry(
    id: &'static str,
    statement: &'static str,
    anchor: &'static str,
    kind: Kind,
    params: &'static [ParamSpec],
    eval: super::EvalFn,
) -> CatalogEntry {
    CatalogEntry { id, statement, anchor, kind, params, constraint: None, eval }
}

use Kind::{Bound, ChainInequality as Ineq, Convexity as Cvx, Monotonicity as Mono};

pub(crate) static ENTRIES: &[CatalogEntry] = &[
    entry(
        "L2-PSI-BOUNDS",
        "q^x ln q/(1-q^x) + ln[x]_q < psi_q(x) < ln[x]_q",
        "bounds on the q-digamma function by the log of the q-bracket",
        Ineq,
        &[Q, real("x", 0.0, 20.0)],
        l2_psi_bounds,
    ),
    entry(
        "PSI12-SIGNS",
        "q ln q/(1-q) < psi_q(1) < 0 and 0 < q^2 ln q/(1-q^2) + ln(1+q) < psi_q(2)",
        "signs of psi_q at 1 and 2",
        Bound,
        &[Q],
        psi12_signs,
    ),
    entry("PSI1-RANGE", "-1 < psi_q(1) < 0", "range of psi_q(1)", Bound, &[Q], psi1_range),
    entry(
        "GAMMAQ-CONST-RANGE",
        "0 < gamma_q < 1",
        "range of the q-analogue of the Euler-Mascheroni constant",
        Bound,
        &[Q],
        gammaq_const_range,
    ),
    entry(
        "GAMMA-GLOBAL-MIN",
        "Gamma_q(x) >= Gamma_q(x0) where psi_q(x0) = 0",
        "global minimum of Gamma_q",
        Bound,
        &[Q, real("x", 0.05, 30.0)],
        gamma_global_min,
    ),
    entry(
        "GPM-MONO-ZERO",
        "ln Gamma_q + x psi_q increases on (1,inf), ln Gamma_q - x psi_q decreases on (0,inf), each with one zero in (1,2)",
        "monotonicity and zeros of ln Gamma_q +- x psi_q",
        Mono,
        &[Q],
        gpm_mono_zero,
    ),
    entry(
        "TELESCOPE",
        "x psi_q(x) - (x+n) psi_q(x+n) < ln(Gamma_q(x)/Gamma_q(x+n)) < (x+n) psi_q(x+n) - x psi_q(x)",
        "two-sided bound on ln Gamma_q differences",
        Ineq,
        &[Q, real("x", 1.0, 10.0), int("n", 1, 8)],
        telescope,
    ),
    entry(
        "XPSI-CONVEX",
        "x psi_q(x) is strictly convex",
        "convexity of x psi_q(x)",
        Cvx,
        triple!(0.1, 10.0),
        xpsi_convex,
    ),
    entry(
        "PSISUM-A",
        "(n-1)(psi_q(1) - psi_q(1/2)) < n ln((1-q)/(1-q^(1/n)))",
        "psi_q sums at rational points",
        Ineq,
        &[Q, int("n", 2, 10)],
        psisum_a,
    ),
    entry(
        "PSISUM-B",
        "(n-1) psi_q^(2k-1)(1/2) < (n^(2k) - 1) psi_q^(2k-1)(1)",
        "odd derivatives of psi_q at 1/2 and 1",
        Ineq,
        &[Q, int("n", 2, 10), int("k", 1, 2)],
        psisum_b,
    ),
    entry(
        "PSISUM-C",
        "(n-1) psi_q^(2k)(1/2) > (n^(2k+1) - 1) psi_q^(2k)(1)",
        "even derivatives of psi_q at 1/2 and 1",
        Ineq,
        &[Q, int("n", 2, 10), int("k", 1, 2)],
        psisum_c,
    ),
    entry(
        "LOGCONVEX-RATIO-SANDWICH",
        "g(x)^(1-a) < f(x+1)/f(x+a) < g(x+a)^(1-a), f = Gamma_q, g(x) = f(x+1)/f(x)",
        "ratio sandwich for log-convex functions",
        Ineq,
        &[Q, real("x", 0.1, 10.0), A01],
        logconvex_ratio_sandwich,
    ),
    entry(
        "GAUTSCHI-Q",
        "[x]_q^(1-a) < Gamma_q(x+1)/Gamma_q(x+a) < [x+a]_q^(1-a)",
        "q-analogue of Gautschi's inequality",
        Ineq,
        &[Q, real("x", 0.05, 15.0), A01],
        gautschi_q,
    ),
    entry(
        "PSI-DIFF-D1",
        "psi_q'(x+1) < -q^x ln q/(1-q^x) < psi_q'(x)",
        "first derivative of psi_q across a unit step",
        Ineq,
        &[Q, real("x", 0.05, 15.0)],
        psi_diff_d1,
    ),
    entry(
        "PSI-DIFF-D2",
        "psi_q''(x) < -q^x (ln q)^2/(1-q^x)^2 < psi_q''(x+1)",
        "second derivative of psi_q across a unit step",
        Ineq,
        &[Q, real("x", 0.05, 15.0)],
        psi_diff_d2,
    ),
    entry("ADD1-A", "psi_q'(x+1) < 1/x", "bound on psi_q'", Bound, &[Q, real("x", 0.01, 20.0)], add1_a),
    entry("ADD1-B", "psi_q''(x+1) > -1/x^2", "bound on psi_q''", Bound, &[Q, real("x", 0.01, 20.0)], add1_b),
    entry(
        "F-LOGCONCAVE-INC",
        "f(x) = Gamma_q(x+1)^(1/x) is strictly log-concave and strictly increasing",
        "shape of Gamma_q(x+1)^(1/x)",
        Cvx,
        triple!(0.05, 20.0),
        f_logconcave_inc,
    ),
    entry(
        "F-RANGE",
        "exp(-gamma_q) < Gamma_q(x+1)^(1/x) < 1/(1-q)",
        "range of Gamma_q(x+1)^(1/x)",
        Bound,
        &[Q, real("x", 0.01, 40.0)],
        f_range,
    ),
    entry(
        "RECIP-F-LOGCONVEX",
        "1/Gamma_q(x+1)^(1/x) is strictly log-convex",
        "shape of the reciprocal of Gamma_q(x+1)^(1/x)",
        Cvx,
        triple!(0.05, 20.0),
        recip_f_logconvex,
    ),
    entry(
        "G-SANDWICH",
        "g(x)^(1-a) < Gamma_q(x+a+1)^(1/(x+a))/Gamma_q(x+2)^(1/(x+1)) < g(x+a)^(1-a), g(x) = (f(x)/[x+1]_q)^(1/(x+1))",
        "ratio sandwich for Gamma_q(x+1)^(1/x)",
        Ineq,
        &[Q, real("x", 0.1, 8.0), A01],
        g_sandwich,
    ),
    entry(
        "F-OVER-X",
        "Gamma_q(x+1)^(1/x)/x is strictly decreasing and strictly log-convex",
        "shape of Gamma_q(x+1)^(1/x)/x",
        Cvx,
        triple!(0.05, 20.0),
        f_over_x,
    ),
    entry(
        "GPOW-INV-X",
        "Gamma_q(x)^(1/x) is strictly log-convex on (0,1]",
        "log-convexity of Gamma_q(x)^(1/x)",
        Cvx,
        triple!(0.0, 1.0),
        gpow_inv_x,
    ),
    entry(
        "GPOW-X",
        "Gamma_q(x)^x is strictly log-convex on [1,inf)",
        "log-convexity of Gamma_q(x)^x",
        Cvx,
        &[Q, closed("x", 1.0, 20.0), closed("y", 1.0, 20.0), LAM],
        gpow_x,
    ),
    CatalogEntry {
        constraint: Some((not_half, "x != 1/2")),
        ..entry(
            "SYMM-LEMMA",
            "f(1-w)/f(1-x) < (f(x)/f(1-x))^x < f(x)/f(w), f(t) = Gamma_q(t) Gamma_q(1-t), w = 2x(1-x)",
            "symmetric log-convex functions",
            Ineq,
            &[Q, X01],
            symm_lemma,
        )
    },
    CatalogEntry {
        constraint: Some((not_half, "x != 1/2")),
        ..entry(
            "SYMM-GAMMA-PROD",
            "Gamma_q(w) Gamma_q(1-w) < Gamma_q(x) Gamma_q(1-x) and psi_q(w) psi_q(1-w) > psi_q(x) psi_q(1-x), w = 2x(1-x)",
            "products of Gamma_q and psi_q at symmetric points",
            Ineq,
            &[Q, X01],
            symm_gamma_prod,
        )
    },
    entry(
        "PETROVIC-Q",
        "prod Gamma_q(x_i) <= ([sum x_i]_q / prod [x_i]_q) Gamma_q(sum x_i)",
        "q-analogue of Petrovic's inequality",
        Ineq,
        six!(int("n", 2, 6), 0.05, 4.0),
        petrovic_q,
    ),
    entry(
        "RATIOMAP-CONVEXITY",
        "Gamma_q((1-x)/x) is strictly log-convex and Gamma_q(1-x)/Gamma_q(x) is strictly log-concave on (0,1/2]",
        "shape of Gamma_q composed with (1-x)/x",
        Cvx,
        triple!(0.02, 0.5),
        ratiomap_convexity,
    ),
    entry("PSI-HALF", "psi_q(1/2) < 2 psi_q(1)", "psi_q at 1/2", Bound, &[Q], psi_half),
    entry(
        "RATIO-VS-COMPOSED",
        "Gamma_q(1-x)/Gamma_q(x) <= Gamma_q((1-x)/x), equality at x = 1/2",
        "reflection ratio against the composed map",
        Ineq,
        &[Q, real("x", 0.02, 0.5)],
        ratio_vs_composed,
    ),
    entry(
        "KYFAN-A",
        "Gamma_q(A'/A) <= (prod Gamma_q(x_i'/x_i))^(1/k), x' = 1-x, A = mean x_i",
        "Ky Fan type inequality for the composed map",
        Ineq,
        six!(int("k", 2, 6), 0.02, 0.5),
        kyfan_a,
    ),
    entry(
        "KYFAN-B",
        "Gamma_q(A')/Gamma_q(A) >= (prod Gamma_q(x_i')/Gamma_q(x_i))^(1/k)",
        "Ky Fan type inequality for the reflection ratio",
        Ineq,
        six!(int("k", 2, 6), 0.02, 0.5),
        kyfan_b,
    ),
    entry(
        "QPOCH-RATIO",
        "(1-q^x)^(1-a) < (q^(x+a);q)_n/(q^(x+1);q)_n < (1-q^(x+a))^(1-a)",
        "bounds on ratios of finite q-shifted factorials",
        Ineq,
        &[Q, int("n", 1, 50), real("x", 0.05, 10.0), A01],
        qpoch_ratio,
    ),
    entry(
        "PHI10-BOUNDS",
        "(1-q^x)^(1-a) <= 1phi0(q^(a-1);q,q^(x+1)) <= (1-q^(x+a))^(1-a)",
        "bounds on the q-binomial series",
        Ineq,
        &[Q, real("x", 0.05, 10.0), A01],
        phi10_bounds,
    ),
    entry(
        "INF3",
        "1/(q;q)_inf <= each of three q-product expressions built from q^(1/n)",
        "lower bounds for the reciprocal Euler product",
        Ineq,
        &[Q, int("n", 2, 10)],
        inf3,
    ),
    entry(
        "SUP3",
        "(q^(1/2);q)_inf^phi(n) >= each of three Moebius products over d | n",
        "upper bounds from the reduced residue system",
        Ineq,
        &[Q, int("n", 2, 12)],
        sup3,
    ),
    entry(
        "ASKEY-QMONO",
        "Gamma_p(x) <= Gamma_q(x) <= Gamma(x) for x in (0,1] or x >= 2, reversed on [1,2], 0 < p < q",
        "monotonicity of Gamma_q in q",
        Mono,
        &[Q, P, real("x", 0.05, 6.0)],
        askey_qmono,
    ),
    entry(
        "QPROD-MONO-A",
        "(p;p)^n/(p^(1/n);p^(1/n)) (1-p)^((n-1)/2) <= same at q <= (2 pi)^((n-1)/2)/sqrt(n)",
        "q-products from the multiplication formula, part (a)",
        Mono,
        &[Q, P, int("n", 2, 10)],
        qprod_mono_a,
    ),
    entry(
        "QPROD-MONO-B",
        "(p;p)^n/(p;p^(1/n)) (1-p)^(-(n-1)/2) >= same at q >= (n-1)! (2 pi)^((n-1)/2)/n^(n-1/2)",
        "q-products from the multiplication formula, part (b)",
        Mono,
        &[Q, P, int("n", 2, 10)],
        qprod_mono_b,
    ),
    CatalogEntry {
        constraint: Some((distinct_ab, "a != b")),
        ..entry(
            "MEANS-GLA",
            "G(a,b) < L(a,b) < A(a,b)",
            "geometric, logarithmic and arithmetic means",
            Ineq,
            &[real("a", 0.1, 100.0), real("b", 0.1, 100.0)],
            means_gla,
        )
    },
];
