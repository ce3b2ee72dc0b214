//! Γ_q, ψ_q and its derivatives, γ_q, and a classical log-gamma.

use crate::approx::{Approx, ROUND};
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::qcore::{self, inv_one_minus_q, target, Evaluation, Truncation};
use crate::sum::Accum;

/// Derivative order `k` of ψ_q, restricted to `0..=6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiDerivOrder(u8);

impl PsiDerivOrder {
    pub const MAX: u8 = 6;

    pub fn new(k: u32) -> Result<Self> {
        if k > Self::MAX as u32 {
            return Err(Error::invalid(alloc::format!("derivative order {k} exceeds 6")));
        }
        Ok(PsiDerivOrder(k as u8))
    }

    pub fn get(self) -> u32 {
        self.0 as u32
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(alloc::format!("argument must be positive and finite, got {x}")))
    }
}

/// `ln Γ_q(x)` for `x > 0`.
pub fn log_gamma_q(ctx: &QContext, x: f64) -> Result<Approx> {
    check_x(x)?;
    let ratio = qcore::ln_qpoch_ratio(ctx, 1.0, x)?;
    if x == 1.0 {
        return Ok(ratio);
    }
    let l1q = qcore::ln1m_qpow(ctx, 1.0)?;
    Ok(ratio + l1q * (1.0 - x))
}

/// `Γ_q(x)` for `x > 0`.
pub fn gamma_q(ctx: &QContext, x: f64) -> Result<Approx> {
    log_gamma_q(ctx, x)?.exp()
}

/// `Li_{-k}(r) = Σ_{n≥1} n^k r^n` for `r = e^z`, `z < 0`, via Eulerian numbers.
fn li_neg(z: f64, k: u32) -> Approx {
    const EULERIAN: [&[f64]; 7] = [
        &[1.0],
        &[1.0],
        &[1.0, 1.0],
        &[1.0, 4.0, 1.0],
        &[1.0, 11.0, 11.0, 1.0],
        &[1.0, 26.0, 66.0, 26.0, 1.0],
        &[1.0, 57.0, 302.0, 302.0, 57.0, 1.0],
    ];
    let r = libm::exp(z);
    let om = -libm::expm1(z);
    let poly = EULERIAN[k as usize].iter().rev().fold(0.0, |acc, c| acc * r + c);
    let v = r * poly / libm::pow(om, (k + 1) as f64);
    Approx::new(v, v * ROUND * (z.abs() + 3.0 * k as f64 + 8.0))
}

/// `S_k(x) = Σ_{n≥1} n^k q^{nx}/(1 - q^n)`, so that
/// `ψ_q(x) = -ln(1-q) + ln q · S_0(x)` and `ψ_q^{(k)}(x) = (ln q)^{k+1} S_k(x)`.
///
/// All terms are positive, so the sum carries full relative precision.
pub fn psi_series(ctx: &QContext, x: f64, k: u32) -> Result<Approx> {
    psi_series_eval(ctx, x, k, Truncation::Auto).map(|e| e.approx)
}

pub fn psi_series_eval(ctx: &QContext, x: f64, k: u32, trunc: Truncation) -> Result<Evaluation> {
    check_x(x)?;
    PsiDerivOrder::new(k)?;
    if x < 1.0 {
        let head = li_neg(x * ctx.ln_q(), k);
        let rest = direct_series(ctx, x + 1.0, k, trunc)?;
        return Ok(Evaluation { approx: head + rest.approx, terms: rest.terms + 1 });
    }
    direct_series(ctx, x, k, trunc)
}

fn direct_series(ctx: &QContext, x: f64, k: u32, trunc: Truncation) -> Result<Evaluation> {
    let lq = ctx.ln_q();
    let kf = k as f64;
    let scale = libm::pow(lq.abs(), kf + 1.0).max(1.0);
    let mut acc = Accum::new();
    let mut last = f64::INFINITY;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        match trunc {
            Truncation::Terms(m) if n == m + 1 => {
                return Ok(Evaluation { approx: acc.finish(0.0), terms: m });
            }
            Truncation::Auto if n > 1 => {
                // tail Σ_{j≥n} j^k r^j/(1-q^j) with r = q^x
                let r = libm::exp(x * lq);
                let rho = libm::pow((nf + 1.0) / nf, kf) * r;
                if rho < 1.0 {
                    let lead = libm::exp(kf * libm::log(nf) + nf * x * lq);
                    let tail = lead / ((1.0 - rho) * -libm::expm1(nf * lq));
                    let goal = target(ctx.eps(), acc.value()) / scale;
                    if tail <= goal && last <= goal {
                        return Ok(Evaluation { approx: acc.finish(tail), terms: n - 1 });
                    }
                }
                if n > ctx.max_terms() {
                    return Err(Error::NonConvergent { terms: n - 1 });
                }
            }
            _ => {}
        }
        let z = nf * x * lq;
        let t = libm::pow(nf, kf) * libm::exp(z) / -libm::expm1(nf * lq);
        acc.push(t, t * ROUND * (z.abs() + 6.0 + kf));
        last = t;
        n += 1;
    }
}

/// `ψ_q(x)` for `x > 0`.
pub fn psi_q(ctx: &QContext, x: f64) -> Result<Approx> {
    let s = psi_series(ctx, x, 0)?;
    let l1q = qcore::ln1m_qpow(ctx, 1.0)?;
    Ok(s * ctx.ln_q() - l1q)
}

/// `ψ_q^{(k)}(x)`; `k = 0` is `ψ_q` itself.
pub fn psi_q_deriv(ctx: &QContext, x: f64, k: PsiDerivOrder) -> Result<Approx> {
    let k = k.get();
    if k == 0 {
        return psi_q(ctx, x);
    }
    let s = psi_series(ctx, x, k)?;
    let p = libm::pow(ctx.ln_q(), (k + 1) as f64);
    Ok(Approx::new(p, p.abs() * ROUND * (k + 2) as f64) * s)
}

/// `γ_q` from Bradley's series; equals `-ψ_q(1)`.
pub fn gamma_q_constant(ctx: &QContext) -> Result<Approx> {
    let lq = ctx.ln_q();
    let inv1mq = inv_one_minus_q(ctx);
    let factor = -lq * inv1mq;
    let mut acc = Accum::new();
    let mut i = 1usize;
    let sum = loop {
        if i > 1 {
            let tail = libm::exp(i as f64 * lq) * inv1mq;
            if tail * factor <= target(ctx.eps(), acc.value() * factor) {
                break acc.finish(tail);
            }
            if i > ctx.max_terms() {
                return Err(Error::NonConvergent { terms: i - 1 });
            }
        }
        let z = i as f64 * lq;
        let t = libm::exp(z) / qcore::q_bracket(ctx, i as f64);
        acc.push(t, t * ROUND * (z.abs() + 7.0));
        i += 1;
    };
    let l1q = qcore::ln1m_qpow(ctx, 1.0)?;
    Ok(l1q + sum * Approx::new(factor, factor * 3.0 * ROUND))
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// `ζ(k)` for `k = 2..=32`.
const ZETA: [f64; 31] = [
    1.6449340668482264365,
    1.2020569031595942854,
    1.0823232337111381915,
    1.0369277551433699263,
    1.0173430619844491397,
    1.0083492773819228268,
    1.0040773561979443394,
    1.0020083928260822144,
    1.0009945751278180853,
    1.0004941886041194646,
    1.0002460865533080483,
    1.0001227133475784891,
    1.0000612481350587048,
    1.0000305882363070205,
    1.0000152822594086519,
    1.0000076371976378998,
    1.0000038172932649998,
    1.0000019082127165539,
    1.0000009539620338728,
    1.0000004769329867878,
    1.0000002384505027277,
    1.0000001192199259653,
    1.0000000596081890513,
    1.0000000298035035147,
    1.0000000149015548284,
    1.0000000074507117898,
    1.0000000037253340248,
    1.0000000018626597235,
    1.0000000009313274324,
    1.0000000004656629065,
    1.0000000002328311834,
];

/// `ln Γ(1 + e)` for `|e| ≤ 1/4` by its Taylor series around 1.
fn log_gamma_1p(e: f64) -> f64 {
    let mut s = 0.0;
    let mut p = -e;
    for (j, z) in ZETA.iter().enumerate() {
        p *= -e;
        s += z * p / (j + 2) as f64;
    }
    s - EULER_GAMMA * e
}

/// Stirling series for `z ≥ 10`.
fn stirling(z: f64) -> f64 {
    const C: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
        -3617.0 / 122400.0,
    ];
    let w = 1.0 / (z * z);
    let corr = C.iter().rev().fold(0.0, |acc, c| acc * w + c) / z;
    let half_ln_2pi = 0.918_938_533_204_672_741_78;
    (z - 0.5) * libm::log(z) - z + half_ln_2pi + corr
}

/// Classical `ln Γ(x)` for `x > 0`.
pub fn classical_log_gamma(x: f64) -> Result<f64> {
    check_x(x)?;
    if (x - 1.0).abs() <= 0.25 {
        return Ok(log_gamma_1p(x - 1.0));
    }
    if (x - 2.0).abs() <= 0.25 {
        let e = x - 2.0;
        return Ok(libm::log1p(e) + log_gamma_1p(e));
    }
    if x >= 10.0 {
        return Ok(stirling(x));
    }
    let mut z = x;
    let mut prod = 1.0;
    while z < 10.0 {
        prod *= z;
        z += 1.0;
    }
    Ok(stirling(z) - libm::log(prod))
}
