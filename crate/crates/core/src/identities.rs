//! Exact identities evaluated side by side, plus the arithmetic helpers
//! they need.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::approx::Approx;
use crate::context::QContext;
use crate::error::{Error, Result};
use crate::qcore::{ln1m_qpow, ln_qpoch_pow, ln_qpoch_pow_finite};
use crate::qgamma::{log_gamma_q, psi_q_deriv, PsiDerivOrder};

const N_LIMIT: u64 = 1_000_000;

fn check_n(n: u64) -> Result<()> {
    if (1..=N_LIMIT).contains(&n) {
        Ok(())
    } else {
        Err(Error::invalid(format!("n = {n} is outside 1..=1000000")))
    }
}

/// Prime factorization by trial division, as `(p, exponent)` pairs.
fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> Result<u64> {
    check_n(n)?;
    Ok(factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1)))
}

/// The Möbius function.
pub fn moebius(n: u64) -> Result<i32> {
    check_n(n)?;
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Divisors in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    check_n(n)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Totient, Möbius value and divisors of one `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticFunctions {
    pub n: u64,
    pub phi: u64,
    pub mobius: i32,
    pub divisors: Vec<u64>,
}

impl ArithmeticFunctions {
    pub fn new(n: u64) -> Result<Self> {
        Ok(ArithmeticFunctions { n, phi: totient(n)?, mobius: moebius(n)?, divisors: divisors(n)? })
    }
}

/// Both sides of an identity, in log space.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityResidual {
    pub id: String,
    pub lhs: Approx,
    pub rhs: Approx,
    /// `|lhs - rhs|`.
    pub residual: f64,
    pub tol: f64,
}

impl IdentityResidual {
    fn new(id: String, lhs: Approx, rhs: Approx) -> Self {
        let residual = (lhs.value - rhs.value).abs();
        let tol = 1e-9 * lhs.value.abs().max(rhs.value.abs()).max(1.0);
        IdentityResidual { id, lhs, rhs, residual, tol }
    }

    pub fn passed(&self) -> bool {
        self.residual <= self.lhs.err + self.rhs.err + self.tol
    }
}

fn check_range(name: &str, n: u32, lo: u32, hi: u32) -> Result<()> {
    if (lo..=hi).contains(&n) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name}: n = {n} is outside {lo}..={hi}")))
    }
}

/// `ln [n]_q`.
fn ln_bracket_int(ctx: &QContext, n: u32) -> Result<Approx> {
    Ok(ln1m_qpow(ctx, n as f64)? - ln1m_qpow(ctx, 1.0)?)
}

/// `ln (q^{1/d}; q^{1/d})_∞`.
fn ln_euler_root(ctx: &QContext, d: u32) -> Result<Approx> {
    if d == 1 {
        return ln_qpoch_pow(ctx, 1.0);
    }
    ln_qpoch_pow(&ctx.power(1.0 / d as f64)?, 1.0)
}

/// Jackson's multiplication formula with `p = q^n`:
/// `(nz-1) ln[n]_q + Σ_{i<n} ln Γ_p(z + i/n) = ln Γ_q(nz) + Σ_{0<i<n} ln Γ_p(i/n)`.
pub fn check_jackson(ctx: &QContext, z: f64, n: u32) -> Result<IdentityResidual> {
    check_range("jackson", n, 1, 8)?;
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::invalid(format!("jackson: z = {z} must be positive")));
    }
    let p = ctx.power(n as f64)?;
    let nf = n as f64;
    let mut lhs = ln_bracket_int(ctx, n)? * (nf * z - 1.0);
    for i in 0..n {
        lhs = lhs + log_gamma_q(&p, z + i as f64 / nf)?;
    }
    let mut rhs = log_gamma_q(ctx, nf * z)?;
    for i in 1..n {
        rhs = rhs + log_gamma_q(&p, i as f64 / nf)?;
    }
    Ok(IdentityResidual::new(format!("jackson(z={z},n={n})"), lhs, rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussForm {
    /// Right side with `Γ_q(1/2)` and `(q^{1/2}; q^{1/2})_∞`.
    Full,
    /// Right side with `(q;q)_∞^n` and `(1-q)^{(n-1)/2}`.
    Simplified,
}

fn gauss_rhs(ctx: &QContext, n: u32, form: GaussForm) -> Result<Approx> {
    let nf = n as f64;
    let euler = ln_qpoch_pow(ctx, 1.0)?;
    let root = ln_euler_root(ctx, n)?;
    match form {
        GaussForm::Full => {
            let half = log_gamma_q(ctx, 0.5)?;
            let sqrt_euler = ln_euler_root(ctx, 2)?;
            Ok((half + sqrt_euler) * (nf - 1.0) - euler * (nf - 2.0) - root)
        }
        GaussForm::Simplified => {
            Ok(euler * nf - root + ln1m_qpow(ctx, 1.0)? * (0.5 * (nf - 1.0)))
        }
    }
}

/// `Σ_{k=1}^{n-1} ln Γ_q(k/n)` against the closed product form.
pub fn check_q_gauss_product(ctx: &QContext, n: u32, form: GaussForm) -> Result<IdentityResidual> {
    check_range("q-gauss", n, 2, 12)?;
    let mut lhs = Approx::ZERO;
    for k in 1..n {
        lhs = lhs + log_gamma_q(ctx, k as f64 / n as f64)?;
    }
    let rhs = gauss_rhs(ctx, n, form)?;
    let tag = match form {
        GaussForm::Full => "full",
        GaussForm::Simplified => "simplified",
    };
    Ok(IdentityResidual::new(format!("q-gauss-{tag}(n={n})"), lhs, rhs))
}

/// The two closed forms of the q-Gauss product against each other.
pub fn check_q_gauss_forms(ctx: &QContext, n: u32) -> Result<IdentityResidual> {
    check_range("q-gauss", n, 2, 12)?;
    let full = gauss_rhs(ctx, n, GaussForm::Full)?;
    let simplified = gauss_rhs(ctx, n, GaussForm::Simplified)?;
    Ok(IdentityResidual::new(format!("q-gauss-forms(n={n})"), full, simplified))
}

/// `ln P_q(n)`, the sum of `ln Γ_q(k/n)` over `k` coprime to `n`.
pub fn ln_pqn(ctx: &QContext, n: u32) -> Result<Approx> {
    let mut s = Approx::ZERO;
    for k in 1..=n {
        if gcd(k as u64, n as u64) == 1 {
            s = s + log_gamma_q(ctx, k as f64 / n as f64)?;
        }
    }
    Ok(s)
}

/// `P_q(n)` against `Γ_q(1/2)^φ (q^{1/2};q)_∞^φ / Π_{d|n} (q^{1/d};q^{1/d})_∞^{μ(n/d)}`.
pub fn check_pqn(ctx: &QContext, n: u32) -> Result<IdentityResidual> {
    check_range("pqn", n, 2, 30)?;
    let lhs = ln_pqn(ctx, n)?;
    let phi = totient(n as u64)? as f64;
    let mut rhs = (log_gamma_q(ctx, 0.5)? + ln_qpoch_pow(ctx, 0.5)?) * phi;
    for d in divisors(n as u64)? {
        let mu = moebius(n as u64 / d)?;
        if mu != 0 {
            rhs = rhs - ln_euler_root(ctx, d as u32)? * mu as f64;
        }
    }
    Ok(IdentityResidual::new(format!("pqn(n={n})"), lhs, rhs))
}

/// `Σ_{i=1}^{n-1} ψ_q^{(k)}(i/n)` against
/// `n^{k+1} ψ_{q^{1/n}}^{(k)}(1) - ψ_q^{(k)}(1) - [k=0] n ln((1-q)/(1-q^{1/n}))`.
///
/// Both sides have one sign, so they are compared as `ln|·|`.
pub fn check_psi_sum(ctx: &QContext, n: u32, k: u32) -> Result<IdentityResidual> {
    check_range("psi-sum", n, 2, 12)?;
    if k > 5 {
        return Err(Error::invalid(format!("psi-sum: k = {k} is outside 0..=5")));
    }
    let (lhs, rhs) = psi_sum_sides(ctx, n, k)?;
    let id = format!("psi-sum(n={n},k={k})");
    if lhs.value.signum() != rhs.value.signum() {
        return Ok(IdentityResidual { id, lhs, rhs, residual: f64::INFINITY, tol: 0.0 });
    }
    Ok(IdentityResidual::new(id, lhs.abs().ln()?, rhs.abs().ln()?))
}

/// Raw sides of the ψ-sum identity.
pub fn psi_sum_sides(ctx: &QContext, n: u32, k: u32) -> Result<(Approx, Approx)> {
    let order = PsiDerivOrder::new(k)?;
    let nf = n as f64;
    let mut lhs = Approx::ZERO;
    for i in 1..n {
        lhs = lhs + psi_q_deriv(ctx, i as f64 / nf, order)?;
    }
    let root = ctx.power(1.0 / nf)?;
    let scale = libm::pow(nf, (k + 1) as f64);
    let mut rhs = psi_q_deriv(&root, 1.0, order)? * scale - psi_q_deriv(ctx, 1.0, order)?;
    if k == 0 {
        let log_ratio = ln1m_qpow(ctx, 1.0)? - ln1m_qpow(&root, 1.0)?;
        rhs = rhs - log_ratio * nf;
    }
    Ok((lhs, rhs))
}

/// `Π_{(i,n)=1} (1 - q^{i/n})` against `Π_{d|n} (q^{1/d};q^{1/d})_{d-1}^{μ(n/d)}`.
pub fn check_moebius_product(ctx: &QContext, n: u32) -> Result<IdentityResidual> {
    check_range("moebius-product", n, 2, 30)?;
    let mut lhs = Approx::ZERO;
    for i in 1..=n {
        if gcd(i as u64, n as u64) == 1 {
            lhs = lhs + ln1m_qpow(ctx, i as f64 / n as f64)?;
        }
    }
    let mut rhs = Approx::ZERO;
    for d in divisors(n as u64)? {
        let mu = moebius(n as u64 / d)?;
        if mu != 0 && d > 1 {
            let base = ctx.power(1.0 / d as f64)?;
            rhs = rhs + ln_qpoch_pow_finite(&base, 1.0, d as usize - 1)? * mu as f64;
        }
    }
    Ok(IdentityResidual::new(format!("moebius-product(n={n})"), lhs, rhs))
}

/// Jackson arguments used by [`identity_sweep`].
pub const JACKSON_Z: [f64; 4] = [0.25, 0.7, 1.0, 2.3];

/// Every identity at one base, with `n` capped by `n_max` and by each
/// identity's own range.
pub fn identity_sweep(ctx: &QContext, n_max: u32) -> Result<Vec<IdentityResidual>> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(8) {
        for z in JACKSON_Z {
            out.push(check_jackson(ctx, z, n)?);
        }
    }
    for n in 2..=n_max.min(12) {
        out.push(check_q_gauss_product(ctx, n, GaussForm::Full)?);
        out.push(check_q_gauss_product(ctx, n, GaussForm::Simplified)?);
        out.push(check_q_gauss_forms(ctx, n)?);
    }
    for n in 2..=n_max.min(30) {
        out.push(check_pqn(ctx, n)?);
    }
    for n in 2..=n_max.min(12) {
        for k in 0..=5 {
            out.push(check_psi_sum(ctx, n, k)?);
        }
    }
    for n in 2..=n_max.min(30) {
        out.push(check_moebius_product(ctx, n)?);
    }
    Ok(out)
}
