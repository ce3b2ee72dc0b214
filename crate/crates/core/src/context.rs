use crate::error::{Error, Result};

/// Smallest base accepted by the sampling harness.
pub const Q_MIN: f64 = 1e-4;
/// Largest base accepted by the sampling harness.
pub const Q_MAX: f64 = 0.9995;

/// The base `q` together with truncation settings.
///
/// Any `q` in `(0, 1)` is accepted here; the harness applies the tighter
/// [`Q_MIN`]..=[`Q_MAX`] window to sampled bases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QContext {
    q: f64,
    ln_q: f64,
    eps: f64,
    max_terms: usize,
}

impl QContext {
    pub const DEFAULT_EPS: f64 = 1e-12;
    pub const DEFAULT_MAX_TERMS: usize = 5_000_000;

    pub fn new(q: f64) -> Result<Self> {
        Self::with_params(q, Self::DEFAULT_EPS, Self::DEFAULT_MAX_TERMS)
    }

    pub fn with_params(q: f64, eps: f64, max_terms: usize) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid(alloc::format!("q = {q} is not in (0, 1)")));
        }
        Self::check_settings(eps, max_terms)?;
        Ok(QContext { q, ln_q: libm::log(q), eps, max_terms })
    }

    fn check_settings(eps: f64, max_terms: usize) -> Result<()> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::invalid(alloc::format!("eps = {eps} must be positive")));
        }
        if max_terms < 16 {
            return Err(Error::invalid("max_terms must be at least 16"));
        }
        Ok(())
    }

    /// Same settings, different base.
    pub fn with_q(&self, q: f64) -> Result<Self> {
        Self::with_params(q, self.eps, self.max_terms)
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Self::check_settings(eps, self.max_terms)?;
        Ok(QContext { eps, ..*self })
    }

    /// Context for the base `q^r`, `r > 0`, keeping `ln` consistent.
    pub fn power(&self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::invalid(alloc::format!("base exponent {r} must be positive")));
        }
        let ln_q = self.ln_q * r;
        let q = libm::exp(ln_q);
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::invalid(alloc::format!("q^{r} leaves (0, 1)")));
        }
        Ok(QContext { q, ln_q, ..*self })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}
