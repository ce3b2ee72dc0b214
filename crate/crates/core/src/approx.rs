use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Relative rounding charged to every arithmetic step (2u for binary64).
pub(crate) const ROUND: f64 = f64::EPSILON;

/// A value together with a bound on its absolute error.
///
/// Arithmetic propagates the bounds to first order and charges one rounding
/// of the result on every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub err: f64,
}

impl Approx {
    pub const ZERO: Approx = Approx { value: 0.0, err: 0.0 };
    pub const ONE: Approx = Approx { value: 1.0, err: 0.0 };

    pub fn new(value: f64, err: f64) -> Self {
        debug_assert!(err >= 0.0, "negative error bound {err}");
        Approx { value, err }
    }

    pub fn exact(value: f64) -> Self {
        Approx { value, err: 0.0 }
    }

    /// A value that is correct up to one rounding.
    pub(crate) fn rounded(value: f64) -> Self {
        Approx { value, err: ROUND * value.abs() }
    }

    pub fn lower(&self) -> f64 {
        self.value - self.err
    }

    pub fn upper(&self) -> f64 {
        self.value + self.err
    }

    /// Whether `x` lies inside `value ± err`.
    pub fn contains(&self, x: f64) -> bool {
        (x - self.value).abs() <= self.err
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.err.is_finite()
    }

    fn bump(value: f64, err: f64) -> Self {
        Approx { value, err: err + ROUND * value.abs() }
    }

    pub fn abs(self) -> Self {
        Approx { value: self.value.abs(), err: self.err }
    }

    pub fn div(self, rhs: Approx) -> Result<Approx> {
        let den = rhs.value.abs() - rhs.err;
        if den <= 0.0 {
            return Err(Error::invalid("division by an interval containing zero"));
        }
        let v = self.value / rhs.value;
        Ok(Approx::bump(v, (self.err + v.abs() * rhs.err) / den))
    }

    /// Natural log; the whole interval must be positive.
    pub fn ln(self) -> Result<Approx> {
        if self.value - self.err <= 0.0 {
            return Err(Error::invalid("logarithm of a non-positive interval"));
        }
        let v = libm::log(self.value);
        let e = -libm::log1p(-self.err / self.value);
        Ok(Approx::bump(v, e))
    }

    pub fn exp(self) -> Result<Approx> {
        let v = libm::exp(self.value);
        if !v.is_finite() {
            return Err(Error::Overflow);
        }
        let e = v * libm::expm1(self.err);
        if !e.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(Approx::bump(v, e))
    }

    /// Sum of a sequence with the errors added.
    pub fn sum<I: IntoIterator<Item = Approx>>(items: I) -> Approx {
        items.into_iter().fold(Approx::ZERO, |acc, x| acc + x)
    }
}

impl From<f64> for Approx {
    fn from(value: f64) -> Self {
        Approx::exact(value)
    }
}

impl Add for Approx {
    type Output = Approx;
    fn add(self, rhs: Approx) -> Approx {
        Approx::bump(self.value + rhs.value, self.err + rhs.err)
    }
}

impl Sub for Approx {
    type Output = Approx;
    fn sub(self, rhs: Approx) -> Approx {
        Approx::bump(self.value - rhs.value, self.err + rhs.err)
    }
}

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx { value: -self.value, err: self.err }
    }
}

impl Mul for Approx {
    type Output = Approx;
    fn mul(self, rhs: Approx) -> Approx {
        let e = self.err * rhs.value.abs() + rhs.err * self.value.abs() + self.err * rhs.err;
        Approx::bump(self.value * rhs.value, e)
    }
}

/// Scaling by an exactly known constant.
impl Mul<f64> for Approx {
    type Output = Approx;
    fn mul(self, c: f64) -> Approx {
        Approx::bump(self.value * c, self.err * c.abs())
    }
}
