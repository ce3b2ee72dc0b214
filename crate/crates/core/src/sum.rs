//! Compensated summation with a running rounding bound.

use crate::approx::{Approx, ROUND};

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Accum {
    sum: f64,
    comp: f64,
    abs: f64,
    term_err: f64,
    n: usize,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add term `t` whose own evaluation error is at most `e`.
    pub fn push(&mut self, t: f64, e: f64) {
        let s = self.sum + t;
        if self.sum.abs() >= t.abs() {
            self.comp += (self.sum - s) + t;
        } else {
            self.comp += (t - s) + self.sum;
        }
        self.sum = s;
        self.abs += t.abs();
        self.term_err += e;
        self.n += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Close the sum, adding a truncation bound `tail`.
    pub fn finish(&self, tail: f64) -> Approx {
        let v = self.value();
        let nf = self.n as f64;
        let round = ROUND * v.abs() + nf * ROUND * ROUND * self.abs;
        Approx::new(v, tail + self.term_err + round)
    }
}
