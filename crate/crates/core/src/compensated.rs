//! Double-word arithmetic built on error-free transformations.
//!
//! Only what the 4×4 determinant needs: exact products of two `f64`s and
//! sums/products of double-word values with ~2⁻¹⁰⁴ relative error.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct TwoFloat {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl TwoFloat {
    pub(crate) const ZERO: Self = Self { hi: 0.0, lo: 0.0 };

    /// `a·b` without rounding error.
    pub(crate) fn product(a: f64, b: f64) -> Self {
        let hi = a * b;
        Self {
            hi,
            lo: a.mul_add(b, -hi),
        }
    }

    /// `a·d − b·c`, the 2×2 determinant, accurate to double-word precision.
    pub(crate) fn det2(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::product(a, d) - Self::product(b, c)
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl From<f64> for TwoFloat {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

impl Add for TwoFloat {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = fast_two_sum(s, e + t);
        let (hi, lo) = fast_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Neg for TwoFloat {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for TwoFloat {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for TwoFloat {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = Self::product(self.hi, rhs.hi);
        let cross = self.hi.mul_add(rhs.lo, self.lo * rhs.hi);
        let (hi, lo) = fast_two_sum(p.hi, p.lo + cross);
        Self { hi, lo }
    }
}
