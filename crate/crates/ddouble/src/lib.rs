//! A double-double float (about 32 significant digits) for test oracles.
//!
//! Wraps [`TwoFloat`], whose addition, multiplication and square root are
//! double-double accurate but whose division (0.8.4) computes the reciprocal
//! residual `1 − b·(1/b)` without a fused multiply-add and so is only
//! double accurate. [`Dd`] replaces division with long division on the
//! accurate operations and forwards everything else.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Float, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd(pub TwoFloat);

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd(<TwoFloat as From<f64>>::from(x))
    }

    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    /// Nearest double.
    pub fn value(self) -> f64 {
        self.hi() + self.lo()
    }

    fn quotient(a: TwoFloat, b: TwoFloat) -> TwoFloat {
        let q1 = a.hi() / b.hi();
        let r = a - b * q1;
        let q2 = r.hi() / b.hi();
        let r = r - b * q2;
        let q3 = r.hi() / b.hi();
        TwoFloat::new_add(q1, q2) + q3
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl From<Dd> for f64 {
    fn from(x: Dd) -> f64 {
        x.value()
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi(), self.lo())
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binary {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Dd {
            type Output = Dd;
            fn $method(self, rhs: Dd) -> Dd {
                Dd(self.0 $op rhs.0)
            }
        }
    };
}

binary!(Add, add, +);
binary!(Sub, sub, -);
binary!(Mul, mul, *);

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        Dd(Dd::quotient(self.0, rhs.0))
    }
}

impl Rem for Dd {
    type Output = Dd;
    fn rem(self, rhs: Dd) -> Dd {
        let q = (self / rhs).trunc();
        self - q * rhs
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl Zero for Dd {
    fn zero() -> Self {
        Dd::new(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl One for Dd {
    fn one() -> Self {
        Dd::new(1.0)
    }
}

impl Num for Dd {
    type FromStrRadixErr = <TwoFloat as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        TwoFloat::from_str_radix(s, radix).map(Dd)
    }
}

impl ToPrimitive for Dd {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.value())
    }
}

impl NumCast for Dd {
    fn from<T: ToPrimitive>(n: T) -> Option<Self> {
        n.to_f64().map(Dd::new)
    }
}

impl FromPrimitive for Dd {
    fn from_i64(n: i64) -> Option<Self> {
        TwoFloat::from_i64(n).map(Dd)
    }
    fn from_u64(n: u64) -> Option<Self> {
        TwoFloat::from_u64(n).map(Dd)
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(Dd::new(n))
    }
}

macro_rules! forward {
    ($($name:ident),*) => {
        $(fn $name(self) -> Self {
            Dd(Float::$name(self.0))
        })*
    };
}

macro_rules! forward_const {
    ($($name:ident),*) => {
        $(fn $name() -> Self {
            Dd(<TwoFloat as Float>::$name())
        })*
    };
}

macro_rules! forward_bool {
    ($($name:ident),*) => {
        $(fn $name(self) -> bool {
            Float::$name(self.0)
        })*
    };
}

impl Float for Dd {
    forward_const!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value);
    forward_bool!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    forward!(
        floor, ceil, round, trunc, fract, abs, signum, sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan,
        asin, acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh
    );

    fn classify(self) -> std::num::FpCategory {
        Float::classify(self.0)
    }

    fn mul_add(self, a: Self, b: Self) -> Self {
        self * a + b
    }

    fn recip(self) -> Self {
        Dd::one() / self
    }

    fn powi(self, n: i32) -> Self {
        let mut result = Dd::one();
        let mut base = self;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            result.recip()
        } else {
            result
        }
    }

    fn powf(self, n: Self) -> Self {
        (n * self.ln()).exp()
    }

    fn log(self, base: Self) -> Self {
        self.ln() / base.ln()
    }

    fn max(self, other: Self) -> Self {
        if self >= other || other.is_nan() {
            self
        } else {
            other
        }
    }

    fn min(self, other: Self) -> Self {
        if self <= other || other.is_nan() {
            self
        } else {
            other
        }
    }

    fn abs_sub(self, other: Self) -> Self {
        if self > other {
            self - other
        } else {
            Dd::zero()
        }
    }

    fn hypot(self, other: Self) -> Self {
        (self * self + other * other).sqrt()
    }

    fn atan2(self, other: Self) -> Self {
        Dd(Float::atan2(self.0, other.0))
    }

    fn sin_cos(self) -> (Self, Self) {
        (self.sin(), self.cos())
    }

    fn integer_decode(self) -> (u64, i16, i8) {
        Float::integer_decode(self.hi())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn error_vs_exact_third(q: Dd) -> f64 {
        // 3q − 1 is exact in double-double for q near 1/3
        (q * Dd::new(3.0) - Dd::one()).value().abs()
    }

    #[test]
    fn division_is_double_double_accurate() {
        let q = Dd::one() / Dd::new(3.0);
        assert!(error_vs_exact_third(q) < 1e-31);
        for (a, b) in [(1.0, 7.0), (2.0, 3.0), (-5.0, 11.0), (1e-3, 4.64), (0.8, 1.0 + 1e-9)] {
            let (a, b) = (Dd::new(a), Dd::new(b));
            let q = a / b;
            let back = q * b - a;
            assert!(back.value().abs() <= 1e-31 * a.value().abs(), "{a} / {b}");
        }
    }

    #[test]
    fn sqrt_is_double_double_accurate() {
        for x in [2.0, 0.64, 1e-6, 123.456] {
            let s = Dd::new(x).sqrt();
            let back = s * s - Dd::new(x);
            assert!(back.value().abs() <= 1e-30 * x, "{x}");
        }
    }

    #[test]
    fn negative_powers() {
        let x = Dd::new(3.0);
        let p = x.powi(-3) * Dd::new(27.0) - Dd::one();
        assert!(p.value().abs() < 1e-30);
    }
}
