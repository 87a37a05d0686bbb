//! Exact scalar arithmetic over the field Q(sqrt 2).
//!
//! Every coefficient in the engine is `a + b*sqrt(2)` with `a`, `b` exact big
//! rationals.  The quadratic extension exists for the 2+1 contraction map,
//! whose generator rescalings carry factors of 1/sqrt(2); all presentation
//! tables themselves are rational, and staying rational is checked where it
//! matters.  Since sqrt(2) is irrational, `a + b*sqrt(2) = 0` iff `a = b = 0`,
//! so the type is a field and division is total away from zero.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// An element `a + b*sqrt(2)` of Q(sqrt 2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coeff {
    a: BigRational,
    b: BigRational,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Coeff { a: BigRational::one(), b: BigRational::zero() }
    }

    /// The rational p/q.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Coeff { a: BigRational::new(BigInt::from(p), BigInt::from(q)), b: BigRational::zero() }
    }

    pub fn integer(p: i64) -> Self {
        Self::rational(p, 1)
    }

    /// sqrt(2) itself.
    pub fn sqrt2() -> Self {
        Coeff { a: BigRational::zero(), b: BigRational::one() }
    }

    /// p/q * sqrt(2).
    pub fn sqrt2_times(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Coeff { a: BigRational::zero(), b: BigRational::new(BigInt::from(p), BigInt::from(q)) }
    }

    pub fn from_big(a: BigRational) -> Self {
        Coeff { a, b: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// True when the sqrt(2) component vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational component (the full value when `is_rational`).
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Multiplicative inverse.  Panics on zero (checked by callers).
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero coefficient");
        // 1/(a + b s) = (a - b s)/(a^2 - 2 b^2), nonzero since sqrt(2) is irrational.
        let two = BigRational::from(BigInt::from(2));
        let norm = &self.a * &self.a - two * &self.b * &self.b;
        Coeff { a: &self.a / &norm, b: -(&self.b / &norm) }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Coeff::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parse a scalar literal: `p`, `p/q`, or the extended form
    /// `p/q+r/s*sqrt2` / `p/q-r/s*sqrt2` produced by the printer for
    /// irrational values.
    pub fn parse(text: &str) -> Option<Self> {
        fn rat(t: &str) -> Option<BigRational> {
            let t = t.trim();
            if t.is_empty() {
                return None;
            }
            match t.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.parse().ok()?;
                    let q: BigInt = q.parse().ok()?;
                    if q.is_zero() {
                        None
                    } else {
                        Some(BigRational::new(p, q))
                    }
                }
                None => {
                    let p: BigInt = t.parse().ok()?;
                    Some(BigRational::from(p))
                }
            }
        }
        if let Some(stripped) = text.strip_suffix("*sqrt2") {
            // Split the sqrt2 component off at the last +/- that is not a
            // leading sign.
            let bytes = stripped.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                    split = Some(i);
                    break;
                }
            }
            match split {
                Some(i) => {
                    let a = rat(&stripped[..i])?;
                    let sign = if bytes[i] == b'-' { -BigRational::one() } else { BigRational::one() };
                    let b = rat(&stripped[i + 1..])? * sign;
                    Some(Coeff { a, b })
                }
                None => Some(Coeff { a: BigRational::zero(), b: rat(stripped)? }),
            }
        } else {
            Some(Coeff { a: rat(text)?, b: BigRational::zero() })
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt2", self.b);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt2", self.a, -&self.b)
        } else {
            write!(f, "{}+{}*sqrt2", self.a, self.b)
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        // (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s  with s^2 = 2.
        let two = BigRational::from(BigInt::from(2));
        Coeff {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for &Coeff {
    type Output = Coeff;
    // Division in the field is multiplication by the inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Coeff) -> Coeff {
        self * &rhs.inv()
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff { a: -&self.a, b: -&self.b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_on_samples() {
        let x = Coeff::rational(3, 4);
        let y = &Coeff::sqrt2_times(1, 2) + &Coeff::integer(-2);
        let z = &x * &y;
        assert_eq!(&z / &y, x);
        assert!((&y - &y).is_zero());
        assert!((&y * &y.inv()).is_one());
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = Coeff::sqrt2();
        assert_eq!(&s * &s, Coeff::integer(2));
        assert_eq!(&Coeff::sqrt2_times(1, 2) * &Coeff::sqrt2(), Coeff::one());
    }

    #[test]
    fn display_and_parse_round_trip() {
        for c in [
            Coeff::rational(-7, 3),
            Coeff::integer(4),
            Coeff::sqrt2_times(-1, 2),
            &Coeff::rational(1, 6) + &Coeff::sqrt2_times(2, 5),
            &Coeff::rational(1, 6) + &Coeff::sqrt2_times(-2, 5),
        ] {
            let shown = c.to_string();
            assert_eq!(Coeff::parse(&shown).unwrap(), c, "round trip of {shown}");
        }
        assert_eq!(Coeff::parse("5/10").unwrap(), Coeff::rational(1, 2));
        assert!(Coeff::parse("1/0").is_none());
        assert!(Coeff::parse("").is_none());
    }
}
