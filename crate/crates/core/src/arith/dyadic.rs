//! Exact dyadic rationals `m * 2^e` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::BigRat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
    Nearest,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or zero with `exp = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic { mant, exp: 0 };
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Dyadic::new(n, 0)
    }

    /// Exact conversion; every finite double is dyadic.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite double");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn pow2(e: i64) -> Self {
        Dyadic::new(BigInt::one(), e)
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.mant.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// Floor of log2 |x| (meaningless for zero).
    pub fn magnitude_exp(&self) -> i64 {
        self.mant.bits() as i64 - 1 + self.exp
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), exp: self.exp }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -&self.mant, exp: self.exp }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { mant: self.mant.clone(), exp: self.exp + k }
    }

    pub fn add(&self, o: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(o.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &o.mant << (o.exp - e) as usize;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, o: &Dyadic) -> Dyadic {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &o.mant, self.exp + o.exp)
    }

    pub fn to_rat(&self) -> BigRat {
        if self.exp >= 0 {
            BigRat::from_integer(&self.mant << self.exp as usize)
        } else {
            BigRat::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = (bits - 64).max(0);
        let top = (&self.mant >> shift as usize).to_f64().unwrap_or(0.0);
        let e = self.exp + shift;
        if e > 2000 {
            return top.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        // split the scaling to avoid intermediate overflow
        let half = e / 2;
        top * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
    }

    /// Rounds to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = (bits - prec as u64) as usize;
        // `>>` on BigInt floors toward negative infinity.
        let floor = &self.mant >> shift;
        let rem_nonzero = !(&self.mant - (&floor << shift)).is_zero();
        let m = match mode {
            Round::Down => floor,
            Round::Up => {
                if rem_nonzero {
                    floor + 1
                } else {
                    floor
                }
            }
            Round::Nearest => {
                let half = BigInt::one() << (shift - 1);
                (&self.mant + half) >> shift
            }
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// Rational to dyadic with `prec` significant bits.
    pub fn from_rat(r: &BigRat, prec: u32, mode: Round) -> Dyadic {
        Dyadic::quotient(r.numer(), r.denom(), 0, prec, mode)
    }

    /// `(n / d) * 2^e` rounded to `prec` bits; `d > 0`.
    fn quotient(n: &BigInt, d: &BigInt, e: i64, prec: u32, mode: Round) -> Dyadic {
        if n.is_zero() {
            return Dyadic::zero();
        }
        let k = prec as i64 + 2 - (n.bits() as i64 - d.bits() as i64);
        let (num, den) = if k >= 0 {
            (n << k as usize, d.clone())
        } else {
            (n.clone(), d << (-k) as usize)
        };
        let (q, r) = num.div_mod_floor(&den);
        let m = match mode {
            Round::Down => q,
            Round::Up => {
                if r.is_zero() {
                    q
                } else {
                    q + 1
                }
            }
            Round::Nearest => {
                if (&r << 1usize) >= den {
                    q + 1
                } else {
                    q
                }
            }
        };
        Dyadic::new(m, e - k).round(prec, mode)
    }

    pub fn div(&self, o: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!o.is_zero(), "dyadic division by zero");
        let (n, d) = if o.mant.is_negative() {
            (-&self.mant, -&o.mant)
        } else {
            (self.mant.clone(), o.mant.clone())
        };
        Dyadic::quotient(&n, &d, self.exp - o.exp, prec, mode)
    }

    /// Square root of a nonnegative dyadic, rounded Down or Up.
    pub fn sqrt(&self, prec: u32, mode: Round) -> Dyadic {
        assert!(!self.is_negative(), "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // want mant * 2^shift with even exponent and ~2*prec bits
        let mut shift = 2 * prec as i64 + 4 - self.mant.bits() as i64;
        if shift < 0 {
            shift = 0;
        }
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift as usize;
        let s = scaled.sqrt();
        let exact = &s * &s == scaled;
        let s = match mode {
            Round::Up if !exact => s + 1,
            _ => s,
        };
        Dyadic::new(s, (self.exp - shift) / 2).round(prec, mode)
    }

}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat_frac;

    #[test]
    fn f64_roundtrip() {
        for x in [0.0, 1.0, -2.5, 1e-300, std::f64::consts::PI, 123456789.125] {
            assert_eq!(Dyadic::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn directed_rounding_brackets_rationals() {
        let third = rat_frac(1, 3);
        let lo = Dyadic::from_rat(&third, 64, Round::Down);
        let hi = Dyadic::from_rat(&third, 64, Round::Up);
        assert!(lo.to_rat() < third && third < hi.to_rat());
        let neg = rat_frac(-7, 5);
        assert!(Dyadic::from_rat(&neg, 40, Round::Down).to_rat() <= neg);
        assert!(Dyadic::from_rat(&neg, 40, Round::Up).to_rat() >= neg);
    }

    #[test]
    fn sqrt_brackets() {
        let two = Dyadic::from_int(2);
        let lo = two.sqrt(100, Round::Down);
        let hi = two.sqrt(100, Round::Up);
        assert!(lo.mul(&lo) < two && hi.mul(&hi) > two);
        assert_eq!(Dyadic::from_int(9).sqrt(10, Round::Up), Dyadic::from_int(3));
    }

    #[test]
    fn ordering() {
        assert!(Dyadic::from_f64(0.5) < Dyadic::from_int(1));
        assert!(Dyadic::from_int(-3) < Dyadic::zero());
    }
}
