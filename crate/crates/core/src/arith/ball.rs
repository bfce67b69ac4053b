//! Midpoint-radius real and complex balls.
//!
//! Every operation returns a ball that contains the exact result of applying
//! the operation to every point of the input balls. Midpoints are rounded to
//! the working precision and the exact rounding error is folded into the
//! radius; radii are kept to 30 bits and always rounded up.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use super::rational::BigRat;

const RAD_BITS: u32 = 30;

fn up(d: Dyadic) -> Dyadic {
    d.round(RAD_BITS, Round::Up)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReal {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

impl BallReal {
    pub fn exact(d: Dyadic, prec: u32) -> Self {
        BallReal::from_exact(d, Dyadic::zero(), prec)
    }

    /// Ball around an exact value `x` plus an existing radius; rounds `x`.
    fn from_exact(x: Dyadic, rad: Dyadic, prec: u32) -> Self {
        let mid = x.round(prec, Round::Nearest);
        let err = x.sub(&mid).abs();
        BallReal {
            mid,
            rad: up(rad.add(&err)),
            prec,
        }
    }

    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u32) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        BallReal::from_exact(mid, rad, prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BallReal::exact(Dyadic::from_int(n), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        BallReal::exact(Dyadic::from_bigint(n.clone()), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        BallReal::exact(Dyadic::from_f64(x), prec)
    }

    pub fn from_rat(r: &BigRat, prec: u32) -> Self {
        let mid = Dyadic::from_rat(r, prec, Round::Nearest);
        let err = (r - mid.to_rat()).abs();
        BallReal {
            mid,
            rad: Dyadic::from_rat(&err, RAD_BITS, Round::Up),
            prec,
        }
    }

    pub fn zero(prec: u32) -> Self {
        BallReal::from_int(0, prec)
    }

    pub fn one(prec: u32) -> Self {
        BallReal::from_int(1, prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        BallReal::from_exact(self.mid.clone(), self.rad.clone(), prec)
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero if the ball contains zero).
    pub fn mig(&self) -> Dyadic {
        let m = self.mid.abs().sub(&self.rad);
        if m.is_negative() {
            Dyadic::zero()
        } else {
            m
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lower() <= *x && *x <= self.upper()
    }

    pub fn contains_rat(&self, x: &BigRat) -> bool {
        self.lower().to_rat() <= *x && *x <= self.upper().to_rat()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Dyadic::zero())
    }

    /// True when `other` lies entirely inside `self`.
    pub fn contains_ball(&self, other: &BallReal) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &BallReal) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Decided comparison: `None` when the balls overlap.
    pub fn cmp_certain(&self, other: &BallReal) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else if self.is_exact() && other.is_exact() && self.mid == other.mid {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// `Some(true)` if every point of `self` is `>=` every point of `other`,
    /// `Some(false)` if every point is `<`, `None` if undecided.
    pub fn ge_certain(&self, other: &BallReal) -> Option<bool> {
        if self.lower() >= other.upper() {
            Some(true)
        } else if self.upper() < other.lower() {
            Some(false)
        } else {
            None
        }
    }

    pub fn neg(&self) -> BallReal {
        BallReal {
            mid: self.mid.neg(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> BallReal {
        if !self.contains_zero() {
            return if self.mid.is_negative() { self.neg() } else { self.clone() };
        }
        // [0, mag]
        let m = self.mag();
        let half = m.mul_pow2(-1);
        BallReal::from_exact(half.clone(), half, self.prec)
    }

    pub fn add(&self, o: &BallReal) -> BallReal {
        BallReal::from_exact(self.mid.add(&o.mid), self.rad.add(&o.rad), self.prec.max(o.prec))
    }

    pub fn sub(&self, o: &BallReal) -> BallReal {
        BallReal::from_exact(self.mid.sub(&o.mid), self.rad.add(&o.rad), self.prec.max(o.prec))
    }

    pub fn mul(&self, o: &BallReal) -> BallReal {
        let rad = self
            .mid
            .abs()
            .mul(&o.rad)
            .add(&o.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&o.rad));
        BallReal::from_exact(self.mid.mul(&o.mid), rad, self.prec.max(o.prec))
    }

    pub fn mul_int(&self, n: i64) -> BallReal {
        self.mul(&BallReal::from_int(n, self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> BallReal {
        BallReal {
            mid: self.mid.mul_pow2(k),
            rad: self.rad.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> BallReal {
        self.mul(self)
    }

    pub fn pow(&self, e: u32) -> BallReal {
        let mut acc = BallReal::one(self.prec);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.sqr();
            e >>= 1;
        }
        acc
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &BallReal) -> Option<BallReal> {
        if o.contains_zero() {
            return None;
        }
        let prec = self.prec.max(o.prec);
        let q = self.mid.div(&o.mid, prec, Round::Nearest);
        // exact rounding error |a/b - q| = |a - q b| / |b|
        let resid = self.mid.sub(&q.mul(&o.mid)).abs();
        let err = resid.div(&o.mid.abs(), RAD_BITS, Round::Up);
        // propagated: (ra + |a/b| rb) / (|b| - rb)
        let qmag = q.abs().add(&err);
        let num = self.rad.add(&qmag.mul(&o.rad));
        let den = o.mig().round(RAD_BITS + 2, Round::Down);
        let prop = if num.is_zero() {
            Dyadic::zero()
        } else {
            num.div(&den, RAD_BITS, Round::Up)
        };
        Some(BallReal {
            mid: q,
            rad: up(err.add(&prop)),
            prec,
        })
    }

    pub fn div_int(&self, n: i64) -> BallReal {
        self.div(&BallReal::from_int(n, self.prec))
            .expect("division by a nonzero integer")
    }

    pub fn recip(&self) -> Option<BallReal> {
        BallReal::one(self.prec).div(self)
    }

    /// Square root; the negative part of the ball is clipped to zero, and
    /// `None` is returned only when the whole ball is negative.
    pub fn sqrt(&self) -> Option<BallReal> {
        let prec = self.prec;
        if self.upper().is_negative() {
            return None;
        }
        let lo = self.lower();
        if !lo.is_negative() && !lo.is_zero() {
            let s = self.mid.sqrt(prec + 2, Round::Nearest);
            let s_lo = self.mid.sqrt(prec + 2, Round::Down);
            let s_hi = self.mid.sqrt(prec + 2, Round::Up);
            let round_err = s_hi.sub(&s_lo);
            // |sqrt(x) - sqrt(m)| <= r / sqrt(m - r)
            let prop = if self.rad.is_zero() {
                Dyadic::zero()
            } else {
                let root_lo = lo.sqrt(RAD_BITS + 2, Round::Down);
                self.rad.div(&root_lo, RAD_BITS, Round::Up)
            };
            return Some(BallReal::from_exact(s, round_err.add(&prop), prec));
        }
        // ball touches zero: enclose [0, sqrt(upper)]
        let hi = self.upper().sqrt(prec, Round::Up);
        let half = hi.mul_pow2(-1);
        Some(BallReal::from_exact(half.clone(), half, prec))
    }

    /// Ball enclosing `max(x, y)` over all points.
    pub fn max(&self, o: &BallReal) -> BallReal {
        let lo = self.lower().max(o.lower());
        let hi = self.upper().max(o.upper());
        BallReal::from_interval(lo, hi, self.prec.max(o.prec))
    }

    pub fn min(&self, o: &BallReal) -> BallReal {
        let lo = self.lower().min(o.lower());
        let hi = self.upper().min(o.upper());
        BallReal::from_interval(lo, hi, self.prec.max(o.prec))
    }

    /// Smallest ball (up to rounding) containing `[lo, hi]`.
    pub fn from_interval(lo: Dyadic, hi: Dyadic, prec: u32) -> BallReal {
        let mid = lo.add(&hi).mul_pow2(-1);
        let rad = hi.sub(&lo).mul_pow2(-1);
        BallReal::from_exact(mid, rad, prec)
    }

    /// Union hull of two balls.
    pub fn union(&self, o: &BallReal) -> BallReal {
        BallReal::from_interval(
            self.lower().min(o.lower()),
            self.upper().max(o.upper()),
            self.prec.max(o.prec),
        )
    }

    // ---- transcendental functions -------------------------------------

    /// `e^x`.
    pub fn exp(&self) -> BallReal {
        let prec = self.prec;
        let center = exp_point(&self.mid, prec);
        if self.rad.is_zero() {
            return center;
        }
        // e^(m +- r) lies in e^m * [e^-r, e^r]; |e^(+-r) - 1| <= e^r - 1
        let er = exp_point(&self.rad, RAD_BITS + 8);
        let grow = er.upper().sub(&Dyadic::one());
        let extra = center.mag().mul(&grow);
        BallReal::from_exact(center.mid.clone(), center.rad.add(&extra), prec)
    }

    /// Natural logarithm; `None` unless the ball is strictly positive.
    pub fn ln(&self) -> Option<BallReal> {
        let lo = self.lower();
        if lo.is_negative() || lo.is_zero() {
            return None;
        }
        let prec = self.prec;
        let center = ln_point(&self.mid, prec);
        if self.rad.is_zero() {
            return Some(center);
        }
        // |ln x - ln m| <= r / (m - r)
        let extra = self.rad.div(&lo.round(RAD_BITS + 2, Round::Down), RAD_BITS, Round::Up);
        Some(BallReal::from_exact(center.mid.clone(), center.rad.add(&extra), prec))
    }

    pub fn sinh(&self) -> BallReal {
        let e = self.exp();
        let einv = self.neg().exp();
        e.sub(&einv).mul_pow2(-1)
    }

    pub fn cosh(&self) -> BallReal {
        let e = self.exp();
        let einv = self.neg().exp();
        e.add(&einv).mul_pow2(-1)
    }

    /// `arccosh(x) = ln(x + sqrt(x^2 - 1))` for `x >= 1`.
    pub fn arccosh(&self) -> Option<BallReal> {
        if self.upper() < Dyadic::one() {
            return None;
        }
        let one = BallReal::one(self.prec);
        // clip to x >= 1
        let x = BallReal::from_interval(self.lower().max(Dyadic::one()), self.upper(), self.prec);
        let s = x.sqr().sub(&one).sqrt()?;
        x.add(&s).ln()
    }

    pub fn pi(prec: u32) -> BallReal {
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let wp = prec + 16;
        let a = atan_inv(5, wp).mul_int(16);
        let b = atan_inv(239, wp).mul_int(4);
        a.sub(&b).with_prec(prec)
    }
}

/// `atan(1/k)` for an integer `k >= 2` by its alternating series.
fn atan_inv(k: i64, prec: u32) -> BallReal {
    let k_ball = BallReal::from_int(k, prec);
    let k2 = k_ball.sqr();
    let mut power = BallReal::one(prec).div(&k_ball).expect("k >= 2");
    let mut sum = BallReal::zero(prec);
    let eps = Dyadic::pow2(-(prec as i64) - 4);
    let mut j = 0i64;
    loop {
        let term = power.div_int(2 * j + 1);
        if j % 2 == 0 {
            sum = sum.add(&term);
        } else {
            sum = sum.sub(&term);
        }
        power = power.div(&k2).expect("k^2 > 0");
        j += 1;
        if power.mag() < eps {
            // alternating with decreasing terms: tail bounded by next term
            let tail = power.mag();
            return BallReal::from_exact(sum.mid.clone(), sum.rad.add(&tail), prec);
        }
    }
}

/// `e^m` for an exact dyadic `m`.
fn exp_point(m: &Dyadic, prec: u32) -> BallReal {
    if m.is_zero() {
        return BallReal::one(prec);
    }
    // reduce to |t| <= 2^-10, then square back up s times
    let s = (m.magnitude_exp() + 11).max(0);
    let wp = prec + 24 + s as u32;
    let t = BallReal::exact(m.mul_pow2(-s), wp);
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut sum = BallReal::one(wp);
    let mut term = BallReal::one(wp);
    let mut k = 1i64;
    loop {
        term = term.mul(&t).div_int(k);
        sum = sum.add(&term);
        k += 1;
        if term.mag() < eps {
            break;
        }
    }
    // remainder after the last term: |t|^k/k! * sum_j |t|^j <= 2 |term| |t|
    let tail = term.mag().mul(&t.mag()).mul_pow2(1);
    let mut acc = BallReal::from_exact(sum.mid.clone(), sum.rad.add(&tail), wp);
    for _ in 0..s {
        acc = acc.sqr();
    }
    acc.with_prec(prec)
}

/// `ln m` for an exact positive dyadic `m`.
fn ln_point(m: &Dyadic, prec: u32) -> BallReal {
    let wp = prec + 24;
    // f64 seed: ln(top bits) + exponent * ln 2
    let bits = m.mant().bits() as i64;
    let shift = (bits - 60).max(0);
    let top = Dyadic::new(m.mant() >> shift as usize, 0).to_f64();
    let seed = top.ln() + ((m.exp() + shift) as f64) * std::f64::consts::LN_2;
    let y = Dyadic::from_f64(seed);
    // ln m = y + ln(m e^-y), and m e^-y = 1 + z with z tiny
    let z = BallReal::exact(m.clone(), wp)
        .mul(&exp_point(&y.neg(), wp))
        .sub(&BallReal::one(wp));
    let zmag = z.mag();
    assert!(zmag < Dyadic::pow2(-4), "ln seed too far off");
    let eps = Dyadic::pow2(-(wp as i64) - 8);
    let mut sum = BallReal::zero(wp);
    let mut power = z.clone();
    let mut k = 1i64;
    loop {
        let term = power.div_int(k);
        if k % 2 == 1 {
            sum = sum.add(&term);
        } else {
            sum = sum.sub(&term);
        }
        power = power.mul(&z);
        k += 1;
        if power.mag() < eps {
            break;
        }
    }
    // tail <= |z|^k / (1 - |z|) <= 2 |z|^k
    let tail = power.mag().mul_pow2(1);
    let series = BallReal::from_exact(sum.mid.clone(), sum.rad.add(&tail), wp);
    BallReal::exact(y, wp).add(&series).with_prec(prec)
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.3e}", self.mid.to_f64(), self.rad.to_f64())
    }
}

/// Serializable summary of a ball: midpoint and an upward-rounded radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallSummary {
    pub mid: f64,
    pub rad: f64,
}

impl From<&BallReal> for BallSummary {
    fn from(b: &BallReal) -> Self {
        let mid = b.mid.to_f64();
        // |mid_f64 - mid| adds to the radius
        let conv = Dyadic::from_f64(mid).sub(&b.mid).abs();
        let rad = b.rad.add(&conv).to_f64();
        let rad = if rad == 0.0 { 0.0 } else { rad * (1.0 + f64::EPSILON) + f64::MIN_POSITIVE };
        BallSummary { mid, rad }
    }
}

/// Complex ball as a rectangle of two real balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallComplex {
    pub re: BallReal,
    pub im: BallReal,
}

impl BallComplex {
    pub fn new(re: BallReal, im: BallReal) -> Self {
        BallComplex { re, im }
    }

    pub fn real(re: BallReal) -> Self {
        let prec = re.prec();
        BallComplex { re, im: BallReal::zero(prec) }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        BallComplex::real(BallReal::from_int(n, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn add(&self, o: &BallComplex) -> BallComplex {
        BallComplex::new(self.re.add(&o.re), self.im.add(&o.im))
    }

    pub fn sub(&self, o: &BallComplex) -> BallComplex {
        BallComplex::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }

    pub fn neg(&self) -> BallComplex {
        BallComplex::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> BallComplex {
        BallComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, o: &BallComplex) -> BallComplex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        BallComplex::new(re, im)
    }

    pub fn scale(&self, s: &BallReal) -> BallComplex {
        BallComplex::new(self.re.mul(s), self.im.mul(s))
    }

    pub fn mul_pow2(&self, k: i64) -> BallComplex {
        BallComplex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    pub fn norm_sqr(&self) -> BallReal {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> BallReal {
        self.norm_sqr().sqrt().expect("norm is nonnegative")
    }

    pub fn div(&self, o: &BallComplex) -> Option<BallComplex> {
        let n = o.norm_sqr();
        let num = self.mul(&o.conj());
        Some(BallComplex::new(num.re.div(&n)?, num.im.div(&n)?))
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// A square root (the principal one when `Re w >= 0`). `None` if the ball
    /// may contain zero.
    pub fn sqrt(&self) -> Option<BallComplex> {
        if self.contains_zero() {
            return None;
        }
        let r = self.abs();
        if !self.re.mid().is_negative() {
            // a = sqrt((|w| + x)/2), b = y / (2a)
            let a = r.add(&self.re).mul_pow2(-1).sqrt()?;
            let b = self.im.div(&a.mul_pow2(1))?;
            Some(BallComplex::new(a, b))
        } else {
            // b = sqrt((|w| - x)/2) with the sign of y, a = y / (2b); continuous
            // across the negative axis because `a` changes sign with y
            let b = r.sub(&self.re).mul_pow2(-1).sqrt()?;
            let a = self.im.div(&b.mul_pow2(1))?;
            Some(BallComplex::new(a, b))
        }
    }

    /// Disk radius enclosing the rectangle, around the midpoint.
    pub fn disk_radius(&self) -> Dyadic {
        up(self.re.rad().add(self.im.rad()))
    }

    pub fn mid_point(&self) -> BallComplex {
        let prec = self.prec();
        BallComplex::new(
            BallReal::exact(self.re.mid().clone(), prec),
            BallReal::exact(self.im.mid().clone(), prec),
        )
    }
}

impl fmt::Display for BallComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, rat_frac};

    #[test]
    fn arithmetic_contains_exact_results() {
        let third = BallReal::from_rat(&rat_frac(1, 3), 80);
        assert!(third.contains_rat(&rat_frac(1, 3)));
        let sum = third.add(&third).add(&third);
        assert!(sum.contains_rat(&rat(1)));
        let q = BallReal::from_int(2, 80).div(&BallReal::from_int(7, 80)).unwrap();
        assert!(q.contains_rat(&rat_frac(2, 7)));
        assert!(q.mul_int(7).contains_rat(&rat(2)));
    }

    #[test]
    fn exp_ln_known_values() {
        let e = BallReal::one(128).exp();
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!(e.rad() < &Dyadic::pow2(-120));
        let l = BallReal::from_int(2, 128).ln().unwrap();
        assert!((l.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        let back = l.exp();
        assert!(back.contains_rat(&rat(2)));
        assert_eq!(BallReal::zero(64).exp(), BallReal::one(64));
    }

    #[test]
    fn pi_matches() {
        let p = BallReal::pi(200);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.rad() < &Dyadic::pow2(-190));
    }

    #[test]
    fn sqrt_and_complex_sqrt() {
        let s = BallReal::from_int(2, 128).sqrt().unwrap();
        assert!(s.sqr().contains_rat(&rat(2)));
        let w = BallComplex::new(BallReal::from_int(-3, 128), BallReal::from_int(4, 128));
        let r = w.sqrt().unwrap();
        assert!(r.re.contains_rat(&rat(1)) && r.im.contains_rat(&rat(2)));
        let neg = BallComplex::new(BallReal::from_int(-4, 128), BallReal::zero(128));
        let r = neg.sqrt().unwrap();
        assert!(r.re.contains_zero() && r.im.contains_rat(&rat(2)));
    }

    #[test]
    fn hyperbolic_functions() {
        let x = BallReal::from_f64(1.5, 128);
        let c = x.cosh();
        assert!((c.to_f64() - 1.5f64.cosh()).abs() < 1e-14);
        let a = c.arccosh().unwrap();
        assert!(a.contains(&Dyadic::from_f64(1.5)));
        assert_eq!(BallReal::zero(64).sinh(), BallReal::zero(64));
    }

    #[test]
    fn undecided_comparisons() {
        let a = BallReal::with_radius(Dyadic::one(), Dyadic::pow2(-4), 64);
        let b = BallReal::one(64);
        assert_eq!(a.ge_certain(&b), None);
        assert_eq!(BallReal::from_int(2, 64).ge_certain(&b), Some(true));
        assert_eq!(b.cmp_certain(&b), Some(Ordering::Equal));
    }
}
