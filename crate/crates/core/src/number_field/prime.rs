//! Prime ideals of `Z[theta]` above a rational prime and the associated
//! valuations.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::lattice::IdealLattice;
use super::{FieldElement, NumberField};
use crate::arith::rational::{int_valuation, is_prime};
use crate::arith::{factor_mod_p, BigRat, PolyFp};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn at_least(self, k: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinity => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// `P = (p, g(theta))` with ramification index `e` and residue degree `f`.
#[derive(Debug)]
pub struct PrimeIdeal {
    p: u64,
    g: PolyFp,
    g_lift: Vec<BigInt>,
    e: u32,
    f: u32,
    n: usize,
    min_poly: Vec<BigInt>,
    // powers[k - 1] is the lattice of P^k
    powers: RwLock<Vec<Arc<IdealLattice>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeSummary {
    pub p: u64,
    pub factor: String,
    pub e: u32,
    pub f: u32,
}

/// Dedekind's criterion: with `f = prod g_i^{e_i}` modulo `p`, `g` the radical
/// and `h = f / g`, set `F = (f - g h) / p`; `p` does not divide the index of
/// `Z[theta]` iff `gcd(F, g, h) = 1` over `F_p`.
pub fn dedekind_criterion(min_poly: &[BigInt], factors: &[(PolyFp, usize)], p: u64) -> bool {
    let mut g = PolyFp::one(p);
    let mut h = PolyFp::one(p);
    for (gi, ei) in factors {
        g = g.mul(gi);
        for _ in 1..*ei {
            h = h.mul(gi);
        }
    }
    if factors.iter().all(|(_, e)| *e == 1) {
        return true;
    }
    let gh = mul_int(&g.to_bigints(), &h.to_bigints());
    let pb = BigInt::from(p);
    let len = min_poly.len().max(gh.len());
    let big_f: Vec<BigInt> = (0..len)
        .map(|k| {
            let a = min_poly.get(k).cloned().unwrap_or_default();
            let b = gh.get(k).cloned().unwrap_or_default();
            let d = a - b;
            debug_assert!((&d % &pb).is_zero());
            d / &pb
        })
        .collect();
    let fbar = PolyFp::from_bigints(&big_f, p);
    let d = PolyFp::gcd(&PolyFp::gcd(&fbar, &g), &h);
    d.degree() == Some(0)
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Product in `Z[theta]` of two integral coordinate vectors.
fn mul_mod_f(a: &[BigInt], b: &[BigInt], f: &[BigInt]) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut prod = mul_int(a, b);
    let len = prod.len().max(n);
    prod.resize(len, BigInt::zero());
    for k in (n..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..n {
            prod[k - n + j] -= &c * &f[j];
        }
    }
    prod.truncate(n);
    prod
}

pub(super) fn split_prime(field: &NumberField, p: u64) -> Result<Vec<Arc<PrimeIdeal>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = field.min_poly_coeffs();
    let factors = factor_mod_p(f, p, field.seed())?;
    if !dedekind_criterion(f, &factors, p) {
        return Err(Error::GoodPrimeRequired { p });
    }
    let n = field.degree();
    Ok(factors
        .into_iter()
        .map(|(g, e)| {
            let mut g_lift = g.to_bigints();
            g_lift.resize(n.max(g_lift.len()), BigInt::zero());
            Arc::new(PrimeIdeal {
                p,
                f: g.degree().unwrap_or(0) as u32,
                g,
                g_lift,
                e: e as u32,
                n,
                min_poly: f.to_vec(),
                powers: RwLock::new(Vec::new()),
            })
        })
        .collect())
}

impl PrimeIdeal {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The factor of the minimal polynomial modulo `p` defining this prime.
    pub fn factor(&self) -> &PolyFp {
        &self.g
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// Absolute norm `p^f`.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f)
    }

    pub fn summary(&self) -> PrimeSummary {
        PrimeSummary {
            p: self.p,
            factor: self.g.to_string(),
            e: self.e,
            f: self.f,
        }
    }

    /// Lattice of `P^k` inside `Z[theta]`, `k >= 1`, memoized.
    pub fn power(&self, k: u32) -> Arc<IdealLattice> {
        assert!(k >= 1);
        {
            let pw = self.powers.read().unwrap();
            if pw.len() >= k as usize {
                return pw[k as usize - 1].clone();
            }
        }
        let mut pw = self.powers.write().unwrap();
        while pw.len() < k as usize {
            let j = pw.len() as u32 + 1;
            let modulus = BigInt::from(self.p).pow(j);
            let pb = BigInt::from(self.p);
            let gens: Vec<Vec<BigInt>> = if j == 1 {
                let mut gens = Vec::new();
                for t in 0..self.n {
                    let mut e = vec![BigInt::zero(); self.n];
                    e[t] = BigInt::one();
                    gens.push(e.iter().map(|c| c * &pb).collect());
                    gens.push(mul_mod_f(&e, &self.g_lift, &self.min_poly));
                }
                gens
            } else {
                let prev = pw[j as usize - 2].clone();
                let mut gens = Vec::new();
                for b in prev.rows() {
                    gens.push(b.iter().map(|c| c * &pb).collect());
                    gens.push(mul_mod_f(b, &self.g_lift, &self.min_poly));
                }
                gens
            };
            pw.push(Arc::new(IdealLattice::from_generators(self.n, &gens, &modulus)));
        }
        pw[k as usize - 1].clone()
    }

    /// Whether `x` lies in `P^k` (as fractional ideals, `k >= 0`).
    pub fn contains_power(&self, x: &FieldElement, k: u32) -> bool {
        if x.is_zero() {
            return true;
        }
        let (y, d) = x.integral_split();
        let shift = self.e * int_valuation(&d, self.p);
        let need = k + shift;
        need == 0 || self.power(need).contains(&y)
    }

    /// `v_P(x)`; `Infinity` for zero.
    pub fn valuation(&self, field: &NumberField, x: &FieldElement) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        let (y, d) = x.integral_split();
        let yy = field.element(y.iter().cloned().map(BigRat::from_integer).collect());
        let nm = field.norm(&yy).to_integer();
        // v_P(y) <= v_p(Nm y) / f
        let bound = int_valuation(&nm, self.p) / self.f;
        let mut v = 0;
        while v < bound && self.power(v + 1).contains(&y) {
            v += 1;
        }
        Valuation::Finite(v as i64 - (self.e * int_valuation(&d, self.p)) as i64)
    }

    /// `|x|_P = Nr(P)^{-v_P(x)}`; `None` for zero.
    pub fn abs_value(&self, field: &NumberField, x: &FieldElement) -> Option<BigRat> {
        let v = self.valuation(field, x).finite()?;
        let q = BigRat::from_integer(self.norm());
        Some(if v >= 0 {
            q.pow(-(v as i32))
        } else {
            q.pow((-v) as i32)
        })
    }
}
