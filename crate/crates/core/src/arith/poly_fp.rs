//! Polynomials over the prime field Z/p and their factorization.
//!
//! Factorization runs squarefree decomposition, then distinct-degree splitting,
//! then randomized equal-degree splitting (Cantor-Zassenhaus, with the trace map
//! in characteristic 2). The random source is a seeded ChaCha stream, and the
//! final list is sorted, so the output never depends on the seed.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::{is_prime, mod_inverse, mul_mod};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn from_bigints(coeffs: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        PolyFp::new(
            p,
            coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p"))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        PolyFp::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|&c| BigInt::from(c)).collect()
    }

    pub fn monic(&self) -> PolyFp {
        if self.is_zero() {
            return self.clone();
        }
        let inv = mod_inverse(self.lead(), self.p).expect("nonzero lead is invertible mod p");
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> PolyFp {
        PolyFp::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, o: &PolyFp) -> PolyFp {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyFp::new(self.p, (0..n).map(|k| (self.coeff(k) + o.coeff(k)) % self.p).collect())
    }

    pub fn sub(&self, o: &PolyFp) -> PolyFp {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyFp::new(
            self.p,
            (0..n).map(|k| (self.coeff(k) + self.p - o.coeff(k)) % self.p).collect(),
        )
    }

    pub fn mul(&self, o: &PolyFp) -> PolyFp {
        if self.is_zero() || o.is_zero() {
            return PolyFp::zero(self.p);
        }
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let p = self.p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % p;
            }
        }
        PolyFp::new(self.p, out.into_iter().map(|c| c as u64).collect())
    }

    pub fn div_rem(&self, d: &PolyFp) -> (PolyFp, PolyFp) {
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let inv = mod_inverse(d.lead(), p).expect("invertible lead");
        let mut rem = self.coeffs.clone();
        if self.is_zero() || self.deg() < dd {
            return (PolyFp::zero(p), self.clone());
        }
        let nd = self.deg();
        let mut quot = vec![0u64; nd - dd + 1];
        for k in (dd..=nd).rev() {
            let c = mul_mod(rem[k], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(c, dc, p)) % p;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (PolyFp::new(p, quot), PolyFp::new(p, rem))
    }

    pub fn rem(&self, d: &PolyFp) -> PolyFp {
        self.div_rem(d).1
    }

    pub fn gcd(a: &PolyFp, b: &PolyFp) -> PolyFp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> PolyFp {
        PolyFp::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mul_mod(c, k as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn pow_mod(&self, e: &BigUint, m: &PolyFp) -> PolyFp {
        let mut result = PolyFp::one(self.p).rem(m);
        let base = self.rem(m);
        for k in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(k) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// For `f = g(x^p)`, returns `g` with each coefficient replaced by its
    /// p-th root (which is itself over the prime field).
    fn pth_root(&self) -> PolyFp {
        let p = self.p as usize;
        PolyFp::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        // Rabin's test.
        let x = PolyFp::x(self.p);
        let pe = BigUint::from(self.p);
        let frob = |h: &PolyFp| h.pow_mod(&pe, &f);
        let mut h = x.clone();
        let mut powers = vec![x.rem(&f)];
        for _ in 0..n {
            h = frob(&h);
            powers.push(h.clone());
        }
        if !powers[n].sub(&x).rem(&f).is_zero() {
            return false;
        }
        let mut m = n;
        let mut prime_divs = Vec::new();
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                prime_divs.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        prime_divs.into_iter().all(|q| {
            let g = PolyFp::gcd(&f, &powers[n / q].sub(&x));
            g.is_one()
        })
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// squarefree parts with their multiplicities.
    fn squarefree_parts(&self) -> Vec<(PolyFp, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let fp = self.derivative();
        if fp.is_zero() {
            for (g, m) in self.pth_root().squarefree_parts() {
                out.push((g, m * p as usize));
            }
            return out;
        }
        let mut c = PolyFp::gcd(self, &fp);
        let mut w = self.div_rem(&c).0;
        let mut i = 1;
        while !w.is_one() {
            let y = PolyFp::gcd(&w, &c);
            let z = w.div_rem(&y).0;
            if z.deg() > 0 {
                out.push((z.monic(), i));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.deg() > 0 {
            for (g, m) in c.monic().pth_root().squarefree_parts() {
                out.push((g, m * p as usize));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial into products of irreducibles of
    /// equal degree.
    fn distinct_degree(&self) -> Vec<(PolyFp, usize)> {
        let p = self.p;
        let mut out = Vec::new();
        let mut g = self.clone();
        let x = PolyFp::x(p);
        let mut h = x.rem(&g);
        let pe = BigUint::from(p);
        let mut d = 1;
        while g.deg() >= 2 * d {
            h = h.pow_mod(&pe, &g);
            let gd = PolyFp::gcd(&g, &h.sub(&x));
            if gd.deg() > 0 {
                g = g.div_rem(&gd).0;
                h = h.rem(&g);
                out.push((gd, d));
            }
            d += 1;
        }
        if g.deg() > 0 {
            let dg = g.deg();
            out.push((g.monic(), dg));
        }
        out
    }

    fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<PolyFp> {
        let n = self.deg();
        if n == d {
            return vec![self.monic()];
        }
        let p = self.p;
        loop {
            let a = PolyFp::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if p == 2 {
                let mut t = a.rem(self);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                a.pow_mod(&e, self).sub(&PolyFp::one(p))
            };
            let g = PolyFp::gcd(self, &b);
            if g.deg() > 0 && g.deg() < n {
                let h = self.div_rem(&g).0.monic();
                let mut out = g.equal_degree(d, rng);
                out.extend(h.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Lexicographic comparison used for deterministic factor order.
    fn sort_key(&self) -> (usize, Vec<u64>) {
        (self.deg(), self.coeffs.iter().rev().copied().collect())
    }
}

/// Factors a monic integer polynomial modulo a prime into monic irreducible
/// factors with multiplicities, sorted by degree then by coefficients.
pub fn factor_mod_p(f: &[BigInt], p: u64, seed: u64) -> Result<Vec<(PolyFp, usize)>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !f.last().is_some_and(|c| c.is_one()) {
        return Err(Error::NotMonic);
    }
    Ok(factor_fp(&PolyFp::from_bigints(f, p), seed))
}

pub fn factor_fp(f: &PolyFp, seed: u64) -> Vec<(PolyFp, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ f.modulus());
    let mut out = Vec::new();
    for (part, mult) in f.monic().squarefree_parts() {
        for (block, d) in part.distinct_degree() {
            for g in block.equal_degree(d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by_key(|(g, _)| g.sort_key());
    out
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn expand(factors: &[(PolyFp, usize)], p: u64) -> PolyFp {
        factors
            .iter()
            .fold(PolyFp::one(p), |acc, (g, m)| (0..*m).fold(acc, |a, _| a.mul(g)))
    }

    #[test]
    fn split_at_seven() {
        let f = ints(&[1, -1, 1]);
        let fac = factor_mod_p(&f, 7, 0).unwrap();
        // roots 3 and 5: x - 3 = x + 4, x - 5 = x + 2
        assert_eq!(
            fac,
            vec![(PolyFp::new(7, vec![2, 1]), 1), (PolyFp::new(7, vec![4, 1]), 1)]
        );
    }

    #[test]
    fn inert_at_five() {
        let fac = factor_mod_p(&ints(&[1, -1, 1]), 5, 0).unwrap();
        assert_eq!(fac, vec![(PolyFp::new(5, vec![1, 4, 1]), 1)]);
        // exhaustive: no roots mod 5
        assert!((0..5).all(|x| (x * x - x + 1) % 5 != 0));
    }

    #[test]
    fn ramified_at_three() {
        let fac = factor_mod_p(&ints(&[1, -1, 1]), 3, 0).unwrap();
        assert_eq!(fac, vec![(PolyFp::new(3, vec![1, 1]), 2)]);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(factor_mod_p(&ints(&[1, -1, 1]), 9, 0), Err(Error::NotPrime(9))));
    }

    #[test]
    fn characteristic_two_and_pth_powers() {
        // (x^2 + x + 1)^2 * (x + 1)^3 over F_2
        let a = PolyFp::new(2, vec![1, 1, 1]);
        let b = PolyFp::new(2, vec![1, 1]);
        let f = a.mul(&a).mul(&b).mul(&b).mul(&b);
        let fac = factor_fp(&f, 3);
        assert_eq!(fac, vec![(b, 3), (a, 2)]);
    }

    #[test]
    fn products_reproduce_input() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            for coeffs in [
                vec![1i64, 0, 0, 0, 1],
                vec![-2, 0, 0, 1],
                vec![6, 11, 6, 1],
                vec![1, 1, 1, 1, 1, 1, 1],
                vec![0, 0, 1, 3, 3, 1],
            ] {
                let f = ints(&coeffs);
                let fac = factor_mod_p(&f, p, 11).unwrap();
                assert_eq!(expand(&fac, p), PolyFp::from_bigints(&f, p), "p={p} f={coeffs:?}");
                for (g, _) in &fac {
                    assert!(g.is_irreducible());
                }
            }
        }
    }

    #[test]
    fn rabin_test() {
        assert!(PolyFp::new(5, vec![1, 4, 1]).is_irreducible());
        assert!(!PolyFp::new(7, vec![1, 6, 1]).is_irreducible());
        assert!(PolyFp::new(2, vec![1, 1, 0, 0, 1]).is_irreducible());
    }
}
