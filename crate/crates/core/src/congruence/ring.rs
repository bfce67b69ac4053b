//! The residue ring `Z/m [x] / (f)` and 2x2 matrices over it, stored flat as
//! `4n` words (entries a, b, c, d, each `n` power-basis coordinates).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::arith::rational::rat_mod;
use crate::error::{Error, Result};
use crate::group::GroupMatrix;

/// Flat matrix over the residue ring.
pub type RingMatrix = Box<[u32]>;

/// Largest admissible modulus; products of two residues fit in 62 bits.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: u64,
    n: usize,
    // low coefficients of the monic minimal polynomial, reduced mod m
    f: Vec<u64>,
}

impl ResidueRing {
    pub fn new(min_poly: &[BigInt], modulus: u64) -> ResidueRing {
        let n = min_poly.len() - 1;
        let mb = BigInt::from(modulus);
        let f = min_poly[..n]
            .iter()
            .map(|c| c.mod_floor(&mb).to_u64().unwrap())
            .collect();
        ResidueRing { modulus, n, f }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// `x * y` for ring elements given as coordinate slices.
    pub fn mul_into(&self, x: &[u32], y: &[u32], out: &mut [u32]) {
        let n = self.n;
        let m = self.modulus;
        let mut prod = [0u64; 64];
        let prod = &mut prod[..2 * n - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % m;
            }
        }
        for k in (n..2 * n - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                // subtract c * f_j
                let t = c * self.f[j] % m;
                prod[k - n + j] = (prod[k - n + j] + m - t) % m;
            }
        }
        for k in 0..n {
            out[k] = prod[k] as u32;
        }
    }

    pub fn identity(&self) -> RingMatrix {
        let mut v = vec![0u32; 4 * self.n];
        if self.modulus > 1 {
            v[0] = 1;
            v[3 * self.n] = 1;
        }
        v.into_boxed_slice()
    }

    pub fn mat_mul(&self, x: &[u32], y: &[u32]) -> RingMatrix {
        let n = self.n;
        let m = self.modulus as u32;
        let mut out = vec![0u32; 4 * n];
        let mut t1 = vec![0u32; n];
        let mut t2 = vec![0u32; n];
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let xr0 = &x[(2 * r) * n..(2 * r + 1) * n];
            let xr1 = &x[(2 * r + 1) * n..(2 * r + 2) * n];
            let y0c = &y[c * n..(c + 1) * n];
            let y1c = &y[(2 + c) * n..(3 + c) * n];
            self.mul_into(xr0, y0c, &mut t1);
            self.mul_into(xr1, y1c, &mut t2);
            let dst = &mut out[(2 * r + c) * n..(2 * r + c + 1) * n];
            for k in 0..n {
                dst[k] = ((t1[k] as u64 + t2[k] as u64) % m as u64) as u32;
            }
        }
        out.into_boxed_slice()
    }

    /// Inverse of a determinant-one matrix: `[[d, -b], [-c, a]]`.
    pub fn mat_inv(&self, x: &[u32]) -> RingMatrix {
        let n = self.n;
        let m = self.modulus as u32;
        let neg = |v: u32| if v == 0 { 0 } else { m - v };
        let mut out = vec![0u32; 4 * n];
        for k in 0..n {
            out[k] = x[3 * n + k];
            out[n + k] = neg(x[n + k]);
            out[2 * n + k] = neg(x[2 * n + k]);
            out[3 * n + k] = x[k];
        }
        out.into_boxed_slice()
    }

    pub fn mat_neg(&self, x: &[u32]) -> RingMatrix {
        let m = self.modulus as u32;
        x.iter()
            .map(|&v| if v == 0 { 0 } else { m - v })
            .collect::<Vec<_>>()
            .into_boxed_slice()
    }

    pub fn is_identity(&self, x: &[u32]) -> bool {
        *x == *self.identity()
    }

    /// Representative of `{X, -X}`: the lexicographically smaller one.
    pub fn projective_normal(&self, x: RingMatrix) -> RingMatrix {
        let nx = self.mat_neg(&x);
        if nx < x {
            nx
        } else {
            x
        }
    }

    /// Reduction of a matrix whose entry denominators are prime to `m`.
    pub fn reduce(&self, g: &GroupMatrix, p: u64) -> Result<RingMatrix> {
        let mut out = Vec::with_capacity(4 * self.n);
        for x in g.entries() {
            for c in x.coeffs() {
                let r = rat_mod(c, self.modulus).ok_or(Error::DenominatorAtPrime { p })?;
                out.push(r as u32);
            }
        }
        Ok(out.into_boxed_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_mod_49() {
        let f: Vec<BigInt> = [1, -1, 1].iter().map(|&c| BigInt::from(c)).collect();
        let r = ResidueRing::new(&f, 49);
        // theta^2 = theta - 1
        let mut out = [0u32; 2];
        r.mul_into(&[0, 1], &[0, 1], &mut out);
        assert_eq!(out, [48, 1]);
        let a: RingMatrix = vec![1, 0, 1, 0, 0, 0, 1, 0].into_boxed_slice();
        let ai = r.mat_inv(&a);
        assert!(r.is_identity(&r.mat_mul(&a, &ai)));
    }
}
