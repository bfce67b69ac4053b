//! Full-rank sublattices of `Z^n` in Hermite normal form, used for powers of
//! prime ideals of `Z[theta]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Upper-triangular basis: row `i` has a positive pivot in column `i` and
/// zeros to its left; entries above each pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    rows: Vec<Vec<BigInt>>,
}

impl IdealLattice {
    /// Lattice spanned by `gens` together with `modulus * Z^n`. Generators are
    /// reduced modulo `modulus` first, which does not change the span.
    pub fn from_generators(n: usize, gens: &[Vec<BigInt>], modulus: &BigInt) -> IdealLattice {
        let mut work: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|c| c.mod_floor(modulus)).collect::<Vec<_>>())
            .filter(|g: &Vec<BigInt>| g.iter().any(|c| !c.is_zero()))
            .collect();
        for j in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[j] = modulus.clone();
            work.push(e);
        }
        let mut rows = Vec::with_capacity(n);
        for col in 0..n {
            // Euclid on column `col` among the remaining rows
            loop {
                let mut nz: Vec<usize> = (0..work.len()).filter(|&r| !work[r][col].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by(|&a, &b| work[a][col].abs().cmp(&work[b][col].abs()));
                let piv = nz[0];
                let pivot_row = work[piv].clone();
                for &r in &nz[1..] {
                    let q = work[r][col].div_floor(&pivot_row[col]);
                    for k in col..n {
                        let t = &q * &pivot_row[k];
                        work[r][k] -= t;
                        work[r][k] = work[r][k].mod_floor(modulus);
                    }
                }
                work.retain(|row| row.iter().any(|c| !c.is_zero()));
            }
            let idx = (0..work.len())
                .find(|&r| !work[r][col].is_zero())
                .expect("full-rank lattice");
            let mut row = work.swap_remove(idx);
            if row[col].is_negative() {
                for c in row.iter_mut() {
                    *c = -&*c;
                }
            }
            rows.push(row);
        }
        // reduce above the pivots
        for i in (0..n).rev() {
            for r in 0..i {
                let q = rows[r][i].div_floor(&rows[i][i]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in head[r][i..n].iter_mut().zip(&tail[0][i..n]) {
                        *x -= &q * y;
                    }
                }
            }
        }
        IdealLattice { rows }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Index `[Z^n : L]`, the product of the pivots.
    pub fn index(&self) -> BigInt {
        self.rows.iter().enumerate().map(|(i, r)| r[i].clone()).product()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut x = v.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let (q, r) = x[i].div_mod_floor(&row[i]);
            if !r.is_zero() {
                return false;
            }
            for k in i..x.len() {
                let t = &q * &row[k];
                x[k] -= t;
            }
        }
        true
    }
}
