//! Independent oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use freerank::group::{load_group, GroupSpec};

pub const SANOV_JSON: &str = r#"{
  "name": "Sanov subgroup",
  "free": true,
  "field": { "min_poly": [-1, 1] },
  "generators": {
    "x": [[["1"], ["2"]], [["0"], ["1"]]],
    "y": [[["1"], ["0"]], [["2"], ["1"]]]
  }
}"#;

/// Free group of rank 2 generated by `[[1,2],[0,1]]` and `[[1,0],[2,1]]`.
pub fn sanov() -> GroupSpec {
    load_group(SANOV_JSON).unwrap()
}

/// Diagonal entries of an integer diagonalization of `rows` (unimodular row
/// and column operations): unit pivots are eliminated sparsely first, the
/// remainder by dense gcd elimination over `BigInt`.
pub fn smith_diagonal(rows: &[Vec<(u32, i64)>], ncols: usize) -> Vec<BigInt> {
    let mut m: Vec<BTreeMap<u32, BigInt>> = rows
        .iter()
        .map(|r| {
            let mut row = BTreeMap::new();
            for &(c, v) in r {
                let e: &mut BigInt = row.entry(c).or_default();
                *e += v;
            }
            row.retain(|_, v| !v.is_zero());
            row
        })
        .collect();
    let mut diag = Vec::new();
    let mut alive = vec![true; m.len()];
    let mut col_index: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (r, row) in m.iter().enumerate() {
        for &c in row.keys() {
            col_index[c as usize].push(r);
        }
    }
    loop {
        let mut found = None;
        'scan: for (r, row) in m.iter().enumerate() {
            if !alive[r] {
                continue;
            }
            for (&c, v) in row {
                if v.abs() == BigInt::from(1) {
                    found = Some((r, c));
                    break 'scan;
                }
            }
        }
        let Some((r, c)) = found else { break };
        alive[r] = false;
        let pivot = std::mem::take(&mut m[r]);
        let pv = pivot[&c].clone();
        let others = std::mem::take(&mut col_index[c as usize]);
        for r2 in others {
            if !alive[r2] {
                continue;
            }
            let Some(f) = m[r2].get(&c).cloned() else { continue };
            // row2 -= (f / pv) * pivot, exact since pv = +-1
            let f = f * &pv;
            for (&cc, v) in &pivot {
                let e = m[r2].entry(cc).or_default();
                *e -= &f * v;
                if e.is_zero() {
                    m[r2].remove(&cc);
                } else {
                    col_index[cc as usize].push(r2);
                }
            }
        }
        diag.push(BigInt::from(1));
    }
    // dense core
    let live: Vec<&BTreeMap<u32, BigInt>> = m
        .iter()
        .zip(&alive)
        .filter(|(row, &a)| a && !row.is_empty())
        .map(|(row, _)| row)
        .collect();
    let mut cols: Vec<u32> = live.iter().flat_map(|r| r.keys().copied()).collect();
    cols.sort_unstable();
    cols.dedup();
    let pos: BTreeMap<u32, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut a: Vec<Vec<BigInt>> = live
        .iter()
        .map(|r| {
            let mut v = vec![BigInt::zero(); cols.len()];
            for (c, x) in r.iter() {
                v[pos[c]] = x.clone();
            }
            v
        })
        .collect();
    diag.extend(dense_diagonal(&mut a));
    diag
}

fn dense_diagonal(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // bring the smallest nonzero entry of the trailing block to (t, t),
        // reduce its row and column by it, and repeat until both are clear
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            let mut clear = true;
            for i in t + 1..nr {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x -= &q * y;
                    }
                    clear &= a[i][t].is_zero();
                }
            }
            for j in t + 1..nc {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut() {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clear &= a[t][j].is_zero();
                }
            }
            if clear {
                break;
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Rank modulo `p` read off an integer diagonalization.
pub fn smith_rank_mod_p(rows: &[Vec<(u32, i64)>], ncols: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    smith_diagonal(rows, ncols)
        .iter()
        .filter(|d| !(*d % &pb).is_zero())
        .count()
}

/// Dense Gaussian elimination modulo `p`.
pub fn dense_rank_mod_p(rows: &[Vec<(u32, i64)>], ncols: usize, p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0i64; ncols];
            for &(c, x) in r {
                v[c as usize] = (v[c as usize] + x).rem_euclid(p);
            }
            v
        })
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, r);
        let inv = (0..p).find(|&x| x * a[rank][c] % p == 1).unwrap();
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `Z[x] / (f, m)` for a monic `f`, elements as coefficient vectors.
#[derive(Clone)]
pub struct NaiveRing {
    f: Vec<i64>,
    m: i64,
}

type NaiveMat = [Vec<i64>; 4];

impl NaiveRing {
    pub fn new(min_poly: &[i64], m: i64) -> NaiveRing {
        NaiveRing { f: min_poly.to_vec(), m }
    }

    fn n(&self) -> usize {
        self.f.len() - 1
    }

    fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.n();
        let mut prod = vec![0i128; 2 * n];
        for (i, &a) in x.iter().enumerate() {
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] += a as i128 * b as i128;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k] % self.m as i128;
            prod[k] = 0;
            for (j, &fj) in self.f[..n].iter().enumerate() {
                prod[k - n + j] -= c * fj as i128;
            }
        }
        prod[..n].iter().map(|&v| v.rem_euclid(self.m as i128) as i64).collect()
    }

    fn add(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        x.iter().zip(y).map(|(a, b)| (a + b).rem_euclid(self.m)).collect()
    }

    fn mat_mul(&self, a: &NaiveMat, b: &NaiveMat) -> NaiveMat {
        [
            self.add(&self.mul(&a[0], &b[0]), &self.mul(&a[1], &b[2])),
            self.add(&self.mul(&a[0], &b[1]), &self.mul(&a[1], &b[3])),
            self.add(&self.mul(&a[2], &b[0]), &self.mul(&a[3], &b[2])),
            self.add(&self.mul(&a[2], &b[1]), &self.mul(&a[3], &b[3])),
        ]
    }

    /// Reduces an integral group matrix.
    pub fn reduce(&self, g: &freerank::group::GroupMatrix) -> NaiveMat {
        let red = |x: &freerank::number_field::FieldElement| -> Vec<i64> {
            let mut v: Vec<i64> = x
                .coeffs()
                .iter()
                .map(|c| {
                    assert!(c.is_integer(), "oracle handles integral matrices only");
                    (c.to_integer() % BigInt::from(self.m)).to_i64().unwrap().rem_euclid(self.m)
                })
                .collect();
            v.resize(self.n(), 0);
            v
        };
        let e = g.entries();
        [red(&e[0]), red(&e[1]), red(&e[2]), red(&e[3])]
    }

    /// Order of the subgroup generated by `gens`, by breadth-first closure.
    pub fn closure_order(&self, gens: &[NaiveMat]) -> usize {
        let one: Vec<i64> = {
            let mut v = vec![0; self.n()];
            v[0] = 1 % self.m;
            v
        };
        let zero = vec![0; self.n()];
        let id: NaiveMat = [one.clone(), zero.clone(), zero, one];
        let mut seen: HashSet<NaiveMat> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mat_mul(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.len()
    }
}

/// `n_i` for an integral group by the naive closure.
pub fn naive_quotient_order(spec: &GroupSpec, p: u64, i: u32) -> usize {
    let coeffs: Vec<i64> = spec
        .field()
        .min_poly_coeffs()
        .iter()
        .map(|c| c.to_i64().unwrap())
        .collect();
    let ring = NaiveRing::new(&coeffs, (p as i64).pow(i));
    let gens: Vec<NaiveMat> = spec.generators().iter().map(|g| ring.reduce(g)).collect();
    ring.closure_order(&gens)
}
