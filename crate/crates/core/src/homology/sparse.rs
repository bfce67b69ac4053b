//! Rank over `F_p` of a sparse matrix by Gaussian elimination, choosing at
//! each step the lightest remaining row and, within it, the column with the
//! fewest entries.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith::rational::mod_inverse;

/// Rows are sorted `(column, value)` lists with values in `1..p`.
pub type SparseRow = Vec<(u32, u32)>;

/// Reduces integer rows modulo `p`, merging repeated columns and dropping zeros.
pub fn rows_mod_p(rows: &[Vec<(u32, i64)>], p: u64) -> Vec<SparseRow> {
    rows.iter()
        .map(|r| {
            let mut r: Vec<(u32, u64)> = r.iter().map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64)).collect();
            r.sort_unstable_by_key(|x| x.0);
            let mut out: SparseRow = Vec::with_capacity(r.len());
            for (c, v) in r {
                match out.last_mut() {
                    Some(last) if last.0 == c => last.1 = ((last.1 as u64 + v) % p) as u32,
                    _ => out.push((c, v as u32)),
                }
            }
            out.retain(|x| x.1 != 0);
            out
        })
        .collect()
}

/// `row2 - f * row`, modulo `p`.
fn axpy(row2: &[(u32, u32)], f: u64, row: &[(u32, u32)], p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(row2.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < row2.len() || j < row.len() {
        let ci = row2.get(i).map(|x| x.0).unwrap_or(u32::MAX);
        let cj = row.get(j).map(|x| x.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push(row2[i]);
            i += 1;
        } else if cj < ci {
            let v = (p - f * row[j].1 as u64 % p) % p;
            if v != 0 {
                out.push((cj, v as u32));
            }
            j += 1;
        } else {
            let v = (row2[i].1 as u64 + p - f * row[j].1 as u64 % p) % p;
            if v != 0 {
                out.push((ci, v as u32));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank_mod_p(mut rows: Vec<SparseRow>, ncols: usize, p: u64) -> usize {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    // exact number of active rows meeting each column
    let mut col_count = vec![0usize; ncols];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut active = vec![true; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = rows
        .iter()
        .enumerate()
        .map(|(r, row)| Reverse((row.len(), r as u32)))
        .collect();
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        let r = r as usize;
        if !active[r] || rows[r].len() != len {
            continue;
        }
        active[r] = false;
        if len == 0 {
            continue;
        }
        let &(c, v) = rows[r]
            .iter()
            .min_by_key(|&&(c, _)| (col_count[c as usize], c))
            .expect("nonempty row");
        let inv = mod_inverse(v as u64, p).expect("nonzero mod p");
        let pivot = std::mem::take(&mut rows[r]);
        for &(cc, _) in &pivot {
            col_count[cc as usize] -= 1;
        }
        let mut others = std::mem::take(&mut col_rows[c as usize]);
        others.sort_unstable();
        others.dedup();
        for r2 in others {
            let r2 = r2 as usize;
            if !active[r2] {
                continue;
            }
            let Ok(pos) = rows[r2].binary_search_by_key(&c, |x| x.0) else {
                continue;
            };
            let f = rows[r2][pos].1 as u64 * inv % p;
            let new = axpy(&rows[r2], f, &pivot, p);
            let old = std::mem::replace(&mut rows[r2], new);
            let new = &rows[r2];
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < new.len() {
                let ci = old.get(i).map(|x| x.0).unwrap_or(u32::MAX);
                let cj = new.get(j).map(|x| x.0).unwrap_or(u32::MAX);
                if ci < cj {
                    col_count[ci as usize] -= 1;
                    i += 1;
                } else if cj < ci {
                    col_count[cj as usize] += 1;
                    col_rows[cj as usize].push(r2 as u32);
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
            heap.push(Reverse((new.len(), r2 as u32)));
        }
        rank += 1;
    }
    rank
}
