//! `H_1(Gamma_i, F_p)` by Reidemeister-Schreier rewriting over the coset
//! table of `Gamma_i`, which is the right action of `Gamma` on `Q_i`.

mod sparse;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::congruence::{FiniteQuotient, LevelId};
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Letter};

pub use sparse::{rank_mod_p, rows_mod_p, SparseRow};

#[derive(Clone, Debug)]
pub struct CosetTable {
    level: LevelId,
    // forward[g][c] = c * g, backward[g][c] = c * g^-1
    forward: Vec<Vec<u32>>,
    backward: Vec<Vec<u32>>,
    // Schreier tree: parent coset and the letter leading from it
    tree: Vec<Option<(u32, Letter)>>,
    // column of the Schreier generator on the forward edge (g, c), if not a tree edge
    column: Vec<Vec<Option<u32>>>,
    num_columns: usize,
}

impl CosetTable {
    pub fn level(&self) -> LevelId {
        self.level
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.forward.len()
    }

    /// Coset reached from `c` by reading letter `l`.
    pub fn act(&self, c: u32, l: Letter) -> u32 {
        if l.is_inverse() {
            self.backward[l.gen()][c as usize]
        } else {
            self.forward[l.gen()][c as usize]
        }
    }

    pub fn tree_parent(&self, c: u32) -> Option<(u32, Letter)> {
        self.tree[c as usize]
    }

    /// Number of Schreier generators, `n (g - 1) + 1`.
    pub fn num_schreier_generators(&self) -> usize {
        self.num_columns
    }

    /// Every letter acts as a bijection and the tree reaches every coset.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        for g in 0..self.num_generators() {
            for c in 0..n {
                let f = self.forward[g][c] as usize;
                if f >= n || self.backward[g][f] as usize != c {
                    return Err(Error::InconsistentTable(format!("generator {g} at coset {c}")));
                }
            }
        }
        if (1..n).any(|c| self.tree[c].is_none()) {
            return Err(Error::InconsistentTable("Schreier tree does not span".into()));
        }
        Ok(())
    }
}

/// Coset table of `Gamma_i` with a Schreier tree grown breadth-first, trying
/// letters in `letter_order` (all letters in index order when empty).
pub fn coset_table(q: &FiniteQuotient, letter_order: &[Letter]) -> Result<CosetTable> {
    let n = q.order();
    let ng = q.num_generators();
    let forward: Vec<Vec<u32>> = (0..ng).map(|g| q.action(g).to_vec()).collect();
    let mut backward = vec![vec![u32::MAX; n]; ng];
    for g in 0..ng {
        for c in 0..n {
            backward[g][forward[g][c] as usize] = c as u32;
        }
    }
    let default: Vec<Letter> = (0..2 * ng as u32).map(Letter).collect();
    let order = if letter_order.is_empty() { &default[..] } else { letter_order };
    let mut tree = vec![None; n];
    let mut seen = vec![false; n];
    if n > 0 {
        seen[0] = true;
    }
    let mut queue = VecDeque::from([0u32]);
    while let Some(c) = queue.pop_front() {
        for &l in order {
            let t = if l.is_inverse() {
                backward[l.gen()][c as usize]
            } else {
                forward[l.gen()][c as usize]
            };
            if t as usize >= n {
                return Err(Error::InconsistentTable(format!("letter {} at coset {c}", l.0)));
            }
            if !seen[t as usize] {
                seen[t as usize] = true;
                tree[t as usize] = Some((c, l));
                queue.push_back(t);
            }
        }
    }
    let mut column = vec![vec![None; n]; ng];
    let mut next = 0u32;
    for c in 0..n {
        for (g, col) in column.iter_mut().enumerate() {
            let t = forward[g][c] as usize;
            let is_tree = tree[t] == Some((c as u32, Letter::new(g, false)))
                || tree[c] == Some((t as u32, Letter::new(g, true)));
            if !is_tree {
                col[c] = Some(next);
                next += 1;
            }
        }
    }
    let table = CosetTable {
        level: q.level(),
        forward,
        backward,
        tree,
        column,
        num_columns: next as usize,
    };
    table.validate()?;
    Ok(table)
}

/// Abelianized Reidemeister-Schreier relator matrix over the integers: one
/// row per (relator, coset).
pub fn relator_matrix(spec: &GroupSpec, table: &CosetTable, projective: bool) -> Result<Vec<Vec<(u32, i64)>>> {
    if !spec.has_presentation() {
        return Err(Error::PresentationRequired);
    }
    if !projective && spec.relator_signs().iter().any(|&s| s < 0) {
        return Err(Error::Precondition(
            "a relator evaluates to -I; use the PSL_2 quotient".into(),
        ));
    }
    let mut rows = Vec::with_capacity(spec.relators().len() * table.len());
    for w in spec.relators() {
        for start in 0..table.len() as u32 {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            let mut c = start;
            for &l in w.letters() {
                let g = l.gen();
                let (edge_from, next, sign) = if l.is_inverse() {
                    let t = table.backward[g][c as usize];
                    (t, t, -1)
                } else {
                    (c, table.forward[g][c as usize], 1)
                };
                if let Some(col) = table.column[g][edge_from as usize] {
                    *acc.entry(col).or_insert(0) += sign;
                }
                c = next;
            }
            if c != start {
                return Err(Error::InconsistentTable(format!(
                    "relator does not close at coset {start}"
                )));
            }
            rows.push(acc.into_iter().filter(|&(_, v)| v != 0).collect());
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomologyResult {
    pub level: LevelId,
    pub p: u64,
    /// `n_i`, the number of cosets.
    pub index: usize,
    pub schreier_generators: usize,
    pub relator_rows: usize,
    pub relator_cols: usize,
    pub rank: usize,
    pub dim_h1: usize,
}

/// `dim H_1(Gamma_i, F_p) = (n (g - 1) + 1) - rank_p(relator matrix)`.
pub fn dim_h1_mod_p(spec: &GroupSpec, table: &CosetTable, p: u64, projective: bool) -> Result<HomologyResult> {
    let rows = relator_matrix(spec, table, projective)?;
    let cols = table.num_schreier_generators();
    let rank = rank_mod_p(rows_mod_p(&rows, p), cols, p);
    Ok(HomologyResult {
        level: table.level(),
        p,
        index: table.len(),
        schreier_generators: cols,
        relator_rows: rows.len(),
        relator_cols: cols,
        rank,
        dim_h1: cols - rank,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrowthRecord {
    pub label: String,
    pub d_hat: f64,
    /// `dim_h1(i) / p^{(d_hat - 1) i}` per level.
    pub lambda_hat: Vec<(u32, f64)>,
    /// `dim_h1(i) / n_i^{5/6}`, with `n_i` standing in for the volume.
    pub volume_ratio: Vec<(u32, f64)>,
    pub stabilizing: bool,
}

/// Empirical growth constants of `dim H_1(Gamma_i, F_p)`.
pub fn ce_growth_report(results: &[HomologyResult], d_hat: Option<f64>) -> Result<GrowthRecord> {
    if results.len() < 2 {
        return Err(Error::TooFewLevels {
            need: 2,
            got: results.len(),
        });
    }
    let d_hat = d_hat.ok_or_else(|| Error::Precondition("growth report needs d_hat".into()))?;
    let lambda_hat: Vec<(u32, f64)> = results
        .iter()
        .map(|r| {
            let i = r.level.i;
            (i, r.dim_h1 as f64 / (r.p as f64).powf((d_hat - 1.0) * i as f64))
        })
        .collect();
    let volume_ratio = results
        .iter()
        .map(|r| (r.level.i, r.dim_h1 as f64 / (r.index as f64).powf(5.0 / 6.0)))
        .collect();
    let k = lambda_hat.len();
    let (a, b) = (lambda_hat[k - 2].1, lambda_hat[k - 1].1);
    let stabilizing = (a - b).abs() <= 0.1 * a.abs().max(b.abs());
    Ok(GrowthRecord {
        label: "empirical".to_string(),
        d_hat,
        lambda_hat,
        volume_ratio,
        stabilizing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::congruence::{finite_quotient, CongruenceLevel, QuotientOptions};

    #[test]
    fn index_one_figure_eight() {
        let g = catalog::figure_eight();
        for p in [3u64, 5, 7] {
            let l = CongruenceLevel::trivial(&g, p).unwrap();
            let q = finite_quotient(&g, &l, QuotientOptions::default()).unwrap();
            assert_eq!(q.order(), 1);
            let t = coset_table(&q, &[]).unwrap();
            let h = dim_h1_mod_p(&g, &t, p, false).unwrap();
            assert_eq!((h.schreier_generators, h.dim_h1), (2, 1));
        }
    }

    #[test]
    fn tree_choice_does_not_matter() {
        let g = catalog::figure_eight();
        let l = CongruenceLevel::new(&g, 3, 1).unwrap();
        let q = finite_quotient(&g, &l, QuotientOptions::default()).unwrap();
        let t1 = coset_table(&q, &[]).unwrap();
        let rev: Vec<Letter> = (0..4).rev().map(Letter).collect();
        let t2 = coset_table(&q, &rev).unwrap();
        let h1 = dim_h1_mod_p(&g, &t1, 3, false).unwrap();
        let h2 = dim_h1_mod_p(&g, &t2, 3, false).unwrap();
        assert_eq!(h1.dim_h1, h2.dim_h1);
        assert_eq!(h1.schreier_generators, q.order() + 1);
    }

    #[test]
    fn growth_report_needs_two_levels() {
        let r = HomologyResult {
            level: LevelId { p: 3, i: 1 },
            p: 3,
            index: 1,
            schreier_generators: 2,
            relator_rows: 1,
            relator_cols: 2,
            rank: 1,
            dim_h1: 1,
        };
        assert!(matches!(ce_growth_report(std::slice::from_ref(&r), Some(6.0)), Err(Error::TooFewLevels { .. })));
        let mut r2 = r.clone();
        r2.level.i = 2;
        r2.dim_h1 = 3usize.pow(5);
        let mut r1 = r;
        r1.dim_h1 = 1;
        let g = ce_growth_report(&[r1, r2], Some(6.0)).unwrap();
        assert!((g.lambda_hat[0].1 - 1.0 / 243.0).abs() < 1e-12);
    }
}
