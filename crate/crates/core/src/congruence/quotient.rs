//! The finite quotient `Q_i = Gamma / Gamma_i` as the subgroup of
//! `SL_2(Z[theta] / p^i)` generated by the generator images.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ring::RingMatrix;
use super::{CongruenceLevel, LevelId};
use crate::error::{Error, Result};
use crate::group::{GroupMatrix, GroupSpec};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct QuotientOptions {
    /// Maximum number of elements stored by the closure.
    pub budget: usize,
    /// Work in the image in `PSL_2`, identifying `X` with `-X`.
    pub projective: bool,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            budget: 1_000_000,
            projective: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    level: LevelId,
    projective: bool,
    elements: Vec<RingMatrix>,
    index: HashMap<RingMatrix, u32>,
    gen_images: Vec<RingMatrix>,
    // action[g][c] = index of element c times generator g
    action: Vec<Vec<u32>>,
    // discovering (element, generator) for every element but the identity
    parent: Vec<(u32, u32)>,
}

impl FiniteQuotient {
    pub fn level(&self) -> LevelId {
        self.level
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    /// `n_i = |Q_i|`.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in discovery order; index 0 is the identity.
    pub fn elements(&self) -> &[RingMatrix] {
        &self.elements
    }

    pub fn index_of(&self, x: &[u32]) -> Option<u32> {
        self.index.get(x).copied()
    }

    pub fn generator_images(&self) -> &[RingMatrix] {
        &self.gen_images
    }

    pub fn num_generators(&self) -> usize {
        self.gen_images.len()
    }

    /// Right multiplication by generator `g` as a permutation of element indices.
    pub fn action(&self, g: usize) -> &[u32] {
        &self.action[g]
    }

    /// `(parent, generator)` through which element `c >= 1` was first reached.
    pub fn discovery(&self, c: usize) -> (u32, u32) {
        self.parent[c]
    }

    /// Index of the reduction of `g`, which lies in `Q_i` for every `g` in the group.
    pub fn locate(&self, level: &CongruenceLevel, g: &GroupMatrix) -> Result<Option<u32>> {
        let mut r = level.ring().reduce(g, level.p())?;
        if self.projective {
            r = level.ring().projective_normal(r);
        }
        Ok(self.index_of(&r))
    }
}

/// Closure of the generator images under right multiplication.
pub fn finite_quotient(
    spec: &GroupSpec,
    level: &CongruenceLevel,
    opts: QuotientOptions,
) -> Result<FiniteQuotient> {
    let ring = level.ring();
    let norm = |x: RingMatrix| if opts.projective { ring.projective_normal(x) } else { x };
    let gen_images: Vec<RingMatrix> = spec
        .generators()
        .iter()
        .map(|g| ring.reduce(g, level.p()).map(norm))
        .collect::<Result<_>>()?;
    let id = norm(ring.identity());
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0u32)]);
    let mut parent = vec![(u32::MAX, u32::MAX)];
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); gen_images.len()];
    let mut head = 0;
    while head < elements.len() {
        for (gi, s) in gen_images.iter().enumerate() {
            let prod = norm(ring.mat_mul(&elements[head], s));
            let k = match index.get(&prod) {
                Some(&k) => k,
                None => {
                    if elements.len() >= opts.budget {
                        return Err(Error::BudgetExceeded {
                            what: format!("quotient closure at (p={}, i={})", level.p(), level.i()),
                            budget: opts.budget,
                            partial: elements.len(),
                        });
                    }
                    let k = elements.len() as u32;
                    index.insert(prod.clone(), k);
                    elements.push(prod);
                    parent.push((head as u32, gi as u32));
                    k
                }
            };
            action[gi].push(k);
        }
        head += 1;
    }
    Ok(FiniteQuotient {
        level: level.id(),
        projective: opts.projective,
        elements,
        index,
        gen_images,
        action,
        parent,
    })
}

/// `|SL_2(Z[theta] / p^i)| = prod_P q^{3 e i - 2} (q^2 - 1)`, `q = Nr(P)`;
/// `None` on overflow.
pub fn ambient_order(level: &CongruenceLevel) -> Option<u128> {
    if level.i() == 0 {
        return Some(1);
    }
    let mut acc: u128 = 1;
    for pr in level.primes_above_p() {
        let q = (level.p() as u128).checked_pow(pr.f())?;
        let k = pr.e() * level.i();
        let local = q.checked_pow(3 * k - 2)?.checked_mul(q.checked_mul(q)? - 1)?;
        acc = acc.checked_mul(local)?;
    }
    Some(acc)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LiftedOrder {
    pub order: u128,
    /// `F_p`-dimension of `Gamma_i / Gamma_{i+1}`.
    pub rank: u32,
    pub from: LevelId,
}

/// `n_{i+1}` from the closure at level `i >= 1`.
///
/// `Gamma_i / Gamma_{i+1}` embeds in the elementary abelian group
/// `(I + p^i M) / (I + p^{i+1} M)`, so its order is `p^r` with `r` the
/// `F_p`-rank of the images `(X - I) / p^i` of the Schreier generators
/// `X = t_c s t_{cs}^{-1}`, computed modulo `p^{i+1}`.
pub fn lifted_order(spec: &GroupSpec, q: &FiniteQuotient, level: &CongruenceLevel) -> Result<LiftedOrder> {
    if level.i() == 0 || q.is_projective() || q.level() != level.id() {
        return Err(Error::Precondition(
            "lifting needs the SL_2 closure at a level i >= 1".into(),
        ));
    }
    let p = level.p();
    let up = level.next()?;
    let ring = up.ring();
    let n = ring.degree();
    let gens: Vec<RingMatrix> = spec
        .generators()
        .iter()
        .map(|g| ring.reduce(g, p))
        .collect::<Result<_>>()?;
    let mut lifts: Vec<RingMatrix> = Vec::with_capacity(q.order());
    lifts.push(ring.identity());
    for c in 1..q.order() {
        let (par, g) = q.discovery(c);
        lifts.push(ring.mat_mul(&lifts[par as usize], &gens[g as usize]));
    }
    let pi = ring.modulus() / p;
    let max_rank = 3 * n;
    // echelon basis over F_p keyed by pivot position
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    'outer: for c in 0..q.order() {
        for (g, s) in gens.iter().enumerate() {
            let target = q.action(g)[c] as usize;
            let x = ring.mat_mul(&ring.mat_mul(&lifts[c], s), &ring.mat_inv(&lifts[target]));
            let id = ring.identity();
            let mut v: Vec<u64> = x
                .iter()
                .zip(id.iter())
                .map(|(&a, &b)| {
                    let d = (a as u64 + ring.modulus() - b as u64) % ring.modulus();
                    debug_assert_eq!(d % pi, 0);
                    (d / pi) % p
                })
                .collect();
            for (piv, row) in &basis {
                let f = v[*piv];
                if f != 0 {
                    for k in 0..v.len() {
                        v[k] = (v[k] + (p - f) * row[k]) % p;
                    }
                }
            }
            if let Some(piv) = v.iter().position(|&x| x != 0) {
                let inv = crate::arith::rational::mod_inverse(v[piv], p).expect("prime field");
                for x in v.iter_mut() {
                    *x = *x * inv % p;
                }
                // keep the basis fully reduced so later pivots see zeros
                for (_, row) in basis.iter_mut() {
                    let f = row[piv];
                    if f != 0 {
                        for k in 0..row.len() {
                            row[k] = (row[k] + (p - f) * v[k]) % p;
                        }
                    }
                }
                basis.push((piv, v));
                if basis.len() == max_rank {
                    break 'outer;
                }
            }
        }
    }
    let rank = basis.len() as u32;
    let order = (p as u128)
        .checked_pow(rank)
        .and_then(|f| f.checked_mul(q.order() as u128))
        .ok_or_else(|| Error::Precondition("lifted order overflows u128".into()))?;
    Ok(LiftedOrder {
        order,
        rank,
        from: level.id(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum OrderMethod {
    Closure,
    Lift { from_i: u32, rank: u32 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientOrder {
    pub order: u128,
    pub method: OrderMethod,
    pub ambient: Option<u128>,
    pub divides_ambient: Option<bool>,
}

/// `n_i` by closure when it fits the budget, otherwise by one lifting step
/// from level `i - 1`.
pub fn quotient_order(spec: &GroupSpec, level: &CongruenceLevel, opts: QuotientOptions) -> Result<QuotientOrder> {
    let ambient = ambient_order(level);
    let finish = |order: u128, method| QuotientOrder {
        order,
        method,
        ambient,
        divides_ambient: ambient.map(|a| a % order == 0),
    };
    match finite_quotient(spec, level, opts) {
        Ok(q) => Ok(finish(q.order() as u128, OrderMethod::Closure)),
        Err(Error::BudgetExceeded { .. }) if level.i() >= 2 && !opts.projective => {
            let below = CongruenceLevel::new(spec, level.p(), level.i() - 1)?;
            let q = finite_quotient(spec, &below, opts)?;
            let l = lifted_order(spec, &q, &below)?;
            Ok(finish(
                l.order,
                OrderMethod::Lift {
                    from_i: below.i(),
                    rank: l.rank,
                },
            ))
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn ambient_orders() {
        let g = catalog::figure_eight();
        let l = CongruenceLevel::new(&g, 7, 1).unwrap();
        assert_eq!(ambient_order(&l), Some(336 * 336));
        let l = CongruenceLevel::new(&g, 3, 1).unwrap();
        assert_eq!(ambient_order(&l), Some(648));
        let l = CongruenceLevel::new(&g, 5, 1).unwrap();
        assert_eq!(ambient_order(&l), Some(15600));
    }

    #[test]
    fn small_quotients_divide_ambient() {
        let g = catalog::figure_eight();
        for (p, i) in [(3, 1), (5, 1), (2, 2)] {
            let l = CongruenceLevel::new(&g, p, i).unwrap();
            let q = finite_quotient(&g, &l, QuotientOptions::default()).unwrap();
            assert_eq!(ambient_order(&l).unwrap() % q.order() as u128, 0, "({p},{i})");
            for gi in 0..q.num_generators() {
                let mut seen = vec![false; q.order()];
                for &t in q.action(gi) {
                    assert!(!std::mem::replace(&mut seen[t as usize], true));
                }
            }
        }
    }

    #[test]
    fn lift_matches_closure_at_3_2() {
        let g = catalog::figure_eight();
        let l1 = CongruenceLevel::new(&g, 3, 1).unwrap();
        let l2 = CongruenceLevel::new(&g, 3, 2).unwrap();
        let q1 = finite_quotient(&g, &l1, QuotientOptions::default()).unwrap();
        let q2 = finite_quotient(&g, &l2, QuotientOptions::default()).unwrap();
        let lifted = lifted_order(&g, &q1, &l1).unwrap();
        assert_eq!(lifted.order, q2.order() as u128);
    }

    #[test]
    fn trivial_group_has_order_one() {
        let doc = r#"{"name":"triv","field":{"min_poly":[1,-1,1]},"generators":{}}"#;
        let g = crate::group::load_group(doc).unwrap();
        let l = CongruenceLevel::new(&g, 7, 1).unwrap();
        assert_eq!(finite_quotient(&g, &l, QuotientOptions::default()).unwrap().order(), 1);
    }
}
