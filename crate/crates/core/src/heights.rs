//! Weil heights `H(x) = prod_v max(1, |x|_v)` of field elements and of 2x2
//! matrices (per-place maximum over the entries), with the normalized
//! absolute values `|x|_v = |sigma_v(x)|^{d_v}` and `|x|_P = Nr(P)^{-v_P(x)}`.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{format_rat, prime_divisors};
use crate::arith::{BallReal, BallSummary, BigRat, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::group::GroupMatrix;
use crate::number_field::{FieldElement, NumberField};

#[derive(Clone, Debug)]
pub struct HeightValue {
    /// Product over finite places, exact.
    pub finite_part: BigRat,
    /// Product over archimedean places, a ball `>= 1`.
    pub arch_part: BallReal,
    pub total: BallReal,
    /// The height as an exact rational, known when there is a single
    /// archimedean place (then `|x|_v = |Nm(x)|`).
    pub exact: Option<BigRat>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeightSummary {
    pub finite_part: String,
    pub arch_part: BallSummary,
    pub total: BallSummary,
    pub exact: Option<String>,
}

impl HeightValue {
    fn new(finite_part: BigRat, arch_part: BallReal, arch_exact: Option<BigRat>) -> HeightValue {
        let total = arch_part.mul(&BallReal::from_rat(&finite_part, arch_part.prec()));
        let exact = arch_exact.map(|a| a * &finite_part);
        HeightValue {
            finite_part,
            arch_part,
            total,
            exact,
        }
    }

    pub fn summary(&self) -> HeightSummary {
        HeightSummary {
            finite_part: format_rat(&self.finite_part),
            arch_part: (&self.arch_part).into(),
            total: (&self.total).into(),
            exact: self.exact.as_ref().map(format_rat),
        }
    }
}

fn one_ball(prec: u32) -> BallReal {
    BallReal::one(prec)
}

/// Primes dividing a denominator of any of the given elements.
fn denominator_primes<'a>(xs: impl IntoIterator<Item = &'a FieldElement>) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for x in xs {
        let d = x.denominator();
        if !d.is_one() {
            out.extend(prime_divisors(&d));
        }
    }
    out
}

/// `H(x)` at `prec` bits; `H(0) = 1`. Only primes dividing the denominator of
/// `x` contribute to the finite part.
pub fn height_element(field: &NumberField, x: &FieldElement, prec: u32) -> Result<HeightValue> {
    height_of_entries(field, std::slice::from_ref(x), prec)
}

/// `H(M) = prod_v max(1, max_ij |m_ij|_v)`.
pub fn height_matrix(field: &NumberField, m: &GroupMatrix, prec: u32) -> Result<HeightValue> {
    height_of_entries(field, m.entries(), prec)
}

fn height_of_entries(field: &NumberField, xs: &[FieldElement], prec: u32) -> Result<HeightValue> {
    let places = field.places_at(prec)?;
    let mut arch = one_ball(prec);
    let mut arch_exact = None;
    if places.len() == 1 {
        let a = xs
            .iter()
            .map(|x| field.norm(x).abs())
            .fold(BigRat::one(), |m, n| if n > m { n } else { m });
        arch = BallReal::from_rat(&a, prec);
        arch_exact = Some(a);
    }
    for v in places.iter().filter(|_| arch_exact.is_none()) {
        let local = xs
            .iter()
            .filter(|x| !x.is_zero())
            .fold(one_ball(prec), |acc, x| acc.max(&v.abs_value(x)));
        arch = arch.mul(&local);
    }
    let mut finite = BigRat::one();
    for p in denominator_primes(xs) {
        for pr in field.primes_above(p)?.iter() {
            // max over entries of max(1, Nr(P)^{-v}) = Nr(P)^{max(0, -min v)}
            let min_v = xs
                .iter()
                .filter_map(|x| pr.valuation(field, x).finite())
                .min()
                .unwrap_or(0);
            if min_v < 0 {
                finite *= BigRat::from_integer(pr.norm().pow((-min_v) as u32));
            }
        }
    }
    Ok(HeightValue::new(finite, arch, arch_exact))
}

/// Outcome of a certified inequality `lhs <= rhs`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub lhs: BallSummary,
    pub rhs: BallSummary,
    pub holds: bool,
    /// Precision (bits) at which the inequality was decided.
    pub precision: u32,
    /// Decided in exact rational arithmetic.
    pub exact: bool,
}

/// Decides `lhs <= rhs` rigorously, doubling precision up to `cap`: `Ok` only
/// when the ball bounds prove it, `Falsified` when they prove the opposite.
pub(crate) fn certify_le(
    what: &str,
    initial: u32,
    cap: u32,
    mut sides: impl FnMut(u32) -> Result<(BallReal, BallReal)>,
) -> Result<InequalityCheck> {
    let mut prec = initial;
    loop {
        let (lhs, rhs) = sides(prec)?;
        if lhs.upper() <= rhs.lower() {
            return Ok(InequalityCheck {
                lhs: (&lhs).into(),
                rhs: (&rhs).into(),
                holds: true,
                precision: prec,
                exact: false,
            });
        }
        if lhs.lower() > rhs.upper() {
            return Err(Error::Falsified(format!(
                "{what}: {lhs} > {rhs}"
            )));
        }
        if prec >= cap {
            return Err(Error::PrecisionExhausted {
                what: what.to_string(),
                cap,
            });
        }
        prec = (prec * 2).min(cap);
    }
}

/// Decides `lhs <= rhs` exactly; `Falsified` when it is false.
pub(crate) fn decide_exact(what: &str, lhs: &BigRat, rhs: &BigRat, prec: u32) -> Result<InequalityCheck> {
    if lhs > rhs {
        return Err(Error::Falsified(format!("{what}: {} > {}", format_rat(lhs), format_rat(rhs))));
    }
    Ok(InequalityCheck {
        lhs: (&BallReal::from_rat(lhs, prec)).into(),
        rhs: (&BallReal::from_rat(rhs, prec)).into(),
        holds: true,
        precision: prec,
        exact: true,
    })
}

fn four_pow_exact(field: &NumberField) -> BigRat {
    BigRat::from_integer(num_bigint::BigInt::from(4).pow(field.num_places() as u32))
}

fn four_pow(field: &NumberField, prec: u32) -> BallReal {
    BallReal::exact(Dyadic::pow2(2 * field.num_places() as i64), prec)
}

/// `H(x + y) <= 4^{#S_inf} H(x) H(y)`.
pub fn check_sum_rule(
    field: &NumberField,
    x: &FieldElement,
    y: &FieldElement,
    initial: u32,
    cap: u32,
) -> Result<InequalityCheck> {
    let s = x.add(y);
    let (hs, hx, hy) = (
        height_element(field, &s, initial)?,
        height_element(field, x, initial)?,
        height_element(field, y, initial)?,
    );
    if let (Some(a), Some(b), Some(c)) = (&hs.exact, &hx.exact, &hy.exact) {
        return decide_exact("sum rule", a, &(four_pow_exact(field) * b * c), initial);
    }
    certify_le("sum rule", initial, cap, |prec| {
        let lhs = height_element(field, &s, prec)?.total;
        let hx = height_element(field, x, prec)?.total;
        let hy = height_element(field, y, prec)?.total;
        Ok((lhs, four_pow(field, prec).mul(&hx).mul(&hy)))
    })
}

/// `H(MN) <= 4^{#S_inf} H(M) H(N)`.
pub fn check_submultiplicative(
    field: &NumberField,
    m: &GroupMatrix,
    n: &GroupMatrix,
    initial: u32,
    cap: u32,
) -> Result<InequalityCheck> {
    let mn = m.mul(field, n);
    check_submultiplicative_with_product(field, m, n, &mn, initial, cap)
}

/// As [`check_submultiplicative`] with the product `MN` supplied by the caller.
pub fn check_submultiplicative_with_product(
    field: &NumberField,
    m: &GroupMatrix,
    n: &GroupMatrix,
    mn: &GroupMatrix,
    initial: u32,
    cap: u32,
) -> Result<InequalityCheck> {
    let what = "H(MN) <= 4^#S_inf H(M) H(N)";
    let (hp, hm, hn) = (
        height_matrix(field, mn, initial)?,
        height_matrix(field, m, initial)?,
        height_matrix(field, n, initial)?,
    );
    if let (Some(a), Some(b), Some(c)) = (&hp.exact, &hm.exact, &hn.exact) {
        return decide_exact(what, a, &(four_pow_exact(field) * b * c), initial);
    }
    certify_le(what, initial, cap, |prec| {
        let lhs = height_matrix(field, mn, prec)?.total;
        let hm = height_matrix(field, m, prec)?.total;
        let hn = height_matrix(field, n, prec)?.total;
        Ok((lhs, four_pow(field, prec).mul(&hm).mul(&hn)))
    })
}

/// Product over every prime `P` dividing `p` for `p` in `primes` of `|x|_P`,
/// exactly. Used for the finite half of the product formula.
pub fn finite_abs_product(field: &NumberField, x: &FieldElement, primes: &[u64]) -> Result<BigRat> {
    if x.is_zero() {
        return Err(Error::Precondition("product formula needs x != 0".into()));
    }
    let mut acc = BigRat::one();
    for &p in primes {
        for pr in field.primes_above(p)?.iter() {
            acc *= pr.abs_value(field, x).expect("nonzero");
        }
    }
    Ok(acc)
}

/// Product over archimedean places of `|x|_v`, a ball containing `|Nm(x)|`.
pub fn arch_abs_product(field: &NumberField, x: &FieldElement, prec: u32) -> Result<BallReal> {
    let places = field.places_at(prec)?;
    Ok(places
        .iter()
        .fold(one_ball(prec), |acc, v| acc.mul(&v.abs_value(x))))
}

/// Primes at which a nonzero `x` can have nonzero valuation: divisors of the
/// numerator norm and of the denominator.
pub fn support_primes(field: &NumberField, x: &FieldElement) -> BTreeSet<u64> {
    let (y, d) = x.integral_split();
    let yy = field.element(y.into_iter().map(BigRat::from_integer).collect());
    let nm = field.norm(&yy).to_integer();
    let mut out: BTreeSet<u64> = BTreeSet::new();
    if !nm.is_zero() {
        out.extend(prime_divisors(&nm));
    }
    if !d.is_one() {
        out.extend(prime_divisors(&d));
    }
    out
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Claim2Tally {
    pub pairs: usize,
    /// `(i, j, message)` for pairs where the inequality was proved false.
    pub failures: Vec<(usize, usize, String)>,
    /// Pairs left undecided at the precision cap.
    pub inconclusive: usize,
}

impl Claim2Tally {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.inconclusive == 0
    }
}

/// `H(MN) <= 4^{#S_inf} H(M) H(N)` over every ordered pair of `elements`.
pub fn claim2_over_set(field: &NumberField, elements: &[GroupMatrix], precision: Precision) -> Result<Claim2Tally> {
    let prec = precision.initial;
    let four = four_pow(field, prec);
    let heights: Vec<BallReal> = elements
        .iter()
        .map(|m| height_matrix(field, m, prec).map(|h| h.total))
        .collect::<Result<_>>()?;
    let rows: Vec<Claim2Tally> = (0..elements.len())
        .into_par_iter()
        .map(|i| -> Result<Claim2Tally> {
            let mut t = Claim2Tally::default();
            for j in 0..elements.len() {
                t.pairs += 1;
                let mn = elements[i].mul(field, &elements[j]);
                let lhs = height_matrix(field, &mn, prec)?.total;
                if lhs.upper() <= four.mul(&heights[i]).mul(&heights[j]).lower() {
                    continue;
                }
                match check_submultiplicative_with_product(field, &elements[i], &elements[j], &mn, prec, precision.cap) {
                    Ok(_) => {}
                    Err(Error::Falsified(msg)) => t.failures.push((i, j, msg)),
                    Err(Error::PrecisionExhausted { .. }) => t.inconclusive += 1,
                    Err(e) => return Err(e),
                }
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().fold(Claim2Tally::default(), |mut acc, t| {
        acc.pairs += t.pairs;
        acc.failures.extend(t.failures);
        acc.inconclusive += t.inconclusive;
        acc
    }))
}
