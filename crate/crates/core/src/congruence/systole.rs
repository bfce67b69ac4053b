//! Word-length systoles of `Gamma_i`, the height lower bound for its members
//! and the resulting certified lower bound on the word systole.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CongruenceLevel, LevelId};
use crate::arith::rational::format_rat;
use crate::arith::{BallReal, BallSummary, BigRat, Dyadic, Precision};
use crate::error::{Error, Result};
use crate::group::{bfs_ball, BallEnumeration, GroupMatrix, GroupSpec};
use crate::heights::{certify_le, decide_exact, height_matrix, HeightSummary};

/// `C_3 p^{n i}` with `C_3 = 4^{-#S_inf}`, exactly.
fn claim3_target(level: &CongruenceLevel) -> BigRat {
    let field = level.field();
    let n = field.degree() as u32;
    let num = BigInt::from(level.p()).pow(n * level.i());
    let den = BigInt::from(4).pow(field.num_places() as u32);
    BigRat::new(num, den)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordBound {
    pub level: LevelId,
    /// Certified lower bound on `sys(Gamma_i, X)`.
    pub bound: u32,
    /// `C_3 p^{n i}` as an exact rational.
    pub target: String,
    /// `C_4 = 4^{#S_inf} max_{g in X} H(g)`.
    pub c4: BallSummary,
    /// `log(C_3 p^{n i}) / log C_4`, for display only.
    pub real_value: f64,
}

/// Smallest `k` with `C_4^k >= C_3 p^{n i}`, compared against an upper ball
/// bound for `C_4^k`; this never exceeds the true `ceil(log(C_3 p^{ni}) / log C_4)`.
pub fn certified_word_bound(spec: &GroupSpec, level: &CongruenceLevel, prec: u32) -> Result<WordBound> {
    let field = spec.field();
    let mut hmax = BallReal::one(prec);
    for g in spec.letter_matrices() {
        hmax = hmax.max(&height_matrix(field, g, prec)?.total);
    }
    let four = BallReal::exact(Dyadic::pow2(2 * field.num_places() as i64), prec);
    let c4 = four.mul(&hmax);
    let target = claim3_target(level);
    let t_ball = BallReal::from_rat(&target, prec);
    let mut k = 0u32;
    let mut pow = BallReal::one(prec);
    while pow.upper() < t_ball.lower() {
        pow = pow.mul(&c4);
        k += 1;
    }
    let t_f = t_ball.to_f64();
    let real_value = if t_f <= 1.0 { 0.0 } else { t_f.ln() / c4.to_f64().ln() };
    Ok(WordBound {
        level: level.id(),
        bound: k,
        target: format_rat(&target),
        c4: (&c4).into(),
        real_value,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim3Witness {
    pub height: HeightSummary,
    pub target: String,
    pub holds: bool,
    pub precision: u32,
}

/// Certifies `H(gamma) >= 4^{-#S_inf} p^{n i}` for a nontrivial member of `Gamma_i`.
pub fn claim3_certificate(
    level: &CongruenceLevel,
    gamma: &GroupMatrix,
    precision: Precision,
) -> Result<Claim3Witness> {
    if gamma.is_identity() {
        return Err(Error::Precondition("claim 3 needs a nontrivial element".into()));
    }
    if !level.membership(gamma)? {
        return Err(Error::Precondition(format!(
            "element is not in Gamma_{} at p = {}",
            level.i(),
            level.p()
        )));
    }
    let field = level.field();
    let target = claim3_target(level);
    let h0 = height_matrix(field, gamma, precision.initial)?;
    if let Some(h) = &h0.exact {
        let check = decide_exact("H(gamma) >= C_3 p^(n i)", &target, h, precision.initial)?;
        return Ok(Claim3Witness {
            height: h0.summary(),
            target: format_rat(&target),
            holds: check.holds,
            precision: check.precision,
        });
    }
    let mut last = None;
    let check = certify_le("H(gamma) >= C_3 p^(n i)", precision.initial, precision.cap, |prec| {
        let h = height_matrix(field, gamma, prec)?;
        let rhs = h.total.clone();
        last = Some(h);
        Ok((BallReal::from_rat(&target, prec), rhs))
    })?;
    Ok(Claim3Witness {
        height: last.expect("evaluated at least once").summary(),
        target: format_rat(&target),
        holds: check.holds,
        precision: check.precision,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WordSystole {
    pub level: LevelId,
    pub r_max: u32,
    /// Minimal word length of a nontrivial member of `Gamma_i`, if one lies in
    /// the ball of radius `r_max`.
    pub value: Option<u32>,
    pub witness_word: Option<String>,
    pub witness_matrix: Option<String>,
    /// Same minimum for the image in `PSL_2`, where `gamma` counts when
    /// `gamma` or `-gamma` lies in `Gamma_i`.
    pub psl_value: Option<u32>,
    /// The `PSL_2` witness reduces to `-I` rather than `I`.
    pub psl_needs_sign: bool,
    /// Number of nontrivial members found in the ball.
    pub members_found: usize,
}

/// Indices of the nontrivial members of `Gamma_i` in a ball.
pub fn members_in_ball(level: &CongruenceLevel, ball: &BallEnumeration) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (k, e) in ball.entries().iter().enumerate() {
        if !e.matrix.is_identity() && level.membership(&e.matrix)? {
            out.push(k);
        }
    }
    Ok(out)
}

/// Exact minimum over an already enumerated `SL_2` ball.
pub fn word_systole_in_ball(spec: &GroupSpec, level: &CongruenceLevel, ball: &BallEnumeration) -> Result<WordSystole> {
    if !ball.is_complete() {
        return Err(Error::BudgetExceeded {
            what: format!("Cayley ball of radius {}", ball.radius()),
            budget: ball.len(),
            partial: ball.len(),
        });
    }
    let members = members_in_ball(level, ball)?;
    let first = members.first().map(|&k| &ball.entries()[k]);
    let mut psl = None;
    for e in ball.entries() {
        if e.matrix.is_pm_identity() {
            continue;
        }
        if level.membership(&e.matrix)? {
            psl = Some((e.length, false));
            break;
        }
        if level.membership(&e.matrix.neg())? {
            psl = Some((e.length, true));
            break;
        }
    }
    Ok(WordSystole {
        level: level.id(),
        r_max: ball.radius(),
        value: first.map(|e| e.length),
        witness_word: first.map(|e| spec.format_word(&e.word)),
        witness_matrix: first.map(|e| e.matrix.to_string()),
        psl_value: psl.map(|x| x.0),
        psl_needs_sign: psl.map(|x| x.1).unwrap_or(false),
        members_found: members.len(),
    })
}

/// `sys(Gamma_i, X)` by exhaustive search of the radius-`r_max` ball.
pub fn word_systole(
    spec: &GroupSpec,
    level: &CongruenceLevel,
    r_max: u32,
    budget: Option<usize>,
) -> Result<WordSystole> {
    let ball = bfs_ball(spec, r_max, false, budget);
    word_systole_in_ball(spec, level, &ball)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimGrowth {
    /// `log_p(n_{i+1} / n_i)` for consecutive levels.
    pub steps: Vec<f64>,
    /// The last step.
    pub d_hat: f64,
    /// The last two steps agree.
    pub stabilized: bool,
    pub label: String,
    pub warnings: Vec<String>,
}

/// Empirical growth exponent of the quotient orders; never a certificate.
pub fn estimate_dim_growth(p: u64, orders: &[u128]) -> Result<DimGrowth> {
    if orders.len() < 2 {
        return Err(Error::TooFewLevels {
            need: 2,
            got: orders.len(),
        });
    }
    let lp = (p as f64).ln();
    let steps: Vec<f64> = orders
        .windows(2)
        .map(|w| ((w[1] as f64).ln() - (w[0] as f64).ln()) / lp)
        .collect();
    let d_hat = *steps.last().unwrap();
    let stabilized = steps.len() >= 2 && (steps[steps.len() - 1] - steps[steps.len() - 2]).abs() < 1e-9;
    let mut warnings = Vec::new();
    if steps.iter().all(|s| s.abs() < 1e-12) {
        warnings.push("degenerate tower: orders are constant".to_string());
    }
    Ok(DimGrowth {
        steps,
        d_hat,
        stabilized,
        label: "estimate".to_string(),
        warnings,
    })
}
