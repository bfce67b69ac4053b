//! Hyperbolic 3-space numerics: isometry types from traces, translation
//! lengths, ball volumes and the volume and genus bounds driven by a systole.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::arith::{isolate_roots, BallComplex, BallReal, BallSummary, BigRat, Dyadic, Poly, Precision};
use crate::congruence::{members_in_ball, CongruenceLevel, LevelId};
use crate::error::{Error, Result};
use crate::group::{bfs_ball, BallEnumeration, GroupMatrix, GroupSpec};
use crate::number_field::{FieldElement, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsometryKind {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Clone, Debug)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    /// Trace at the geometric place.
    pub trace: BallComplex,
    /// Translation length; exactly zero unless loxodromic.
    pub real_length: BallReal,
    pub precision: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsometrySummary {
    pub kind: IsometryKind,
    pub trace_re: BallSummary,
    pub trace_im: BallSummary,
    pub real_length: BallSummary,
}

impl IsometryClass {
    pub fn summary(&self) -> IsometrySummary {
        IsometrySummary {
            kind: self.kind,
            trace_re: (&self.trace.re).into(),
            trace_im: (&self.trace.im).into(),
            real_length: (&self.real_length).into(),
        }
    }
}

/// Index of the geometric place of `spec`.
pub fn geometric_place(spec: &GroupSpec) -> Result<usize> {
    spec.geometric_place().ok_or(Error::GeometricPlaceRequired)
}

fn squarefree_part(f: &Poly) -> Poly {
    let g = Poly::gcd(f, &f.derivative());
    if g.degree() == Some(0) {
        f.monic()
    } else {
        f.div_rem(&g).0.monic()
    }
}

/// Whether `x` is real at place `k`, decided by locating its image among the
/// isolated roots of its minimal polynomial.
pub fn is_real_at(field: &NumberField, x: &FieldElement, k: usize, precision: Precision) -> Result<bool> {
    if x.as_rational().is_some() {
        return Ok(true);
    }
    if field.places()[k].is_real() {
        return Ok(true);
    }
    let h = squarefree_part(&field.char_poly(x));
    for prec in precision.ladder() {
        let iso = isolate_roots(&h, prec, precision.cap)?;
        let z = field.places_at(prec)?[k].embed(x);
        let near = |w: &BallComplex| z.sub(w).abs().lower() <= Dyadic::zero();
        let real_hits = iso.real.iter().filter(|r| near(&BallComplex::real((*r).clone()))).count();
        let cx_hits = iso
            .complex
            .iter()
            .filter(|w| near(w) || near(&w.conj()))
            .count();
        match (real_hits, cx_hits) {
            (1, 0) => return Ok(true),
            (0, 1) => return Ok(false),
            _ => {}
        }
    }
    Err(Error::PrecisionExhausted {
        what: "realness of a trace".into(),
        cap: precision.cap,
    })
}

/// `2 log |lambda|` with `lambda = (t + sqrt(t^2 - 4)) / 2`, `|lambda| >= 1`.
pub fn translation_length(t: &BallComplex) -> Option<BallReal> {
    let prec = t.prec();
    let four = BallComplex::from_int(4, prec);
    let s = t.mul(t).sub(&four).sqrt()?;
    let m = t.add(&s).abs().max(&t.sub(&s).abs());
    Some(m.mul_pow2(-1).ln()?.mul_pow2(1))
}

/// `2 Re arccosh(t / 2) = 2 arccosh((|t - 2| + |t + 2|) / 4)`.
pub fn translation_length_arccosh(t: &BallComplex) -> Option<BallReal> {
    let prec = t.prec();
    let two = BallComplex::from_int(2, prec);
    let x = t.sub(&two).abs().add(&t.add(&two).abs()).mul_pow2(-2);
    Some(x.arccosh()?.mul_pow2(1))
}

/// Isometry type of `gamma` acting through the geometric place.
pub fn classify(spec: &GroupSpec, gamma: &GroupMatrix, precision: Precision) -> Result<IsometryClass> {
    let k = geometric_place(spec)?;
    classify_at(spec.field(), k, gamma, precision)
}

pub fn classify_at(field: &NumberField, k: usize, gamma: &GroupMatrix, precision: Precision) -> Result<IsometryClass> {
    let t = gamma.trace();
    let embed = |prec: u32| -> Result<BallComplex> { Ok(field.places_at(prec)?[k].embed(&t)) };
    let zero = |prec: u32| BallReal::zero(prec);
    if gamma.is_pm_identity() {
        let p = precision.initial;
        return Ok(IsometryClass {
            kind: IsometryKind::Identity,
            trace: embed(p)?,
            real_length: zero(p),
            precision: p,
        });
    }
    let two = Dyadic::from_int(2);
    if let Some(q) = t.as_rational() {
        if q.abs() == BigRat::from_integer(2.into()) {
            let p = precision.initial;
            return Ok(IsometryClass {
                kind: IsometryKind::Parabolic,
                trace: embed(p)?,
                real_length: zero(p),
                precision: p,
            });
        }
    }
    let real = is_real_at(field, &t, k, precision)?;
    for prec in precision.ladder() {
        let tb = embed(prec)?;
        if real {
            let a = tb.re.abs();
            if a.upper() < two {
                return Ok(IsometryClass {
                    kind: IsometryKind::Elliptic,
                    trace: tb,
                    real_length: zero(prec),
                    precision: prec,
                });
            }
            if a.lower() <= two {
                continue;
            }
        }
        let Some(len) = translation_length(&tb) else {
            continue;
        };
        if len.lower() > Dyadic::zero() {
            return Ok(IsometryClass {
                kind: IsometryKind::Loxodromic,
                trace: tb,
                real_length: len,
                precision: prec,
            });
        }
    }
    Err(Error::PrecisionExhausted {
        what: "elliptic/loxodromic boundary".into(),
        cap: precision.cap,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeodesicSystoleUpper {
    pub level: LevelId,
    pub r_max: u32,
    /// Always "upper bound": a minimum over a finite ball.
    pub label: String,
    pub value: Option<BallSummary>,
    pub witness_word: Option<String>,
    /// Set when no loxodromic member lies in the ball.
    pub note: Option<String>,
}

/// Minimum translation length over the loxodromic members of `Gamma_i` in the
/// radius-`r_max` ball, reading `Gamma_i` in `PSL_2` (`gamma` counts when
/// `gamma` or `-gamma` lies in `Gamma_i`).
pub fn geodesic_systole_upper(
    spec: &GroupSpec,
    level: &CongruenceLevel,
    r_max: u32,
    budget: Option<usize>,
    precision: Precision,
) -> Result<GeodesicSystoleUpper> {
    let ball = bfs_ball(spec, r_max, false, budget);
    geodesic_systole_upper_in_ball(spec, level, &ball, precision)
}

/// As [`geodesic_systole_upper`] over an already enumerated `SL_2` ball.
pub fn geodesic_systole_upper_in_ball(
    spec: &GroupSpec,
    level: &CongruenceLevel,
    ball: &BallEnumeration,
    precision: Precision,
) -> Result<GeodesicSystoleUpper> {
    let k = geometric_place(spec)?;
    let r_max = ball.radius();
    if !ball.is_complete() {
        return Err(Error::BudgetExceeded {
            what: format!("Cayley ball of radius {r_max}"),
            budget: ball.len(),
            partial: ball.len(),
        });
    }
    let mut members = members_in_ball(level, ball)?;
    for (j, e) in ball.entries().iter().enumerate() {
        if !e.matrix.is_pm_identity() && !members.contains(&j) && level.membership(&e.matrix.neg())? {
            members.push(j);
        }
    }
    members.sort_unstable();
    let mut best: Option<(BallReal, usize)> = None;
    for j in members {
        let c = classify_at(spec.field(), k, &ball.entries()[j].matrix, precision)?;
        if c.kind != IsometryKind::Loxodromic {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => c.real_length.upper() < b.upper(),
        };
        if better {
            best = Some((c.real_length, j));
        }
    }
    Ok(GeodesicSystoleUpper {
        level: level.id(),
        r_max,
        label: "upper bound".into(),
        value: best.as_ref().map(|(b, _)| b.into()),
        witness_word: best.as_ref().map(|&(_, j)| spec.format_word(&ball.entries()[j].word)),
        note: best.is_none().then(|| format!("no witness <= {r_max}")),
    })
}

/// `vol B(r) = pi (sinh 2r - 2r)` in hyperbolic 3-space.
pub fn ball_volume(r: f64, prec: u32) -> BallReal {
    assert!(r >= 0.0, "radius must be nonnegative");
    let two_r = BallReal::from_f64(r, prec).mul_pow2(1);
    BallReal::pi(prec).mul(&two_r.sinh().sub(&two_r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ManifoldMode {
    Closed,
    Cusped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VolumeSystoleCheck {
    pub mode: ManifoldMode,
    pub vol: f64,
    pub sys: f64,
    pub bound: BallSummary,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Closed: `vol >= pi (sinh sys - sys)`. Cusped: `vol >= e^{(3/4 - delta) sys}`,
/// which holds only for large systole.
pub fn volume_systole_check(vol: f64, sys: f64, mode: ManifoldMode, delta: f64) -> VolumeSystoleCheck {
    let prec = 128;
    let s = BallReal::from_f64(sys, prec);
    let (bound, note) = match mode {
        ManifoldMode::Closed => (BallReal::pi(prec).mul(&s.sinh().sub(&s)), None),
        ManifoldMode::Cusped => (
            BallReal::from_f64(0.75 - delta, prec).mul(&s).exp(),
            Some("asymptotic: valid only for sys sufficiently large".to_string()),
        ),
    };
    let v = BallReal::from_f64(vol, prec);
    let verdict = match v.ge_certain(&bound) {
        Some(true) => Verdict::Pass,
        Some(false) => Verdict::Fail,
        None => Verdict::Inconclusive,
    };
    VolumeSystoleCheck {
        mode,
        vol,
        sys,
        bound: (&bound).into(),
        verdict,
        note,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SysgBound {
    pub value: f64,
    pub note: String,
}

/// `e^{(1/2 - delta) sys}`, a lower bound for the systolic genus once the
/// systole is large.
pub fn sysg_lower_bound(sys: f64, delta: f64) -> SysgBound {
    SysgBound {
        value: ((0.5 - delta) * sys).exp(),
        note: "asymptotic: requires sys_1 sufficiently large".into(),
    }
}
