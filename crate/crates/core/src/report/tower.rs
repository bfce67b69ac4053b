use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{certificate, theorem2_check, Certificate, Theorem2Check};
use super::config::Config;
use crate::congruence::{
    certified_word_bound, claim3_certificate, estimate_dim_growth, finite_quotient, members_in_ball,
    quotient_order, word_systole_in_ball, CongruenceLevel, DimGrowth, OrderMethod, QuotientOptions,
    WordBound, WordSystole,
};
use crate::error::{Error, Result};
use crate::geometry::{geodesic_systole_upper_in_ball, sysg_lower_bound, GeodesicSystoleUpper};
use crate::group::{bfs_ball, BallEnumeration, GroupSpec};
use crate::homology::{ce_growth_report, coset_table, dim_h1_mod_p, GrowthRecord, HomologyResult};

/// A count, or the bound it is known to exceed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bounded {
    Value(u32),
    Above(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HomologyEntry {
    Computed(HomologyResult),
    NotAvailable(String),
}

impl HomologyEntry {
    pub fn dim(&self) -> Option<usize> {
        match self {
            HomologyEntry::Computed(h) => Some(h.dim_h1),
            HomologyEntry::NotAvailable(_) => None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Claim3Tally {
    /// Nontrivial members of `Gamma_i` in the ball that were checked.
    pub checked: usize,
    pub failures: Vec<String>,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Claim1Check {
    /// `C_1 * bound - C_2 - 2 delta_M`, a lower bound for `sys_1(M_i)`.
    pub lower: f64,
    pub upper: Option<f64>,
    /// The lower bound does not exceed the upper bound.
    pub consistent: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LevelReport {
    pub i: u32,
    pub n_i: u128,
    pub order_method: OrderMethod,
    pub ambient_order: Option<u128>,
    pub divides_ambient: Option<bool>,
    pub certified_word_bound: WordBound,
    pub word_systole: Bounded,
    pub word_systole_detail: WordSystole,
    /// `certified_word_bound <= word_systole` when a member was found.
    pub bound_below_systole: Option<bool>,
    pub claim3: Claim3Tally,
    pub geodesic_systole_upper: GeodesicSystoleUpper,
    pub dim_h1: HomologyEntry,
    /// `max(dim_h1 - 2, 0)`.
    pub conditional_free_rank: Option<usize>,
    pub certificate: Option<Certificate>,
    pub theorem2_check: Theorem2Check,
    pub claim1: Option<Claim1Check>,
    /// `log k_i / log n_i`, reported without any claim of convergence.
    pub empirical_exponent: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldInfo {
    pub min_poly: Vec<String>,
    pub degree: usize,
    pub signature: (usize, usize),
    pub discriminant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossChecks {
    pub bound_below_systole: bool,
    pub word_systole_nondecreasing: bool,
    pub orders_divide_ambient: bool,
    pub orders_divide_next: bool,
    pub claim3_failures: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerReport {
    pub group: String,
    pub cusped: bool,
    pub field: FieldInfo,
    pub config: Config,
    pub ball_size: usize,
    pub levels: Vec<LevelReport>,
    pub d_hat: Option<DimGrowth>,
    pub growth: Option<GrowthRecord>,
    pub cross_checks: CrossChecks,
    pub warnings: Vec<String>,
}

impl TowerReport {
    /// A height lower bound was found false for some member.
    pub fn has_falsification(&self) -> bool {
        self.cross_checks.claim3_failures > 0
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

fn homology_entry(spec: &GroupSpec, level: &CongruenceLevel, order: u128, config: &Config) -> Result<HomologyEntry> {
    if !spec.has_presentation() {
        return Ok(HomologyEntry::NotAvailable("n/a: no presentation".into()));
    }
    if order > config.homology_budget as u128 {
        return Ok(HomologyEntry::NotAvailable(format!(
            "n/a: index {order} exceeds homology budget {}",
            config.homology_budget
        )));
    }
    let opts = QuotientOptions {
        budget: config.homology_budget,
        projective: false,
    };
    let q = finite_quotient(spec, level, opts)?;
    let t = coset_table(&q, &[])?;
    Ok(HomologyEntry::Computed(dim_h1_mod_p(spec, &t, level.p(), false)?))
}

fn claim3_tally(level: &CongruenceLevel, ball: &BallEnumeration, config: &Config) -> Result<Claim3Tally> {
    let mut tally = Claim3Tally::default();
    for k in members_in_ball(level, ball)? {
        let e = &ball.entries()[k];
        tally.checked += 1;
        match claim3_certificate(level, &e.matrix, config.precision) {
            Ok(_) => {}
            Err(err) if err.is_falsification() => tally.failures.push(err.to_string()),
            Err(Error::PrecisionExhausted { .. }) => tally.inconclusive += 1,
            Err(err) => return Err(err),
        }
    }
    Ok(tally)
}

fn level_report(spec: &GroupSpec, config: &Config, ball: &BallEnumeration, i: u32) -> Result<LevelReport> {
    let level = CongruenceLevel::new(spec, config.p, i)?;
    let opts = QuotientOptions {
        budget: config.quotient_budget,
        projective: false,
    };
    let order = quotient_order(spec, &level, opts).map_err(|e| e.at_level(config.p, i, "quotient order"))?;
    let bound = certified_word_bound(spec, &level, config.precision.initial)
        .map_err(|e| e.at_level(config.p, i, "word bound"))?;
    let sys = word_systole_in_ball(spec, &level, ball).map_err(|e| e.at_level(config.p, i, "word systole"))?;
    let primary = if config.psl_mode { sys.psl_value } else { sys.value };
    let word_systole = match primary {
        Some(v) => Bounded::Value(v),
        None => Bounded::Above(format!(">{}", config.r_max)),
    };
    let claim3 = claim3_tally(&level, ball, config).map_err(|e| e.at_level(config.p, i, "claim 3"))?;
    let geo = geodesic_systole_upper_in_ball(spec, &level, ball, config.precision)
        .map_err(|e| e.at_level(config.p, i, "geodesic systole"))?;
    let dim_h1 = homology_entry(spec, &level, order.order, config).map_err(|e| e.at_level(config.p, i, "homology"))?;
    let k = dim_h1.dim().map(|d| d.saturating_sub(2));
    let sys_upper = geo.value.as_ref().map(|v| v.mid + v.rad);
    let cert = dim_h1.dim().and_then(|d| certificate(d, spec.cusped())).map(|mut c| {
        c.sysg_heuristic = sys_upper.map(|s| sysg_lower_bound(s, config.delta));
        c
    });
    let claim1 = config.claim1.map(|c| {
        let lower = c.c1 * bound.bound as f64 - c.c2 - 2.0 * c.delta_m;
        Claim1Check {
            lower,
            upper: sys_upper,
            consistent: sys_upper.map(|u| lower <= u),
        }
    });
    let empirical_exponent = k
        .filter(|&k| k >= 2 && order.order >= 2)
        .map(|k| (k as f64).ln() / (order.order as f64).ln());
    Ok(LevelReport {
        i,
        n_i: order.order,
        order_method: order.method,
        ambient_order: order.ambient,
        divides_ambient: order.divides_ambient,
        bound_below_systole: primary.map(|v| bound.bound <= v),
        certified_word_bound: bound,
        word_systole,
        word_systole_detail: sys,
        claim3,
        geodesic_systole_upper: geo,
        conditional_free_rank: k,
        certificate: cert,
        theorem2_check: theorem2_check(k, sys_upper, config.delta),
        dim_h1,
        claim1,
        empirical_exponent,
    })
}

/// Every configured level of the tower, with cross-checks between levels.
pub fn run_tower(spec: &GroupSpec, config: &Config) -> Result<TowerReport> {
    config.validate()?;
    let mut levels_wanted = config.levels.clone();
    levels_wanted.sort_unstable();
    levels_wanted.dedup();
    // surface bad primes before any enumeration
    CongruenceLevel::new(spec, config.p, levels_wanted[0])?;
    let ball = bfs_ball(spec, config.r_max, false, Some(config.ball_budget));
    let levels: Vec<LevelReport> = levels_wanted
        .par_iter()
        .map(|&i| level_report(spec, config, &ball, i))
        .collect::<Result<_>>()?;
    let mut warnings = Vec::new();
    let orders: Vec<u128> = levels.iter().map(|l| l.n_i).collect();
    let consecutive = levels_wanted.windows(2).all(|w| w[1] == w[0] + 1);
    let d_hat = if levels.len() >= 2 && consecutive {
        Some(estimate_dim_growth(config.p, &orders)?)
    } else {
        None
    };
    let computed: Vec<HomologyResult> = levels
        .iter()
        .filter_map(|l| match &l.dim_h1 {
            HomologyEntry::Computed(h) => Some(h.clone()),
            HomologyEntry::NotAvailable(_) => None,
        })
        .collect();
    let growth = match (&d_hat, computed.len() >= 2) {
        (Some(d), true) => Some(ce_growth_report(&computed, Some(d.d_hat))?),
        _ => None,
    };
    if growth.is_none() {
        warnings.push("homology growth not reported: fewer than two levels with dim_h1".into());
    }
    let mut word_nondecreasing = true;
    let mut last = 0;
    for l in &levels {
        if let Bounded::Value(v) = l.word_systole {
            word_nondecreasing &= v >= last;
            last = v;
        } else {
            last = u32::MAX;
        }
    }
    let cross_checks = CrossChecks {
        bound_below_systole: levels.iter().all(|l| l.bound_below_systole != Some(false)),
        word_systole_nondecreasing: word_nondecreasing,
        orders_divide_ambient: levels.iter().all(|l| l.divides_ambient != Some(false)),
        orders_divide_next: levels
            .windows(2)
            .all(|w| w[1].i != w[0].i + 1 || w[1].n_i % w[0].n_i == 0),
        claim3_failures: levels.iter().map(|l| l.claim3.failures.len()).sum(),
    };
    let field = spec.field();
    let (r1, r2) = field.signature();
    Ok(TowerReport {
        group: spec.name().to_string(),
        cusped: spec.cusped(),
        field: FieldInfo {
            min_poly: field.min_poly_coeffs().iter().map(|c| c.to_string()).collect(),
            degree: field.degree(),
            signature: (r1, r2),
            discriminant: field.discriminant().to_string(),
        },
        config: config.clone(),
        ball_size: ball.len(),
        levels,
        d_hat,
        growth,
        cross_checks,
        warnings,
    })
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

/// Human-readable rendering of a report.
pub fn render_text(r: &TowerReport) -> String {
    let mut s = String::new();
    let c = &r.config;
    let _ = writeln!(s, "group {} ({})", r.group, if r.cusped { "cusped" } else { "closed" });
    let _ = writeln!(
        s,
        "field: min_poly [{}], degree {}, signature {:?}, discriminant {}",
        r.field.min_poly.join(", "),
        r.field.degree,
        r.field.signature,
        r.field.discriminant
    );
    let _ = writeln!(s, "p = {}, R_max = {}, ball size {}, delta = {}", c.p, c.r_max, r.ball_size, c.delta);
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "{:>3} {:>16} {:>8} {:>6} {:>6} {:>12} {:>8} {:>6} {:>12}",
        "i", "n_i", "method", "bound", "sys", "geo_upper", "dim_h1", "k_i", "thm2"
    );
    for l in &r.levels {
        let method = match l.order_method {
            OrderMethod::Closure => "closure".to_string(),
            OrderMethod::Lift { .. } => "lift".to_string(),
        };
        let sys = match &l.word_systole {
            Bounded::Value(v) => v.to_string(),
            Bounded::Above(a) => a.clone(),
        };
        let geo = l
            .geodesic_systole_upper
            .value
            .as_ref()
            .map(|v| format!("{:.6}", v.mid))
            .unwrap_or_else(|| "none".into());
        let dim = match &l.dim_h1 {
            HomologyEntry::Computed(h) => h.dim_h1.to_string(),
            HomologyEntry::NotAvailable(_) => "n/a".into(),
        };
        let _ = writeln!(
            s,
            "{:>3} {:>16} {:>8} {:>6} {:>6} {:>12} {:>8} {:>6} {:>12}",
            l.i,
            l.n_i,
            method,
            l.certified_word_bound.bound,
            sys,
            geo,
            dim,
            opt(l.conditional_free_rank),
            format!("{:?}", l.theorem2_check.verdict).to_lowercase()
        );
    }
    let _ = writeln!(s);
    for l in &r.levels {
        let _ = writeln!(
            s,
            "level {}: claim 3 checked on {} members, {} failures, {} inconclusive",
            l.i,
            l.claim3.checked,
            l.claim3.failures.len(),
            l.claim3.inconclusive
        );
        if let Some(w) = &l.word_systole_detail.witness_word {
            let _ = writeln!(s, "  word systole witness: {w}");
        }
        if let Some(cert) = &l.certificate {
            let _ = writeln!(s, "  certificate: {:?} k = {} ({})", cert.kind, cert.k, cert.citation);
            for h in &cert.hypotheses {
                let _ = writeln!(s, "    [{:?}] {}", h.status, h.statement);
            }
        }
        if let Some(c1) = &l.claim1 {
            let _ = writeln!(s, "  claim 1 lower bound {:.6}, consistent: {}", c1.lower, opt(c1.consistent));
        }
    }
    if let Some(d) = &r.d_hat {
        let _ = writeln!(s, "d_hat = {:.6} ({}), steps {:?}", d.d_hat, d.label, d.steps);
    }
    if let Some(g) = &r.growth {
        let _ = writeln!(s, "lambda_hat ({}): {:?}", g.label, g.lambda_hat);
    }
    let x = &r.cross_checks;
    let _ = writeln!(
        s,
        "cross-checks: bound <= systole {}, systole nondecreasing {}, n_i | ambient {}, n_i | n_(i+1) {}, claim 3 failures {}",
        x.bound_below_systole, x.word_systole_nondecreasing, x.orders_divide_ambient, x.orders_divide_next, x.claim3_failures
    );
    for w in &r.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// Writes `tower.json` and `tower.txt` into `dir`.
pub fn write_report(r: &TowerReport, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(dir)?;
    let json = dir.join("tower.json");
    let text = dir.join("tower.txt");
    std::fs::write(&json, r.to_json()?)?;
    std::fs::write(&text, render_text(r))?;
    Ok((json, text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn small_config() -> Config {
        Config {
            p: 3,
            levels: vec![1],
            r_max: 4,
            ..Config::default()
        }
    }

    #[test]
    fn small_tower_round_trips() {
        let g = catalog::figure_eight();
        let r = run_tower(&g, &small_config()).unwrap();
        assert_eq!(r.levels[0].n_i, 648);
        assert_eq!(r.levels[0].dim_h1.dim(), Some(36));
        let json = r.to_json().unwrap();
        let back: TowerReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_json().unwrap(), json);
        assert!(render_text(&r).contains("648"));
        assert!(!r.has_falsification());
        let mut bad = back;
        bad.cross_checks.claim3_failures = 1;
        assert!(bad.has_falsification());
    }

    #[test]
    fn bad_prime_is_named() {
        let g = crate::group::load_group(
            r#"{"name":"t","cusped":false,"field":{"min_poly":[3,0,1]},
                "generators":{"a":[[["1"],["2"]],[["0"],["1"]]]},"relators":[]}"#,
        )
        .unwrap();
        let c = Config {
            p: 2,
            levels: vec![2],
            r_max: 2,
            ..Config::default()
        };
        assert!(matches!(run_tower(&g, &c), Err(Error::GoodPrimeRequired { p: 2 })));
    }
}
