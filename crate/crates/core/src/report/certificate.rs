use serde::{Deserialize, Serialize};

use crate::geometry::{SysgBound, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    KFreeConditional,
    KSemifreeConditional,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisStatus {
    Verified,
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub statement: String,
    pub status: HypothesisStatus,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub k: usize,
    pub hypotheses: Vec<Hypothesis>,
    pub citation: String,
    /// `e^{(1/2 - delta) sys}` from the systole upper bound, for context only.
    pub sysg_heuristic: Option<SysgBound>,
}

/// Conditional `k`-free (closed) or `k`-semifree (cusped) certificate from
/// `dim H_1(-, F_p) >= k + 2`; `None` when `k < 1`.
pub fn certificate(dim_h1: usize, cusped: bool) -> Option<Certificate> {
    let k = dim_h1.checked_sub(2).filter(|&k| k >= 1)?;
    let (kind, citation) = if cusped {
        (
            CertificateKind::KSemifreeConditional,
            "Anderson-Canary-Culler-Shalen semifree criterion",
        )
    } else {
        (CertificateKind::KFreeConditional, "Shalen-Wagreich criterion")
    };
    Some(Certificate {
        kind,
        k,
        hypotheses: vec![
            Hypothesis {
                statement: format!("dim H_1(M_i, F_p) = {dim_h1} >= k + 2"),
                status: HypothesisStatus::Verified,
            },
            Hypothesis {
                statement: format!("sysg(M_i) >= {k}"),
                status: HypothesisStatus::Assumed,
            },
        ],
        citation: citation.to_string(),
        sysg_heuristic: None,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem2Check {
    pub verdict: Verdict,
    /// `log k_i`; absent when `k_i = 0` or unknown.
    pub log_k: Option<f64>,
    /// `(1/2 - delta) * sys_upper`.
    pub rhs: Option<f64>,
    pub note: Option<String>,
}

/// `log k_i >= (1/2 - delta) sys_upper`. The systole enters through an upper
/// bound, so a pass also holds for the true systole.
pub fn theorem2_check(k: Option<usize>, sys_upper: Option<f64>, delta: f64) -> Theorem2Check {
    let (Some(k), Some(sys)) = (k, sys_upper) else {
        return Theorem2Check {
            verdict: Verdict::Inconclusive,
            log_k: None,
            rhs: None,
            note: Some("insufficient data".into()),
        };
    };
    let rhs = (0.5 - delta) * sys;
    let log_k = (k > 0).then(|| (k as f64).ln());
    let verdict = match log_k {
        Some(l) if l >= rhs => Verdict::Pass,
        _ => Verdict::Fail,
    };
    Theorem2Check {
        verdict,
        log_k,
        rhs: Some(rhs),
        note: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificates() {
        let c = certificate(5, false).unwrap();
        assert_eq!((c.k, c.kind), (3, CertificateKind::KFreeConditional));
        assert!(c.hypotheses.iter().any(|h| h.status == HypothesisStatus::Assumed));
        assert_eq!(certificate(5, true).unwrap().kind, CertificateKind::KSemifreeConditional);
        assert!(certificate(2, false).is_none());
        assert!(certificate(0, true).is_none());
    }

    #[test]
    fn theorem2() {
        let c = theorem2_check(Some(100), Some(2.0), 0.1);
        assert_eq!(c.verdict, Verdict::Pass);
        assert!((c.log_k.unwrap() - 100f64.ln()).abs() < 1e-12);
        assert_eq!(theorem2_check(Some(1), Some(2.0), 0.1).verdict, Verdict::Fail);
        assert_eq!(theorem2_check(None, Some(2.0), 0.1).verdict, Verdict::Inconclusive);
    }
}
