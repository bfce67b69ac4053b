//! Tower reports: configuration, conditional free-rank certificates and the
//! per-level pipeline tying quotient orders, systoles and homology together.

mod certificate;
mod config;
mod tower;

pub use certificate::{
    certificate, theorem2_check, Certificate, CertificateKind, Hypothesis, HypothesisStatus, Theorem2Check,
};
pub use config::{Claim1Constants, Config};
pub use tower::{
    render_text, run_tower, write_report, Bounded, Claim1Check, Claim3Tally, CrossChecks, FieldInfo,
    HomologyEntry, LevelReport, TowerReport,
};
