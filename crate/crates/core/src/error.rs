use thiserror::Error;

/// Everything that can go wrong while building or measuring a tower.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial must be monic with integer coefficients")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {p} fails Dedekind's criterion for Z[theta]; choose another prime")]
    GoodPrimeRequired { p: u64 },
    #[error("precision cap of {cap} bits reached while deciding {what}")]
    PrecisionExhausted { what: String, cap: u32 },
    #[error("group document: {0}")]
    Schema(String),
    #[error("generator {0} does not have determinant 1")]
    DetNotOne(String),
    #[error("relator `{word}` does not evaluate to the identity; residual {residual}")]
    RelatorFailed { word: String, residual: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{what}: element budget {budget} exceeded after {partial} elements")]
    BudgetExceeded {
        what: String,
        budget: usize,
        partial: usize,
    },
    #[error("an entry has a denominator divisible by {p}")]
    DenominatorAtPrime { p: u64 },
    #[error("prime {p} divides a generator denominator (lies in S)")]
    PrimeInS { p: u64 },
    #[error("level (p={p}, i={i}) is outside the torsion-free regime (need p odd, or p = 2 with i >= 2)")]
    TorsionRegime { p: u64, i: u32 },
    #[error("residue modulus {p}^{i} is too large for word-sized arithmetic")]
    ModulusTooLarge { p: u64, i: u32 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("FALSIFIED: {0}")]
    Falsified(String),
    #[error("homology needs a presentation: the group has no relators and is not declared free")]
    PresentationRequired,
    #[error("coset table inconsistent: {0}")]
    InconsistentTable(String),
    #[error("need at least {need} levels, got {got}")]
    TooFewLevels { need: usize, got: usize },
    #[error("the field has several archimedean places; the group file must name a geometric_place")]
    GeometricPlaceRequired,
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("level (p={p}, i={i}), {op}: {source}")]
    AtLevel {
        p: u64,
        i: u32,
        op: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True when the error signals that an explicit inequality was found false.
    pub fn is_falsification(&self) -> bool {
        match self {
            Error::Falsified(_) => true,
            Error::AtLevel { source, .. } => source.is_falsification(),
            _ => false,
        }
    }

    pub(crate) fn at_level(self, p: u64, i: u32, op: &'static str) -> Error {
        Error::AtLevel {
            p,
            i,
            op,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
