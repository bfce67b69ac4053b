//! Exact and certified-numeric arithmetic substrate.

pub mod ball;
pub mod dyadic;
pub mod poly;
pub mod poly_fp;
pub mod rational;
pub mod roots;

pub use ball::{BallComplex, BallReal, BallSummary};
pub use dyadic::{Dyadic, Round};
pub use poly::Poly;
pub use poly_fp::{factor_mod_p, PolyFp};
pub use rational::BigRat;
pub use roots::{isolate_roots, RootIsolation};

/// Working-precision policy for rigorous numerics: start at `initial` bits and
/// double on demand up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    pub initial: u32,
    pub cap: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { initial: 128, cap: 4096 }
    }
}

impl Precision {
    /// The sequence of precisions to try: `initial, 2*initial, ...` up to `cap`.
    pub fn ladder(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap.max(self.initial);
        std::iter::successors(Some(self.initial), move |&p| (p < cap).then(|| (p * 2).min(cap)))
    }
}
