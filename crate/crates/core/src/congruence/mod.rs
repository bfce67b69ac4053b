//! The congruence filtration `Gamma_i`: the kernel of reduction modulo `p^i`
//! at every prime above `p`, its finite quotients and word-length bounds.

mod quotient;
mod ring;
mod systole;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::rational::is_prime;
use crate::error::{Error, Result};
use crate::group::{GroupMatrix, GroupSpec};
use crate::number_field::{NumberField, PrimeIdeal};

pub use quotient::{
    ambient_order, finite_quotient, lifted_order, quotient_order, FiniteQuotient, LiftedOrder,
    OrderMethod, QuotientOptions, QuotientOrder,
};
pub use ring::{ResidueRing, RingMatrix, MAX_MODULUS};
pub use systole::{
    certified_word_bound, claim3_certificate, estimate_dim_growth, members_in_ball, word_systole,
    word_systole_in_ball, Claim3Witness, DimGrowth, WordBound, WordSystole,
};

/// Level `(p, i)`; `i = 0` is the trivial level `Gamma_0 = Gamma`.
#[derive(Clone, Debug)]
pub struct CongruenceLevel {
    p: u64,
    i: u32,
    field: Arc<NumberField>,
    primes: Arc<Vec<Arc<PrimeIdeal>>>,
    ring: ResidueRing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelId {
    pub p: u64,
    pub i: u32,
}

impl CongruenceLevel {
    /// Validates the level: `p` prime, not in `S`, passing Dedekind's
    /// criterion, and in the torsion-free regime (`p` odd, or `p = 2`, `i >= 2`).
    pub fn new(spec: &GroupSpec, p: u64, i: u32) -> Result<CongruenceLevel> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if spec.denominator_primes().contains(&p) {
            return Err(Error::PrimeInS { p });
        }
        let field = spec.field_arc();
        let primes = field.primes_above(p)?;
        if i >= 1 && p == 2 && i < 2 {
            return Err(Error::TorsionRegime { p, i });
        }
        if field.degree() > 32 {
            return Err(Error::Precondition("residue rings support degree <= 32".into()));
        }
        let modulus = (p as u128).checked_pow(i).filter(|&m| m <= MAX_MODULUS as u128);
        let modulus = modulus.ok_or(Error::ModulusTooLarge { p, i })? as u64;
        let ring = ResidueRing::new(field.min_poly_coeffs(), modulus);
        Ok(CongruenceLevel {
            p,
            i,
            field,
            primes,
            ring,
        })
    }

    pub fn trivial(spec: &GroupSpec, p: u64) -> Result<CongruenceLevel> {
        CongruenceLevel::new(spec, p, 0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn id(&self) -> LevelId {
        LevelId { p: self.p, i: self.i }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn primes_above_p(&self) -> &[Arc<PrimeIdeal>] {
        &self.primes
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    /// The level above, sharing the field and prime data.
    pub fn next(&self) -> Result<CongruenceLevel> {
        let i = self.i + 1;
        let modulus = (self.p as u128).checked_pow(i).filter(|&m| m <= MAX_MODULUS as u128);
        let modulus = modulus.ok_or(Error::ModulusTooLarge { p: self.p, i })? as u64;
        Ok(CongruenceLevel {
            p: self.p,
            i,
            field: self.field.clone(),
            primes: self.primes.clone(),
            ring: ResidueRing::new(self.field.min_poly_coeffs(), modulus),
        })
    }

    fn check_denominators(&self, g: &GroupMatrix) -> Result<()> {
        let pb = BigInt::from(self.p);
        for x in g.entries() {
            let d = x.denominator();
            if !d.is_one() && (&d % &pb) == BigInt::from(0) {
                return Err(Error::DenominatorAtPrime { p: self.p });
            }
        }
        Ok(())
    }

    /// `g in Gamma_i`: `v_P(a - 1), v_P(b), v_P(c), v_P(d - 1) >= i e_P` for
    /// every prime `P` above `p`.
    pub fn membership(&self, g: &GroupMatrix) -> Result<bool> {
        self.check_denominators(g)?;
        if self.i == 0 {
            return Ok(true);
        }
        let one = self.field.one();
        let targets = [g.a().sub(&one), g.b().clone(), g.c().clone(), g.d().sub(&one)];
        Ok(self.primes.iter().all(|pr| {
            let k = self.i * pr.e();
            targets.iter().all(|x| pr.contains_power(x, k))
        }))
    }

    /// Membership decided by reducing the entries modulo `p^i` in `Z[theta]`.
    pub fn membership_by_reduction(&self, g: &GroupMatrix) -> Result<bool> {
        let r = self.ring.reduce(g, self.p)?;
        Ok(self.ring.is_identity(&r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn level_validation() {
        let g = catalog::figure_eight();
        assert!(CongruenceLevel::new(&g, 7, 1).is_ok());
        assert!(matches!(CongruenceLevel::new(&g, 2, 1), Err(Error::TorsionRegime { .. })));
        assert!(CongruenceLevel::new(&g, 2, 2).is_ok());
        assert!(matches!(CongruenceLevel::new(&g, 9, 1), Err(Error::NotPrime(9))));
        assert!(matches!(CongruenceLevel::new(&g, 7, 40), Err(Error::ModulusTooLarge { .. })));
    }

    #[test]
    fn figure_eight_membership() {
        let g = catalog::figure_eight();
        let k = g.field();
        let a = &g.generators()[0];
        let l1 = CongruenceLevel::new(&g, 7, 1).unwrap();
        let l2 = CongruenceLevel::new(&g, 7, 2).unwrap();
        let a7 = a.pow(k, 7);
        assert!(!l1.membership(a).unwrap());
        assert!(l1.membership(&a7).unwrap());
        assert!(!l2.membership(&a7).unwrap());
        assert!(l2.membership(&a.pow(k, 49)).unwrap());
        let id = GroupMatrix::identity(k);
        for l in [&l1, &l2] {
            assert!(l.membership(&id).unwrap());
            for m in [a, &a7, &id] {
                assert_eq!(l.membership(m).unwrap(), l.membership_by_reduction(m).unwrap());
            }
        }
        let l0 = CongruenceLevel::trivial(&g, 7).unwrap();
        assert!(l0.membership(a).unwrap());
    }
}
