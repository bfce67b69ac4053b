//! The number field `E = Q(theta)` given by a monic integer minimal polynomial,
//! its elements in the power basis, norms, archimedean places and prime ideals.

mod lattice;
mod places;
mod prime;

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{format_rat, primes_up_to};
use crate::arith::{BigRat, Poly, PolyFp, Precision};
use crate::error::{Error, Result};

pub use lattice::IdealLattice;
pub use places::{ArchPlace, PlaceRoot};
pub use prime::{dedekind_criterion, PrimeIdeal, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    /// Irreducible modulo the recorded prime (degree 1 needs no witness).
    Verified { witness_prime: Option<u64> },
    /// No prime up to the search bound certified irreducibility.
    Assumed,
}

/// Search bound for an irreducibility witness prime.
const IRREDUCIBILITY_SEARCH: u64 = 1000;

pub struct NumberField {
    min_poly: Vec<BigInt>,
    poly: Poly,
    degree: usize,
    discriminant: BigInt,
    irreducibility: Irreducibility,
    warnings: Vec<String>,
    precision: Precision,
    seed: u64,
    places: Vec<ArchPlace>,
    place_cache: RwLock<BTreeMap<u32, Arc<Vec<ArchPlace>>>>,
    prime_cache: RwLock<HashMap<u64, Arc<Vec<Arc<PrimeIdeal>>>>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("min_poly", &self.poly.to_string())
            .field("discriminant", &self.discriminant)
            .finish()
    }
}

impl NumberField {
    /// Builds `Q[x]/(f)` for a monic integer `f` of degree at least one.
    pub fn new(f: &Poly) -> Result<NumberField> {
        NumberField::with_options(f, Precision::default(), 0)
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Result<NumberField> {
        NumberField::new(&Poly::from_ints(coeffs))
    }

    pub fn with_options(f: &Poly, precision: Precision, seed: u64) -> Result<NumberField> {
        let degree = f.degree().ok_or(Error::ZeroDegree)?;
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let min_poly = f.integer_coeffs().ok_or(Error::NotMonic)?;
        if !f.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let discriminant = f.discriminant().to_integer();
        let mut warnings = Vec::new();
        let irreducibility = if degree == 1 {
            Irreducibility::Verified { witness_prime: None }
        } else {
            let witness = primes_up_to(IRREDUCIBILITY_SEARCH).into_iter().find(|&p| {
                !(&discriminant % BigInt::from(p)).is_zero()
                    && PolyFp::from_bigints(&min_poly, p).is_irreducible()
            });
            match witness {
                Some(p) => Irreducibility::Verified { witness_prime: Some(p) },
                None => {
                    warnings.push(format!(
                        "irreducibility of {f} not certified by any prime <= {IRREDUCIBILITY_SEARCH}; assumed"
                    ));
                    Irreducibility::Assumed
                }
            }
        };
        let places = places::compute_places(f, precision.initial, precision.cap)?;
        let mut cache = BTreeMap::new();
        cache.insert(precision.initial, Arc::new(places.clone()));
        Ok(NumberField {
            min_poly,
            poly: f.clone(),
            degree,
            discriminant,
            irreducibility,
            warnings,
            precision,
            seed,
            places,
            place_cache: RwLock::new(cache),
            prime_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn min_poly(&self) -> &Poly {
        &self.poly
    }

    pub fn min_poly_coeffs(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }

    pub fn irreducibility(&self) -> &Irreducibility {
        &self.irreducibility
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Archimedean places at the default precision: real places first.
    pub fn places(&self) -> &[ArchPlace] {
        &self.places
    }

    /// `#S_infinity`, the number of archimedean places.
    pub fn num_places(&self) -> usize {
        self.places.len()
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (usize, usize) {
        let r1 = self.places.iter().filter(|v| v.degree() == 1).count();
        (r1, self.places.len() - r1)
    }

    /// The places recomputed at `prec` bits, in the same order as
    /// [`NumberField::places`].
    pub fn places_at(&self, prec: u32) -> Result<Arc<Vec<ArchPlace>>> {
        if let Some(p) = self.place_cache.read().unwrap().get(&prec) {
            return Ok(p.clone());
        }
        let fresh = places::compute_places(&self.poly, prec, self.precision.cap.max(prec))?;
        let ordered = places::match_order(&self.places, fresh);
        let ordered = Arc::new(ordered);
        self.place_cache
            .write()
            .unwrap()
            .entry(prec)
            .or_insert_with(|| ordered.clone());
        Ok(ordered)
    }

    // ---- elements ------------------------------------------------------

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![BigRat::zero(); self.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(BigRat::one())
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rat(BigRat::from_integer(n.into()))
    }

    pub fn from_rat(&self, q: BigRat) -> FieldElement {
        let mut x = self.zero();
        x.coeffs[0] = q;
        x
    }

    /// The generator `theta`.
    pub fn theta(&self) -> FieldElement {
        self.from_poly(&Poly::x())
    }

    /// Image of a polynomial in `theta`, reduced modulo the minimal polynomial.
    pub fn from_poly(&self, g: &Poly) -> FieldElement {
        let r = g.rem(&self.poly);
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree, BigRat::zero());
        FieldElement { coeffs }
    }

    /// Power-basis coordinates; shorter inputs are padded with zeros.
    pub fn element(&self, coeffs: Vec<BigRat>) -> FieldElement {
        self.from_poly(&Poly::new(coeffs))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let n = self.degree;
        if x.is_zero() || y.is_zero() {
            return self.zero();
        }
        let mut prod = vec![BigRat::zero(); 2 * n - 1];
        for (i, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        // reduce with the monic integer minimal polynomial
        for k in (n..2 * n - 1).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, fj) in self.min_poly[..n].iter().enumerate() {
                if !fj.is_zero() {
                    prod[k - n + j] -= &c * fj;
                }
            }
        }
        prod.truncate(n);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, x: &FieldElement, e: u32) -> FieldElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: &FieldElement) -> Option<FieldElement> {
        if x.is_zero() {
            return None;
        }
        let (g, s, _) = Poly::xgcd(&x.to_poly(), &self.poly);
        // f is irreducible in every intended use; a nontrivial gcd would mean
        // x is a zero divisor of Q[x]/(f)
        if g.degree() != Some(0) {
            return None;
        }
        Some(self.from_poly(&s))
    }

    /// `Nm_{E/Q}(x) = Res(f, x(t))` for monic `f`.
    pub fn norm(&self, x: &FieldElement) -> BigRat {
        Poly::resultant(&self.poly, &x.to_poly())
    }

    /// Trace of multiplication by `x`.
    pub fn trace(&self, x: &FieldElement) -> BigRat {
        let mut t = BigRat::zero();
        for j in 0..self.degree {
            let basis = self.element(
                (0..=j).map(|k| if k == j { BigRat::one() } else { BigRat::zero() }).collect(),
            );
            t += &self.mul(x, &basis).coeffs[j];
        }
        t
    }

    /// Characteristic polynomial of multiplication by `x`, monic of degree `n`.
    pub fn char_poly(&self, x: &FieldElement) -> Poly {
        // Newton's identities from power traces
        let n = self.degree;
        let mut power_traces = Vec::with_capacity(n);
        let mut pw = x.clone();
        for _ in 0..n {
            power_traces.push(self.trace(&pw));
            pw = self.mul(&pw, x);
        }
        // e_k via Newton: k e_k = sum_{i=1}^k (-1)^{i-1} e_{k-i} p_i
        let mut e = vec![BigRat::one()];
        for k in 1..=n {
            let mut s = BigRat::zero();
            for i in 1..=k {
                let term = &e[k - i] * &power_traces[i - 1];
                if i % 2 == 1 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            e.push(s / BigRat::from_integer(k.into()));
        }
        // x^n - e1 x^{n-1} + e2 x^{n-2} - ...
        let coeffs = (0..=n)
            .map(|d| {
                let k = n - d;
                if k.is_multiple_of(2) {
                    e[k].clone()
                } else {
                    -e[k].clone()
                }
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.sub(y)
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        x.add(y)
    }

    // ---- primes --------------------------------------------------------

    /// Primes above `p`, cached so that ideal-power lattices are shared.
    pub fn primes_above(&self, p: u64) -> Result<Arc<Vec<Arc<PrimeIdeal>>>> {
        if let Some(v) = self.prime_cache.read().unwrap().get(&p) {
            return Ok(v.clone());
        }
        let fresh = Arc::new(prime::split_prime(self, p)?);
        Ok(self
            .prime_cache
            .write()
            .unwrap()
            .entry(p)
            .or_insert(fresh)
            .clone())
    }

    /// Product over the primes `P | p` of `max(1, |x|_P)`, exactly.
    pub fn finite_height_factor(&self, x: &FieldElement, p: u64) -> Result<BigRat> {
        let mut acc = BigRat::one();
        for pr in self.primes_above(p)?.iter() {
            if let Some(a) = pr.abs_value(self, x) {
                if a > BigRat::one() {
                    acc *= a;
                }
            }
        }
        Ok(acc)
    }

    pub fn format_element(&self, x: &FieldElement) -> String {
        x.to_string()
    }
}

/// An element of `E` in the power basis `1, theta, ..., theta^(n-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<BigRat>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRat> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coeffs[0])
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn add(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: &BigRat) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `(y, d)` with `x = y / d`, `y` integral in the power basis.
    pub fn integral_split(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.denominator();
        let y = self
            .coeffs
            .iter()
            .map(|c| (c * BigRat::from_integer(d.clone())).to_integer())
            .collect();
        (y, d)
    }

    /// Sign of the first nonzero coordinate: the fixed total order used to
    /// normalize `M` against `-M`.
    pub fn is_lex_positive(&self) -> Option<bool> {
        self.coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_positive())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let body = match k {
                0 => format_rat(c),
                _ => {
                    let mon = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                    if c.is_one() {
                        mon
                    } else if (-c).is_one() {
                        format!("-{mon}")
                    } else {
                        format!("{}*{mon}", format_rat(c))
                    }
                }
            };
            terms.push(body);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rat, rat_frac};

    fn eisenstein() -> NumberField {
        NumberField::from_coeffs(&[1, -1, 1]).unwrap()
    }

    #[test]
    fn create_quadratic_fields() {
        let k = eisenstein();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.discriminant(), &BigInt::from(-3));
        assert_eq!(k.signature(), (0, 1));
        assert_eq!(k.places()[0].degree(), 2);
        assert!(matches!(k.irreducibility(), Irreducibility::Verified { witness_prime: Some(_) }));

        let q = NumberField::from_coeffs(&[-1, 1]).unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.signature(), (1, 0));

        let r2 = NumberField::from_coeffs(&[-2, 0, 1]).unwrap();
        assert_eq!(r2.signature(), (2, 0));
        assert_eq!(r2.discriminant(), &BigInt::from(8));
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(matches!(NumberField::from_coeffs(&[1, 2, 1]), Err(Error::NotSquarefree)));
        assert!(matches!(NumberField::from_coeffs(&[1, 0, 2]), Err(Error::NotMonic)));
        assert!(matches!(
            NumberField::new(&Poly::new(vec![rat_frac(1, 2), rat(1)])),
            Err(Error::NotMonic)
        ));
    }

    #[test]
    fn x4_plus_1_irreducibility_is_assumed() {
        // reducible modulo every prime, irreducible over Q
        let k = NumberField::from_coeffs(&[1, 0, 0, 0, 1]).unwrap();
        assert_eq!(k.irreducibility(), &Irreducibility::Assumed);
        assert_eq!(k.warnings().len(), 1);
    }

    #[test]
    fn norms() {
        let k = eisenstein();
        let t = k.theta();
        assert_eq!(k.norm(&t), rat(1));
        assert_eq!(k.norm(&t.add(&k.one())), rat(3));
        assert_eq!(k.norm(&k.from_int(2)), rat(4));
    }

    #[test]
    fn arithmetic() {
        let k = eisenstein();
        let t = k.theta();
        // theta^6 = 1 for a primitive sixth root of unity
        assert_eq!(k.pow(&t, 6), k.one());
        assert_ne!(k.pow(&t, 3), k.one());
        let u = t.add(&k.from_int(3));
        let ui = k.inv(&u).unwrap();
        assert_eq!(k.mul(&u, &ui), k.one());
        assert_eq!(k.trace(&t), rat(1));
        assert_eq!(k.char_poly(&t), Poly::from_ints(&[1, -1, 1]));
    }
}
