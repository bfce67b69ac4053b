use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use indexmap::IndexMap;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::matrix::GroupMatrix;
use super::word::{Letter, Word};
use crate::arith::rational::{parse_rat, prime_divisors};
use crate::arith::{Poly, Precision};
use crate::error::{Error, Result};
use crate::number_field::{FieldElement, NumberField};

/// The on-disk group description.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub name: String,
    #[serde(default)]
    pub cusped: bool,
    /// Declares the group free on its generators; no relators are then needed
    /// for homology.
    #[serde(default)]
    pub free: bool,
    pub field: FieldDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometric_place: Option<usize>,
    pub generators: IndexMap<String, [[Vec<String>; 2]; 2]>,
    #[serde(default)]
    pub relators: Vec<String>,
    #[serde(default)]
    pub config_defaults: serde_json::Map<String, serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDocument {
    pub min_poly: Vec<i64>,
}

#[derive(Debug)]
pub struct GroupSpec {
    name: String,
    cusped: bool,
    free: bool,
    field: Arc<NumberField>,
    geometric_place: Option<usize>,
    names: Vec<String>,
    generators: Vec<GroupMatrix>,
    letters: Vec<GroupMatrix>,
    relators: Vec<Word>,
    relator_signs: Vec<i8>,
    denominator_primes: Vec<u64>,
    config_defaults: serde_json::Map<String, serde_json::Value>,
}

pub fn load_group_file(path: impl AsRef<Path>) -> Result<GroupSpec> {
    let text = std::fs::read_to_string(path)?;
    load_group(&text)
}

/// Parses and validates a group document: determinants and relators are
/// checked exactly.
pub fn load_group(json: &str) -> Result<GroupSpec> {
    let doc: GroupDocument =
        serde_json::from_str(json).map_err(|e| Error::Schema(e.to_string()))?;
    GroupSpec::from_document(doc, Precision::default(), 0)
}

fn parse_entry(field: &NumberField, gen: &str, coeffs: &[String]) -> Result<FieldElement> {
    if coeffs.len() > field.degree() {
        return Err(Error::Schema(format!(
            "generator {gen}: entry has {} coefficients, field degree is {}",
            coeffs.len(),
            field.degree()
        )));
    }
    let v = coeffs
        .iter()
        .map(|s| {
            parse_rat(s).ok_or_else(|| Error::Schema(format!("generator {gen}: bad rational `{s}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(field.element(v))
}

impl GroupSpec {
    pub fn from_document(doc: GroupDocument, precision: Precision, seed: u64) -> Result<GroupSpec> {
        if doc.field.min_poly.is_empty() {
            return Err(Error::Schema("field.min_poly is empty".into()));
        }
        let poly = Poly::from_ints(&doc.field.min_poly);
        let field = Arc::new(NumberField::with_options(&poly, precision, seed)?);
        let mut names = Vec::new();
        let mut generators = Vec::new();
        for (name, m) in &doc.generators {
            if name.is_empty() || name.contains(char::is_whitespace) || name.contains('^') {
                return Err(Error::Schema(format!("invalid generator name `{name}`")));
            }
            let a = parse_entry(&field, name, &m[0][0])?;
            let b = parse_entry(&field, name, &m[0][1])?;
            let c = parse_entry(&field, name, &m[1][0])?;
            let d = parse_entry(&field, name, &m[1][1])?;
            let g = GroupMatrix::new(&field, a, b, c, d).ok_or_else(|| Error::DetNotOne(name.clone()))?;
            names.push(name.clone());
            generators.push(g);
        }
        let geometric_place = match doc.geometric_place {
            Some(k) if k >= field.num_places() => {
                return Err(Error::Schema(format!(
                    "geometric_place {k} out of range ({} places)",
                    field.num_places()
                )))
            }
            Some(k) => Some(k),
            None => {
                let complex: Vec<usize> = field
                    .places()
                    .iter()
                    .filter(|v| !v.is_real())
                    .map(|v| v.index())
                    .collect();
                if field.num_places() == 1 {
                    Some(0)
                } else if complex.len() == 1 {
                    Some(complex[0])
                } else {
                    None
                }
            }
        };
        let letters = generators
            .iter()
            .flat_map(|g| [g.clone(), g.inverse()])
            .collect();
        let mut spec = GroupSpec {
            name: doc.name,
            cusped: doc.cusped,
            free: doc.free,
            field,
            geometric_place,
            names,
            generators,
            letters,
            relators: Vec::new(),
            relator_signs: Vec::new(),
            denominator_primes: Vec::new(),
            config_defaults: doc.config_defaults,
        };
        for r in &doc.relators {
            let w = Word::parse(r, &spec.names)?;
            let m = spec.evaluate(&w);
            let sign = if m.is_identity() {
                1
            } else if m.is_neg_identity() {
                -1
            } else {
                return Err(Error::RelatorFailed {
                    word: r.clone(),
                    residual: m.to_string(),
                });
            };
            spec.relators.push(w);
            spec.relator_signs.push(sign);
        }
        let mut primes = BTreeSet::new();
        for g in &spec.generators {
            for x in g.entries() {
                let d = x.denominator();
                if !d.is_one() {
                    primes.extend(prime_divisors(&d));
                }
            }
        }
        spec.denominator_primes = primes.into_iter().collect();
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cusped(&self) -> bool {
        self.cusped
    }

    pub fn is_declared_free(&self) -> bool {
        self.free
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn field_arc(&self) -> Arc<NumberField> {
        self.field.clone()
    }

    pub fn geometric_place(&self) -> Option<usize> {
        self.geometric_place
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[GroupMatrix] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// The symmetric generating set `X`, indexed by [`Letter`].
    pub fn letter_matrices(&self) -> &[GroupMatrix] {
        &self.letters
    }

    pub fn letter(&self, l: Letter) -> &GroupMatrix {
        &self.letters[l.index()]
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// `+1` if the relator evaluates to the identity, `-1` for minus the identity.
    pub fn relator_signs(&self) -> &[i8] {
        &self.relator_signs
    }

    /// Homology can be computed: there are relators or the group is declared free.
    pub fn has_presentation(&self) -> bool {
        self.free || !self.relators.is_empty()
    }

    /// Rational primes dividing some generator-entry denominator (the set `S`).
    pub fn denominator_primes(&self) -> &[u64] {
        &self.denominator_primes
    }

    pub fn config_defaults(&self) -> &serde_json::Map<String, serde_json::Value> {
        &self.config_defaults
    }

    pub fn evaluate(&self, w: &Word) -> GroupMatrix {
        w.letters()
            .iter()
            .fold(GroupMatrix::identity(&self.field), |acc, &l| {
                acc.mul(&self.field, self.letter(l))
            })
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        Word::parse(s, &self.names)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.display(&self.names).to_string()
    }
}
