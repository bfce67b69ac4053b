use std::fmt;

use crate::arith::rational::push_rat_bytes;
use crate::number_field::{FieldElement, NumberField};

/// A 2x2 matrix `[[a, b], [c, d]]` over the field with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupMatrix {
    e: [FieldElement; 4],
}

impl GroupMatrix {
    /// Checks the determinant exactly; `None` if it is not 1.
    pub fn new(
        field: &NumberField,
        a: FieldElement,
        b: FieldElement,
        c: FieldElement,
        d: FieldElement,
    ) -> Option<GroupMatrix> {
        let m = GroupMatrix { e: [a, b, c, d] };
        m.det(field).is_one().then_some(m)
    }

    pub fn identity(field: &NumberField) -> GroupMatrix {
        GroupMatrix {
            e: [field.one(), field.zero(), field.zero(), field.one()],
        }
    }

    pub fn from_ints(field: &NumberField, m: [[i64; 2]; 2]) -> Option<GroupMatrix> {
        GroupMatrix::new(
            field,
            field.from_int(m[0][0]),
            field.from_int(m[0][1]),
            field.from_int(m[1][0]),
            field.from_int(m[1][1]),
        )
    }

    pub fn a(&self) -> &FieldElement {
        &self.e[0]
    }
    pub fn b(&self) -> &FieldElement {
        &self.e[1]
    }
    pub fn c(&self) -> &FieldElement {
        &self.e[2]
    }
    pub fn d(&self) -> &FieldElement {
        &self.e[3]
    }

    /// Entries in the order `a, b, c, d`.
    pub fn entries(&self) -> &[FieldElement; 4] {
        &self.e
    }

    pub fn det(&self, field: &NumberField) -> FieldElement {
        field.mul(&self.e[0], &self.e[3]).sub(&field.mul(&self.e[1], &self.e[2]))
    }

    pub fn mul(&self, field: &NumberField, o: &GroupMatrix) -> GroupMatrix {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        GroupMatrix {
            e: [
                field.mul(a, p).add(&field.mul(b, r)),
                field.mul(a, q).add(&field.mul(b, s)),
                field.mul(c, p).add(&field.mul(d, r)),
                field.mul(c, q).add(&field.mul(d, s)),
            ],
        }
    }

    /// Inverse of a determinant-one matrix: `[[d, -b], [-c, a]]`.
    pub fn inverse(&self) -> GroupMatrix {
        let [a, b, c, d] = &self.e;
        GroupMatrix {
            e: [d.clone(), b.neg(), c.neg(), a.clone()],
        }
    }

    pub fn neg(&self) -> GroupMatrix {
        GroupMatrix {
            e: self.e.clone().map(|x| x.neg()),
        }
    }

    pub fn pow(&self, field: &NumberField, k: i64) -> GroupMatrix {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = GroupMatrix::identity(field);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(field, &base);
        }
        acc
    }

    pub fn trace(&self) -> FieldElement {
        self.e[0].add(&self.e[3])
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    pub fn is_neg_identity(&self) -> bool {
        self.neg().is_identity()
    }

    pub fn is_pm_identity(&self) -> bool {
        self.is_identity() || self.is_neg_identity()
    }

    /// Deterministic byte key. With `psl` set, `M` and `-M` share a key: the
    /// sign is fixed so that the first nonzero entry (order a, b, c, d) has a
    /// positive leading power-basis coordinate.
    pub fn canonical_key(&self, psl: bool) -> Vec<u8> {
        let flip = psl
            && self
                .e
                .iter()
                .find_map(|x| x.is_lex_positive())
                .map(|pos| !pos)
                .unwrap_or(false);
        let mut out = Vec::with_capacity(64);
        for x in &self.e {
            for c in x.coeffs() {
                if flip {
                    push_rat_bytes(&mut out, &-c);
                } else {
                    push_rat_bytes(&mut out, c);
                }
            }
        }
        out
    }
}

impl fmt::Display for GroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}
