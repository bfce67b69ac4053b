//! Archimedean places: one per real root and one per conjugate pair of
//! complex roots of the minimal polynomial.

use serde::Serialize;

use super::FieldElement;
use crate::arith::{isolate_roots, BallComplex, BallReal, BallSummary, Poly};
use crate::error::Result;

#[derive(Clone, Debug)]
pub enum PlaceRoot {
    Real(BallReal),
    Complex(BallComplex),
}

#[derive(Clone, Debug)]
pub struct ArchPlace {
    index: usize,
    root: PlaceRoot,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceSummary {
    pub index: usize,
    pub kind: &'static str,
    pub root_re: BallSummary,
    pub root_im: BallSummary,
}

impl ArchPlace {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn root(&self) -> &PlaceRoot {
        &self.root
    }

    /// Local degree `d_v`: 1 for real places, 2 for complex ones.
    pub fn degree(&self) -> u32 {
        match self.root {
            PlaceRoot::Real(_) => 1,
            PlaceRoot::Complex(_) => 2,
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self.root, PlaceRoot::Real(_))
    }

    pub fn root_ball(&self) -> BallComplex {
        match &self.root {
            PlaceRoot::Real(r) => BallComplex::real(r.clone()),
            PlaceRoot::Complex(z) => z.clone(),
        }
    }

    pub fn prec(&self) -> u32 {
        match &self.root {
            PlaceRoot::Real(r) => r.prec(),
            PlaceRoot::Complex(z) => z.prec(),
        }
    }

    /// `sigma_v(x)` by Horner's rule.
    pub fn embed(&self, x: &FieldElement) -> BallComplex {
        let z = self.root_ball();
        let prec = self.prec();
        x.coeffs()
            .iter()
            .rev()
            .fold(BallComplex::from_int(0, prec), |acc, c| {
                acc.mul(&z).add(&BallComplex::real(BallReal::from_rat(c, prec)))
            })
    }

    /// Normalized absolute value `|sigma_v(x)|^{d_v}`.
    pub fn abs_value(&self, x: &FieldElement) -> BallReal {
        let s = self.embed(x);
        match self.root {
            PlaceRoot::Real(_) => s.re.abs(),
            PlaceRoot::Complex(_) => s.norm_sqr(),
        }
    }

    pub fn summary(&self) -> PlaceSummary {
        let z = self.root_ball();
        PlaceSummary {
            index: self.index,
            kind: if self.is_real() { "real" } else { "complex" },
            root_re: (&z.re).into(),
            root_im: (&z.im).into(),
        }
    }
}

pub(super) fn compute_places(f: &Poly, prec: u32, cap: u32) -> Result<Vec<ArchPlace>> {
    let iso = isolate_roots(f, prec, cap.max(prec))?;
    let mut out: Vec<ArchPlace> = iso
        .real
        .into_iter()
        .map(|r| ArchPlace { index: 0, root: PlaceRoot::Real(r) })
        .chain(iso.complex.into_iter().map(|z| ArchPlace {
            index: 0,
            root: PlaceRoot::Complex(z),
        }))
        .collect();
    for (k, v) in out.iter_mut().enumerate() {
        v.index = k;
    }
    Ok(out)
}

/// Reorders places isolated at a higher precision so that index `k` refers to
/// the same root as `reference[k]`. Isolating disks contain exactly one root,
/// so the sharper ball lies inside exactly one reference ball.
pub(super) fn match_order(reference: &[ArchPlace], fresh: Vec<ArchPlace>) -> Vec<ArchPlace> {
    let mut slots: Vec<Option<ArchPlace>> = vec![None; reference.len()];
    for mut v in fresh {
        let z = v.root_ball();
        let k = reference
            .iter()
            .position(|r| {
                let w = r.root_ball();
                r.is_real() == v.is_real() && w.re.overlaps(&z.re) && w.im.overlaps(&z.im)
            })
            .expect("sharper root lies in a reference isolating ball");
        v.index = k;
        slots[k] = Some(v);
    }
    slots
        .into_iter()
        .map(|s| s.expect("one sharper root per reference place"))
        .collect()
}
