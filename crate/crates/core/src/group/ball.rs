//! Breadth-first enumeration of the Cayley ball of radius `R`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::matrix::GroupMatrix;
use super::spec::GroupSpec;
use super::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct BallEntry {
    pub matrix: GroupMatrix,
    pub length: u32,
    /// A word of minimal length evaluating to `matrix` (up to sign in PSL mode).
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct BallEnumeration {
    radius: u32,
    psl_mode: bool,
    entries: Vec<BallEntry>,
    index: HashMap<Vec<u8>, usize>,
    counts: Vec<usize>,
    complete: bool,
}

impl BallEnumeration {
    /// Requested radius.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn psl_mode(&self) -> bool {
        self.psl_mode
    }

    /// Entries in order of length, each sphere sorted by canonical key.
    pub fn entries(&self) -> &[BallEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of elements of each exact length `0..=radius` (fewer if truncated).
    pub fn sphere_counts(&self) -> &[usize] {
        &self.counts
    }

    /// False when the element budget stopped the enumeration early; the
    /// spheres listed are then complete only up to `complete_radius`.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Largest radius whose ball is fully enumerated.
    pub fn complete_radius(&self) -> u32 {
        if self.complete {
            self.radius
        } else {
            self.counts.len().saturating_sub(1) as u32
        }
    }

    pub fn get(&self, m: &GroupMatrix) -> Option<&BallEntry> {
        self.index
            .get(&m.canonical_key(self.psl_mode))
            .map(|&k| &self.entries[k])
    }

    pub fn length_of(&self, m: &GroupMatrix) -> Option<u32> {
        self.get(m).map(|e| e.length)
    }
}

/// Enumerates every element of word length at most `radius`. Spheres are
/// expanded in parallel and merged in a fixed order, so the result does not
/// depend on scheduling. If more than `budget` elements would be stored the
/// enumeration stops after the current sphere and is flagged incomplete.
pub fn bfs_ball(spec: &GroupSpec, radius: u32, psl_mode: bool, budget: Option<usize>) -> BallEnumeration {
    let field = spec.field();
    let id = GroupMatrix::identity(field);
    let mut ball = BallEnumeration {
        radius,
        psl_mode,
        index: HashMap::from([(id.canonical_key(psl_mode), 0)]),
        entries: vec![BallEntry {
            matrix: id,
            length: 0,
            word: Word::empty(),
        }],
        counts: vec![1],
        complete: true,
    };
    let nletters = spec.letter_matrices().len() as u32;
    let mut frontier: Vec<usize> = vec![0];
    for len in 1..=radius {
        let candidates: Vec<Vec<(Vec<u8>, GroupMatrix, Word)>> = frontier
            .par_iter()
            .map(|&k| {
                let e = &ball.entries[k];
                let last = e.word.letters().last().copied();
                (0..nletters)
                    .map(Letter)
                    .filter(|&l| Some(l.inv()) != last)
                    .map(|l| {
                        let m = e.matrix.mul(field, spec.letter(l));
                        let mut w = e.word.clone();
                        w.push(l);
                        (m.canonical_key(psl_mode), m, w)
                    })
                    .collect()
            })
            .collect();
        let mut sphere: Vec<(Vec<u8>, GroupMatrix, Word)> = Vec::new();
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        for (key, m, w) in candidates.into_iter().flatten() {
            if ball.index.contains_key(&key) || seen.contains(&key) {
                continue;
            }
            seen.insert(key.clone());
            sphere.push((key, m, w));
        }
        if let Some(b) = budget {
            if ball.entries.len() + sphere.len() > b {
                ball.complete = false;
                break;
            }
        }
        sphere.sort_by(|x, y| x.0.cmp(&y.0));
        ball.counts.push(sphere.len());
        frontier.clear();
        for (key, m, w) in sphere {
            let k = ball.entries.len();
            ball.index.insert(key, k);
            ball.entries.push(BallEntry {
                matrix: m,
                length: len,
                word: w,
            });
            frontier.push(k);
        }
        if frontier.is_empty() {
            // finite group exhausted; larger spheres are empty
            for _ in (len + 1)..=radius {
                ball.counts.push(0);
            }
            break;
        }
    }
    ball
}
