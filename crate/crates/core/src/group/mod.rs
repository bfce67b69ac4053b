//! The finitely generated matrix group: generators, words, the group
//! document format and Cayley-ball enumeration.

mod ball;
mod matrix;
mod spec;
mod word;

pub use ball::{bfs_ball, BallEntry, BallEnumeration};
pub use matrix::GroupMatrix;
pub use spec::{load_group, load_group_file, FieldDocument, GroupDocument, GroupSpec};
pub use word::{Letter, Word, WordDisplay};

/// Canonical dedup key of a matrix; see [`GroupMatrix::canonical_key`].
pub fn canonical_form(m: &GroupMatrix, psl_mode: bool) -> Vec<u8> {
    m.canonical_key(psl_mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::Error;

    #[test]
    fn figure_eight_loads() {
        let g = catalog::figure_eight();
        assert_eq!(g.num_generators(), 2);
        assert_eq!(g.relators().len(), 1);
        assert_eq!(g.relator_signs(), &[1]);
        assert!(g.cusped());
        assert!(g.denominator_primes().is_empty());
        assert_eq!(g.geometric_place(), Some(0));
    }

    #[test]
    fn rejects_bad_documents() {
        let det2 = r#"{"name":"bad","field":{"min_poly":[-1,1]},
            "generators":{"a":[[["2"],["0"]],[["0"],["1"]]]}}"#;
        assert!(matches!(load_group(det2), Err(Error::DetNotOne(n)) if n == "a"));
        let rel = r#"{"name":"bad","field":{"min_poly":[-1,1]},
            "generators":{"a":[[["1"],["1"]],[["0"],["1"]]]},"relators":["a a"]}"#;
        assert!(matches!(load_group(rel), Err(Error::RelatorFailed { .. })));
        let schema = r#"{"name":"bad","generators":{}}"#;
        assert!(matches!(load_group(schema), Err(Error::Schema(_))));
    }

    #[test]
    fn no_relators_disables_homology() {
        let doc = r#"{"name":"t","field":{"min_poly":[-1,1]},
            "generators":{"a":[[["1"],["2"]],[["0"],["1"]]]}}"#;
        let g = load_group(doc).unwrap();
        assert!(!g.has_presentation());
    }

    #[test]
    fn small_balls() {
        let g = catalog::figure_eight();
        let b0 = bfs_ball(&g, 0, false, None);
        assert_eq!(b0.len(), 1);
        let b1 = bfs_ball(&g, 1, false, None);
        assert_eq!(b1.len(), 5);
        assert_eq!(b1.sphere_counts(), &[1, 4]);
    }

    #[test]
    fn psl_key_identifies_sign() {
        let g = catalog::figure_eight();
        let a = &g.generators()[0];
        assert_eq!(canonical_form(a, true), canonical_form(&a.neg(), true));
        assert_ne!(canonical_form(a, false), canonical_form(&a.neg(), false));
        let id = GroupMatrix::identity(g.field());
        assert_ne!(canonical_form(&id, true), canonical_form(a, true));
    }

    #[test]
    fn budget_truncation_is_flagged() {
        let g = catalog::figure_eight();
        let b = bfs_ball(&g, 6, false, Some(100));
        assert!(!b.is_complete());
        assert!(b.len() <= 100);
        assert_eq!(b.complete_radius() as usize + 1, b.sphere_counts().len());
    }
}
