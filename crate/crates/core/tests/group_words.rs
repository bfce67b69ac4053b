mod common;

use proptest::prelude::*;

use freerank::catalog;
use freerank::group::{bfs_ball, Letter, Word};

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..2, any::<bool>()), 0..12)
        .prop_map(|v| Word::new(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
}

proptest! {
    #[test]
    fn inverse_word_evaluates_to_inverse(w in word()) {
        let g = catalog::figure_eight();
        let k = g.field();
        let m = g.evaluate(&w);
        prop_assert!(m.mul(k, &g.evaluate(&w.inverse())).is_identity());
        prop_assert_eq!(w.inverse().inverse(), w.clone());
    }

    #[test]
    fn free_reduction(w in word()) {
        let g = catalog::figure_eight();
        let r = w.free_reduce();
        prop_assert!(r.is_freely_reduced());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert_eq!(g.evaluate(&r), g.evaluate(&w));
        prop_assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn parse_format_round_trip(w in word()) {
        let g = catalog::figure_eight();
        let w = w.free_reduce();
        prop_assert_eq!(g.parse_word(&g.format_word(&w)).unwrap(), w);
    }

    #[test]
    fn ball_lengths_are_word_lengths(w in word()) {
        let g = catalog::figure_eight();
        let b = bfs_ball(&g, 4, false, None);
        let m = g.evaluate(&w);
        if let Some(l) = b.length_of(&m) {
            prop_assert!(l as usize <= w.free_reduce().len());
            let e = b.get(&m).unwrap();
            prop_assert_eq!(g.evaluate(&e.word), m);
        } else {
            prop_assert!(w.free_reduce().len() > 4);
        }
    }
}

#[test]
fn free_group_ball_sizes() {
    // the sphere of radius r in a free group of rank 2 has 4 * 3^(r-1) elements
    let b = bfs_ball(&common::sanov(), 5, false, None);
    assert_eq!(b.sphere_counts(), &[1, 4, 12, 36, 108, 324]);
    assert!(b.is_complete());
}

#[test]
fn figure_eight_ball_is_smaller() {
    let g = catalog::figure_eight();
    let b = bfs_ball(&g, 6, false, None);
    let free: Vec<usize> = (0..=6).map(|r| if r == 0 { 1 } else { 4 * 3usize.pow(r - 1) }).collect();
    // the relator has length 10, so no collapse before radius 5
    assert_eq!(&b.sphere_counts()[..5], &free[..5]);
    assert!(b.sphere_counts()[6] < free[6]);
    let psl = bfs_ball(&g, 6, true, None);
    assert!(psl.len() <= b.len());
}

#[test]
fn budget_truncates() {
    let b = bfs_ball(&common::sanov(), 6, false, Some(100));
    assert!(!b.is_complete());
    assert!(b.complete_radius() < 6);
}
