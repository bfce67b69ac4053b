use proptest::prelude::*;

use freerank::arith::rational::rat_frac;
use freerank::arith::Precision;
use freerank::catalog;
use freerank::group::bfs_ball;
use freerank::heights::{check_sum_rule, claim2_over_set, height_element, height_matrix};
use freerank::number_field::{FieldElement, NumberField};

fn elem(k: &NumberField, c: &[(i64, i64)]) -> FieldElement {
    k.element(c.iter().map(|&(n, d)| rat_frac(n, d)).collect())
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..=30, 1i64..=20), n)
}

proptest! {
    #[test]
    fn height_of_inverse(a in coeffs(2)) {
        // the product formula makes H(x) = H(1/x)
        for f in [[1i64, -1, 1], [-2, 0, 1]] {
            let k = NumberField::from_coeffs(&f).unwrap();
            let x = elem(&k, &a);
            prop_assume!(!x.is_zero());
            let h = height_element(&k, &x, 256).unwrap().total;
            let hi = height_element(&k, &k.inv(&x).unwrap(), 256).unwrap().total;
            prop_assert!(h.overlaps(&hi));
        }
    }

    #[test]
    fn sum_rule(a in coeffs(2), b in coeffs(2)) {
        for f in [[1i64, -1, 1], [-2, 0, 1]] {
            let k = NumberField::from_coeffs(&f).unwrap();
            let r = check_sum_rule(&k, &elem(&k, &a), &elem(&k, &b), 128, 4096).unwrap();
            prop_assert!(r.holds);
        }
    }

    #[test]
    fn heights_at_least_one(a in coeffs(2)) {
        let k = NumberField::from_coeffs(&[-2, 0, 1]).unwrap();
        let h = height_element(&k, &elem(&k, &a), 128).unwrap().total;
        prop_assert!(h.upper() >= freerank::arith::Dyadic::one());
    }
}

#[test]
fn exact_heights_match_balls() {
    // with one archimedean place the exact value and the embedding agree
    let g = catalog::figure_eight();
    let k = g.field();
    let places = k.places_at(256).unwrap();
    for e in bfs_ball(&g, 3, false, None).entries() {
        let h = height_matrix(k, &e.matrix, 256).unwrap();
        let exact = h.exact.clone().unwrap();
        let ball = e
            .matrix
            .entries()
            .iter()
            .fold(freerank::arith::BallReal::one(256), |m, x| m.max(&places[0].abs_value(x)));
        assert!(ball.contains_rat(&exact), "{}", e.matrix);
    }
}

#[test]
fn claim2_real_quadratic_ball() {
    let g = freerank::group::load_group(
        r#"{"name":"q2","field":{"min_poly":[-2,0,1]},"geometric_place":0,
            "generators":{"u":[[["1"],["0","1"]],[["0"],["1"]]],"v":[[["1"],["0"]],[["0","1"],["1"]]]}}"#,
    )
    .unwrap();
    let ms: Vec<_> = bfs_ball(&g, 2, false, None).entries().iter().map(|e| e.matrix.clone()).collect();
    let t = claim2_over_set(g.field(), &ms, Precision::default()).unwrap();
    assert!(t.failures.is_empty());
    assert!(t.pairs >= 100);
}
