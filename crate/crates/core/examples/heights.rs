//! Heights of group elements, and the sub-multiplicativity bound over a
//! Cayley ball.

use freerank::arith::Precision;
use freerank::catalog;
use freerank::group::bfs_ball;
use freerank::heights::{claim2_over_set, height_matrix};

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    for w in ["a", "b", "a b", "a^3 b^-2", "a b a^-1 b^-1"] {
        let m = g.evaluate(&g.parse_word(w)?);
        let h = height_matrix(g.field(), &m, 128)?;
        println!("H({w}) = {}", h.total);
        if let Some(e) = &h.exact {
            println!("    exactly {e}");
        }
    }

    let radius = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let ball = bfs_ball(&g, radius, false, None);
    let ms: Vec<_> = ball.entries().iter().map(|e| e.matrix.clone()).collect();
    let t = claim2_over_set(g.field(), &ms, Precision::default())?;
    println!(
        "H(MN) <= 4 H(M) H(N) over {} pairs: {} failures, {} inconclusive",
        t.pairs,
        t.failures.len(),
        t.inconclusive
    );
    Ok(())
}
