//! Certified lower bounds for the word systole against the measured word
//! systole and a geodesic upper bound.

use freerank::arith::Precision;
use freerank::catalog;
use freerank::congruence::{certified_word_bound, word_systole, CongruenceLevel};
use freerank::geometry::geodesic_systole_upper;
use freerank::group::bfs_ball;

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    let r_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let ball = bfs_ball(&g, r_max, false, None);
    for (p, i) in [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2)] {
        let level = CongruenceLevel::new(&g, p, i)?;
        let bound = certified_word_bound(&g, &level, 128)?;
        let sys = word_systole(&g, &level, r_max, None)?;
        let geo = geodesic_systole_upper(&g, &level, r_max, None, Precision::default())?;
        let found = match (&sys.value, &sys.witness_word) {
            (Some(v), Some(w)) => format!("{v} ({w})"),
            _ => format!("> {r_max}"),
        };
        let geo = geo.value.map_or_else(|| "no witness".to_string(), |v| format!("{:.6}", v.mid));
        println!("({p},{i}): bound {} <= systole {found}; geodesic <= {geo}", bound.bound);
    }
    println!("ball of radius {r_max} has {} elements", ball.len());
    Ok(())
}
