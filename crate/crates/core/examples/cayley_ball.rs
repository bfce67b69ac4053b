//! Sphere sizes of Cayley balls in SL_2 and PSL_2.

use freerank::catalog;
use freerank::group::bfs_ball;

fn main() {
    let g = catalog::figure_eight();
    let r = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let sl = bfs_ball(&g, r, false, None);
    let psl = bfs_ball(&g, r, true, None);
    println!("SL_2 spheres  {:?} ({} elements)", sl.sphere_counts(), sl.len());
    println!("PSL_2 spheres {:?} ({} elements)", psl.sphere_counts(), psl.len());
    let last = sl.entries().last().unwrap();
    println!("last element: {} = {}", g.format_word(&last.word), last.matrix);
}
