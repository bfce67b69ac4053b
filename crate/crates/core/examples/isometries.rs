//! Classification of group elements as isometries of hyperbolic space, and
//! the volume and systole inequalities.

use freerank::arith::Precision;
use freerank::catalog;
use freerank::geometry::{ball_volume, classify, sysg_lower_bound, volume_systole_check, ManifoldMode};

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    for w in ["a", "a b", "a b^-1", "a^2 b", "a b a b^-1", "a^3 b^3"] {
        let m = g.evaluate(&g.parse_word(w)?);
        let c = classify(&g, &m, Precision::default())?;
        println!("{w:>12}: {:?}, length {:.10}", c.kind, c.real_length.to_f64());
    }
    for r in [0.5, 1.0, 2.0] {
        println!("vol B({r}) = {:.10}", ball_volume(r, 128).to_f64());
    }
    let check = volume_systole_check(2.0298832128, 1.0, ManifoldMode::Cusped, 0.1);
    println!("{check:?}");
    println!("{:?}", sysg_lower_bound(12.0, 0.1));
    Ok(())
}
