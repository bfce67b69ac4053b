//! Quotient orders, word systoles and `dim H_1` for the catalog group across
//! small levels, with timings.
//!
//! cargo run --release --example survey -- [r_max]

use std::time::Instant;

use freerank::arith::Precision;
use freerank::catalog;
use freerank::congruence::{finite_quotient, quotient_order, word_systole, CongruenceLevel, QuotientOptions};
use freerank::geometry::geodesic_systole_upper;
use freerank::homology::{coset_table, dim_h1_mod_p};

const HOMOLOGY_BUDGET: u128 = 20_000;

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    let r_max: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    for (p, i) in [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (7, 2)] {
        let t0 = Instant::now();
        let level = CongruenceLevel::new(&g, p, i)?;
        let order = quotient_order(&g, &level, QuotientOptions::default())?;
        let sys = word_systole(&g, &level, r_max, None)?;
        let geo = geodesic_systole_upper(&g, &level, r_max, None, Precision::default())?;
        let h1 = if order.order <= HOMOLOGY_BUDGET {
            let opts = QuotientOptions {
                budget: HOMOLOGY_BUDGET as usize,
                projective: false,
            };
            let q = finite_quotient(&g, &level, opts)?;
            let t = coset_table(&q, &[])?;
            dim_h1_mod_p(&g, &t, p, false)?.dim_h1.to_string()
        } else {
            "n/a".to_string()
        };
        println!(
            "p={p} i={i} n={} via {:?} sys={:?} psl={:?} geo={:?} dim_h1={h1} ({:.1}s)",
            order.order,
            order.method,
            sys.value,
            sys.psl_value,
            geo.value.map(|v| v.mid),
            t0.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
