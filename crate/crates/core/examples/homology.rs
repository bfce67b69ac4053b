//! `dim H_1(Gamma_i, F_p)` by Reidemeister-Schreier, and the conditional
//! free-rank certificate it feeds.

use freerank::catalog;
use freerank::congruence::{finite_quotient, CongruenceLevel, QuotientOptions};
use freerank::homology::{ce_growth_report, coset_table, dim_h1_mod_p};
use freerank::report::certificate;

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    let opts = QuotientOptions {
        budget: 20_000,
        projective: false,
    };
    let mut results = Vec::new();
    for (p, i) in [(3, 1), (2, 2), (5, 1)] {
        let level = CongruenceLevel::new(&g, p, i)?;
        let q = finite_quotient(&g, &level, opts)?;
        let table = coset_table(&q, &[])?;
        let h = dim_h1_mod_p(&g, &table, p, false)?;
        println!(
            "({p},{i}): index {}, {} x {} relator matrix of rank {}, dim H_1 = {}",
            h.index, h.relator_rows, h.relator_cols, h.rank, h.dim_h1
        );
        if let Some(c) = certificate(h.dim_h1, g.cusped()) {
            println!("    {:?} with k = {} ({})", c.kind, c.k, c.citation);
        }
        if p == 3 {
            results.push(h);
        }
    }
    match ce_growth_report(&results, None) {
        Ok(r) => println!("{r:?}"),
        Err(e) => println!("growth: {e}"),
    }
    Ok(())
}
