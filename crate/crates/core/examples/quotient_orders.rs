//! Orders `n_i = [Gamma : Gamma_i]` by closure and by lifting, against the
//! order of the ambient group.

use freerank::catalog;
use freerank::congruence::{ambient_order, estimate_dim_growth, quotient_order, CongruenceLevel, QuotientOptions};

fn main() -> freerank::Result<()> {
    let g = catalog::figure_eight();
    let opts = QuotientOptions::default();
    for p in [2u64, 3, 5, 7] {
        let first = if p == 2 { 2 } else { 1 };
        let mut orders = Vec::new();
        for i in first..first + 2 {
            let level = CongruenceLevel::new(&g, p, i)?;
            let q = quotient_order(&g, &level, opts)?;
            println!(
                "p = {p} i = {i}: n = {} via {:?}, ambient {:?}",
                q.order,
                q.method,
                ambient_order(&level)
            );
            orders.push(q.order);
        }
        let d = estimate_dim_growth(p, &orders)?;
        println!("    d_hat = {} ({})", d.d_hat, d.label);
    }
    Ok(())
}
