//! Arithmetic in `Q(theta)`, `theta^2 - theta + 1 = 0`, and the primes of
//! `Z[theta]` above a few rational primes.

use freerank::arith::rational::rat_frac;
use freerank::number_field::NumberField;

fn main() -> freerank::Result<()> {
    let k = NumberField::from_coeffs(&[1, -1, 1])?;
    println!("degree {}, discriminant {}, signature {:?}", k.degree(), k.discriminant(), k.signature());

    let theta = k.element(vec![rat_frac(0, 1), rat_frac(1, 1)]);
    let x = k.add(&k.from_int(2), &theta);
    let y = k.inv(&x).expect("x is nonzero");
    println!("x = {x}, 1/x = {y}, N(x) = {}", k.norm(&x));
    println!("theta^6 = {}", k.pow(&theta, 6));

    for p in [2, 3, 5, 7, 13] {
        for pr in k.primes_above(p)?.iter() {
            let s = pr.summary();
            println!("p = {p}: ({p}, {}) e = {} f = {}, v(x) = {:?}", s.factor, s.e, s.f, pr.valuation(&k, &x));
        }
    }
    for v in k.places() {
        println!("{:?}", v.summary());
    }
    Ok(())
}
