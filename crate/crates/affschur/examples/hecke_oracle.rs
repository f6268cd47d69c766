//! Products in the Hecke algebra and the brute-force Schur algebra oracle.

use affschur::hecke::{HeckeElement, Params};
use affschur::matrices::tridiagonal_pairs;
use affschur::schur::Oracle;

fn main() {
    let d = 2;
    let p = Params::new(d);
    let t0 = HeckeElement::one(d).mul_simple(0, &p);
    println!("T0^2 = {}", serde_json::to_string(&t0.mul(&t0).unwrap().to_json_terms()).unwrap());
    println!("bar(T0) = {}", serde_json::to_string(&t0.bar().to_json_terms()).unwrap());

    let oracle = Oracle::new(d).unwrap();
    for (b, a) in tridiagonal_pairs(1, d, 2).into_iter().step_by(97).take(3) {
        let x = oracle.mul(&b, &a).unwrap();
        println!("e_{} e_{} =", b.compact(), a.compact());
        for (m, c) in &x.terms {
            println!("    ({c}) e_{}", m.compact());
        }
    }
}
