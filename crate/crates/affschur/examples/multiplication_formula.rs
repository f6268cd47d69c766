//! The closed multiplication formula against the oracle, in both bases.

use affschur::matrices::tridiagonal_pairs;
use affschur::schur::formula::mul_formula_standard;
use affschur::schur::{mul_formula, standard_product, Oracle};

fn main() {
    let oracle = Oracle::new(3).unwrap();
    let pairs = tridiagonal_pairs(2, 3, 2);
    let mut agree = 0;
    for (b, a) in &pairs {
        let x = mul_formula(b, a).unwrap();
        if x == oracle.mul(b, a).unwrap() && standard_product(b, a, &x) == mul_formula_standard(b, a).unwrap() {
            agree += 1;
        }
    }
    println!("r = 2, d = 3: {agree} of {} products agree", pairs.len());
}
