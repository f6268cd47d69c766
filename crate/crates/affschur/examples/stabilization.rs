//! Stabilized products: the pi-symbolic product, its values at pi = q^{-p}
//! and at pi = 1.

use affschur::matrices::tridiagonal_pairs;
use affschur::schur::formula::mul_formula_standard;
use affschur::stab::{stab_mul_symbolic, Stab, Variant};

fn main() {
    let (b, a) = tridiagonal_pairs(1, 2, 2).into_iter().find(|(b, a)| mul_formula_standard(b, a).unwrap().len() > 2).unwrap();
    let x = stab_mul_symbolic(Variant::JJ, &b, &a).unwrap();
    println!("B = {}, A = {}; at pi = 1:", b.compact(), a.compact());
    for (m, c) in &x.at_one().unwrap().terms {
        println!("    ({c}) {}", m.compact());
    }
    for p in [8, 10] {
        let level = mul_formula_standard(&b.shift_diag(p), &a.shift_diag(p)).unwrap();
        println!("p = {p}: matches level product: {}", x.at_level(Variant::JJ, p).unwrap() == level);
    }
    for v in Variant::ALL {
        let st = Stab::new(v);
        if v.in_positive_part(&a) && v.in_positive_part(&b) {
            println!("{v}: {} terms at pi = 1", st.mul_basis(&b, &a).unwrap().len());
        }
    }
}
