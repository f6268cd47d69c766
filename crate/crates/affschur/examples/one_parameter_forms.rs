//! Equal-parameter type C and type D specializations.

use affschur::matrices::tridiagonal_pairs;
use affschur::schur::appendix::{mul_c_form, mul_fl19, mul_general_c, mul_general_d, mul_type_d};

fn main() {
    let pairs = tridiagonal_pairs(1, 2, 2);
    let c = pairs.iter().filter(|(b, a)| {
        let g = mul_general_c(b, a).unwrap();
        g == mul_c_form(b, a).unwrap() && g == mul_fl19(b, a).unwrap()
    });
    println!("type C: {} of {} pairs agree", c.count(), pairs.len());
    let d = pairs.iter().filter(|(b, a)| mul_general_d(b, a).unwrap() == mul_type_d(b, a).unwrap());
    println!("type D: {} of {} pairs agree", d.count(), pairs.len());
    let (b, a) = &pairs[5];
    for (m, c) in &mul_type_d(b, a).unwrap().terms {
        println!("    ({c}) e_{}", m.compact());
    }
}
