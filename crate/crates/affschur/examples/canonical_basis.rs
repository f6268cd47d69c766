//! Canonical basis elements for a few weight functions.

use affschur::canonical::Canonical;
use affschur::matrices::enumerate_xi;
use affschur::ring::WeightFunction;
use affschur::schur::Oracle;

fn main() {
    let oracle = Oracle::new(2).unwrap();
    for (l0, l1, ld) in [(1, 1, 1), (1, 1, 3), (0, 1, 2)] {
        let can = Canonical::new(&oracle, WeightFunction::new(l0, l1, ld).unwrap());
        println!("L = ({l0}, {l1}, {ld})");
        for a in enumerate_xi(1, 2, 2) {
            let x = can.canonical(&a).unwrap();
            if x.len() < 3 {
                continue;
            }
            let terms: Vec<String> = x.terms.iter().map(|(m, c)| format!("({c}) {}", m.compact())).collect();
            println!("  {{A}} for A = {}: {}", a.compact(), terms.join(" + "));
            break;
        }
    }
}
