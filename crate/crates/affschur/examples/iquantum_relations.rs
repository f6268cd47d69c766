//! The iquantum group relations under aleph.

use affschur::iqg::{check_all, check_all_with, Kind, Reading};

fn main() {
    for kind in Kind::ALL {
        for r in [1, 2] {
            let s = check_all(kind, r, (-3, 3)).unwrap();
            println!("{kind} r = {r}: {} relations on {} weights, passed = {}", s.relations.len(), s.weights, s.passed());
        }
    }
    // with the t-Serre relation in its bracketed form
    let s = check_all_with(Kind::JI, 2, (-3, 3), Reading::Printed).unwrap();
    for rep in s.relations.iter().filter(|x| x.failures > 0) {
        println!("  bracketed form: {} fails at {} of {}", rep.name, rep.failures, rep.tested);
    }
}
