//! Stably canonical basis elements, ambient and per variant.

use affschur::matrices::enumerate_xi;
use affschur::ring::WeightFunction;
use affschur::stab::canonical::StabCanonical;
use affschur::stab::Variant;

fn main() {
    let w = WeightFunction::new(1, 1, 3).unwrap();
    for v in Variant::ALL {
        let sc = StabCanonical::new(v, w.clone());
        let Some((a, x)) = enumerate_xi(1, 3, 2)
            .into_iter()
            .filter(|a| v.contains(a))
            .filter_map(|a| sc.canonical(&a).ok().map(|x| (a, x)))
            .find(|(_, x)| x.len() > 1)
        else {
            continue;
        };
        let terms: Vec<String> = x.terms.iter().map(|(m, c)| format!("({c}) {}", m.compact())).collect();
        println!("{v}: {{A}} for A = {}: {}", a.compact(), terms.join(" + "));
        if v != Variant::JJ {
            println!("    restricted bar gives the same element: {}", sc.variant_canonical(&a).unwrap() == x);
        }
    }
}
