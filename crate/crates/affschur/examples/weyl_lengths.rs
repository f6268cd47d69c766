//! Length statistics in the affine Weyl group of type C.

use affschur::weyl::WeylElement;

fn main() {
    let d = 2;
    for word in [vec![], vec![0], vec![0, 1, 0], vec![0, 1, 2, 1], vec![1, 0, 1, 0]] {
        let g = WeylElement::from_word(d, &word).unwrap();
        let l = g.lengths();
        println!("{word:?}: window {:?}, (l, #s0, #s{d}, rest) = ({}, {}, {}, {}), reduced {:?}", g.window, l.l, l.c0, l.cd, l.a, g.to_reduced_word());
    }
}
