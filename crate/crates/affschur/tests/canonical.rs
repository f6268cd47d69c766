use affschur::canonical::*;
use affschur::matrices::enumerate_xi;

#[test]
fn chains_have_leading_term() {
    let mut fails = Vec::new();
    let mut n = 0;
    for (r, d, band) in [(1, 2, 2), (2, 3, 2), (1, 3, 3), (2, 4, 3), (1, 4, 4)] {
        for a in enumerate_xi(r, d, band) {
            let chain = tridiagonal_chain(&a).unwrap();
            assert!(chain.iter().all(|b| b.is_tridiagonal()));
            let m = monomial_product(&chain).unwrap();
            n += 1;
            if !is_leading(&m, &a) {
                fails.push(a.compact());
            }
        }
    }
    eprintln!("{} of {n} fail: {:?}", fails.len(), &fails[..fails.len().min(10)]);
    assert!(fails.is_empty());
}

use affschur::ring::WeightFunction;
use affschur::schur::Oracle;

#[test]
fn canonical_basis_properties() {
    for (l0, l1, ld) in [(1, 1, 1), (1, 1, 3), (0, 1, 2)] {
        let w = WeightFunction::new(l0, l1, ld).unwrap();
        for (r, d) in [(1, 2), (2, 3)] {
            let o = Oracle::new(d).unwrap();
            let can = Canonical::new(&o, w);
            let t0 = std::time::Instant::now();
            let mut nontrivial = 0;
            for a in enumerate_xi(r, d, 2) {
                let x = can.canonical(&a).unwrap();
                assert!(is_leading(&x, &a));
                assert_eq!(can.bar(&x).unwrap(), x, "{}", a.compact());
                for (m, c) in &x.terms {
                    if m != &a {
                        assert!(c.in_positive_lattice(can.c()));
                    }
                }
                assert_eq!(can.canonical_with(&a, Extension::Reversed).unwrap(), x);
                if x.len() > 1 {
                    nontrivial += 1;
                }
                let m = can.monomial(&a).unwrap();
                assert!(is_leading(&m, &a));
                assert_eq!(can.bar(&m).unwrap(), m);
                let mc = can.in_canonical_basis(&m).unwrap();
                assert!(is_leading(&mc, &a));
            }
            eprintln!("L=({l0},{l1},{ld}) r={r} d={d}: {nontrivial} with lower terms, {:?}", t0.elapsed());
        }
    }
}

#[test]
fn chain_examples() {
    for a in enumerate_xi(2, 3, 2) {
        let chain = tridiagonal_chain(&a).unwrap();
        if a.is_tridiagonal() {
            assert_eq!(chain, vec![a.clone()]);
        } else {
            assert_eq!(chain.len(), 2, "{}", a.compact());
        }
        for p in [2, 4] {
            let shifted: Vec<_> = chain.iter().map(|b| b.shift_diag(p)).collect();
            assert_eq!(tridiagonal_chain(&a.shift_diag(p)).unwrap(), shifted);
        }
    }
}

#[test]
fn diagonal_canonical_is_standard() {
    let o = Oracle::new(3).unwrap();
    let can = Canonical::new(&o, WeightFunction::new(1, 1, 1).unwrap());
    for a in enumerate_xi(2, 3, 0) {
        let x = can.canonical(&a).unwrap();
        assert_eq!(x.len(), 1);
        assert!(x.coeff(&a).is_one());
    }
}

#[test]
fn closure_cap_is_a_resource_error() {
    let o = Oracle::new(3).unwrap();
    let mut can = Canonical::new(&o, WeightFunction::new(1, 1, 1).unwrap());
    can.cap = 1;
    let hit = enumerate_xi(2, 3, 2).iter().any(|a| matches!(can.canonical(a), Err(affschur::Error::Resource(_))));
    assert!(hit);
}
