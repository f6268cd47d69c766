use affschur::hecke::{bar_x_scalar, x_lambda, HeckeElement, Params};
use affschur::matrices::enumerate_xi;
use affschur::ring::{mono, Scalar};
use affschur::schur::oracle::OracleMethod;
use affschur::schur::{fact_c, Oracle};
use affschur::weyl::{compositions, longest_parabolic, WeylElement};
use proptest::prelude::*;

fn t(d: usize, word: &[usize]) -> HeckeElement {
    let p = Params::new(d);
    let mut x = HeckeElement::one(d);
    for &s in word {
        x = x.mul_simple(s, &p);
    }
    x
}

fn braid_order(d: usize, s: usize, u: usize) -> Option<usize> {
    let (s, u) = (s.min(u), s.max(u));
    if d == 1 {
        return None;
    }
    if u - s >= 2 {
        Some(2)
    } else if s == 0 || u == d {
        Some(4)
    } else {
        Some(3)
    }
}

#[test]
fn braid_relations() {
    for d in 2..=4 {
        for s in 0..=d {
            for u in s + 1..=d {
                let m = braid_order(d, s, u).unwrap();
                let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { s } else { u }).collect();
                let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { u } else { s }).collect();
                assert_eq!(t(d, &w1), t(d, &w2), "d={d} s={s} u={u}");
                assert_eq!(WeylElement::from_word(d, &w1).unwrap(), WeylElement::from_word(d, &w2).unwrap());
            }
        }
    }
}

#[test]
fn quadratic_relations() {
    for d in 1..=4 {
        for s in 0..=d {
            let ts = t(d, &[s]);
            let e = HeckeElement::one(d);
            // (T_s - u)(T_s + v) = 0 with the eigenvalues per generator
            let (u, v) = if s == 0 {
                (mono(-2, 0, 0), mono(0, 2, 0))
            } else if s == d {
                (mono(0, -2, 0), mono(-2, 0, 0))
            } else {
                (mono(0, 0, -2), mono(0, 0, 2))
            };
            let lhs = ts.sub(&e.scale(&u)).mul(&ts.add(&e.scale(&v))).unwrap();
            assert!(lhs.is_zero(), "d={d} s={s}");
        }
    }
}

#[test]
fn quadratic_examples() {
    let t0 = t(2, &[0]);
    let x = t0.mul(&t0).unwrap();
    let want = t0.scale(&(&mono(-2, 0, 0) - &mono(0, 2, 0))).add(&HeckeElement::one(2).scale(&mono(-2, 2, 0)));
    assert_eq!(x, want);
    let t1 = t(2, &[1]);
    let want = t1.scale(&(&mono(0, 0, -2) - &mono(0, 0, 2))).add(&HeckeElement::one(2));
    assert_eq!(t1.mul(&t1).unwrap(), want);
}

#[test]
fn eigen_relations() {
    let mut checked = 0;
    for r in 1..=3 {
        for d in 1..=3 {
            let p = Params::new(d);
            for lam in compositions(r, d) {
                let x = x_lambda(&lam);
                for i in lam.generators() {
                    let ev = if i == 0 {
                        mono(-2, 0, 0)
                    } else if i == d {
                        mono(0, -2, 0)
                    } else {
                        mono(0, 0, -2)
                    };
                    assert_eq!(x.mul_simple(i, &p), x.scale(&ev), "{lam:?} i={i}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn x_lambda_bar_scalar() {
    for r in 1..=2 {
        for d in 1..=3 {
            for lam in compositions(r, d) {
                let x = x_lambda(&lam);
                assert_eq!(x.bar(), x.scale(&bar_x_scalar(&lam)), "{lam:?}");
                // the square root of the scalar makes x_λ bar-invariant
                let l = longest_parabolic(&lam).lengths();
                let half = mono(l.c0 - l.cd, l.c0 + l.cd, 2 * l.a);
                let y = x.scale(&half);
                assert_eq!(y.bar(), y);
            }
        }
    }
}

#[test]
fn divisibility_on_corpus() {
    let mut checked = 0;
    for (r, d) in [(1, 2), (2, 3)] {
        let o = Oracle::new(d).unwrap();
        for a in enumerate_xi(r, d, 2) {
            let z = o.lemma_product(&a).unwrap();
            let den = fact_c(&a);
            for c in z.terms.values() {
                c.div_exact(&den).unwrap_or_else(|_| panic!("{}", a.compact()));
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn coset_sum_matches_divided() {
    for (r, d) in [(1, 2), (2, 3)] {
        let o1 = Oracle::with_method(d, OracleMethod::CosetSum).unwrap();
        let o2 = Oracle::with_method(d, OracleMethod::Divided).unwrap();
        for a in enumerate_xi(r, d, 2) {
            let e = affschur::matrices::CodedMatrix::diag_of_weight(&a.row_c());
            assert_eq!(o1.mul(&e, &a).unwrap(), o2.mul(&e, &a).unwrap(), "{}", a.compact());
        }
    }
}

#[test]
fn bar_examples() {
    let e = HeckeElement::one(2);
    let t0 = t(2, &[0]);
    let want = t0.scale(&mono(2, -2, 0)).add(&e.scale(&(&mono(2, 0, 0) - &mono(0, -2, 0))));
    assert_eq!(t0.bar(), want);
    let t1 = t(2, &[1]);
    assert_eq!(t1.bar(), t1.add(&e.scale(&(&mono(0, 0, 2) - &mono(0, 0, -2)))));
    let t2 = t(2, &[2]);
    assert_eq!(t2.bar(), t2.scale(&mono(2, 2, 0)).add(&e.scale(&(&mono(0, 2, 0) - &mono(2, 0, 0)))));
    assert_eq!(e.bar(), e);
}

fn word_strategy(d: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..=d, 0..6)
}

fn coeff_strategy() -> impl Strategy<Value = Scalar> {
    (-2i64..=2, -2i64..=2, -2i64..=2, -3i64..=3).prop_map(|(a, b, c, k)| mono(2 * a, 2 * b, 2 * c).scale(k))
}

fn element(d: usize, parts: &[(Vec<usize>, Scalar)]) -> HeckeElement {
    let mut x = HeckeElement::zero(d);
    for (w, c) in parts {
        x = x.add(&t(d, w).scale(c));
    }
    x
}

fn elem_strategy(d: usize) -> impl Strategy<Value = HeckeElement> {
    prop::collection::vec((word_strategy(d), coeff_strategy()), 1..4).prop_map(move |v| element(d, &v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn associative(x in elem_strategy(2), y in elem_strategy(2), z in elem_strategy(2)) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn bar_is_ring_involution(x in elem_strategy(3), y in elem_strategy(3)) {
        prop_assert_eq!(x.bar().bar(), x.clone());
        prop_assert_eq!(x.mul(&y).unwrap().bar(), x.bar().mul(&y.bar()).unwrap());
    }
}

#[test]
fn bar_squared_on_oracle_corpus() {
    for (r, d) in [(1, 2), (2, 3)] {
        let o = Oracle::new(d).unwrap();
        for a in enumerate_xi(r, d, 2) {
            let x = affschur::algebra::Combo::single(a.clone(), Scalar::one());
            assert_eq!(o.bar(&o.bar(&x).unwrap()).unwrap(), x, "{}", a.compact());
        }
    }
}
