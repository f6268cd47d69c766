//! The acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test --release --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use affschur::algebra::Combo;
use affschur::canonical::{is_leading, Canonical, Extension};
use affschur::hecke::{x_lambda, HeckeElement, Params};
use affschur::iqg::{check_all, Kind};
use affschur::matrices::{enumerate_xi, leq_alg, tridiagonal_pairs, CodedMatrix};
use affschur::ring::{mono, Scalar, WeightFunction};
use affschur::schur::appendix::{mul_c_form, mul_fl19, mul_general_c, mul_general_d, mul_type_d, mul_type_d_single, SingleEntry};
use affschur::schur::chevalley::{generator_matrix, Generator};
use affschur::schur::formula::mul_formula_standard;
use affschur::schur::{fact_c, mul_formula, Oracle};
use affschur::stab::canonical::StabCanonical;
use affschur::stab::{stab_mul_symbolic, stab_mul_tridiagonal, tridiagonal_stab, Stab, Variant};
use affschur::weyl::{compositions, parabolic_elements, WeylElement};
use affschur::Error;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn families() -> Vec<(usize, usize)> {
    vec![(1, 2), (2, 3)]
}

fn pairs() -> Vec<(usize, CodedMatrix, CodedMatrix)> {
    families().into_iter().flat_map(|(r, d)| tridiagonal_pairs(r, d, 2).into_iter().map(move |(b, a)| (d, b, a))).collect()
}

fn corpus() -> Vec<(usize, CodedMatrix)> {
    families().into_iter().flat_map(|(r, d)| enumerate_xi(r, d, 2).into_iter().map(move |a| (d, a))).collect()
}

fn oracles() -> BTreeMap<usize, Oracle> {
    families().into_iter().map(|(_, d)| (d, Oracle::new(d).unwrap())).collect()
}

fn c1_oracle() -> Outcome {
    let os = oracles();
    let ps = pairs();
    for (d, b, a) in &ps {
        let x = os[d].mul(b, a).map_err(|e| e.to_string())?;
        let y = mul_formula(b, a).map_err(|e| e.to_string())?;
        ensure(x == y, || format!("B = {} A = {}", b.compact(), a.compact()))?;
    }
    ensure(ps.len() >= 200, || format!("only {} pairs", ps.len()))?;
    Ok(format!("{} pairs", ps.len()))
}

fn c2_poincare() -> Outcome {
    let xs = corpus();
    for (_, a) in &xs {
        let sum: Scalar = parabolic_elements(&a.delta())
            .iter()
            .map(|w| {
                let l = w.lengths();
                mono(-2 * l.c0 + 2 * l.cd, -2 * l.c0 - 2 * l.cd, -4 * l.a)
            })
            .sum();
        ensure(sum == fact_c(a), || a.compact())?;
    }
    Ok(format!("{} matrices", xs.len()))
}

fn t(d: usize, word: &[usize]) -> HeckeElement {
    let p = Params::new(d);
    word.iter().fold(HeckeElement::one(d), |x, &s| x.mul_simple(s, &p))
}

fn eigenvalue(d: usize, s: usize) -> Scalar {
    if s == 0 {
        mono(-2, 0, 0)
    } else if s == d {
        mono(0, -2, 0)
    } else {
        mono(0, 0, -2)
    }
}

fn c3_hecke() -> Outcome {
    let mut n = 0;
    for d in 2..=4 {
        for s in 0..=d {
            // (T_s - u)(T_s + v) = 0
            let v = if s == 0 {
                mono(0, 2, 0)
            } else if s == d {
                mono(-2, 0, 0)
            } else {
                mono(0, 0, 2)
            };
            let ts = t(d, &[s]);
            let e = HeckeElement::one(d);
            ensure(ts.sub(&e.scale(&eigenvalue(d, s))).mul(&ts.add(&e.scale(&v))).unwrap().is_zero(), || format!("quadratic d={d} s={s}"))?;
            for u in s + 1..=d {
                let m = if u - s >= 2 { 2 } else if s == 0 || u == d { 4 } else { 3 };
                let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { s } else { u }).collect();
                let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { u } else { s }).collect();
                ensure(t(d, &w1) == t(d, &w2), || format!("braid d={d} {s} {u}"))?;
                ensure(WeylElement::from_word(d, &w1).unwrap() == WeylElement::from_word(d, &w2).unwrap(), || "Weyl braid".into())?;
                n += 1;
            }
        }
    }
    for r in 1..=3 {
        for d in 1..=3 {
            let p = Params::new(d);
            for lam in compositions(r, d) {
                let x = x_lambda(&lam);
                for i in lam.generators() {
                    ensure(x.mul_simple(i, &p) == x.scale(&eigenvalue(d, i)), || format!("eigen {lam:?} i={i}"))?;
                    n += 1;
                }
            }
        }
    }
    let os = oracles();
    let xs = corpus();
    for (d, a) in &xs {
        let o = &os[d];
        let x = Combo::single(a.clone(), Scalar::one());
        ensure(o.bar(&o.bar(&x).unwrap()).unwrap() == x, || format!("bar^2 {}", a.compact()))?;
        let z = o.lemma_product(a).map_err(|e| e.to_string())?;
        let den = fact_c(a);
        ensure(z.terms.values().all(|c| c.div_exact(&den).is_ok()), || format!("divisibility {}", a.compact()))?;
    }
    Ok(format!("{n} braid/quadratic/eigen checks, bar and divisibility on {} matrices", xs.len()))
}

fn c4_appendix() -> Outcome {
    let ps = pairs();
    for (_, b, a) in &ps {
        let g = mul_general_c(b, a).unwrap();
        let c = mul_c_form(b, a).unwrap();
        let f = mul_fl19(b, a).unwrap();
        ensure(g == c && c == f, || format!("B = {} A = {}", b.compact(), a.compact()))?;
    }
    Ok(format!("{} pairs, three forms", ps.len()))
}

fn c5_type_d() -> Outcome {
    let ps = pairs();
    for (_, b, a) in &ps {
        ensure(mul_general_d(b, a).unwrap() == mul_type_d(b, a).unwrap(), || format!("B = {} A = {}", b.compact(), a.compact()))?;
    }
    let mut singles = 0;
    for (r, d) in families() {
        for a in enumerate_xi(r, d, 2) {
            for h in 0..=r {
                for (g, s) in [(Generator::E(h), SingleEntry::Up(h)), (Generator::F(h), SingleEntry::Down(h))] {
                    let Ok(b) = generator_matrix(g, &a.row_c(), 1) else { continue };
                    ensure(mul_general_d(&b, &a).unwrap() == mul_type_d_single(s, &a).unwrap(), || format!("{g:?} A = {}", a.compact()))?;
                    singles += 1;
                }
            }
        }
    }
    Ok(format!("{} pairs, {singles} single-entry products", ps.len()))
}

fn c6_bar_triangular() -> Outcome {
    let os = oracles();
    let xs = corpus();
    for (d, a) in &xs {
        let x = Combo::single(a.clone(), Scalar::one());
        let y = os[d].bar_standard(&x).unwrap();
        ensure(y.coeff(a) == Scalar::one(), || format!("leading {}", a.compact()))?;
        ensure(y.sub(&x).terms.keys().all(|m| m != a && leq_alg(m, a)), || format!("support {}", a.compact()))?;
    }
    Ok(format!("{} matrices", xs.len()))
}

fn c7_canonical() -> Outcome {
    let os = oracles();
    let mut n = 0;
    for (l0, l1, ld) in [(1, 1, 1), (1, 1, 3), (0, 1, 2)] {
        let w = WeightFunction::new(l0, l1, ld).unwrap();
        for (d, a) in corpus() {
            let can = Canonical::new(&os[&d], w);
            let x = can.canonical(&a).map_err(|e| e.to_string())?;
            let at = || format!("L = ({l0},{l1},{ld}) {}", a.compact());
            ensure(is_leading(&x, &a) && can.bar(&x).unwrap() == x, at)?;
            ensure(x.terms.iter().all(|(m, c)| m == &a || c.in_positive_lattice(can.c())), at)?;
            ensure(can.canonical_with(&a, Extension::Reversed).unwrap() == x, at)?;
            let m = can.monomial(&a).unwrap();
            ensure(is_leading(&m, &a) && can.bar(&m).unwrap() == m, at)?;
            ensure(is_leading(&can.in_canonical_basis(&m).unwrap(), &a), at)?;
            n += 1;
        }
    }
    Ok(format!("{n} elements over three weight functions"))
}

fn c8_stab() -> Outcome {
    let ps = pairs();
    for (_, b, a) in &ps {
        let x = stab_mul_symbolic(Variant::JJ, b, a).map_err(|e| e.to_string())?;
        for p in [8, 10, 12] {
            let want = mul_formula_standard(&b.shift_diag(p), &a.shift_diag(p)).unwrap();
            ensure(x.at_level(Variant::JJ, p).unwrap() == want, || format!("p={p} B = {} A = {}", b.compact(), a.compact()))?;
        }
    }
    let st = Stab::new(Variant::JJ);
    let mut triples = 0;
    for (r, d) in families() {
        for (k, a0) in enumerate_xi(r, d, 2).iter().enumerate().filter(|(k, _)| k % 3 == 0).take(40) {
            let a = a0.shift_diag(-2 * (k as i64 % 2));
            let bs = tridiagonal_stab(Variant::JJ, &a.row_c(), 1);
            let b = &bs[(k * 7) % bs.len()];
            let cs = tridiagonal_stab(Variant::JJ, &b.row_c(), 1);
            let c = &cs[(k * 5 + 1) % cs.len()];
            let cb = st.mul_basis(c, b).unwrap();
            let left = st.mul(&cb, &Combo::single(a.clone(), Scalar::one())).unwrap();
            let right = st.mul(&Combo::single(c.clone(), Scalar::one()), &st.mul_basis(b, &a).unwrap()).unwrap();
            ensure(left == right, || format!("associativity {} {} {}", c.compact(), b.compact(), a.compact()))?;
            triples += 1;
        }
    }
    ensure(triples >= 50, || format!("only {triples} triples"))?;
    Ok(format!("{} pairs at p = 8, 10, 12; {triples} associative triples", ps.len()))
}

fn variant_sample(v: Variant, r: usize) -> Vec<CodedMatrix> {
    let d = r + 1;
    let mut out: Vec<CodedMatrix> = [(d, 1), (d + 1, 2), (d + 2, 4)]
        .into_iter()
        .flat_map(|(dd, every)| {
            enumerate_xi(r, dd, 2).into_iter().enumerate().filter(move |(k, _)| k % every == 0).map(|(k, a)| a.shift_diag(-2 * (k as i64 % 2)))
        })
        .filter(|a| v.contains(a))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn c9_variants() -> Outcome {
    let w = WeightFunction::new(1, 1, 3).unwrap();
    let (mut products, mut agreed, mut tridiagonal) = (0, 0, 0);
    for v in [Variant::JI, Variant::IJ, Variant::II] {
        for r in [1, 2] {
            let xs = variant_sample(v, r);
            let st = Stab::new(v);
            let mut by_col: BTreeMap<Vec<i64>, Vec<&CodedMatrix>> = BTreeMap::new();
            for b in &xs {
                by_col.entry(b.col_c()).or_default().push(b);
            }
            for (k, a) in xs.iter().enumerate() {
                let Some(bs) = by_col.get(&a.row_c()) else { continue };
                for b in bs.iter().skip(k % 3).step_by(3).take(3) {
                    let x = st.mul_basis(b, a).map_err(|e| e.to_string())?;
                    v.filter(&x).map_err(|e| format!("{v} closure {} {}: {e}", b.compact(), a.compact()))?;
                    products += 1;
                }
                for g in tridiagonal_stab(v, &a.row_c(), 1).iter().filter(|g| v.contains(g)) {
                    v.filter(&stab_mul_tridiagonal(v, g, a).unwrap()).map_err(|e| format!("{v} closure {}: {e}", g.compact()))?;
                    tridiagonal += 1;
                }
            }
            let sc = StabCanonical::new(v, w.clone());
            for a in &xs {
                let ambient = match sc.canonical(a) {
                    Ok(x) => x,
                    // no Chevalley monomial reaches periodic matrices
                    Err(Error::Domain(_)) => continue,
                    Err(e) => return Err(e.to_string()),
                };
                let restricted = sc.variant_canonical(a).map_err(|e| format!("{v} {}: {e}", a.compact()))?;
                ensure(restricted == ambient, || format!("{v} canonical {}", a.compact()))?;
                agreed += 1;
            }
        }
    }
    Ok(format!("{products} sampled and {tridiagonal} tridiagonal products closed, {agreed} canonical elements agree"))
}

fn c10_iqg() -> Outcome {
    let mut parts = Vec::new();
    for kind in Kind::ALL {
        for r in [1, 2] {
            let s = check_all(kind, r, (-3, 3)).map_err(|e| e.to_string())?;
            ensure(s.weights > 0, || format!("{kind} r={r}: no weights"))?;
            if let Some(f) = s.relations.iter().find(|x| x.failures > 0) {
                return Err(format!("{kind} r={r} {}: {:?}", f.name, f.first_counterexample));
            }
            parts.push(format!("{kind}/{r}: {}x{}", s.relations.len(), s.weights));
        }
    }
    Ok(format!("relations x weights {}", parts.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", c1_oracle),
        ("Poincare identity", c2_poincare),
        ("Hecke layer", c3_hecke),
        ("equal-parameter forms", c4_appendix),
        ("type D", c5_type_d),
        ("bar triangularity", c6_bar_triangular),
        ("canonical bases", c7_canonical),
        ("stabilization", c8_stab),
        ("variants", c9_variants),
        ("iquantum groups", c10_iqg),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria pass");
}
