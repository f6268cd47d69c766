//! Chevalley generators acting on the standard basis, over `Ξ̃_n`.

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::{bounded_compositions, CodedMatrix};
use crate::ring::{c_factor, mono, qbinom, CKind, Scalar};
use crate::schur::chevalley::Generator;

use super::Variant;

fn cbinom(kind: CKind, m: i64, k: i64) -> Result<Scalar> {
    let mut out = qbinom(m + k, k)?;
    for l in 1..=k {
        out = &out * &c_factor(kind, m + l);
    }
    Ok(out)
}

/// The generator `[B]` with `R` units at the generator position and diagonal
/// solved from `col_c(B) = mu` (entries may be negative).
pub fn stab_generator(g: Generator, mu: &[i64], units: i64) -> Result<CodedMatrix> {
    let r = mu.len() - 2;
    let (i, j) = match g {
        Generator::E(i) => (i as i64, i as i64 + 1),
        Generator::F(i) => (i as i64 + 1, i as i64),
    };
    if i.max(j) > r as i64 + 1 {
        return Err(Error::Domain(format!("generator {g:?} out of range for r = {r}")));
    }
    let mut items = vec![(i, j, units)];
    for k in 0..=r as i64 + 1 {
        let x = mu[k as usize] - if k == j { units } else { 0 };
        let special = k == 0 || k == r as i64 + 1;
        items.push((k, k, if special { 2 * x + 1 } else { x }));
    }
    CodedMatrix::from_entries(r, &items)
}

/// `[B][A]` (or `[C][A]`) for a Chevalley generator with `R` units, in the
/// standard basis, by the four closed forms. Diagonal entries of the source
/// row do not bound `t` unless the variant keeps them fixed.
pub fn stab_mul_chevalley(v: Variant, g: Generator, units: i64, a: &CodedMatrix) -> Result<Combo<3>> {
    let r = a.r() as i64;
    let n = a.n();
    let ar = a.r();
    if !v.in_positive_part(a) {
        return Err(Error::Domain(format!("{} is outside the {v} positive part", a.compact())));
    }
    let (tgt, src, raise) = match g {
        Generator::E(i) if (i as i64) <= r => (i as i64, i as i64 + 1, true),
        Generator::F(i) if (i as i64) <= r => (i as i64 + 1, i as i64, false),
        _ => return Err(Error::Domain(format!("generator {g:?} out of range"))),
    };
    let mut out = Combo::new();
    if units == 0 {
        out.add_term(a.clone(), &Scalar::one());
        return Ok(out);
    }
    if units < 0 {
        return Err(Error::Domain("negative number of units".into()));
    }
    let band = a.band().max(1) + 1;
    let cols: Vec<i64> = (src - band..=src + band).collect();
    let free = |u: i64| u == src && !v.fixes(ar, src);
    let caps: Vec<i64> = cols.iter().map(|&u| if free(u) { units } else { a.get(src, u).max(0) }).collect();
    let pos = |u: i64| cols.iter().position(|&c| c == u);
    let tv = |t: &[i64], u: i64| pos(u).map(|k| t[k]).unwrap_or(0);
    // the source row is its own mirror for E(r) (row r+1) and F(0) (row 0)
    let mirror = |u: i64| if src == 0 { -u } else { n - u };
    let self_mirrored = (raise && src == r + 1) || (!raise && src == 0);
    let wide = 3 * band + 2;
    for t in bounded_compositions(units, &caps) {
        if self_mirrored {
            let ok = cols.iter().all(|&u| {
                if free(u) {
                    return true;
                }
                let m = mirror(u);
                let extra = if m == u { tv(&t, u) } else { tv(&t, m) };
                tv(&t, u) + extra <= a.get(src, u)
            });
            if !ok {
                continue;
            }
        }
        let mut target = a.clone();
        for &u in &cols {
            let k = tv(&t, u);
            if k == 0 {
                continue;
            }
            let e_t = CodedMatrix::e_theta(ar, tgt, u);
            let e_s = CodedMatrix::e_theta(ar, src, u);
            for _ in 0..k {
                target = target.add(&e_t).sub(&e_s);
            }
        }
        let at = |j: i64| a.get(tgt, j);
        let asrc = |j: i64| a.get(src, j);
        // doubled q exponent
        let mut e2 = 0;
        for &u in &cols {
            let tu = tv(&t, u);
            if tu == 0 {
                continue;
            }
            if raise {
                for j in u..=u + wide {
                    e2 -= 2 * tu * at(j);
                }
                for j in u + 1..=u + wide {
                    e2 += 2 * tu * (asrc(j) - tv(&t, j));
                }
            } else {
                for j in u - wide..=u {
                    e2 -= 2 * tu * at(j);
                }
                for j in u - wide..u {
                    e2 += 2 * tu * (asrc(j) - tv(&t, j));
                }
            }
        }
        let (h0, h1, coeff) = match g {
            Generator::E(0) => {
                let s: i64 = cols.iter().filter(|&&u| u <= 0).map(|&u| tv(&t, u)).sum();
                for &u in &cols {
                    let tu = tv(&t, u);
                    for j in u + 1..=-u {
                        e2 -= 2 * tu * tv(&t, j);
                    }
                    if u <= 0 {
                        e2 -= tu * (tu - 3);
                    }
                }
                let mut c = cbinom(CKind::C0, a.prime(0, 0), tv(&t, 0))?;
                for &u in cols.iter().filter(|&&u| u > 0) {
                    let (x, y) = (tv(&t, u), tv(&t, -u));
                    c = &c * &(&qbinom(at(u) + x + y, x)? * &qbinom(at(u) + y, y)?);
                }
                (-s, -s, c.bar())
            }
            Generator::F(i) if i as i64 == r => {
                let s: i64 = cols.iter().filter(|&&u| u >= r + 1).map(|&u| tv(&t, u)).sum();
                for &u in &cols {
                    let tu = tv(&t, u);
                    for j in n - u..u {
                        e2 -= 2 * tu * tv(&t, j);
                    }
                    if u >= r + 1 {
                        e2 -= tu * (tu - 3);
                    }
                }
                let mut c = cbinom(CKind::C1, a.prime(r + 1, r + 1), tv(&t, r + 1))?;
                for &u in cols.iter().filter(|&&u| u > r + 1) {
                    let (x, y) = (tv(&t, u), tv(&t, n - u));
                    c = &c * &(&qbinom(at(u) + x + y, x)? * &qbinom(at(u) + y, y)?);
                }
                (s, -s, c.bar())
            }
            _ => {
                let mut c = Scalar::one();
                for &u in &cols {
                    let tu = tv(&t, u);
                    c = &c * &qbinom(at(u) + tu, tu)?.bar();
                }
                let (mut h0, mut h1) = (0, 0);
                if raise && src == r + 1 {
                    let s: i64 = cols.iter().filter(|&&u| u < r + 1).map(|&u| tv(&t, u)).sum();
                    h0 = -s;
                    h1 = s;
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in u + 1..n - u {
                            e2 -= 2 * tu * tv(&t, j);
                        }
                        if u < r + 1 {
                            e2 -= tu * (tu + 3);
                        }
                    }
                }
                if !raise && src == 0 {
                    let s: i64 = cols.iter().filter(|&&u| u > 0).map(|&u| tv(&t, u)).sum();
                    h0 = s;
                    h1 = s;
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in -u + 1..u {
                            e2 -= 2 * tu * tv(&t, j);
                        }
                        if u > 0 {
                            e2 -= tu * (tu + 3);
                        }
                    }
                }
                (h0, h1, c)
            }
        };
        out.add_term(target, &(&coeff * &mono(h0, h1, e2)));
    }
    Ok(out)
}
