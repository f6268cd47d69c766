//! Products with Chevalley generators: `B - R E^{i,i+1}_θ` or
//! `C - R E^{i+1,i}_θ` diagonal.

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::{bounded_compositions, CodedMatrix};
use crate::ring::{cfactorial, mono, qbinom, qfact, CKind, Scalar};

/// Which unit moves: `E(i)` raises mass from row `i+1` to row `i`, `F(i)` lowers it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(usize),
    F(usize),
}

impl Generator {
    /// `(row, col)` of the off-diagonal entry of the generator matrix.
    fn position(&self) -> (i64, i64) {
        match *self {
            Generator::E(i) => (i as i64, i as i64 + 1),
            Generator::F(i) => (i as i64 + 1, i as i64),
        }
    }
}

/// The generator matrix with `R` units off the diagonal and `col_c = mu`.
pub fn generator_matrix(g: Generator, mu: &[i64], units: i64) -> Result<CodedMatrix> {
    let r = mu.len() - 2;
    let (i, j) = g.position();
    if i < 0 || j < 0 || i.max(j) > r as i64 + 1 {
        return Err(Error::Domain(format!("generator {g:?} out of range for r = {r}")));
    }
    let mut items = vec![(i, j, units)];
    for k in 0..=r as i64 + 1 {
        let x = mu[k as usize] - if k == j { units } else { 0 };
        if x < 0 {
            return Err(Error::Domain("generator does not fit the column weight".into()));
        }
        let special = k == 0 || k == r as i64 + 1;
        items.push((k, k, if special { 2 * x + 1 } else { x }));
    }
    let b = CodedMatrix::from_entries(r, &items)?;
    if b.col_c() != mu {
        return Err(Error::Internal("generator margins".into()));
    }
    Ok(b)
}

fn t_vectors(caps: &[i64], units: i64, ok: impl Fn(&[i64]) -> bool) -> Vec<Vec<i64>> {
    bounded_compositions(units, caps).into_iter().filter(|t| ok(t)).collect()
}

/// `e_B e_A` for a Chevalley-shaped `B`.
pub fn mul_chevalley(g: Generator, units: i64, a: &CodedMatrix) -> Result<Combo<3>> {
    let r = a.r() as i64;
    let n = a.n();
    let band = a.band() + 1;
    let mut out = Combo::new();
    if units == 0 {
        out.add_term(a.clone(), &Scalar::one());
        return Ok(out);
    }
    match g {
        Generator::E(gi) => {
            let i = gi as i64;
            if i > r {
                return Err(Error::Domain("E(i) needs i <= r".into()));
            }
            let src = i + 1;
            let cols: Vec<i64> = (src - band..=src + band).collect();
            let caps: Vec<i64> = cols.iter().map(|&u| a.get(src, u)).collect();
            let idx = |u: i64| cols.iter().position(|&c| c == u);
            let tv = |t: &[i64], u: i64| idx(u).map(|k| t[k]).unwrap_or(0);
            // row r+1 is its own mirror image under u -> n-u
            let self_mirrored = src == r + 1;
            for t in t_vectors(&caps, units, |t| {
                !self_mirrored || cols.iter().all(|&u| {
                    let m = n - u;
                    let extra = if m == u { tv(t, u) } else { tv(t, m) };
                    tv(t, u) + extra <= a.get(src, u)
                })
            }) {
                let mut target = a.clone();
                for (k, &u) in cols.iter().enumerate() {
                    if t[k] == 0 {
                        continue;
                    }
                    let e1 = CodedMatrix::e_theta(a.r(), i, u);
                    let e2 = CodedMatrix::e_theta(a.r(), src, u);
                    for _ in 0..t[k] {
                        target = target.add(&e1).sub(&e2);
                    }
                }
                let coeff = if i == 0 {
                    // case with the c0 entry
                    let neg: i64 = cols.iter().filter(|&&u| u < 0).map(|&u| tv(&t, u)).sum();
                    let mut e = 0;
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in u + 1..=u + 2 * band {
                            e -= 2 * a.get(0, j) * tu;
                        }
                        for j in u + 1..-u {
                            e -= 2 * tu * tv(&t, j);
                        }
                        if u < 0 {
                            e -= tu * (tu - 3);
                        }
                    }
                    let a00 = a.prime(0, 0);
                    let t0 = tv(&t, 0);
                    let mut c = &mono(-2 * neg, -2 * neg, 2 * e)
                        * &cfactorial(a00 + t0, CKind::C0)?.div_exact(&(&cfactorial(a00, CKind::C0)? * &qfact(t0)?))?;
                    for &u in cols.iter().filter(|&&u| u > 0) {
                        let (x, y) = (tv(&t, u), tv(&t, -u));
                        c = &c * &(&qbinom(a.get(0, u) + x + y, x)? * &qbinom(a.get(0, u) + y, y)?);
                    }
                    c
                } else {
                    let mut e = 0;
                    let mut c = Scalar::one();
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in u + 1..=u + 2 * band {
                            e -= 2 * a.get(i, j) * tu;
                        }
                        c = &c * &qbinom(a.get(i, u) + tu, tu)?;
                    }
                    &c * &mono(0, 0, 2 * e)
                };
                out.add_term(target, &coeff);
            }
        }
        Generator::F(gi) => {
            let i = gi as i64;
            if i > r {
                return Err(Error::Domain("F(i) needs i <= r".into()));
            }
            let src = i;
            let dst = i + 1;
            let cols: Vec<i64> = (src - band..=src + band).collect();
            let caps: Vec<i64> = cols.iter().map(|&u| a.get(src, u)).collect();
            let idx = |u: i64| cols.iter().position(|&c| c == u);
            let tv = |t: &[i64], u: i64| idx(u).map(|k| t[k]).unwrap_or(0);
            let self_mirrored = src == 0;
            for t in t_vectors(&caps, units, |t| {
                !self_mirrored || cols.iter().all(|&u| {
                    let extra = if u == 0 { tv(t, 0) } else { tv(t, -u) };
                    tv(t, u) + extra <= a.get(0, u)
                })
            }) {
                let mut target = a.clone();
                for (k, &u) in cols.iter().enumerate() {
                    if t[k] == 0 {
                        continue;
                    }
                    let e1 = CodedMatrix::e_theta(a.r(), src, u);
                    let e2 = CodedMatrix::e_theta(a.r(), dst, u);
                    for _ in 0..t[k] {
                        target = target.sub(&e1).add(&e2);
                    }
                }
                let coeff = if dst == r + 1 {
                    // case with the c_d entry
                    let big: i64 = cols.iter().filter(|&&u| u > r + 1).map(|&u| tv(&t, u)).sum();
                    let mut e = 0;
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in u - 2 * band..u {
                            e -= 2 * a.get(r + 1, j) * tu;
                        }
                        for j in n - u + 1..u {
                            e -= 2 * tu * tv(&t, j);
                        }
                        if u > r + 1 {
                            e -= tu * (tu - 3);
                        }
                    }
                    let ad = a.prime(r + 1, r + 1);
                    let t0 = tv(&t, r + 1);
                    let mut c = &mono(2 * big, -2 * big, 2 * e)
                        * &cfactorial(ad + t0, CKind::C1)?.div_exact(&(&cfactorial(ad, CKind::C1)? * &qfact(t0)?))?;
                    for &u in cols.iter().filter(|&&u| u > r + 1) {
                        let (x, y) = (tv(&t, u), tv(&t, n - u));
                        c = &c * &(&qbinom(a.get(r + 1, u) + x + y, x)? * &qbinom(a.get(r + 1, u) + y, y)?);
                    }
                    c
                } else {
                    let mut e = 0;
                    let mut c = Scalar::one();
                    for &u in &cols {
                        let tu = tv(&t, u);
                        for j in u - 2 * band..u {
                            e -= 2 * a.get(dst, j) * tu;
                        }
                        c = &c * &qbinom(a.get(dst, u) + tu, tu)?;
                    }
                    &c * &mono(0, 0, 2 * e)
                };
                out.add_term(target, &coeff);
            }
        }
    }
    Ok(out)
}
