//! One-parameter specializations: the equal-parameter type C formulas at
//! `(q0, q1) = (1, q^2)` and type D at `(q0, q1) = (1, 1)`, both with `v = q^{-1}`.

use std::collections::BTreeMap;

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::{bounded_compositions, CodedMatrix, PMatrix};
use crate::ring::{c_int, qbinom, qfact, qint, specialize, CKind, Scalar, SpecScalar, WeightFunction};

use super::formula::{ast_bracket, mult_data};

/// `q0 = 1`, `q1 = q^2`, `q = v^{-1}`.
pub fn spec_c(x: &Scalar) -> Result<SpecScalar> {
    specialize(x, &WeightFunction { l0: 1, l1: 1, ld: 1 })
}

/// `q0 = q1 = 1`, `q = v^{-1}`.
pub fn spec_d(x: &Scalar) -> Result<SpecScalar> {
    specialize(x, &WeightFunction { l0: 0, l1: 1, ld: 0 })
}

fn v(k: i64) -> SpecScalar {
    SpecScalar::v_pow(k)
}

fn v2_minus_one() -> SpecScalar {
    &v(2) - &SpecScalar::one()
}

/// `[m] = (v^{2m} - 1)/(v^2 - 1)`.
fn vint(m: i64) -> SpecScalar {
    spec_d(&qint(m)).unwrap()
}

fn vfact(m: i64) -> Result<SpecScalar> {
    spec_d(&qfact(m)?)
}

fn vbinom(m: i64, k: i64) -> Result<SpecScalar> {
    spec_d(&qbinom(m, k)?)
}

fn spec_combo(x: Combo<3>, f: fn(&Scalar) -> Result<SpecScalar>) -> Result<Combo<1>> {
    x.try_map_coeffs(|_, c| f(c))
}

/// The general product at `(q0, q1) = (1, q^2)`.
pub fn mul_general_c(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
    spec_combo(super::mul_formula(b, a)?, spec_c)
}

/// The general product at `(q0, q1) = (1, 1)`.
pub fn mul_general_d(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
    spec_combo(super::mul_formula(b, a)?, spec_d)
}

/// Sign with which `ℓ(w_{A,T})` enters the C-form exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WSign {
    /// Agrees with the general formula.
    Plus,
    /// `ℓ(A) + ℓ(B) - ℓ(A^{(T-S)}) - ℓ(w_{A,T})`, as usually displayed.
    Minus,
}

/// The C-form: `Σ (v^2-1)^{n(S)} v^{2(ℓ(A)+ℓ(B)-ℓ(A^{(T-S)})+ℓ(w_{A,T})-n(S)-h(S,T))} ⟦A;S;T⟧ e_{A^{(T-S)}}`,
/// with `ℓ` the full Coxeter length.
pub fn mul_c_form(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
    mul_c_form_with(b, a, WSign::Plus)
}

pub fn mul_c_form_with(b: &CodedMatrix, a: &CodedMatrix, sign: WSign) -> Result<Combo<1>> {
    let ml = |m: &CodedMatrix| m.stats2(false).l / 2;
    let (la, lb) = (ml(a), ml(b));
    let mut out = Combo::new();
    for d in mult_data(b, a, false)? {
        let lw = d.wat.a + d.wat.c0 + d.wat.cd;
        let lw = if sign == WSign::Plus { lw } else { -lw };
        let e = la + lb - ml(&d.target) + lw - d.n - d.h;
        let c = &(&v2_minus_one().pow(d.n as u32) * &v(2 * e)) * &spec_c(&ast_bracket(&d))?;
        out.add_term(d.target, &c);
    }
    Ok(out)
}

/// The type D form with `α_d = 2(ℓ_a(B) + ℓ_a(w_{A,T}) + ℓ_a(A) - ℓ_a(A^{(T-S)}) - n(S) - h(S,T))`.
pub fn mul_type_d(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
    let la = a.stats2(false).a / 2;
    let lb = b.stats2(false).a / 2;
    let mut out = Combo::new();
    for d in mult_data(b, a, false)? {
        let lc = d.target.stats2(false).a / 2;
        let e = lb + d.wat.a + la - lc - d.n - d.h;
        let c = &(&v2_minus_one().pow(d.n as u32) * &v(2 * e)) * &spec_d(&ast_bracket(&d))?;
        out.add_term(d.target, &c);
    }
    Ok(out)
}

/// Chevalley shapes with a single off-diagonal unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingleEntry {
    /// `B - E^{h,h+1}_θ` diagonal, `0 <= h <= r`.
    Up(usize),
    /// `B - E^{h+1,h}_θ` diagonal, `0 <= h <= r`.
    Down(usize),
}

fn move_unit(a: &CodedMatrix, to: (i64, i64), from: (i64, i64)) -> CodedMatrix {
    let r = a.r();
    a.add(&CodedMatrix::e_theta(r, to.0, to.1)).sub(&CodedMatrix::e_theta(r, from.0, from.1))
}

/// `e_B e_A` at `(q0, q1) = (1, 1)` for `B` with one off-diagonal unit.
pub fn mul_type_d_single(g: SingleEntry, a: &CodedMatrix) -> Result<Combo<1>> {
    let r = a.r() as i64;
    let n = a.n();
    let w = a.band() + 1;
    let mut out = Combo::new();
    match g {
        SingleEntry::Up(h) => {
            let h = h as i64;
            if h > r {
                return Err(Error::Domain(format!("row {h} outside [0, r]")));
            }
            for p in h + 1 - w..=h + 1 + w {
                let avail = a.get(h + 1, p) - if h + 1 == r + 1 && p == r + 1 { 1 } else { 0 };
                if avail < 1 {
                    continue;
                }
                let mut e: i64 = (p + 1..=p + 2 * w).map(|j| a.get(h, j)).sum();
                let c = if h == 0 && p == 0 {
                    spec_d(&c_int(CKind::C0, a.prime(0, 0) + 1))?
                } else {
                    if h == 0 && p < 0 {
                        e -= 1;
                    }
                    vint(a.get(h, p) + 1)
                };
                out.add_term(move_unit(a, (h, p), (h + 1, p)), &(&v(2 * e) * &c));
            }
        }
        SingleEntry::Down(h) => {
            let h = h as i64;
            if h > r {
                return Err(Error::Domain(format!("row {h} outside [0, r]")));
            }
            for p in h - w..=h + w {
                let avail = a.get(h, p) - if h == 0 && p == 0 { 1 } else { 0 };
                if avail < 1 {
                    continue;
                }
                let mut e: i64 = (p - 2 * w..p).map(|j| a.get(h + 1, j)).sum();
                let c = if h == r && p == r + 1 {
                    spec_d(&c_int(CKind::C1, a.prime(r + 1, r + 1) + 1))?
                } else {
                    if h == r && p > r + 1 {
                        e -= 1;
                    }
                    vint(a.get(h + 1, p) + 1)
                };
                let _ = n;
                out.add_term(move_unit(a, (h + 1, p), (h, p)), &(&v(2 * e) * &c));
            }
        }
    }
    Ok(out)
}

// The X, Y form.

/// Upper triangular `σ` with row sums `beta` and column sums `gamma`.
fn upper_triangular(beta: &BTreeMap<i64, i64>, gamma: &BTreeMap<i64, i64>) -> Vec<BTreeMap<(i64, i64), i64>> {
    fn go(
        rows: &[(i64, i64)],
        left: &mut BTreeMap<i64, i64>,
        cur: &mut BTreeMap<(i64, i64), i64>,
        out: &mut Vec<BTreeMap<(i64, i64), i64>>,
    ) {
        let Some((&(k, b), rest)) = rows.split_first() else {
            if left.values().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        };
        let cols: Vec<i64> = left.iter().filter(|(&l, &x)| l >= k && x > 0).map(|(&l, _)| l).collect();
        let caps: Vec<i64> = cols.iter().map(|l| left[l]).collect();
        for comp in bounded_compositions(b, &caps) {
            for (&c, &l) in comp.iter().zip(&cols) {
                if c > 0 {
                    cur.insert((k, l), c);
                    *left.get_mut(&l).unwrap() -= c;
                }
            }
            go(rest, left, cur, out);
            for (&c, &l) in comp.iter().zip(&cols) {
                if c > 0 {
                    cur.remove(&(k, l));
                    *left.get_mut(&l).unwrap() += c;
                }
            }
        }
    }
    let rows: Vec<(i64, i64)> = beta.iter().filter(|(_, &x)| x > 0).map(|(&k, &x)| (k, x)).collect();
    let mut left: BTreeMap<i64, i64> = gamma.iter().filter(|(_, &x)| x > 0).map(|(&k, &x)| (k, x)).collect();
    let mut out = Vec::new();
    go(&rows, &mut left, &mut BTreeMap::new(), &mut out);
    out
}

/// `n(α, γ, β)`.
fn n_triple(alpha: &BTreeMap<i64, i64>, gamma: &BTreeMap<i64, i64>, beta: &BTreeMap<i64, i64>) -> Result<SpecScalar> {
    let al = |k: i64| alpha.get(&k).copied().unwrap_or(0);
    let mut num = SpecScalar::one();
    for &b in beta.values() {
        num = &num * &vfact(b)?;
    }
    let mut out = SpecScalar::zero();
    for sigma in upper_triangular(beta, gamma) {
        let mut e = 0;
        let mut den = SpecScalar::one();
        for (&(k, l), &s) in &sigma {
            e += s * alpha.range(..l).map(|(_, &x)| x).sum::<i64>();
            if k == l {
                e += s * al(k);
            }
            for (&(p, q), &s2) in &sigma {
                if k > p && l < q {
                    e += s * s2;
                }
            }
            den = &den * &vfact(s)?;
        }
        let mut c = &v(2 * e) * &num.div_exact(&den)?;
        for (&l, &g) in gamma {
            let sll = sigma.get(&(l, l)).copied().unwrap_or(0);
            for m in 0..g - sll {
                c = &c * &(&v(2 * al(l)) - &v(2 * m));
            }
        }
        out = &out + &c;
    }
    Ok(out)
}

fn row_of(m: &PMatrix, i: i64, lo: i64, hi: i64) -> BTreeMap<i64, i64> {
    (lo..=hi).map(|j| (j, m.get(i, j))).filter(|&(_, x)| x != 0).collect()
}

/// Reading of the special-row cross term in `ξ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiLimit {
    /// `l < j < 2i - l`: `j` runs between `l` and its mirror in row `i`.
    Mirror,
    /// `l < j < 2i - 2l`.
    Printed,
}

/// The X, Y form for tridiagonal `B`, with `α_i = b_{i,i+1}`.
pub fn mul_fl19(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
    mul_fl19_with(b, a, XiLimit::Mirror)
}

pub fn mul_fl19_with(b: &CodedMatrix, a: &CodedMatrix, lim: XiLimit) -> Result<Combo<1>> {
    if !b.is_tridiagonal() {
        return Err(Error::Domain("B must be tridiagonal".into()));
    }
    if b.col_c() != a.row_c() {
        return Err(Error::Domain("col_c(B) != row_c(A)".into()));
    }
    let r = a.r();
    let ri = r as i64;
    let alpha = |i: i64| b.get(i, i + 1);
    let w = a.band() + 2;
    let amax = (0..a.n()).map(alpha).max().unwrap_or(0);
    // Y, one period of rows -r-1..=r, row i summing to α_{-i-1}
    let rows: Vec<i64> = (-ri - 1..=ri).collect();
    let mut ys: Vec<BTreeMap<(i64, i64), i64>> = vec![BTreeMap::new()];
    for &i in &rows {
        let cols: Vec<i64> = (i - w..=i + w).collect();
        let caps: Vec<i64> = cols.iter().map(|&j| a.get(i, j) + amax).collect();
        let comps = bounded_compositions(alpha(-i - 1), &caps);
        let mut next = Vec::new();
        for y in &ys {
            for c in &comps {
                let mut y2 = y.clone();
                y2.extend(cols.iter().zip(c).filter(|(_, &x)| x > 0).map(|(&j, &x)| ((i, j), x)));
                next.push(y2);
            }
        }
        ys = next;
    }
    let mut out = Combo::new();
    for ym in ys {
        let y = PMatrix::from_map(r, &shift_rows(r, &ym));
        if !rows.iter().all(|&i| (i - 2 * w..=i + 2 * w).all(|j| a.get(i, j) - y.get(i, j) + y.get(i - 1, j) >= 0)) {
            continue;
        }
        // rows 0..=r of X are free, rows -r-1..=-1 are forced by x_ij + x_{-i-1,-j} = y_ij + y_{-i-1,-j}
        let mut xs: Vec<BTreeMap<(i64, i64), i64>> = vec![BTreeMap::new()];
        for i in 0..=ri {
            let cols: Vec<i64> = (i - w - 1..=i + w + 1).collect();
            let caps: Vec<i64> = cols.iter().map(|&j| y.get(i, j) + y.get(-i - 1, -j)).collect();
            let comps = bounded_compositions(alpha(i), &caps);
            let mut next = Vec::new();
            for x in &xs {
                for c in &comps {
                    let mut x2 = x.clone();
                    for ((&j, &cap), &xij) in cols.iter().zip(&caps).zip(c) {
                        if xij > 0 {
                            x2.insert((i, j), xij);
                        }
                        if cap > xij {
                            x2.insert((-i - 1, -j), cap - xij);
                        }
                    }
                    next.push(x2);
                }
            }
            xs = next;
        }
        for xm in xs {
            let x = PMatrix::from_map(r, &shift_rows(r, &xm));
            if let Some((t, c)) = fl19_term(a, &x, &y, lim)? {
                out.add_term(t, &c);
            }
        }
    }
    Ok(out)
}

/// Moves entries on rows `-r-1..=r` to the stored window `-r..=r+1`.
fn shift_rows(r: usize, m: &BTreeMap<(i64, i64), i64>) -> BTreeMap<(i64, i64), i64> {
    let n = 2 * r as i64 + 2;
    let ri = r as i64;
    m.iter()
        .map(|(&(i, j), &x)| if i < -ri { ((i + n, j + n), x) } else { ((i, j), x) })
        .collect()
}

fn fl19_term(a: &CodedMatrix, x: &PMatrix, y: &PMatrix, lim: XiLimit) -> Result<Option<(CodedMatrix, SpecScalar)>> {
    let r = a.r();
    let ri = r as i64;
    let w = a.band() + x.band().max(y.band()) + 2;
    let star = |i: i64, j: i64| a.get(i, j) + x.get(i, j) - y.get(i, j) - x.get(i - 1, j) + y.get(i - 1, j);
    for i in -ri..=ri + 1 {
        for j in i - w..=i + w {
            let s = star(i, j);
            if s < 0 || s != star(-i, -j) {
                return Ok(None);
            }
        }
    }
    if star(0, 0) % 2 == 0 || star(ri + 1, ri + 1) % 2 == 0 {
        return Ok(None);
    }
    let target = CodedMatrix::from_fn(r, w as usize, star);
    // [A_{X,Y}; X]
    let mut domain: Vec<(i64, i64)> = (-ri..=-ri - 1 + 2 * w).map(|j| (-ri - 1, j)).collect();
    for i in -ri..=-1 {
        domain.extend((i - w..=i + w).map(|j| (i, j)));
    }
    domain.extend((-w..0).map(|j| (0, j)));
    let mut br = SpecScalar::one();
    for (i, j) in domain {
        let (s, x1, x2) = (star(i, j), x.get(i, j), x.get(-i, -j));
        if x1 > 0 || x2 > 0 {
            br = &br * &(&vbinom(s, x1)? * &vbinom(s - x1, x2)?);
        }
    }
    for i in [0, -ri - 1] {
        let s = star(i, i);
        let xi = x.get(i, i);
        let mut num = SpecScalar::one();
        for k in 0..xi {
            num = &num * &vint(s - 2 * k - 1);
        }
        br = &br * &num.div_exact(&vfact(xi)?)?;
    }
    if br.is_zero() {
        return Ok(None);
    }
    let mut nxy = SpecScalar::one();
    for i in 0..=ri {
        let al = row_of(x, i, i - w, i + w);
        let ga = row_of(y, i, i - w, i + w);
        let be: BTreeMap<i64, i64> = row_of(x, -i - 1, -i - 1 - w, -i - 1 + w).into_iter().map(|(j, v)| (-j, v)).collect();
        nxy = &nxy * &n_triple(&al, &ga, &be)?;
    }
    let mut xi = 0;
    for i in -ri - 1..=ri {
        for l in i - w..=i + w {
            let xil = x.get(i, l);
            if xil == 0 {
                continue;
            }
            for j in l + 1..=i + w {
                xi += (star(i, j) - x.get(i, j)) * xil;
                if (-ri..=-1).contains(&i) {
                    xi -= x.get(-i, -j) * xil;
                }
            }
            if i == 0 || i == -ri - 1 {
                let hi = match lim {
                    XiLimit::Mirror => 2 * i - l,
                    XiLimit::Printed => 2 * i - 2 * l,
                };
                for j in l + 1..hi {
                    xi -= x.get(-i, -j) * xil;
                }
            }
        }
    }
    for i in [-ri - 1, 0] {
        for j in i - w..i {
            let t = x.get(i, j);
            xi -= t * (t + 1) / 2;
        }
    }
    Ok(Some((target, &(&v(2 * xi) * &nxy) * &br)))
}
