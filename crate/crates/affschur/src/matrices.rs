//! Coded matrices: periodic integer matrices indexing the Schur algebra bases.
//!
//! A [`CodedMatrix`] is `n`-periodic (`a_{i+n,j+n} = a_{ij}`) and centrally
//! symmetric (`a_{-i,-j} = a_{ij}`) with `n = 2r + 2`; it is stored on the
//! rows `0..=r+1`. A [`PMatrix`] is only periodic and is stored on the rows
//! `-r..=r+1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::entry::{Affine, Entry};
use crate::error::{Error, Result};
use crate::weyl::{is_min_double, Composition, WeylElement};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CodedMatrix<E: Entry = i64> {
    r: usize,
    band: usize,
    data: Vec<E>,
}

/// Length statistics, each stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Stats2<E> {
    pub l: E,
    pub c0: E,
    pub cd: E,
    pub a: E,
}

impl<E: Entry> CodedMatrix<E> {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> i64 {
        2 * self.r as i64 + 2
    }

    pub fn band(&self) -> i64 {
        self.band as i64
    }

    fn width(&self) -> usize {
        2 * self.band + 1
    }

    /// Reduces `(i, j)` to a stored row in `0..=r+1`.
    fn norm(&self, i: i64, j: i64) -> (i64, i64) {
        let n = self.n();
        let i2 = i.rem_euclid(n);
        let j2 = j - (i - i2);
        if i2 > self.r as i64 + 1 {
            (n - i2, n - j2)
        } else {
            (i2, j2)
        }
    }

    pub fn get(&self, i: i64, j: i64) -> E {
        let (i, j) = self.norm(i, j);
        let k = j - i;
        if k.abs() > self.band as i64 {
            return E::default();
        }
        self.data[i as usize * self.width() + (k + self.band as i64) as usize]
    }

    /// Builds a matrix from values on rows `0..=r+1` within the given band.
    /// The function must be symmetric and periodic.
    pub fn from_fn<F: Fn(i64, i64) -> E>(r: usize, band: usize, f: F) -> Self {
        let w = 2 * band + 1;
        let mut data = vec![E::default(); (r + 2) * w];
        for i in 0..=(r as i64 + 1) {
            for k in -(band as i64)..=(band as i64) {
                data[i as usize * w + (k + band as i64) as usize] = f(i, i + k);
            }
        }
        CodedMatrix { r, band, data }.shrink()
    }

    fn shrink(self) -> Self {
        let mut b = 0usize;
        let w = self.width();
        for i in 0..=(self.r + 1) {
            for k in 0..w {
                if !self.data[i * w + k].is_zero() {
                    b = b.max((k as i64 - self.band as i64).unsigned_abs() as usize);
                }
            }
        }
        if b == self.band {
            return self;
        }
        let nw = 2 * b + 1;
        let mut data = vec![E::default(); (self.r + 2) * nw];
        for i in 0..=(self.r + 1) {
            for k in -(b as i64)..=(b as i64) {
                data[i * nw + (k + b as i64) as usize] = self.data[i * w + (k + self.band as i64) as usize];
            }
        }
        CodedMatrix { r: self.r, band: b, data }
    }

    /// Diagonal matrix with the given entries on rows `0..=r+1`.
    pub fn diagonal(r: usize, diag: &[E]) -> Self {
        assert_eq!(diag.len(), r + 2);
        Self::from_fn(r, 0, |i, _| diag[i as usize])
    }

    pub fn map<F2: Entry, F: Fn(E) -> F2>(&self, f: F) -> CodedMatrix<F2> {
        CodedMatrix { r: self.r, band: self.band, data: self.data.iter().map(|&x| f(x)).collect() }.shrink()
    }

    pub fn add(&self, o: &Self) -> Self {
        let b = self.band.max(o.band);
        Self::from_fn(self.r, b, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let b = self.band.max(o.band);
        Self::from_fn(self.r, b, |i, j| self.get(i, j) - o.get(i, j))
    }

    /// `A + xI`.
    pub fn shift_diag(&self, x: E) -> Self {
        Self::from_fn(self.r, self.band, |i, j| if i == j { self.get(i, j) + x } else { self.get(i, j) })
    }

    pub fn is_diagonal(&self) -> bool {
        self.band == 0
    }

    pub fn is_tridiagonal(&self) -> bool {
        self.band <= 1
    }

    fn is_special(&self, i: i64) -> bool {
        let k = i.rem_euclid(self.n());
        k == 0 || k == self.r as i64 + 1
    }

    /// `a'_{ij}`: halved special diagonal entries.
    pub fn prime(&self, i: i64, j: i64) -> E {
        let a = self.get(i, j);
        if i == j && self.is_special(i) {
            (a - E::from(1)).half()
        } else {
            a
        }
    }

    fn double_prime(&self, i: i64, j: i64) -> E {
        let a = self.get(i, j);
        if i == j && self.is_special(i) {
            (a - E::from(3)).half()
        } else {
            a
        }
    }

    /// The c-row margin `row_c(A)`.
    pub fn row_c(&self) -> Vec<E> {
        let r = self.r as i64;
        let b = self.band as i64;
        let mut out = Vec::with_capacity(self.r + 2);
        let mut s0 = self.prime(0, 0);
        for j in 1..=b {
            s0 = s0 + self.get(0, j);
        }
        out.push(s0);
        for i in 1..=r {
            let mut s = E::default();
            for j in i - b..=i + b {
                s = s + self.get(i, j);
            }
            out.push(s);
        }
        let mut sd = self.prime(r + 1, r + 1);
        for j in r + 1 - b..=r {
            sd = sd + self.get(r + 1, j);
        }
        out.push(sd);
        out
    }

    /// The c-column margin `col_c(A)`.
    pub fn col_c(&self) -> Vec<E> {
        let r = self.r as i64;
        let b = self.band as i64;
        let mut out = Vec::with_capacity(self.r + 2);
        let mut s0 = self.prime(0, 0);
        for i in 1..=b {
            s0 = s0 + self.get(i, 0);
        }
        out.push(s0);
        for j in 1..=r {
            let mut s = E::default();
            for i in j - b..=j + b {
                s = s + self.get(i, j);
            }
            out.push(s);
        }
        let mut sd = self.prime(r + 1, r + 1);
        for i in r + 1 - b..=r {
            sd = sd + self.get(i, r + 1);
        }
        out.push(sd);
        out
    }

    /// Plain row sum `row_a(A)_i`.
    pub fn row_a(&self, i: i64) -> E {
        let b = self.band as i64;
        let mut s = E::default();
        for j in i - b..=i + b {
            s = s + self.get(i, j);
        }
        s
    }

    /// `sigma_{ij}(A) = sum_{x <= i, y >= j} a_{xy}` for `i < j`.
    pub fn sigma(&self, i: i64, j: i64) -> E {
        let b = self.band as i64;
        let mut s = E::default();
        for x in (j - b)..=i {
            for y in j..=(x + b) {
                s = s + self.get(x, y);
            }
        }
        s
    }

    /// Positions of `I^+`: row 0 with `j >= 0`, rows `1..=r`, row `r+1` with `j <= r+1`.
    pub fn i_plus(&self) -> Vec<(i64, i64)> {
        let r = self.r as i64;
        let b = self.band as i64;
        let mut out = Vec::new();
        for j in 0..=b {
            out.push((0, j));
        }
        for i in 1..=r {
            for j in i - b..=i + b {
                out.push((i, j));
            }
        }
        for j in r + 1 - b..=r + 1 {
            out.push((r + 1, j));
        }
        out
    }

    // sum over x < i (or <=), y > j of a_xy, plus x > i (or >=), y < j
    fn cross_sum(&self, i: i64, j: i64, weak: bool) -> E {
        let b = self.band as i64;
        let mut s = E::default();
        let xmax = if weak { i } else { i - 1 };
        for x in (j + 1 - b)..=xmax {
            for y in (j + 1)..=(x + b) {
                s = s + self.get(x, y);
            }
        }
        let xmin = if weak { i } else { i + 1 };
        for x in xmin..=(j - 1 + b) {
            for y in (x - b)..=(j - 1) {
                s = s + self.get(x, y);
            }
        }
        s
    }

    /// Doubled length statistics; `hatted` selects the weak inequalities.
    pub fn stats2(&self, hatted: bool) -> Stats2<E> {
        let r = self.r as i64;
        let mut l = E::default();
        let mut a = E::default();
        for (i, j) in self.i_plus() {
            let cs = self.cross_sum(i, j, hatted);
            l = l + self.prime(i, j) * cs;
            a = a + self.double_prime(i, j) * cs;
        }
        let c0 = self.cross_sum(0, 0, hatted);
        let cd = self.cross_sum(r + 1, r + 1, hatted);
        Stats2 { l, c0, cd, a }
    }

    /// Entrywise `self <= o`.
    pub fn le_e(&self, o: &Self) -> bool {
        let b = self.band.max(o.band) as i64;
        (0..=(self.r as i64 + 1)).all(|i| (i - b..=i + b).all(|j| self.get(i, j) <= o.get(i, j)))
    }

    /// Nonzero entries on rows `0..=r+1`, sorted.
    pub fn entries(&self) -> Vec<(i64, i64, E)> {
        let b = self.band as i64;
        let mut out = Vec::new();
        for i in 0..=(self.r as i64 + 1) {
            for j in i - b..=i + b {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.push((i, j, x));
                }
            }
        }
        out
    }
}

/// Builder accumulating entries with their symmetric images.
fn accumulate(r: usize, items: &[(i64, i64, i64)], add: bool) -> Result<CodedMatrix<i64>> {
    let n = 2 * r as i64 + 2;
    let mut map: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut band = 0usize;
    let norm = |i: i64, j: i64| -> (i64, i64) {
        let i2 = i.rem_euclid(n);
        let j2 = j - (i - i2);
        if i2 > r as i64 + 1 {
            (n - i2, n - j2)
        } else {
            (i2, j2)
        }
    };
    for &(i, j, a) in items {
        band = band.max((i - j).unsigned_abs() as usize);
        let p1 = norm(i, j);
        // positions to touch; rows 0 and r+1 hold both a position and its mirror
        let mut pos = vec![p1];
        let m1 = (p1.0, if p1.0 == 0 { -p1.1 } else { 2 * (r as i64 + 1) - p1.1 });
        let mirrored = p1.0 == 0 || p1.0 == r as i64 + 1;
        if mirrored && m1 != p1 {
            pos.push(m1);
        }
        for p in pos {
            if add {
                let mult = if mirrored && m1 == p1 { 2 } else { 1 };
                *map.entry(p).or_insert(0) += a * mult;
            } else {
                match map.get(&p) {
                    Some(&x) if x != a => {
                        return Err(Error::Domain(format!("conflicting values for entry {p:?}")));
                    }
                    _ => {
                        map.insert(p, a);
                    }
                }
            }
        }
    }
    Ok(CodedMatrix::from_fn(r, band, |i, j| map.get(&(i, j)).copied().unwrap_or(0)))
}

impl CodedMatrix<i64> {
    /// Builds a symmetric matrix from entries; symmetric images are implied.
    pub fn from_entries(r: usize, items: &[(i64, i64, i64)]) -> Result<Self> {
        accumulate(r, items, false)
    }

    /// `E^{ij}_θ`: ones at `(i, j)` and `(-i, -j)` in every period.
    pub fn e_theta(r: usize, i: i64, j: i64) -> Self {
        accumulate(r, &[(i, j, 1)], true).unwrap()
    }

    pub fn zero(r: usize) -> Self {
        Self::from_fn(r, 0, |_, _| 0)
    }

    pub fn identity(r: usize) -> Self {
        Self::from_fn(r, 0, |i, j| if i == j { 1 } else { 0 })
    }

    /// Diagonal matrix of a c-weight `λ`: `a00 = 2λ0+1`, `a_ii = λ_i`, `a_{r+1,r+1} = 2λ_{r+1}+1`.
    pub fn diag_of_weight(lambda: &[i64]) -> Self {
        let r = lambda.len() - 2;
        let mut diag: Vec<i64> = lambda.to_vec();
        diag[0] = 2 * lambda[0] + 1;
        diag[r + 1] = 2 * lambda[r + 1] + 1;
        Self::diagonal(r, &diag)
    }

    /// `d` with `sum_{1 <= i <= n, j} a_ij = 2d + 2`, when it exists.
    pub fn d_value(&self) -> Option<usize> {
        let n = self.n();
        let total: i64 = (1..=n).map(|i| self.row_a(i)).sum();
        if total >= 2 && total % 2 == 0 {
            Some(((total - 2) / 2) as usize)
        } else {
            None
        }
    }

    fn special_odd(&self) -> bool {
        let r = self.r as i64;
        self.get(0, 0).rem_euclid(2) == 1 && self.get(r + 1, r + 1).rem_euclid(2) == 1
    }

    /// Membership in `Ξ_{n,d}`.
    pub fn is_xi(&self) -> bool {
        self.data.iter().all(|&x| x >= 0) && self.special_odd() && self.d_value().is_some()
    }

    /// Membership in the stabilized index set: off-diagonal nonnegative, special diagonals odd.
    pub fn is_xitilde(&self) -> bool {
        self.special_odd() && self.entries().iter().all(|&(i, j, a)| i == j || a >= 0)
    }

    pub fn to_affine(&self) -> CodedMatrix<Affine> {
        self.map(Affine::from)
    }

    /// `A + pI` as a level-dependent matrix, with `P = p/2`.
    pub fn lift_level(&self) -> CodedMatrix<Affine> {
        self.to_affine().shift_diag(Affine::new(0, 2))
    }

    pub fn row_c_comp(&self) -> Result<Composition> {
        to_composition(&self.row_c())
    }

    pub fn col_c_comp(&self) -> Result<Composition> {
        to_composition(&self.col_c())
    }

    /// The weak composition `δ(A)`, reading columns with the uniform band bound.
    pub fn delta(&self) -> Composition {
        self.delta_band(self.band as i64)
    }

    /// `δ(A)` read with band bound `k` (at least the band of `A`).
    pub fn delta_band(&self, k: i64) -> Composition {
        let r = self.r as i64;
        let mut parts = Vec::new();
        parts.push(self.prime(0, 0));
        for i in 1..=k {
            parts.push(self.get(i, 0));
        }
        for j in 1..=r {
            for i in j - k..=j + k {
                parts.push(self.get(i, j));
            }
        }
        for i in r + 1 - k..=r {
            parts.push(self.get(i, r + 1));
        }
        parts.push(self.prime(r + 1, r + 1));
        Composition { parts: parts.into_iter().map(|x| x as usize).collect() }
    }

    /// The JSON form.
    pub fn to_json(&self) -> MatrixJson {
        let kind = if self.is_xi() { "xi" } else { "xitilde" };
        MatrixJson {
            r: self.r,
            kind: kind.into(),
            entries: self.entries().into_iter().map(|(i, j, a)| [i, j, a]).collect(),
        }
    }

    pub fn from_json(m: &MatrixJson) -> Result<Self> {
        if m.kind == "theta" {
            return Err(Error::Domain("expected a symmetric matrix".into()));
        }
        let items: Vec<_> = m.entries.iter().map(|e| (e[0], e[1], e[2])).collect();
        let a = Self::from_entries(m.r, &items)?;
        if m.kind == "xi" && !a.is_xi() {
            return Err(Error::Domain("matrix is not in Ξ".into()));
        }
        if !a.is_xitilde() {
            return Err(Error::Domain("matrix has even special diagonal or negative off-diagonal entries".into()));
        }
        Ok(a)
    }

    /// Compact text form listing rows `0..=r+1` over columns `i-b..=i+b`.
    pub fn compact(&self) -> String {
        let b = self.band as i64;
        let rows: Vec<String> = (0..=(self.r as i64 + 1))
            .map(|i| {
                let v: Vec<String> = (i - b..=i + b).map(|j| self.get(i, j).to_string()).collect();
                v.join(" ")
            })
            .collect();
        format!("[{}]", rows.join(" | "))
    }
}

fn to_composition(v: &[i64]) -> Result<Composition> {
    if v.iter().any(|&x| x < 0) {
        return Err(Error::Domain(format!("negative margin {v:?}")));
    }
    Composition::new(v.iter().map(|&x| x as usize).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub r: usize,
    pub kind: String,
    pub entries: Vec<[i64; 3]>,
}

/// `≤_alg`: equal margins and `sigma_{ij}(A) <= sigma_{ij}(B)` for `i < j`.
pub fn leq_alg<E: Entry>(a: &CodedMatrix<E>, b: &CodedMatrix<E>) -> bool {
    if a.r != b.r || a.row_c() != b.row_c() || a.col_c() != b.col_c() {
        return false;
    }
    sigma_leq(a, b)
}

/// The `sigma` comparison alone (margins assumed equal).
pub fn sigma_leq<E: Entry>(a: &CodedMatrix<E>, b: &CodedMatrix<E>) -> bool {
    let bb = a.band.max(b.band) as i64;
    let n = a.n();
    for i in 0..n {
        for j in i + 1..=i + bb {
            if a.sigma(i, j) > b.sigma(i, j) {
                return false;
            }
        }
    }
    true
}

/// A periodic (not necessarily symmetric) matrix, rows `-r..=r+1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PMatrix {
    r: usize,
    band: usize,
    data: Vec<i64>,
}

impl PMatrix {
    pub fn zero(r: usize) -> Self {
        PMatrix { r, band: 0, data: vec![0; 2 * r + 2] }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> i64 {
        2 * self.r as i64 + 2
    }

    pub fn band(&self) -> i64 {
        self.band as i64
    }

    fn width(&self) -> usize {
        2 * self.band + 1
    }

    pub fn get(&self, i: i64, j: i64) -> i64 {
        let r = self.r as i64;
        let i2 = (i + r).rem_euclid(self.n()) - r;
        let j2 = j - (i - i2);
        let k = j2 - i2;
        if k.abs() > self.band as i64 {
            return 0;
        }
        self.data[(i2 + r) as usize * self.width() + (k + self.band as i64) as usize]
    }

    /// Builds from values on rows `-r..=r+1` within the band.
    pub fn from_fn<F: Fn(i64, i64) -> i64>(r: usize, band: usize, f: F) -> Self {
        let w = 2 * band + 1;
        let mut data = vec![0; (2 * r + 2) * w];
        let ri = r as i64;
        for i in -ri..=ri + 1 {
            for k in -(band as i64)..=(band as i64) {
                data[(i + ri) as usize * w + (k + band as i64) as usize] = f(i, i + k);
            }
        }
        PMatrix { r, band, data }.shrink()
    }

    fn shrink(self) -> Self {
        let w = self.width();
        let mut b = 0usize;
        for (idx, x) in self.data.iter().enumerate() {
            if *x != 0 {
                b = b.max(((idx % w) as i64 - self.band as i64).unsigned_abs() as usize);
            }
        }
        if b == self.band {
            return self;
        }
        let s = &self;
        PMatrix::from_fn(self.r, b, |i, j| s.get(i, j))
    }

    /// Builds from a map on rows `-r..=r+1`.
    pub fn from_map(r: usize, map: &BTreeMap<(i64, i64), i64>) -> Self {
        let band = map.keys().map(|(i, j)| (i - j).unsigned_abs() as usize).max().unwrap_or(0);
        PMatrix::from_fn(r, band, |i, j| map.get(&(i, j)).copied().unwrap_or(0))
    }

    /// `T_θ` with entries `t_{ij} + t_{-i,-j}`.
    pub fn theta(&self) -> CodedMatrix<i64> {
        CodedMatrix::from_fn(self.r, self.band, |i, j| self.get(i, j) + self.get(-i, -j))
    }

    /// The row-shift `ŝ_{ij} = s_{i+1,j}`.
    pub fn hat(&self) -> PMatrix {
        PMatrix::from_fn(self.r, self.band + 1, |i, j| self.get(i + 1, j))
    }

    /// `s^†_{ij} = s_{1-i,-j}`.
    pub fn dagger(&self) -> PMatrix {
        PMatrix::from_fn(self.r, self.band + 1, |i, j| self.get(1 - i, -j))
    }

    pub fn sub(&self, o: &PMatrix) -> PMatrix {
        let b = self.band.max(o.band);
        PMatrix::from_fn(self.r, b, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn row_sum(&self, i: i64) -> i64 {
        let b = self.band as i64;
        (i - b..=i + b).map(|j| self.get(i, j)).sum()
    }

    pub fn entries(&self) -> Vec<(i64, i64, i64)> {
        let r = self.r as i64;
        let b = self.band as i64;
        let mut out = Vec::new();
        for i in -r..=r + 1 {
            for j in i - b..=i + b {
                let x = self.get(i, j);
                if x != 0 {
                    out.push((i, j, x));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// `A^{(T-S)} = A - (T-S)_θ + (hat(T-S))_θ`.
pub fn a_t_minus_s<E: Entry>(a: &CodedMatrix<E>, t: &PMatrix, s: &PMatrix) -> CodedMatrix<E> {
    let u = t.sub(s);
    let ut = u.theta();
    let uh = u.hat().theta();
    let b = (a.band() as usize).max(uh.band() as usize);
    CodedMatrix::from_fn(a.r(), b, |i, j| a.get(i, j) - E::from(ut.get(i, j)) + E::from(uh.get(i, j)))
}

fn compositions_bounded(total: i64, caps: &[i64], out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    let k = cur.len();
    if k == caps.len() {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest: i64 = caps[k + 1..].iter().sum();
    let lo = (total - rest).max(0);
    let hi = total.min(caps[k]);
    for x in lo..=hi {
        cur.push(x);
        compositions_bounded(total - x, caps, out, cur);
        cur.pop();
    }
}

/// Vectors `v` with `0 <= v_k <= caps[k]` and `sum v = total`.
pub fn bounded_compositions(total: i64, caps: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if total < 0 {
        return out;
    }
    compositions_bounded(total, caps, &mut out, &mut Vec::new());
    out
}

/// All of `Ξ_{n,d}` with band at most `band`.
pub fn enumerate_xi(r: usize, d: usize, band: usize) -> Vec<CodedMatrix<i64>> {
    let ri = r as i64;
    let b = band as i64;
    // free positions in I^+ with their c-weight
    let mut pos: Vec<(i64, i64)> = Vec::new();
    for j in 0..=b {
        pos.push((0, j));
    }
    for i in 1..=ri {
        for j in i - b..=i + b {
            pos.push((i, j));
        }
    }
    for j in ri + 1 - b..=ri + 1 {
        pos.push((ri + 1, j));
    }
    let caps = vec![d as i64; pos.len()];
    let mut out = Vec::new();
    for v in bounded_compositions(d as i64, &caps) {
        let items: Vec<(i64, i64, i64)> = pos
            .iter()
            .zip(&v)
            .map(|(&(i, j), &x)| {
                let special = i == j && (i == 0 || i == ri + 1);
                (i, j, if special { 2 * x + 1 } else { x })
            })
            .collect();
        out.push(CodedMatrix::from_entries(r, &items).unwrap());
    }
    out.sort();
    out
}

/// Tridiagonal matrices in `Ξ` with `col_c = mu`.
pub fn tridiagonal_with_col(mu: &[i64]) -> Vec<CodedMatrix<i64>> {
    let r = mu.len() - 2;
    let ri = r as i64;
    // per column j, the split (up, stay, down) = (a_{j-1,j}, a_jj, a_{j+1,j})
    let mut cols: Vec<Vec<Vec<(i64, i64, i64)>>> = Vec::new();
    for j in 0..=ri + 1 {
        let m = mu[j as usize];
        let mut opts = Vec::new();
        if m < 0 {
            cols.push(opts);
            continue;
        }
        if j == 0 {
            for down in 0..=m {
                opts.push(vec![(0, 0, 2 * (m - down) + 1), (1, 0, down)]);
            }
        } else if j == ri + 1 {
            for up in 0..=m {
                opts.push(vec![(ri, ri + 1, up), (ri + 1, ri + 1, 2 * (m - up) + 1)]);
            }
        } else {
            for up in 0..=m {
                for down in 0..=(m - up) {
                    opts.push(vec![(j - 1, j, up), (j, j, m - up - down), (j + 1, j, down)]);
                }
            }
        }
        cols.push(opts);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; cols.len()];
    if cols.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let items: Vec<(i64, i64, i64)> = idx.iter().enumerate().flat_map(|(j, &k)| cols[j][k].clone()).collect();
        out.push(CodedMatrix::from_entries(r, &items).unwrap());
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < cols[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Tridiagonal matrices over the stabilized index set with `col_c = mu` and a
/// prescribed off-diagonal total bound; diagonal entries are solved from the margins.
pub fn tridiagonal_stab_with_col(mu: &[i64], max_offdiag: i64) -> Vec<CodedMatrix<i64>> {
    let r = mu.len() - 2;
    let ri = r as i64;
    let mut cols: Vec<Vec<Vec<(i64, i64, i64)>>> = Vec::new();
    for j in 0..=ri + 1 {
        let m = mu[j as usize];
        let mut opts = Vec::new();
        if j == 0 {
            for down in 0..=max_offdiag {
                opts.push(vec![(0, 0, 2 * (m - down) + 1), (1, 0, down)]);
            }
        } else if j == ri + 1 {
            for up in 0..=max_offdiag {
                opts.push(vec![(ri, ri + 1, up), (ri + 1, ri + 1, 2 * (m - up) + 1)]);
            }
        } else {
            for up in 0..=max_offdiag {
                for down in 0..=(max_offdiag - up) {
                    opts.push(vec![(j - 1, j, up), (j, j, m - up - down), (j + 1, j, down)]);
                }
            }
        }
        cols.push(opts);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; cols.len()];
    loop {
        let items: Vec<(i64, i64, i64)> = idx.iter().enumerate().flat_map(|(j, &k)| cols[j][k].clone()).collect();
        out.push(CodedMatrix::from_entries(r, &items).unwrap());
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < cols[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// `Θ_{B,A}`: periodic `T >= 0` with `row_a(T)_i = b_{i-1,i}` and `T_θ <=_e A`
/// (diagonal exempt when `stab`).
pub fn theta_set<E: Entry>(b: &CodedMatrix<i64>, a: &CodedMatrix<E>, stab: bool) -> Vec<PMatrix> {
    theta_set_free(b, a, |_| stab)
}

/// `Θ_{B,A}` with the diagonal entries `a_ii` for which `free(i)` holds left unbounded.
pub fn theta_set_free<E: Entry>(b: &CodedMatrix<i64>, a: &CodedMatrix<E>, free: impl Fn(i64) -> bool) -> Vec<PMatrix> {
    let r = a.r() as i64;
    let band = a.band();
    let n = a.n();
    // cap of a_{ij} as i64 (diagonal entries of lifted matrices are unbounded when stab)
    let cap = |i: i64, j: i64| -> i64 {
        if i == j && free(i) {
            i64::MAX / 4
        } else {
            let x = a.get(i, j);
            assert_eq!(x.slope(), 0, "level-dependent off-diagonal entry");
            x.base()
        }
    };
    // rows processed: 0, r+1 (self-paired), then pairs (i, -i)
    let mut rows_opts: Vec<Vec<Vec<(i64, i64, i64)>>> = Vec::new();
    // row 0
    {
        let total = b.get(-1, 0);
        let js: Vec<i64> = (-band..=band).collect();
        let mut opts = Vec::new();
        // choose t_{0j} for j >= 0 and j < 0 jointly: t_0j + t_0,-j <= a_0j, 2 t_00 <= a_00
        let caps: Vec<i64> = js.iter().map(|&j| if j == 0 { row_cap_self(cap(0, 0), free(0)) } else { cap(0, j) }).collect();
        for v in bounded_compositions(total, &caps) {
            let ok = js.iter().zip(&v).all(|(&j, &x)| j <= 0 || x + v[(band - j) as usize] <= cap(0, j));
            if ok {
                opts.push(js.iter().zip(&v).filter(|(_, &x)| x > 0).map(|(&j, &x)| (0, j, x)).collect());
            }
        }
        rows_opts.push(opts);
    }
    {
        let total = b.get(r, r + 1);
        let js: Vec<i64> = (r + 1 - band..=r + 1 + band).collect();
        let mut opts = Vec::new();
        let caps: Vec<i64> =
            js.iter().map(|&j| if j == r + 1 { row_cap_self(cap(r + 1, r + 1), free(r + 1)) } else { cap(r + 1, j) }).collect();
        for v in bounded_compositions(total, &caps) {
            // t_{r+1,j} + t_{r+1,n-j} <= a_{r+1,j}
            let ok = js.iter().zip(&v).all(|(&j, &x)| {
                if j <= r + 1 {
                    return true;
                }
                let mirror = n - j;
                x + v[(mirror - (r + 1 - band)) as usize] <= cap(r + 1, j)
            });
            if ok {
                opts.push(js.iter().zip(&v).filter(|(_, &x)| x > 0).map(|(&j, &x)| (r + 1, j, x)).collect());
            }
        }
        rows_opts.push(opts);
    }
    for i in 1..=r {
        let top = b.get(i - 1, i);
        let bot = b.get(i + 1, i); // row -i sum: b_{-i-1,-i} = b_{i+1,i}
        let js: Vec<i64> = (i - band..=i + band).collect();
        let caps: Vec<i64> = js.iter().map(|&j| cap(i, j)).collect();
        let mut opts = Vec::new();
        for v in bounded_compositions(top, &caps) {
            // row -i: t_{-i,-j} <= a_ij - t_ij
            let caps2: Vec<i64> = js.iter().zip(&v).map(|(&j, &x)| cap(i, j) - x).collect();
            for w in bounded_compositions(bot, &caps2) {
                let mut items: Vec<(i64, i64, i64)> =
                    js.iter().zip(&v).filter(|(_, &x)| x > 0).map(|(&j, &x)| (i, j, x)).collect();
                items.extend(js.iter().zip(&w).filter(|(_, &x)| x > 0).map(|(&j, &x)| (-i, -j, x)));
                opts.push(items);
            }
        }
        rows_opts.push(opts);
    }
    let mut out = Vec::new();
    if rows_opts.iter().any(|o| o.is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; rows_opts.len()];
    loop {
        let mut map = BTreeMap::new();
        for (k, &o) in idx.iter().enumerate() {
            for &(i, j, x) in &rows_opts[k][o] {
                map.insert((i, j), x);
            }
        }
        out.push(PMatrix::from_map(a.r(), &map));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < rows_opts[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn row_cap_self(a: i64, stab: bool) -> i64 {
    if stab {
        a
    } else {
        a / 2
    }
}

/// `Γ_T`: `0 <= S <=_e T` with `row_a(S)_i = row_a(S)_{1-i}`.
pub fn gamma_set(t: &PMatrix) -> Vec<PMatrix> {
    let r = t.r() as i64;
    let band = t.band();
    let mut pair_opts: Vec<Vec<Vec<(i64, i64, i64)>>> = Vec::new();
    for i in 1..=r + 1 {
        let i2 = 1 - i;
        let js1: Vec<i64> = (i - band..=i + band).collect();
        let js2: Vec<i64> = (i2 - band..=i2 + band).collect();
        let c1: Vec<i64> = js1.iter().map(|&j| t.get(i, j)).collect();
        let c2: Vec<i64> = js2.iter().map(|&j| t.get(i2, j)).collect();
        let m = t.row_sum(i).min(t.row_sum(i2));
        let mut opts = Vec::new();
        for total in 0..=m {
            let v1 = bounded_compositions(total, &c1);
            let v2 = bounded_compositions(total, &c2);
            for a in &v1 {
                for b in &v2 {
                    let mut items: Vec<(i64, i64, i64)> =
                        js1.iter().zip(a).filter(|(_, &x)| x > 0).map(|(&j, &x)| (i, j, x)).collect();
                    items.extend(js2.iter().zip(b).filter(|(_, &x)| x > 0).map(|(&j, &x)| (i2, j, x)));
                    opts.push(items);
                }
            }
        }
        pair_opts.push(opts);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; pair_opts.len()];
    loop {
        let mut map = BTreeMap::new();
        for (k, &o) in idx.iter().enumerate() {
            for &(i, j, x) in &pair_opts[k][o] {
                map.insert((i, j), x);
            }
        }
        out.push(PMatrix::from_map(t.r(), &map));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < pair_opts[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Block `R_k^μ` for any integer `k`, as a sorted list.
pub fn block(mu: &Composition, k: i64) -> Vec<i64> {
    let r = mu.rank() as i64;
    let n = r + r + 2;
    let d = mu.d() as i64;
    let dd = 2 * d + 2;
    let q = k.div_euclid(n);
    let m = k.rem_euclid(n);
    let base = |m: i64| -> Vec<i64> {
        let p = &mu.parts;
        if m == 0 {
            (-(p[0] as i64)..=p[0] as i64).collect()
        } else if m == r + 1 {
            let t = p[(r + 1) as usize] as i64;
            (d + 1 - t..=d + 1 + t).collect()
        } else {
            let lo: i64 = p[..m as usize].iter().sum::<usize>() as i64 + 1;
            let hi: i64 = p[..=m as usize].iter().sum::<usize>() as i64;
            (lo..=hi).collect()
        }
    };
    if m <= r + 1 {
        base(m).into_iter().map(|x| x + q * dd).collect()
    } else {
        let mut v: Vec<i64> = base(n - m).into_iter().map(|x| (q + 1) * dd - x).collect();
        v.sort();
        v
    }
}

/// Index `k` of the block `R_k^μ` containing `y`.
pub fn block_index(mu: &Composition, y: i64) -> i64 {
    let r = mu.rank() as i64;
    let n = 2 * r + 2;
    let d = mu.d() as i64;
    let dd = 2 * d + 2;
    let q = y.div_euclid(dd);
    let m = y.rem_euclid(dd);
    let first = |m: i64| -> i64 {
        let p = &mu.parts;
        if m <= p[0] as i64 {
            return 0;
        }
        let mut s = p[0] as i64;
        for k in 1..=r {
            s += p[k as usize] as i64;
            if m <= s {
                return k;
            }
        }
        r + 1
    };
    if m <= d + 1 {
        first(m) + q * n
    } else {
        (q + 1) * n - first(dd - m)
    }
}

/// `A = κ(λ, g, μ)` with `a_{ij} = |R_i^λ ∩ g(R_j^μ)|`.
pub fn kappa(lambda: &Composition, mu: &Composition, g: &WeylElement) -> CodedMatrix<i64> {
    let r = lambda.rank();
    let gi = g.inverse();
    let mut map: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    let mut band = 0;
    for i in 0..=(r as i64 + 1) {
        for x in block(lambda, i) {
            let j = block_index(mu, gi.eval(x));
            *map.entry((i, j)).or_insert(0) += 1;
            band = band.max((i - j).unsigned_abs() as usize);
        }
    }
    CodedMatrix::from_fn(r, band, |i, j| map.get(&(i, j)).copied().unwrap_or(0))
}

/// Inverse of [`kappa`]: `(λ, g, μ)` with `g` minimal in its double coset.
pub fn kappa_inv(a: &CodedMatrix<i64>) -> Result<(Composition, WeylElement, Composition)> {
    if !a.is_xi() {
        return Err(Error::Domain(format!("{} is not in Ξ", a.compact())));
    }
    let lambda = a.row_c_comp()?;
    let mu = a.col_c_comp()?;
    let d = lambda.d();
    if mu.d() != d {
        return Err(Error::Domain("inconsistent margins".into()));
    }
    let b = a.band();
    let mut window = vec![0i64; d];
    for j in 0..=(a.r() as i64 + 1) {
        let src = block(&mu, j);
        let mut pos = 0usize;
        for i in j - b..=j + b {
            let cnt = a.get(i, j);
            if cnt == 0 {
                continue;
            }
            let target = block(&lambda, i);
            let offset: i64 = (j - 2 * b..j).map(|jj| a.get(i, jj)).sum();
            for t in 0..cnt {
                let x = src[pos];
                let y = target[(offset + t) as usize];
                if x >= 1 && x <= d as i64 {
                    window[(x - 1) as usize] = y;
                }
                pos += 1;
            }
        }
    }
    let g = WeylElement::from_window(d, window)?;
    if &kappa(&lambda, &mu, &g) != a || !is_min_double(&lambda, &mu, &g) {
        return Err(Error::Internal(format!("column reading failed for {}", a.compact())));
    }
    Ok((lambda, g, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Composition;

    fn comp(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn margins_of_diagonal() {
        let a = CodedMatrix::diag_of_weight(&[1, 2, 0]);
        assert_eq!(a.row_c(), vec![1, 2, 0]);
        assert_eq!(a.col_c(), vec![1, 2, 0]);
        assert!(a.is_xi());
        assert_eq!(a.d_value(), Some(3));
        let e = CodedMatrix::e_theta(1, 0, 1);
        assert_eq!(e.get(0, 1), 1);
        assert_eq!(e.get(0, -1), 1);
        let b = a.add(&e);
        assert_eq!(b.row_c()[0], 2);
        assert_eq!(CodedMatrix::e_theta(1, 0, 0).get(0, 0), 2);
    }

    #[test]
    fn blocks_partition() {
        let mu = comp(&[1, 0, 2]);
        let d = 3;
        let dd = 2 * d + 2;
        for y in -3 * dd..3 * dd {
            let k = block_index(&mu, y);
            assert!(block(&mu, k).contains(&y), "y={y} k={k}");
        }
    }

    #[test]
    fn kappa_identity_is_diagonal() {
        let lam = comp(&[1, 1, 1]);
        let a = kappa(&lam, &lam, &WeylElement::identity(3));
        assert_eq!(a, CodedMatrix::diag_of_weight(&[1, 1, 1]));
    }

    #[test]
    fn kappa_round_trip() {
        for a in enumerate_xi(1, 2, 2) {
            let (l, g, m) = kappa_inv(&a).unwrap();
            assert_eq!(kappa(&l, &m, &g), a);
        }
    }

    #[test]
    fn dagger_and_hat() {
        let mut map = BTreeMap::new();
        map.insert((1, 2), 3);
        map.insert((0, -1), 1);
        map.insert((-1, 0), 2);
        let s = PMatrix::from_map(1, &map);
        assert_eq!(s.dagger().dagger(), s);
        assert_eq!(s.hat().get(0, 2), 3);
        assert_eq!(s.dagger().get(1, 1), 1);
    }

    #[test]
    fn json_round_trip() {
        let a = CodedMatrix::from_entries(1, &[(0, 0, 1), (0, 1, 1), (1, 1, 0), (2, 2, 3)]).unwrap();
        let j = a.to_json();
        let s = serde_json::to_string(&j).unwrap();
        let b = CodedMatrix::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

/// Pairs `(B, A)` with `B` tridiagonal, `A` of band at most `band` and `col_c(B) = row_c(A)`.
pub fn tridiagonal_pairs(r: usize, d: usize, band: usize) -> Vec<(CodedMatrix<i64>, CodedMatrix<i64>)> {
    let mut out = Vec::new();
    for a in enumerate_xi(r, d, band) {
        for b in tridiagonal_with_col(&a.row_c()) {
            out.push((b, a.clone()));
        }
    }
    out
}
