//! The affine Weyl group of type C~_d as signed periodic permutations.
//!
//! An element `g` is a bijection of Z with `g(i + D) = g(i) + D` and
//! `g(-i) = -g(i)`, where `D = 2d + 2`. It is determined by the window
//! `g(1), ..., g(d)`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WeylElement {
    pub d: usize,
    pub window: Vec<i64>,
}

/// The four length statistics: total, number of `s0`, number of `s_d`, and the rest.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Lengths {
    pub l: i64,
    pub c0: i64,
    pub cd: i64,
    pub a: i64,
}

impl WeylElement {
    pub fn identity(d: usize) -> Self {
        WeylElement { d, window: (1..=d as i64).collect() }
    }

    pub fn period(&self) -> i64 {
        2 * self.d as i64 + 2
    }

    /// Validates a window.
    pub fn from_window(d: usize, window: Vec<i64>) -> Result<Self> {
        if window.len() != d {
            return Err(Error::Domain(format!("window of length {} for rank {d}", window.len())));
        }
        let dd = 2 * d as i64 + 2;
        let mut seen = vec![false; dd as usize];
        seen[0] = true;
        seen[d + 1] = true;
        for &v in &window {
            for x in [v, -v] {
                let r = x.rem_euclid(dd) as usize;
                if seen[r] {
                    return Err(Error::Domain(format!("window {window:?} is not a signed periodic permutation")));
                }
                seen[r] = true;
            }
        }
        Ok(WeylElement { d, window })
    }

    pub fn simple(d: usize, i: usize) -> Result<Self> {
        if i > d {
            return Err(Error::Domain(format!("generator index {i} out of range for rank {d}")));
        }
        Ok(Self::identity(d).right_mul_simple(i))
    }

    /// The product `s_{w1} s_{w2} ... s_{wk}`.
    pub fn from_word(d: usize, word: &[usize]) -> Result<Self> {
        let mut g = Self::identity(d);
        for &s in word {
            if s > d {
                return Err(Error::Domain(format!("generator index {s} out of range for rank {d}")));
            }
            g = g.right_mul_simple(s);
        }
        Ok(g)
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v == k as i64 + 1)
    }

    /// `g(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let dd = self.period();
        let d = self.d as i64;
        let k = i.div_euclid(dd);
        let m = i.rem_euclid(dd);
        if m == 0 || m == d + 1 {
            i
        } else if m <= d {
            k * dd + self.window[(m - 1) as usize]
        } else {
            (k + 1) * dd - self.window[(dd - m - 1) as usize]
        }
    }

    /// `self * other` (apply `other` first).
    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        assert_eq!(self.d, other.d);
        WeylElement { d: self.d, window: other.window.iter().map(|&v| self.eval(v)).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let dd = self.period();
        let d = self.d as i64;
        let mut w = vec![0i64; self.d];
        for (idx, &v) in self.window.iter().enumerate() {
            let i = idx as i64 + 1;
            let k = v.div_euclid(dd);
            let mut rho = v.rem_euclid(dd);
            if rho > d + 1 {
                rho -= dd;
            }
            let k = if rho < 0 { k + 1 } else { k };
            if rho > 0 {
                w[(rho - 1) as usize] = i - k * dd;
            } else {
                w[(-rho - 1) as usize] = k * dd - i;
            }
        }
        WeylElement { d: self.d, window: w }
    }

    /// `g * s_i`.
    pub fn right_mul_simple(&self, i: usize) -> WeylElement {
        let mut w = self.window.clone();
        let d = self.d;
        if i == 0 {
            w[0] = -w[0];
        } else if i == d {
            w[d - 1] = self.period() - w[d - 1];
        } else {
            w.swap(i - 1, i);
        }
        WeylElement { d, window: w }
    }

    /// `s_i * g`.
    pub fn left_mul_simple(&self, i: usize) -> WeylElement {
        let s = WeylElement::identity(self.d).right_mul_simple(i);
        s.mul(self)
    }

    /// True when `l(g s_i) < l(g)`.
    pub fn is_right_descent(&self, i: usize) -> bool {
        let d = self.d;
        if i == 0 {
            self.window[0] < 0
        } else if i == d {
            self.window[d - 1] > d as i64 + 1
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// True when `l(s_i g) < l(g)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.inverse().is_right_descent(i)
    }

    fn max_displacement(&self) -> i64 {
        self.window.iter().enumerate().map(|(k, &v)| (v - k as i64 - 1).abs()).max().unwrap_or(0)
    }

    /// The length statistics, by counting inversions.
    pub fn lengths(&self) -> Lengths {
        let d = self.d as i64;
        let m = self.max_displacement();
        let mut inv = 0;
        for i in 1..=d {
            let gi = self.eval(i);
            for j in (i - 2 * m - 1)..=(i + 2 * m + 1) {
                if j == i {
                    continue;
                }
                let gj = self.eval(j);
                if (i > j && gi < gj) || (i < j && gi > gj) {
                    inv += 1;
                }
            }
        }
        let l = inv / 2;
        let c0 = (1..=m.max(1)).filter(|&i| self.eval(i) < 0).count() as i64;
        let cd = (d + 2..=d + 1 + m.max(1)).filter(|&i| self.eval(i) < d + 1).count() as i64;
        Lengths { l, c0, cd, a: l - c0 - cd }
    }

    pub fn length(&self) -> i64 {
        self.lengths().l
    }

    /// A reduced word, stripping the smallest right descent each time.
    pub fn to_reduced_word(&self) -> Vec<usize> {
        let mut g = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 0..=self.d {
                if g.is_right_descent(i) {
                    g = g.right_mul_simple(i);
                    word.push(i);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }
}

/// A weak composition `(λ0, ..., λ_{m})` of `d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::Domain("a composition needs at least two parts".into()));
        }
        Ok(Composition { parts })
    }

    pub fn d(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Rank, so that there are `r + 2` parts.
    pub fn rank(&self) -> usize {
        self.parts.len() - 2
    }

    /// Indices of the removed generators `λ0, λ0+λ1, ..., λ0+...+λ_{m-1}`.
    pub fn cuts(&self) -> Vec<usize> {
        let mut s = 0;
        let mut out = Vec::new();
        for &p in &self.parts[..self.parts.len() - 1] {
            s += p;
            out.push(s);
        }
        out
    }

    /// Generators of the parabolic subgroup `W_λ`.
    pub fn generators(&self) -> Vec<usize> {
        let cuts = self.cuts();
        (0..=self.d()).filter(|i| !cuts.contains(i)).collect()
    }
}

/// All weak compositions of `d` into `r + 2` parts, lexicographically.
pub fn compositions(r: usize, d: usize) -> Vec<Composition> {
    fn go(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if slots == 1 {
            cur.push(left);
            out.push(Composition { parts: cur.clone() });
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(left - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, r + 2, &mut Vec::new(), &mut out);
    out
}

/// All elements of `W_λ` in breadth-first order from the identity.
pub fn parabolic_elements(lambda: &Composition) -> Vec<WeylElement> {
    let d = lambda.d();
    let gens = lambda.generators();
    let e = WeylElement::identity(d);
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(e.clone());
    queue.push_back(e);
    while let Some(g) = queue.pop_front() {
        for &s in &gens {
            let h = g.right_mul_simple(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        order.push(g);
    }
    order
}

/// Longest element of `W_λ`, obtained by climbing ascents.
pub fn longest_parabolic(lambda: &Composition) -> WeylElement {
    let gens = lambda.generators();
    let mut g = WeylElement::identity(lambda.d());
    'outer: loop {
        for &s in &gens {
            if !g.is_right_descent(s) {
                g = g.right_mul_simple(s);
                continue 'outer;
            }
        }
        return g;
    }
}

/// Minimal in `W_λ g`.
pub fn is_min_left(lambda: &Composition, g: &WeylElement) -> bool {
    let inv = g.inverse();
    lambda.generators().iter().all(|&s| !inv.is_right_descent(s))
}

/// Minimal in `g W_μ`.
pub fn is_min_right(mu: &Composition, g: &WeylElement) -> bool {
    mu.generators().iter().all(|&s| !g.is_right_descent(s))
}

/// Minimal in `W_λ g W_μ`.
pub fn is_min_double(lambda: &Composition, mu: &Composition, g: &WeylElement) -> bool {
    is_min_left(lambda, g) && is_min_right(mu, g)
}

/// The minimal length element of `W_λ g W_μ`.
pub fn min_double_coset_rep(lambda: &Composition, mu: &Composition, g: &WeylElement) -> WeylElement {
    let gl = lambda.generators();
    let gm = mu.generators();
    let mut g = g.clone();
    'outer: loop {
        for &s in &gl {
            if g.is_left_descent(s) {
                g = g.left_mul_simple(s);
                continue 'outer;
            }
        }
        for &s in &gm {
            if g.is_right_descent(s) {
                g = g.right_mul_simple(s);
                continue 'outer;
            }
        }
        return g;
    }
}

/// The intersection `g^{-1} W_λ g ∩ W_μ`, as a list.
pub fn conjugate_intersection(lambda: &Composition, mu: &Composition, g: &WeylElement) -> Vec<WeylElement> {
    let wm: HashSet<WeylElement> = parabolic_elements(mu).into_iter().collect();
    let gi = g.inverse();
    parabolic_elements(lambda)
        .into_iter()
        .map(|x| gi.mul(&x).mul(g))
        .filter(|y| wm.contains(y))
        .collect()
}

/// The longest element of `W_λ g W_μ` for a minimal `g`, as `x° g y°`.
pub fn longest_double_coset_rep(lambda: &Composition, mu: &Composition, g: &WeylElement) -> WeylElement {
    let xo = longest_parabolic(lambda);
    let wd = conjugate_intersection(lambda, mu, g);
    let wdo = wd.iter().max_by_key(|y| y.length()).cloned().unwrap();
    let yo = wdo.mul(&longest_parabolic(mu));
    xo.mul(g).mul(&yo)
}

/// Lengths memoized per element; cheap helper for hot loops.
#[derive(Default)]
pub struct LengthCache {
    map: HashMap<WeylElement, Lengths>,
}

impl LengthCache {
    pub fn get(&mut self, g: &WeylElement) -> Lengths {
        if let Some(l) = self.map.get(g) {
            return *l;
        }
        let l = g.lengths();
        self.map.insert(g.clone(), l);
        l
    }
}
