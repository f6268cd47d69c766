//! The three-parameter affine Hecke algebra in its `T_w` basis.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{mono, Scalar};
use crate::weyl::{parabolic_elements, Composition, Lengths, WeylElement};

/// `q_w^{-1} = q1^{-l_c0} q^{-l_a} q0^{l_cd}`.
pub fn qw_inv(l: &Lengths) -> Scalar {
    mono(2 * l.cd, -2 * l.c0, -2 * l.a)
}

/// `q_w = q1^{l_c0} q^{l_a} q0^{-l_cd}`.
pub fn qw(l: &Lengths) -> Scalar {
    mono(-2 * l.cd, 2 * l.c0, 2 * l.a)
}

/// Quadratic relation data `T_s^2 = a_s T_s + b_s` for each generator.
#[derive(Clone, Debug)]
pub struct Params {
    a: Vec<Scalar>,
    b: Vec<Scalar>,
    b_inv: Vec<Scalar>,
}

impl Params {
    pub fn new(d: usize) -> Self {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for s in 0..=d {
            let (x, y) = if s == 0 {
                (&mono(-2, 0, 0) - &mono(0, 2, 0), mono(-2, 2, 0))
            } else if s == d {
                (&mono(0, -2, 0) - &mono(-2, 0, 0), mono(-2, -2, 0))
            } else {
                (&mono(0, 0, -2) - &mono(0, 0, 2), Scalar::one())
            };
            a.push(x);
            b.push(y);
        }
        let b_inv = b.iter().map(|x| x.bar()).collect();
        Params { a, b, b_inv }
    }
}

/// A finite combination `sum c_w T_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pub d: usize,
    pub terms: HashMap<WeylElement, Scalar>,
}

impl HeckeElement {
    pub fn zero(d: usize) -> Self {
        HeckeElement { d, terms: HashMap::new() }
    }

    pub fn one(d: usize) -> Self {
        Self::basis(WeylElement::identity(d))
    }

    pub fn basis(w: WeylElement) -> Self {
        let d = w.d;
        let mut terms = HashMap::new();
        terms.insert(w, Scalar::one());
        HeckeElement { d, terms }
    }

    /// `T_{s_{w1}} ... T_{s_{wk}}`.
    pub fn from_word(d: usize, word: &[usize]) -> Result<Self> {
        let p = Params::new(d);
        let mut x = Self::one(d);
        for &s in word {
            if s > d {
                return Err(Error::Domain(format!("generator index {s} out of range for rank {d}")));
            }
            x = x.mul_simple(s, &p);
        }
        Ok(x)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &WeylElement) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: WeylElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> HeckeElement {
        let mut out = HeckeElement::zero(self.d);
        if k.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.terms.insert(w.clone(), c * k);
        }
        out
    }

    /// Maps each coefficient through `f`.
    pub fn map_coeffs<F: Fn(&Scalar) -> Result<Scalar>>(&self, f: F) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero(self.d);
        for (w, c) in &self.terms {
            let x = f(c)?;
            if !x.is_zero() {
                out.terms.insert(w.clone(), x);
            }
        }
        Ok(out)
    }

    /// `self * T_s`.
    pub fn mul_simple(&self, s: usize, p: &Params) -> HeckeElement {
        let mut out = HeckeElement::zero(self.d);
        for (w, c) in &self.terms {
            let ws = w.right_mul_simple(s);
            if w.is_right_descent(s) {
                out.add_term(w.clone(), &(c * &p.a[s]));
                out.add_term(ws, &(c * &p.b[s]));
            } else {
                out.add_term(ws, c);
            }
        }
        out
    }

    /// `self * T_s^{-1}` with `T_s^{-1} = b_s^{-1}(T_s - a_s)`.
    pub fn mul_simple_inv(&self, s: usize, p: &Params) -> HeckeElement {
        self.mul_simple(s, p).sub(&self.scale(&p.a[s])).scale(&p.b_inv[s])
    }

    /// `self * T_w`.
    pub fn mul_basis(&self, w: &WeylElement, p: &Params) -> HeckeElement {
        let mut x = self.clone();
        for s in w.to_reduced_word() {
            x = x.mul_simple(s, p);
        }
        x
    }

    pub fn mul(&self, o: &HeckeElement) -> Result<HeckeElement> {
        if self.d != o.d {
            return Err(Error::Domain(format!("rank mismatch {} vs {}", self.d, o.d)));
        }
        let p = Params::new(self.d);
        let mut out = HeckeElement::zero(self.d);
        for (w, c) in &o.terms {
            let x = self.mul_basis(w, &p).scale(c);
            out = out.add(&x);
        }
        Ok(out)
    }

    /// The bar involution `T_w -> T_{w^{-1}}^{-1}`, coefficients inverted.
    pub fn bar(&self) -> HeckeElement {
        let p = Params::new(self.d);
        let mut memo = BarCache::default();
        let mut out = HeckeElement::zero(self.d);
        for (w, c) in &self.terms {
            let x = memo.bar_basis(w, &p).scale(&c.bar());
            out = out.add(&x);
        }
        out
    }

    /// Terms sorted by window, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&WeylElement, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
}

/// Cache of `bar(T_w)`.
#[derive(Default)]
pub struct BarCache {
    map: HashMap<WeylElement, HeckeElement>,
}

impl BarCache {
    pub fn bar_basis(&mut self, w: &WeylElement, p: &Params) -> HeckeElement {
        if let Some(x) = self.map.get(w) {
            return x.clone();
        }
        let x = match (0..=w.d).find(|&s| w.is_right_descent(s)) {
            None => HeckeElement::one(w.d),
            Some(s) => self.bar_basis(&w.right_mul_simple(s), p).mul_simple_inv(s, p),
        };
        self.map.insert(w.clone(), x.clone());
        x
    }
}

/// `T_X = sum_{w in X} q_w^{-1} T_w`.
pub fn set_sum(d: usize, xs: &[WeylElement]) -> HeckeElement {
    let mut out = HeckeElement::zero(d);
    for w in xs {
        out.add_term(w.clone(), &qw_inv(&w.lengths()));
    }
    out
}

/// `x_λ = T_{W_λ}`.
pub fn x_lambda(lambda: &Composition) -> HeckeElement {
    set_sum(lambda.d(), &parabolic_elements(lambda))
}

/// All elements of `W_λ g W_μ`.
pub fn double_coset(lambda: &Composition, mu: &Composition, g: &WeylElement) -> Vec<WeylElement> {
    let gl = lambda.generators();
    let gm = mu.generators();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(w) = queue.pop_front() {
        for &s in &gl {
            let h = w.left_mul_simple(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        for &s in &gm {
            let h = w.right_mul_simple(s);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
        out.push(w);
    }
    out
}

/// `T_{W_λ g W_μ}`.
pub fn double_coset_sum(lambda: &Composition, mu: &Composition, g: &WeylElement) -> HeckeElement {
    set_sum(g.d, &double_coset(lambda, mu, g))
}

/// Writes `h` in the basis `T_{W_λ g W_ν}` of minimal representatives `g`.
pub fn decompose_block(
    h: &HeckeElement,
    lambda: &Composition,
    nu: &Composition,
) -> Result<Vec<(WeylElement, Scalar)>> {
    let mut out = Vec::new();
    let mut residual = h.clone();
    for (w, c) in h.sorted_terms() {
        if crate::weyl::is_min_double(lambda, nu, w) {
            let coeff = c * &qw(&w.lengths());
            out.push((w.clone(), coeff));
        }
    }
    for (g, c) in &out {
        residual = residual.sub(&double_coset_sum(lambda, nu, g).scale(c));
    }
    if !residual.is_zero() {
        return Err(Error::Internal("element is not in the (λ, ν) block".into()));
    }
    Ok(out)
}

/// The scalar `c_μ` with `bar(x_μ) = c_μ x_μ`.
pub fn bar_x_scalar(mu: &Composition) -> Scalar {
    let l = crate::weyl::longest_parabolic(mu).lengths();
    mono(2 * (l.c0 - l.cd), 2 * (l.c0 + l.cd), 4 * l.a)
}

/// JSON form: list of `{element, scalar}` pairs.
#[derive(Serialize, Deserialize)]
pub struct HeckeTerm {
    pub element: WeylElement,
    pub scalar: Scalar,
}

impl HeckeElement {
    pub fn to_json_terms(&self) -> Vec<HeckeTerm> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| HeckeTerm { element: w.clone(), scalar: c.clone() })
            .collect()
    }
}
