//! Specialization at a weight function, canonical bases and monomial bases.
//!
//! Combinations here are in the standard basis `[A]` (three parameters) or
//! `[A]^L` (one parameter `v`).

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::{leq_alg, CodedMatrix, PMatrix};
use crate::ring::{specialize, Scalar, SpecScalar, WeightFunction};
use crate::schur::formula::mul_formula_standard;
use crate::schur::{standard_product, Oracle};

/// Default cap on the size of a bar-closed downward set.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Specializes every coefficient.
pub fn specialize_combo(x: &Combo<3>, w: &WeightFunction) -> Result<Combo<1>> {
    x.try_map_coeffs(|_, c| specialize(c, w))
}

/// One band-peeling step: tridiagonal `B` and `A'` of smaller band with
/// `[B][A'] = [A] + lower terms` (unverified). `None` once `A` is tridiagonal.
pub fn peel(a: &CodedMatrix) -> Result<Option<(CodedMatrix, CodedMatrix)>> {
    let b = a.band();
    if b <= 1 {
        return Ok(None);
    }
    let r = a.r();
    let ri = r as i64;
    // T carries the outer upper diagonal of row i down to row i+1
    let t = PMatrix::from_fn(r, (b - 1) as usize, |i, j| if j == i - 1 + b { a.get(i - 1, j) } else { 0 });
    let ap = CodedMatrix::from_fn(r, b as usize, |i, j| a.get(i, j) + t.theta().get(i, j) - t.hat().theta().get(i, j));
    let ap = CodedMatrix::from_fn(r, ap.band().max(0) as usize, |i, j| ap.get(i, j));
    if ap.entries().iter().any(|&(i, j, x)| i != j && x < 0) {
        return Err(Error::Internal(format!("peeling {} left a negative entry", a.compact())));
    }
    // upper entries b_{i,i+1} = a_{i,i+b}; lower ones follow by symmetry
    let up = |j: i64| a.get(j - 1, j - 1 + b);
    let down = |j: i64| a.get(-j - 1, -j - 1 + b);
    let mu = ap.row_c();
    let mut items = Vec::new();
    for j in 0..=ri + 1 {
        let m = mu[j as usize];
        if j == 0 {
            items.push((0, 0, 2 * (m - down(0)) + 1));
            items.push((1, 0, down(0)));
        } else if j == ri + 1 {
            items.push((ri, ri + 1, up(ri + 1)));
            items.push((ri + 1, ri + 1, 2 * (m - up(ri + 1)) + 1));
        } else {
            items.push((j - 1, j, up(j)));
            items.push((j, j, m - up(j) - down(j)));
            items.push((j + 1, j, down(j)));
        }
    }
    let bm = CodedMatrix::from_entries(r, &items)?;
    if bm.row_c() != a.row_c() || bm.col_c() != ap.row_c() {
        return Err(Error::Internal(format!("peeling {}: margins do not match", a.compact())));
    }
    Ok(Some((bm, ap)))
}

/// The tridiagonal chain `A^{(1)}, ..., A^{(x)}`, unverified.
pub fn tridiagonal_chain(a: &CodedMatrix) -> Result<Vec<CodedMatrix>> {
    let mut out = Vec::new();
    let mut cur = a.clone();
    while let Some((b, next)) = peel(&cur)? {
        out.push(b);
        cur = next;
    }
    out.push(cur);
    Ok(out)
}

/// Checks that `x = [A] + sum_{B <_alg A} c_B [B]`.
pub fn is_leading<const N: usize>(x: &Combo<N>, a: &CodedMatrix) -> bool {
    x.coeff(a).is_one() && x.terms.keys().all(|m| m == a || leq_alg(m, a))
}

/// `m'_A = [A^{(1)}] ... [A^{(x)}]` in the standard basis, products taken
/// with the closed formula (tridiagonal left factors only).
pub fn monomial_product(chain: &[CodedMatrix]) -> Result<Combo<3>> {
    let (last, rest) = chain.split_last().ok_or_else(|| Error::Domain("empty chain".into()))?;
    let mut x = Combo::single(last.clone(), Scalar::one());
    for b in rest.iter().rev() {
        let mut y = Combo::new();
        for (a, c) in &x.terms {
            y = y.add(&mul_formula_standard(b, a)?.scale(c));
        }
        x = y;
    }
    Ok(x)
}

/// The verified chain and `m'_A`.
pub fn monomial_basis(a: &CodedMatrix) -> Result<(Vec<CodedMatrix>, Combo<3>)> {
    let chain = tridiagonal_chain(a)?;
    let m = monomial_product(&chain)?;
    if !is_leading(&m, a) {
        return Err(Error::Internal(format!("monomial chain for {} fails the leading-term check", a.compact())));
    }
    Ok((chain, m))
}

/// Tie-break for the linear extension of `≤_alg`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    Forward,
    Reversed,
}

/// Canonical bases at a weight function, with the Hecke oracle as the bar.
pub struct Canonical<'o> {
    pub oracle: &'o Oracle,
    pub weight: WeightFunction,
    pub cap: usize,
    bars: RefCell<HashMap<CodedMatrix, Combo<1>>>,
    products: RefCell<HashMap<(CodedMatrix, CodedMatrix), Combo<1>>>,
    elements: RefCell<HashMap<(CodedMatrix, Extension), Combo<1>>>,
}

impl<'o> Canonical<'o> {
    pub fn new(oracle: &'o Oracle, weight: WeightFunction) -> Self {
        Canonical {
            oracle,
            weight,
            cap: DEFAULT_CLOSURE_CAP,
            bars: RefCell::default(),
            products: RefCell::default(),
            elements: RefCell::default(),
        }
    }

    /// `c` of the weight function: canonical coefficients live in `v^c Z[v^c]`.
    pub fn c(&self) -> i64 {
        self.weight.c()
    }

    /// `bar([A]^L)` in the `[·]^L` basis.
    pub fn bar_basis(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        if let Some(x) = self.bars.borrow().get(a) {
            return Ok(x.clone());
        }
        let x = self.oracle.bar_standard(&Combo::single(a.clone(), Scalar::one()))?;
        let x = specialize_combo(&x, &self.weight)?;
        self.bars.borrow_mut().insert(a.clone(), x.clone());
        Ok(x)
    }

    pub fn bar(&self, x: &Combo<1>) -> Result<Combo<1>> {
        let mut out = Combo::new();
        for (a, c) in &x.terms {
            out = out.add(&self.bar_basis(a)?.scale(&c.bar()));
        }
        Ok(out)
    }

    /// `[B]^L [A]^L`.
    pub fn mul_basis(&self, b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<1>> {
        let key = (b.clone(), a.clone());
        if let Some(x) = self.products.borrow().get(&key) {
            return Ok(x.clone());
        }
        let x = if b.col_c() != a.row_c() {
            Combo::new()
        } else {
            let e = self.oracle.mul(b, a)?;
            specialize_combo(&standard_product(b, a, &e), &self.weight)?
        };
        self.products.borrow_mut().insert(key, x.clone());
        Ok(x)
    }

    pub fn mul(&self, x: &Combo<1>, y: &Combo<1>) -> Result<Combo<1>> {
        let mut out = Combo::new();
        for (b, cb) in &x.terms {
            for (a, ca) in &y.terms {
                out = out.add(&self.mul_basis(b, a)?.scale(&(cb * ca)));
            }
        }
        Ok(out)
    }

    /// The smallest set containing `A` and closed under taking supports of bar images.
    pub fn bar_closure(&self, a: &CodedMatrix) -> Result<Vec<CodedMatrix>> {
        bar_closure(a, self.cap, &|m| self.bar_basis(m))
    }

    /// `{A}^L` expanded in the `[·]^L` basis.
    pub fn canonical(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        self.canonical_with(a, Extension::Forward)
    }

    pub fn canonical_with(&self, a: &CodedMatrix, ext: Extension) -> Result<Combo<1>> {
        let key = (a.clone(), ext);
        if let Some(x) = self.elements.borrow().get(&key) {
            return Ok(x.clone());
        }
        let out = triangular_canonical(a, self.c(), ext, self.cap, &|m| self.bar_basis(m))?;
        self.elements.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// `m_A^L = {A^{(1)}}^L ... {A^{(x)}}^L`.
    pub fn monomial(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        let (chain, _) = monomial_basis(a)?;
        let mut x = self.canonical(chain.last().unwrap())?;
        for b in chain[..chain.len() - 1].iter().rev() {
            x = self.mul(&self.canonical(b)?, &x)?;
        }
        Ok(x)
    }

    /// Coefficients of `x` in the canonical basis, by triangular elimination from the top.
    pub fn in_canonical_basis(&self, x: &Combo<1>) -> Result<Combo<1>> {
        let mut rest = x.clone();
        let mut out = Combo::new();
        while let Some(top) = maximal(&rest) {
            let c = rest.coeff(&top);
            let can = self.canonical(&top)?;
            rest = rest.sub(&can.scale(&c));
            out.add_term(top, &c);
        }
        Ok(out)
    }
}

/// The bar closure of `A` for an arbitrary bar map on basis elements.
pub fn bar_closure(a: &CodedMatrix, cap: usize, bar: &dyn Fn(&CodedMatrix) -> Result<Combo<1>>) -> Result<Vec<CodedMatrix>> {
    let mut seen: BTreeSet<CodedMatrix> = BTreeSet::new();
    let mut stack = vec![a.clone()];
    seen.insert(a.clone());
    while let Some(x) = stack.pop() {
        for m in bar(&x)?.terms.keys() {
            if !leq_alg(m, a) {
                return Err(Error::Internal(format!("bar of {} leaves the ≤_alg-ideal of {}", x.compact(), a.compact())));
            }
            if seen.insert(m.clone()) {
                if seen.len() > cap {
                    return Err(Error::Resource(format!("bar closure of {} exceeds {} matrices", a.compact(), cap)));
                }
                stack.push(m.clone());
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The unique bar-invariant element in `[A] + sum_{B < A} v^c Z[v^c] [B]`,
/// by the triangular recursion over a linear extension of `≤_alg`.
pub fn triangular_canonical(
    a: &CodedMatrix,
    c: i64,
    ext: Extension,
    cap: usize,
    bar: &dyn Fn(&CodedMatrix) -> Result<Combo<1>>,
) -> Result<Combo<1>> {
    let set = bar_closure(a, cap, bar)?;
    let order = top_down(&set, ext);
    let mut pi: HashMap<CodedMatrix, SpecScalar> = HashMap::new();
    pi.insert(a.clone(), SpecScalar::one());
    let bars: Vec<Combo<1>> = order.iter().map(|m| bar(m)).collect::<Result<_>>()?;
    for (k, bm) in order.iter().enumerate().skip(1) {
        // s_B = sum_{B < C <= A} r_{BC} bar(pi_C)
        let mut s = SpecScalar::zero();
        for (cm, bc) in order[..k].iter().zip(&bars) {
            if let Some(p) = pi.get(cm) {
                let r = bc.coeff(bm);
                if !r.is_zero() {
                    s = &s + &(&r * &p.bar());
                }
            }
        }
        if !(&s + &s.bar()).is_zero() {
            return Err(Error::Internal(format!("bar recursion at {} is not antisymmetric", bm.compact())));
        }
        let p = s.positive_part();
        if !p.in_positive_lattice(c) {
            return Err(Error::Internal(format!("coefficient at {} outside v^{c}Z[v^{c}]", bm.compact())));
        }
        if !p.is_zero() {
            pi.insert(bm.clone(), p);
        }
    }
    let mut out = Combo::new();
    for (m, p) in pi {
        out.add_term(m, &p);
    }
    Ok(out)
}

/// A top-down linear extension of `≤_alg` on `set`: each matrix comes after
/// every matrix above it.
pub fn top_down(set: &[CodedMatrix], ext: Extension) -> Vec<CodedMatrix> {
    let mut left: Vec<CodedMatrix> = set.to_vec();
    left.sort();
    if ext == Extension::Reversed {
        left.reverse();
    }
    let mut out = Vec::with_capacity(left.len());
    while !left.is_empty() {
        let k = left
            .iter()
            .position(|x| !left.iter().any(|y| y != x && leq_alg(x, y)))
            .expect("≤_alg is a partial order");
        out.push(left.remove(k));
    }
    out
}

fn maximal(x: &Combo<1>) -> Option<CodedMatrix> {
    let keys: Vec<&CodedMatrix> = x.terms.keys().collect();
    keys.iter().find(|a| !keys.iter().any(|b| b != *a && leq_alg(*a, *b))).map(|a| (*a).clone())
}
