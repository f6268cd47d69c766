//! The bar involution through Chevalley monomials.
//!
//! Divided powers `[g^R]` of Chevalley generators are bar-invariant. If
//! `[g^R][A'] = u [A] + sum_{B <_alg A} c_B [B]` with a unit `u`, then
//! `bar([A]) = bar(u)^{-1} ([g^R] bar([A']) - sum bar(c_B) bar([B]))`.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use crate::algebra::Combo;
use crate::canonical::specialize_combo;
use crate::error::{Error, Result};
use crate::matrices::{leq_alg, CodedMatrix};
use crate::ring::{Scalar, WeightFunction};
use crate::schur::chevalley::{generator_matrix, Generator};
use crate::schur::formula::mul_formula_standard;

use super::chevalley::{stab_generator, stab_mul_chevalley};
use super::{stab_mul_symbolic, PiElement, Variant};
use crate::ring::PiScalar;
use crate::schur::factors::PiFrac;

/// `[g^R][A]` in the standard basis.
pub type ChevalleyProduct<'a> = dyn Fn(Generator, i64, &CodedMatrix) -> Result<Combo<3>> + 'a;

/// A word of divided powers, applied right to left to `[D]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Word {
    pub letters: Vec<(Generator, i64)>,
    pub diagonal: CodedMatrix,
}

/// Bar involution computed from Chevalley monomials, with caches.
pub struct ChevalleyBar<'a> {
    product: Box<ChevalleyProduct<'a>>,
    accept: Box<dyn Fn(&CodedMatrix) -> bool + 'a>,
    steps: RefCell<HashMap<CodedMatrix, Option<Step>>>,
    bars: RefCell<HashMap<CodedMatrix, Combo<3>>>,
    active: RefCell<HashSet<CodedMatrix>>,
}

/// One reduction `[g^R][A'] = u [A] + lower`.
#[derive(Clone, Debug)]
pub struct Step {
    pub generator: Generator,
    pub units: i64,
    pub right: CodedMatrix,
    pub product: Combo<3>,
}

/// The inverse of the leading coefficient when `x = u [A] + lower` with `u = ±` a monomial.
pub fn leading_unit(x: &Combo<3>, a: &CodedMatrix) -> Option<Scalar> {
    let (e, c) = x.coeff(a).as_monomial()?;
    if c.abs() != 1 || !x.terms.keys().all(|m| m == a || leq_alg(m, a)) {
        return None;
    }
    Some(Scalar::monomial([-e[0], -e[1], -e[2]], c))
}

// sum of |i - j| a_ij over the rows of one period
fn spread(a: &CodedMatrix) -> i64 {
    let b = a.band();
    (0..a.n()).flat_map(|i| (i - b..=i + b).map(move |j| (i, j))).map(|(i, j)| (i - j).abs() * a.get(i, j)).sum()
}

impl<'a> ChevalleyBar<'a> {
    /// `accept` decides which intermediate matrices may appear in a word.
    pub fn new(product: Box<ChevalleyProduct<'a>>, accept: Box<dyn Fn(&CodedMatrix) -> bool + 'a>) -> Self {
        ChevalleyBar {
            product,
            accept,
            steps: RefCell::new(HashMap::new()),
            bars: RefCell::new(HashMap::new()),
            active: RefCell::new(HashSet::new()),
        }
    }

    /// In the Schur algebra (nonnegative entries, bounded diagonals).
    pub fn schur() -> Self {
        Self::new(
            Box::new(|g, units, a: &CodedMatrix| {
                let b = generator_matrix(g, &a.row_c(), units)?;
                mul_formula_standard(&b, a)
            }),
            Box::new(|a: &CodedMatrix| a.is_xi()),
        )
    }

    /// In the stabilization algebra at `pi = 1`.
    pub fn stab(v: Variant) -> Self {
        Self::new(
            Box::new(move |g, units, a: &CodedMatrix| stab_mul_chevalley(v, g, units, a)),
            Box::new(move |a: &CodedMatrix| v.in_positive_part(a)),
        )
    }

    fn left_mul(&self, g: Generator, units: i64, x: &Combo<3>) -> Result<Combo<3>> {
        let mut y = Combo::new();
        for (a, c) in &x.terms {
            y = y.add(&(self.product)(g, units, a)?.scale(c));
        }
        Ok(y)
    }

    // undo R units of g at column u: the matrix A' with [g^R][A'] containing [A]
    pub fn candidates(a: &CodedMatrix) -> Vec<(Generator, i64, CodedMatrix)> {
        let r = a.r();
        let ri = r as i64;
        let mut out = Vec::new();
        let band = a.band();
        for i in 0..=ri {
            for (g, tgt, src) in [(Generator::E(i as usize), i, i + 1), (Generator::F(i as usize), i + 1, i)] {
                for u in tgt - band..=tgt + band {
                    let farther = if src > tgt { u >= src } else { u <= src };
                    if u == tgt || !farther {
                        continue;
                    }
                    let x = a.get(tgt, u);
                    for units in (1..=x).rev() {
                        let mut ap = a.clone();
                        let e_t = CodedMatrix::e_theta(r, tgt, u);
                        let e_s = CodedMatrix::e_theta(r, src, u);
                        for _ in 0..units {
                            ap = ap.sub(&e_t).add(&e_s);
                        }
                        if ap.entries().iter().all(|&(p, q, y)| p == q || y >= 0) && spread(&ap) < spread(a) {
                            out.push((g, units, ap));
                        }
                    }
                }
            }
        }
        out
    }

    /// A step `[g^R][A'] = u [A] + lower` with `u` a unit and `A'` of smaller spread.
    pub fn step(&self, a: &CodedMatrix) -> Result<Option<Step>> {
        if let Some(x) = self.steps.borrow().get(a) {
            return Ok(x.clone());
        }
        let mut found = None;
        for (g, units, ap) in Self::candidates(a) {
            if !(self.accept)(&ap) {
                continue;
            }
            let m = match (self.product)(g, units, &ap) {
                Ok(m) => m,
                Err(Error::Domain(_)) => continue,
                Err(e) => return Err(e),
            };
            if leading_unit(&m, a).is_some() {
                found = Some(Step { generator: g, units, right: ap, product: m });
                break;
            }
        }
        self.steps.borrow_mut().insert(a.clone(), found.clone());
        Ok(found)
    }

    /// A Chevalley monomial with leading term `[A]` up to a unit.
    pub fn monomial(&self, a: &CodedMatrix) -> Result<Option<(Word, Combo<3>)>> {
        let mut letters = Vec::new();
        let mut cur = a.clone();
        while !cur.is_diagonal() {
            match self.step(&cur)? {
                Some(s) => {
                    letters.push((s.generator, s.units));
                    cur = s.right;
                }
                None => return Ok(None),
            }
        }
        let mut x = Combo::single(cur.clone(), Scalar::one());
        for &(g, units) in letters.iter().rev() {
            x = self.left_mul(g, units, &x)?;
        }
        Ok(Some((Word { letters, diagonal: cur }, x)))
    }

    /// `bar([A])` in the standard basis.
    pub fn bar_basis(&self, a: &CodedMatrix) -> Result<Combo<3>> {
        if let Some(x) = self.bars.borrow().get(a) {
            return Ok(x.clone());
        }
        if a.is_diagonal() {
            return Ok(Combo::single(a.clone(), Scalar::one()));
        }
        if !self.active.borrow_mut().insert(a.clone()) {
            return Err(Error::Internal(format!("cyclic bar recursion at {}", a.compact())));
        }
        let out = self.bar_step(a);
        self.active.borrow_mut().remove(a);
        let out = out?;
        self.bars.borrow_mut().insert(a.clone(), out.clone());
        Ok(out)
    }

    fn bar_step(&self, a: &CodedMatrix) -> Result<Combo<3>> {
        let s = self
            .step(a)?
            .ok_or_else(|| Error::Domain(format!("no Chevalley step with leading term {}", a.compact())))?;
        // [g][A'] = u [A] + sum c_B [B] and bar([g][A']) = [g] bar([A'])
        let inv = leading_unit(&s.product, a).ok_or_else(|| Error::Internal("leading unit".into()))?;
        let mut out = self.left_mul(s.generator, s.units, &self.bar_basis(&s.right)?)?;
        for (b, c) in &s.product.terms {
            if b != a {
                out = out.sub(&self.bar_basis(b)?.scale(&c.bar()));
            }
        }
        Ok(out.scale(&inv.bar()))
    }

    pub fn bar(&self, x: &Combo<3>) -> Result<Combo<3>> {
        let mut out = Combo::new();
        for (a, c) in &x.terms {
            out = out.add(&self.bar_basis(a)?.scale(&c.bar()));
        }
        Ok(out)
    }
}

/// Default level budget for [`stab_bar_spec`].
pub const DEFAULT_P_MAX: i64 = 20;

/// `bar([A])^L` by shifting to levels `p = 2, 4, ...`, computing the bar in
/// the specialized Schur algebra there, and re-centering the support. Returns
/// the first expansion that repeats at two consecutive levels.
pub fn stab_bar_spec(v: Variant, a: &CodedMatrix, w: &WeightFunction, p_max: i64) -> Result<Combo<1>> {
    if !v.in_positive_part(a) {
        return Err(Error::Domain(format!("{} is outside the {v} positive part", a.compact())));
    }
    let mut prev: Option<Combo<1>> = None;
    let mut p = 2;
    while p <= p_max {
        let shifted = v.shift(a, p);
        if shifted.is_xi() {
            let sb = ChevalleyBar::schur();
            let x = sb.bar_basis(&shifted)?;
            let mut back = Combo::new();
            for (m, c) in &x.terms {
                back.add_term(v.shift(m, -p), c);
            }
            let y = specialize_combo(&back, w)?;
            if prev.as_ref() == Some(&y) {
                return Ok(y);
            }
            prev = Some(y);
        }
        p += 2;
    }
    Err(Error::Resource(format!("bar of {} did not stabilize for even p <= {p_max}", a.compact())))
}

/// The bar involution with `pi` kept symbolic (`bar(pi) = pi^{-1}`), along
/// the same Chevalley steps as [`ChevalleyBar::stab`]. At `pi = q^{-p}` it is
/// the bar involution of the level-`p` Schur algebra; at `pi = 1` it is the
/// bar involution of the stabilization algebra.
pub struct SymbolicBar<'a> {
    steps: ChevalleyBar<'a>,
    variant: Variant,
    bars: RefCell<HashMap<CodedMatrix, PiElement>>,
}

fn pi_add(x: &mut PiElement, a: &CodedMatrix, c: &PiFrac) {
    let e = x.terms.entry(a.clone()).or_insert_with(PiFrac::zero);
    *e = e.add(c);
    e.reduce();
    if e.num.is_zero() {
        x.terms.remove(a);
    }
}

impl<'a> SymbolicBar<'a> {
    pub fn new(v: Variant) -> Self {
        SymbolicBar { steps: ChevalleyBar::stab(v), variant: v, bars: RefCell::new(HashMap::new()) }
    }

    fn left_mul(&self, g: Generator, units: i64, x: &PiElement) -> Result<PiElement> {
        let mut out = PiElement::default();
        for (a, c) in &x.terms {
            let b = stab_generator(g, &a.row_c(), units)?;
            for (t, d) in stab_mul_symbolic(self.variant, &b, a)?.terms {
                pi_add(&mut out, &t, &d.mul(c));
            }
        }
        Ok(out)
    }

    /// `bar([A])` with coefficients in `pi`.
    pub fn bar_basis(&self, a: &CodedMatrix) -> Result<PiElement> {
        if let Some(x) = self.bars.borrow().get(a) {
            return Ok(x.clone());
        }
        let mut out = PiElement::default();
        if a.is_diagonal() {
            pi_add(&mut out, a, &PiFrac::from_scalar(&Scalar::one()));
            return Ok(out);
        }
        let s = self
            .steps
            .step(a)?
            .ok_or_else(|| Error::Domain(format!("no Chevalley step with leading term {}", a.compact())))?;
        let b = stab_generator(s.generator, &s.right.row_c(), s.units)?;
        let prod = stab_mul_symbolic(self.variant, &b, &s.right)?;
        let lead = prod.terms.get(a).ok_or_else(|| Error::Internal("missing leading term".into()))?;
        if !lead.den.is_empty() {
            return Err(Error::Internal(format!("leading coefficient of {} is not a unit", a.compact())));
        }
        let (e, sign) = lead.num.as_monomial().ok_or_else(|| Error::Internal("leading coefficient not a monomial".into()))?;
        // bar(u)^{-1} = u with all exponents kept, up to the sign
        let inv_bar = PiScalar::monomial(e, sign);
        out = self.left_mul(s.generator, s.units, &self.bar_basis(&s.right)?)?;
        for (m, c) in &prod.terms {
            if m != a {
                for (t, d) in self.bar_basis(m)?.terms {
                    pi_add(&mut out, &t, &d.mul(&c.bar()).neg());
                }
            }
        }
        let mut scaled = PiElement::default();
        for (t, c) in &out.terms {
            pi_add(&mut scaled, t, &c.scale(&inv_bar));
        }
        self.bars.borrow_mut().insert(a.clone(), scaled.clone());
        Ok(scaled)
    }
}
