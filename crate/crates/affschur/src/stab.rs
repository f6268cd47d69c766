//! The stabilization algebra over `Ξ̃_n` and its variants.
//!
//! Products of `[A]` with tridiagonal `[B]` come from the closed formula
//! applied to level-dependent matrices `A + pI`: every statistic is affine
//! in `P = p/2`, so each coefficient is a polynomial in `pi = q^{-p}` over a
//! product of `(q^{-2i} - 1)` factors. Setting `pi = 1` gives the product in
//! the stabilization algebra.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use crate::algebra::Combo;
use crate::canonical::{is_leading, peel};
use crate::entry::{Affine, Entry};
use crate::error::{Error, Result};
use crate::matrices::CodedMatrix;
use crate::ring::Scalar;
use crate::schur::factors::PiFrac;
use crate::schur::formula::{mult_data_free, to_standard_datum};

pub mod bar;
pub mod canonical;
pub mod chevalley;

/// The ambient algebra (`jj`) or one of the variants `ji`, `ij`, `ii`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    JJ,
    JI,
    IJ,
    II,
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jj" | "c" => Ok(Variant::JJ),
            "ji" => Ok(Variant::JI),
            "ij" => Ok(Variant::IJ),
            "ii" => Ok(Variant::II),
            _ => Err(Error::Domain(format!("unknown variant {s:?}"))),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Variant::JJ => "jj",
            Variant::JI => "ji",
            Variant::IJ => "ij",
            Variant::II => "ii",
        };
        f.write_str(s)
    }
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::JJ, Variant::JI, Variant::IJ, Variant::II];

    fn fixes_zero(&self) -> bool {
        matches!(self, Variant::IJ | Variant::II)
    }

    fn fixes_last(&self) -> bool {
        matches!(self, Variant::JI | Variant::II)
    }

    /// Whether the diagonal entry `a_ii` is left out of the level shift.
    pub fn fixes(&self, r: usize, i: i64) -> bool {
        let k = i.rem_euclid(2 * r as i64 + 2);
        (k == 0 && self.fixes_zero()) || (k == r as i64 + 1 && self.fixes_last())
    }

    /// `A + pD` with `D` the identity minus the fixed special units, at `P = p/2`.
    pub fn lift(&self, a: &CodedMatrix) -> CodedMatrix<Affine> {
        let x = a.to_affine();
        CodedMatrix::from_fn(a.r(), a.band().max(0) as usize, |i, j| {
            let v = x.get(i, j);
            if i == j && !self.fixes(a.r(), i) {
                v + Affine::new(0, 2)
            } else {
                v
            }
        })
    }

    /// The shifted matrix at an even level `p`.
    pub fn shift(&self, a: &CodedMatrix, p: i64) -> CodedMatrix {
        self.lift(a).map(|x| x.at(p / 2))
    }

    /// `Ξ̃^{>}`: the positivity condition on the fixed special diagonals.
    pub fn in_positive_part(&self, a: &CodedMatrix) -> bool {
        let r = a.r() as i64;
        a.is_xitilde() && (!self.fixes_zero() || a.get(0, 0) > 0) && (!self.fixes_last() || a.get(r + 1, r + 1) > 0)
    }

    /// Membership in the variant index set.
    pub fn contains(&self, a: &CodedMatrix) -> bool {
        let r = a.r() + 1;
        if !self.in_positive_part(a) {
            return false;
        }
        let (rc, cc) = (a.row_c(), a.col_c());
        (!self.fixes_zero() || (rc[0] == 0 && cc[0] == 0)) && (!self.fixes_last() || (rc[r] == 0 && cc[r] == 0))
    }

    /// Fails with the first key outside the variant index set.
    pub fn filter(&self, x: &Combo<3>) -> Result<Combo<3>> {
        match x.terms.keys().find(|a| !self.contains(a)) {
            Some(a) => Err(Error::Domain(format!("{} is not in the {self} index set", a.compact()))),
            None => Ok(x.clone()),
        }
    }
}

/// A stabilization-algebra element with coefficients depending on `pi`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PiElement {
    pub terms: BTreeMap<CodedMatrix, PiFrac>,
}

impl PiElement {
    fn add_term(&mut self, a: CodedMatrix, c: &PiFrac) {
        let e = self.terms.entry(a).or_insert_with(PiFrac::zero);
        *e = e.add(c);
    }

    fn normalize(&mut self) -> Result<()> {
        let mut out = BTreeMap::new();
        for (a, mut c) in std::mem::take(&mut self.terms) {
            c.reduce();
            if !c.num.is_zero() {
                out.insert(a, c);
            }
        }
        self.terms = out;
        Ok(())
    }

    /// Coefficients at `pi = q^{-p}`, keyed by the shifted matrices.
    pub fn at_level(&self, v: Variant, p: i64) -> Result<Combo<3>> {
        let mut out = Combo::new();
        for (a, c) in &self.terms {
            out.add_term(v.shift(a, p), &c.eval(p)?);
        }
        Ok(out)
    }

    /// The element at `pi = 1`.
    pub fn at_one(&self) -> Result<Combo<3>> {
        let mut out = Combo::new();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &c.at_one()?);
        }
        Ok(out)
    }
}

fn check_shape(v: Variant, b: &CodedMatrix, a: &CodedMatrix) -> Result<()> {
    for m in [b, a] {
        if !m.is_xitilde() {
            return Err(Error::Domain(format!("{} is not in the stabilized index set", m.compact())));
        }
        if v != Variant::JJ && !v.in_positive_part(m) {
            return Err(Error::Domain(format!("{} needs positive fixed diagonals for {v}", m.compact())));
        }
    }
    if !b.is_tridiagonal() {
        return Err(Error::Domain("left factor must be tridiagonal".into()));
    }
    if b.col_c() != a.row_c() {
        return Err(Error::Domain("col_c(B) != row_c(A)".into()));
    }
    Ok(())
}

/// `[B][A]` with `pi` kept symbolic (tridiagonal `B`).
pub fn stab_mul_symbolic(v: Variant, b: &CodedMatrix, a: &CodedMatrix) -> Result<PiElement> {
    check_shape(v, b, a)?;
    let r = a.r();
    let (lb, la) = (v.lift(b), v.lift(a));
    let mut out = PiElement::default();
    for mut d in mult_data_free(&lb, &la, |i| !v.fixes(r, i))? {
        to_standard_datum(&lb, &la, &mut d);
        let key = d.target.map(|x| x.base());
        out.add_term(key, &d.coeff.symbolic()?);
    }
    out.normalize()?;
    Ok(out)
}

/// `[B][A]` at `pi = 1` (tridiagonal `B`).
pub fn stab_mul_tridiagonal(v: Variant, b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
    check_shape(v, b, a)?;
    let r = a.r();
    let mut out = Combo::new();
    for mut d in mult_data_free(b, a, |i| !v.fixes(r, i))? {
        to_standard_datum(b, a, &mut d);
        out.add_term(d.target, &d.coeff.eval());
    }
    Ok(out)
}

/// Products with arbitrary left factors, through the semi-monomial basis:
/// `[Z] = [Z^(1)] ... [Z^(x)] - sum_{Y <_alg Z} c_Y [Y]`.
pub struct Stab {
    pub variant: Variant,
    chains: RefCell<HashMap<CodedMatrix, (Vec<CodedMatrix>, Combo<3>)>>,
    products: RefCell<HashMap<(CodedMatrix, CodedMatrix), Combo<3>>>,
}

impl Stab {
    pub fn new(variant: Variant) -> Self {
        Stab { variant, chains: RefCell::new(HashMap::new()), products: RefCell::new(HashMap::new()) }
    }

    /// The chain `Z^(1), ..., Z^(x)` and the verified `m'_Z`.
    pub fn monomial(&self, z: &CodedMatrix) -> Result<(Vec<CodedMatrix>, Combo<3>)> {
        if let Some(x) = self.chains.borrow().get(z) {
            return Ok(x.clone());
        }
        let mut chain = Vec::new();
        let mut cur = z.clone();
        while let Some((b, next)) = peel(&cur)? {
            chain.push(b);
            cur = next;
        }
        let mut m = Combo::single(cur.clone(), Scalar::one());
        chain.push(cur);
        for b in chain[..chain.len() - 1].iter().rev() {
            let mut y = Combo::new();
            for (a, c) in &m.terms {
                y = y.add(&stab_mul_tridiagonal(self.variant, b, a)?.scale(c));
            }
            m = y;
        }
        if !is_leading(&m, z) {
            return Err(Error::Internal(format!("semi-monomial chain for {} fails the leading-term check", z.compact())));
        }
        let out = (chain, m);
        self.chains.borrow_mut().insert(z.clone(), out.clone());
        Ok(out)
    }

    /// `[Z][A]` for basis elements.
    pub fn mul_basis(&self, z: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
        if z.col_c() != a.row_c() {
            return Ok(Combo::new());
        }
        if z.is_tridiagonal() {
            return stab_mul_tridiagonal(self.variant, z, a);
        }
        let key = (z.clone(), a.clone());
        if let Some(x) = self.products.borrow().get(&key) {
            return Ok(x.clone());
        }
        let (chain, m) = self.monomial(z)?;
        let mut x = Combo::single(a.clone(), Scalar::one());
        for b in chain.iter().rev() {
            let mut y = Combo::new();
            for (t, c) in &x.terms {
                y = y.add(&stab_mul_tridiagonal(self.variant, b, t)?.scale(c));
            }
            x = y;
        }
        for (y, c) in &m.terms {
            if y != z {
                x = x.sub(&self.mul_basis(y, a)?.scale(c));
            }
        }
        self.products.borrow_mut().insert(key, x.clone());
        Ok(x)
    }

    pub fn mul(&self, x: &Combo<3>, y: &Combo<3>) -> Result<Combo<3>> {
        let mut out = Combo::new();
        for (b, cb) in &x.terms {
            for (a, ca) in &y.terms {
                out = out.add(&self.mul_basis(b, a)?.scale(&(cb * ca)));
            }
        }
        Ok(out)
    }
}

/// Tridiagonal elements of `Ξ̃_n` with `col_c = mu`, off-diagonal entries at
/// most `max_offdiag`, inside the variant's positive part.
pub fn tridiagonal_stab(v: Variant, mu: &[i64], max_offdiag: i64) -> Vec<CodedMatrix> {
    crate::matrices::tridiagonal_stab_with_col(mu, max_offdiag).into_iter().filter(|b| v.in_positive_part(b)).collect()
}

/// Diagonal matrices `[λ]` in the variant index set with every diagonal
/// entry in `window` (the special entries `a_00`, `a_{r+1,r+1}` are odd).
pub fn diagonals(v: Variant, r: usize, window: (i64, i64)) -> Vec<CodedMatrix> {
    let k = r + 2;
    let span = (window.1 - window.0 + 1).max(0);
    let mut out = Vec::new();
    for idx in bounded_compositions_all(k, span) {
        let lam: Vec<i64> = idx.iter().map(|&x| window.0 + x).collect();
        if lam[0] % 2 == 0 || lam[r + 1] % 2 == 0 {
            continue;
        }
        let a = CodedMatrix::diagonal(r, &lam);
        if v.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn bounded_compositions_all(k: usize, span: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for v in &out {
            for x in 0..span {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
