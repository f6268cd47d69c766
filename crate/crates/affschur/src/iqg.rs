//! Defining relations of the modified ıquantum groups, checked under `ℵ`
//! inside the stabilization algebras.
//!
//! Relations are data: a list of terms `coefficient · word · 1_λ` whose sum
//! must vanish. Coefficients are small expressions in `λ`; denominators are
//! powers of `q - q^{-1}` and are cleared before comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::CodedMatrix;
use crate::ring::{balanced_int, mono, q_pow, Scalar};
use crate::stab::{diagonals, Stab, Variant};

/// A generator of a modified ıquantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    E(usize),
    F(usize),
    T0,
    Tr,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{i}"),
            Gen::F(i) => write!(f, "f{i}"),
            Gen::T0 => write!(f, "t0"),
            Gen::Tr => write!(f, "tr"),
        }
    }
}

/// `c + sum k_i λ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin {
    pub c: i64,
    pub terms: Vec<(usize, i64)>,
}

impl Lin {
    pub fn constant(c: i64) -> Self {
        Lin { c, terms: vec![] }
    }

    /// `λ_i - λ_j + c`.
    pub fn diff(i: usize, j: usize, c: i64) -> Self {
        Lin { c, terms: vec![(i, 1), (j, -1)] }
    }

    pub fn eval(&self, lam: &[i64]) -> i64 {
        self.c + self.terms.iter().map(|&(i, k)| k * lam[i]).sum::<i64>()
    }
}

/// A coefficient, as a function of the weight `λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coef {
    Int(i64),
    /// `⟦n⟧ = (q^n - q^{-n})/(q - q^{-1})`.
    Bracket(Lin),
    /// `q0^{h0/2} q1^{h1/2} q^{e}`.
    Mono { h0: i64, h1: i64, q: Lin },
    /// `1/(q - q^{-1})`.
    InvQ,
    Sum(Vec<Coef>),
    Prod(Vec<Coef>),
}

impl Coef {
    pub fn one() -> Self {
        Coef::Int(1)
    }

    pub fn bracket(n: i64) -> Self {
        Coef::Bracket(Lin::constant(n))
    }

    pub fn times(self, o: Coef) -> Self {
        Coef::Prod(vec![self, o])
    }

    pub fn neg(self) -> Self {
        Coef::Prod(vec![Coef::Int(-1), self])
    }

    pub fn eval(&self, lam: &[i64]) -> Frac {
        match self {
            Coef::Int(k) => Frac::scalar(Scalar::constant(*k)),
            Coef::Bracket(l) => Frac::scalar(balanced_int(l.eval(lam))),
            Coef::Mono { h0, h1, q } => Frac::scalar(mono(*h0, *h1, 2 * q.eval(lam))),
            Coef::InvQ => Frac { num: Scalar::one(), k: 1 },
            Coef::Sum(xs) => xs.iter().fold(Frac::zero(), |a, x| a.add(&x.eval(lam))),
            Coef::Prod(xs) => xs.iter().fold(Frac::scalar(Scalar::one()), |a, x| a.mul(&x.eval(lam))),
        }
    }
}

/// `num / (q - q^{-1})^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac {
    pub num: Scalar,
    pub k: u32,
}

fn q_minus_inv() -> Scalar {
    &q_pow(1) - &q_pow(-1)
}

impl Frac {
    pub fn zero() -> Self {
        Frac { num: Scalar::zero(), k: 0 }
    }

    pub fn scalar(num: Scalar) -> Self {
        Frac { num, k: 0 }
    }

    /// The numerator over `(q - q^{-1})^k`, for `k >= self.k`.
    pub fn lift(&self, k: u32) -> Scalar {
        &self.num * &q_minus_inv().pow(k - self.k)
    }

    pub fn add(&self, o: &Frac) -> Frac {
        let k = self.k.max(o.k);
        Frac { num: &self.lift(k) + &o.lift(k), k }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac { num: &self.num * &o.num, k: self.k + o.k }
    }
}

/// An element of the stabilization algebra over the fraction field, with a
/// common denominator `(q - q^{-1})^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FElement {
    pub num: Combo<3>,
    pub k: u32,
}

impl FElement {
    pub fn zero() -> Self {
        FElement { num: Combo::new(), k: 0 }
    }

    pub fn basis(a: CodedMatrix) -> Self {
        FElement { num: Combo::single(a, Scalar::one()), k: 0 }
    }

    pub fn lift(&self, k: u32) -> Combo<3> {
        self.num.scale(&q_minus_inv().pow(k - self.k))
    }

    pub fn add(&self, o: &FElement) -> FElement {
        let k = self.k.max(o.k);
        FElement { num: self.lift(k).add(&o.lift(k)), k }
    }

    pub fn scale(&self, c: &Frac) -> FElement {
        FElement { num: self.num.scale(&c.num), k: self.k + c.k }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// The four presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    /// The `ȷȷ` case, also written `c`.
    JJ,
    JI,
    IJ,
    II,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::JJ, Kind::JI, Kind::IJ, Kind::II];

    pub fn variant(&self) -> Variant {
        match self {
            Kind::JJ => Variant::JJ,
            Kind::JI => Variant::JI,
            Kind::IJ => Variant::IJ,
            Kind::II => Variant::II,
        }
    }

    /// Indices `i` of the generators `e_i`, `f_i`.
    pub fn ef_range(&self, r: usize) -> Vec<usize> {
        match self {
            Kind::JJ => (0..=r).collect(),
            Kind::JI => (0..r).collect(),
            Kind::IJ => (1..=r).collect(),
            Kind::II => (1..r).collect(),
        }
    }

    pub fn generators(&self, r: usize) -> Vec<Gen> {
        let mut out: Vec<Gen> = self.ef_range(r).into_iter().flat_map(|i| [Gen::E(i), Gen::F(i)]).collect();
        if matches!(self, Kind::IJ | Kind::II) {
            out.push(Gen::T0);
        }
        if matches!(self, Kind::JI | Kind::II) {
            out.push(Gen::Tr);
        }
        out
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jj" | "c" => Ok(Kind::JJ),
            "ji" => Ok(Kind::JI),
            "ij" => Ok(Kind::IJ),
            "ii" => Ok(Kind::II),
            _ => Err(Error::Domain(format!("unknown presentation {s:?}"))),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::JJ => "jj",
            Kind::JI => "ji",
            Kind::IJ => "ij",
            Kind::II => "ii",
        })
    }
}

/// `sum_k c_k · w_k · 1_λ = 0`, words read left to right, acting right to left.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Coef, Vec<Gen>)>,
}

impl Relation {
    fn new(name: String, terms: Vec<(Coef, Vec<Gen>)>) -> Self {
        Relation { name, terms }
    }
}

fn w(g: &[Gen]) -> Vec<Gen> {
    g.to_vec()
}

/// `(⟦2⟧ x y x - x^2 y - y x^2) 1_λ = ⟦2⟧ c(λ) x 1_λ`.
fn special_serre(name: String, x: Gen, y: Gen, c: Coef) -> Relation {
    Relation::new(
        name,
        vec![
            (Coef::bracket(2), w(&[x, y, x])),
            (Coef::Int(-1), w(&[x, x, y])),
            (Coef::Int(-1), w(&[y, x, x])),
            (Coef::bracket(2).times(c).neg(), w(&[x])),
        ],
    )
}

fn pair(h0: i64, h1: i64, q: Lin) -> Coef {
    let neg = Lin { c: -q.c, terms: q.terms.iter().map(|&(i, k)| (i, -k)).collect() };
    Coef::Sum(vec![Coef::Mono { h0, h1, q }, Coef::Mono { h0: -h0, h1: -h1, q: neg }])
}

fn qserre(name: String, x: Gen, y: Gen) -> Relation {
    Relation::new(
        name,
        vec![(Coef::one(), w(&[x, x, y])), (Coef::one(), w(&[y, x, x])), (Coef::bracket(2).neg(), w(&[x, y, x]))],
    )
}

/// How to read the ıSerre relation of `t` with a neighbour `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// `(t^2 x + x t^2) 1_λ = (⟦2⟧ t x t + x) 1_λ`, which holds under `ℵ`.
    Corrected,
    /// `(t^2 x + x t^2) 1_λ = ⟦2⟧ (t x t + x) 1_λ`, as displayed in the presentations.
    Printed,
}

fn tserre(name: String, t: Gen, x: Gen, reading: Reading) -> Relation {
    let c = match reading {
        Reading::Corrected => Coef::Int(-1),
        Reading::Printed => Coef::bracket(2).neg(),
    };
    Relation::new(
        name,
        vec![(Coef::one(), w(&[t, t, x])), (Coef::one(), w(&[x, t, t])), (Coef::bracket(2).neg(), w(&[t, x, t])), (c, w(&[x]))],
    )
}

fn commute(name: String, x: Gen, y: Gen) -> Relation {
    Relation::new(name, vec![(Coef::one(), w(&[x, y])), (Coef::Int(-1), w(&[y, x]))])
}

/// The defining relations of the presentation (beyond idempotent and weight
/// bookkeeping, checked separately).
pub fn relations(kind: Kind, r: usize) -> Vec<Relation> {
    relations_with(kind, r, Reading::Corrected)
}

pub fn relations_with(kind: Kind, r: usize, reading: Reading) -> Vec<Relation> {
    use Gen::*;
    let idx = kind.ef_range(r);
    let mut out = Vec::new();
    for &i in &idx {
        for &j in &idx {
            if i != j {
                out.push(commute(format!("e{i} f{j} = f{j} e{i}"), E(i), F(j)));
            }
        }
    }
    // e_i f_i - f_i e_i for the non-special nodes
    let special = |i: usize| match kind {
        Kind::JJ => i == 0 || i == r,
        Kind::JI => i == 0,
        Kind::IJ => i == r,
        Kind::II => false,
    };
    for &i in &idx {
        if !special(i) {
            out.push(Relation::new(
                format!("(e{i} f{i} - f{i} e{i}) = [[λ{i} - λ{}]]", i + 1),
                vec![(Coef::one(), w(&[E(i), F(i)])), (Coef::Int(-1), w(&[F(i), E(i)])), (Coef::Bracket(Lin::diff(i, i + 1, 0)).neg(), vec![])],
            ));
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i.abs_diff(j) == 1 {
                out.push(qserre(format!("Serre e{i} e{j}"), E(i), E(j)));
                out.push(qserre(format!("Serre f{i} f{j}"), F(i), F(j)));
            } else if i < j {
                out.push(commute(format!("e{i} e{j} = e{j} e{i}"), E(i), E(j)));
                out.push(commute(format!("f{i} f{j} = f{j} f{i}"), F(i), F(j)));
            }
        }
    }
    let mut ts = Vec::new();
    if matches!(kind, Kind::IJ | Kind::II) {
        ts.push((T0, 1usize));
    }
    if matches!(kind, Kind::JI | Kind::II) && r >= 1 {
        ts.push((Tr, r - 1));
    }
    for &(t, node) in &ts {
        for &i in &idx {
            if i == node {
                out.push(qserre(format!("Serre e{i} {t}"), E(i), t));
                out.push(qserre(format!("Serre f{i} {t}"), F(i), t));
                out.push(tserre(format!("{t} Serre e{i}"), t, E(i), reading));
                out.push(tserre(format!("{t} Serre f{i}"), t, F(i), reading));
            } else {
                out.push(commute(format!("e{i} {t} = {t} e{i}"), E(i), t));
                out.push(commute(format!("f{i} {t} = {t} f{i}"), F(i), t));
            }
        }
    }
    // for r = 1 the two nodes are adjacent and t0, tr do not commute
    if kind == Kind::II && r >= 2 {
        out.push(commute("t0 tr = tr t0".into(), T0, Tr));
    }
    if matches!(kind, Kind::JJ | Kind::IJ) {
        let (a, b) = (r + 1, r);
        out.push(special_serre(format!("special Serre e{r}"), E(r), F(r), pair(-1, 1, Lin::diff(a, b, -3))));
        out.push(special_serre(format!("special Serre f{r}"), F(r), E(r), pair(-1, 1, Lin::diff(a, b, 0))));
    }
    if matches!(kind, Kind::JJ | Kind::JI) {
        out.push(special_serre("special Serre e0".into(), E(0), F(0), pair(1, 1, Lin::diff(0, 1, 0))));
        out.push(special_serre("special Serre f0".into(), F(0), E(0), pair(1, 1, Lin::diff(0, 1, -3))));
    }
    out
}

/// Evaluation of words under `ℵ` in one stabilization algebra.
pub struct Aleph {
    pub kind: Kind,
    pub r: usize,
    stab: Stab,
}

/// Diagonal entries `a_00, ..., a_{r+1,r+1}` of `[λ]`.
pub fn weight_entries(a: &CodedMatrix) -> Vec<i64> {
    (0..=a.r() as i64 + 1).map(|i| a.get(i, i)).collect()
}

impl Aleph {
    pub fn new(kind: Kind, r: usize) -> Self {
        Aleph { kind, r, stab: Stab::new(kind.variant()) }
    }

    fn e_theta(&self, i: i64, j: i64) -> CodedMatrix {
        CodedMatrix::e_theta(self.r, i, j)
    }

    /// `g 1_λ` as an element (zero when the matrix leaves `Ξ̃_n`).
    pub fn image(&self, g: Gen, lam: &CodedMatrix) -> Result<FElement> {
        let r = self.r as i64;
        let (minus, plus) = match g {
            Gen::E(i) => ((i as i64 + 1, i as i64 + 1), (i as i64, i as i64 + 1)),
            Gen::F(i) => ((i as i64, i as i64), (i as i64 + 1, i as i64)),
            Gen::T0 => ((1, 1), (1, -1)),
            Gen::Tr => ((r, r), (r, r + 2)),
        };
        let m = lam.sub(&self.e_theta(minus.0, minus.1)).add(&self.e_theta(plus.0, plus.1));
        let mut x = if m.is_xitilde() { FElement::basis(m) } else { FElement::zero() };
        let le = weight_entries(lam);
        let corr = match g {
            Gen::T0 => Some((1, 1, le[1])),
            Gen::Tr => Some((-1, 1, le[self.r])),
            _ => None,
        };
        if let Some((h0, h1, e)) = corr {
            // q^{λ_i} (q0^{h0/2} q1^{h1/2} - q0^{-h0/2} q1^{-h1/2}) / (q - q^{-1})
            let c = &(&mono(h0, h1, 0) - &mono(-h0, -h1, 0)) * &q_pow(e);
            x = x.add(&FElement { num: Combo::single(lam.clone(), c), k: 1 });
        }
        Ok(x)
    }

    /// `g · x` for `x` homogeneous in its row weight.
    pub fn apply(&self, g: Gen, x: &FElement) -> Result<FElement> {
        let mut by_row: BTreeMap<Vec<i64>, Combo<3>> = BTreeMap::new();
        for (a, c) in &x.num.terms {
            by_row.entry(a.row_c()).or_default().add_term(a.clone(), c);
        }
        let mut out = FElement::zero();
        for (mu, y) in by_row {
            let lam = CodedMatrix::diag_of_weight(&mu);
            let gi = self.image(g, &lam)?;
            let p = self.stab.mul(&gi.num, &y)?;
            out = out.add(&FElement { num: p, k: gi.k + x.k });
        }
        Ok(out)
    }

    /// `w 1_λ`.
    pub fn word(&self, word: &[Gen], lam: &CodedMatrix) -> Result<FElement> {
        let mut x = FElement::basis(lam.clone());
        for &g in word.iter().rev() {
            x = self.apply(g, &x)?;
        }
        Ok(x)
    }

    /// The relation evaluated at `1_λ`; zero when it holds.
    pub fn evaluate(&self, rel: &Relation, lam: &CodedMatrix) -> Result<FElement> {
        Ok(self.evaluate_terms(rel, lam)?.0)
    }

    // also reports whether any word is nonzero at this weight
    fn evaluate_terms(&self, rel: &Relation, lam: &CodedMatrix) -> Result<(FElement, bool)> {
        let le = weight_entries(lam);
        let mut out = FElement::zero();
        let mut nonzero = false;
        for (c, word) in &rel.terms {
            let x = self.word(word, lam)?;
            nonzero |= !x.is_zero();
            out = out.add(&x.scale(&c.eval(&le)));
        }
        Ok((out, nonzero))
    }
}

/// `λ ± α_i` for the weight `[λ]`.
pub fn shift_weight(lam: &CodedMatrix, i: usize, sign: i64) -> CodedMatrix {
    let r = lam.r();
    let up = CodedMatrix::e_theta(r, i as i64, i as i64);
    let down = CodedMatrix::e_theta(r, i as i64 + 1, i as i64 + 1);
    if sign > 0 {
        lam.add(&up).sub(&down)
    } else {
        lam.sub(&up).add(&down)
    }
}

/// Outcome of one relation over a window of weights.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub name: String,
    pub tested: usize,
    /// Weights at which some word of the relation is nonzero.
    pub nontrivial: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub kind: Kind,
    pub r: usize,
    pub window: (i64, i64),
    pub weights: usize,
    pub relations: Vec<RelationReport>,
    pub warnings: Vec<String>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(|x| x.failures == 0)
    }

    pub fn tested(&self) -> usize {
        self.relations.iter().map(|x| x.tested).sum()
    }
}

/// Weights `λ` of the presentation with diagonal entries in `window`.
pub fn weights(kind: Kind, r: usize, window: (i64, i64)) -> Vec<CodedMatrix> {
    diagonals(kind.variant(), r, window)
}

fn note(rep: &mut RelationReport, lam: &CodedMatrix, ok: bool) {
    rep.tested += 1;
    if !ok {
        rep.failures += 1;
        if rep.first_counterexample.is_none() {
            rep.first_counterexample = Some(format!("λ = {:?}", weight_entries(lam)));
        }
    }
}

fn report(name: impl Into<String>) -> RelationReport {
    RelationReport { name: name.into(), tested: 0, nontrivial: 0, failures: 0, first_counterexample: None }
}

/// Checks every relation of the presentation on all weights in the window.
pub fn check_all(kind: Kind, r: usize, window: (i64, i64)) -> Result<Summary> {
    check_all_with(kind, r, window, Reading::Corrected)
}

pub fn check_all_with(kind: Kind, r: usize, window: (i64, i64), reading: Reading) -> Result<Summary> {
    if r == 0 {
        return Err(Error::Domain("rank r must be at least 1".into()));
    }
    let al = Aleph::new(kind, r);
    let lams = weights(kind, r, window);
    let mut warnings = Vec::new();
    if lams.is_empty() {
        warnings.push("no λ tested".to_string());
    }
    let mut reports = Vec::new();
    let gens = kind.generators(r);

    // idempotents: [λ][λ] = [λ] and [λ][λ'] = 0 for a neighbouring λ'
    let mut idem = report("1_λ 1_μ = δ_{λμ} 1_λ");
    for lam in &lams {
        let one = Combo::single(lam.clone(), Scalar::one());
        let sq = al.stab.mul(&one, &one)?;
        let mut ok = sq == one;
        for i in 0..=r {
            let other = shift_weight(lam, i, 1);
            if other.is_xitilde() {
                ok &= al.stab.mul(&one, &Combo::single(other, Scalar::one()))?.is_zero();
            }
        }
        note(&mut idem, lam, ok);
    }
    reports.push(idem);

    // weight bookkeeping: g 1_λ = 1_{λ'} g with λ' read off from the image
    let mut wt = report("g 1_λ = 1_{λ'} g");
    for lam in &lams {
        let mut ok = true;
        for &g in &gens {
            let x = al.image(g, lam)?;
            let expected = match g {
                Gen::E(i) => Some(shift_weight(lam, i, 1)),
                Gen::F(i) => Some(shift_weight(lam, i, -1)),
                _ => Some(lam.clone()),
            };
            if let Some(mu) = expected {
                let left = FElement { num: al.stab.mul(&Combo::single(mu.clone(), Scalar::one()), &x.num)?, k: x.k };
                let right = FElement { num: al.stab.mul(&x.num, &Combo::single(lam.clone(), Scalar::one()))?, k: x.k };
                ok &= left == x && right == x;
                ok &= x.num.terms.keys().all(|a| a.row_c() == mu.col_c() && a.col_c() == lam.col_c());
            }
        }
        note(&mut wt, lam, ok);
    }
    reports.push(wt);

    for rel in relations_with(kind, r, reading) {
        let mut rep = report(rel.name.clone());
        for lam in &lams {
            let (x, nonzero) = al.evaluate_terms(&rel, lam)?;
            if nonzero {
                rep.nontrivial += 1;
            }
            note(&mut rep, lam, x.is_zero());
        }
        reports.push(rep);
    }
    Ok(Summary { kind, r, window, weights: lams.len(), relations: reports, warnings })
}
