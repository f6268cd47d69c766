//! Exact Laurent polynomials over the integers.
//!
//! [`Laurent<N>`] is a sparse polynomial in `N` commuting variables with
//! integer exponents. The three-parameter scalars live in [`Scalar`], whose
//! exponent vector is `[2e0, 2e1, 2e]` for the monomial `q0^e0 q1^e1 q^e`
//! (half-integer exponents are stored doubled). [`PiScalar`] adds a fourth
//! slot for the doubled exponent of `pi`, and [`SpecScalar`] is a polynomial
//! in the single variable `v` (exponents not doubled).

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse Laurent polynomial with `N` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Laurent<const N: usize> {
    // sorted by exponent, no zero coefficients
    terms: Vec<([i32; N], i64)>,
}

/// Element of `Z[q^{±1/2}, q0^{±1/2}, q1^{±1/2}]`.
pub type Scalar = Laurent<3>;
/// Element of `Z[q^{±1/2}, q0^{±1/2}, q1^{±1/2}, pi^{±1/2}]`.
pub type PiScalar = Laurent<4>;
/// Element of `Z[v, v^{-1}]`.
pub type SpecScalar = Laurent<1>;

fn add_coeff(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

fn mul_coeff(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

fn add_exp<const N: usize>(a: &[i32; N], b: &[i32; N]) -> [i32; N] {
    let mut out = [0i32; N];
    for k in 0..N {
        out[k] = a[k] + b[k];
    }
    out
}

impl<const N: usize> Laurent<N> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial([0; N], 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exp: [i32; N], c: i64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Laurent { terms: vec![(exp, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = ([i32; N], i64)>>(it: I) -> Self {
        let mut terms: Vec<_> = it.into_iter().collect();
        Self::normalize(&mut terms);
        Laurent { terms }
    }

    fn normalize(terms: &mut Vec<([i32; N], i64)>) {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<([i32; N], i64)> = Vec::with_capacity(terms.len());
        for &(e, c) in terms.iter() {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = add_coeff(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        *terms = out;
    }

    pub fn terms(&self) -> &[([i32; N], i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1 == 1 && self.terms[0].0 == [0; N]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Returns `Some((exp, c))` when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<([i32; N], i64)> {
        if self.terms.len() == 1 {
            Some(self.terms[0])
        } else {
            None
        }
    }

    pub fn coeff(&self, exp: &[i32; N]) -> i64 {
        match self.terms.binary_search_by(|t| t.0.cmp(exp)) {
            Ok(k) => self.terms[k].1,
            Err(_) => 0,
        }
    }

    /// Negates every exponent.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = *e;
                for x in f.iter_mut() {
                    *x = -*x;
                }
                (f, *c)
            })
            .collect();
        terms.reverse();
        Laurent { terms }
    }

    /// Multiplies by the monomial `x^exp`.
    pub fn shift(&self, exp: [i32; N]) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (add_exp(e, &exp), *c)).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, mul_coeff(*c, k))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Maps every exponent vector through `f`.
    pub fn map_exponents<const M: usize, F: Fn(&[i32; N]) -> [i32; M]>(&self, f: F) -> Laurent<M> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (f(e), *c)))
    }

    fn bounds(&self) -> ([i32; N], [i32; N]) {
        let mut lo = [i32::MAX; N];
        let mut hi = [i32::MIN; N];
        for (e, _) in &self.terms {
            for k in 0..N {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        (lo, hi)
    }

    /// Exact division; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (plo, phi) = self.bounds();
        let (dlo, dhi) = d.bounds();
        let mut qlo = [0; N];
        let mut qhi = [0; N];
        for k in 0..N {
            qlo[k] = plo[k] - dlo[k];
            qhi[k] = phi[k] - dhi[k];
            if qlo[k] > qhi[k] {
                return Err(Error::NotDivisible);
            }
        }
        let (dlead, dc) = *d.terms.last().unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some(&(e, c)) = rem.terms.last() {
            if c % dc != 0 {
                return Err(Error::NotDivisible);
            }
            let mut m = [0; N];
            for k in 0..N {
                m[k] = e[k] - dlead[k];
                if m[k] < qlo[k] || m[k] > qhi[k] {
                    return Err(Error::NotDivisible);
                }
            }
            let t = Self::monomial(m, c / dc);
            rem = &rem - &(&t * d);
            quot.push((m, c / dc));
        }
        Ok(Self::from_terms(quot))
    }
}

impl<const N: usize> Add for &Laurent<N> {
    type Output = Laurent<N>;
    fn add(self, o: &Laurent<N>) -> Laurent<N> {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = add_coeff(a[i].1, b[j].1);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }
}

impl<const N: usize> Neg for &Laurent<N> {
    type Output = Laurent<N>;
    fn neg(self) -> Laurent<N> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -*c)).collect(),
        }
    }
}

impl<const N: usize> Neg for Laurent<N> {
    type Output = Laurent<N>;
    fn neg(self) -> Laurent<N> {
        -&self
    }
}

impl<const N: usize> Sub for &Laurent<N> {
    type Output = Laurent<N>;
    fn sub(self, o: &Laurent<N>) -> Laurent<N> {
        self + &(-o)
    }
}

impl<const N: usize> Mul for &Laurent<N> {
    type Output = Laurent<N>;
    fn mul(self, o: &Laurent<N>) -> Laurent<N> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms[0];
            return Laurent {
                terms: o.terms.iter().map(|(f, d)| (add_exp(&e, f), mul_coeff(c, *d))).collect(),
            };
        }
        if o.terms.len() == 1 {
            return o * self;
        }
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                terms.push((add_exp(e, f), mul_coeff(*c, *d)));
            }
        }
        Laurent::normalize(&mut terms);
        Laurent { terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<const N: usize> $tr for Laurent<N> {
            type Output = Laurent<N>;
            fn $m(self, o: Laurent<N>) -> Laurent<N> {
                (&self).$m(&o)
            }
        }
        impl<const N: usize> $tr<&Laurent<N>> for Laurent<N> {
            type Output = Laurent<N>;
            fn $m(self, o: &Laurent<N>) -> Laurent<N> {
                (&self).$m(o)
            }
        }
        impl<const N: usize> $tr<Laurent<N>> for &Laurent<N> {
            type Output = Laurent<N>;
            fn $m(self, o: Laurent<N>) -> Laurent<N> {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<const N: usize> AddAssign<&Laurent<N>> for Laurent<N> {
    fn add_assign(&mut self, o: &Laurent<N>) {
        *self = &*self + o;
    }
}

impl<const N: usize> AddAssign for Laurent<N> {
    fn add_assign(&mut self, o: Laurent<N>) {
        *self = &*self + &o;
    }
}

impl<const N: usize> SubAssign<&Laurent<N>> for Laurent<N> {
    fn sub_assign(&mut self, o: &Laurent<N>) {
        *self = &*self - o;
    }
}

impl<const N: usize> std::iter::Sum for Laurent<N> {
    fn sum<I: Iterator<Item = Self>>(it: I) -> Self {
        let mut terms: Vec<_> = it.flat_map(|x| x.terms).collect();
        Laurent::normalize(&mut terms);
        Laurent { terms }
    }
}

impl<const N: usize> std::iter::Product for Laurent<N> {
    fn product<I: Iterator<Item = Self>>(it: I) -> Self {
        it.fold(Laurent::one(), |a, b| &a * &b)
    }
}

impl<const N: usize> Serialize for Laurent<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let mut row: Vec<i64> = e.iter().map(|&x| x as i64).collect();
            row.push(*c);
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<'de, const N: usize> Deserialize<'de> for Laurent<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V<const N: usize>;
        impl<'de, const N: usize> Visitor<'de> for V<N> {
            type Value = Laurent<N>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of integer rows of length {}", N + 1)
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let mut terms = Vec::new();
                while let Some(row) = seq.next_element::<Vec<i64>>()? {
                    if row.len() != N + 1 {
                        return Err(de::Error::invalid_length(row.len(), &self));
                    }
                    let mut e = [0i32; N];
                    for k in 0..N {
                        e[k] = i32::try_from(row[k]).map_err(de::Error::custom)?;
                    }
                    terms.push((e, row[N]));
                }
                Ok(Laurent::from_terms(terms))
            }
        }
        d.deserialize_seq(V::<N>)
    }
}

fn fmt_exp(f: &mut fmt::Formatter, name: &str, doubled: i32) -> fmt::Result {
    if doubled == 0 {
        return Ok(());
    }
    if doubled == 2 {
        write!(f, "{name}")
    } else if doubled % 2 == 0 {
        write!(f, "{name}^{}", doubled / 2)
    } else {
        write!(f, "{name}^({}/2)", doubled)
    }
}

fn fmt_poly<const N: usize>(
    p: &Laurent<N>,
    f: &mut fmt::Formatter,
    names: &[&str],
    doubled: bool,
) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in p.terms.iter().rev().enumerate() {
        let neg = *c < 0;
        if k > 0 {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        } else if neg {
            write!(f, "-")?;
        }
        let a = c.abs();
        let unit = e.iter().all(|&x| x == 0);
        if a != 1 || unit {
            write!(f, "{a}")?;
        }
        let mut first = a == 1;
        for (i, &x) in e.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if doubled {
                fmt_exp(f, names[i], x)?;
            } else if x == 1 {
                write!(f, "{}", names[i])?;
            } else {
                write!(f, "{}^{}", names[i], x)?;
            }
        }
    }
    Ok(())
}

impl fmt::Display for Laurent<3> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt_poly(self, f, &["q0", "q1", "q"], true)
    }
}

impl fmt::Display for Laurent<4> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt_poly(self, f, &["q0", "q1", "q", "pi"], true)
    }
}

impl fmt::Display for Laurent<1> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt_poly(self, f, &["v"], false)
    }
}

impl<const N: usize> fmt::Debug for Laurent<N> {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "Laurent{:?}", self.terms)
    }
}

/// `q0^{h0/2} q1^{h1/2} q^{h/2}` with doubled exponents.
pub fn mono(h0: i64, h1: i64, h: i64) -> Scalar {
    Scalar::monomial([h0 as i32, h1 as i32, h as i32], 1)
}

/// `q^k` for an integer `k`.
pub fn q_pow(k: i64) -> Scalar {
    mono(0, 0, 2 * k)
}

pub fn q() -> Scalar {
    q_pow(1)
}

pub fn q0() -> Scalar {
    mono(2, 0, 0)
}

pub fn q1() -> Scalar {
    mono(0, 2, 0)
}

/// `q^{-2} - 1`.
pub fn q2_minus_one() -> Scalar {
    &q_pow(-1).pow(2) - &Scalar::one()
}

thread_local! {
    static BINOM_CACHE: RefCell<HashMap<(i64, i64), Scalar>> = RefCell::new(HashMap::new());
    static CFACT_CACHE: RefCell<HashMap<(u8, i64), Scalar>> = RefCell::new(HashMap::new());
}

/// The quantum integer `[m] = (q^{-2m} - 1)/(q^{-2} - 1)`.
pub fn qint(m: i64) -> Scalar {
    if m >= 0 {
        Scalar::from_terms((0..m).map(|i| ([0, 0, -4 * i as i32], 1)))
    } else {
        // [-n] = -q^{2n} [n]
        Scalar::from_terms((0..-m).map(|i| ([0, 0, (-4 * m - 4 * i) as i32], -1)))
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn qfact(n: i64) -> Result<Scalar> {
    if n < 0 {
        return Err(Error::Domain(format!("quantum factorial of negative integer {n}")));
    }
    Ok(qbinom_cached(n, 0, true))
}

/// Generalized quantum binomial `[m choose k] = [m][m-1]...[m-k+1]/[k]!`, any integer `m`.
pub fn qbinom(m: i64, k: i64) -> Result<Scalar> {
    if k < 0 {
        return Err(Error::Domain(format!("quantum binomial with negative lower index {k}")));
    }
    Ok(qbinom_cached(m, k, false))
}

// `fact` selects [m]! (stored under key (m, -1)) instead of a binomial.
fn qbinom_cached(m: i64, k: i64, fact: bool) -> Scalar {
    let key = if fact { (m, -1) } else { (m, k) };
    if let Some(v) = BINOM_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return v;
    }
    let v = if fact {
        if m == 0 {
            Scalar::one()
        } else {
            &qbinom_cached(m - 1, 0, true) * &qint(m)
        }
    } else if k == 0 {
        Scalar::one()
    } else if m >= 0 && m < k {
        Scalar::zero()
    } else if m < 0 {
        // [m choose k] = (-1)^k q^{-2(km - k(k-1)/2)} [k-m-1 choose k]
        let e = k * m - k * (k - 1) / 2;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        qbinom_cached(k - m - 1, k, false).shift([0, 0, (-4 * e) as i32]).scale(sign)
    } else if k == m {
        Scalar::one()
    } else {
        // Pascal: [m,k] = [m-1,k-1] + q^{-2k}[m-1,k]
        &qbinom_cached(m - 1, k - 1, false) + &qbinom_cached(m - 1, k, false).shift([0, 0, (-4 * k) as i32])
    };
    BINOM_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

/// Which special generator a c-integer belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CKind {
    C0,
    C1,
}

/// The linear factor `1 + q0^{-1} q1^{-1} q^{-2(k-1)}` (`C0`) or `1 + q0 q1^{-1} q^{-2(k-1)}` (`C1`).
pub fn c_factor(kind: CKind, k: i64) -> Scalar {
    let h0 = match kind {
        CKind::C0 => -2,
        CKind::C1 => 2,
    };
    &Scalar::one() + &mono(h0, -2, -4 * (k - 1))
}

/// `[2k]_c = [k] (1 + ...)`.
pub fn c_int(kind: CKind, k: i64) -> Scalar {
    &qint(k) * &c_factor(kind, k)
}

/// `[m]_c^! = [2]_c [4]_c ... [2m]_c`.
pub fn cfactorial(m: i64, kind: CKind) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::Domain(format!("c-factorial of negative integer {m}")));
    }
    let tag = match kind {
        CKind::C0 => 0u8,
        CKind::C1 => 1u8,
    };
    if let Some(v) = CFACT_CACHE.with(|c| c.borrow().get(&(tag, m)).cloned()) {
        return Ok(v);
    }
    let v = if m == 0 { Scalar::one() } else { &cfactorial(m - 1, kind)? * &c_int(kind, m) };
    CFACT_CACHE.with(|c| c.borrow_mut().insert((tag, m), v.clone()));
    Ok(v)
}

/// The balanced integer `q^{r-1} + q^{r-3} + ... + q^{1-r}`.
pub fn balanced_qint(r: i64) -> Scalar {
    Scalar::from_terms((0..r.max(0)).map(|i| ([0, 0, (2 * (r - 1) - 4 * i) as i32], 1)))
}

/// Generalized balanced integer `(q^m - q^{-m})/(q - q^{-1})` for any integer `m`.
pub fn balanced_int(m: i64) -> Scalar {
    if m >= 0 {
        balanced_qint(m)
    } else {
        -balanced_qint(-m)
    }
}

/// A weight function on the three generator classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightFunction {
    pub l0: i64,
    pub l1: i64,
    pub ld: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl WeightFunction {
    pub fn new(l0: i64, l1: i64, ld: i64) -> Result<Self> {
        if l0 < 0 || l1 < 0 || ld < 0 {
            return Err(Error::Domain("weight function values must be natural numbers".into()));
        }
        let w = WeightFunction { l0, l1, ld };
        if w.c() == 0 {
            return Err(Error::Domain("weight function with gcd 0".into()));
        }
        Ok(w)
    }

    /// `c = gcd(|L0 - Ld|, L0 + Ld, L1)`.
    pub fn c(&self) -> i64 {
        gcd(gcd((self.l0 - self.ld).abs(), self.l0 + self.ld), self.l1)
    }
}

/// Substitutes `q = v^{-L1}`, `q0 = v^{-L0+Ld}`, `q1 = v^{-L0-Ld}`.
pub fn specialize(x: &Scalar, w: &WeightFunction) -> Result<SpecScalar> {
    let c = w.c();
    let mut terms = Vec::with_capacity(x.len());
    for (e, k) in x.terms() {
        let num = e[0] as i64 * (w.ld - w.l0) + e[1] as i64 * (-w.l0 - w.ld) + e[2] as i64 * (-w.l1);
        if num % 2 != 0 {
            return Err(Error::Specialization(format!("{x} has a non-integral v-exponent under {w:?}")));
        }
        let ex = num / 2;
        if ex % c != 0 {
            return Err(Error::Internal(format!("v-exponent {ex} is not a multiple of c = {c}")));
        }
        terms.push(([ex as i32], *k));
    }
    Ok(SpecScalar::from_terms(terms))
}

impl Laurent<1> {
    /// `v^k`.
    pub fn v_pow(k: i64) -> Self {
        Self::monomial([k as i32], 1)
    }

    /// Part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        Self::from_terms(self.terms.iter().copied().filter(|(e, _)| e[0] > 0))
    }

    /// True when every exponent is positive and a multiple of `c`.
    pub fn in_positive_lattice(&self, c: i64) -> bool {
        self.terms.iter().all(|(e, _)| e[0] > 0 && e[0] as i64 % c == 0)
    }
}

impl Laurent<4> {
    /// Embeds a three-parameter scalar with no pi-dependence.
    pub fn from_scalar(x: &Scalar) -> Self {
        x.map_exponents(|e| [e[0], e[1], e[2], 0])
    }

    /// Substitutes `pi = q^{-p}`.
    pub fn eval_pi(&self, p: i64) -> Scalar {
        self.map_exponents(|e| [e[0], e[1], e[2] - (p as i32) * e[3]])
    }
}

/// Quotient of two scalars, used only for relation checking.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: Scalar,
    pub den: Scalar,
}

impl Frac {
    pub fn new(num: Scalar, den: Scalar) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let mut f = Frac { num, den };
        f.reduce();
        Ok(f)
    }

    pub fn from_scalar(x: Scalar) -> Self {
        Frac { num: x, den: Scalar::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    // Strips common monomial factors and integer content, and tries an exact division.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Scalar::one();
            return;
        }
        if let Ok(qt) = self.num.div_exact(&self.den) {
            self.num = qt;
            self.den = Scalar::one();
            return;
        }
        let g = self
            .num
            .terms()
            .iter()
            .chain(self.den.terms())
            .fold(0, |g, t| gcd(g, t.1));
        let (lo, _) = self.den.bounds();
        let mut neg = [0i32; 3];
        for k in 0..3 {
            neg[k] = -lo[k];
        }
        let sign = if self.den.terms().last().unwrap().1 < 0 { -1 } else { 1 };
        let fix = |p: &Scalar| -> Scalar {
            Scalar::from_terms(p.terms().iter().map(|(e, c)| (add_exp(e, &neg), sign * c / g)))
        };
        self.num = fix(&self.num);
        self.den = fix(&self.den);
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Add for &Frac {
    type Output = Frac;
    fn add(self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        Frac::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).unwrap()
    }
}

impl Mul for &Frac {
    type Output = Frac;
    fn mul(self, o: &Frac) -> Frac {
        Frac::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_examples() {
        assert_eq!(qint(2), &Scalar::one() + &q_pow(-2));
        assert!(qint(0).is_zero());
        assert_eq!(qint(-1), -q_pow(2));
    }

    #[test]
    fn qint_matches_rational_definition() {
        // (q^{-2m} - 1) = [m] (q^{-2} - 1)
        for m in -6..=6 {
            let lhs = &q_pow(-2 * m) - &Scalar::one();
            assert_eq!(lhs, &qint(m) * &q2_minus_one(), "m = {m}");
        }
    }

    #[test]
    fn binomial_matches_product_definition() {
        for m in -5..=7 {
            for k in 0..=5 {
                let num: Scalar = (0..k).map(|i| qint(m - i)).product();
                let den = qfact(k).unwrap();
                assert_eq!(num.div_exact(&den).unwrap(), qbinom(m, k).unwrap(), "m={m} k={k}");
            }
        }
        assert!(qbinom(3, -1).is_err());
        assert!(qfact(-1).is_err());
    }

    #[test]
    fn cfactorial_examples() {
        let one = Scalar::one();
        assert_eq!(cfactorial(1, CKind::C0).unwrap(), &one + &mono(-2, -2, 0));
        assert!(cfactorial(0, CKind::C1).unwrap().is_one());
        let expect = &(&(&one + &mono(2, -2, 0)) * &(&one + &q_pow(-2))) * &(&one + &mono(2, -2, -4));
        assert_eq!(cfactorial(2, CKind::C1).unwrap(), expect);
    }

    #[test]
    fn bar_examples() {
        assert_eq!(mono(1, 0, 2).bar(), mono(-1, 0, -2));
        assert_eq!(qint(2).bar(), &Scalar::one() + &q_pow(2));
        assert!(Scalar::one().bar().is_one());
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(balanced_qint(2), &q() + &q_pow(-1));
        assert!(balanced_qint(0).is_zero());
        assert_eq!(balanced_qint(3), &(&q_pow(2) + &Scalar::one()) + &q_pow(-2));
    }

    #[test]
    fn specialize_examples() {
        let w = WeightFunction::new(1, 1, 1).unwrap();
        assert_eq!(specialize(&q(), &w).unwrap(), SpecScalar::v_pow(-1));
        assert!(specialize(&q0(), &w).unwrap().is_one());
        let w2 = WeightFunction::new(0, 1, 2).unwrap();
        assert_eq!(specialize(&qint(2), &w2).unwrap(), &SpecScalar::one() + &SpecScalar::v_pow(2));
        let w3 = WeightFunction::new(1, 1, 2).unwrap();
        assert!(specialize(&mono(0, 0, 1), &w3).is_err());
        assert!(WeightFunction::new(0, 0, 0).is_err());
    }

    #[test]
    fn division() {
        let a = &qint(3) * &cfactorial(2, CKind::C0).unwrap();
        assert_eq!(a.div_exact(&qint(3)).unwrap(), cfactorial(2, CKind::C0).unwrap());
        assert!(qint(3).div_exact(&qint(2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = &qint(3) * &mono(1, -1, 3);
        let s = serde_json::to_string(&a).unwrap();
        let b: Scalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&b).unwrap(), s);
    }

    #[test]
    fn frac_arith() {
        let a = Frac::new(&q() - &q_pow(-1), &q() - &q_pow(-1)).unwrap();
        assert!(a.den.is_one() && a.num.is_one());
        let b = Frac::new(Scalar::one(), &q() - &q_pow(-1)).unwrap();
        let c = &b + &b;
        assert_eq!(c, Frac::new(Scalar::constant(2), &q() - &q_pow(-1)).unwrap());
    }
}
