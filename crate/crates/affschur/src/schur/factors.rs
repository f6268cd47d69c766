//! Structure constants kept in factored form.
//!
//! A [`Coefficient`] is `(q^{-2}-1)^n` times a monomial times a product of
//! binomial-type [`Factor`]s and a constant scalar. With `i64` entries it
//! evaluates to a [`Scalar`]; with level-dependent [`Affine`] entries it
//! evaluates to a [`PiFrac`], a `pi`-polynomial over a product of
//! `(q^{-2i} - 1)` factors.

use std::collections::BTreeMap;

use crate::entry::{Affine, Entry};
use crate::error::{Error, Result};
use crate::ring::{c_factor, mono, q2_minus_one, qbinom, CKind, PiScalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor<E> {
    /// `prod_{l=1}^k [x+l]/[l]`, the binomial `[x+k choose k]`.
    Binom { x: E, k: i64 },
    /// `prod_{l=1}^k [2(m+l)]_c/[l]`.
    CBinom { kind: CKind, m: E, k: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient<E> {
    /// Power of `q^{-2} - 1`.
    pub n: i64,
    /// Doubled exponents of `q0`, `q1`, `q`.
    pub exps: [E; 3],
    pub factors: Vec<Factor<E>>,
    /// Level-independent remainder.
    pub scalar: Scalar,
}

impl<E: Entry> Coefficient<E> {
    pub fn unit() -> Self {
        Coefficient { n: 0, exps: [E::default(); 3], factors: Vec::new(), scalar: Scalar::one() }
    }

    pub fn push(&mut self, f: Factor<E>) {
        let k = match &f {
            Factor::Binom { k, .. } | Factor::CBinom { k, .. } => *k,
        };
        if k > 0 {
            self.factors.push(f);
        }
    }
}

impl Coefficient<i64> {
    pub fn eval(&self) -> Scalar {
        let mut out = q2_minus_one().pow(self.n as u32);
        out = &out * &mono(self.exps[0], self.exps[1], self.exps[2]);
        for f in &self.factors {
            out = &out * &eval_factor(f);
        }
        &out * &self.scalar
    }
}

fn eval_factor(f: &Factor<i64>) -> Scalar {
    match *f {
        Factor::Binom { x, k } => qbinom(x + k, k).unwrap(),
        Factor::CBinom { kind, m, k } => {
            let mut out = qbinom(m + k, k).unwrap();
            for l in 1..=k {
                out = &out * &c_factor(kind, m + l);
            }
            out
        }
    }
}

impl Coefficient<Affine> {
    /// Value at a concrete level `P`.
    pub fn at(&self, big_p: i64) -> Coefficient<i64> {
        let ev = |x: &Affine| x.at(big_p);
        Coefficient {
            n: self.n,
            exps: [ev(&self.exps[0]), ev(&self.exps[1]), ev(&self.exps[2])],
            factors: self
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Binom { x, k } => Factor::Binom { x: ev(x), k: *k },
                    Factor::CBinom { kind, m, k } => Factor::CBinom { kind: *kind, m: ev(m), k: *k },
                })
                .collect(),
            scalar: self.scalar.clone(),
        }
    }

    /// Symbolic form with `pi` standing for `q^{-p} = q^{-2P}`.
    pub fn symbolic(&self) -> Result<PiFrac> {
        if self.exps[0].p != 0 || self.exps[1].p != 0 {
            return Err(Error::Internal("q0/q1 exponent depends on the level".into()));
        }
        let e = self.exps[2];
        if e.p % 2 != 0 {
            return Err(Error::Internal(format!("q exponent {e:?} gives a fractional power of pi")));
        }
        // q^{(c + kP)/2} = q^{c/2} pi^{-k/4}
        let m = PiScalar::monomial([self.exps[0].c as i32, self.exps[1].c as i32, e.c as i32, (-e.p / 2) as i32], 1);
        let base = &PiScalar::from_scalar(&(&q2_minus_one().pow(self.n as u32) * &self.scalar)) * &m;
        let mut out = PiFrac::from_pi(base);
        for f in &self.factors {
            out = out.mul(&symbolic_factor(f));
        }
        Ok(out)
    }
}

// q^{-2(c+l)} pi^k - 1
fn shifted_minus_one(c: i64, k: i64) -> PiScalar {
    &PiScalar::monomial([0, 0, (-4 * c) as i32, (2 * k) as i32], 1) - &PiScalar::one()
}

fn symbolic_factor(f: &Factor<Affine>) -> PiFrac {
    let (x, k, kind) = match f {
        Factor::Binom { x, k } => (*x, *k, None),
        Factor::CBinom { kind, m, k } => (*m, *k, Some(*kind)),
    };
    if x.p == 0 {
        let g = match kind {
            None => Factor::Binom { x: x.c, k },
            Some(kind) => Factor::CBinom { kind, m: x.c, k },
        };
        return PiFrac::from_scalar(&eval_factor(&g));
    }
    let mut num = PiScalar::one();
    let mut den = BTreeMap::new();
    for l in 1..=k {
        num = &num * &shifted_minus_one(x.c + l, x.p);
        *den.entry(l).or_insert(0u32) += 1;
        if let Some(kind) = kind {
            let h0 = match kind {
                CKind::C0 => -2,
                CKind::C1 => 2,
            };
            let t = PiScalar::monomial([h0, -2, (-4 * (x.c + l - 1)) as i32, (2 * x.p) as i32], 1);
            num = &num * &(&PiScalar::one() + &t);
        }
    }
    PiFrac { num, den }
}

/// `num / prod_i (q^{-2i} - 1)^{den[i]}`, with `num` a polynomial in `pi` too.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiFrac {
    pub num: PiScalar,
    pub den: BTreeMap<i64, u32>,
}

fn den_scalar(den: &BTreeMap<i64, u32>) -> Scalar {
    let mut out = Scalar::one();
    for (&i, &e) in den {
        let f = &mono(0, 0, -4 * i) - &Scalar::one();
        out = &out * &f.pow(e);
    }
    out
}

fn den_pi(den: &BTreeMap<i64, u32>) -> PiScalar {
    PiScalar::from_scalar(&den_scalar(den))
}

impl PiFrac {
    pub fn zero() -> Self {
        PiFrac::default()
    }

    pub fn from_pi(num: PiScalar) -> Self {
        PiFrac { num, den: BTreeMap::new() }
    }

    pub fn from_scalar(x: &Scalar) -> Self {
        Self::from_pi(PiScalar::from_scalar(x))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn mul(&self, o: &PiFrac) -> PiFrac {
        let mut den = self.den.clone();
        for (&i, &e) in &o.den {
            *den.entry(i).or_insert(0) += e;
        }
        PiFrac { num: &self.num * &o.num, den }
    }

    pub fn add(&self, o: &PiFrac) -> PiFrac {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let mut lcm = self.den.clone();
        for (&i, &e) in &o.den {
            let x = lcm.entry(i).or_insert(0);
            *x = (*x).max(e);
        }
        let lift = |f: &PiFrac| -> PiScalar {
            let mut extra = BTreeMap::new();
            for (&i, &e) in &lcm {
                let have = f.den.get(&i).copied().unwrap_or(0);
                if e > have {
                    extra.insert(i, e - have);
                }
            }
            &f.num * &den_pi(&extra)
        };
        PiFrac { num: &lift(self) + &lift(o), den: lcm }
    }

    pub fn neg(&self) -> PiFrac {
        PiFrac { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &PiFrac) -> PiFrac {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &PiScalar) -> PiFrac {
        PiFrac { num: &self.num * k, den: self.den.clone() }
    }

    /// Inverts `q0, q1, q` and `pi`; `1/(q^{2i}-1) = -q^{-2i}/(q^{-2i}-1)`.
    pub fn bar(&self) -> PiFrac {
        let mut num = self.num.bar();
        for (&i, &e) in &self.den {
            let f = PiScalar::monomial([0, 0, (-4 * i) as i32, 0], -1);
            num = &num * &f.pow(e);
        }
        PiFrac { num, den: self.den.clone() }
    }

    /// Value at `pi = q^{-p}`.
    pub fn eval(&self, p: i64) -> Result<Scalar> {
        self.num.eval_pi(p).div_exact(&den_scalar(&self.den))
    }

    /// Value at `pi = 1`.
    pub fn at_one(&self) -> Result<Scalar> {
        self.eval(0)
    }

    /// Cancels denominator factors that divide the numerator.
    pub fn reduce(&mut self) {
        let keys: Vec<i64> = self.den.keys().copied().collect();
        for i in keys {
            let f = den_pi(&BTreeMap::from([(i, 1)]));
            while self.den.get(&i).copied().unwrap_or(0) > 0 {
                match self.num.div_exact(&f) {
                    Ok(qt) => {
                        self.num = qt;
                        let e = self.den.get_mut(&i).unwrap();
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&i);
                        }
                    }
                    Err(_) => break,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_matches_levels() {
        let mut c = Coefficient::<Affine>::unit();
        c.n = 1;
        c.exps = [Affine::new(2, 0), Affine::new(0, 0), Affine::new(-3, 4)];
        c.push(Factor::Binom { x: Affine::new(-1, 2), k: 2 });
        c.push(Factor::CBinom { kind: CKind::C1, m: Affine::new(1, 1), k: 2 });
        c.push(Factor::Binom { x: Affine::new(3, 0), k: 1 });
        let s = c.symbolic().unwrap();
        for big_p in [0, 2, 3, 5] {
            assert_eq!(s.eval(2 * big_p).unwrap(), c.at(big_p).eval(), "P = {big_p}");
        }
        let mut r = s.clone();
        r.reduce();
        assert_eq!(r.eval(6).unwrap(), s.eval(6).unwrap());
        let sum = s.add(&r);
        assert_eq!(sum.eval(4).unwrap(), &s.eval(4).unwrap() * &Scalar::constant(2));
    }
}
