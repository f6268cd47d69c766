//! Matrix entries: plain integers, or integers affine in a level parameter.
//!
//! [`Affine`] represents `c + k*P` where `P` stands for half of an even
//! shift `p`. Statistics of shifted matrices `A + pI` are linear in `P`,
//! and the multiplication impl enforces that (a product of two
//! `P`-dependent values panics).

use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub trait Entry:
    Copy
    + Debug
    + PartialEq
    + Eq
    + Hash
    + Ord
    + Default
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<i64>
{
    /// Exact halving; panics on an odd value.
    fn half(self) -> Self;
    fn is_zero(&self) -> bool;
    /// The value at `P = 0`.
    fn base(&self) -> i64;
    /// The coefficient of `P`.
    fn slope(&self) -> i64;
}

impl Entry for i64 {
    fn half(self) -> Self {
        assert!(self % 2 == 0, "halving odd value {self}");
        self / 2
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn base(&self) -> i64 {
        *self
    }
    fn slope(&self) -> i64 {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Affine {
    pub c: i64,
    pub p: i64,
}

impl Affine {
    pub fn new(c: i64, p: i64) -> Self {
        Affine { c, p }
    }

    /// Value at `P = big_p`.
    pub fn at(&self, big_p: i64) -> i64 {
        self.c + self.p * big_p
    }
}

impl From<i64> for Affine {
    fn from(c: i64) -> Self {
        Affine { c, p: 0 }
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(self, o: Affine) -> Affine {
        Affine { c: self.c + o.c, p: self.p + o.p }
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(self, o: Affine) -> Affine {
        Affine { c: self.c - o.c, p: self.p - o.p }
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine { c: -self.c, p: -self.p }
    }
}

impl Mul for Affine {
    type Output = Affine;
    fn mul(self, o: Affine) -> Affine {
        assert!(self.p == 0 || o.p == 0, "nonlinear dependence on the level: {self:?} * {o:?}");
        Affine { c: self.c * o.c, p: self.c * o.p + self.p * o.c }
    }
}

impl Entry for Affine {
    fn half(self) -> Self {
        assert!(self.c % 2 == 0 && self.p % 2 == 0, "halving odd value {self:?}");
        Affine { c: self.c / 2, p: self.p / 2 }
    }
    fn is_zero(&self) -> bool {
        self.c == 0 && self.p == 0
    }
    fn base(&self) -> i64 {
        self.c
    }
    fn slope(&self) -> i64 {
        self.p
    }
}

/// `x(x-1)/2` for an entry.
pub fn choose2<E: Entry>(x: E) -> E {
    (x * (x - E::from(1))).half()
}
