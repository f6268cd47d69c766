//! Finite linear combinations of coded matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrices::{CodedMatrix, MatrixJson};
use crate::ring::Laurent;

/// `sum c_A X_A` over coded matrices `A`, coefficients in `Laurent<N>`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Combo<const N: usize> {
    pub terms: BTreeMap<CodedMatrix, Laurent<N>>,
}

impl<const N: usize> Combo<N> {
    pub fn new() -> Self {
        Combo { terms: BTreeMap::new() }
    }

    pub fn single(a: CodedMatrix, c: Laurent<N>) -> Self {
        let mut x = Self::new();
        x.add_term(a, &c);
        x
    }

    pub fn add_term(&mut self, a: CodedMatrix, c: &Laurent<N>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c.clone());
            }
        }
    }

    pub fn coeff(&self, a: &CodedMatrix) -> Laurent<N> {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, k: &Laurent<N>) -> Self {
        let mut out = Self::new();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &(c * k));
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<const M: usize, F: Fn(&CodedMatrix, &Laurent<N>) -> Laurent<M>>(&self, f: F) -> Combo<M> {
        let mut out = Combo::<M>::new();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &f(a, c));
        }
        out
    }

    pub fn try_map_coeffs<const M: usize, Er, F: Fn(&CodedMatrix, &Laurent<N>) -> Result<Laurent<M>, Er>>(
        &self,
        f: F,
    ) -> Result<Combo<M>, Er> {
        let mut out = Combo::<M>::new();
        for (a, c) in &self.terms {
            out.add_term(a.clone(), &f(a, c)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TermJson<N>> {
        self.terms.iter().map(|(a, c)| TermJson { matrix: a.to_json(), coeff: c.clone() }).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson<const N: usize> {
    pub matrix: MatrixJson,
    pub coeff: Laurent<N>,
}
