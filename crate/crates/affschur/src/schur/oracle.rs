//! Brute-force Schur algebra products evaluated inside the Hecke algebra.
//!
//! For `A = κ(λ, g, μ)` the basis element `e_A` sends `x_μ` to
//! `T_{W_λ g W_μ}`. A product `e_B e_A` is evaluated on `x_μ` and decomposed
//! back along the double cosets of `(row_c(B), μ)`.

use std::collections::HashMap;

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::hecke::{bar_x_scalar, decompose_block, double_coset, double_coset_sum, qw_inv, x_lambda, BarCache, HeckeElement, Params};
use crate::matrices::{kappa, kappa_inv, CodedMatrix};
use crate::weyl::{is_min_left, parabolic_elements, Composition, WeylElement};

use super::fact_c;

/// Largest rank the oracle accepts.
pub const MAX_ORACLE_D: usize = 4;

/// How `e_A(x_μ)` is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMethod {
    /// `q_g^{-1} x_λ T_g T_{D_δ ∩ W_μ}`.
    CosetSum,
    /// `q_g^{-1} x_λ T_g x_μ` divided exactly by `[A]_c^!`.
    Divided,
}

pub struct Oracle {
    pub d: usize,
    pub method: OracleMethod,
    params: Params,
}

impl Oracle {
    pub fn new(d: usize) -> Result<Self> {
        if d > MAX_ORACLE_D {
            return Err(Error::Resource(format!(
                "the Hecke oracle is limited to d <= {MAX_ORACLE_D} (got d = {d})"
            )));
        }
        Ok(Oracle { d, method: OracleMethod::Divided, params: Params::new(d) })
    }

    pub fn with_method(d: usize, method: OracleMethod) -> Result<Self> {
        let mut o = Self::new(d)?;
        o.method = method;
        Ok(o)
    }

    fn check(&self, a: &CodedMatrix) -> Result<(Composition, WeylElement, Composition)> {
        let t = kappa_inv(a)?;
        if t.0.d() != self.d {
            return Err(Error::Domain(format!("matrix has d = {}, oracle has d = {}", t.0.d(), self.d)));
        }
        Ok(t)
    }

    /// `e_A(x_μ) = T_{W_λ g W_μ}`.
    pub fn action(&self, a: &CodedMatrix) -> Result<HeckeElement> {
        let (l, g, m) = self.check(a)?;
        Ok(double_coset_sum(&l, &m, &g))
    }

    /// `X * q_g^{-1} T_g T_{D_δ ∩ W_μ}` or its divided form, for `A = κ(λ, g, μ)`.
    fn apply_right(&self, x: &HeckeElement, a: &CodedMatrix) -> Result<HeckeElement> {
        let (_, g, mu) = self.check(a)?;
        let z = x.mul_basis(&g, &self.params).scale(&qw_inv(&g.lengths()));
        match self.method {
            OracleMethod::CosetSum => {
                let delta = a.delta();
                let reps: Vec<WeylElement> =
                    parabolic_elements(&mu).into_iter().filter(|y| is_min_left(&delta, y)).collect();
                Ok(right_set_sum(&z, &reps, &self.params))
            }
            OracleMethod::Divided => {
                let full = right_set_sum(&z, &parabolic_elements(&mu), &self.params);
                let den = fact_c(a);
                full.map_coeffs(|c| c.div_exact(&den).map_err(|_| Error::Internal("[A]_c^! does not divide".into())))
            }
        }
    }

    /// `q_g^{-1} x_λ T_g x_μ`, which should equal `[A]_c^! e_A(x_μ)`.
    pub fn lemma_product(&self, a: &CodedMatrix) -> Result<HeckeElement> {
        let (l, g, mu) = self.check(a)?;
        let z = x_lambda(&l).mul_basis(&g, &self.params).scale(&qw_inv(&g.lengths()));
        Ok(right_set_sum(&z, &parabolic_elements(&mu), &self.params))
    }

    /// `e_B e_A` in the `e`-basis.
    pub fn mul(&self, b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
        if b.col_c() != a.row_c() {
            return Err(Error::Domain("col_c(B) != row_c(A)".into()));
        }
        let (kap, g1, lam) = self.check(b)?;
        let (_, _, mu) = self.check(a)?;
        let y = double_coset_sum(&kap, &lam, &g1);
        let w = self.apply_right(&y, a)?;
        let dec = decompose_block(&w, &kap, &mu)?;
        let mut out = Combo::new();
        for (g, c) in dec {
            out.add_term(kappa(&kap, &mu, &g), &c);
        }
        Ok(out)
    }

    /// Product of two `e`-basis combinations.
    pub fn mul_combo(&self, x: &Combo<3>, y: &Combo<3>) -> Result<Combo<3>> {
        let mut out = Combo::new();
        for (b, cb) in &x.terms {
            for (a, ca) in &y.terms {
                if b.col_c() != a.row_c() {
                    continue;
                }
                out = out.add(&self.mul(b, a)?.scale(&(cb * ca)));
            }
        }
        Ok(out)
    }

    /// The bar involution on an `e`-basis combination.
    pub fn bar(&self, x: &Combo<3>) -> Result<Combo<3>> {
        let mut cache = BarCache::default();
        let mut out = Combo::new();
        for (a, c) in &x.terms {
            let (l, g, m) = self.check(a)?;
            let mut h = HeckeElement::zero(self.d);
            for w in double_coset(&l, &m, &g) {
                let coeff = qw_inv(&w.lengths()).bar();
                h = h.add(&cache.bar_basis(&w, &self.params).scale(&coeff));
            }
            let h = h.scale(&bar_x_scalar(&m).bar());
            for (g2, c2) in decompose_block(&h, &l, &m)? {
                out.add_term(kappa(&l, &m, &g2), &(&c2 * &c.bar()));
            }
        }
        Ok(out)
    }

    /// The bar involution on a standard-basis combination.
    pub fn bar_standard(&self, x: &Combo<3>) -> Result<Combo<3>> {
        Ok(super::to_standard(&self.bar(&super::to_e(x))?))
    }
}

/// `sum_{y in reps} q_y^{-1} X T_y` for a prefix-closed list in length order.
pub fn right_set_sum(x: &HeckeElement, reps: &[WeylElement], p: &Params) -> HeckeElement {
    let mut memo: HashMap<WeylElement, HeckeElement> = HashMap::new();
    let mut out = HeckeElement::zero(x.d);
    for y in reps {
        let xy = match (0..=y.d).find(|&s| y.is_right_descent(s) && memo.contains_key(&y.right_mul_simple(s))) {
            Some(s) => memo[&y.right_mul_simple(s)].mul_simple(s, p),
            None => x.mul_basis(y, p),
        };
        out = out.add(&xy.scale(&qw_inv(&y.lengths())));
        memo.insert(y.clone(), xy);
    }
    out
}
