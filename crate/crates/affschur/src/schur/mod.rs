//! The affine quantum Schur algebra: bases, products and the bar involution.
//!
//! Elements are [`Combo<3>`] values keyed by coded matrices, interpreted in
//! the `e_A` basis or in the standard basis `[A]`.

pub mod appendix;
pub mod chevalley;
pub mod factors;
pub mod formula;
pub mod oracle;

use crate::algebra::Combo;
use crate::entry::Entry;
use crate::matrices::CodedMatrix;
use crate::ring::{cfactorial, mono, qfact, CKind, Scalar};

pub use formula::{mul_formula, MultDatum};
pub use oracle::Oracle;

/// Which basis a combination refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    E,
    Standard,
}

/// `[A]_c^! = [a'_00]_{c0}^! [a'_{r+1,r+1}]_{c1}^! prod_{I_a^+} [a_ij]^!`.
pub fn fact_c(a: &CodedMatrix) -> Scalar {
    let r = a.r() as i64;
    let mut out = &cfactorial(a.prime(0, 0), CKind::C0).unwrap() * &cfactorial(a.prime(r + 1, r + 1), CKind::C1).unwrap();
    for (i, j) in a.i_plus() {
        if i == j && (i == 0 || i == r + 1) {
            continue;
        }
        let x = a.get(i, j);
        if x > 1 {
            out = &out * &qfact(x).unwrap();
        }
    }
    out
}

/// Doubled exponents `(h0, h1, h)` of the rescaling `[A] = q0^{..} q1^{..} q^{..} e_A`.
pub fn standard_exponents<E: Entry>(a: &CodedMatrix<E>) -> [E; 3] {
    let s = a.stats2(true);
    [(s.c0 - s.cd).half(), (s.c0 + s.cd).half(), s.a]
}

/// The monomial with `[A] = standard_scale(A) e_A`.
pub fn standard_scale(a: &CodedMatrix) -> Scalar {
    let [h0, h1, h] = standard_exponents(a);
    mono(h0, h1, h)
}

/// Rewrites an `e`-basis combination in the standard basis.
pub fn to_standard(x: &Combo<3>) -> Combo<3> {
    x.map_coeffs(|a, c| c * &standard_scale(a).bar())
}

/// Rewrites a standard-basis combination in the `e`-basis.
pub fn to_e(x: &Combo<3>) -> Combo<3> {
    x.map_coeffs(|a, c| c * &standard_scale(a))
}

/// Product in the standard basis from an `e`-basis product of `e_B e_A`.
pub fn standard_product(b: &CodedMatrix, a: &CodedMatrix, e_prod: &Combo<3>) -> Combo<3> {
    let k = &standard_scale(b) * &standard_scale(a);
    to_standard(e_prod).scale(&k)
}
