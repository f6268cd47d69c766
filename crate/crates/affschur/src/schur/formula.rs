//! The closed multiplication formula for a tridiagonal `e_B` times `e_A`.
//!
//! `e_B e_A = sum_{T, S} (q^{-2}-1)^{n(S)} q0^{α0} q1^{α1} q^{α} ⟦A;S;T⟧ e_{A^{(T-S)}}`
//! over `T ∈ Θ_{B,A}` and `S ∈ Γ_T`. Everything here is generic over the
//! entry type so the same code serves level-shifted matrices `A + pI`.

use crate::algebra::Combo;
use crate::entry::Entry;
use crate::error::{Error, Result};
use crate::matrices::{a_t_minus_s, gamma_set, theta_set_free, CodedMatrix, PMatrix, Stats2};
use crate::ring::{mono, q2_minus_one, qbinom, qfact, CKind, Scalar};

use super::factors::{Coefficient, Factor};
use super::standard_exponents;

/// Lengths `(ℓ_c0, ℓ_cd, ℓ_a)` of the minimal element `w_{A,T}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WatLengths<E> {
    pub c0: E,
    pub cd: E,
    pub a: E,
}

/// One `(T, S)` summand.
#[derive(Clone, Debug)]
pub struct MultDatum<E: Entry> {
    pub t: PMatrix,
    pub s: PMatrix,
    pub n: i64,
    pub h: i64,
    pub wat: WatLengths<E>,
    pub target: CodedMatrix<E>,
    pub coeff: Coefficient<E>,
}

fn lo_hi(m: &PMatrix, extra: i64) -> i64 {
    m.band() + extra
}

/// `ℓ(w_{A,T})` statistics.
pub fn wat_lengths<E: Entry>(a: &CodedMatrix<E>, t: &PMatrix) -> WatLengths<E> {
    let r = a.r() as i64;
    let b = a.band().max(t.band()) + 1;
    let e = |x: i64| E::from(x);
    let at = |i: i64, k: i64| a.get(i, k) - e(t.get(i, k));
    let atheta = |i: i64, k: i64| a.get(i, k) - e(t.get(i, k) + t.get(-i, -k));
    let mut c0 = E::default();
    let mut cd = E::default();
    let mut la = E::default();
    for i in 1..=r {
        for j in i - b..=i + b {
            let tij = t.get(i, j);
            let tm = t.get(-i, -j);
            if tij != 0 {
                let mut s = E::default();
                for k in i - b..j {
                    s = s + at(i, k);
                }
                la = la + e(tij) * s;
            }
            if tm != 0 {
                let mut s = E::default();
                for k in j + 1..=i + b {
                    s = s + atheta(i, k);
                }
                la = la + e(tm) * s;
            }
        }
    }
    // the two type-C blocks, centred at 0 and r+1
    for (c, is_zero) in [(0, true), (r + 1, false)] {
        for j in c - b..=c + b {
            let tj = t.get(c, j);
            if tj == 0 {
                continue;
            }
            let mut s = E::default();
            if j <= c {
                for k in c - b..j {
                    s = s + at(c, k);
                }
            } else {
                for k in c - b..=2 * c - j {
                    s = s + at(c, k);
                }
                for k in 2 * c - j + 1..j {
                    let mut x = atheta(c, k);
                    if k == c {
                        x = x - e(1);
                    }
                    s = s + x;
                }
                la = la - e(tj * (tj + 1) / 2);
                if is_zero {
                    c0 = c0 + e(tj);
                } else {
                    cd = cd + e(tj);
                }
            }
            la = la + e(tj) * s;
        }
    }
    WatLengths { c0, cd, a: la }
}

/// `n(S) = sum_{i=1}^{r+1} row_a(S)_i`.
pub fn n_of(s: &PMatrix) -> i64 {
    (1..=s.r() as i64 + 1).map(|i| s.row_sum(i)).sum()
}

/// `h(T, S)`.
pub fn h_of(t: &PMatrix, s: &PMatrix) -> i64 {
    let r = t.r() as i64;
    let w = lo_hi(t, 2);
    let mut h = 0;
    for i in 1..=r + 1 {
        for j in i - w..=i + w {
            let sij = s.get(i, j);
            if sij != 0 {
                let tsum: i64 = (i - w..=j).map(|k| t.get(i, k)).sum();
                h += sij * tsum - sij * (sij + 1) / 2;
            }
            let x = t.get(1 - i, -j) - s.get(1 - i, -j);
            if x != 0 {
                let a: i64 = (i - w..j).map(|k| t.get(i, k)).sum();
                let b: i64 = (j..=i + w).map(|k| s.get(i, k)).sum();
                let c: i64 = (j + 1..=j + 2 * w + 2).map(|k| s.get(1 - i, -k)).sum();
                h += x * (a + b - c);
            }
        }
    }
    h
}

/// `⟦S⟧ = prod_{i=1}^{r+1} prod_j [sum_{k<=j} (S - S^†)_{ik} choose s^†_{i,j+1}] [s^†_{i,j+1}]^!`.
pub fn s_bracket(s: &PMatrix) -> Scalar {
    let r = s.r() as i64;
    let sd = s.dagger();
    let w = s.band() + 2;
    let mut out = Scalar::one();
    for i in 1..=r + 1 {
        for j in i - w - 1..=i + w {
            let x = sd.get(i, j + 1);
            if x == 0 {
                continue;
            }
            let top: i64 = (i - w - 1..=j).map(|k| s.get(i, k) - sd.get(i, k)).sum();
            out = &out * &(&qbinom(top, x).unwrap() * &qfact(x).unwrap());
        }
    }
    out
}

/// The factors of `⟦A;S;T⟧` apart from `⟦S⟧`.
pub fn ast_factors<E: Entry>(a: &CodedMatrix<E>, t: &PMatrix, s: &PMatrix, out: &mut Coefficient<E>) {
    let r = a.r() as i64;
    let u = t.sub(s);
    let e = |x: i64| E::from(x);
    for (i, j) in a.i_plus() {
        if i == j && (i == 0 || i == r + 1) {
            let kind = if i == 0 { CKind::C0 } else { CKind::C1 };
            let m = (a.get(i, i) - e(2 * t.get(i, i) + 1)).half();
            let sk = s.get(i, i);
            let uk = u.get(i + 1, i);
            out.push(Factor::CBinom { kind, m, k: sk });
            out.push(Factor::CBinom { kind, m: m + e(sk), k: uk });
            continue;
        }
        let x = a.get(i, j) - e(t.get(i, j) + t.get(-i, -j));
        let s1 = s.get(i, j);
        let s2 = s.get(-i, -j);
        let u1 = u.get(i + 1, j);
        let u2 = u.get(1 - i, -j);
        out.push(Factor::Binom { x: x + e(s2 + u1 + u2), k: s1 });
        out.push(Factor::Binom { x: x + e(u1 + u2), k: s2 });
        out.push(Factor::Binom { x: x + e(u2), k: u1 });
        out.push(Factor::Binom { x, k: u2 });
    }
}

/// Rejects `B` when it is not tridiagonal or the margins disagree.
fn check_pair<E: Entry>(b: &CodedMatrix<E>, a: &CodedMatrix<E>) -> Result<()> {
    if !b.is_tridiagonal() {
        return Err(Error::Domain("B must be tridiagonal".into()));
    }
    if b.r() != a.r() || b.col_c() != a.row_c() {
        return Err(Error::Domain("col_c(B) != row_c(A)".into()));
    }
    Ok(())
}

/// All summands of the product formula. With `stab`, diagonal entries of `A`
/// are not bounded (the stabilized index set).
pub fn mult_data<E: Entry>(b: &CodedMatrix<E>, a: &CodedMatrix<E>, stab: bool) -> Result<Vec<MultDatum<E>>> {
    mult_data_free(b, a, |_| stab)
}

/// [`mult_data`] with only the diagonal entries `a_ii` with `free(i)` unbounded.
pub fn mult_data_free<E: Entry>(
    b: &CodedMatrix<E>,
    a: &CodedMatrix<E>,
    free: impl Fn(i64) -> bool,
) -> Result<Vec<MultDatum<E>>> {
    check_pair(b, a)?;
    let b0 = b.map(|x| x.base());
    let sa = a.stats2(false);
    let sb = b.stats2(false);
    let mut out = Vec::new();
    for t in theta_set_free(&b0, a, free) {
        let wat = wat_lengths(a, &t);
        for s in gamma_set(&t) {
            let n = n_of(&s);
            let h = h_of(&t, &s);
            let target = a_t_minus_s(a, &t, &s);
            let st: Stats2<E> = target.stats2(false);
            let two = E::from(2);
            let exps = [
                -two * wat.c0 + two * wat.cd - sa.c0 + sa.cd + st.c0 - st.cd,
                -two * wat.c0 - two * wat.cd - sa.c0 - sa.cd + st.c0 + st.cd,
                two * (-sb.a - two * wat.a - sa.a + st.a + E::from(2 * n + 2 * h)),
            ];
            let mut coeff = Coefficient { n, exps, factors: Vec::new(), scalar: s_bracket(&s) };
            ast_factors(a, &t, &s, &mut coeff);
            out.push(MultDatum { t: t.clone(), s, n, h, wat, target, coeff });
        }
    }
    Ok(out)
}

/// Moves a datum's coefficient to the standard basis: `[B][A] = ... [A^{(T-S)}]`.
pub fn to_standard_datum<E: Entry>(b: &CodedMatrix<E>, a: &CodedMatrix<E>, d: &mut MultDatum<E>) {
    let xb = standard_exponents(b);
    let xa = standard_exponents(a);
    let xc = standard_exponents(&d.target);
    for k in 0..3 {
        d.coeff.exps[k] = d.coeff.exps[k] + xb[k] + xa[k] - xc[k];
    }
}

/// `e_B e_A` by the closed formula.
pub fn mul_formula(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
    let mut out = Combo::new();
    for d in mult_data(b, a, false)? {
        out.add_term(d.target, &d.coeff.eval());
    }
    Ok(out)
}

/// `[B][A]` by the closed formula.
pub fn mul_formula_standard(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
    let mut out = Combo::new();
    for mut d in mult_data(b, a, false)? {
        to_standard_datum(b, a, &mut d);
        out.add_term(d.target, &d.coeff.eval());
    }
    Ok(out)
}

/// `⟦A;S;T⟧` for a concrete datum.
pub fn ast_bracket(d: &MultDatum<i64>) -> Scalar {
    let mut c = d.coeff.clone();
    c.n = 0;
    c.exps = [0; 3];
    c.eval()
}

/// Doubled `(γ0, γ1, γ)` read off `bar(⟦A;S;T⟧) / ⟦A;S;T⟧`.
pub fn gamma_computed(d: &MultDatum<i64>) -> Result<[i64; 3]> {
    let x = ast_bracket(d);
    let ratio = x.bar().div_exact(&x)?;
    match ratio.as_monomial() {
        Some((e, 1)) => Ok([e[0] as i64, e[1] as i64, e[2] as i64]),
        _ => Err(Error::Internal("bar ratio of ⟦A;S;T⟧ is not a monomial".into())),
    }
}

fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Doubled bar exponents of `[A]_c^!`.
fn bar_exp_fact_c(a: &CodedMatrix) -> [i64; 3] {
    let r = a.r() as i64;
    let (x0, xd) = (a.prime(0, 0), a.prime(r + 1, r + 1));
    let mut g = 4 * choose2(x0) + 4 * choose2(xd);
    for (i, j) in a.i_plus() {
        if !(i == j && (i == 0 || i == r + 1)) {
            g += 2 * choose2(a.get(i, j));
        }
    }
    [2 * (x0 - xd), 2 * (x0 + xd), 2 * g]
}

/// Doubled bar exponent of `prod_{i=1}^n prod_j [m_ij]^!`.
fn bar_exp_fact(m: &PMatrix) -> i64 {
    let n = m.n();
    let w = m.band();
    let mut g = 0;
    for i in 1..=n {
        for j in i - w..=i + w {
            g += 2 * choose2(m.get(i, j));
        }
    }
    2 * g
}

/// Doubled bar exponent of `⟦S⟧`.
fn bar_exp_s(s: &PMatrix) -> i64 {
    let r = s.r() as i64;
    let sd = s.dagger();
    let w = s.band() + 2;
    let mut g = 0;
    for i in 1..=r + 1 {
        for j in i - w - 1..=i + w {
            let x = sd.get(i, j + 1);
            let top: i64 = (i - w - 1..=j).map(|k| s.get(i, k) - sd.get(i, k)).sum();
            g += 2 * x * (x - top) - 2 * choose2(x);
        }
    }
    2 * g
}

/// Doubled `(γ0, γ1, γ)` assembled from the bar rules for `[A]^!`,
/// `[A]_c^!` and `⟦S⟧`.
pub fn gamma_closed(a: &CodedMatrix, t: &PMatrix, s: &PMatrix) -> [i64; 3] {
    let u = t.sub(s);
    let top = bar_exp_fact_c(&a_t_minus_s(a, t, s));
    let bot = bar_exp_fact_c(&a.sub(&t.theta()));
    let g = top[2] - bot[2] - bar_exp_fact(s) - bar_exp_fact(&u) + bar_exp_s(s);
    [top[0] - bot[0], top[1] - bot[1], g]
}

/// Doubled `(γ0, γ1, γ)` from the printed display, with the unsubscripted
/// binomial read entrywise as `binom((T-S)_{ij}, 2)`.
pub fn gamma_printed(a: &CodedMatrix, t: &PMatrix, s: &PMatrix) -> [i64; 3] {
    let r = a.r() as i64;
    let n = a.n();
    let u = t.sub(s);
    let uh = u.hat();
    let sd = s.dagger();
    let (s_th, uh_th, t_th) = (s.theta(), uh.theta(), t.theta());
    let k0 = s.get(0, 0) + uh.get(0, 0);
    let kd = s.get(r + 1, r + 1) + uh.get(r + 1, r + 1);
    let mut g = 0;
    for (i, j) in a.i_plus() {
        if i == j && (i == 0 || i == r + 1) {
            continue;
        }
        let x = s_th.get(i, j) + uh_th.get(i, j);
        g += x * (x + 2 * a.get(i, j) - 2 * t_th.get(i, j) - 1);
    }
    for k in [0, r + 1] {
        g += a.get(k, k) - 2 - t.get(k, k) - u.get(k, k) + uh.get(k, k);
    }
    let w = u.band().max(s.band()) + 2;
    for i in 1..=n {
        for j in i - w..=i + w {
            g -= 2 * (choose2(u.get(i, j)) + choose2(s.get(i, j)));
        }
    }
    for i in 1..=r + 1 {
        for j in i - w - 1..=i + w {
            let x = sd.get(i, j + 1);
            let top: i64 = (i - w - 1..=j).map(|k| s.get(i, k) - sd.get(i, k)).sum();
            g -= 2 * x * (x - top) - 2 * choose2(x);
        }
    }
    [2 * (k0 - kd), 2 * (k0 + kd), 2 * g]
}

/// `[B][A]` written with `β = α - γ + ℓ̂`-corrections and `bar(⟦A;S;T⟧)`.
pub fn mul_standard_beta(b: &CodedMatrix, a: &CodedMatrix) -> Result<Combo<3>> {
    let mut out = Combo::new();
    let xb = standard_exponents(b);
    let xa = standard_exponents(a);
    for d in mult_data(b, a, false)? {
        let g = gamma_closed(a, &d.t, &d.s);
        let xc = standard_exponents(&d.target);
        let beta: Vec<i64> = (0..3).map(|k| d.coeff.exps[k] - g[k] + xb[k] + xa[k] - xc[k]).collect();
        let c = &(&q2_minus_one().pow(d.n as u32) * &mono(beta[0], beta[1], beta[2])) * &ast_bracket(&d).bar();
        out.add_term(d.target, &c);
    }
    Ok(out)
}
