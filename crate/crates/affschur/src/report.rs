//! Output helpers: canonical JSON and LaTeX.

use serde::Serialize;

use crate::algebra::Combo;
use crate::error::{Error, Result};
use crate::matrices::CodedMatrix;
use crate::ring::Laurent;

/// JSON with sorted object keys, so equal values give identical bytes.
pub fn canonical_json<T: Serialize>(x: &T) -> Result<String> {
    // serde_json::Value keeps objects in a BTreeMap
    let v = serde_json::to_value(x).map_err(|e| Error::Internal(e.to_string()))?;
    serde_json::to_string(&v).map_err(|e| Error::Internal(e.to_string()))
}

fn names(n: usize) -> &'static [&'static str] {
    match n {
        1 => &["v"],
        3 => &["q_0", "q_1", "q"],
        _ => &["q_0", "q_1", "q", "\\pi"],
    }
}

fn exp_latex(out: &mut String, name: &str, x: i32, doubled: bool) {
    let (num, den) = if doubled { (x, 2) } else { (2 * x, 2) };
    if num == 0 {
        return;
    }
    out.push_str(name);
    if num == den {
        return;
    }
    if num % den == 0 {
        out.push_str(&format!("^{{{}}}", num / den));
    } else if num < 0 {
        out.push_str(&format!("^{{-\\frac{{{}}}{{2}}}}", -num));
    } else {
        out.push_str(&format!("^{{\\frac{{{num}}}{{2}}}}"));
    }
}

/// A Laurent polynomial in LaTeX.
pub fn scalar_latex<const N: usize>(p: &Laurent<N>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let doubled = N != 1;
    let nm = names(N);
    let mut out = String::new();
    for (k, (e, c)) in p.terms().iter().rev().enumerate() {
        if k > 0 {
            out.push_str(if *c < 0 { " - " } else { " + " });
        } else if *c < 0 {
            out.push('-');
        }
        let unit = e.iter().all(|&x| x == 0);
        if c.abs() != 1 || unit {
            out.push_str(&c.abs().to_string());
        }
        for (i, &x) in e.iter().enumerate() {
            exp_latex(&mut out, nm[i], x, doubled);
        }
    }
    out
}

/// The rows `0..=r+1` of `A` over columns `i-b..=i+b`, as a small matrix.
pub fn matrix_latex(a: &CodedMatrix) -> String {
    let b = a.band();
    let rows: Vec<String> = (0..=a.r() as i64 + 1)
        .map(|i| (i - b..=i + b).map(|j| a.get(i, j).to_string()).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{smallmatrix}} {} \\end{{smallmatrix}}", rows.join(" \\\\ "))
}

/// `sum c_A e_A` or `sum c_A [A]`, depending on `standard`.
pub fn combo_latex<const N: usize>(x: &Combo<N>, standard: bool) -> String {
    if x.terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = x
        .terms
        .iter()
        .map(|(a, c)| {
            let m = matrix_latex(a);
            let basis = if standard { format!("\\left[{m}\\right]") } else { format!("e_{{{m}}}") };
            if c.is_one() {
                basis
            } else {
                format!("\\left({}\\right){basis}", scalar_latex(c))
            }
        })
        .collect();
    parts.join(" + ")
}
