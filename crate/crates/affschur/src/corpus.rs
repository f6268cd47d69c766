//! The golden corpus: oracle structure constants `e_B e_A` for the
//! tridiagonal families, stored as content-addressed JSON.
//!
//! Layout: `index.json` maps family names to SHA-256 digests, and each
//! family lives in `objects/<digest>.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{Combo, TermJson};
use crate::error::{Error, Result};
use crate::matrices::{tridiagonal_pairs, CodedMatrix, MatrixJson};
use crate::report::canonical_json;
use crate::schur::{mul_formula, Oracle};

pub const VERSION: u32 = 1;

/// The families of the oracle comparison.
pub const DEFAULT_FAMILIES: [(usize, usize); 2] = [(1, 2), (2, 3)];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub b: MatrixJson,
    pub a: MatrixJson,
    pub product: Vec<TermJson<3>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Family {
    pub r: usize,
    pub d: usize,
    pub band: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Index {
    pub version: u32,
    pub families: BTreeMap<String, String>,
}

pub fn family_name(r: usize, d: usize) -> String {
    format!("r{r}d{d}")
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("corpus i/o: {e}"))
}

fn combo_from_json(terms: &[TermJson<3>]) -> Result<Combo<3>> {
    let mut x = Combo::new();
    for t in terms {
        x.add_term(CodedMatrix::from_json(&t.matrix)?, &t.coeff);
    }
    Ok(x)
}

/// Oracle products for every tridiagonal `B` and band-2 `A` of `Ξ_{n,d}`.
pub fn build_family(r: usize, d: usize) -> Result<Family> {
    let oracle = Oracle::new(d)?;
    let mut entries = Vec::new();
    for (b, a) in tridiagonal_pairs(r, d, 2) {
        let x = oracle.mul(&b, &a)?;
        entries.push(Entry { b: b.to_json(), a: a.to_json(), product: x.to_json() });
    }
    Ok(Family { r, d, band: 2, entries })
}

/// Writes the corpus and returns the index.
pub fn generate(dir: &Path, families: &[(usize, usize)]) -> Result<Index> {
    fs::create_dir_all(dir.join("objects")).map_err(io)?;
    let mut index = Index { version: VERSION, families: BTreeMap::new() };
    for &(r, d) in families {
        let body = canonical_json(&build_family(r, d)?)?;
        let h = digest(body.as_bytes());
        fs::write(dir.join("objects").join(format!("{h}.json")), &body).map_err(io)?;
        index.families.insert(family_name(r, d), h);
    }
    fs::write(dir.join("index.json"), canonical_json(&index)?).map_err(io)?;
    Ok(index)
}

/// What the stored constants are compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Only the digests.
    Hashes,
    /// The closed multiplication formula.
    Formula,
    /// A fresh oracle run.
    Oracle,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub families: usize,
    pub entries: usize,
    pub hash_mismatches: Vec<String>,
    pub value_mismatches: usize,
    /// The first few mismatching products.
    pub diffs: Vec<String>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.hash_mismatches.is_empty() && self.value_mismatches == 0
    }
}

pub fn read_index(dir: &Path) -> Result<Index> {
    let p = dir.join("index.json");
    if !p.exists() {
        return Ok(Index { version: VERSION, families: BTreeMap::new() });
    }
    let s = fs::read_to_string(p).map_err(io)?;
    let index: Index = serde_json::from_str(&s).map_err(|e| Error::Domain(format!("index.json: {e}")))?;
    if index.version != VERSION {
        return Err(Error::Domain(format!("corpus version {} (expected {VERSION})", index.version)));
    }
    Ok(index)
}

pub fn verify(dir: &Path, check: Check) -> Result<VerifyReport> {
    let index = read_index(dir)?;
    let mut rep = VerifyReport::default();
    if index.families.is_empty() {
        rep.warnings.push("empty corpus: nothing verified".into());
    }
    for (name, h) in &index.families {
        rep.families += 1;
        let body = fs::read_to_string(dir.join("objects").join(format!("{h}.json"))).map_err(io)?;
        if digest(body.as_bytes()) != *h {
            rep.hash_mismatches.push(name.clone());
            continue;
        }
        let fam: Family = serde_json::from_str(&body).map_err(|e| Error::Domain(format!("{name}: {e}")))?;
        let oracle = if check == Check::Oracle { Some(Oracle::new(fam.d)?) } else { None };
        for e in &fam.entries {
            rep.entries += 1;
            if check == Check::Hashes {
                continue;
            }
            let b = CodedMatrix::from_json(&e.b)?;
            let a = CodedMatrix::from_json(&e.a)?;
            let want = combo_from_json(&e.product)?;
            let got = match &oracle {
                Some(o) => o.mul(&b, &a)?,
                None => mul_formula(&b, &a)?,
            };
            if got != want {
                rep.value_mismatches += 1;
                if rep.diffs.len() < 5 {
                    rep.diffs.push(format!("{name}: B = {} A = {}", b.compact(), a.compact()));
                }
            }
        }
    }
    Ok(rep)
}
