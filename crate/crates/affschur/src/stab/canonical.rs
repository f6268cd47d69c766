//! Stably canonical bases at a weight function.

use std::cell::RefCell;
use std::collections::HashMap;

use crate::algebra::Combo;
use crate::canonical::{specialize_combo, triangular_canonical, Extension, DEFAULT_CLOSURE_CAP};
use crate::error::{Error, Result};
use crate::matrices::CodedMatrix;
use crate::ring::WeightFunction;

use super::bar::{stab_bar_spec, ChevalleyBar, DEFAULT_P_MAX};
use super::{Stab, Variant};

/// Where `bar([A])` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BarSource {
    /// The bar involution of the stabilization algebra (Chevalley steps at `pi = 1`).
    Stable,
    /// Level-`p` bars, re-centered, until two consecutive even levels agree.
    Empirical { p_max: i64 },
}

impl Default for BarSource {
    fn default() -> Self {
        BarSource::Stable
    }
}

pub struct StabCanonical<'a> {
    pub variant: Variant,
    pub weight: WeightFunction,
    pub source: BarSource,
    pub cap: usize,
    kbar: ChevalleyBar<'a>,
    stab: Stab,
    bars: RefCell<HashMap<CodedMatrix, Combo<1>>>,
    elements: RefCell<HashMap<(CodedMatrix, Extension), Combo<1>>>,
}

impl<'a> StabCanonical<'a> {
    pub fn new(variant: Variant, weight: WeightFunction) -> Self {
        Self::with_source(variant, weight, BarSource::Stable)
    }

    pub fn with_source(variant: Variant, weight: WeightFunction, source: BarSource) -> Self {
        StabCanonical {
            variant,
            weight,
            source,
            cap: DEFAULT_CLOSURE_CAP,
            kbar: ChevalleyBar::stab(variant),
            stab: Stab::new(variant),
            bars: RefCell::default(),
            elements: RefCell::default(),
        }
    }

    pub fn empirical(variant: Variant, weight: WeightFunction) -> Self {
        Self::with_source(variant, weight, BarSource::Empirical { p_max: DEFAULT_P_MAX })
    }

    /// `bar([A]^L)` in the `[·]^L` basis.
    pub fn bar_basis(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        if let Some(x) = self.bars.borrow().get(a) {
            return Ok(x.clone());
        }
        let x = match self.source {
            BarSource::Stable => specialize_combo(&self.kbar.bar_basis(a)?, &self.weight)?,
            BarSource::Empirical { p_max } => stab_bar_spec(self.variant, a, &self.weight, p_max)?,
        };
        self.bars.borrow_mut().insert(a.clone(), x.clone());
        Ok(x)
    }

    pub fn bar(&self, x: &Combo<1>) -> Result<Combo<1>> {
        let mut out = Combo::new();
        for (a, c) in &x.terms {
            out = out.add(&self.bar_basis(a)?.scale(&c.bar()));
        }
        Ok(out)
    }

    /// `[B]^L [A]^L` at `pi = 1`.
    pub fn mul(&self, x: &Combo<1>, y: &Combo<1>) -> Result<Combo<1>> {
        let mut out = Combo::new();
        for (b, cb) in &x.terms {
            for (a, ca) in &y.terms {
                if b.col_c() != a.row_c() {
                    continue;
                }
                let p = specialize_combo(&self.stab.mul_basis(b, a)?, &self.weight)?;
                out = out.add(&p.scale(&(cb * ca)));
            }
        }
        Ok(out)
    }

    /// `{A}^L` in the `[·]^L` basis.
    pub fn canonical(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        self.canonical_with(a, Extension::Forward)
    }

    pub fn canonical_with(&self, a: &CodedMatrix, ext: Extension) -> Result<Combo<1>> {
        let key = (a.clone(), ext);
        if let Some(x) = self.elements.borrow().get(&key) {
            return Ok(x.clone());
        }
        let out = triangular_canonical(a, self.weight.c(), ext, self.cap, &|m| self.bar_basis(m))?;
        self.elements.borrow_mut().insert(key, out.clone());
        Ok(out)
    }

    /// `{A}^L` computed inside the span of the variant index set: the bar of
    /// every basis element met must stay in that span.
    pub fn variant_canonical(&self, a: &CodedMatrix) -> Result<Combo<1>> {
        let v = self.variant;
        if !v.contains(a) {
            return Err(Error::Domain(format!("{} is not in the {v} index set", a.compact())));
        }
        let bar = |m: &CodedMatrix| {
            let x = self.bar_basis(m)?;
            match x.terms.keys().find(|b| !v.contains(b)) {
                Some(b) => Err(Error::Domain(format!("bar of {} leaves the {v} span at {}", m.compact(), b.compact()))),
                None => Ok(x),
            }
        };
        triangular_canonical(a, self.weight.c(), Extension::Forward, self.cap, &bar)
    }
}
