//! The two integer shapes from the worked examples: `ℤ` with submodule
//! `mℤ`, and `ℤ_n` with submodule `dℤ_n`, both over `ℤ` with the trivial
//! grading.
//!
//! `ℤ` acts on `ℤ_n` through `ℤ_n`, so the second shape is modelled exactly
//! by the table ring `ℤ_n`. For the first shape every predicate depends on
//! residues mod `m` except the "≠ 0" conditions, and for nonzero integers
//! `x, y` the product `xy` is never 0, so `GW(mℤ)` is the preimage of the
//! not-prime set `G({0})` of `ℤ_m`, minus the integer 0.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GradedModule, GradedSubmodule};
use crate::algebra::GradedRing;
use crate::error::{AlgebraError, Result, ValidationError, Violation};
use crate::primality::{classify, g_set};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ZInstance {
    /// Module `ℤ`, submodule `mℤ`.
    Integers { m: usize },
    /// Module `ℤ_n`, submodule `dℤ_n` with `d | n`.
    Cyclic { n: usize, d: usize },
}

/// A table model of a cyclic instance.
#[derive(Debug, Clone)]
pub struct TableModel {
    pub module: Arc<GradedModule>,
    pub submodule: GradedSubmodule,
}

impl TableModel {
    pub fn ring(&self) -> &Arc<GradedRing> {
        self.module.ring()
    }
}

/// A union of residue classes mod `modulus`, optionally without the
/// integer 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueClassSet {
    pub modulus: usize,
    pub residues: Vec<usize>,
    pub excludes_integer_zero: bool,
}

impl ResidueClassSet {
    pub fn contains(&self, x: i64) -> bool {
        if x == 0 && self.excludes_integer_zero {
            return false;
        }
        self.residues.binary_search(&(x.rem_euclid(self.modulus as i64) as usize)).is_ok()
    }
}

impl std::fmt::Display for ResidueClassSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let r: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{{x : x mod {} ∈ {{{}}}}}", self.modulus, r.join(","))?;
        if self.excludes_integer_zero {
            write!(f, " ∖ {{0}}")?;
        }
        Ok(())
    }
}

/// Predicates of a [`ZInstance`], with sets reported as residue classes.
/// Ideal-ness of a set is decided on its residue set modulo the modulus.
#[derive(Debug, Clone, Serialize)]
pub struct ResidueSummary {
    pub instance: ZInstance,
    pub gw: ResidueClassSet,
    pub g: ResidueClassSet,
    pub w: ResidueClassSet,
    pub colon: ResidueClassSet,
    pub is_weakly_primal: bool,
    pub is_primal: bool,
    pub is_weakly_prime: bool,
    pub is_weakly_primary: bool,
    pub surrogate: String,
}

impl ZInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(AlgebraError::Invalid(ValidationError(vec![Violation::Shape(msg)])));
        match *self {
            ZInstance::Integers { m: 0 } => bad("m must be positive".into()),
            ZInstance::Cyclic { n, d } if n == 0 || d == 0 || n % d != 0 => bad(format!("d = {d} must divide n = {n}")),
            _ => Ok(()),
        }
    }

    pub fn modulus(&self) -> usize {
        match *self {
            ZInstance::Integers { m } => m,
            ZInstance::Cyclic { n, .. } => n,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            ZInstance::Integers { m } => format!("(Z, {m}Z)"),
            ZInstance::Cyclic { n, d } => format!("(Z_{n}, {d}Z_{n})"),
        }
    }

    /// Exact table model for the cyclic shape; `None` for `ℤ`.
    pub fn table_model(&self) -> Result<Option<TableModel>> {
        self.validate()?;
        let ZInstance::Cyclic { n, d } = *self else {
            return Ok(None);
        };
        let ring = Arc::new(GradedRing::zn(n)?);
        let module = Arc::new(GradedModule::regular(&ring));
        let submodule = module.submodule_generated_by([d % n]);
        Ok(Some(TableModel { module, submodule }))
    }

    pub fn residue_reduction(&self) -> Result<ResidueSummary> {
        self.validate()?;
        let set = |s: &Subset, excl: bool| ResidueClassSet {
            modulus: self.modulus(),
            residues: s.to_vec(),
            excludes_integer_zero: excl,
        };
        match *self {
            ZInstance::Cyclic { .. } => {
                let t = self.table_model()?.expect("cyclic shape has a table model");
                let v = classify(&t.module, &t.submodule);
                let colon = t.module.colon_into_ring(&t.submodule);
                Ok(ResidueSummary {
                    instance: *self,
                    gw: set(&v.gw_set.members, false),
                    g: set(&v.g_set.members, false),
                    w: set(&v.w_set.members, false),
                    colon: set(colon.members(), false),
                    is_weakly_primal: v.is_weakly_primal,
                    is_primal: v.is_primal,
                    is_weakly_prime: v.is_weakly_prime,
                    is_weakly_primary: v.is_weakly_primary,
                    surrogate: "table model over Z_n; integer scalars act through their residues".into(),
                })
            }
            ZInstance::Integers { m } => {
                let zm = Arc::new(GradedRing::zn(m)?);
                let reg = GradedModule::regular(&zm);
                let g0 = g_set(&reg, &reg.zero_submodule()).members;
                let ideal = zm.is_graded_ideal(&g0.with(0));
                let zero_divisor = |x: usize| (1..m).any(|y| zm.mul(x, y) == 0);
                let nilpotent = |x: usize| (1..=m).any(|k| zm.pow(x, k) == 0);
                let weakly_prime = m >= 2 && (1..m).all(|x| !zero_divisor(x));
                let weakly_primary = (1..m).all(|x| !zero_divisor(x) || nilpotent(x));
                Ok(ResidueSummary {
                    instance: *self,
                    gw: set(&g0, true),
                    g: set(&g0, false),
                    w: set(&g0, true),
                    colon: set(&Subset::singleton(m, 0), false),
                    is_weakly_primal: ideal,
                    is_primal: ideal,
                    is_weakly_prime: weakly_prime,
                    is_weakly_primary: weakly_primary,
                    surrogate: format!("residues mod {m}: GW(mZ) is the preimage of G(0) in Z_{m}, without 0"),
                })
            }
        }
    }
}
