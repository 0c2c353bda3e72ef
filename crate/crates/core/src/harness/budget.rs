//! Run budget and the instance enumerator.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::descriptor::{InstanceDescriptor, ModuleDescriptor, RingDescriptor};
use crate::algebra::DEFAULT_ENUMERATION_BOUND;
use crate::factorization::DEFAULT_MAX_FACTORS;
use crate::module::ZInstance;

/// Environment variable naming a budget file that replaces the default.
pub const BUDGET_ENV: &str = "GRADED_LAB_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// `Z_n` over itself for `2 <= n <= max_zn`.
    pub max_zn: usize,
    /// `Z_n[x]/(x^2 - a)` for these `n`, with `a ∈ {0, 1, n-1}`.
    pub quadratic_n: Vec<usize>,
    /// `Z_2 ⊕ Z_2` over `Z_2`.
    pub include_products: bool,
    /// `(Z, mZ)` for `2 <= m <= max_integer_m`.
    pub max_integer_m: usize,
    /// `(Z_n, dZ_n)` for `2 <= n <= max_cyclic_n` and every divisor `d`.
    pub max_cyclic_n: usize,
    /// Enumeration bound on ring and module orders.
    pub max_order: usize,
    pub max_factors: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_zn: 24,
            quadratic_n: vec![2, 3, 5],
            include_products: true,
            max_integer_m: 16,
            max_cyclic_n: 32,
            max_order: DEFAULT_ENUMERATION_BOUND,
            max_factors: DEFAULT_MAX_FACTORS,
        }
    }
}

impl Budget {
    pub fn from_file(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read budget {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("cannot parse budget {}: {e}", path.display()))
    }

    /// An explicit file wins, then the environment variable, then the default.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self, String> {
        if let Some(p) = explicit {
            return Self::from_file(p);
        }
        match std::env::var_os(BUDGET_ENV) {
            Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
            _ => Ok(Self::default()),
        }
    }

    /// A budget with only `Z_2`, `Z_3`, ... up to `max_zn` and nothing else.
    pub fn zn_only(max_zn: usize) -> Self {
        Self {
            max_zn,
            quadratic_n: Vec::new(),
            include_products: false,
            max_integer_m: 1,
            max_cyclic_n: 1,
            ..Self::default()
        }
    }
}

/// Instances in a fixed order: `Z_n`, quadratic rings, the product
/// instance, `(Z, mZ)`, then `(Z_n, dZ_n)`.
pub fn enumerate_instances(budget: &Budget) -> Vec<InstanceDescriptor> {
    let mut out = Vec::new();
    let finite = |ring, module| InstanceDescriptor::Finite { ring, module };
    for n in 2..=budget.max_zn {
        out.push(finite(RingDescriptor::Zn { n }, ModuleDescriptor::Regular));
    }
    for &n in &budget.quadratic_n {
        let mut a_values = vec![0, 1 % n, n - 1];
        a_values.sort();
        a_values.dedup();
        for a in a_values {
            out.push(finite(RingDescriptor::Quadratic { n, a }, ModuleDescriptor::Regular));
        }
    }
    if budget.include_products {
        out.push(finite(RingDescriptor::Zn { n: 2 }, ModuleDescriptor::DirectSum { copies: 2 }));
    }
    for m in 2..=budget.max_integer_m {
        out.push(InstanceDescriptor::Integer(ZInstance::Integers { m }));
    }
    for n in 2..=budget.max_cyclic_n {
        for d in (1..=n).filter(|d| n % d == 0) {
            out.push(InstanceDescriptor::Integer(ZInstance::Cyclic { n, d }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_shape() {
        let all = enumerate_instances(&Budget::default());
        let cyclic: usize = (2..=32usize).map(|n| (1..=n).filter(|d| n % d == 0).count()).sum();
        assert_eq!(all.len(), 23 + 8 + 1 + 15 + cyclic);
        assert_eq!(all, enumerate_instances(&Budget::default()));
    }

    #[test]
    fn z2_only() {
        assert_eq!(enumerate_instances(&Budget::zn_only(2)).len(), 1);
    }

    #[test]
    fn budget_file_defaults() {
        let b: Budget = serde_json::from_str(r#"{"max_zn": 6}"#).unwrap();
        assert_eq!(b.max_zn, 6);
        assert_eq!(b.max_cyclic_n, 32);
        assert!(serde_json::from_str::<Budget>(r#"{"bogus": 1}"#).is_err());
    }
}
