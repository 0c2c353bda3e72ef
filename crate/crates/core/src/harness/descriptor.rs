//! Instance descriptors and the JSON structure file format.

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedRing, RawGrading, RawRing};
use crate::error::{AlgebraError, Result};
use crate::module::{GradedModule, GradedSubmodule, RawModule, ZInstance};
use crate::subset::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum RingDescriptor {
    Zn { n: usize },
    #[serde(rename = "quadratic")]
    Quadratic { n: usize, a: usize },
    #[serde(rename = "product")]
    Product { factors: Vec<RingDescriptor> },
    #[serde(rename = "tables")]
    Tables {
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<RawGrading>,
    },
}

impl RingDescriptor {
    pub fn build(&self) -> Result<GradedRing> {
        match self {
            RingDescriptor::Zn { n } => GradedRing::zn(*n),
            RingDescriptor::Quadratic { n, a } => GradedRing::quadratic(*n, *a),
            RingDescriptor::Product { factors } => {
                let mut it = factors.iter();
                let first = it.next().ok_or_else(|| AlgebraError::HypothesisUnmet("empty product".into()))?.build()?;
                it.try_fold(first, |acc, f| acc.product(&f.build()?))
            }
            RingDescriptor::Tables { add, mul, grading } => {
                Ok(GradedRing::from_raw(&RawRing { add: add.clone(), mul: mul.clone(), grading: grading.clone() })?)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            RingDescriptor::Zn { n } => format!("Z_{n}"),
            RingDescriptor::Quadratic { n, a } => format!("Z_{n}[x]/(x^2-{a})"),
            RingDescriptor::Product { factors } => factors.iter().map(|f| f.label()).collect::<Vec<_>>().join("x"),
            RingDescriptor::Tables { add, .. } => format!("tables({})", add.len()),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ModuleDescriptor {
    #[default]
    #[serde(rename = "self")]
    Regular,
    #[serde(rename = "direct_sum")]
    DirectSum { copies: usize },
    #[serde(rename = "zero")]
    Zero,
    #[serde(rename = "tables")]
    Tables {
        add: Vec<Vec<Elem>>,
        action: Vec<Vec<Elem>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grading: Option<RawGrading>,
    },
}

impl ModuleDescriptor {
    pub fn build(&self, ring: &Arc<GradedRing>) -> Result<GradedModule> {
        match self {
            ModuleDescriptor::Regular => Ok(GradedModule::regular(ring)),
            ModuleDescriptor::DirectSum { copies } => {
                let reg = GradedModule::regular(ring);
                if *copies == 0 {
                    return Ok(GradedModule::zero_module(ring));
                }
                (1..*copies).try_fold(reg.clone(), |acc, _| acc.direct_sum(&reg))
            }
            ModuleDescriptor::Zero => Ok(GradedModule::zero_module(ring)),
            ModuleDescriptor::Tables { add, action, grading } => Ok(GradedModule::from_raw(
                Arc::clone(ring),
                &RawModule { add: add.clone(), action: action.clone(), grading: grading.clone() },
            )?),
        }
    }

    pub fn label(&self, ring: &str) -> String {
        match self {
            ModuleDescriptor::Regular => format!("{ring} over itself"),
            ModuleDescriptor::DirectSum { copies } => format!("({ring})^{copies} over {ring}"),
            ModuleDescriptor::Zero => format!("0 over {ring}"),
            ModuleDescriptor::Tables { add, .. } => format!("tables({}) over {ring}", add.len()),
        }
    }
}

/// Everything needed to rebuild an instance deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceDescriptor {
    Finite { ring: RingDescriptor, module: ModuleDescriptor },
    Integer(ZInstance),
}

/// A rebuilt instance. Integer instances of the cyclic shape carry their
/// table model and the designated submodule.
#[derive(Debug, Clone)]
pub enum Instance {
    Finite { module: Arc<GradedModule>, designated: Option<GradedSubmodule> },
    Integer(ZInstance),
}

impl InstanceDescriptor {
    pub fn build(&self) -> Result<Instance> {
        match self {
            InstanceDescriptor::Finite { ring, module } => {
                let ring = Arc::new(ring.build()?);
                Ok(Instance::Finite { module: Arc::new(module.build(&ring)?), designated: None })
            }
            InstanceDescriptor::Integer(z) => match z.table_model()? {
                Some(t) => Ok(Instance::Finite { module: t.module, designated: Some(t.submodule) }),
                None => Ok(Instance::Integer(*z)),
            },
        }
    }

    pub fn label(&self) -> String {
        match self {
            InstanceDescriptor::Finite { ring, module } => module.label(&ring.label()),
            InstanceDescriptor::Integer(z) => z.label(),
        }
    }
}

/// Names a submodule of a module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Gen(Vec<Elem>),
    Members(Vec<Elem>),
    Zero,
    Whole,
    /// Position in the sorted submodule enumeration.
    Index(usize),
}

impl FromStr for Selector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let list = |body: &str| -> std::result::Result<Vec<Elem>, String> {
            body.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<Elem>().map_err(|e| format!("bad element `{t}`: {e}"))).collect()
        };
        match s.split_once(':') {
            Some(("gen", body)) => Ok(Selector::Gen(list(body)?)),
            Some(("members", body)) => Ok(Selector::Members(list(body)?)),
            Some(("index", body)) => body.trim().parse().map(Selector::Index).map_err(|e| format!("bad index: {e}")),
            None if s == "zero" => Ok(Selector::Zero),
            None if s == "whole" || s == "all" => Ok(Selector::Whole),
            _ => Err(format!("unknown selector `{s}` (expected gen:<elems>, members:<elems>, index:<k>, zero or whole)")),
        }
    }
}

impl Selector {
    pub fn resolve(&self, m: &GradedModule, bound: usize) -> Result<GradedSubmodule> {
        match self {
            Selector::Gen(g) => {
                if let Some(&x) = g.iter().find(|&&x| x >= m.order()) {
                    return Err(AlgebraError::OutOfRange(x));
                }
                Ok(m.submodule_generated_by(g.iter().copied()))
            }
            Selector::Members(v) => m.submodule(m.subset(v.iter().copied())?),
            Selector::Zero => Ok(m.zero_submodule()),
            Selector::Whole => Ok(m.whole()),
            Selector::Index(k) => {
                let all = m.enumerate_graded_submodules(bound)?;
                let n = all.len();
                all.into_iter().nth(*k).ok_or_else(|| AlgebraError::HypothesisUnmet(format!("index {k} out of {n} submodules")))
            }
        }
    }
}

/// Contents of a structure file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDescriptor>,
    #[serde(default)]
    pub module: ModuleDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integer: Option<ZInstance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub submodules: Vec<Selector>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s_sets: Vec<Vec<Elem>>,
}

impl StructureFile {
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let f: StructureFile = serde_json::from_str(text).map_err(|e| format!("cannot parse structure file: {e}"))?;
        match (&f.ring, &f.integer) {
            (Some(_), None) | (None, Some(_)) => Ok(f),
            _ => Err("structure file needs exactly one of `ring` and `integer`".into()),
        }
    }

    pub fn descriptor(&self) -> InstanceDescriptor {
        match (&self.ring, self.integer) {
            (Some(ring), _) => InstanceDescriptor::Finite { ring: ring.clone(), module: self.module.clone() },
            (None, Some(z)) => InstanceDescriptor::Integer(z),
            (None, None) => unreachable!("checked in parse"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_format() {
        let f = StructureFile::parse(r#"{"ring": {"kind": "Zn", "n": 24}, "module": {"kind": "self"}, "submodules": [{"gen": [8]}], "s_sets": [[1,5]]}"#).unwrap();
        assert_eq!(f.ring, Some(RingDescriptor::Zn { n: 24 }));
        assert_eq!(f.submodules, vec![Selector::Gen(vec![8])]);
        let Instance::Finite { module, .. } = f.descriptor().build().unwrap() else { panic!() };
        assert_eq!(f.submodules[0].resolve(&module, 64).unwrap().len(), 3);
        let q = StructureFile::parse(r#"{"ring": {"kind": "quadratic", "n": 3, "a": 1}}"#).unwrap();
        assert_eq!(q.module, ModuleDescriptor::Regular);
        let z = StructureFile::parse(r#"{"integer": {"shape": "integers", "m": 12}}"#).unwrap();
        assert_eq!(z.descriptor(), InstanceDescriptor::Integer(ZInstance::Integers { m: 12 }));
        assert!(StructureFile::parse(r#"{"module": {"kind": "self"}}"#).is_err());
    }

    #[test]
    fn selectors() {
        assert_eq!("gen:2,3".parse::<Selector>().unwrap(), Selector::Gen(vec![2, 3]));
        assert_eq!("zero".parse::<Selector>().unwrap(), Selector::Zero);
        assert!("bogus".parse::<Selector>().is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let d = InstanceDescriptor::Finite {
            ring: RingDescriptor::Zn { n: 2 },
            module: ModuleDescriptor::DirectSum { copies: 2 },
        };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<InstanceDescriptor>(&s).unwrap(), d);
        let Instance::Finite { module, .. } = d.build().unwrap() else { panic!() };
        assert_eq!(module.order(), 4);
    }
}
