//! Decomposition of a finite additive group into homogeneous components.
//!
//! Shared by rings and modules: both carry a family of additive subgroups
//! indexed by a [`GradingGroup`] that must form an internal direct sum.

use serde::{Deserialize, Serialize};

use super::group::{Degree, GradingGroup};
use crate::error::Violation;
use crate::subset::{Elem, Subset};

/// Grading data as it appears in a structure file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGrading {
    pub group: Vec<usize>,
    pub components: Vec<RawComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComponent {
    pub degree: Vec<usize>,
    pub elements: Vec<Elem>,
}

/// A validated grading of a finite additive group.
#[derive(Debug, Clone)]
pub struct Grading {
    group: GradingGroup,
    components: Vec<Subset>,
    decomp: Vec<Vec<Elem>>,
    homogeneous: Subset,
    degree: Vec<Option<Degree>>,
}

impl Grading {
    /// Validates `raw` against an additive group given by `add` with identity
    /// `zero`. Degrees that are not listed get the zero component.
    pub(crate) fn build(
        order: usize,
        zero: Elem,
        add: &dyn Fn(Elem, Elem) -> Elem,
        neg: &dyn Fn(Elem) -> Elem,
        raw: Option<&RawGrading>,
    ) -> Result<Self, Vec<Violation>> {
        let (group, mut components) = match raw {
            None => (GradingGroup::trivial(), vec![Subset::full(order)]),
            Some(raw) => {
                let group = GradingGroup::product(raw.group.clone())
                    .map_err(|e| vec![Violation::Shape(e.to_string())])?;
                let mut components = vec![None; group.order()];
                for c in &raw.components {
                    let g = group.index(&c.degree).filter(|_| {
                        c.degree.iter().zip(group.cyclic_orders()).all(|(&r, &o)| r < o)
                    });
                    let Some(g) = g else {
                        return Err(vec![Violation::Shape(format!("bad degree {:?}", c.degree))]);
                    };
                    if components[g].is_some() {
                        return Err(vec![Violation::Shape(format!("degree {:?} listed twice", c.degree))]);
                    }
                    if let Some(&x) = c.elements.iter().find(|&&x| x >= order) {
                        return Err(vec![Violation::Shape(format!("component element {x} out of range"))]);
                    }
                    components[g] = Some(Subset::from_elems(order, c.elements.iter().copied()));
                }
                let components = components
                    .into_iter()
                    .map(|c| c.unwrap_or_else(|| Subset::singleton(order, zero)))
                    .collect();
                (group, components)
            }
        };

        let mut violations = Vec::new();
        for (g, comp) in components.iter_mut().enumerate() {
            if !comp.contains(zero) {
                violations.push(Violation::NotSubgroup { degree: group.tuple(g), x: zero, y: zero });
                comp.insert(zero);
                continue;
            }
            'sub: for x in comp.iter() {
                for y in comp.iter() {
                    if !comp.contains(add(x, neg(y))) {
                        violations.push(Violation::NotSubgroup { degree: group.tuple(g), x, y });
                        break 'sub;
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        // Walk the sums x_0 + x_1 + ... one degree at a time, recording the
        // tuple that produced each sum. A repeated sum breaks injectivity.
        let degrees = group.order();
        let mut partial: Vec<Option<Vec<Elem>>> = vec![None; order];
        partial[zero] = Some(Vec::new());
        let mut reached = vec![zero];
        for comp in &components {
            let mut next: Vec<Option<Vec<Elem>>> = vec![None; order];
            let mut next_reached = Vec::new();
            for &p in &reached {
                let tuple = partial[p].as_ref().expect("reached sums carry tuples");
                for c in comp.iter() {
                    let s = add(p, c);
                    if let Some(prev) = &next[s] {
                        let mut other = tuple.clone();
                        other.push(c);
                        return Err(vec![Violation::NotDirectSum(format!(
                            "element {s} has two decompositions {prev:?} and {other:?}"
                        ))]);
                    }
                    let mut t = tuple.clone();
                    t.push(c);
                    next[s] = Some(t);
                    next_reached.push(s);
                }
            }
            partial = next;
            reached = next_reached;
        }
        if reached.len() != order {
            let missing = (0..order).find(|&x| partial[x].is_none()).unwrap_or(zero);
            return Err(vec![Violation::NotDirectSum(format!(
                "element {missing} is not a sum of homogeneous components"
            ))]);
        }
        let decomp: Vec<Vec<Elem>> = partial.into_iter().map(|t| t.expect("every element reached")).collect();
        debug_assert!(decomp.iter().all(|t| t.len() == degrees));

        let mut homogeneous = Subset::empty(order);
        let mut degree = vec![None; order];
        for (g, comp) in components.iter().enumerate() {
            for x in comp.iter() {
                homogeneous.insert(x);
                if x != zero {
                    degree[x] = Some(g);
                }
            }
        }
        Ok(Self { group, components, decomp, homogeneous, degree })
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn components(&self) -> &[Subset] {
        &self.components
    }

    pub fn component(&self, g: Degree) -> &Subset {
        &self.components[g]
    }

    /// Homogeneous parts of `x`, indexed by degree.
    pub fn decomp(&self, x: Elem) -> &[Elem] {
        &self.decomp[x]
    }

    pub fn homogeneous(&self) -> &Subset {
        &self.homogeneous
    }

    /// Degree of a nonzero homogeneous element; `None` for zero and for
    /// non-homogeneous elements.
    pub fn degree(&self, x: Elem) -> Option<Degree> {
        self.degree[x]
    }

    pub fn to_raw(&self) -> RawGrading {
        RawGrading {
            group: self.group.cyclic_orders().to_vec(),
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(g, c)| RawComponent { degree: self.group.tuple(g), elements: c.to_vec() })
                .collect(),
        }
    }
}
