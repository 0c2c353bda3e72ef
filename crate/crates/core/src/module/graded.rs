use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Degree, GradedRing, Grading, RawComponent, RawGrading};
use crate::error::{Result, ValidationError, Violation};
use crate::subset::{Elem, Subset};

/// Unvalidated module tables. `action[r][m]` is `r·m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModule {
    pub add: Vec<Vec<Elem>>,
    pub action: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<RawGrading>,
}

/// A finite graded module over a [`GradedRing`].
///
/// The grading condition enforced is `R_g · M_h ⊆ M_{g+h}` on the scalar
/// action.
#[derive(Debug, Clone)]
pub struct GradedModule {
    ring: Arc<GradedRing>,
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    action: Vec<Elem>,
    grading: Grading,
    names: Vec<String>,
}

impl GradedModule {
    pub fn from_raw(ring: Arc<GradedRing>, raw: &RawModule) -> Result<Self, ValidationError> {
        Self::from_raw_named(ring, raw, None)
    }

    pub fn from_raw_named(ring: Arc<GradedRing>, raw: &RawModule, names: Option<Vec<String>>) -> Result<Self, ValidationError> {
        let n = raw.add.len();
        let rn = ring.order();
        let fail = |msg: String| Err(ValidationError(vec![Violation::Shape(msg)]));
        if n == 0 {
            return fail("empty carrier".into());
        }
        if raw.add.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return fail(format!("add table is not {n}x{n} over 0..{n}"));
        }
        if raw.action.len() != rn || raw.action.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return fail(format!("action table is not {rn}x{n} over 0..{n}"));
        }
        if names.as_ref().is_some_and(|v| v.len() != n) {
            return fail("element name count mismatch".into());
        }
        let add = |x: Elem, y: Elem| raw.add[x][y];
        let act = |r: Elem, m: Elem| raw.action[r][m];

        let mut v = Vec::new();
        let Some(zero) = (0..n).find(|&z| (0..n).all(|x| add(z, x) == x && add(x, z) == x)) else {
            return Err(ValidationError(vec![Violation::MissingIdentity { op: "addition" }]));
        };
        'comm: for x in 0..n {
            for y in 0..n {
                if add(x, y) != add(y, x) {
                    v.push(Violation::NonCommutative { op: "addition", x, y });
                    break 'comm;
                }
            }
        }
        'assoc: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if add(add(x, y), z) != add(x, add(y, z)) {
                        v.push(Violation::NonAssociative { op: "addition", x, y, z });
                        break 'assoc;
                    }
                }
            }
        }
        let mut neg = vec![zero; n];
        for x in 0..n {
            match (0..n).find(|&y| add(x, y) == zero) {
                Some(y) => neg[x] = y,
                None => {
                    v.push(Violation::NoInverse { x });
                    break;
                }
            }
        }
        if let Some(m) = (0..n).find(|&m| act(ring.one(), m) != m) {
            v.push(Violation::ActionLaw { law: "1m = m", r: ring.one(), s: ring.one(), m, n: m });
        }
        'laws: for r in ring.elements() {
            for s in ring.elements() {
                for m in 0..n {
                    if act(ring.add(r, s), m) != add(act(r, m), act(s, m)) {
                        v.push(Violation::ActionLaw { law: "(r+s)m = rm+sm", r, s, m, n: m });
                        break 'laws;
                    }
                    if act(ring.mul(r, s), m) != act(r, act(s, m)) {
                        v.push(Violation::ActionLaw { law: "(rs)m = r(sm)", r, s, m, n: m });
                        break 'laws;
                    }
                }
            }
        }
        'dist: for r in ring.elements() {
            for m in 0..n {
                for k in 0..n {
                    if act(r, add(m, k)) != add(act(r, m), act(r, k)) {
                        v.push(Violation::ActionLaw { law: "r(m+n) = rm+rn", r, s: r, m, n: k });
                        break 'dist;
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(ValidationError(v));
        }

        let raw_grading = match &raw.grading {
            Some(g) => Some(g.clone()),
            None if ring.group().is_trivial() => None,
            None => {
                return Err(ValidationError(vec![Violation::GroupMismatch {
                    expected: ring.group().cyclic_orders().to_vec(),
                    found: Vec::new(),
                }]))
            }
        };
        if let Some(g) = &raw_grading {
            if g.group != ring.group().cyclic_orders() {
                return Err(ValidationError(vec![Violation::GroupMismatch {
                    expected: ring.group().cyclic_orders().to_vec(),
                    found: g.group.clone(),
                }]));
            }
        }
        let grading = Grading::build(n, zero, &add, &|x| neg[x], raw_grading.as_ref()).map_err(ValidationError)?;
        let group = ring.group();
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.add(g, h);
                for r in ring.component(g).iter() {
                    if let Some(m) = grading.component(h).iter().find(|&m| !grading.component(gh).contains(act(r, m))) {
                        return Err(ValidationError(vec![Violation::GradingViolation {
                            g: group.tuple(g),
                            h: group.tuple(h),
                            x: r,
                            y: m,
                        }]));
                    }
                }
            }
        }
        let names = names.unwrap_or_else(|| (0..n).map(|x| x.to_string()).collect());
        Ok(Self {
            order: n,
            add: raw.add.iter().flatten().copied().collect(),
            neg,
            zero,
            action: raw.action.iter().flatten().copied().collect(),
            grading,
            names,
            ring,
        })
    }

    /// The ring as a module over itself, with its own grading.
    pub fn regular(ring: &Arc<GradedRing>) -> Self {
        let raw = ring.to_raw();
        let m = RawModule { add: raw.add, action: raw.mul, grading: raw.grading };
        Self::from_raw_named(Arc::clone(ring), &m, Some(ring.names().to_vec())).expect("a graded ring is a graded module over itself")
    }

    pub fn zero_module(ring: &Arc<GradedRing>) -> Self {
        let group = ring.group();
        let raw = RawModule {
            add: vec![vec![0]],
            action: vec![vec![0]; ring.order()],
            grading: Some(RawGrading {
                group: group.cyclic_orders().to_vec(),
                components: vec![RawComponent { degree: group.tuple(0), elements: vec![0] }],
            }),
        };
        Self::from_raw(Arc::clone(ring), &raw).expect("the zero module is valid")
    }

    /// `M ⊕ N` with componentwise grading. `(m, n)` has index `m * |N| + n`.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<Self> {
        if !Arc::ptr_eq(&self.ring, &other.ring) {
            return Err(crate::error::AlgebraError::Mismatch);
        }
        let (a, b) = (self.order, other.order);
        let idx = |x: Elem, y: Elem| x * b + y;
        let add = (0..a * b)
            .map(|i| (0..a * b).map(|j| idx(self.add(i / b, j / b), other.add(i % b, j % b))).collect())
            .collect();
        let action = self
            .ring
            .elements()
            .map(|r| (0..a * b).map(|j| idx(self.act(r, j / b), other.act(r, j % b))).collect())
            .collect();
        let group = self.ring.group();
        let components = group
            .elements()
            .map(|g| RawComponent {
                degree: group.tuple(g),
                elements: self.component(g).iter().flat_map(|x| other.component(g).iter().map(move |y| idx(x, y))).collect(),
            })
            .collect();
        let raw = RawModule { add, action, grading: Some(RawGrading { group: group.cyclic_orders().to_vec(), components }) };
        let names = (0..a * b).map(|i| format!("({},{})", self.name(i / b), other.name(i % b))).collect();
        Ok(Self::from_raw_named(Arc::clone(&self.ring), &raw, Some(names))?)
    }

    pub fn to_raw(&self) -> RawModule {
        let n = self.order;
        RawModule {
            add: self.add.chunks(n).map(|r| r.to_vec()).collect(),
            action: self.action.chunks(n).map(|r| r.to_vec()).collect(),
            grading: Some(self.grading.to_raw()),
        }
    }

    pub fn ring(&self) -> &Arc<GradedRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg[y])
    }

    /// Scalar action `r·m`.
    #[inline]
    pub fn act(&self, r: Elem, m: Elem) -> Elem {
        self.action[r * self.order + m]
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn component(&self, g: Degree) -> &Subset {
        self.grading.component(g)
    }

    pub fn decomp(&self, x: Elem) -> &[Elem] {
        self.grading.decomp(x)
    }

    /// `h(M)`.
    pub fn homogeneous_elements(&self) -> &Subset {
        self.grading.homogeneous()
    }

    pub fn is_homogeneous(&self, m: Elem) -> bool {
        self.grading.homogeneous().contains(m)
    }

    pub fn degree(&self, m: Elem) -> Option<Degree> {
        self.grading.degree(m)
    }

    pub fn name(&self, m: Elem) -> &str {
        &self.names[m]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn subset<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Result<Subset> {
        let mut s = Subset::empty(self.order);
        for x in elems {
            if x >= self.order {
                return Err(crate::error::AlgebraError::OutOfRange(x));
            }
            s.insert(x);
        }
        Ok(s)
    }
}
