use serde::{Deserialize, Serialize};

use super::grading::{Grading, RawComponent, RawGrading};
use super::group::{Degree, GradingGroup};
use crate::error::{AlgebraError, Result, ValidationError, Violation};
use crate::subset::{Elem, Subset};

/// Unvalidated ring tables, as read from a structure file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRing {
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<RawGrading>,
}

/// A finite commutative ring with identity, graded by a finite abelian group.
///
/// Only constructible through [`GradedRing::from_raw`] (directly or via the
/// named constructors), so every value satisfies the ring axioms, the direct
/// sum condition and `R_g R_h ⊆ R_{g+h}`.
#[derive(Debug, Clone)]
pub struct GradedRing {
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    grading: Grading,
    names: Vec<String>,
    warnings: Vec<String>,
}

fn check_square(name: &str, t: &[Vec<Elem>], n: usize) -> Option<Violation> {
    if t.len() != n {
        return Some(Violation::Shape(format!("{name} table has {} rows, expected {n}", t.len())));
    }
    for (i, row) in t.iter().enumerate() {
        if row.len() != n {
            return Some(Violation::Shape(format!("{name} row {i} has {} entries, expected {n}", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Some(Violation::Shape(format!("{name} row {i} contains {x}, outside 0..{n}")));
        }
    }
    None
}

impl GradedRing {
    pub fn from_raw(raw: &RawRing) -> Result<Self, ValidationError> {
        Self::from_raw_named(raw, None)
    }

    pub fn from_raw_named(raw: &RawRing, names: Option<Vec<String>>) -> Result<Self, ValidationError> {
        let n = raw.add.len();
        if n == 0 {
            return Err(ValidationError(vec![Violation::Shape("empty carrier".into())]));
        }
        let shape: Vec<_> = [check_square("add", &raw.add, n), check_square("mul", &raw.mul, n)]
            .into_iter()
            .flatten()
            .collect();
        if !shape.is_empty() {
            return Err(ValidationError(shape));
        }
        if let Some(names) = &names {
            if names.len() != n {
                return Err(ValidationError(vec![Violation::Shape("element name count mismatch".into())]));
            }
        }
        let add = |x: Elem, y: Elem| raw.add[x][y];
        let mul = |x: Elem, y: Elem| raw.mul[x][y];

        let mut v = Vec::new();
        let zero = (0..n).find(|&z| (0..n).all(|x| add(z, x) == x && add(x, z) == x));
        let one = (0..n).find(|&u| (0..n).all(|x| mul(u, x) == x && mul(x, u) == x));
        if zero.is_none() {
            v.push(Violation::MissingIdentity { op: "addition" });
        }
        if one.is_none() {
            v.push(Violation::MissingIdentity { op: "multiplication" });
        }
        for (op, f) in [("addition", &add as &dyn Fn(Elem, Elem) -> Elem), ("multiplication", &mul)] {
            if let Some((x, y)) = first_pair(n, |x, y| f(x, y) != f(y, x)) {
                v.push(Violation::NonCommutative { op, x, y });
            }
            if let Some((x, y, z)) = first_triple(n, |x, y, z| f(f(x, y), z) != f(x, f(y, z))) {
                v.push(Violation::NonAssociative { op, x, y, z });
            }
        }
        if let Some((x, y, z)) = first_triple(n, |x, y, z| mul(x, add(y, z)) != add(mul(x, y), mul(x, z))) {
            v.push(Violation::NonDistributive { x, y, z });
        }
        let mut neg = vec![0; n];
        if let Some(zero) = zero {
            for x in 0..n {
                match (0..n).find(|&y| add(x, y) == zero) {
                    Some(y) => neg[x] = y,
                    None => {
                        v.push(Violation::NoInverse { x });
                        break;
                    }
                }
            }
        }
        if !v.is_empty() {
            return Err(ValidationError(v));
        }
        let zero = zero.expect("checked");
        let one = one.expect("checked");

        let grading = Grading::build(n, zero, &add, &|x| neg[x], raw.grading.as_ref()).map_err(ValidationError)?;
        let group = grading.group().clone();
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.add(g, h);
                for x in grading.component(g).iter() {
                    if let Some(y) = grading.component(h).iter().find(|&y| !grading.component(gh).contains(mul(x, y))) {
                        return Err(ValidationError(vec![Violation::GradingViolation {
                            g: group.tuple(g),
                            h: group.tuple(h),
                            x,
                            y,
                        }]));
                    }
                }
            }
        }
        let mut warnings = Vec::new();
        if !grading.component(group.identity()).contains(one) && n > 1 {
            warnings.push(format!("identity {one} is not homogeneous of degree e"));
        }
        let names = names.unwrap_or_else(|| (0..n).map(|x| x.to_string()).collect());
        Ok(Self {
            order: n,
            add: raw.add.iter().flatten().copied().collect(),
            mul: raw.mul.iter().flatten().copied().collect(),
            neg,
            zero,
            one,
            grading,
            names,
            warnings,
        })
    }

    /// `Z/n` with the trivial grading.
    pub fn zn(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(ValidationError(vec![Violation::Shape("Z/0 is not finite".into())]).into());
        }
        let raw = RawRing {
            add: (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect(),
            mul: (0..n).map(|x| (0..n).map(|y| (x * y) % n).collect()).collect(),
            grading: None,
        };
        Ok(Self::from_raw(&raw)?)
    }

    /// `Z/n[x]/(x^2 - a)` graded by `Z/2`: constants in degree 0, multiples of
    /// `x` in degree 1. Element `c0 + c1*x` has index `c0 + n*c1`.
    pub fn quadratic(n: usize, a: usize) -> Result<Self> {
        Ok(Self::from_raw_named(&quadratic_tables(n, a, true)?, Some(quadratic_names(n)))?)
    }

    /// Direct product with componentwise grading; both factors must share the
    /// grading group. Element `(x, y)` has index `x * |other| + y`.
    pub fn product(&self, other: &GradedRing) -> Result<Self> {
        if self.group() != other.group() {
            return Err(AlgebraError::Mismatch);
        }
        let (n, k) = (self.order, other.order);
        let pair = |i: Elem| (i / k, i % k);
        let idx = |x: Elem, y: Elem| x * k + y;
        let add = (0..n * k)
            .map(|i| (0..n * k).map(|j| {
                let ((a, b), (c, d)) = (pair(i), pair(j));
                idx(self.add(a, c), other.add(b, d))
            }).collect())
            .collect();
        let mul = (0..n * k)
            .map(|i| (0..n * k).map(|j| {
                let ((a, b), (c, d)) = (pair(i), pair(j));
                idx(self.mul(a, c), other.mul(b, d))
            }).collect())
            .collect();
        let group = self.group();
        let components = group
            .elements()
            .map(|g| RawComponent {
                degree: group.tuple(g),
                elements: self
                    .component(g)
                    .iter()
                    .flat_map(|x| other.component(g).iter().map(move |y| idx(x, y)))
                    .collect(),
            })
            .collect();
        let raw = RawRing { add, mul, grading: Some(RawGrading { group: group.cyclic_orders().to_vec(), components }) };
        let names = (0..n * k)
            .map(|i| format!("({},{})", self.name(i / k), other.name(i % k)))
            .collect();
        Ok(Self::from_raw_named(&raw, Some(names))?)
    }

    pub fn to_raw(&self) -> RawRing {
        let n = self.order;
        RawRing {
            add: self.add.chunks(n).map(|r| r.to_vec()).collect(),
            mul: self.mul.chunks(n).map(|r| r.to_vec()).collect(),
            grading: Some(self.grading.to_raw()),
        }
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

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg[y])
    }

    /// `x^k` for `k >= 1`; `x^0` is the identity.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn group(&self) -> &GradingGroup {
        self.grading.group()
    }

    pub fn component(&self, g: Degree) -> &Subset {
        self.grading.component(g)
    }

    pub fn decomp(&self, x: Elem) -> &[Elem] {
        self.grading.decomp(x)
    }

    /// `h(R)`, the union of all components.
    pub fn homogeneous_elements(&self) -> &Subset {
        self.grading.homogeneous()
    }

    pub fn is_homogeneous(&self, x: Elem) -> bool {
        self.grading.homogeneous().contains(x)
    }

    pub fn degree(&self, x: Elem) -> Option<Degree> {
        self.grading.degree(x)
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Non-fatal observations made during validation (e.g. `1 ∉ R_e`).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn subset<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Result<Subset> {
        let mut s = Subset::empty(self.order);
        for x in elems {
            if x >= self.order {
                return Err(AlgebraError::OutOfRange(x));
            }
            s.insert(x);
        }
        Ok(s)
    }

    /// Elements that have a multiplicative inverse.
    pub fn units(&self) -> Subset {
        Subset::from_elems(self.order, self.elements().filter(|&x| self.elements().any(|y| self.mul(x, y) == self.one)))
    }
}

/// Tables for `Z/n[x]/(x^2 - a)`, optionally with the `Z/2` grading.
pub(crate) fn quadratic_tables(n: usize, a: usize, graded: bool) -> Result<RawRing> {
    if n < 2 {
        return Err(ValidationError(vec![Violation::Shape("quadratic ring needs n >= 2".into())]).into());
    }
    let a = a % n;
    let size = n * n;
    let split = |i: Elem| (i % n, i / n);
    let add = (0..size)
        .map(|i| (0..size).map(|j| {
            let ((p0, p1), (q0, q1)) = (split(i), split(j));
            (p0 + q0) % n + n * ((p1 + q1) % n)
        }).collect())
        .collect();
    let mul = (0..size)
        .map(|i| (0..size).map(|j| {
            let ((p0, p1), (q0, q1)) = (split(i), split(j));
            let c0 = (p0 * q0 + a * p1 * q1) % n;
            let c1 = (p0 * q1 + p1 * q0) % n;
            c0 + n * c1
        }).collect())
        .collect();
    let grading = graded.then(|| RawGrading {
        group: vec![2],
        components: vec![
            RawComponent { degree: vec![0], elements: (0..n).collect() },
            RawComponent { degree: vec![1], elements: (0..n).map(|c| c * n).collect() },
        ],
    });
    Ok(RawRing { add, mul, grading })
}

pub(crate) fn quadratic_names(n: usize) -> Vec<String> {
    (0..n * n)
        .map(|i| {
            let (c0, c1) = (i % n, i / n);
            match (c0, c1) {
                (c0, 0) => c0.to_string(),
                (0, 1) => "x".to_string(),
                (0, c1) => format!("{c1}x"),
                (c0, 1) => format!("{c0}+x"),
                (c0, c1) => format!("{c0}+{c1}x"),
            }
        })
        .collect()
}

fn first_pair(n: usize, bad: impl Fn(Elem, Elem) -> bool) -> Option<(Elem, Elem)> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| bad(x, y))
}

fn first_triple(n: usize, bad: impl Fn(Elem, Elem, Elem) -> bool) -> Option<(Elem, Elem, Elem)> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z24_is_valid() {
        let r = GradedRing::zn(24).unwrap();
        assert_eq!(r.order(), 24);
        assert_eq!(r.homogeneous_elements().len(), 24);
        assert!(r.warnings().is_empty());
    }

    #[test]
    fn quadratic_3_1_homogeneous_count() {
        let r = GradedRing::quadratic(3, 1).unwrap();
        assert_eq!(r.order(), 9);
        // {0, 1, 2, x, 2x}
        assert_eq!(r.homogeneous_elements().to_vec(), vec![0, 1, 2, 3, 6]);
        assert_eq!(r.name(3), "x");
        assert_eq!(r.mul(3, 3), r.one());
    }

    #[test]
    fn quadratic_5_2_has_nine_homogeneous() {
        // 5 constants + 5 multiples of x, sharing 0.
        let r = GradedRing::quadratic(5, 2).unwrap();
        assert_eq!(r.homogeneous_elements().len(), 9);
    }

    #[test]
    fn misassigned_component_is_grading_violation() {
        // Swapped components: x has degree 0 but x*x = 1 sits in degree 1.
        let mut raw = quadratic_tables(3, 1, true).unwrap();
        let g = raw.grading.as_mut().unwrap();
        g.components[0].elements = vec![0, 3, 6];
        g.components[1].elements = vec![0, 1, 2];
        let err = GradedRing::from_raw(&raw).unwrap_err();
        assert!(err.0.iter().any(|v| matches!(v, Violation::GradingViolation { .. })), "{err}");
    }

    #[test]
    fn broken_associativity_reported() {
        let mut raw = GradedRing::zn(4).unwrap().to_raw();
        raw.mul[2][3] = 1;
        raw.mul[3][2] = 1;
        let err = GradedRing::from_raw(&raw).unwrap_err();
        assert!(err.0.iter().any(|v| matches!(v, Violation::NonAssociative { .. })), "{err}");
    }

    #[test]
    fn overlapping_components_not_direct_sum() {
        let mut raw = GradedRing::zn(4).unwrap().to_raw();
        raw.grading = Some(RawGrading {
            group: vec![2],
            components: vec![
                RawComponent { degree: vec![0], elements: vec![0, 1, 2, 3] },
                RawComponent { degree: vec![1], elements: vec![0, 2] },
            ],
        });
        let err = GradedRing::from_raw(&raw).unwrap_err();
        assert!(matches!(err.0[0], Violation::NotDirectSum(_)), "{err}");
    }

    #[test]
    fn direct_sum_reconstructs_every_element() {
        for r in [GradedRing::quadratic(3, 1).unwrap(), GradedRing::quadratic(2, 0).unwrap(), GradedRing::zn(12).unwrap()] {
            for x in r.elements() {
                let parts = r.decomp(x);
                let sum = parts.iter().fold(r.zero(), |acc, &p| r.add(acc, p));
                assert_eq!(sum, x);
                for (g, &p) in parts.iter().enumerate() {
                    assert!(r.component(g).contains(p));
                }
            }
            let product: usize = r.grading().components().iter().map(|c| c.len()).product();
            assert_eq!(product, r.order());
        }
    }

    #[test]
    fn product_ring() {
        let z2 = GradedRing::zn(2).unwrap();
        let z3 = GradedRing::zn(3).unwrap();
        let p = z2.product(&z3).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.units().len(), 2);
        assert!(z2.product(&GradedRing::quadratic(2, 0).unwrap()).is_err());
    }

    #[test]
    fn missing_identity() {
        let raw = RawRing { add: vec![vec![0, 1], vec![1, 0]], mul: vec![vec![0, 0], vec![0, 0]], grading: None };
        let err = GradedRing::from_raw(&raw).unwrap_err();
        assert!(err.0.contains(&Violation::MissingIdentity { op: "multiplication" }));
    }
}
