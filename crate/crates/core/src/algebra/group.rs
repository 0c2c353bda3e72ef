use serde::Serialize;

use crate::error::{AlgebraError, Result, ValidationError, Violation};

/// Index of an element of a [`GradingGroup`].
pub type Degree = usize;

/// A finite abelian group presented as `Z/o1 x Z/o2 x ...`.
///
/// Elements are addressed by a mixed-radix index; index 0 is the identity.
/// The empty product is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GradingGroup {
    cyclic_orders: Vec<usize>,
}

impl GradingGroup {
    pub fn trivial() -> Self {
        Self { cyclic_orders: Vec::new() }
    }

    pub fn cyclic(order: usize) -> Result<Self> {
        Self::product(vec![order])
    }

    pub fn product(cyclic_orders: Vec<usize>) -> Result<Self> {
        if cyclic_orders.contains(&0) {
            return Err(AlgebraError::Invalid(ValidationError(vec![Violation::Shape(
                "grading group has a cyclic factor of order 0".into(),
            )])));
        }
        Ok(Self { cyclic_orders })
    }

    pub fn cyclic_orders(&self) -> &[usize] {
        &self.cyclic_orders
    }

    pub fn order(&self) -> usize {
        self.cyclic_orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> Degree {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Degree> {
        0..self.order()
    }

    pub fn tuple(&self, g: Degree) -> Vec<usize> {
        let mut rest = g;
        self.cyclic_orders
            .iter()
            .map(|&o| {
                let r = rest % o;
                rest /= o;
                r
            })
            .collect()
    }

    /// Index of a residue tuple; entries are reduced modulo their factor.
    pub fn index(&self, tuple: &[usize]) -> Option<Degree> {
        if tuple.len() != self.cyclic_orders.len() {
            return None;
        }
        let mut idx = 0;
        let mut scale = 1;
        for (&r, &o) in tuple.iter().zip(&self.cyclic_orders) {
            idx += (r % o) * scale;
            scale *= o;
        }
        Some(idx)
    }

    pub fn add(&self, g: Degree, h: Degree) -> Degree {
        let mut a = g;
        let mut b = h;
        let mut idx = 0;
        let mut scale = 1;
        for &o in &self.cyclic_orders {
            idx += ((a % o + b % o) % o) * scale;
            a /= o;
            b /= o;
            scale *= o;
        }
        idx
    }

    pub fn neg(&self, g: Degree) -> Degree {
        let mut a = g;
        let mut idx = 0;
        let mut scale = 1;
        for &o in &self.cyclic_orders {
            idx += ((o - a % o) % o) * scale;
            a /= o;
            scale *= o;
        }
        idx
    }

    pub fn sub(&self, g: Degree, h: Degree) -> Degree {
        self.add(g, self.neg(h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_axioms_exhaustive() {
        for orders in [vec![], vec![2], vec![3], vec![2, 2], vec![2, 3], vec![4, 2]] {
            let g = GradingGroup::product(orders).unwrap();
            let n = g.order();
            for a in 0..n {
                assert_eq!(g.add(a, g.identity()), a);
                assert_eq!(g.add(a, g.neg(a)), g.identity());
                assert_eq!(g.index(&g.tuple(a)), Some(a));
                for b in 0..n {
                    assert_eq!(g.add(a, b), g.add(b, a));
                    for c in 0..n {
                        assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn zero_order_factor_rejected() {
        assert!(GradingGroup::product(vec![0]).is_err());
        assert!(GradingGroup::product(vec![1, 1]).unwrap().is_trivial());
    }
}
