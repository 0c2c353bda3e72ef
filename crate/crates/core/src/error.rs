use thiserror::Error;

use crate::subset::Elem;

/// A single violated axiom, with the concrete elements that break it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("{op} has no identity element")]
    MissingIdentity { op: &'static str },
    #[error("{op} is not associative: ({x},{y},{z})")]
    NonAssociative { op: &'static str, x: Elem, y: Elem, z: Elem },
    #[error("{op} is not commutative: ({x},{y})")]
    NonCommutative { op: &'static str, x: Elem, y: Elem },
    #[error("element {x} has no additive inverse")]
    NoInverse { x: Elem },
    #[error("multiplication does not distribute: {x}*({y}+{z})")]
    NonDistributive { x: Elem, y: Elem, z: Elem },
    #[error("component of degree {degree:?} is not an additive subgroup (witness {x}, {y})")]
    NotSubgroup { degree: Vec<usize>, x: Elem, y: Elem },
    #[error("components do not form an internal direct sum: {0}")]
    NotDirectSum(String),
    #[error("grading violated: {x} in degree {g:?} times {y} in degree {h:?} lands outside degree g+h")]
    GradingViolation { g: Vec<usize>, h: Vec<usize>, x: Elem, y: Elem },
    #[error("action law `{law}` fails for r={r}, s={s}, m={m}, n={n}")]
    ActionLaw { law: &'static str, r: Elem, s: Elem, m: Elem, n: Elem },
    #[error("grading group {found:?} does not match the ring's {expected:?}")]
    GroupMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("fraction relation is not an equivalence relation: {0}")]
    NotEquivalence(String),
    #[error("fraction operation `{op}` is not well defined on classes {a} and {b}")]
    IllDefined { op: &'static str, a: usize, b: usize },
}

/// All axioms a candidate structure failed, first witness per axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} axiom violation(s): {}", .0.len(), join(.0))]
pub struct ValidationError(pub Vec<Violation>);

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Invalid(#[from] ValidationError),
    #[error("{what} has size {size}, above the enumeration bound {bound}")]
    BudgetExceeded { what: &'static str, size: usize, bound: usize },
    #[error("operands live in different structures")]
    Mismatch,
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("scalar {0} is not homogeneous")]
    NonHomogeneousScalar(Elem),
    #[error("element {0} is outside the carrier")]
    OutOfRange(Elem),
    #[error("not a graded ideal: {0}")]
    NotIdeal(String),
    #[error("not a graded submodule: {0}")]
    NotSubmodule(String),
    #[error("not a multiplicative set: {0}")]
    NotMultiplicative(String),
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
