//! Finite graded rings, their graded ideals and multiplicative sets.

pub mod grading;
pub mod group;
pub mod ideal;
pub mod multiplicative;
pub mod ring;

pub use grading::{Grading, RawComponent, RawGrading};
pub use group::{Degree, GradingGroup};
pub use ideal::{GradedIdeal, IdealViolation, DEFAULT_ENUMERATION_BOUND};
pub use multiplicative::MultiplicativeSet;
pub use ring::{GradedRing, RawRing};
