//! Finite graded modules over table-based graded rings.

pub mod graded;
pub mod submodule;
pub mod zint;

pub use graded::{GradedModule, RawModule};
pub use submodule::{GradedSubmodule, SubmoduleViolation};
pub use zint::{ResidueClassSet, ResidueSummary, TableModel, ZInstance};
