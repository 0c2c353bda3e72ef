pub mod algebra;
pub mod error;
pub mod exec;
pub mod factorization;
pub mod harness;
pub mod localization;
pub mod module;
pub mod primality;
pub mod subset;

pub use error::{AlgebraError, ValidationError, Violation};
pub use subset::{Elem, Subset};
