//! Claim harness: instance descriptors, budgets, the claim registry, the
//! runner and report, certificates and their independent checker.

pub mod budget;
pub mod certificate;
pub mod context;
pub mod descriptor;
pub mod examples;
pub mod registry;
pub mod report;
pub mod verify;

pub use budget::{enumerate_instances, Budget, BUDGET_ENV};
pub use certificate::Certificate;
pub use descriptor::{Instance, InstanceDescriptor, Selector, StructureFile};
pub use registry::{registry, ClaimSpec};
pub use report::{run_claims, ClaimResult, ClaimStatus, Report};
pub use verify::{check_certificate, verify_certificate, VerifyError};
