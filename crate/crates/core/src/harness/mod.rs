//! Random presentations, property checks and fuzzing.

pub mod fuzz;
pub mod random;
pub mod report;
pub mod verify;

pub use fuzz::{fuzz, Counterexample, FuzzCase, FuzzReport, FuzzSpec};
pub use random::{random_presentation, RandomError, RandomSpec, TargetClass, RETRY_BOUND};
pub use verify::{hh1_spans, verify, Property, UnknownProperty, Verdict, VerdictReport, Witness};
