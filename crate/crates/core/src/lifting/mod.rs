//! Lifting a pair `(π1, π0)` of cocycles to a 1-cocycle on the middle group
//! of an extension: the existence test, the explicit lift, the set of all
//! lifts, and the module version with `π1 = id`.

mod corollary;
mod problem;

pub use corollary::{corollary_lift, BallProbe, BijectivityCertificate, ModuleLift, DEFAULT_BALL_RADIUS};
pub use problem::{all_lifts, assemble_lift, can_lift, lambda_from_lift, LiftProblem};
