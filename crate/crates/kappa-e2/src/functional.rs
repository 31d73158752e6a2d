//! placeholder
use crate::report::ReportFragment;
#[derive(Clone)]
pub struct Functional;
pub fn verify_lie_suite(_degree: i64, _seed: u64) -> ReportFragment { ReportFragment::new() }
