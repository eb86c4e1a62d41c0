//! Analytical coverage machinery: interference Laplace transforms, the
//! conditional coverage kernel, role dispatch over the pairing schemes, and
//! the sparse-network closed forms.

mod closed_form;
mod coverage;
mod laplace;

pub use closed_form::{
    coverage_far_fnrf_closed, coverage_far_rnff_closed, coverage_near_fnrf_closed,
    coverage_near_rnff_closed,
};
pub use coverage::{
    coverage, coverage_far_fnrf, coverage_far_rnff, coverage_near_fnrf, coverage_near_rnff,
    coverage_single_user, theta_kernel, AnalysisMode, Branch, CoverageResult, Role,
};
pub use laplace::{laplace_full, laplace_special1, LaplaceEvaluator, LaplaceMode};
