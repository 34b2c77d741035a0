//! Certified error bounds for a two-parameter (α, λ) family of quadrature
//! rules under convex |f″| or |f″|^q hypotheses.
//!
//! The family interpolates the classical midpoint (α, λ) = (1/2, 0),
//! trapezoid (1/2, 1) and Simpson (1/2, 1/3) rules, with a derivative
//! correction term engaging off-center (α ≠ 1/2). An exact integral identity
//! expresses the rule error as a kernel-weighted integral of f″; three
//! theorems turn it into a priori bounds consuming only endpoint values of
//! f″. Every closed form is cross-checked against an independent
//! numerical-integration oracle.
//!
//! Module map:
//! - [`funcspace`]: test functions, intervals, sampled convexity verdicts
//! - [`numint`]: the adaptive Gauss–Kronrod oracle and finite differences
//! - [`coeffs`]: regime classification and all closed-form coefficients
//! - [`identity`]: the kernel, the left-hand functional, residual checks
//! - [`bounds`]: the three theorem bounds and the α = 1/2 reference bounds
//! - [`quadrules`]: the rule family, proposition bounds, certified composites
//! - [`means`]: special means and the printed mean inequalities
//! - [`cli`]: the batch front end

// parameter guards use the `!(x >= lo)` shape so NaN fails validation too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cli;
pub mod coeffs;
pub mod error;
pub mod funcspace;
pub mod identity;
pub mod means;
pub mod numint;
pub mod quadrules;

pub use bounds::{
    bound_t2, bound_t3, bound_t4, reduce_check, sarikaya_bounds, sarikaya_lhs, verify_bound,
    BoundReport, ReduceCheckRow, Theorem,
};
pub use coeffs::{
    classify_regime, coefficient_set, gamma_coeffs, incomplete_beta, mu_coeffs, phi_psi_eps,
    tau_z_coeffs, CoefficientSet, Params, Regime, RegimeCase,
};
pub use error::{Error, Result};
pub use funcspace::{
    catalog_lookup, check_abs_f2_convex, derivative_consistency, ConvexityVerdict, Interval,
    TestFunction,
};
pub use identity::{
    averaged_identity_residual, identity_residual, kernel_jump, kernel_k, lhs_functional,
    rhs_integral, IdentityReport,
};
pub use means::{
    mean_chain_check, mean_inequality, special_mean, MeanFamily, MeanKind, MeanValue, MeansReport,
};
pub use numint::{
    finite_diff_first, finite_diff_second, integrate, integrate_with_breakpoints, QuadResult,
};
pub use quadrules::{
    composite_certified, generalized_rule, match_general, proposition_bound, CertifiedResult,
    RuleKind, RuleSpec,
};
