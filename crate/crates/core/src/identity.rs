//! The main integral identity: kernel, left-hand functional, residual
//! checks, and the α-averaged variant.
//!
//! For α, λ ∈ [0, 1] and twice-differentiable f,
//!
//! ```text
//! (b−a)(α−1/2) f′(x_α) − (1/(b−a))∫_a^b f
//!     + (1−λ) f(x_α) + λ(α f(a) + (1−α) f(b))
//!   = ((b−a)²/2) ∫₀¹ k(t) f″(tb + (1−t)a) dt,      x_α = (1−α)b + αa
//! ```
//!
//! with the piecewise-quadratic kernel k defined below. Both sides are
//! computed independently (closed forms / antiderivative on the left, the
//! oracle on the right) and the residual is reported verbatim.

use serde::Serialize;

use crate::coeffs::check_alpha_lambda;
use crate::error::Result;
use crate::funcspace::{Interval, TestFunction};
use crate::numint;

/// Kernel of the identity:
///
/// ```text
/// k(t) = 2αλt − t²,                    0 ≤ t ≤ 1−α
/// k(t) = (1−t)(t − 1 + 2λ(1−α)),       1−α ≤ t ≤ 1
/// ```
///
/// The two branches generally disagree at t = 1−α (see [`kernel_jump`]); the
/// first branch wins there except at t = 1, so that k(0) = 0 and k(1) = 0
/// hold for every (α, λ).
pub fn kernel_k(t: f64, alpha: f64, lambda: f64) -> f64 {
    if t <= 1.0 - alpha && t < 1.0 {
        2.0 * alpha * lambda * t - t * t
    } else {
        (1.0 - t) * (t - 1.0 + 2.0 * lambda * (1.0 - alpha))
    }
}

/// Branch jump of the kernel at t = 1−α: second branch minus first branch.
/// Analytically this equals 1−2α for every λ; it vanishes only at α = 1/2.
pub fn kernel_jump(alpha: f64, lambda: f64) -> f64 {
    let t = 1.0 - alpha;
    let first = 2.0 * alpha * lambda * t - t * t;
    let second = (1.0 - t) * (t - 1.0 + 2.0 * lambda * (1.0 - alpha));
    second - first
}

/// Mean value of f over `iv`, preferring the exact antiderivative. Returns
/// the mean and the oracle error contribution (zero on the exact path).
pub(crate) fn mean_value(f: &TestFunction, iv: Interval, tol: f64) -> Result<(f64, f64)> {
    f.check_interval(iv)?;
    if let (Some(fb), Some(fa)) = (f.antiderivative(iv.b()), f.antiderivative(iv.a())) {
        return Ok(((fb - fa) / iv.width(), 0.0));
    }
    let r = numint::integrate(|x| f.f(x), iv, tol)?;
    Ok((r.value / iv.width(), r.error_estimate / iv.width()))
}

fn lhs_with_error(
    f: &TestFunction,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    f.check_interval(iv)?;
    let (a, b) = (iv.a(), iv.b());
    let x_alpha = (1.0 - alpha) * b + alpha * a;
    let (mean, mean_err) = mean_value(f, iv, tol)?;
    let lhs = iv.width() * (alpha - 0.5) * f.f1(x_alpha) - mean
        + (1.0 - lambda) * f.f(x_alpha)
        + lambda * (alpha * f.f(a) + (1.0 - alpha) * f.f(b));
    Ok((lhs, mean_err))
}

/// The four-term left-hand functional of the identity.
pub fn lhs_functional(
    f: &TestFunction,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    tol: f64,
) -> Result<f64> {
    lhs_with_error(f, iv, alpha, lambda, tol).map(|(v, _)| v)
}

fn rhs_with_error(
    f: &TestFunction,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    tol: f64,
) -> Result<(f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    f.check_interval(iv)?;
    let (a, b) = (iv.a(), iv.b());
    // the adaptive oracle converges slowly across kinks, so split at every
    // kernel kink / sign change inside (0, 1)
    let mut breaks: Vec<f64> = [
        2.0 * alpha * lambda,
        1.0 - alpha,
        1.0 - 2.0 * lambda * (1.0 - alpha),
    ]
    .into_iter()
    .filter(|&t| t > 0.0 && t < 1.0)
    .collect();
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let unit = Interval::new(0.0, 1.0)?;
    let r = numint::integrate_with_breakpoints(
        |t| kernel_k(t, alpha, lambda) * f.f2(t * b + (1.0 - t) * a),
        unit,
        &breaks,
        tol,
    )?;
    let scale = iv.width() * iv.width() / 2.0;
    Ok((scale * r.value, scale * r.error_estimate))
}

/// The kernel-weighted right-hand side, ((b−a)²/2) ∫₀¹ k(t) f″(tb+(1−t)a) dt.
pub fn rhs_integral(
    f: &TestFunction,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    tol: f64,
) -> Result<f64> {
    rhs_with_error(f, iv, alpha, lambda, tol).map(|(v, _)| v)
}

/// Both sides of the identity with the residual reported verbatim.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub alpha: f64,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub function: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub oracle_error: f64,
}

/// Evaluates both sides of the identity and reports |lhs − rhs|.
pub fn identity_residual(
    f: &TestFunction,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    tol: f64,
) -> Result<IdentityReport> {
    let (lhs, lhs_err) = lhs_with_error(f, iv, alpha, lambda, tol)?;
    let (rhs, rhs_err) = rhs_with_error(f, iv, alpha, lambda, tol)?;
    Ok(IdentityReport {
        alpha,
        lambda,
        a: iv.a(),
        b: iv.b(),
        function: f.name().to_string(),
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        oracle_error: lhs_err + rhs_err,
    })
}

/// Averages the left-hand functional over α ∈ [0, 1] with composite Simpson
/// on `n_alpha` points (odd, ≥ 3) and compares against the closed form
/// (λ−1)((f(a)+f(b))/2 − (1/(b−a))∫f). Returns the absolute difference.
pub fn averaged_identity_residual(
    f: &TestFunction,
    iv: Interval,
    lambda: f64,
    n_alpha: usize,
    tol: f64,
) -> Result<f64> {
    if n_alpha < 3 || n_alpha.is_multiple_of(2) {
        return Err(crate::error::Error::Parameter(format!(
            "composite Simpson needs an odd point count ≥ 3, got {n_alpha}"
        )));
    }
    check_alpha_lambda(0.0, lambda)?;
    let h = 1.0 / (n_alpha - 1) as f64;
    let mut avg = 0.0;
    for k in 0..n_alpha {
        let alpha = if k == n_alpha - 1 { 1.0 } else { h * k as f64 };
        let weight = if k == 0 || k == n_alpha - 1 {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        avg += weight * lhs_functional(f, iv, alpha, lambda, tol)?;
    }
    avg *= h / 3.0;

    let (mean, _) = mean_value(f, iv, tol)?;
    let closed = (lambda - 1.0) * (0.5 * (f.f(iv.a()) + f.f(iv.b())) - mean);
    Ok((avg - closed).abs())
}
