//! The three theorem bounds on the identity's left-hand side, certified
//! bound reports, and the α = 1/2 reference bounds used by the reduction
//! check.
//!
//! With S = (b−a)²/2, F_a = |f″(a)|, F_b = |f″(b)| and regime-selected
//! coefficients:
//!
//! ```text
//! T2 (|f″| convex):    S·[(γ_b F_b + γ_a F_a) + (μ_b F_b + μ_a F_a)]
//! T3 (|f″|^q convex):  S·[τ^{1−1/q}(γ_b F_b^q + γ_a F_a^q)^{1/q}
//!                         + z^{1−1/q}(μ_b F_b^q + μ_a F_a^q)^{1/q}]
//! T4 (|f″|^q, q > 1):  S·[φ^{1/p}(ε₁F_b^q + β(1−α;q+1,2)F_a^q)^{1/q}
//!                         + ψ^{1/p}(β(α;q+1,2)F_b^q + ε₂F_a^q)^{1/q}]
//! ```

use serde::Serialize;

use crate::coeffs::{
    classify_regime, gamma_coeffs, incomplete_beta, mu_coeffs, phi_psi_eps, tau_z_coeffs, Params,
    Regime,
};
use crate::error::{Error, Result};
use crate::funcspace::{check_abs_f2_convex, Interval, TestFunction};
use crate::identity::lhs_functional;
use crate::numint;

/// Which inequality a report certifies. The `RefG2`/`RefG3` variants mark the
/// reference three-point bounds used by the reduction check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Theorem {
    T2,
    T3,
    T4,
    #[serde(rename = "REF_G2")]
    RefG2,
    #[serde(rename = "REF_G3")]
    RefG3,
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Theorem::T2 => write!(f, "T2"),
            Theorem::T3 => write!(f, "T3"),
            Theorem::T4 => write!(f, "T4"),
            Theorem::RefG2 => write!(f, "REF_G2"),
            Theorem::RefG3 => write!(f, "REF_G3"),
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T2" => Ok(Theorem::T2),
            "T3" => Ok(Theorem::T3),
            "T4" => Ok(Theorem::T4),
            other => Err(Error::Parameter(format!(
                "theorem must be one of T2, T3, T4; got `{other}`"
            ))),
        }
    }
}

fn check_endpoint_values(f2_abs_a: f64, f2_abs_b: f64) -> Result<()> {
    if !(f2_abs_a >= 0.0) || !(f2_abs_b >= 0.0) || !f2_abs_a.is_finite() || !f2_abs_b.is_finite() {
        return Err(Error::Parameter(format!(
            "endpoint |f″| values must be finite and nonnegative, got {f2_abs_a}, {f2_abs_b}"
        )));
    }
    Ok(())
}

fn selected_gamma_mu(regime: &Regime, alpha: f64, lambda: f64) -> Result<((f64, f64), (f64, f64))> {
    let (g1, g2, g3, g4) = gamma_coeffs(alpha, lambda)?;
    let (m1, m2, m3, m4) = mu_coeffs(alpha, lambda)?;
    let gamma = if regime.first_gamma_pair() {
        (g1, g2)
    } else {
        (g3, g4)
    };
    let mu = if regime.first_mu_pair() {
        (m1, m2)
    } else {
        (m3, m4)
    };
    Ok((gamma, mu))
}

/// The |f″|-convex bound. Inputs are |f″(a)| and |f″(b)|.
pub fn bound_t2(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    alpha: f64,
    lambda: f64,
) -> Result<f64> {
    check_endpoint_values(f2_abs_a, f2_abs_b)?;
    let regime = classify_regime(alpha, lambda)?;
    let ((gb, ga), (mb, ma)) = selected_gamma_mu(&regime, alpha, lambda)?;
    let scale = iv.width() * iv.width() / 2.0;
    Ok(scale * ((gb * f2_abs_b + ga * f2_abs_a) + (mb * f2_abs_b + ma * f2_abs_a)))
}

/// The power-mean bound for convex |f″|^q, q ≥ 1. At q = 1 this takes the T2
/// code path, so the two agree exactly.
pub fn bound_t3(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    q: f64,
) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::Parameter(format!("q must be ≥ 1, got {q}")));
    }
    if q == 1.0 {
        return bound_t2(f2_abs_a, f2_abs_b, iv, alpha, lambda);
    }
    check_endpoint_values(f2_abs_a, f2_abs_b)?;
    let regime = classify_regime(alpha, lambda)?;
    let ((gb, ga), (mb, ma)) = selected_gamma_mu(&regime, alpha, lambda)?;
    let (t1, t2, z1, z2) = tau_z_coeffs(alpha, lambda)?;
    // the selected quantities are integrals of nonnegative integrands;
    // rounding can land them a few ulp below zero at degenerate segments,
    // which powf must not see
    let tau = if regime.first_gamma_pair() { t1 } else { t2 }.max(0.0);
    let z = if regime.first_mu_pair() { z1 } else { z2 }.max(0.0);
    let e = 1.0 - 1.0 / q;
    let fa_q = f2_abs_a.powf(q);
    let fb_q = f2_abs_b.powf(q);
    let inner_g = (gb * fb_q + ga * fa_q).max(0.0);
    let inner_m = (mb * fb_q + ma * fa_q).max(0.0);
    let scale = iv.width() * iv.width() / 2.0;
    Ok(scale * (tau.powf(e) * inner_g.powf(1.0 / q) + z.powf(e) * inner_m.powf(1.0 / q)))
}

/// The Hölder bound for convex |f″|^q, q > 1.
pub fn bound_t4(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    alpha: f64,
    lambda: f64,
    q: f64,
) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::Unsupported(format!(
            "the Hölder bound needs q > 1, got {q}"
        )));
    }
    check_endpoint_values(f2_abs_a, f2_abs_b)?;
    let regime = classify_regime(alpha, lambda)?;
    let p = q / (q - 1.0);
    let (phi1, phi2, psi1, psi2, eps1, eps2) = phi_psi_eps(alpha, lambda, p, q)?;
    let phi = if regime.first_gamma_pair() {
        phi1
    } else {
        phi2
    }
    .max(0.0);
    let psi = if regime.first_mu_pair() { psi1 } else { psi2 }.max(0.0);
    let beta_a = incomplete_beta(1.0 - alpha, q + 1.0, 2.0)?;
    let beta_b = incomplete_beta(alpha, q + 1.0, 2.0)?;
    let fa_q = f2_abs_a.powf(q);
    let fb_q = f2_abs_b.powf(q);
    let scale = iv.width() * iv.width() / 2.0;
    Ok(scale
        * (phi.powf(1.0 / p) * (eps1 * fb_q + beta_a * fa_q).powf(1.0 / q)
            + psi.powf(1.0 / p) * (beta_b * fb_q + eps2 * fa_q).powf(1.0 / q)))
}

/// A certified comparison of |LHS| against one theorem bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub function: String,
    pub params: Params,
    pub interval: Interval,
    pub lhs_abs: f64,
    pub bound: f64,
    /// bound − lhs_abs; nonnegativity (up to −1e−10) is the tested claim
    /// whenever `hypothesis_ok`.
    pub slack: f64,
    pub regime: Regime,
    pub hypothesis_ok: bool,
}

/// Grid size used for the hypothesis check inside [`verify_bound`].
const VERIFY_CONVEXITY_SAMPLES: usize = 65;

/// Verifies one theorem bound for a test function: checks the convexity
/// hypothesis (q = 1 for T2, the given q otherwise), computes |LHS| and the
/// bound, and reports the slack. A failed hypothesis does not raise — the
/// report carries `hypothesis_ok = false` so sweeps can chart where bounds
/// break without their hypotheses.
pub fn verify_bound(
    f: &TestFunction,
    iv: Interval,
    params: Params,
    theorem: Theorem,
) -> Result<BoundReport> {
    let (alpha, lambda, q) = (params.alpha, params.lambda, params.q);
    let hyp_q = if theorem == Theorem::T2 { 1.0 } else { q };
    let verdict = check_abs_f2_convex(f, iv, hyp_q, VERIFY_CONVEXITY_SAMPLES)?;
    let lhs_abs = lhs_functional(f, iv, alpha, lambda, numint::DEFAULT_TOL)?.abs();
    let f2_abs_a = f.f2(iv.a()).abs();
    let f2_abs_b = f.f2(iv.b()).abs();
    let bound = match theorem {
        Theorem::T2 => bound_t2(f2_abs_a, f2_abs_b, iv, alpha, lambda)?,
        Theorem::T3 => bound_t3(f2_abs_a, f2_abs_b, iv, alpha, lambda, q)?,
        Theorem::T4 => bound_t4(f2_abs_a, f2_abs_b, iv, alpha, lambda, q)?,
        other => {
            return Err(Error::Parameter(format!(
                "verify_bound accepts T2, T3 or T4, got {other}"
            )))
        }
    };
    Ok(BoundReport {
        theorem,
        function: f.name().to_string(),
        params,
        interval: iv,
        lhs_abs,
        bound,
        slack: bound - lhs_abs,
        regime: classify_regime(alpha, lambda)?,
        hypothesis_ok: verdict.convex_abs_f2_pow_q,
    })
}

/// Left-hand functional of the reference three-point identity:
/// (λ−1)f((a+b)/2) − λ(f(a)+f(b))/2 + (1/(b−a))∫f.
pub fn sarikaya_lhs(f: &TestFunction, iv: Interval, lambda: f64, tol: f64) -> Result<f64> {
    crate::coeffs::check_alpha_lambda(0.0, lambda)?;
    f.check_interval(iv)?;
    let mid = 0.5 * (iv.a() + iv.b());
    let (mean, _) = crate::identity::mean_value(f, iv, tol)?;
    Ok((lambda - 1.0) * f.f(mid) - lambda * 0.5 * (f.f(iv.a()) + f.f(iv.b())) + mean)
}

/// Both λ-branches of the reference |f″|-convex bound, as printed.
pub fn sarikaya_g2_branches(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    lambda: f64,
) -> Result<(f64, f64)> {
    check_endpoint_values(f2_abs_a, f2_abs_b)?;
    crate::coeffs::check_alpha_lambda(0.0, lambda)?;
    let s2 = iv.width() * iv.width();
    let l = lambda;
    let low = s2 / 12.0
        * ((l.powi(4) + (1.0 + l) * (1.0 - l).powi(3) + (5.0 * l - 3.0) / 4.0) * f2_abs_a
            + (l.powi(4) + (2.0 - l) * l.powi(3) + (1.0 - 3.0 * l) / 4.0) * f2_abs_b);
    let high = s2 * (3.0 * l - 1.0) / 48.0 * (f2_abs_a + f2_abs_b);
    Ok((low, high))
}

/// Both λ-branches of the reference |f″|^q-convex bound, as printed.
pub fn sarikaya_g3_branches(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    lambda: f64,
    q: f64,
) -> Result<(f64, f64)> {
    check_endpoint_values(f2_abs_a, f2_abs_b)?;
    crate::coeffs::check_alpha_lambda(0.0, lambda)?;
    if !(q >= 1.0) {
        return Err(Error::Parameter(format!("q must be ≥ 1, got {q}")));
    }
    let s2 = iv.width() * iv.width();
    let l = lambda;
    let e = 1.0 - 1.0 / q;
    let fa_q = f2_abs_a.powf(q);
    let fb_q = f2_abs_b.powf(q);
    let c192 = 3.0 * 64.0;

    let low_pref = (l.powi(3) / 3.0 + (1.0 - 3.0 * l) / 24.0).powf(e);
    let low_b1 = ((l.powi(4) / 6.0 + (3.0 - 8.0 * l) / c192) * fa_q
        + ((2.0 - l) * l.powi(3) / 6.0 + (5.0 - 16.0 * l) / c192) * fb_q)
        .powf(1.0 / q);
    let low_b2 = (((1.0 + l) / 6.0 * (1.0 - l).powi(3) + (48.0 * l - 27.0) / c192) * fa_q
        + (l.powi(4) / 6.0 + (3.0 - 8.0 * l) / c192) * fb_q)
        .powf(1.0 / q);
    let low = s2 / 2.0 * low_pref * (low_b1 + low_b2);

    let high_pref = ((3.0 * l - 1.0) / 24.0).powf(e);
    let high_b1 = ((8.0 * l - 3.0) / c192 * fa_q + (16.0 * l - 5.0) / c192 * fb_q).powf(1.0 / q);
    let high_b2 = ((16.0 * l - 5.0) / c192 * fa_q + (8.0 * l - 3.0) / c192 * fb_q).powf(1.0 / q);
    let high = s2 / 2.0 * high_pref * (high_b1 + high_b2);

    Ok((low, high))
}

/// The reference bounds, branch-selected by λ (λ ≤ 1/2 takes the first
/// branch; the branches agree at λ = 1/2).
pub fn sarikaya_bounds(
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    lambda: f64,
    q: f64,
) -> Result<(f64, f64)> {
    let (g2_low, g2_high) = sarikaya_g2_branches(f2_abs_a, f2_abs_b, iv, lambda)?;
    let (g3_low, g3_high) = sarikaya_g3_branches(f2_abs_a, f2_abs_b, iv, lambda, q)?;
    if lambda <= 0.5 {
        Ok((g2_low, g3_low))
    } else {
        Ok((g2_high, g3_high))
    }
}

/// Tolerance at which the reduction comparison declares a match.
pub const REDUCE_MATCH_TOL: f64 = 1e-10;

/// One row of the α = 1/2 reduction comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReduceCheckRow {
    pub lambda: f64,
    pub q: f64,
    /// signed LHS of the general identity at α = 1/2
    pub lhs_general: f64,
    /// signed LHS of the reference identity
    pub lhs_reference: f64,
    pub lhs_abs_diff: f64,
    pub t2_bound: f64,
    pub g2_bound: f64,
    pub t2_diff: f64,
    pub t3_bound: f64,
    pub g3_bound: f64,
    pub t3_diff: f64,
    /// all three absolute differences within [`REDUCE_MATCH_TOL`]
    pub matches: bool,
}

/// Compares the α = 1/2 specialization of the identity and bounds against
/// the reference results over a (λ, q) grid. Disagreements are recorded in
/// the rows, never patched.
pub fn reduce_check(
    f: &TestFunction,
    iv: Interval,
    lambdas: &[f64],
    qs: &[f64],
    tol: f64,
) -> Result<Vec<ReduceCheckRow>> {
    let f2_abs_a = f.f2(iv.a()).abs();
    let f2_abs_b = f.f2(iv.b()).abs();
    let mut rows = Vec::with_capacity(lambdas.len() * qs.len());
    for &lambda in lambdas {
        let lhs_general = lhs_functional(f, iv, 0.5, lambda, tol)?;
        let lhs_reference = sarikaya_lhs(f, iv, lambda, tol)?;
        let lhs_abs_diff = (lhs_general.abs() - lhs_reference.abs()).abs();
        let t2 = bound_t2(f2_abs_a, f2_abs_b, iv, 0.5, lambda)?;
        for &q in qs {
            let (g2, g3) = sarikaya_bounds(f2_abs_a, f2_abs_b, iv, lambda, q)?;
            let t3 = bound_t3(f2_abs_a, f2_abs_b, iv, 0.5, lambda, q)?;
            let t2_diff = (t2 - g2).abs();
            let t3_diff = (t3 - g3).abs();
            rows.push(ReduceCheckRow {
                lambda,
                q,
                lhs_general,
                lhs_reference,
                lhs_abs_diff,
                t2_bound: t2,
                g2_bound: g2,
                t2_diff,
                t3_bound: t3,
                g3_bound: g3,
                t3_diff,
                matches: lhs_abs_diff <= REDUCE_MATCH_TOL
                    && t2_diff <= REDUCE_MATCH_TOL
                    && t3_diff <= REDUCE_MATCH_TOL,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::catalog_lookup;

    fn iv(a: f64, b: f64) -> Interval {
        Interval::new(a, b).unwrap()
    }

    fn unit() -> Interval {
        iv(0.0, 1.0)
    }

    #[test]
    fn t2_equality_case_midpoint_square() {
        let b = bound_t2(2.0, 2.0, unit(), 0.5, 0.0).unwrap();
        assert!((b - 1.0 / 12.0).abs() < 1e-15, "bound {b}");
    }

    #[test]
    fn t2_zero_for_affine() {
        assert_eq!(bound_t2(0.0, 0.0, unit(), 0.3, 0.8).unwrap(), 0.0);
    }

    #[test]
    fn t2_covers_trapezoid_lhs() {
        let b = bound_t2(2.0, 2.0, unit(), 0.5, 1.0).unwrap();
        assert!(b >= 1.0 / 6.0 - 1e-15, "bound {b}");
    }

    #[test]
    fn t3_at_q_one_is_exactly_t2() {
        for (alpha, lambda) in [(0.5, 0.0), (0.3, 0.7), (0.9, 0.2), (0.5, 1.0)] {
            let t2 = bound_t2(1.7, 0.3, unit(), alpha, lambda).unwrap();
            let t3 = bound_t3(1.7, 0.3, unit(), alpha, lambda, 1.0).unwrap();
            assert_eq!(t2.to_bits(), t3.to_bits());
        }
    }

    #[test]
    fn t3_collapses_for_constant_second_derivative() {
        // with F_a = F_b = c the inner sums collapse through γ₁+γ₂ = τ and
        // μ₁+μ₂ = z, leaving S·c·(τ+z) for every q
        let c = 2.0;
        for (alpha, lambda) in [(0.5, 0.25), (0.2, 0.9), (0.7, 0.6)] {
            let regime = classify_regime(alpha, lambda).unwrap();
            let (t1, t2, z1, z2) = tau_z_coeffs(alpha, lambda).unwrap();
            let tau = if regime.first_gamma_pair() { t1 } else { t2 };
            let z = if regime.first_mu_pair() { z1 } else { z2 };
            for q in [1.0, 1.5, 2.0, 4.0] {
                let b = bound_t3(c, c, unit(), alpha, lambda, q).unwrap();
                assert!(
                    (b - 0.5 * c * (tau + z)).abs() < 1e-14,
                    "q = {q} at ({alpha}, {lambda})"
                );
            }
        }
    }

    #[test]
    fn t3_slack_for_recip() {
        let f = catalog_lookup("recip").unwrap();
        let range = iv(1.0, 2.0);
        let lhs = lhs_functional(&f, range, 0.5, 1.0 / 3.0, 1e-12)
            .unwrap()
            .abs();
        let b = bound_t3(2.0, 0.25, range, 0.5, 1.0 / 3.0, 2.0).unwrap();
        assert!(b - lhs >= 0.0, "slack {}", b - lhs);
    }

    #[test]
    fn t4_equality_case_midpoint_square() {
        let b = bound_t4(2.0, 2.0, unit(), 0.5, 0.0, 2.0).unwrap();
        assert!((b - 1.0 / 12.0).abs() < 1e-12, "bound {b}");
    }

    #[test]
    fn t4_zero_for_affine() {
        assert_eq!(bound_t4(0.0, 0.0, unit(), 0.4, 0.6, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn t4_rejects_q_one() {
        assert!(matches!(
            bound_t4(1.0, 1.0, unit(), 0.5, 0.5, 1.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn t4_slack_for_log() {
        let f = catalog_lookup("log").unwrap();
        let range = iv(1.0, 2.0);
        let lhs = lhs_functional(&f, range, 0.5, 1.0 / 3.0, 1e-12)
            .unwrap()
            .abs();
        let b = bound_t4(1.0, 0.25, range, 0.5, 1.0 / 3.0, 3.0).unwrap();
        assert!(b - lhs >= 0.0, "slack {}", b - lhs);
    }

    #[test]
    fn verify_bound_equality_witness() {
        let f = catalog_lookup("square").unwrap();
        let params = Params::new(0.5, 0.0, 2.0).unwrap();
        let rep = verify_bound(&f, unit(), params, Theorem::T4).unwrap();
        assert!(rep.hypothesis_ok);
        assert!(rep.slack.abs() < 1e-12, "slack {}", rep.slack);
        assert!((rep.lhs_abs - 1.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn verify_bound_sweeps_recip() {
        let f = catalog_lookup("recip").unwrap();
        let params = Params::new(0.3, 0.7, 2.0).unwrap();
        for theorem in [Theorem::T2, Theorem::T3, Theorem::T4] {
            let rep = verify_bound(&f, iv(1.0, 2.0), params, theorem).unwrap();
            assert!(rep.hypothesis_ok);
            assert!(rep.slack >= -1e-10, "{theorem}: slack {}", rep.slack);
        }
    }

    #[test]
    fn verify_bound_reports_failed_hypothesis() {
        let f = TestFunction::new(
            "sin",
            (f64::NEG_INFINITY, f64::INFINITY),
            f64::sin,
            f64::cos,
            |x| -x.sin(),
        )
        .with_antiderivative(|x| -x.cos());
        let params = Params::new(0.5, 0.25, 2.0).unwrap();
        let rep = verify_bound(&f, iv(0.0, std::f64::consts::PI), params, Theorem::T3).unwrap();
        assert!(!rep.hypothesis_ok);
        assert!(rep.slack.is_finite());
    }

    #[test]
    fn g2_frozen_values() {
        let (low, _) = sarikaya_g2_branches(2.0, 2.0, unit(), 0.0).unwrap();
        assert!((low - 1.0 / 12.0).abs() < 1e-15, "g2(0) = {low}");
        let (_, high) = sarikaya_g2_branches(2.0, 2.0, unit(), 1.0).unwrap();
        assert!((high - 1.0 / 6.0).abs() < 1e-15, "g2(1) = {high}");
    }

    #[test]
    fn g2_branches_continuous_at_half() {
        for (fa, fb) in [(2.0, 2.0), (3.0, 0.5)] {
            let (low, high) = sarikaya_g2_branches(fa, fb, unit(), 0.5).unwrap();
            assert!((low - high).abs() < 1e-15, "{low} vs {high}");
        }
    }

    #[test]
    fn g3_branches_continuous_at_half() {
        for q in [1.0, 2.0, 3.0] {
            let (low, high) = sarikaya_g3_branches(3.0, 0.5, unit(), 0.5, q).unwrap();
            assert!((low - high).abs() < 1e-14, "q = {q}: {low} vs {high}");
        }
    }

    #[test]
    fn g3_at_q_one_matches_g2() {
        for lambda in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let (g2, g3) = sarikaya_bounds(3.0, 0.5, unit(), lambda, 1.0).unwrap();
            assert!((g2 - g3).abs() < 1e-14, "λ = {lambda}");
        }
    }

    #[test]
    fn reduction_bound_equalities_on_grid() {
        // asymmetric endpoint values catch any pairing swap
        let (fa, fb) = (2.0, 0.25);
        let range = iv(1.0, 2.0);
        for lambda in [0.0, 0.1, 0.25, 0.5, 0.6, 0.75, 0.9, 1.0] {
            let t2 = bound_t2(fa, fb, range, 0.5, lambda).unwrap();
            for q in [1.0, 1.5, 2.0, 5.0] {
                let (g2, g3) = sarikaya_bounds(fa, fb, range, lambda, q).unwrap();
                let t3 = bound_t3(fa, fb, range, 0.5, lambda, q).unwrap();
                assert!((t2 - g2).abs() < 1e-10, "t2 vs g2 at λ = {lambda}");
                assert!(
                    (t3 - g3).abs() < 1e-10,
                    "t3 vs g3 at (λ, q) = ({lambda}, {q})"
                );
            }
        }
    }

    #[test]
    fn reduction_lhs_signs_flip() {
        let f = catalog_lookup("recip").unwrap();
        let range = iv(1.0, 2.0);
        for lambda in [0.0, 0.3, 0.7, 1.0] {
            let general = lhs_functional(&f, range, 0.5, lambda, 1e-12).unwrap();
            let reference = sarikaya_lhs(&f, range, lambda, 1e-12).unwrap();
            assert!(
                (general + reference).abs() < 1e-13,
                "λ = {lambda}: {general} vs {reference}"
            );
        }
    }

    #[test]
    fn reduce_check_rows_complete_and_matching() {
        let f = catalog_lookup("recip").unwrap();
        let rows = reduce_check(
            &f,
            iv(1.0, 2.0),
            &[0.0, 0.25, 0.5, 0.75, 1.0],
            &[1.0, 2.0],
            1e-12,
        )
        .unwrap();
        assert_eq!(rows.len(), 10);
        for row in &rows {
            assert!(
                row.matches,
                "mismatch at (λ, q) = ({}, {})",
                row.lambda, row.q
            );
        }
    }

    #[test]
    fn scaling_covariance_in_f() {
        // replacing f by c·f multiplies |LHS| and every bound by exactly c
        let c = 3.5;
        let f = catalog_lookup("exp").unwrap();
        let scaled = TestFunction::new(
            "scaled-exp",
            (f64::NEG_INFINITY, f64::INFINITY),
            move |x| c * x.exp(),
            move |x| c * x.exp(),
            move |x| c * x.exp(),
        )
        .with_antiderivative(move |x| c * x.exp());
        let range = iv(0.0, 1.0);
        for (alpha, lambda, q) in [(0.5, 0.25, 2.0), (0.3, 0.8, 1.5)] {
            let lhs = lhs_functional(&f, range, alpha, lambda, 1e-12).unwrap();
            let lhs_c = lhs_functional(&scaled, range, alpha, lambda, 1e-12).unwrap();
            assert!((lhs_c - c * lhs).abs() < 1e-12 * c * lhs.abs().max(1.0));
            let (fa, fb) = (f.f2(0.0).abs(), f.f2(1.0).abs());
            for (b, b_c) in [
                (
                    bound_t2(fa, fb, range, alpha, lambda).unwrap(),
                    bound_t2(c * fa, c * fb, range, alpha, lambda).unwrap(),
                ),
                (
                    bound_t4(fa, fb, range, alpha, lambda, q).unwrap(),
                    bound_t4(c * fa, c * fb, range, alpha, lambda, q).unwrap(),
                ),
            ] {
                assert!((b_c - c * b).abs() < 1e-13 * b.max(1.0));
            }
        }
    }

    #[test]
    fn interval_scaling_covariance() {
        // stretch [a, b] to [a, a + s(b−a)] with f̃(x) = f(a + (x−a)/s):
        // f̃″ scales by s⁻², the (b−a)² prefactor by s², so |LHS| and every
        // bound are unchanged
        let f = catalog_lookup("exp").unwrap();
        let (a, b) = (0.0, 1.0);
        for s in [0.5, 2.0] {
            let stretched = TestFunction::new(
                "stretched-exp",
                (f64::NEG_INFINITY, f64::INFINITY),
                move |x| (a + (x - a) / s).exp(),
                move |x| (a + (x - a) / s).exp() / s,
                move |x| (a + (x - a) / s).exp() / (s * s),
            )
            .with_antiderivative(move |x| s * (a + (x - a) / s).exp());
            let orig = iv(a, b);
            let wide = iv(a, a + s * (b - a));
            for (alpha, lambda) in [(0.5, 0.25), (0.2, 0.9)] {
                let lhs = lhs_functional(&f, orig, alpha, lambda, 1e-12).unwrap();
                let lhs_s = lhs_functional(&stretched, wide, alpha, lambda, 1e-12).unwrap();
                assert!((lhs - lhs_s).abs() < 1e-10, "lhs {lhs} vs {lhs_s}");
                let b0 = bound_t3(f.f2(a).abs(), f.f2(b).abs(), orig, alpha, lambda, 2.0).unwrap();
                let b1 = bound_t3(
                    stretched.f2(wide.a()).abs(),
                    stretched.f2(wide.b()).abs(),
                    wide,
                    alpha,
                    lambda,
                    2.0,
                )
                .unwrap();
                assert!((b0 - b1).abs() < 1e-10, "bound {b0} vs {b1}");
            }
        }
    }
}
