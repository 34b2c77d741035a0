//! Regime classification and the closed-form coefficients of the three bound
//! theorems.
//!
//! Every coefficient here equals a moment of the kernel weight over one of
//! the two kernel segments and is cross-checked against the integration
//! oracle in the test suite:
//!
//! - γ-pair: ∫₀^{1−α} |2αλ−t| t² dt and ∫₀^{1−α} |2αλ−t| t(1−t) dt
//! - μ-pair: ∫_{1−α}^1 |1−2λ(1−α)−t| t(1−t) dt and … (1−t)² dt
//! - τ, z:   ∫₀^{1−α} t|2αλ−t| dt and ∫_{1−α}^1 (1−t)|1−2λ(1−α)−t| dt
//! - φ, ψ:   ∫₀^{1−α} |2αλ−t|^p dt and ∫_{1−α}^1 |1−2λ(1−α)−t|^p dt
//! - ε, β:   ∫₀^{1−α} t^{q+1} dt, ∫₀^{1−α} t^q(1−t) dt and their mirrors

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numint;

/// The (α, λ, q) parameter tuple with the Hölder conjugate p derived.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Params {
    pub alpha: f64,
    pub lambda: f64,
    pub q: f64,
    /// Conjugate exponent q/(q−1); absent at q = 1.
    pub p: Option<f64>,
}

impl Params {
    pub fn new(alpha: f64, lambda: f64, q: f64) -> Result<Self> {
        check_alpha_lambda(alpha, lambda)?;
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::Parameter(format!("q must be ≥ 1, got {q}")));
        }
        let p = (q > 1.0).then(|| q / (q - 1.0));
        Ok(Self {
            alpha,
            lambda,
            q,
            p,
        })
    }
}

pub(crate) fn check_alpha_lambda(alpha: f64, lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Parameter(format!(
            "alpha must be in [0, 1], got {alpha}"
        )));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Parameter(format!(
            "lambda must be in [0, 1], got {lambda}"
        )));
    }
    Ok(())
}

/// The four piecewise cases of the bound theorems, keyed by the ordering of
/// 2αλ, 1−α and 1−2λ(1−α).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RegimeCase {
    C1,
    C2,
    C3,
    C4,
}

impl std::fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Regime {
    pub case_id: RegimeCase,
    /// 2αλ
    pub c_left: f64,
    /// 1−α
    pub c_mid: f64,
    /// 1−2λ(1−α)
    pub c_right: f64,
}

impl Regime {
    /// True when the first γ-pair (γ₁, γ₂) and τ₁ apply (2αλ ≤ 1−α).
    pub fn first_gamma_pair(&self) -> bool {
        matches!(self.case_id, RegimeCase::C1 | RegimeCase::C2)
    }

    /// True when the first μ-pair (μ₁, μ₂) and z₁ apply (1−α ≤ 1−2λ(1−α)).
    pub fn first_mu_pair(&self) -> bool {
        matches!(self.case_id, RegimeCase::C1 | RegimeCase::C3)
    }
}

/// Classifies (α, λ) into exactly one of C1–C4.
///
/// Boundary ties resolve with the fixed precedence C1 > C2 > C3 > C4; the
/// coefficient pairs are continuous across the boundaries, so the choice is
/// value-irrelevant.
pub fn classify_regime(alpha: f64, lambda: f64) -> Result<Regime> {
    check_alpha_lambda(alpha, lambda)?;
    let c_left = 2.0 * alpha * lambda;
    let c_mid = 1.0 - alpha;
    let c_right = 1.0 - 2.0 * lambda * (1.0 - alpha);
    let case_id = if c_left <= c_mid {
        if c_mid <= c_right {
            RegimeCase::C1
        } else {
            RegimeCase::C2
        }
    } else if c_mid <= c_right {
        RegimeCase::C3
    } else {
        RegimeCase::C4
    };
    Ok(Regime {
        case_id,
        c_left,
        c_mid,
        c_right,
    })
}

/// The γ coefficients. (γ₁, γ₂) realize the first-segment moments when
/// 2αλ ≤ 1−α, (γ₃, γ₄) when 2αλ ≥ 1−α.
pub fn gamma_coeffs(alpha: f64, lambda: f64) -> Result<(f64, f64, f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    let al = alpha * lambda;
    let u = 1.0 - alpha;
    let g1 = (8.0 / 3.0) * al.powi(4) + u.powi(3) * (u / 4.0 - 2.0 * al / 3.0);
    let g2 = (8.0 / 3.0) * al.powi(3) * (1.0 - al)
        + u.powi(2) * (u / 3.0 - al - u.powi(2) / 4.0 + 2.0 * al * u / 3.0);
    let g3 = 2.0 * al * u.powi(3) / 3.0 - u.powi(4) / 4.0;
    let g4 = u.powi(2) * (al - u / 3.0 - 2.0 * al * u / 3.0 + u.powi(2) / 4.0);
    Ok((g1, g2, g3, g4))
}

/// The μ coefficients. (μ₁, μ₂) realize the second-segment moments when
/// 1−α ≤ 1−2λ(1−α), (μ₃, μ₄) when 1−α ≥ 1−2λ(1−α).
///
/// The shared bracket carries α²(4λ² − 4λ + 3); anything else fails the
/// defining integral ∫_{1−α}^1 |1−2λ(1−α)−t| (1−t)² dt.
pub fn mu_coeffs(alpha: f64, lambda: f64) -> Result<(f64, f64, f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    let u = 1.0 - alpha;
    let d2 = (alpha - 2.0 * lambda * u).powi(2);
    let odd = (4.0 / 3.0) * u.powi(3) * lambda.powi(3) * (1.0 - lambda * u);
    let odd_shift =
        (d2 / 12.0) * (alpha * (3.0 * alpha - 4.0) - 4.0 * lambda * u.powi(2) * (1.0 - lambda));
    let even = (4.0 / 3.0) * u.powi(4) * lambda.powi(4);
    let even_shift = (d2 / 12.0)
        * (alpha.powi(2) * (4.0 * lambda.powi(2) - 4.0 * lambda + 3.0)
            + 4.0 * alpha * lambda * (1.0 - 2.0 * lambda)
            + 4.0 * lambda.powi(2));
    Ok((
        odd - odd_shift,
        even + even_shift,
        odd + odd_shift,
        even - even_shift,
    ))
}

/// The power-mean prefactors. τ is selected by the sign of 1−α−2αλ, z by the
/// sign of α−2λ(1−α).
pub fn tau_z_coeffs(alpha: f64, lambda: f64) -> Result<(f64, f64, f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    let al = alpha * lambda;
    let u = 1.0 - alpha;
    let tau1 = (8.0 / 3.0) * al.powi(3) + u.powi(2) * (u / 3.0 - al);
    let tau2 = u.powi(2) * (al - u / 3.0);
    let shift = (alpha - 2.0 * lambda * u).powi(2) * (alpha * (1.0 - lambda) + lambda) / 3.0;
    let z_base = (4.0 / 3.0) * u.powi(3) * lambda.powi(3);
    Ok((tau1, tau2, z_base + shift, z_base - shift))
}

/// The Hölder prefactors φ, ψ and the endpoint moments ε.
///
/// φ and ψ are the piecewise-exact values of ∫|2αλ−t|^p dt and
/// ∫|1−2λ(1−α)−t|^p dt, split at the interior sign change; absolute-value
/// bases keep every entry finite for non-integer p, and the entry selected by
/// the active branch equals its integral.
pub fn phi_psi_eps(
    alpha: f64,
    lambda: f64,
    p: f64,
    q: f64,
) -> Result<(f64, f64, f64, f64, f64, f64)> {
    check_alpha_lambda(alpha, lambda)?;
    if !(q > 1.0) {
        return Err(Error::Unsupported(format!(
            "Hölder path needs conjugate exponents, so q > 1; got q = {q}"
        )));
    }
    if !p.is_finite() || (p * q - p - q).abs() > 1e-9 * (p * q).abs().max(1.0) {
        return Err(Error::Parameter(format!(
            "p = {p} is not conjugate to q = {q}"
        )));
    }
    let u = 1.0 - alpha;
    let c = 2.0 * alpha * lambda;
    let w = 2.0 * lambda * u;
    let e = p + 1.0;

    let phi1 = (c.powf(e) + (u - c).abs().powf(e)) / e;
    let phi2 = (c.powf(e) - (c - u).abs().powf(e)) / e;
    let psi1 = (w.powf(e) + (alpha - w).abs().powf(e)) / e;
    let psi2 = (w.powf(e) - (w - alpha).abs().powf(e)) / e;
    for v in [phi1, phi2, psi1, psi2] {
        if !v.is_finite() {
            return Err(Error::Parameter(format!(
                "Hölder prefactor overflowed at p = {p}"
            )));
        }
    }

    let eps1 = u.powf(q + 2.0) / (q + 2.0);
    let eps2 = alpha.powf(q + 2.0) / (q + 2.0);
    Ok((phi1, phi2, psi1, psi2, eps1, eps2))
}

/// Incomplete beta function β(x; a, b) = ∫₀^x t^{a−1}(1−t)^{b−1} dt.
///
/// b = 2 uses the closed form x^a/a − x^{a+1}/(a+1); other shapes fall back
/// to the oracle.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Parameter(format!(
            "beta argument x must be in [0, 1], got {x}"
        )));
    }
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Parameter(format!(
            "beta shape parameters must be positive, got a = {a}, b = {b}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if b == 2.0 {
        return Ok(x.powf(a) / a - x.powf(a + 1.0) / (a + 1.0));
    }
    let iv = crate::funcspace::Interval::new(0.0, x)?;
    let r = numint::integrate(
        |t| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0),
        iv,
        numint::DEFAULT_TOL,
    )?;
    Ok(r.value)
}

/// All closed-form coefficients for one (α, λ, q), flat for serialization.
/// φ/ψ are absent at q = 1 where no conjugate exponent exists.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoefficientSet {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub gamma4: f64,
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub mu4: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub z1: f64,
    pub z2: f64,
    pub phi1: Option<f64>,
    pub phi2: Option<f64>,
    pub psi1: Option<f64>,
    pub psi2: Option<f64>,
    pub eps1: f64,
    pub eps2: f64,
    pub beta_a: f64,
    pub beta_b: f64,
}

/// Assembles the full coefficient set for one parameter tuple.
pub fn coefficient_set(params: &Params) -> Result<CoefficientSet> {
    let (alpha, lambda, q) = (params.alpha, params.lambda, params.q);
    let (gamma1, gamma2, gamma3, gamma4) = gamma_coeffs(alpha, lambda)?;
    let (mu1, mu2, mu3, mu4) = mu_coeffs(alpha, lambda)?;
    let (tau1, tau2, z1, z2) = tau_z_coeffs(alpha, lambda)?;
    let (phi1, phi2, psi1, psi2) = match params.p {
        Some(p) => {
            let (a, b, c, d, _, _) = phi_psi_eps(alpha, lambda, p, q)?;
            (Some(a), Some(b), Some(c), Some(d))
        }
        None => (None, None, None, None),
    };
    let u = 1.0 - alpha;
    let eps1 = u.powf(q + 2.0) / (q + 2.0);
    let eps2 = alpha.powf(q + 2.0) / (q + 2.0);
    let beta_a = incomplete_beta(u, q + 1.0, 2.0)?;
    let beta_b = incomplete_beta(alpha, q + 1.0, 2.0)?;
    Ok(CoefficientSet {
        gamma1,
        gamma2,
        gamma3,
        gamma4,
        mu1,
        mu2,
        mu3,
        mu4,
        tau1,
        tau2,
        z1,
        z2,
        phi1,
        phi2,
        psi1,
        psi2,
        eps1,
        eps2,
        beta_a,
        beta_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::Interval;

    #[test]
    fn params_conjugate_exponent() {
        let p = Params::new(0.5, 0.3, 2.0).unwrap();
        assert!((1.0 / p.p.unwrap() + 1.0 / p.q - 1.0).abs() <= 1e-15);
        let p = Params::new(0.5, 0.3, 1.0).unwrap();
        assert!(p.p.is_none());
        assert!(Params::new(1.2, 0.3, 2.0).is_err());
        assert!(Params::new(0.5, -0.1, 2.0).is_err());
        assert!(Params::new(0.5, 0.5, 0.9).is_err());
    }

    #[test]
    fn regime_examples() {
        assert_eq!(
            classify_regime(0.5, 1.0 / 3.0).unwrap().case_id,
            RegimeCase::C1
        );
        assert_eq!(classify_regime(0.5, 1.0).unwrap().case_id, RegimeCase::C4);
        assert_eq!(classify_regime(1.0, 0.5).unwrap().case_id, RegimeCase::C3);
    }

    #[test]
    fn regime_tie_precedence() {
        // all three comparands equal at (0, 0): precedence picks C1
        assert_eq!(classify_regime(0.0, 0.0).unwrap().case_id, RegimeCase::C1);
    }

    #[test]
    fn regime_partition_total_on_grid() {
        for i in 0..=100 {
            for j in 0..=100 {
                let alpha = i as f64 / 100.0;
                let lambda = j as f64 / 100.0;
                let r = classify_regime(alpha, lambda).unwrap();
                // the classified case's defining inequality must hold
                let ok = match r.case_id {
                    RegimeCase::C1 => r.c_left <= r.c_mid && r.c_mid <= r.c_right,
                    RegimeCase::C2 => r.c_mid >= r.c_left.max(r.c_right),
                    RegimeCase::C3 => r.c_mid <= r.c_left.min(r.c_right),
                    RegimeCase::C4 => r.c_right <= r.c_mid && r.c_mid <= r.c_left,
                };
                assert!(ok, "case {:?} at ({alpha}, {lambda})", r.case_id);
            }
        }
    }

    #[test]
    fn gamma_frozen_values() {
        let (g1, g2, _, _) = gamma_coeffs(0.5, 0.0).unwrap();
        assert!((g1 - 1.0 / 64.0).abs() < 1e-16);
        assert!((g2 - 5.0 / 192.0).abs() < 1e-16);
        // zero-length first segment at alpha = 1
        let (_, _, g3, g4) = gamma_coeffs(1.0, 0.7).unwrap();
        assert_eq!(g3, 0.0);
        assert_eq!(g4, 0.0);
    }

    #[test]
    fn gamma_pair_sums_to_tau() {
        let (g1, g2, _, _) = gamma_coeffs(0.5, 1.0 / 3.0).unwrap();
        let (t1, _, _, _) = tau_z_coeffs(0.5, 1.0 / 3.0).unwrap();
        assert!((g1 + g2 - 1.0 / 81.0).abs() < 1e-16);
        assert!((t1 - 1.0 / 81.0).abs() < 1e-16);
    }

    #[test]
    fn mu_frozen_values() {
        let (m1, m2, _, _) = mu_coeffs(0.5, 0.0).unwrap();
        assert!((m1 - 5.0 / 192.0).abs() < 1e-16);
        assert!((m2 - 1.0 / 64.0).abs() < 1e-16);
    }

    #[test]
    fn mu_zero_length_segment_at_alpha_zero() {
        let (_, _, m3, m4) = mu_coeffs(0.0, 0.4).unwrap();
        let (_, _, _, z2) = tau_z_coeffs(0.0, 0.4).unwrap();
        // the defining integrals over [1, 1] are zero; the closed forms land
        // there up to rounding
        assert!((m3 + m4 - z2).abs() < 1e-15);
        assert!(z2.abs() < 1e-15);
        assert!((m3 + m4).abs() < 1e-15);
    }

    #[test]
    fn mu_pair_sums_to_z_at_half_half() {
        let (_, _, m3, m4) = mu_coeffs(0.5, 0.5).unwrap();
        let (_, _, _, z2) = tau_z_coeffs(0.5, 0.5).unwrap();
        assert!((m3 + m4 - z2).abs() < 1e-12);
        assert!((z2 - 1.0 / 48.0).abs() < 1e-16);
        let oracle = numint::integrate_with_breakpoints(
            |t| (1.0 - t) * (0.5 - t).abs(),
            Interval::new(0.5, 1.0).unwrap(),
            &[],
            1e-12,
        )
        .unwrap();
        assert!((oracle.value - z2).abs() < 1e-12);
    }

    #[test]
    fn tau_z_frozen_values() {
        let (t1, _, z1, _) = tau_z_coeffs(0.5, 0.0).unwrap();
        assert!((t1 - 1.0 / 24.0).abs() < 1e-16);
        // z at (1/2, 0) is ∫_{1/2}^1 (1−t)|1−t| dt = 1/24, confirmed by the oracle
        let oracle = numint::integrate(
            |t| (1.0 - t) * (1.0 - t).abs(),
            Interval::new(0.5, 1.0).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!((z1 - 1.0 / 24.0).abs() < 1e-16);
        assert!((oracle.value - z1).abs() < 1e-12);
        let (_, t2, _, _) = tau_z_coeffs(1.0, 0.9).unwrap();
        assert_eq!(t2, 0.0);
    }

    #[test]
    fn boundary_continuity_of_pairs() {
        // along 2αλ = 1−α the two γ-branches agree, same for τ
        for alpha in [0.4, 0.5, 0.6, 0.8] {
            let lambda = (1.0 - alpha) / (2.0 * alpha);
            if lambda > 1.0 {
                continue;
            }
            let (g1, g2, g3, g4) = gamma_coeffs(alpha, lambda).unwrap();
            let (t1, t2, _, _) = tau_z_coeffs(alpha, lambda).unwrap();
            assert!((g1 - g3).abs() < 1e-12 && (g2 - g4).abs() < 1e-12);
            assert!((t1 - t2).abs() < 1e-12);
        }
        // along α = 2λ(1−α) the two μ-branches agree, same for z
        for alpha in [0.2, 0.4, 0.5, 0.6] {
            let lambda = alpha / (2.0 * (1.0 - alpha));
            if lambda > 1.0 {
                continue;
            }
            let (m1, m2, m3, m4) = mu_coeffs(alpha, lambda).unwrap();
            let (_, _, z1, z2) = tau_z_coeffs(alpha, lambda).unwrap();
            assert!((m1 - m3).abs() < 1e-12 && (m2 - m4).abs() < 1e-12);
            assert!((z1 - z2).abs() < 1e-12);
        }
    }

    #[test]
    fn phi_frozen_values() {
        // ∫₀^{1/2} t² dt = 1/24; halved and rooted it matches the midpoint
        // proposition factor (1/96)^{1/2}
        let (phi1, _, psi1, _, e1, e2) = phi_psi_eps(0.5, 0.0, 2.0, 2.0).unwrap();
        assert!((phi1 - 1.0 / 24.0).abs() < 1e-16);
        assert!((psi1 - 1.0 / 24.0).abs() < 1e-16);
        assert!((0.5 * phi1.sqrt() - (1.0f64 / 96.0).sqrt()).abs() < 1e-16);
        assert!((e1 - 1.0 / 64.0).abs() < 1e-16);
        assert!((e2 - 1.0 / 64.0).abs() < 1e-16);
        // ∫₀^{1/2} |1−t|² dt = 7/24 at (1/2, 1); matches (7/96)^{1/2} halved
        let (_, phi2, _, _, _, _) = phi_psi_eps(0.5, 1.0, 2.0, 2.0).unwrap();
        assert!((phi2 - 7.0 / 24.0).abs() < 1e-15);
        assert!((0.5 * phi2.sqrt() - (7.0f64 / 96.0).sqrt()).abs() < 1e-16);
    }

    #[test]
    fn phi_psi_reject_q_at_or_below_one() {
        assert!(matches!(
            phi_psi_eps(0.5, 0.5, f64::INFINITY, 1.0),
            Err(Error::Unsupported(_))
        ));
        assert!(phi_psi_eps(0.5, 0.5, 3.0, 2.0).is_err()); // non-conjugate pair
    }

    #[test]
    fn incomplete_beta_frozen_values() {
        assert!((incomplete_beta(0.5, 3.0, 2.0).unwrap() - 5.0 / 192.0).abs() < 1e-16);
        for q in [1.0, 2.0, 3.5] {
            let full = incomplete_beta(1.0, q + 1.0, 2.0).unwrap();
            assert!((full - 1.0 / ((q + 1.0) * (q + 2.0))).abs() < 1e-15);
        }
        assert_eq!(incomplete_beta(0.0, 4.0, 7.0).unwrap(), 0.0);
        assert!(incomplete_beta(1.5, 2.0, 2.0).is_err());
        assert!(incomplete_beta(0.5, -1.0, 2.0).is_err());
    }

    #[test]
    fn incomplete_beta_generic_shape_matches_oracle() {
        let v = incomplete_beta(0.7, 2.5, 3.5).unwrap();
        let oracle = numint::integrate(
            |t| t.powf(1.5) * (1.0 - t).powf(2.5),
            Interval::new(0.0, 0.7).unwrap(),
            1e-12,
        )
        .unwrap();
        assert!((v - oracle.value).abs() < 1e-12);
    }

    #[test]
    fn coefficient_set_is_complete() {
        let params = Params::new(0.5, 1.0 / 3.0, 2.0).unwrap();
        let set = coefficient_set(&params).unwrap();
        assert!(set.phi1.is_some());
        assert!((set.beta_a - 5.0 / 192.0).abs() < 1e-16);
        let params = Params::new(0.5, 1.0 / 3.0, 1.0).unwrap();
        let set = coefficient_set(&params).unwrap();
        assert!(set.phi1.is_none() && set.psi2.is_none());
    }
}
