//! Special means of two positive reals and the proposition families bounding
//! differences of their transforms.
//!
//! The three families come from applying the named proposition bounds to
//! f(x) = 1/x, f(x) = ln x and f(x) = x^n on [a, b]: the rule value and the
//! mean of f both collapse to classical means, e.g. for f = 1/x the midpoint
//! value is A⁻¹ and the mean of f is L⁻¹.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrules::RuleKind;

/// The classical two-argument means.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MeanKind {
    #[serde(rename = "A")]
    Arithmetic,
    #[serde(rename = "G")]
    Geometric,
    #[serde(rename = "H")]
    Harmonic,
    #[serde(rename = "L")]
    Logarithmic,
    #[serde(rename = "I")]
    Identric,
    #[serde(rename = "Lp")]
    PowerLogarithmic,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct MeanValue {
    pub kind: MeanKind,
    pub a: f64,
    pub b: f64,
    pub order: Option<f64>,
    pub value: f64,
}

/// Evaluates one special mean. `order` is consumed only by the
/// p-logarithmic mean and must avoid {−1, 0}; a = b returns a for every kind.
pub fn special_mean(kind: MeanKind, a: f64, b: f64, order: Option<f64>) -> Result<MeanValue> {
    if !(a > 0.0) || !(b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "means need positive finite arguments, got ({a}, {b})"
        )));
    }
    if kind == MeanKind::PowerLogarithmic {
        match order {
            None => {
                return Err(Error::Parameter(
                    "the p-logarithmic mean needs an order".into(),
                ))
            }
            Some(p) if p == -1.0 || p == 0.0 || !p.is_finite() => {
                return Err(Error::Parameter(format!(
                    "p-logarithmic order must avoid -1 and 0, got {p}"
                )))
            }
            Some(_) => {}
        }
    }
    let value = if a == b {
        a
    } else {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let gap = hi - lo;
        match kind {
            MeanKind::Arithmetic => 0.5 * (a + b),
            MeanKind::Geometric => (a * b).sqrt(),
            MeanKind::Harmonic => 2.0 * a * b / (a + b),
            // (b−a)/(ln b − ln a) via ln_1p, which keeps full precision for
            // nearby arguments
            MeanKind::Logarithmic => gap / (gap / lo).ln_1p(),
            // log-space evaluation avoids overflow of b^b; the exponent
            // (b ln b − a ln a)/(b−a) is rearranged to
            // ln b + (a/(b−a)) ln(b/a), again through ln_1p
            MeanKind::Identric => (hi.ln() + (lo / gap) * (gap / lo).ln_1p() - 1.0).exp(),
            MeanKind::PowerLogarithmic => {
                let p = order.unwrap();
                ((b.powf(p + 1.0) - a.powf(p + 1.0)) / ((p + 1.0) * (b - a))).powf(1.0 / p)
            }
        }
    };
    Ok(MeanValue {
        kind,
        a,
        b,
        order: if kind == MeanKind::PowerLogarithmic {
            order
        } else {
            None
        },
        value,
    })
}

fn mean(kind: MeanKind, a: f64, b: f64) -> Result<f64> {
    Ok(special_mean(kind, a, b, None)?.value)
}

/// Checks the classical chain H < G < L < I < A. Strict for separated
/// arguments; when all five means sit within 1e−9·A of each other the
/// degenerate (non-strict) mode applies and the chain counts as holding.
pub fn mean_chain_check(a: f64, b: f64) -> Result<bool> {
    if !(0.0 < a && a < b) {
        return Err(Error::Parameter(format!("need 0 < a < b, got ({a}, {b})")));
    }
    let h = mean(MeanKind::Harmonic, a, b)?;
    let g = mean(MeanKind::Geometric, a, b)?;
    let l = mean(MeanKind::Logarithmic, a, b)?;
    let i = mean(MeanKind::Identric, a, b)?;
    let am = mean(MeanKind::Arithmetic, a, b)?;
    if am - h <= 1e-9 * am {
        return Ok(true);
    }
    Ok(h < g && g < l && l < i && i < am)
}

/// The three §-style proposition families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeanFamily {
    Recip,
    Log,
    PowN,
}

impl std::fmt::Display for MeanFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeanFamily::Recip => write!(f, "recip"),
            MeanFamily::Log => write!(f, "log"),
            MeanFamily::PowN => write!(f, "pow_n"),
        }
    }
}

impl std::str::FromStr for MeanFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "recip" => Ok(MeanFamily::Recip),
            "log" => Ok(MeanFamily::Log),
            "pow_n" => Ok(MeanFamily::PowN),
            other => Err(Error::Parameter(format!(
                "family must be recip, log or pow_n; got `{other}`"
            ))),
        }
    }
}

/// One evaluated mean inequality.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MeansReport {
    pub family: MeanFamily,
    pub variant: RuleKind,
    pub a: f64,
    pub b: f64,
    pub q: f64,
    pub n: Option<u32>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Σ_{i=1}^{2} [ r^{i−1} X_b + r^{2−i} X_a ]^{1/q} with r = (q+3)/(q+1).
fn sum_bracket(x_a: f64, x_b: f64, q: f64) -> f64 {
    let r = (q + 3.0) / (q + 1.0);
    (x_b + r * x_a).powf(1.0 / q) + (r * x_b + x_a).powf(1.0 / q)
}

/// Evaluates one printed mean inequality: the closed-form left side and the
/// proposition right side, with slack = rhs − lhs.
///
/// The Simpson-variant prefactor carries 2^{p+1}+1 to stay equal to the
/// proposition bound it derives from (see `quadrules::proposition_bound`).
pub fn mean_inequality(
    family: MeanFamily,
    variant: RuleKind,
    a: f64,
    b: f64,
    q: f64,
    n: Option<u32>,
) -> Result<MeansReport> {
    if !(0.0 < a && a < b) || !b.is_finite() {
        return Err(Error::Parameter(format!("need 0 < a < b, got ({a}, {b})")));
    }
    if !(q > 1.0) {
        return Err(Error::Unsupported(format!(
            "the proposition right side inherits conjugate exponents, so q > 1; got {q}"
        )));
    }
    let n_val = match (family, n) {
        (MeanFamily::PowN, Some(n)) if n > 2 => Some(n),
        (MeanFamily::PowN, Some(n)) => {
            return Err(Error::Parameter(format!(
                "the power family needs an integer n > 2, got {n}"
            )))
        }
        (MeanFamily::PowN, None) => {
            return Err(Error::Parameter("the power family needs n".into()))
        }
        (_, Some(_)) => {
            return Err(Error::Parameter(
                "n is only meaningful for the pow_n family".into(),
            ))
        }
        (_, None) => None,
    };

    let p = q / (q - 1.0);
    let am = mean(MeanKind::Arithmetic, a, b)?;
    let hm = mean(MeanKind::Harmonic, a, b)?;
    let gm = mean(MeanKind::Geometric, a, b)?;
    let lm = mean(MeanKind::Logarithmic, a, b)?;
    let im = mean(MeanKind::Identric, a, b)?;

    let lhs = match (family, variant) {
        (MeanFamily::Recip, RuleKind::Midpoint) => (am.recip() - lm.recip()).abs(),
        (MeanFamily::Recip, RuleKind::Trapezoid) => (hm.recip() - lm.recip()).abs(),
        (MeanFamily::Recip, RuleKind::Simpson) => {
            (hm.recip() / 3.0 + 2.0 * am.recip() / 3.0 - lm.recip()).abs()
        }
        (MeanFamily::Log, RuleKind::Midpoint) => (am.ln() - im.ln()).abs(),
        (MeanFamily::Log, RuleKind::Trapezoid) => (gm.ln() - im.ln()).abs(),
        (MeanFamily::Log, RuleKind::Simpson) => {
            (gm.ln() / 3.0 + 2.0 * am.ln() / 3.0 - im.ln()).abs()
        }
        (MeanFamily::PowN, _) => {
            let n = n_val.unwrap();
            // Lₙⁿ = (b^{n+1} − a^{n+1})/((n+1)(b−a)) = Σ_{k=0}^{n} aᵏ b^{n−k}/(n+1),
            // the power-sum form staying exact for nearby arguments
            let ln_n = (0..=n)
                .map(|k| a.powi(k as i32) * b.powi((n - k) as i32))
                .sum::<f64>()
                / f64::from(n + 1);
            let mid_n = am.powi(n as i32);
            let trap_n = 0.5 * (a.powi(n as i32) + b.powi(n as i32));
            match variant {
                RuleKind::Midpoint => (mid_n - ln_n).abs(),
                RuleKind::Trapezoid => (trap_n - ln_n).abs(),
                RuleKind::Simpson => (trap_n / 3.0 + 2.0 * mid_n / 3.0 - ln_n).abs(),
            }
        }
    };

    let variant_factor = match variant {
        RuleKind::Midpoint => (1.0 / (p + 1.0)).powf(1.0 / p),
        RuleKind::Trapezoid => ((2f64.powf(p + 1.0) - 1.0) / (p + 1.0)).powf(1.0 / p),
        RuleKind::Simpson => ((2f64.powf(p + 1.0) + 1.0) / (3.0 * (p + 1.0))).powf(1.0 / p),
    };
    let base = match variant {
        RuleKind::Midpoint | RuleKind::Trapezoid => 1.0 / 8.0,
        RuleKind::Simpson => 1.0 / 24.0,
    };
    let (family_scale, x_a, x_b) = match family {
        MeanFamily::Recip => (1.0, a.powf(-3.0 * q), b.powf(-3.0 * q)),
        MeanFamily::Log => (0.5, a.powf(-2.0 * q), b.powf(-2.0 * q)),
        MeanFamily::PowN => {
            let nf = f64::from(n_val.unwrap());
            (
                nf * (nf - 1.0) / 2.0,
                a.powf((nf - 2.0) * q),
                b.powf((nf - 2.0) * q),
            )
        }
    };
    let cq = (1.0 / (2.0 * (q + 2.0))).powf(1.0 / q);
    let rhs =
        family_scale * base * (b - a).powi(2) * variant_factor * cq * sum_bracket(x_a, x_b, q);

    Ok(MeansReport {
        family,
        variant,
        a,
        b,
        q,
        n: n_val,
        lhs,
        rhs,
        slack: rhs - lhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(kind: MeanKind, a: f64, b: f64) -> f64 {
        special_mean(kind, a, b, None).unwrap().value
    }

    #[test]
    fn definitional_values() {
        assert_eq!(value(MeanKind::Arithmetic, 1.0, 2.0), 1.5);
        assert!((value(MeanKind::Harmonic, 1.0, 2.0) - 4.0 / 3.0).abs() < 1e-15);
        assert!((value(MeanKind::Geometric, 1.0, 2.0) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    #[allow(clippy::approx_constant)] // frozen six-digit reference value
    fn logarithmic_mean_value() {
        let l = value(MeanKind::Logarithmic, 1.0, 2.0);
        assert!((l - 1.0 / 2f64.ln()).abs() < 1e-15);
        assert!((l - 1.442695).abs() < 1e-6);
    }

    #[test]
    fn identric_mean_value() {
        let i = value(MeanKind::Identric, 1.0, 2.0);
        assert!((i - 4.0 / std::f64::consts::E).abs() < 1e-15);
        assert!((i - 1.471518).abs() < 1e-6);
    }

    #[test]
    fn identric_stays_finite_for_large_arguments() {
        let i = special_mean(MeanKind::Identric, 500.0, 800.0, None)
            .unwrap()
            .value;
        assert!(i.is_finite() && 500.0 < i && i < 800.0);
    }

    #[test]
    fn power_logarithmic_matches_power_mean_of_f() {
        // L_n^n is the mean of x^n over [a, b]
        let (a, b) = (1.0, 2.0);
        let l3 = special_mean(MeanKind::PowerLogarithmic, a, b, Some(3.0))
            .unwrap()
            .value;
        assert!((l3.powi(3) - (b.powi(4) - a.powi(4)) / (4.0 * (b - a))).abs() < 1e-14);
    }

    #[test]
    fn degenerate_arguments_return_a() {
        for kind in [
            MeanKind::Arithmetic,
            MeanKind::Geometric,
            MeanKind::Harmonic,
            MeanKind::Logarithmic,
            MeanKind::Identric,
        ] {
            assert_eq!(special_mean(kind, 3.0, 3.0, None).unwrap().value, 3.0);
        }
        assert_eq!(
            special_mean(MeanKind::PowerLogarithmic, 3.0, 3.0, Some(2.0))
                .unwrap()
                .value,
            3.0
        );
    }

    #[test]
    fn invalid_mean_arguments() {
        assert!(special_mean(MeanKind::Arithmetic, -1.0, 2.0, None).is_err());
        assert!(special_mean(MeanKind::Harmonic, 0.0, 2.0, None).is_err());
        assert!(special_mean(MeanKind::PowerLogarithmic, 1.0, 2.0, Some(-1.0)).is_err());
        assert!(special_mean(MeanKind::PowerLogarithmic, 1.0, 2.0, Some(0.0)).is_err());
        assert!(special_mean(MeanKind::PowerLogarithmic, 1.0, 2.0, None).is_err());
    }

    #[test]
    fn chain_holds_for_separated_arguments() {
        assert!(mean_chain_check(1.0, 2.0).unwrap());
        assert!(mean_chain_check(0.5, 5.0).unwrap());
    }

    #[test]
    fn chain_degenerate_mode() {
        assert!(mean_chain_check(1.0, 1.0 + 1e-9).unwrap());
    }

    #[test]
    fn worked_example_recip_midpoint() {
        let rep =
            mean_inequality(MeanFamily::Recip, RuleKind::Midpoint, 1.0, 2.0, 2.0, None).unwrap();
        assert!((rep.lhs - (2.0 / 3.0 - 2f64.ln()).abs()).abs() < 1e-15);
        assert!((rep.lhs - 0.026480).abs() < 1e-5, "lhs {}", rep.lhs);
        assert!((rep.rhs - 0.058940).abs() < 1e-5, "rhs {}", rep.rhs);
        assert!(rep.slack > 0.0);
    }

    #[test]
    fn pow_n_trapezoid_holds() {
        let rep = mean_inequality(
            MeanFamily::PowN,
            RuleKind::Trapezoid,
            1.0,
            2.0,
            2.0,
            Some(3),
        )
        .unwrap();
        assert!(rep.slack >= 0.0, "slack {}", rep.slack);
        // lhs = |A(a³, b³) − L₃³| = |4.5 − 15/4| = 3/4
        assert!((rep.lhs - 0.75).abs() < 1e-14);
    }

    #[test]
    fn degenerate_limit_both_sides_vanish() {
        let a = 1.0;
        let b = a * (1.0 + 1e-6);
        for family in [MeanFamily::Recip, MeanFamily::Log] {
            for variant in [RuleKind::Midpoint, RuleKind::Trapezoid, RuleKind::Simpson] {
                let rep = mean_inequality(family, variant, a, b, 2.0, None).unwrap();
                assert!(rep.lhs < 1e-10 && rep.rhs < 1e-10, "{family}/{variant}");
            }
        }
    }

    #[test]
    fn hypothesis_violations_rejected() {
        assert!(
            mean_inequality(MeanFamily::Recip, RuleKind::Midpoint, 2.0, 1.0, 2.0, None).is_err()
        );
        assert!(
            mean_inequality(MeanFamily::Recip, RuleKind::Midpoint, 1.0, 2.0, 1.0, None).is_err()
        );
        assert!(
            mean_inequality(MeanFamily::PowN, RuleKind::Midpoint, 1.0, 2.0, 2.0, Some(2)).is_err()
        );
        assert!(
            mean_inequality(MeanFamily::Log, RuleKind::Midpoint, 1.0, 2.0, 2.0, Some(3)).is_err()
        );
    }

    #[test]
    fn homogeneity_of_means() {
        for (a, b) in [(1.0, 2.0), (0.3, 7.5)] {
            for c in [0.5, 3.0] {
                for kind in [
                    MeanKind::Arithmetic,
                    MeanKind::Geometric,
                    MeanKind::Harmonic,
                    MeanKind::Logarithmic,
                    MeanKind::Identric,
                ] {
                    let m = value(kind, a, b);
                    let mc = value(kind, c * a, c * b);
                    assert!((mc - c * m).abs() <= 1e-13 * (c * m).abs(), "{kind:?}");
                }
                for order in [3.0, 0.5, -3.0] {
                    let m = special_mean(MeanKind::PowerLogarithmic, a, b, Some(order))
                        .unwrap()
                        .value;
                    let mc = special_mean(MeanKind::PowerLogarithmic, c * a, c * b, Some(order))
                        .unwrap()
                        .value;
                    assert!((mc - c * m).abs() <= 1e-13 * (c * m).abs(), "Lp({order})");
                }
            }
        }
    }
}
