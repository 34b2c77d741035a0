//! The (α, λ) family of quadrature rules, the three named proposition
//! bounds, and a composite integrator with certified per-cell error.

use serde::Serialize;

use crate::bounds::{bound_t2, bound_t3, bound_t4, Theorem};
use crate::coeffs::{check_alpha_lambda, incomplete_beta};
use crate::error::{Error, Result};
use crate::funcspace::{check_abs_f2_convex, Interval, TestFunction};

/// One member of the rule family. Named members: midpoint = (1/2, 0),
/// trapezoid = (1/2, 1), Simpson = (1/2, 1/3).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RuleSpec {
    alpha: f64,
    lambda: f64,
}

impl RuleSpec {
    pub fn midpoint() -> Self {
        Self {
            alpha: 0.5,
            lambda: 0.0,
        }
    }

    pub fn trapezoid() -> Self {
        Self {
            alpha: 0.5,
            lambda: 1.0,
        }
    }

    pub fn simpson() -> Self {
        Self {
            alpha: 0.5,
            lambda: 1.0 / 3.0,
        }
    }

    pub fn custom(alpha: f64, lambda: f64) -> Result<Self> {
        check_alpha_lambda(alpha, lambda)?;
        Ok(Self { alpha, lambda })
    }

    /// Parses a CLI rule string: `midpoint`, `trapezoid`, `simpson` or
    /// `custom:<alpha>,<lambda>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(Self::midpoint()),
            "trapezoid" => Ok(Self::trapezoid()),
            "simpson" => Ok(Self::simpson()),
            other => {
                let spec = other.strip_prefix("custom:").ok_or_else(|| {
                    Error::Parameter(format!(
                        "rule must be midpoint, trapezoid, simpson or custom:<alpha>,<lambda>; got `{other}`"
                    ))
                })?;
                let (a, l) = spec.split_once(',').ok_or_else(|| {
                    Error::Parameter(format!("custom rule needs `alpha,lambda`, got `{spec}`"))
                })?;
                let alpha: f64 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad alpha `{a}`")))?;
                let lambda: f64 = l
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad lambda `{l}`")))?;
                Self::custom(alpha, lambda)
            }
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// The rule consumes f′ whenever α ≠ 1/2.
    pub fn uses_derivative(&self) -> bool {
        self.alpha != 0.5
    }
}

/// The three named proposition variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Midpoint,
    Trapezoid,
    Simpson,
}

impl RuleKind {
    pub fn rule(&self) -> RuleSpec {
        match self {
            RuleKind::Midpoint => RuleSpec::midpoint(),
            RuleKind::Trapezoid => RuleSpec::trapezoid(),
            RuleKind::Simpson => RuleSpec::simpson(),
        }
    }
}

impl std::fmt::Display for RuleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleKind::Midpoint => write!(f, "midpoint"),
            RuleKind::Trapezoid => write!(f, "trapezoid"),
            RuleKind::Simpson => write!(f, "simpson"),
        }
    }
}

impl std::str::FromStr for RuleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "midpoint" => Ok(RuleKind::Midpoint),
            "trapezoid" => Ok(RuleKind::Trapezoid),
            "simpson" => Ok(RuleKind::Simpson),
            other => Err(Error::Parameter(format!(
                "variant must be midpoint, trapezoid or simpson; got `{other}`"
            ))),
        }
    }
}

/// The generalized rule value approximating the mean (1/(b−a))∫f:
///
/// (1−λ)f(x_α) + λ(αf(a) + (1−α)f(b)) + (b−a)(α−1/2)f′(x_α),
/// with x_α = (1−α)b + αa. The identity's LHS equals rule − mean.
pub fn generalized_rule(f: &TestFunction, iv: Interval, rule: RuleSpec) -> Result<f64> {
    f.check_interval(iv)?;
    let (a, b) = (iv.a(), iv.b());
    let (alpha, lambda) = (rule.alpha, rule.lambda);
    let x_alpha = (1.0 - alpha) * b + alpha * a;
    Ok((1.0 - lambda) * f.f(x_alpha)
        + lambda * (alpha * f.f(a) + (1.0 - alpha) * f.f(b))
        + iv.width() * (alpha - 0.5) * f.f1(x_alpha))
}

/// The named proposition bound on |rule − mean| for q > 1.
///
/// The Simpson prefactor carries 2^{p+1}+1: that is the value of the
/// Hölder integral ∫₀^{1/2}|1/3−t|^p dt = ((1/3)^{p+1}+(1/6)^{p+1})/(p+1),
/// and [`match_general`] pins the equality with the general bound.
pub fn proposition_bound(
    kind: RuleKind,
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    q: f64,
) -> Result<f64> {
    if !(q > 1.0) {
        return Err(Error::Unsupported(format!(
            "proposition bounds need q > 1, got {q}"
        )));
    }
    if !(f2_abs_a >= 0.0) || !(f2_abs_b >= 0.0) {
        return Err(Error::Parameter(
            "endpoint |f″| values must be nonnegative".into(),
        ));
    }
    let p = q / (q - 1.0);
    let factor = match kind {
        RuleKind::Midpoint => 1.0 / (2f64.powf(2.0 * p + 1.0) * (p + 1.0)),
        RuleKind::Trapezoid => (2f64.powf(p + 1.0) - 1.0) / (2f64.powf(2.0 * p + 1.0) * (p + 1.0)),
        RuleKind::Simpson => {
            (2f64.powf(p + 1.0) + 1.0) / (2f64.powf(2.0 * p + 1.0) * 3f64.powf(p + 1.0) * (p + 1.0))
        }
    }
    .powf(1.0 / p);
    let eq = 1.0 / (2f64.powf(q + 2.0) * (q + 2.0));
    let bq = incomplete_beta(0.5, q + 1.0, 2.0)?;
    let fa_q = f2_abs_a.powf(q);
    let fb_q = f2_abs_b.powf(q);
    Ok(iv.width()
        * iv.width()
        * factor
        * ((eq * fb_q + bq * fa_q).powf(1.0 / q) + (bq * fb_q + eq * fa_q).powf(1.0 / q)))
}

/// Tolerance for the proposition ↔ general-bound consistency check.
const MATCH_TOL: f64 = 1e-12;

/// Evaluates the Hölder bound at the (α, λ) matching `kind` and asserts it
/// equals the proposition value. A disagreement signals a transcription bug
/// in one of the two closed forms.
pub fn match_general(
    kind: RuleKind,
    f2_abs_a: f64,
    f2_abs_b: f64,
    iv: Interval,
    q: f64,
) -> Result<f64> {
    let rule = kind.rule();
    let general = bound_t4(f2_abs_a, f2_abs_b, iv, rule.alpha(), rule.lambda(), q)?;
    let proposition = proposition_bound(kind, f2_abs_a, f2_abs_b, iv, q)?;
    let diff = (general - proposition).abs();
    if diff > MATCH_TOL * proposition.abs().max(1.0) {
        return Err(Error::Consistency(format!(
            "{kind} proposition {proposition:e} disagrees with the general bound {general:e} (diff {diff:e})"
        )));
    }
    Ok(proposition)
}

/// A composite rule value with a certified error bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CertifiedResult {
    pub value: f64,
    /// Sum of per-cell bounds; |value − ∫f| ≤ error_bound under the
    /// per-cell convexity hypotheses.
    pub error_bound: f64,
    pub cells: usize,
    pub theorem_used: Theorem,
    pub q: f64,
}

/// Per-cell grid size for the composite hypothesis check.
const CELL_CONVEXITY_SAMPLES: usize = 33;

/// Applies the rule on a uniform n-cell partition and sums the per-cell
/// theorem bounds into a certificate for |value − ∫f|. Cells are evaluated
/// left to right so summation order is reproducible.
pub fn composite_certified(
    f: &TestFunction,
    iv: Interval,
    n_cells: usize,
    rule: RuleSpec,
    q: f64,
    theorem: Theorem,
) -> Result<CertifiedResult> {
    if n_cells == 0 {
        return Err(Error::Parameter("need at least one cell".into()));
    }
    f.check_interval(iv)?;
    let (alpha, lambda) = (rule.alpha, rule.lambda);
    let hyp_q = if theorem == Theorem::T2 { 1.0 } else { q };
    let h = iv.width() / n_cells as f64;
    let mut value = 0.0;
    let mut error_bound = 0.0;
    for i in 0..n_cells {
        let lo = iv.a() + h * i as f64;
        let hi = if i + 1 == n_cells {
            iv.b()
        } else {
            iv.a() + h * (i + 1) as f64
        };
        let cell = Interval::new(lo, hi)?;
        let verdict = check_abs_f2_convex(f, cell, hyp_q, CELL_CONVEXITY_SAMPLES)?;
        if !verdict.convex_abs_f2_pow_q {
            return Err(Error::Hypothesis {
                cell: i,
                violation: verdict.worst_violation,
            });
        }
        let f2_abs_a = f.f2(lo).abs();
        let f2_abs_b = f.f2(hi).abs();
        let cell_bound = match theorem {
            Theorem::T2 => bound_t2(f2_abs_a, f2_abs_b, cell, alpha, lambda)?,
            Theorem::T3 => bound_t3(f2_abs_a, f2_abs_b, cell, alpha, lambda, q)?,
            Theorem::T4 => bound_t4(f2_abs_a, f2_abs_b, cell, alpha, lambda, q)?,
            other => {
                return Err(Error::Parameter(format!(
                    "composite certification accepts T2, T3 or T4, got {other}"
                )))
            }
        };
        value += cell.width() * generalized_rule(f, cell, rule)?;
        error_bound += cell.width() * cell_bound;
    }
    Ok(CertifiedResult {
        value,
        error_bound,
        cells: n_cells,
        theorem_used: theorem,
        q,
    })
}
