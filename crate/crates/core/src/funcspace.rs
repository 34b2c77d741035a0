//! Twice-differentiable test functions and sampled convexity verdicts.
//!
//! Every bound in this crate consumes endpoint values of f″ exactly, so a
//! [`TestFunction`] must carry an explicit second derivative; finite
//! differences are only used to cross-validate the supplied evaluators.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numint;

/// Closed evaluation interval [a, b] with a < b, both finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Parameter(format!(
                "interval endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if !(a < b) {
            return Err(Error::Parameter(format!(
                "interval requires a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A test function with explicit first and second derivatives, an optional
/// exact antiderivative, and a declared domain. Evaluators must be reentrant;
/// the struct is cheap to clone and safe to share across workers.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    domain: (f64, f64),
    f: Evaluator,
    f1: Evaluator,
    f2: Evaluator,
    antiderivative: Option<Evaluator>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("antiderivative", &self.antiderivative.is_some())
            .finish()
    }
}

impl TestFunction {
    pub fn new<F, F1, F2>(name: impl Into<String>, domain: (f64, f64), f: F, f1: F1, f2: F2) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        F1: Fn(f64) -> f64 + Send + Sync + 'static,
        F2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            domain,
            f: Arc::new(f),
            f1: Arc::new(f1),
            f2: Arc::new(f2),
            antiderivative: None,
        }
    }

    pub fn with_antiderivative<F>(mut self, antiderivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.antiderivative = Some(Arc::new(antiderivative));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn f(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn f1(&self, x: f64) -> f64 {
        (self.f1)(x)
    }

    pub fn f2(&self, x: f64) -> f64 {
        (self.f2)(x)
    }

    pub fn has_antiderivative(&self) -> bool {
        self.antiderivative.is_some()
    }

    pub fn antiderivative(&self, x: f64) -> Option<f64> {
        self.antiderivative.as_ref().map(|g| g(x))
    }

    pub fn contains(&self, iv: Interval) -> bool {
        self.domain.0 <= iv.a() && iv.b() <= self.domain.1
    }

    /// Checks that `iv` sits inside the declared domain.
    pub fn check_interval(&self, iv: Interval) -> Result<()> {
        if self.contains(iv) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{} is outside the domain of `{}`",
                iv, self.name
            )))
        }
    }
}

/// Lower endpoint admitted for the singular catalog entries (recip, log).
const SINGULAR_DOMAIN_FLOOR: f64 = 1e-8;

/// Looks up a catalog function by its stable CLI name.
///
/// Known names: `square`, `cubic`, `exp`, `recip`, `log`, `pow_n:<n>`.
pub fn catalog_lookup(name: &str) -> Result<TestFunction> {
    let full = f64::INFINITY;
    match name {
        "square" => Ok(
            TestFunction::new("square", (-full, full), |x| x * x, |x| 2.0 * x, |_| 2.0)
                .with_antiderivative(|x| x.powi(3) / 3.0),
        ),
        "cubic" => Ok(TestFunction::new(
            "cubic",
            (-full, full),
            |x| x.powi(3),
            |x| 3.0 * x * x,
            |x| 6.0 * x,
        )
        .with_antiderivative(|x| x.powi(4) / 4.0)),
        "exp" => Ok(
            TestFunction::new("exp", (-full, full), f64::exp, f64::exp, f64::exp)
                .with_antiderivative(f64::exp),
        ),
        "recip" => Ok(TestFunction::new(
            "recip",
            (SINGULAR_DOMAIN_FLOOR, full),
            |x| 1.0 / x,
            |x| -1.0 / (x * x),
            |x| 2.0 / x.powi(3),
        )
        .with_antiderivative(|x: f64| x.ln())),
        "log" => Ok(TestFunction::new(
            "log",
            (SINGULAR_DOMAIN_FLOOR, full),
            f64::ln,
            |x| 1.0 / x,
            |x| -1.0 / (x * x),
        )
        .with_antiderivative(|x: f64| x * x.ln() - x)),
        other => {
            if let Some(arg) = other.strip_prefix("pow_n:") {
                let n: i32 = arg
                    .parse()
                    .map_err(|_| Error::UnknownFunction(other.to_string()))?;
                if n < 0 {
                    return Err(Error::Parameter(format!(
                        "pow_n requires a nonnegative integer exponent, got {n}"
                    )));
                }
                return Ok(pow_n(n));
            }
            Err(Error::UnknownFunction(other.to_string()))
        }
    }
}

/// x^n for integer n ≥ 0. Allowed for any n in bound tests; the means
/// propositions additionally require n > 2.
pub fn pow_n(n: i32) -> TestFunction {
    let full = f64::INFINITY;
    let nf = f64::from(n);
    TestFunction::new(
        format!("pow_n:{n}"),
        (-full, full),
        move |x| x.powi(n),
        move |x| if n == 0 { 0.0 } else { nf * x.powi(n - 1) },
        move |x| {
            if n <= 1 {
                0.0
            } else {
                nf * (nf - 1.0) * x.powi(n - 2)
            }
        },
    )
    .with_antiderivative(move |x| x.powi(n + 1) / (nf + 1.0))
}

/// Sampled midpoint-convexity verdict for |f″| and |f″|^q on an interval.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConvexityVerdict {
    pub convex_abs_f2: bool,
    pub convex_abs_f2_pow_q: bool,
    pub q: f64,
    /// Largest positive excess of g(midpoint) over the chord average, beyond
    /// the magnitude-scaled tolerance; 0 when the q-power check passes.
    pub worst_violation: f64,
    pub samples: usize,
}

/// Relative tolerance of the midpoint-convexity test, scaled by the largest
/// sampled magnitude of g.
const CONVEXITY_REL_TOL: f64 = 1e-12;

/// Scans g on a refined half-step grid and returns the worst positive
/// violation of g((xᵢ+xⱼ)/2) ≤ (g(xᵢ)+g(xⱼ))/2 + tol over all grid pairs.
fn midpoint_violation(values: &[f64], tol: f64) -> f64 {
    // values live on the refined grid of 2n−1 half-steps; pair midpoints of
    // coarse indices i, j land exactly on refined index i + j
    let n = values.len().div_ceil(2);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let gi = values[2 * i];
            let gj = values[2 * j];
            let gm = values[i + j];
            let excess = gm - 0.5 * (gi + gj) - tol;
            if excess > worst {
                worst = excess;
            }
        }
    }
    worst
}

/// Checks midpoint convexity of g(x) = |f″(x)|^q on an n-point uniform grid
/// (all grid pairs, midpoints evaluated on the half-step refinement).
pub fn check_abs_f2_convex(
    f: &TestFunction,
    iv: Interval,
    q: f64,
    n: usize,
) -> Result<ConvexityVerdict> {
    if n < 3 {
        return Err(Error::Parameter(format!(
            "need at least 3 samples, got {n}"
        )));
    }
    if !(q >= 1.0) {
        return Err(Error::Parameter(format!(
            "convexity power q must be ≥ 1, got {q}"
        )));
    }
    f.check_interval(iv)?;

    let m = 2 * n - 1;
    let h = iv.width() / (m - 1) as f64;
    let mut abs_vals = Vec::with_capacity(m);
    for k in 0..m {
        let x = if k == m - 1 {
            iv.b()
        } else {
            iv.a() + h * k as f64
        };
        let v = f.f2(x).abs();
        if !v.is_finite() {
            return Err(Error::Domain(format!(
                "f″ of `{}` not finite at x = {x}",
                f.name()
            )));
        }
        abs_vals.push(v);
    }

    let pow_vals: Vec<f64> = if q == 1.0 {
        abs_vals.clone()
    } else {
        abs_vals.iter().map(|v| v.powf(q)).collect()
    };

    let scale_abs = abs_vals.iter().cloned().fold(0.0f64, f64::max);
    let scale_pow = pow_vals.iter().cloned().fold(0.0f64, f64::max);
    let viol_abs = midpoint_violation(&abs_vals, CONVEXITY_REL_TOL * scale_abs);
    let viol_pow = midpoint_violation(&pow_vals, CONVEXITY_REL_TOL * scale_pow);

    Ok(ConvexityVerdict {
        convex_abs_f2: viol_abs == 0.0,
        convex_abs_f2_pow_q: viol_pow == 0.0,
        q,
        worst_violation: viol_pow,
        samples: n,
    })
}

/// Worst mismatch between supplied derivatives and central differences.
#[derive(Clone, Copy, Debug)]
pub struct DerivativeConsistency {
    /// max |f′(x) − (f(x+h)−f(x−h))/2h| over interior samples
    pub f1_err: f64,
    /// max |f″(x) − (f′(x+h)−f′(x−h))/2h| over interior samples
    pub f2_err: f64,
    /// max |f(x) − (F(x+h)−F(x−h))/2h| when an antiderivative F is present
    pub antiderivative_err: Option<f64>,
}

/// Cross-validates the evaluators of `f` on interior sample points of `iv`.
pub fn derivative_consistency(
    f: &TestFunction,
    iv: Interval,
    h: f64,
) -> Result<DerivativeConsistency> {
    f.check_interval(iv)?;
    let lo = iv.a() + 2.0 * h;
    let hi = iv.b() - 2.0 * h;
    if !(lo < hi) {
        return Err(Error::Parameter(format!(
            "step {h} too large for interval {iv}"
        )));
    }
    let samples = 17;
    let step = (hi - lo) / (samples - 1) as f64;
    let mut f1_err = 0.0f64;
    let mut f2_err = 0.0f64;
    let mut anti_err = f.has_antiderivative().then_some(0.0f64);
    for k in 0..samples {
        let x = lo + step * k as f64;
        let d1 = numint::finite_diff_first(|t| f.f(t), x, h)?;
        f1_err = f1_err.max((d1 - f.f1(x)).abs());
        let d2 = numint::finite_diff_first(|t| f.f1(t), x, h)?;
        f2_err = f2_err.max((d2 - f.f2(x)).abs());
        if let Some(err) = anti_err.as_mut() {
            let da = numint::finite_diff_first(|t| f.antiderivative(t).unwrap(), x, h)?;
            *err = err.max((da - f.f(x)).abs());
        }
    }
    Ok(DerivativeConsistency {
        f1_err,
        f2_err,
        antiderivative_err: anti_err,
    })
}
