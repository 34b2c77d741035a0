//! High-precision integration oracle and finite-difference utilities.
//!
//! The oracle is an adaptive 15-point Gauss–Kronrod scheme with the classic
//! QUADPACK error rescale. It is used to validate every closed-form
//! coefficient and identity in the other modules, so it deliberately shares
//! no code with them: a disagreement always points at a transcription bug in
//! a closed form, never at a shared mistake.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::funcspace::Interval;

/// Default tolerance for formula-verification integrals.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default tolerance for full-identity checks (two nested approximations).
pub const IDENTITY_TOL: f64 = 1e-10;
/// Smallest accepted tolerance.
pub const MIN_TOL: f64 = 1e-14;
/// Default evaluation budget before the oracle gives up.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Outcome of one oracle integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

// 15-point Kronrod abscissae (positive half, descending; last entry is the
// center) with the embedded 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    finite: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut finite = fc.is_finite();

    let mut res_gauss = fc * WG[3];
    let mut res_kronrod = fc * WGK[7];
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [0.0f64; 7];
    let mut fv2 = [0.0f64; 7];

    for j in 0..7 {
        let x = half * XGK[j];
        let v1 = f(center - x);
        let v2 = f(center + x);
        finite &= v1.is_finite() && v2.is_finite();
        fv1[j] = v1;
        fv2[j] = v2;
        let sum = v1 + v2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (v1.abs() + v2.abs());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let raw_err = ((res_kronrod - res_gauss) * half).abs();
    Panel {
        a,
        b,
        value: res_kronrod * half,
        error: rescale_error(raw_err, res_abs * half.abs(), res_asc * half.abs()),
        finite,
    }
}

/// Adaptive integration of `g` over `iv` with an explicit evaluation budget.
///
/// Worst-first bisection: the panel with the largest error estimate is split
/// until the summed estimates drop below `tol` or the budget runs out.
pub fn integrate_with_budget<F: Fn(f64) -> f64>(
    g: F,
    iv: Interval,
    tol: f64,
    budget: u64,
) -> Result<QuadResult> {
    if !(tol >= MIN_TOL) {
        return Err(Error::Parameter(format!(
            "tolerance {tol:e} below the supported minimum {MIN_TOL:e}"
        )));
    }

    let mut evaluations: u64 = 15;
    let first = gk15(&g, iv.a(), iv.b());
    if !first.finite {
        return Err(Error::Domain(format!(
            "integrand not finite on [{}, {}]",
            iv.a(),
            iv.b()
        )));
    }

    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    // value/error of panels too narrow to split further
    let mut settled_value = 0.0;
    let mut settled_error = 0.0;

    while total_error > tol {
        let Some(worst) = heap.pop() else {
            break; // everything settled at the rounding floor
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            settled_value += worst.value;
            settled_error += worst.error;
            continue;
        }
        if evaluations + 30 > budget {
            return Err(Error::OracleFailure {
                value: total_value,
                error_estimate: total_error,
                evaluations,
            });
        }
        let left = gk15(&g, worst.a, mid);
        let right = gk15(&g, mid, worst.b);
        evaluations += 30;
        if !left.finite || !right.finite {
            return Err(Error::Domain(format!(
                "integrand not finite on [{}, {}]",
                worst.a, worst.b
            )));
        }
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // recompute the totals from the parts to shed cancellation noise
    let value = settled_value + heap.iter().map(|p| p.value).sum::<f64>();
    let error = settled_error + heap.iter().map(|p| p.error).sum::<f64>();
    Ok(QuadResult {
        value,
        error_estimate: error,
        evaluations,
        converged: error <= tol,
    })
}

/// Adaptive integration of `g` over `iv` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(g: F, iv: Interval, tol: f64) -> Result<QuadResult> {
    integrate_with_budget(g, iv, tol, DEFAULT_BUDGET)
}

/// Integration with user-supplied interior breakpoints (kinks, sign changes).
///
/// `breaks` must be non-decreasing and strictly inside the interval. The
/// subsegment results and their error estimates add.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    g: F,
    iv: Interval,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadResult> {
    for pair in breaks.windows(2) {
        if pair[1] < pair[0] {
            return Err(Error::Parameter(format!(
                "breakpoints not sorted: {} after {}",
                pair[1], pair[0]
            )));
        }
    }
    if let (Some(&lo), Some(&hi)) = (breaks.first(), breaks.last()) {
        if lo <= iv.a() || hi >= iv.b() {
            return Err(Error::Parameter(format!(
                "breakpoints must lie strictly inside [{}, {}]",
                iv.a(),
                iv.b()
            )));
        }
    }

    let mut points = Vec::with_capacity(breaks.len() + 2);
    points.push(iv.a());
    points.extend_from_slice(breaks);
    points.push(iv.b());

    let segments: Vec<(f64, f64)> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect();
    let seg_tol = tol / segments.len() as f64;

    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut converged = true;
    for (a, b) in segments {
        let r = integrate(&g, Interval::new(a, b)?, seg_tol.max(MIN_TOL))?;
        value += r.value;
        error += r.error_estimate;
        evaluations += r.evaluations;
        converged &= r.converged;
    }
    Ok(QuadResult {
        value,
        error_estimate: error,
        evaluations,
        converged: converged && error <= tol,
    })
}

/// Central second difference (f(x+h) − 2f(x) + f(x−h)) / h².
pub fn finite_diff_second<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Parameter(format!(
            "step h must be positive, got {h}"
        )));
    }
    let v = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "second difference not finite at x = {x}, h = {h}"
        )));
    }
    Ok(v)
}

/// Central first difference (f(x+h) − f(x−h)) / 2h.
pub fn finite_diff_first<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Parameter(format!(
            "step h must be positive, got {h}"
        )));
    }
    let v = (f(x + h) - f(x - h)) / (2.0 * h);
    if !v.is_finite() {
        return Err(Error::Domain(format!(
            "first difference not finite at x = {x}, h = {h}"
        )));
    }
    Ok(v)
}
