//! Special functions for the statistical-CSI closed forms.
//!
//! The ergodic eavesdropping loss for an isotropic Rayleigh channel is
//! `E[ln(1 + p*X)] = e^{1/p} E1(1/p)` with `X ~ Exp(1)`, so everything in
//! this module revolves around the fused product `e^x E1(x)`:
//!
//! - [`exp_e1`] — `e^x E1(x)` evaluated as one quantity (never as
//!   `exp(x) * e1(x)`, which overflows for large `x`);
//! - [`z_of_p`] — `z(p) = 1 + 1/p - (1/p^2 + 2/p) e^{1/p} E1(1/p)`,
//!   which lies in `[0, 1]` for all `p > 0`;
//! - [`y_of_p`] — `y(p) = (z + sqrt(z)) / (p (1 - z))`, the channel-gain
//!   threshold that certifies pseudo-concavity of the statistical-CSI
//!   power-control objective.
//!
//! `E1` itself uses the alternating power series for small arguments and a
//! modified-Lentz continued fraction for large ones; both branches deliver
//! absolute error well below `1e-12` and report an honest error bound.

use thiserror::Error;

/// Euler-Mascheroni constant.
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Arguments at or above this use the continued fraction, below it the
/// power series. Both branches are accurate to ~1e-15 at the crossover.
const SERIES_CF_CROSSOVER: f64 = 1.5;

const SERIES_MAX_TERMS: usize = 80;
const CF_MAX_ITERS: usize = 500;

#[derive(Debug, Error, PartialEq)]
pub enum SpecFunError {
    /// Argument outside the open domain `(0, inf)`.
    #[error("argument {0} outside domain: expected a finite value > 0")]
    Domain(f64),
}

/// A function value together with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunEval {
    pub value: f64,
    /// Absolute error bound on `value`; non-negative and finite except for
    /// the degenerate sentinel returned by [`y_of_p`].
    pub abs_err_bound: f64,
}

impl SpecFunEval {
    /// Sentinel for a degenerate evaluation (denominator underflow in
    /// [`y_of_p`]): an infinite value carrying an infinite error bound.
    pub fn degenerate() -> Self {
        SpecFunEval {
            value: f64::INFINITY,
            abs_err_bound: f64::INFINITY,
        }
    }

    /// True when this evaluation is the degenerate sentinel.
    pub fn is_degenerate(&self) -> bool {
        self.value.is_infinite()
    }
}

fn check_domain(x: f64) -> Result<(), SpecFunError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecFunError::Domain(x))
    }
}

/// Fused product `e^x E1(x)` for `x > 0`.
///
/// The product form stays bounded as `x -> inf` (it behaves like `1/x`),
/// whereas `E1(x)` alone underflows and `e^x` overflows.
pub fn exp_e1(x: f64) -> Result<SpecFunEval, SpecFunError> {
    check_domain(x)?;
    if x < SERIES_CF_CROSSOVER {
        Ok(exp_e1_series(x))
    } else {
        Ok(exp_e1_continued_fraction(x))
    }
}

/// Power series `E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)`,
/// multiplied by `e^x`. Accurate for small to moderate `x`.
fn exp_e1_series(x: f64) -> SpecFunEval {
    let mut sum = -EULER_GAMMA - x.ln();
    let mut abs_sum = sum.abs();
    let mut term = 1.0_f64; // x^k / k! carried incrementally
    let mut tail = 0.0_f64;
    for k in 1..=SERIES_MAX_TERMS {
        term *= x / k as f64;
        let contrib = if k % 2 == 1 { term } else { -term } / k as f64;
        sum += contrib;
        abs_sum += contrib.abs();
        tail = term / k as f64;
        if tail < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    let ex = x.exp();
    let value = ex * sum;
    // Truncation (first neglected term dominates the alternating tail) plus
    // rounding accumulated over the summation.
    let err = ex * (tail + 4.0 * f64::EPSILON * abs_sum) + 2.0 * f64::EPSILON * value.abs();
    SpecFunEval {
        value,
        abs_err_bound: err,
    }
}

/// Modified Lentz evaluation of the continued fraction
/// `e^x E1(x) = 1 / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(x + 7 - ...))))`.
fn exp_e1_continued_fraction(x: f64) -> SpecFunEval {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    let mut rel_step = 1.0_f64;
    for i in 1..=CF_MAX_ITERS {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        rel_step = (del - 1.0).abs();
        if rel_step < 1e-16 {
            break;
        }
    }
    SpecFunEval {
        value: h,
        abs_err_bound: (rel_step + 8.0 * f64::EPSILON) * h.abs(),
    }
}

/// Internal evaluation of `z(p)` that also returns `1 - z(p)` computed
/// without cancellation, as `(1/p) * ((1/p + 2) e^{1/p} E1(1/p) - 1)`.
fn z_parts(p: f64) -> Result<(f64, f64, f64), SpecFunError> {
    check_domain(p)?;
    let x = 1.0 / p;
    let e = exp_e1(x)?;
    let factor = x + 2.0;
    let one_minus_z = x * (factor * e.value - 1.0);
    let z = 1.0 - one_minus_z;
    // Propagate the e^x E1(x) bound through the affine combination and add
    // the rounding of the subtraction against 1.
    let err = x * factor * e.abs_err_bound
        + 4.0 * f64::EPSILON * (1.0 + x + x * factor * e.value.abs())
        + 2.0 * f64::EPSILON;
    Ok((z, one_minus_z, err))
}

/// `z(p) = 1 + 1/p - (1/p^2 + 2/p) e^{1/p} E1(1/p)` for `p > 0`.
///
/// Lies in `[0, 1]` for every positive `p`. The returned value is clamped
/// onto the boundary only when the raw value is within the error bound of
/// it; values genuinely inside the interval pass through untouched.
pub fn z_of_p(p: f64) -> Result<SpecFunEval, SpecFunError> {
    let (z, _, err) = z_parts(p)?;
    let mut value = z;
    if value < 0.0 && value >= -err {
        value = 0.0;
    } else if value > 1.0 && value <= 1.0 + err {
        value = 1.0;
    }
    Ok(SpecFunEval {
        value,
        abs_err_bound: err,
    })
}

/// `y(p) = (z(p) + sqrt(z(p))) / (p (1 - z(p)))` for `p > 0`.
///
/// Non-negative and non-increasing in `p`. If `1 - z(p)` is not resolvable
/// as strictly positive (it underflows to `<= 0` within the error bound),
/// the degenerate sentinel is returned instead of panicking so that grid
/// sweeps can proceed.
pub fn y_of_p(p: f64) -> Result<SpecFunEval, SpecFunError> {
    let (z, one_minus_z, err) = z_parts(p)?;
    if one_minus_z <= err.max(f64::EPSILON * 4.0) {
        return Ok(SpecFunEval::degenerate());
    }
    let z_pos = z.clamp(0.0, f64::INFINITY);
    let value = (z_pos + z_pos.sqrt()) / (p * one_minus_z);
    // sqrt halves relative error; the denominator contributes err/one_minus_z.
    let rel = if z_pos > 0.0 {
        err / z_pos.max(err) + err / one_minus_z
    } else {
        err / one_minus_z
    };
    Ok(SpecFunEval {
        value,
        abs_err_bound: value * rel + 4.0 * f64::EPSILON * (1.0 + value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference values computed with mpmath at 40 significant digits.
    const EXP_E1_TABLE: &[(f64, f64)] = &[
        (1e-3, 6.337874070325487977),
        (1e-2, 4.078511443456425847),
        (1e-1, 2.014642544708451679),
        (0.5, 0.9229106324837304688),
        (1.0, 0.5963473623231940743),
        (1.5, 0.4482566692915829539),
        (2.0, 0.3613286168882225847),
        (5.0, 0.1704221762847322018),
        (10.0, 0.09156333393978808188),
        (100.0, 0.009901942286733018406),
        (1000.0, 0.0009990019940238807150),
    ];

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let (llo, lhi) = (lo.ln(), hi.ln());
        (0..n)
            .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1) as f64).exp())
            .collect()
    }

    #[test]
    fn exp_e1_matches_reference_table() {
        for &(x, expected) in EXP_E1_TABLE {
            let e = exp_e1(x).unwrap();
            assert!(
                (e.value - expected).abs() <= 1e-13,
                "exp_e1({x}): got {}, want {expected}",
                e.value
            );
            assert!((e.value - expected).abs() <= e.abs_err_bound.max(1e-15));
            assert!(e.abs_err_bound <= 1e-12, "bound too loose at x={x}");
        }
    }

    #[test]
    fn exp_e1_large_argument_asymptotics() {
        // e^x E1(x) ~ 1/x - 1/x^2 for large x.
        let e = exp_e1(100.0).unwrap();
        assert!((e.value - 0.0099).abs() < 1e-5);
        let e = exp_e1(1e6).unwrap();
        assert!((e.value - (1e-6 - 1e-12)).abs() < 1e-16);
    }

    #[test]
    fn exp_e1_branches_agree_at_crossover() {
        for &x in &[1.2, 1.4, 1.5, 1.6, 2.0] {
            let s = exp_e1_series(x);
            let cf = exp_e1_continued_fraction(x);
            assert!(
                (s.value - cf.value).abs() < 1e-14,
                "branch mismatch at x={x}: {} vs {}",
                s.value,
                cf.value
            );
        }
    }

    #[test]
    fn exp_e1_rejects_bad_domain() {
        assert!(exp_e1(0.0).is_err());
        assert!(exp_e1(-1.0).is_err());
        assert!(exp_e1(f64::NAN).is_err());
        assert!(exp_e1(f64::INFINITY).is_err());
        assert!(z_of_p(0.0).is_err());
        assert!(y_of_p(-2.0).is_err());
    }

    #[test]
    fn exp_e1_upper_bound_in_p() {
        // e^{1/p} E1(1/p) <= (p^2 + p) / (1 + 2p) for p > 0.
        for p in log_grid(1e-3, 1e3, 200) {
            let e = exp_e1(1.0 / p).unwrap();
            let bound = (p * p + p) / (1.0 + 2.0 * p);
            assert!(
                e.value <= bound + 1e-12,
                "bound violated at p={p}: {} > {bound}",
                e.value
            );
        }
        // Spot check from the closed form at p = 1: value <= 2/3.
        assert!(exp_e1(1.0).unwrap().value <= 2.0 / 3.0);
    }

    #[test]
    fn exp_e1_derivative_identity() {
        // d/dx e^x E1(x) = e^x E1(x) - 1/x, checked against central
        // differences with relative error < 1e-6 on x in [0.1, 50].
        for &x in log_grid(0.1, 50.0, 120).iter() {
            let h = 1e-6 * x;
            let fp = exp_e1(x + h).unwrap().value;
            let fm = exp_e1(x - h).unwrap().value;
            let numeric = (fp - fm) / (2.0 * h);
            let analytic = exp_e1(x).unwrap().value - 1.0 / x;
            assert!(
                (numeric - analytic).abs() <= 1e-6 * analytic.abs().max(1e-3),
                "derivative identity fails at x={x}: {numeric} vs {analytic}"
            );
        }
    }

    #[test]
    fn z_matches_reference_values() {
        // z(1) = 2 - 3 e E1(1); others from the 40-digit evaluation.
        let cases = [
            (1e-3, 1.988071523570039369e-6),
            (0.1, 0.01239992722543017487),
            (1.0, 0.2109579130304177770),
            (10.0, 0.6769250656112251474),
            (1e3, 0.9883179139852786986),
        ];
        for (p, expected) in cases {
            let z = z_of_p(p).unwrap();
            assert!(
                (z.value - expected).abs() <= 1e-12,
                "z({p}): got {}, want {expected}",
                z.value
            );
        }
    }

    #[test]
    fn z_bounds_on_log_grid() {
        for p in log_grid(1e-3, 1e3, 400) {
            let z = z_of_p(p).unwrap();
            assert!(
                (0.0..=1.0).contains(&z.value),
                "z({p}) = {} outside [0,1]",
                z.value
            );
        }
    }

    #[test]
    fn one_minus_z_lower_bound_at_large_p() {
        // 1 - z(p) >= 1/(1+p); exercised at p = 1e6 where cancellation
        // against 1 would destroy the naive evaluation.
        let p = 1e6;
        let (_, one_minus_z, _) = z_parts(p).unwrap();
        assert!(one_minus_z >= 1.0 / (1.0 + p));
        // 40-digit reference: z(1e6) = 0.9999745233684989609.
        let z = z_of_p(p).unwrap();
        assert!((z.value - 0.9999745233684989609).abs() <= 1e-12);
    }

    #[test]
    fn y_matches_reference_values() {
        let cases = [
            (1e-3, 1.411980780581383136),
            (0.01, 1.392721667391584678),
            (0.1, 1.253087065560946956),
            (1.0, 0.8494597097242143909),
            (10.0, 0.4641894080120208287),
        ];
        for (p, expected) in cases {
            let y = y_of_p(p).unwrap();
            // The reported error bound must cover the true error; at small p
            // the bound widens because z(p) itself is a small difference.
            assert!(
                (y.value - expected).abs() <= y.abs_err_bound.max(1e-10),
                "y({p}): got {}, want {expected}, bound {}",
                y.value,
                y.abs_err_bound
            );
            assert!((y.value - expected).abs() <= 1e-6);
            assert!(!y.is_degenerate());
        }
    }

    #[test]
    fn y_non_increasing_and_finite() {
        // Non-increasing on the linear grid 0.1..10 and on a wide log grid;
        // finite as p -> 0 (no hard-coded limit, evaluated numerically).
        let mut grids = vec![log_grid(1e-3, 1e3, 300)];
        grids.push((1..=100).map(|i| 0.1 * i as f64).collect());
        for grid in grids {
            let mut prev = f64::INFINITY;
            for p in grid {
                let y = y_of_p(p).unwrap();
                assert!(y.value.is_finite() && y.value >= 0.0);
                assert!(
                    y.value <= prev + 1e-9,
                    "y not non-increasing at p={p}: {} > {prev}",
                    y.value
                );
                prev = y.value;
            }
        }
    }

    #[test]
    fn eq27_sandwich_on_log_grid() {
        // (sqrt(1+2p) - 1)/p <= (1/p)(exp(e^{1/p} E1(1/p)) - 1) <= 1.
        for p in log_grid(1e-3, 1e3, 200) {
            let e = exp_e1(1.0 / p).unwrap().value;
            let mid = (e.exp() - 1.0) / p;
            let lower = ((1.0 + 2.0 * p).sqrt() - 1.0) / p;
            assert!(lower <= mid + 1e-10, "lower sandwich fails at p={p}");
            assert!(mid <= 1.0 + 1e-10, "upper sandwich fails at p={p}");
        }
    }

    #[test]
    fn degenerate_sentinel_never_panics() {
        // Far beyond any physical power level; either a finite value or the
        // flagged sentinel is acceptable, a panic is not.
        for &p in &[1e12, 1e15, 1e18] {
            let y = y_of_p(p).unwrap();
            assert!(y.value >= 0.0);
            if y.is_degenerate() {
                assert!(y.abs_err_bound.is_infinite());
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn exp_e1_finite_positive_with_tight_bound(x in 1e-4f64..1e4) {
                let e = exp_e1(x).unwrap();
                prop_assert!(e.value.is_finite() && e.value > 0.0);
                prop_assert!(e.abs_err_bound >= 0.0 && e.abs_err_bound <= 1e-12);
            }

            #[test]
            fn z_stays_in_unit_interval(p in 1e-4f64..1e4) {
                let z = z_of_p(p).unwrap();
                prop_assert!((0.0..=1.0).contains(&z.value));
            }
        }
    }
}
