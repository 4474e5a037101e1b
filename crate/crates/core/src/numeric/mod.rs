//! Complex-valued evaluation of the correlation functions and numeric
//! certification of the q-difference equations, quasi-periodicity and pole
//! structure.
//!
//! Evaluations run inside the annulus `|q| < |t| < 1/|q|` (with a guard
//! margin) where the partition sums converge; the correction constants are
//! evaluated as closed-form complex expressions, so no expansion-direction
//! bookkeeping is needed on this side.

mod checks;
mod theta;

pub use checks::{
    check_difference_equation, check_pole_residue, check_quasi_periodicity, merge_patterns,
    suggested_arguments, DifferenceEquationSpec, MergePattern,
};
pub use theta::{b_function, theta, BRoute};

use crate::partitions::{enumerate, Partition, PartitionKind};
use crate::ring::Series;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

pub type ComplexValue = Complex64;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("|q| = {0} is not inside the unit disk")]
    QOutsideDisk(f64),
    #[error("argument {arg} violates the annulus guard")]
    AnnulusViolation { arg: String },
    #[error("argument {arg} is within the guard distance of the pole at t = 1")]
    PoleProximity { arg: String },
    #[error("tail estimate {estimate:.3e} exceeds the tolerance at cutoff {cutoff}")]
    TailAboveTolerance { estimate: f64, cutoff: u32 },
    #[error("summation ratio {0:.3} is not below 1; the trace does not converge here")]
    DivergentRatio(f64),
    #[error("evaluation produced a non-finite value")]
    NonFinite,
    #[error("theta denominator too close to zero")]
    ThetaDenominatorNearZero,
    #[error("cannot evaluate a masked series at a point")]
    MaskedSeries,
    #[error("while evaluating {pattern}: {source}")]
    Pattern {
        pattern: String,
        #[source]
        source: Box<NumericError>,
    },
}

/// Numeric evaluation parameters.
#[derive(Clone, Copy, Debug)]
pub struct EvalConfig {
    /// Hard cap on the partition weight; the sum stops earlier once the
    /// tail estimate is below `tail_tol`.
    pub weight_cutoff: u32,
    pub tail_tol: f64,
    /// Guard margin δ: require `|q| + δ <= |t| <= 1/|q| - δ` and
    /// `|t - 1| >= δ`.
    pub annulus_guard: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            weight_cutoff: 48,
            tail_tol: 1e-12,
            annulus_guard: 0.02,
        }
    }
}

/// Which correlator a numeric evaluation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelatorFn {
    R,
    S,
    RMinus,
}

impl CorrelatorFn {
    pub fn kind(self) -> PartitionKind {
        match self {
            CorrelatorFn::R | CorrelatorFn::RMinus => PartitionKind::Strict,
            CorrelatorFn::S => PartitionKind::OddStrict,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CorrelatorFn::R => "R",
            CorrelatorFn::S => "S",
            CorrelatorFn::RMinus => "R-",
        }
    }
}

/// Value plus bookkeeping of one evaluation.
#[derive(Clone, Copy, Debug)]
pub struct EvalOutcome {
    pub value: Complex64,
    pub cutoff_used: u32,
    pub tail_estimate: f64,
}

fn guard_annulus(q: Complex64, t: Complex64, delta: f64) -> Result<(), NumericError> {
    let qn = q.norm();
    let tn = t.norm();
    if tn < qn + delta || (qn > 0.0 && tn > 1.0 / qn - delta) {
        return Err(NumericError::AnnulusViolation {
            arg: format!("{t}"),
        });
    }
    if (t - Complex64::new(1.0, 0.0)).norm() < delta {
        return Err(NumericError::PoleProximity {
            arg: format!("{t}"),
        });
    }
    Ok(())
}

/// Closed-form correction constant at a point (principal square root for
/// the Neveu-Schwarz case).
fn correction_value(func: CorrelatorFn, t: Complex64) -> Complex64 {
    match func {
        CorrelatorFn::R | CorrelatorFn::RMinus => {
            (t + 1.0) / ((t - Complex64::new(1.0, 0.0)) * 2.0)
        }
        CorrelatorFn::S => t.sqrt() / (t - Complex64::new(1.0, 0.0)),
    }
}

/// Eigenvalue `sum_k (t^(λ_k) - t^(-λ_k))` (hat powers for odd strict).
fn eigen_value(base_t: Complex64, lam: &Partition) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &part in lam.parts() {
        let p = base_t.powi(part as i32);
        acc += p - 1.0 / p;
    }
    acc
}

/// Trace evaluation `sum_λ q^(w(λ)) (±1)^(ℓ) prod_i (F(λ;t_i) + c(t_i))`
/// in the fixed enumeration order, by increasing weight, with a geometric
/// tail estimate. `normal_ordered` drops the correction constants.
pub fn eval_trace(
    func: CorrelatorFn,
    q: Complex64,
    ts: &[Complex64],
    cfg: &EvalConfig,
    normal_ordered: bool,
) -> Result<EvalOutcome, NumericError> {
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(NumericError::QOutsideDisk(qn));
    }
    for &t in ts {
        guard_annulus(q, t, cfg.annulus_guard)?;
    }
    let hat = func == CorrelatorFn::S;
    let base_q = if hat { q.sqrt() } else { q };
    let base_ts: Vec<Complex64> = ts
        .iter()
        .map(|&t| if hat { t.sqrt() } else { t })
        .collect();
    let corrections: Vec<Complex64> = ts.iter().map(|&t| correction_value(func, t)).collect();

    // worst-case per-weight growth: a single-row partition of weight m
    // contributes ~ (q * prod_i max(|t_i|, 1/|t_i|))^m in the base grading
    let mut ratio = base_q.norm();
    for bt in &base_ts {
        let m = bt.norm().max(1.0 / bt.norm());
        ratio *= m;
    }
    if ratio >= 0.995 {
        return Err(NumericError::DivergentRatio(ratio));
    }

    let mut total = Complex64::new(0.0, 0.0);
    let mut slice = Complex64::new(0.0, 0.0);
    // absolute term sums per weight drive the tail estimate, so slice-level
    // cancellation (or sparse weights like the pentagonal gaps of (q;q)_inf)
    // cannot fake convergence
    let mut slice_abs = 0.0f64;
    let mut current_weight = 0u32;
    let mut recent = [f64::INFINITY; 3];
    let mut cutoff_used = 0u32;
    let mut tail_estimate = f64::INFINITY;
    let mut done = false;

    let finish_slice = |w: u32, abs: f64, recent: &mut [f64; 3]| -> f64 {
        recent[(w % 3) as usize] = abs;
        if ratio == 0.0 {
            return 0.0;
        }
        let biggest = recent.iter().cloned().fold(0.0f64, f64::max);
        biggest * ratio / (1.0 - ratio)
    };

    for lam in enumerate(func.kind(), cfg.weight_cutoff) {
        if lam.weight() != current_weight {
            total += slice;
            tail_estimate = finish_slice(current_weight, slice_abs, &mut recent);
            cutoff_used = current_weight;
            if current_weight >= 6 && tail_estimate < cfg.tail_tol {
                done = true;
                break;
            }
            slice = Complex64::new(0.0, 0.0);
            slice_abs = 0.0;
            current_weight = lam.weight();
        }
        let mut term = base_q.powi(lam.weight() as i32);
        if func == CorrelatorFn::RMinus && lam.len() % 2 == 1 {
            term = -term;
        }
        for (bt, c) in base_ts.iter().zip(&corrections) {
            let f = eigen_value(*bt, &lam);
            term *= if normal_ordered { f } else { f + c };
        }
        slice += term;
        slice_abs += term.norm();
    }
    if !done {
        total += slice;
        tail_estimate = finish_slice(current_weight, slice_abs, &mut recent);
        cutoff_used = current_weight;
        if tail_estimate >= cfg.tail_tol {
            return Err(NumericError::TailAboveTolerance {
                estimate: tail_estimate,
                cutoff: cutoff_used,
            });
        }
    }
    if !total.is_finite() {
        return Err(NumericError::NonFinite);
    }
    Ok(EvalOutcome {
        value: total,
        cutoff_used,
        tail_estimate,
    })
}

/// The corrected correlator `R`, `S` or `R-` at a point.
pub fn eval_correlator(
    func: CorrelatorFn,
    q: Complex64,
    ts: &[Complex64],
    cfg: &EvalConfig,
) -> Result<EvalOutcome, NumericError> {
    eval_trace(func, q, ts, cfg, false)
}

/// The partition generating function at a point: `(-q;q)_inf` for the
/// strict family, `(-q^(1/2);q)_inf` for the odd strict one.
pub fn eval_generating_fn(kind: PartitionKind, q: Complex64) -> Result<Complex64, NumericError> {
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(NumericError::QOutsideDisk(qn));
    }
    let (mut a, step) = match kind {
        PartitionKind::Strict => (q, q),
        PartitionKind::OddStrict => (q.sqrt(), q),
    };
    let mut prod = Complex64::new(1.0, 0.0);
    while a.norm() > 1e-18 {
        prod *= 1.0 + a;
        a *= step;
    }
    Ok(prod)
}

/// Evaluate an exact truncated series at a numeric point. The caller passes
/// the value of the base grading variable (so `q^(1/2)` for hat-variable
/// series) and one value per declared Laurent variable.
pub fn eval_series_at(
    series: &Series,
    base_q: Complex64,
    ts: &[Complex64],
    z: Complex64,
) -> Result<Complex64, NumericError> {
    if series.is_masked() {
        return Err(NumericError::MaskedSeries);
    }
    assert_eq!(
        ts.len(),
        series.profile().num_vars(),
        "one value per declared variable"
    );
    let mut acc = Complex64::new(0.0, 0.0);
    for (key, coeff) in series.terms() {
        let c = coeff.to_f64().ok_or(NumericError::NonFinite)?;
        let mut term = Complex64::new(c, 0.0) * base_q.powi(key.q() as i32);
        for (i, t) in ts.iter().enumerate() {
            let e = key.t(i);
            if e != 0 {
                term *= t.powi(e);
            }
        }
        if key.z() != 0 {
            term *= z.powi(key.z() as i32);
        }
        acc += term;
    }
    if !acc.is_finite() {
        return Err(NumericError::NonFinite);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn empty_partition_only_at_q_zero() {
        let cfg = EvalConfig::default();
        let r = eval_correlator(CorrelatorFn::R, c(0.0, 0.0), &[c(2.0, 0.0)], &cfg).unwrap();
        assert!((r.value - c(1.5, 0.0)).norm() < 1e-15);
        let s = eval_correlator(CorrelatorFn::S, c(0.0, 0.0), &[c(4.0, 0.0)], &cfg).unwrap();
        assert!((s.value - c(2.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn annulus_and_pole_guards() {
        let cfg = EvalConfig::default();
        assert!(matches!(
            eval_correlator(CorrelatorFn::R, c(0.3, 0.0), &[c(0.25, 0.0)], &cfg),
            Err(NumericError::AnnulusViolation { .. })
        ));
        assert!(matches!(
            eval_correlator(CorrelatorFn::R, c(0.3, 0.0), &[c(1.001, 0.0)], &cfg),
            Err(NumericError::PoleProximity { .. })
        ));
        assert!(matches!(
            eval_correlator(CorrelatorFn::R, c(1.2, 0.0), &[c(1.5, 0.0)], &cfg),
            Err(NumericError::QOutsideDisk(_))
        ));
    }

    #[test]
    fn cutoff_stability() {
        // doubling the cap does not change a passing evaluation beyond tol
        let mut cfg = EvalConfig {
            weight_cutoff: 30,
            tail_tol: 1e-11,
            annulus_guard: 0.02,
        };
        let a = eval_correlator(CorrelatorFn::R, c(0.2, 0.05), &[c(1.4, 0.0)], &cfg).unwrap();
        cfg.weight_cutoff = 60;
        let b = eval_correlator(CorrelatorFn::R, c(0.2, 0.05), &[c(1.4, 0.0)], &cfg).unwrap();
        assert!((a.value - b.value).norm() < 1e-11);
    }

    #[test]
    fn deterministic_reruns() {
        let cfg = EvalConfig::default();
        let a = eval_correlator(CorrelatorFn::S, c(0.2, 0.03), &[c(1.3, 0.1)], &cfg).unwrap();
        let b = eval_correlator(CorrelatorFn::S, c(0.2, 0.03), &[c(1.3, 0.1)], &cfg).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn generating_fn_matches_truncated_product() {
        let g = eval_generating_fn(PartitionKind::Strict, c(0.2, 0.0)).unwrap();
        let mut expect = 1.0f64;
        let mut p = 0.2f64;
        while p > 1e-18 {
            expect *= 1.0 + p;
            p *= 0.2;
        }
        assert!((g - c(expect, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn series_point_evaluation() {
        use crate::rational::rat;
        use crate::ring::{Profile, Series};
        let p = Profile::univariate(3, "t", 3);
        // 1/2 q^2 t^{-1}
        let s = Series::monomial(&p, p.key().with_q(2).with_t(0, -1), rat(1, 2));
        let v = eval_series_at(&s, c(0.5, 0.0), &[c(2.0, 0.0)], c(1.0, 0.0)).unwrap();
        assert!((v - c(0.0625, 0.0)).norm() < 1e-15);
    }
}
