//! The static check registry: every identity the engine certifies, bound to
//! a name and a suite. Adding an identity is one more row in `registry()`.

use num_complex::Complex64;
use qfock_core::correlators::{
    closed_form_onepoint, corrected_onepoint, euler_identity, lambert_swap, lemma_row_sums,
    max_length, modify_z_form, normal_ordered_npoint, quasi_periodicity_exact,
    regularized_expectation_identity, rminus_closed_form, theta_logderiv_form, Convention,
};
use qfock_core::numeric::{
    b_function, check_difference_equation, check_pole_residue, check_quasi_periodicity,
    eval_correlator, eval_generating_fn, eval_series_at, suggested_arguments, theta, BRoute,
    CorrelatorFn, DifferenceEquationSpec, EvalConfig,
};
use qfock_core::partitions::{count_table, PartitionKind};
use qfock_core::rational::rat_int;
use qfock_core::report::CheckReport;
use qfock_core::ring::{pochhammer_inf, Profile, Sign};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    SpExact,
    OspExact,
    SuperExact,
    ShiftExact,
    #[value(name = "numeric-1pt")]
    Numeric1pt,
    NumericDiff,
    NumericTheta,
    All,
}

impl Suite {
    pub fn label(self) -> &'static str {
        match self {
            Suite::SpExact => "sp-exact",
            Suite::OspExact => "osp-exact",
            Suite::SuperExact => "super-exact",
            Suite::ShiftExact => "shift-exact",
            Suite::Numeric1pt => "numeric-1pt",
            Suite::NumericDiff => "numeric-diff",
            Suite::NumericTheta => "numeric-theta",
            Suite::All => "all",
        }
    }
}

/// Resolved parameters for a verify run.
#[derive(Clone, Debug)]
pub struct VerifyParams {
    pub q_order: u32,
    pub t_band: u32,
    pub z_order: u32,
    /// Window for the (heavier) shifted checks.
    pub shift_order: u32,
    pub q: Complex64,
    /// User-supplied evaluation points; used by difference-equation checks
    /// when the count matches the arity, otherwise the default policy
    /// arguments are taken.
    pub ts: Vec<Complex64>,
    /// Residual tolerance override for numeric checks.
    pub tol: Option<f64>,
    pub cutoff: u32,
    pub guard: f64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            q_order: 20,
            t_band: 20,
            z_order: 10,
            shift_order: 12,
            q: Complex64::new(0.2, 0.05),
            ts: Vec::new(),
            tol: None,
            cutoff: 60,
            guard: 0.02,
        }
    }
}

/// Sample points for the numeric quasi-periodicity checks.
const QP_POINTS: [((f64, f64), (f64, f64)); 3] = [
    ((0.25, 0.0), (2.0, 0.0)),
    ((0.2, 0.04), (2.13619733107084, 0.66080327081954)),
    ((0.15, -0.03), (2.35215978681898, -0.47680639390815)),
];

#[derive(Clone, Debug)]
enum CheckKind {
    PartitionCounts(PartitionKind),
    Euler,
    Lemma(PartitionKind, u32),
    FirstForm(PartitionKind, bool),
    ClosedFormOnePoint(PartitionKind),
    ThetaLogDeriv(PartitionKind),
    LambertSwap(PartitionKind),
    ModifyZ,
    RMinusClosedForm,
    QuasiExact(PartitionKind),
    ExactVsTrace(CorrelatorFn),
    QuasiNumeric(CorrelatorFn, usize),
    PoleResidue(usize),
    DiffEq(CorrelatorFn, usize),
    ThetaReflection,
    BSquaredGrid,
    BQuasiGrid,
}

pub struct CheckDef {
    pub name: String,
    pub suite: Suite,
    kind: CheckKind,
}

fn def(name: impl Into<String>, suite: Suite, kind: CheckKind) -> CheckDef {
    CheckDef {
        name: name.into(),
        suite,
        kind,
    }
}

/// Registry order is report order.
pub fn registry() -> Vec<CheckDef> {
    use CheckKind::*;
    use PartitionKind::{OddStrict, Strict};
    let mut defs = vec![
        def("sp/partition-counts", Suite::SpExact, PartitionCounts(Strict)),
        def("sp/euler-identity", Suite::SpExact, Euler),
    ];
    for k in 0..=6u32 {
        defs.push(def(format!("sp/lemma-row-sums-k{k}"), Suite::SpExact, Lemma(Strict, k)));
    }
    defs.extend([
        def("sp/first-form", Suite::SpExact, FirstForm(Strict, false)),
        def("sp/closed-form-1pt", Suite::SpExact, ClosedFormOnePoint(Strict)),
        def("sp/theta-logderiv", Suite::SpExact, ThetaLogDeriv(Strict)),
        def("sp/lambert-swap", Suite::SpExact, LambertSwap(Strict)),
        def("osp/partition-counts", Suite::OspExact, PartitionCounts(OddStrict)),
    ]);
    for k in 0..=6u32 {
        defs.push(def(format!("osp/lemma-row-sums-k{k}"), Suite::OspExact, Lemma(OddStrict, k)));
    }
    defs.extend([
        def("osp/first-form", Suite::OspExact, FirstForm(OddStrict, false)),
        def("osp/closed-form-1pt", Suite::OspExact, ClosedFormOnePoint(OddStrict)),
        def("osp/theta-logderiv", Suite::OspExact, ThetaLogDeriv(OddStrict)),
        def("osp/lambert-swap", Suite::OspExact, LambertSwap(OddStrict)),
        def("super/first-form-z-sp", Suite::SuperExact, FirstForm(Strict, true)),
        def("super/first-form-z-osp", Suite::SuperExact, FirstForm(OddStrict, true)),
        def("super/modify-z", Suite::SuperExact, ModifyZ),
        def("super/r-minus-closed-form", Suite::SuperExact, RMinusClosedForm),
        def("shift/quasi-periodicity-sp", Suite::ShiftExact, QuasiExact(Strict)),
        def("shift/quasi-periodicity-osp", Suite::ShiftExact, QuasiExact(OddStrict)),
        def("num1pt/exact-vs-trace-r", Suite::Numeric1pt, ExactVsTrace(CorrelatorFn::R)),
        def("num1pt/exact-vs-trace-s", Suite::Numeric1pt, ExactVsTrace(CorrelatorFn::S)),
    ]);
    for i in 0..QP_POINTS.len() {
        defs.push(def(
            format!("num1pt/quasi-r-p{}", i + 1),
            Suite::Numeric1pt,
            QuasiNumeric(CorrelatorFn::R, i),
        ));
        defs.push(def(
            format!("num1pt/quasi-s-p{}", i + 1),
            Suite::Numeric1pt,
            QuasiNumeric(CorrelatorFn::S, i),
        ));
    }
    defs.extend([
        def("num1pt/pole-residue-n1", Suite::Numeric1pt, PoleResidue(0)),
        def("num1pt/pole-residue-n2", Suite::Numeric1pt, PoleResidue(1)),
        def("numdiff/r-n2", Suite::NumericDiff, DiffEq(CorrelatorFn::R, 2)),
        def("numdiff/r-n3", Suite::NumericDiff, DiffEq(CorrelatorFn::R, 3)),
        def("numdiff/s-n2", Suite::NumericDiff, DiffEq(CorrelatorFn::S, 2)),
        def("numdiff/s-n3", Suite::NumericDiff, DiffEq(CorrelatorFn::S, 3)),
        def("numdiff/rminus-n2", Suite::NumericDiff, DiffEq(CorrelatorFn::RMinus, 2)),
        def("numdiff/rminus-n3", Suite::NumericDiff, DiffEq(CorrelatorFn::RMinus, 3)),
        def("numtheta/reflection", Suite::NumericTheta, ThetaReflection),
        def("numtheta/b-squared-grid", Suite::NumericTheta, BSquaredGrid),
        def("numtheta/b-quasi-periodicity", Suite::NumericTheta, BQuasiGrid),
    ]);
    defs
}

fn window_params(p: &VerifyParams) -> serde_json::Value {
    serde_json::json!({"q_order": p.q_order, "t_band": p.t_band})
}

fn exact_report(
    name: &str,
    p: &VerifyParams,
    build: impl FnOnce(&Profile) -> Result<(qfock_core::Series, qfock_core::Series), qfock_core::correlators::CorrelatorError>,
    profile: Profile,
) -> CheckReport {
    match build(&profile) {
        Ok((lhs, rhs)) => lhs
            .eq_on_window(&rhs, &profile, name, window_params(p))
            .unwrap_or_else(|e| CheckReport::failed_to_run(name, window_params(p), e.to_string())),
        Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
    }
}

fn eval_cfg(p: &VerifyParams, tail_tol: f64) -> EvalConfig {
    EvalConfig {
        weight_cutoff: p.cutoff,
        tail_tol,
        annulus_guard: p.guard,
    }
}

fn run_check(def: &CheckDef, p: &VerifyParams) -> CheckReport {
    let name = def.name.as_str();
    match &def.kind {
        CheckKind::PartitionCounts(kind) => {
            let w = p.q_order.max(20);
            let prof = Profile::q_only(w);
            let step = if *kind == PartitionKind::Strict { 1 } else { 2 };
            let gf = match pochhammer_inf(&prof.key().with_q(1), Sign::Plus, step, &prof) {
                Ok(s) => s,
                Err(e) => {
                    return CheckReport::failed_to_run(name, window_params(p), e.to_string())
                }
            };
            let counts = count_table(*kind, w);
            for (n, &c) in counts.iter().enumerate() {
                if gf.coeff_at(&prof.key().with_q(n as u32)) != rat_int(c as i64) {
                    return CheckReport::exact_fail(
                        name,
                        window_params(p),
                        qfock_core::report::MonomialMismatch {
                            monomial: format!("q^{n}"),
                            lhs: c.to_string(),
                            rhs: gf.coeff_at(&prof.key().with_q(n as u32)).to_string(),
                        },
                    );
                }
            }
            CheckReport::exact_pass(name, window_params(p), counts.len())
        }
        CheckKind::Euler => {
            let prof = Profile::new(p.q_order, &[], p.z_order);
            exact_report(name, p, euler_identity, prof)
        }
        CheckKind::Lemma(kind, k) => {
            let prof = Profile::univariate(p.q_order, "t", p.t_band);
            let (kind, k) = (*kind, *k);
            exact_report(name, p, move |pr| lemma_row_sums(kind, k, pr), prof)
        }
        CheckKind::FirstForm(kind, z) => {
            let prof = if *z {
                Profile::new(p.q_order, &[("t", p.t_band)], p.z_order)
            } else {
                Profile::univariate(p.q_order, "t", p.t_band)
            };
            let (kind, z) = (*kind, *z);
            exact_report(name, p, move |pr| regularized_expectation_identity(kind, z, pr), prof)
        }
        CheckKind::ClosedFormOnePoint(kind) => {
            let prof = Profile::univariate(p.q_order, "t", p.t_band.max(p.q_order));
            let kind = *kind;
            exact_report(
                name,
                p,
                move |pr| Ok((normal_ordered_npoint(kind, pr)?, closed_form_onepoint(kind, pr)?)),
                prof,
            )
        }
        CheckKind::ThetaLogDeriv(kind) => {
            let prof = Profile::univariate(p.q_order, "t", p.t_band.max(p.q_order));
            let kind = *kind;
            exact_report(
                name,
                p,
                move |pr| {
                    Ok((
                        corrected_onepoint(kind, Convention::Minus, pr, false)?,
                        theta_logderiv_form(kind, pr)?,
                    ))
                },
                prof,
            )
        }
        CheckKind::LambertSwap(kind) => {
            let prof = Profile::univariate(p.q_order, "t", p.t_band);
            let kind = *kind;
            exact_report(name, p, move |pr| lambert_swap(kind, pr), prof)
        }
        CheckKind::ModifyZ => {
            let prof = Profile::new(
                p.q_order,
                &[("t", p.t_band.max(p.q_order))],
                max_length(p.q_order).max(p.z_order.min(8)),
            );
            exact_report(name, p, modify_z_form, prof)
        }
        CheckKind::RMinusClosedForm => {
            let prof = Profile::univariate(p.q_order, "t", p.t_band.max(p.q_order));
            exact_report(name, p, rminus_closed_form, prof)
        }
        CheckKind::QuasiExact(kind) => {
            let n = p.shift_order;
            match quasi_periodicity_exact(*kind, n, n) {
                Ok(mut r) => {
                    r.identity = name.to_string();
                    r
                }
                Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
            }
        }
        CheckKind::ExactVsTrace(func) => {
            let q = Complex64::new(0.2, 0.0);
            let t = Complex64::new(1.5, 0.0);
            let one = Complex64::new(1.0, 0.0);
            let cfg = eval_cfg(p, 1e-12);
            let tol = p.tol.unwrap_or(1e-6);
            let (kind, order, base_q, base_t, corr) = match func {
                CorrelatorFn::S => (
                    PartitionKind::OddStrict,
                    50,
                    q.sqrt(),
                    t.sqrt(),
                    t.sqrt() / (t - 1.0),
                ),
                _ => (
                    PartitionKind::Strict,
                    25,
                    q,
                    t,
                    (t + 1.0) / ((t - 1.0) * 2.0),
                ),
            };
            let prof = Profile::univariate(order, "t", order);
            let series = match normal_ordered_npoint(kind, &prof) {
                Ok(s) => s,
                Err(e) => {
                    return CheckReport::failed_to_run(name, window_params(p), e.to_string())
                }
            };
            let outcome = (|| {
                let series_route = eval_series_at(&series, base_q, &[base_t], one)?
                    + corr * eval_generating_fn(kind, q)?;
                let numeric = eval_correlator(*func, q, &[t], &cfg)?;
                Ok::<_, qfock_core::numeric::NumericError>((
                    (series_route - numeric.value).norm(),
                    numeric.cutoff_used,
                ))
            })();
            match outcome {
                Ok((residual, cutoff)) => CheckReport::numeric(
                    name,
                    serde_json::json!({"q": "0.2", "t": "1.5", "series_order": order}),
                    residual,
                    tol,
                    cutoff,
                ),
                Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
            }
        }
        CheckKind::QuasiNumeric(func, idx) => {
            let ((qr, qi), (tr, ti)) = QP_POINTS[*idx];
            let cfg = EvalConfig {
                weight_cutoff: p.cutoff.max(80),
                tail_tol: 1e-11,
                annulus_guard: p.guard,
            };
            let tol = p.tol.unwrap_or(1e-9);
            match check_quasi_periodicity(
                *func,
                Complex64::new(qr, qi),
                Complex64::new(tr, ti),
                &cfg,
                tol,
            ) {
                Ok(mut r) => {
                    r.identity = name.to_string();
                    r
                }
                Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
            }
        }
        CheckKind::PoleResidue(rest_len) => {
            let cfg = eval_cfg(p, 1e-12);
            let rest: Vec<Complex64> = if *rest_len == 0 {
                Vec::new()
            } else {
                vec![Complex64::new(1.3, 0.0)]
            };
            let tol = p.tol.unwrap_or(if *rest_len == 0 { 1e-6 } else { 1e-4 });
            match check_pole_residue(Complex64::new(0.2, 0.0), &rest, &cfg, 1e-4, tol) {
                Ok(mut r) => {
                    r.identity = name.to_string();
                    r
                }
                Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
            }
        }
        CheckKind::DiffEq(func, arity) => {
            let ts = if p.ts.len() == *arity {
                p.ts.clone()
            } else {
                suggested_arguments(p.q, *arity)
            };
            let cfg = eval_cfg(p, 2e-9);
            let tol = p.tol.unwrap_or(1e-8);
            let spec = DifferenceEquationSpec {
                func: *func,
                arity: *arity,
            };
            match check_difference_equation(&spec, p.q, &ts, &cfg, tol) {
                Ok(mut r) => {
                    r.identity = name.to_string();
                    r
                }
                Err(e) => CheckReport::failed_to_run(name, window_params(p), e.to_string()),
            }
        }
        CheckKind::ThetaReflection => {
            let pts = [
                (Complex64::new(0.15, 0.05), Complex64::new(1.3, 0.2)),
                (Complex64::new(0.1, 0.0), Complex64::new(0.8, 0.4)),
                (Complex64::new(0.2, -0.07), Complex64::new(1.1, -0.3)),
            ];
            let tol = p.tol.unwrap_or(1e-12);
            let mut worst = 0.0f64;
            for (q, t) in pts {
                for j in [0u8, 1] {
                    match (theta(j, q, t, 1e-13), theta(j, q, 1.0 / t, 1e-13)) {
                        (Ok(a), Ok(b)) => worst = worst.max((a - b).norm()),
                        (Err(e), _) | (_, Err(e)) => {
                            return CheckReport::failed_to_run(
                                name,
                                serde_json::Value::Null,
                                e.to_string(),
                            )
                        }
                    }
                }
            }
            CheckReport::numeric(name, serde_json::json!({"points": 3}), worst, tol, 0)
        }
        CheckKind::BSquaredGrid | CheckKind::BQuasiGrid => {
            let tol = p.tol.unwrap_or(1e-9);
            let quasi = matches!(def.kind, CheckKind::BQuasiGrid);
            let mut worst = 0.0f64;
            for &qm in &[0.1, 0.15, 0.2, 0.25, 0.3] {
                let q = Complex64::from_polar(qm, -std::f64::consts::FRAC_PI_6);
                for &tv in &[1.25, 1.4, 1.55, 1.7, 1.85] {
                    let t = Complex64::new(tv, 0.0);
                    let outcome = (|| {
                        if quasi {
                            let a = b_function(q, q * t, BRoute::Theta, 1e-13, 0.01)?;
                            let b = b_function(q, t, BRoute::Theta, 1e-13, 0.01)?;
                            Ok::<f64, qfock_core::numeric::NumericError>((a * b + 1.0).norm())
                        } else {
                            let a = b_function(q, t, BRoute::Theta, 1e-13, 0.01)?;
                            let b = b_function(q, t, BRoute::Product, 1e-13, 0.01)?;
                            Ok((a * a - b * b).norm())
                        }
                    })();
                    match outcome {
                        Ok(r) => worst = worst.max(r),
                        Err(e) => {
                            return CheckReport::failed_to_run(
                                name,
                                serde_json::json!({"q": qm, "t": tv}),
                                e.to_string(),
                            )
                        }
                    }
                }
            }
            CheckReport::numeric(name, serde_json::json!({"grid": "5x5"}), worst, tol, 0)
        }
    }
}

/// Result of one verify invocation.
#[derive(Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub duration_ms: u128,
    pub checks: Vec<CheckReport>,
}

/// Run every check of the selected suite on a worker pool; report order
/// follows the registry regardless of completion order.
pub fn run_suite(suite: Suite, params: &VerifyParams) -> SuiteResult {
    let start = Instant::now();
    let defs: Vec<CheckDef> = registry()
        .into_iter()
        .filter(|d| suite == Suite::All || d.suite == suite)
        .collect();
    let checks: Vec<CheckReport> = defs.par_iter().map(|d| run_check(d, params)).collect();
    SuiteResult {
        suite: suite.label().to_string(),
        pass: checks.iter().all(|c| c.pass),
        duration_ms: start.elapsed().as_millis(),
        checks,
    }
}
