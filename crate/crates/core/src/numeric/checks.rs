//! Residual checks: q-difference equations, pole structure, numeric
//! quasi-periodicity.

use super::{eval_correlator, eval_generating_fn, CorrelatorFn, EvalConfig, NumericError};
use crate::report::CheckReport;
use num_complex::Complex64;

/// One merge pattern of the difference equation: the indices `i` (among
/// `2..=n`) folded into the first argument, with their exponents `ε_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergePattern {
    pub indices: Vec<usize>,
    pub signs: Vec<i8>,
}

impl MergePattern {
    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn minus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    fn describe(&self) -> String {
        if self.indices.is_empty() {
            return "s=0".to_string();
        }
        let parts: Vec<String> = self
            .indices
            .iter()
            .zip(&self.signs)
            .map(|(i, s)| format!("t{}^{}", i, if *s > 0 { "+1" } else { "-1" }))
            .collect();
        format!("merge {}", parts.join(" "))
    }
}

/// All `3^(n-1)` merge patterns over positions `2..=n`, in a fixed ternary
/// order (absent, +1, -1 per position).
pub fn merge_patterns(arity: usize) -> Vec<MergePattern> {
    assert!(arity >= 1);
    let slots = arity - 1;
    let total = 3usize.pow(slots as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut c = code;
        let mut indices = Vec::new();
        let mut signs = Vec::new();
        for pos in 0..slots {
            let digit = c % 3;
            c /= 3;
            if digit > 0 {
                indices.push(pos + 2);
                signs.push(if digit == 1 { 1 } else { -1 });
            }
        }
        out.push(MergePattern { indices, signs });
    }
    out
}

/// Which difference equation to certify.
#[derive(Clone, Debug)]
pub struct DifferenceEquationSpec {
    pub func: CorrelatorFn,
    pub arity: usize,
}

fn eval_with_context(
    func: CorrelatorFn,
    q: Complex64,
    ts: &[Complex64],
    cfg: &EvalConfig,
    pattern: &str,
) -> Result<(Complex64, u32), NumericError> {
    eval_correlator(func, q, ts, cfg)
        .map(|o| (o.value, o.cutoff_used))
        .map_err(|e| NumericError::Pattern {
            pattern: pattern.to_string(),
            source: Box::new(e),
        })
}

/// Certify `F(q t_1, t_2, ..., t_n) = sum_patterns (sign) F(t_1 prod t_i^(ε_i), ...)`
/// numerically. For `R` and `S` the pattern sign is `(-1)^(1+s+#ε)`; the
/// super variant `R-` uses `(-1)^(s+#ε)` together with the extra leading
/// term `-R-(t_2, ..., t_n)`.
pub fn check_difference_equation(
    spec: &DifferenceEquationSpec,
    q: Complex64,
    ts: &[Complex64],
    cfg: &EvalConfig,
    tolerance: f64,
) -> Result<CheckReport, NumericError> {
    assert_eq!(ts.len(), spec.arity, "one argument per slot");
    assert!(spec.arity >= 1);

    let mut lhs_args = ts.to_vec();
    lhs_args[0] *= q;
    let (lhs, mut cutoff) = eval_with_context(spec.func, q, &lhs_args, cfg, "lhs")?;

    let mut rhs = Complex64::new(0.0, 0.0);
    if spec.func == CorrelatorFn::RMinus {
        let (head, c) = eval_with_context(spec.func, q, &ts[1..], cfg, "leading R-(t2..)")?;
        rhs -= head;
        cutoff = cutoff.max(c);
    }
    for pattern in merge_patterns(spec.arity) {
        let mut first = ts[0];
        for (i, s) in pattern.indices.iter().zip(&pattern.signs) {
            let t = ts[i - 1];
            first *= if *s > 0 { t } else { 1.0 / t };
        }
        let mut args = vec![first];
        for j in 2..=spec.arity {
            if !pattern.indices.contains(&j) {
                args.push(ts[j - 1]);
            }
        }
        let s = pattern.order();
        let neg = pattern.minus_count();
        let parity = match spec.func {
            CorrelatorFn::RMinus => s + neg,
            _ => 1 + s + neg,
        };
        let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
        let (value, c) = eval_with_context(spec.func, q, &args, cfg, &pattern.describe())?;
        rhs += sign * value;
        cutoff = cutoff.max(c);
    }

    let residual = (lhs - rhs).norm();
    let params = serde_json::json!({
        "func": spec.func.name(),
        "n": spec.arity,
        "q": format!("{q}"),
        "t": ts.iter().map(|t| format!("{t}")).collect::<Vec<_>>(),
    });
    Ok(CheckReport::numeric(
        &format!("difference equation {} n={}", spec.func.name(), spec.arity),
        params,
        residual,
        tolerance,
        cutoff,
    ))
}

/// Certify the pole structure at `t_1 = 1`: Richardson-extrapolate
/// `(t_1 - 1) R(t_1, rest)` from `t_1 = 1 + eps, 1 + eps/2` and compare the
/// limit against `R(rest)` (or `(-q;q)_inf` when `rest` is empty).
pub fn check_pole_residue(
    q: Complex64,
    rest: &[Complex64],
    cfg: &EvalConfig,
    eps: f64,
    tolerance: f64,
) -> Result<CheckReport, NumericError> {
    // the probe points sit close to t = 1, so relax the pole guard for them
    let probe_cfg = EvalConfig {
        annulus_guard: (eps / 4.0).min(cfg.annulus_guard),
        ..*cfg
    };
    let f = |e: f64| -> Result<(Complex64, u32), NumericError> {
        let t1 = Complex64::new(1.0 + e, 0.0);
        let mut args = vec![t1];
        args.extend_from_slice(rest);
        let out = eval_correlator(CorrelatorFn::R, q, &args, &probe_cfg)?;
        Ok(((t1 - 1.0) * out.value, out.cutoff_used))
    };
    let (fe, c1) = f(eps)?;
    let (fh, c2) = f(eps / 2.0)?;
    let limit = 2.0 * fh - fe;
    let (target, c3) = if rest.is_empty() {
        (eval_generating_fn(crate::partitions::PartitionKind::Strict, q)?, 0)
    } else {
        let out = eval_correlator(CorrelatorFn::R, q, rest, cfg)?;
        (out.value, out.cutoff_used)
    };
    let residual = (limit - target).norm() / target.norm().max(1.0);
    let params = serde_json::json!({
        "q": format!("{q}"),
        "rest": rest.iter().map(|t| format!("{t}")).collect::<Vec<_>>(),
        "eps": eps,
    });
    Ok(CheckReport::numeric(
        &format!("pole residue n={}", rest.len() + 1),
        params,
        residual,
        tolerance,
        c1.max(c2).max(c3),
    ))
}

/// Certify `F(qt) = -F(t)` numerically for `F` in `{R, S}`.
pub fn check_quasi_periodicity(
    func: CorrelatorFn,
    q: Complex64,
    t: Complex64,
    cfg: &EvalConfig,
    tolerance: f64,
) -> Result<CheckReport, NumericError> {
    let a = eval_correlator(func, q, &[q * t], cfg)?;
    let b = eval_correlator(func, q, &[t], cfg)?;
    let residual = (a.value + b.value).norm();
    let params = serde_json::json!({
        "func": func.name(),
        "q": format!("{q}"),
        "t": format!("{t}"),
    });
    Ok(CheckReport::numeric(
        &format!("quasi-periodicity {}(qt) = -{}(t)", func.name(), func.name()),
        params,
        residual,
        tolerance,
        a.cutoff_used.max(b.cutoff_used),
    ))
}

/// Default argument policy for difference-equation checks: `|t_1| = |q|^(-1/2)`
/// with a generic phase, the remaining moduli on the unit circle. This keeps
/// `q t_1` and every merged argument inside the annulus with summation
/// ratios near `|q|^(1/2)`.
pub fn suggested_arguments(q: Complex64, arity: usize) -> Vec<Complex64> {
    let phases = [0.13f64, 0.41, -0.29, 0.77, -0.53];
    let mut out = Vec::with_capacity(arity);
    out.push(Complex64::from_polar(q.norm().powf(-0.5), phases[0]));
    for i in 1..arity {
        out.push(Complex64::from_polar(1.0, phases[i % phases.len()]));
    }
    out
}
