//! Acceptance suite: every verification target the project promises, at its
//! stated window, tolerance and time budget. One pass/fail line prints per
//! criterion (visible with `cargo test --test acceptance -- --nocapture`).

use num_complex::Complex64;
use qfock_core::correlators::{
    closed_form_onepoint, corrected_onepoint, euler_identity, lemma_row_sums, max_length,
    modify_z_form, normal_ordered_npoint, quasi_periodicity_exact,
    regularized_expectation_identity, rminus_closed_form, theta_logderiv_form, Convention,
};
use qfock_core::numeric::{
    b_function, check_difference_equation, check_pole_residue, check_quasi_periodicity,
    eval_correlator, eval_generating_fn, eval_series_at, eval_trace, suggested_arguments,
    BRoute, CorrelatorFn, DifferenceEquationSpec, EvalConfig,
};
use qfock_core::partitions::{count_table, PartitionKind};
use qfock_core::ring::{pochhammer_inf, Profile, Series, Sign};
use std::time::{Duration, Instant};

struct Criterion {
    name: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn new(name: &'static str, budget_secs: u64) -> Criterion {
        Criterion {
            name,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    fn finish(self, pass: bool, detail: String) {
        let elapsed = self.start.elapsed();
        let status = if pass { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {} ({} ms) {detail}",
            self.name,
            elapsed.as_millis()
        );
        assert!(pass, "{}: {detail}", self.name);
        assert!(
            elapsed <= self.budget,
            "{} exceeded its {:?} budget: {:?}",
            self.name,
            self.budget,
            elapsed
        );
    }
}

fn exact_pair(
    c: Criterion,
    lhs: &Series,
    rhs: &Series,
    window: &Profile,
) {
    let report = lhs
        .eq_on_window(rhs, window, c.name, serde_json::Value::Null)
        .unwrap();
    let detail = match (&report.mismatch, report.compared) {
        (Some(m), _) => format!("first mismatch at {}: lhs={} rhs={}", m.monomial, m.lhs, m.rhs),
        (None, Some(n)) => format!("{n} coefficients agree"),
        _ => String::new(),
    };
    c.finish(report.pass, detail);
}

#[test]
fn criterion_01_partition_counts() {
    let c = Criterion::new("criterion 1: partition counts vs products to weight 60", 5);
    let p = Profile::q_only(60);
    let strict_gf = pochhammer_inf(&p.key().with_q(1), Sign::Plus, 1, &p).unwrap();
    let odd_gf = pochhammer_inf(&p.key().with_q(1), Sign::Plus, 2, &p).unwrap();
    let mut pass = true;
    let mut detail = String::from("both families agree");
    for (kind, gf) in [
        (PartitionKind::Strict, strict_gf),
        (PartitionKind::OddStrict, odd_gf),
    ] {
        let counts = count_table(kind, 60);
        for (n, &count) in counts.iter().enumerate() {
            let coeff = gf.coeff_at(&p.key().with_q(n as u32));
            if coeff != qfock_core::rational::rat_int(count as i64) {
                pass = false;
                detail = format!("{kind:?} weight {n}: enumerated {count}, product {coeff}");
            }
        }
    }
    c.finish(pass, detail);
}

#[test]
fn criterion_02_euler_identity() {
    let c = Criterion::new("criterion 2: Euler identity q-order 30, z-order 15", 5);
    let p = Profile::new(30, &[], 15);
    let (lhs, rhs) = euler_identity(&p).unwrap();
    exact_pair(c, &lhs, &rhs, &p);
}

#[test]
fn criterion_03_lemma_row_sums() {
    let c = Criterion::new("criterion 3: row-sum lemmas k = 0..6 at q-order 25", 30);
    let p = Profile::univariate(25, "t", 25);
    for kind in [PartitionKind::Strict, PartitionKind::OddStrict] {
        for k in 0..=6u32 {
            let (lhs, rhs) = lemma_row_sums(kind, k, &p).unwrap();
            let r = lhs
                .eq_on_window(&rhs, &p, "lemma", serde_json::json!({"k": k}))
                .unwrap();
            if !r.pass {
                c.finish(false, format!("{kind:?} k={k}: {r}"));
                return;
            }
        }
    }
    c.finish(true, "14 lemma instances exact".to_string());
}

#[test]
fn criterion_04_first_form_identities() {
    let c = Criterion::new(
        "criterion 4: regularized first-form identities, q-order 25, z-order 12",
        60,
    );
    let plain = Profile::univariate(25, "t", 25);
    let with_z = Profile::new(25, &[("t", 25)], 12);
    for (kind, z, p) in [
        (PartitionKind::Strict, false, &plain),
        (PartitionKind::OddStrict, false, &plain),
        (PartitionKind::Strict, true, &with_z),
        (PartitionKind::OddStrict, true, &with_z),
    ] {
        let (lhs, rhs) = regularized_expectation_identity(kind, z, p).unwrap();
        let r = lhs
            .eq_on_window(&rhs, p, "first-form", serde_json::json!({"z": z}))
            .unwrap();
        if !r.pass {
            c.finish(false, format!("{kind:?} z={z}: {r}"));
            return;
        }
    }
    c.finish(true, "4 instances exact (both kinds, with and without z)".to_string());
}

#[test]
fn criterion_05_closed_form_onepoint() {
    let c = Criterion::new(
        "criterion 5: normal-ordered one-point vs closed form at order 25",
        60,
    );
    let p = Profile::univariate(25, "t", 25);
    for kind in [PartitionKind::Strict, PartitionKind::OddStrict] {
        let lhs = normal_ordered_npoint(kind, &p).unwrap();
        let rhs = closed_form_onepoint(kind, &p).unwrap();
        let r = lhs
            .eq_on_window(&rhs, &p, "closed-form", serde_json::Value::Null)
            .unwrap();
        if !r.pass {
            c.finish(false, format!("{kind:?}: {r}"));
            return;
        }
    }
    c.finish(true, "partition sum equals closed form for both kinds".to_string());
}

#[test]
fn criterion_06_theta_logderiv_form() {
    let c = Criterion::new(
        "criterion 6: corrected one-point vs theta log-derivative at order 20",
        60,
    );
    let p = Profile::univariate(20, "t", 20);
    for kind in [PartitionKind::Strict, PartitionKind::OddStrict] {
        let lhs = corrected_onepoint(kind, Convention::Minus, &p, false).unwrap();
        let rhs = theta_logderiv_form(kind, &p).unwrap();
        let r = lhs
            .eq_on_window(&rhs, &p, "theta-logderiv", serde_json::Value::Null)
            .unwrap();
        if !r.pass {
            c.finish(false, format!("{kind:?}: {r}"));
            return;
        }
    }
    c.finish(true, "theta-quotient route exact for both kinds".to_string());
}

#[test]
fn criterion_07_super_closed_forms() {
    let c = Criterion::new("criterion 7: super one-point closed forms at order 20", 30);
    let zp = Profile::new(20, &[("t", 20)], max_length(20));
    let (lhs, rhs) = modify_z_form(&zp).unwrap();
    let r = lhs
        .eq_on_window(&rhs, &zp, "modify-z", serde_json::Value::Null)
        .unwrap();
    if !r.pass {
        c.finish(false, r.to_string());
        return;
    }
    let p = Profile::univariate(20, "t", 20);
    let (lhs, rhs) = rminus_closed_form(&p).unwrap();
    let r = lhs
        .eq_on_window(&rhs, &p, "r-minus", serde_json::Value::Null)
        .unwrap();
    c.finish(
        r.pass,
        format!(
            "z-graded form and z = -1 product form both exact ({} coefficients)",
            r.compared.unwrap_or(0)
        ),
    );
}

#[test]
fn criterion_08_quasi_periodicity_exact() {
    let c = Criterion::new("criterion 8: exact quasi-periodicity at (12, 12)", 60);
    for kind in [PartitionKind::Strict, PartitionKind::OddStrict] {
        let r = quasi_periodicity_exact(kind, 12, 12).unwrap();
        if !r.pass {
            c.finish(false, format!("{kind:?}: {r}"));
            return;
        }
    }
    c.finish(true, "masked shifted comparison exact for both kinds".to_string());
}

#[test]
fn criterion_09_b_function_grid() {
    let c = Criterion::new("criterion 9: B(q,t) identities on a 5x5 grid", 5);
    // Arg q < 0 realises the coherent -1 branch for real t (signed zero
    // places Arg(-t) at -pi)
    let moduli = [0.1, 0.15, 0.2, 0.25, 0.3];
    let ts = [1.25, 1.4, 1.55, 1.7, 1.85];
    let guard = 0.01;
    let mut worst_qp = 0.0f64;
    let mut worst_sq = 0.0f64;
    for &qm in &moduli {
        let q = Complex64::from_polar(qm, -std::f64::consts::FRAC_PI_6);
        for &tv in &ts {
            let t = Complex64::new(tv, 0.0);
            let b_shift = b_function(q, q * t, BRoute::Theta, 1e-13, guard).unwrap();
            let b_base = b_function(q, t, BRoute::Theta, 1e-13, guard).unwrap();
            worst_qp = worst_qp.max((b_shift * b_base + 1.0).norm());
            let via_theta = b_function(q, t, BRoute::Theta, 1e-13, guard).unwrap();
            let via_product = b_function(q, t, BRoute::Product, 1e-13, guard).unwrap();
            worst_sq = worst_sq.max((via_theta * via_theta - via_product * via_product).norm());
        }
    }
    let pass = worst_qp < 1e-9 && worst_sq < 1e-9;
    c.finish(
        pass,
        format!("max |B(q,qt)B(q,t)+1| = {worst_qp:.3e}, max squared-route gap = {worst_sq:.3e}"),
    );
}

#[test]
fn criterion_10_difference_equations() {
    let c = Criterion::new(
        "criterion 10: numeric difference equations n = 2, 3 for R, S, R-",
        60,
    );
    let q = Complex64::new(0.2, 0.05);
    let cfg = EvalConfig {
        weight_cutoff: 60,
        tail_tol: 2e-9,
        annulus_guard: 0.02,
    };
    let mut worst = 0.0f64;
    for func in [CorrelatorFn::R, CorrelatorFn::S, CorrelatorFn::RMinus] {
        for arity in [2usize, 3] {
            let ts = suggested_arguments(q, arity);
            let spec = DifferenceEquationSpec { func, arity };
            let r = check_difference_equation(&spec, q, &ts, &cfg, 1e-8).unwrap();
            worst = worst.max(r.residual.unwrap());
            if !r.pass {
                c.finish(false, r.to_string());
                return;
            }
        }
    }
    c.finish(true, format!("6 equations, worst residual {worst:.3e} < 1e-8"));
}

#[test]
fn criterion_11_numeric_quasi_periodicity() {
    let c = Criterion::new(
        "criterion 11: numeric quasi-periodicity at three sample points",
        5,
    );
    let cfg = EvalConfig {
        weight_cutoff: 80,
        tail_tol: 1e-11,
        annulus_guard: 0.02,
    };
    let points = [
        (Complex64::new(0.25, 0.0), Complex64::new(2.0, 0.0)),
        (
            Complex64::new(0.2, 0.04),
            Complex64::from_polar(0.2f64.powf(-0.5), 0.3),
        ),
        (
            Complex64::new(0.15, -0.03),
            Complex64::from_polar(2.4, -0.2),
        ),
    ];
    let mut worst = 0.0f64;
    for (q, t) in points {
        for func in [CorrelatorFn::R, CorrelatorFn::S] {
            let r = check_quasi_periodicity(func, q, t, &cfg, 1e-9).unwrap();
            worst = worst.max(r.residual.unwrap());
            if !r.pass {
                c.finish(false, r.to_string());
                return;
            }
        }
    }
    c.finish(true, format!("worst residual {worst:.3e} < 1e-9"));
}

#[test]
fn criterion_12_pole_structure() {
    let c = Criterion::new("criterion 12: pole structure at t1 = 1", 10);
    let cfg = EvalConfig {
        weight_cutoff: 60,
        tail_tol: 1e-12,
        annulus_guard: 0.02,
    };
    let q = Complex64::new(0.2, 0.0);
    let n1 = check_pole_residue(q, &[], &cfg, 1e-4, 1e-6).unwrap();
    if !n1.pass {
        c.finish(false, n1.to_string());
        return;
    }
    let n2 = check_pole_residue(q, &[Complex64::new(1.3, 0.0)], &cfg, 1e-4, 1e-4).unwrap();
    c.finish(
        n2.pass,
        format!(
            "n=1 residual {:.3e} < 1e-6, n=2 residual {:.3e} < 1e-4",
            n1.residual.unwrap(),
            n2.residual.unwrap()
        ),
    );
}

#[test]
fn criterion_13_exact_numeric_consistency() {
    let c = Criterion::new(
        "criterion 13: exact series vs numeric trace at |q| = 0.2",
        10,
    );
    let q = Complex64::new(0.2, 0.0);
    let t = Complex64::new(1.5, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let cfg = EvalConfig {
        weight_cutoff: 60,
        tail_tol: 1e-12,
        annulus_guard: 0.02,
    };

    // strict family at q-order 25
    let p = Profile::univariate(25, "t", 25);
    let nr = normal_ordered_npoint(PartitionKind::Strict, &p).unwrap();
    let series_route = eval_series_at(&nr, q, &[t], one).unwrap()
        + (t + 1.0) / ((t - 1.0) * 2.0) * eval_generating_fn(PartitionKind::Strict, q).unwrap();
    let numeric_route = eval_correlator(CorrelatorFn::R, q, &[t], &cfg).unwrap().value;
    let gap_r = (series_route - numeric_route).norm();

    // odd strict family: q-order 25 means hat-order 50
    let hp = Profile::univariate(50, "t", 50);
    let ns = normal_ordered_npoint(PartitionKind::OddStrict, &hp).unwrap();
    let series_route = eval_series_at(&ns, q.sqrt(), &[t.sqrt()], one).unwrap()
        + t.sqrt() / (t - 1.0) * eval_generating_fn(PartitionKind::OddStrict, q).unwrap();
    let numeric_route = eval_correlator(CorrelatorFn::S, q, &[t], &cfg).unwrap().value;
    let gap_s = (series_route - numeric_route).norm();

    // the normal-ordered routes must agree as well
    let no_series = eval_series_at(&nr, q, &[t], one).unwrap();
    let no_numeric = eval_trace(CorrelatorFn::R, q, &[t], &cfg, true).unwrap().value;
    let gap_no = (no_series - no_numeric).norm();

    let pass = gap_r < 1e-6 && gap_s < 1e-6 && gap_no < 1e-6;
    c.finish(
        pass,
        format!("R gap {gap_r:.3e}, S gap {gap_s:.3e}, normal-ordered gap {gap_no:.3e}, all < 1e-6"),
    );
}
