//! Jacobi theta functions and the ratio `B(q,t)`.

use super::NumericError;
use num_complex::Complex64;

/// `theta_{j,1}(q,t) = sum_{n in j/2 + Z} q^(n^2) t^n`, `j = 0, 1`.
///
/// For `j = 1` the half-integer powers are fixed once as the principal
/// `q^(1/4)` and `t^(1/2)`; the remaining sum has integer exponents only,
/// so the whole evaluation carries a single global branch choice.
pub fn theta(j: u8, q: Complex64, t: Complex64, tail_tol: f64) -> Result<Complex64, NumericError> {
    assert!(j <= 1, "theta index must be 0 or 1");
    let qn = q.norm();
    if qn >= 1.0 {
        return Err(NumericError::QOutsideDisk(qn));
    }
    let tmax = t.norm().max(1.0 / t.norm());
    let mut acc;
    let mut k = 1i32;
    match j {
        0 => {
            acc = Complex64::new(1.0, 0.0);
            loop {
                let qq = q.powi(k * k);
                let tp = t.powi(k);
                acc += qq * (tp + 1.0 / tp);
                let bound = qn.powi(k * k) * tmax.powi(k);
                if k >= 3 && bound < tail_tol * 1e-2 {
                    break;
                }
                if k > 512 {
                    return Err(NumericError::TailAboveTolerance {
                        estimate: bound,
                        cutoff: k as u32,
                    });
                }
                k += 1;
            }
        }
        _ => {
            // theta_{1,1} = q^(1/4) t^(1/2) sum_k q^(k(k+1)) (t^k + t^(-1-k))
            let mut inner = Complex64::new(0.0, 0.0);
            let mut m = 0i32;
            loop {
                let qq = q.powi(m * (m + 1));
                inner += qq * (t.powi(m) + t.powi(-1 - m));
                let bound = qn.powi(m * (m + 1)) * tmax.powi(m + 1);
                if m >= 3 && bound < tail_tol * 1e-2 {
                    break;
                }
                if m > 512 {
                    return Err(NumericError::TailAboveTolerance {
                        estimate: bound,
                        cutoff: m as u32,
                    });
                }
                m += 1;
            }
            acc = q.powf(0.25) * t.sqrt() * inner;
        }
    }
    if !acc.is_finite() {
        return Err(NumericError::NonFinite);
    }
    Ok(acc)
}

/// Evaluation route for `B(q,t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BRoute {
    /// `theta_{1,1}(q,-t) / theta_{0,1}(q,-t)`.
    Theta,
    /// `(-q^(-1/2) t)^(-1/2) (t;q^2)(q^2/t;q^2) / ((qt;q^2)(q/t;q^2))`,
    /// principal branch on the prefactor.
    Product,
}

/// The ratio `B(q,t)`, by either route. The two routes agree up to a sign
/// determined by branch-cut bookkeeping; their squares agree outright.
pub fn b_function(
    q: Complex64,
    t: Complex64,
    route: BRoute,
    tail_tol: f64,
    guard: f64,
) -> Result<Complex64, NumericError> {
    let qn = q.norm();
    if qn >= 1.0 || qn == 0.0 {
        return Err(NumericError::QOutsideDisk(qn));
    }
    let tn = t.norm();
    if tn < qn + guard || tn > 1.0 / qn - guard {
        return Err(NumericError::AnnulusViolation {
            arg: format!("{t}"),
        });
    }
    if (t - Complex64::new(1.0, 0.0)).norm() < guard {
        // t = 1 is the in-annulus zero of theta_{1,1}(q,-t) and pole of the
        // log-derivative
        return Err(NumericError::PoleProximity {
            arg: format!("{t}"),
        });
    }
    match route {
        BRoute::Theta => {
            let num = theta(1, q, -t, tail_tol)?;
            let den = theta(0, q, -t, tail_tol)?;
            if den.norm() < 1e-12 {
                return Err(NumericError::ThetaDenominatorNearZero);
            }
            Ok(num / den)
        }
        BRoute::Product => {
            let prefactor = (-t / q.sqrt()).powf(-0.5);
            let q2 = q * q;
            let mut num = Complex64::new(1.0, 0.0);
            let mut den = Complex64::new(1.0, 0.0);
            let mut w = Complex64::new(1.0, 0.0);
            let tmax = tn.max(1.0 / tn);
            loop {
                num *= (1.0 - t * w) * (1.0 - q2 * w / t);
                den *= (1.0 - q * t * w) * (1.0 - q * w / t);
                w *= q2;
                if w.norm() * tmax * (1.0 + qn) < 1e-18 {
                    break;
                }
            }
            if den.norm() < 1e-12 {
                return Err(NumericError::ThetaDenominatorNearZero);
            }
            Ok(prefactor * num / den)
        }
    }
}
