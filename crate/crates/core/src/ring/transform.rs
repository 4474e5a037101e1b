//! Substitutions and derivations on truncated series.

use super::profile::{MaskConstraint, Profile};
use super::series::Series;
use super::{RingError, Sign};
use crate::rational::{rat_int, Rational};
use num_traits::Zero;

/// The substitution `t -> q^a t` on the named variable: each monomial
/// `q^e t^j` goes to `q^(e + a*j) t^j`. Keys leaving the window are dropped
/// and the result carries the reliability constraint
/// `q_exp - a * t_exp(var) <= q_max`: coefficients whose source data lies
/// beyond the builder's q-window must not be compared. Existing constraints
/// are transported through the substitution.
pub fn subst_qshift(s: &Series, var: &str, a: i64) -> Result<Series, RingError> {
    let profile = s.profile().clone();
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut out = Series::zero(&profile);
    for (k, c) in s.terms() {
        let e = i64::from(k.q()) + a * i64::from(k.t(idx));
        if e < 0 || e > i64::from(profile.q_max()) {
            continue;
        }
        out.insert(k.clone().with_q(e as u32), c.clone());
    }
    let mut mask: Vec<MaskConstraint> = s
        .mask()
        .iter()
        .map(|m| {
            // a source-side constraint q <= b + sum c_v t_v reads
            // q - a*t_var <= b + sum c_v t_v on the shifted series
            let mut t_coeffs = m.t_coeffs.clone();
            t_coeffs[idx] += a;
            MaskConstraint {
                bound: m.bound,
                t_coeffs,
            }
        })
        .collect();
    let mut fresh = vec![0i64; profile.num_vars()];
    fresh[idx] = a;
    mask.push(MaskConstraint {
        bound: i64::from(profile.q_max()),
        t_coeffs: fresh,
    });
    out.set_mask(mask);
    Ok(out)
}

/// `t d/dt` on the named variable: multiplies each coefficient by the
/// variable's exponent.
pub fn t_derivative(s: &Series, var: &str) -> Result<Series, RingError> {
    let profile = s.profile().clone();
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut out = Series::zero(&profile);
    for (k, c) in s.terms() {
        out.insert(k.clone(), c * rat_int(i64::from(k.t(idx))));
    }
    out.set_mask(s.mask().to_vec());
    Ok(out)
}

/// `t d/dt ln` of a signed product of factors, computed factorwise as
/// `sum sign * (t d/dt f) / f` without ever forming a logarithm. Every
/// factor needs a non-zero constant term.
pub fn log_derivative(
    factors: &[(Sign, Series)],
    var: &str,
) -> Result<Series, RingError> {
    let mut acc: Option<Series> = None;
    for (sign, f) in factors {
        if f.is_masked() {
            return Err(RingError::MaskedOperand);
        }
        let term = t_derivative(f, var)?.mul(&f.inverse()?)?;
        let term = match sign {
            Sign::Plus => term,
            Sign::Minus => term.neg(),
        };
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or(RingError::NonInvertible)
}

/// Specialise `z` to a rational value, collapsing the z-grading.
/// The result lives on the same profile with `z_max = 0`.
pub fn subst_z_value(s: &Series, value: &Rational) -> Result<Series, RingError> {
    if s.is_masked() {
        return Err(RingError::MaskedOperand);
    }
    let src = s.profile();
    let vars: Vec<(&str, u32)> = src
        .vars()
        .iter()
        .map(|v| (v.name.as_str(), v.band))
        .collect();
    let profile = Profile::new(src.q_max(), &vars, 0);
    let mut out = Series::zero(&profile);
    for (k, c) in s.terms() {
        let mut w = Rational::from_integer(1.into());
        for _ in 0..k.z() {
            w *= value.clone();
        }
        if w.is_zero() {
            continue;
        }
        out.insert(k.clone().with_z(0), c * w);
    }
    Ok(out)
}

/// The reflection `t -> t^{-1}` on the named variable.
pub fn reflect_t(s: &Series, var: &str) -> Result<Series, RingError> {
    if s.is_masked() {
        return Err(RingError::MaskedOperand);
    }
    let profile = s.profile().clone();
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut out = Series::zero(&profile);
    for (k, c) in s.terms() {
        let j = k.t(idx);
        out.insert(k.clone().with_t(idx, -j), c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn term(p: &Profile, q: u32, t: i32, c: i64) -> Series {
        Series::monomial(p, p.key().with_q(q).with_t(0, t), rat_int(c))
    }

    #[test]
    fn qshift_moves_exponents_and_masks() {
        let p = Profile::univariate(3, "t", 3);
        // t - t^{-1} under t -> qt: qt survives, t^{-1} would land at q^{-1}
        let s = term(&p, 0, 1, 1).add(&term(&p, 0, -1, -1)).unwrap();
        let shifted = subst_qshift(&s, "t", 1).unwrap();
        assert_eq!(
            shifted.coeff_at(&p.key().with_q(1).with_t(0, 1)),
            rat_int(1)
        );
        assert_eq!(shifted.num_terms(), 1);
        assert!(shifted.is_masked());
        // q=3, t=-1 violates q - t <= 3
        assert!(shifted
            .coeff(&p.key().with_q(3).with_t(0, -1))
            .is_err());
        // q=3, t=0 is fine
        assert!(shifted.coeff(&p.key().with_q(3)).is_ok());
    }

    #[test]
    fn qshift_with_zero_shift_is_identity_on_terms() {
        let p = Profile::univariate(4, "t", 4);
        let s = term(&p, 1, 2, 3).add(&term(&p, 2, -1, 5)).unwrap();
        let shifted = subst_qshift(&s, "t", 0).unwrap();
        for (k, c) in s.terms() {
            assert_eq!(&shifted.coeff_at(k), c);
        }
        assert_eq!(shifted.num_terms(), s.num_terms());
    }

    #[test]
    fn qshift_truncates_upper_window() {
        // t^{-1}(1 + q + q^2) with a = 1, N = 2: t^{-1}(1+q) retained
        let p = Profile::univariate(2, "t", 2);
        let s = term(&p, 0, -1, 1)
            .add(&term(&p, 1, -1, 1))
            .unwrap()
            .add(&term(&p, 2, -1, 1))
            .unwrap();
        let shifted = subst_qshift(&s, "t", 1).unwrap();
        // q^0 t^{-1} came from source q^1; q^1 t^{-1} from q^2; q^2 t^{-1}
        // would need source q^3 which is outside the window
        assert_eq!(shifted.coeff_at(&p.key().with_t(0, -1)), rat_int(1));
        assert_eq!(
            shifted.coeff_at(&p.key().with_q(1).with_t(0, -1)),
            rat_int(1)
        );
        assert_eq!(shifted.num_terms(), 2);
        // the q^2 t^{-1} slot is masked rather than silently zero
        assert!(shifted
            .coeff(&p.key().with_q(2).with_t(0, -1))
            .is_err());
    }

    #[test]
    fn t_derivative_scales_by_exponent() {
        let p = Profile::univariate(2, "t", 3);
        let s = term(&p, 0, 2, 1).add(&term(&p, 0, -2, -1)).unwrap();
        let d = t_derivative(&s, "t").unwrap();
        assert_eq!(d.coeff_at(&p.key().with_t(0, 2)), rat_int(2));
        assert_eq!(d.coeff_at(&p.key().with_t(0, -2)), rat_int(2));
    }

    #[test]
    fn log_derivative_of_one_minus_qt() {
        let p = Profile::univariate(5, "t", 5);
        let f = Series::one(&p).add(&term(&p, 1, 1, -1)).unwrap();
        let ld = log_derivative(&[(Sign::Plus, f)], "t").unwrap();
        // -qt/(1-qt) = -qt - q^2 t^2 - ...
        for k in 1..=5u32 {
            assert_eq!(
                ld.coeff_at(&p.key().with_q(k).with_t(0, k as i32)),
                rat_int(-1)
            );
        }
        assert_eq!(ld.num_terms(), 5);
    }

    #[test]
    fn log_derivative_splits_over_factors() {
        let p = Profile::univariate(6, "t", 6);
        let f = Series::one(&p).add(&term(&p, 1, 1, -1)).unwrap();
        let g = Series::one(&p).add(&term(&p, 2, -1, 1)).unwrap();
        let joint = log_derivative(&[(Sign::Plus, f.clone()), (Sign::Minus, g.clone())], "t")
            .unwrap();
        let split = log_derivative(&[(Sign::Plus, f)], "t")
            .unwrap()
            .sub(&log_derivative(&[(Sign::Plus, g)], "t").unwrap())
            .unwrap();
        assert_eq!(joint, split);
    }

    #[test]
    fn z_specialisation_at_minus_one() {
        let p = Profile::new(2, &[("t", 2)], 3);
        let s = Series::monomial(&p, p.key().with_z(1), rat_int(3))
            .add(&Series::monomial(&p, p.key().with_z(2), rat_int(5)))
            .unwrap();
        let v = subst_z_value(&s, &rat_int(-1)).unwrap();
        assert_eq!(v.coeff_at(&v.profile().key()), rat_int(2)); // -3 + 5
        assert_eq!(v.profile().z_max(), 0);
    }

    #[test]
    fn reflection_negates_exponents() {
        let p = Profile::univariate(2, "t", 3);
        let s = term(&p, 1, 2, 7);
        let r = reflect_t(&s, "t").unwrap();
        assert_eq!(r.coeff_at(&p.key().with_q(1).with_t(0, -2)), rat_int(7));
    }
}
