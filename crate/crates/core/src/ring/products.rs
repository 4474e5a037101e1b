//! Geometric expansions and infinite Pochhammer products.

use num_traits::Zero;

use super::profile::{ExponentKey, Profile};
use super::series::Series;
use super::RingError;
use crate::rational::{rat_int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn rational(self) -> Rational {
        match self {
            Sign::Plus => rat_int(1),
            Sign::Minus => rat_int(-1),
        }
    }
}

/// A monomial is admissible as an expansion direction when its powers leave
/// the window: positive q-degree, or (at q-degree 0) non-negative t-degrees
/// with at least one positive, or pure z-degree. This encodes the
/// `|q| < 1`, `|t| < 1` expansion side.
fn admissible_direction(m: &ExponentKey) -> bool {
    if m.q() > 0 {
        return true;
    }
    let ts: Vec<i32> = (0..m.t_len()).map(|i| m.t(i)).collect();
    if ts.iter().all(|&e| e >= 0) && ts.iter().any(|&e| e > 0) {
        return true;
    }
    ts.iter().all(|&e| e == 0) && m.z() >= 1
}

/// `1/(1 - c*m)` expanded as `sum_k (c*m)^k`, truncated to the profile.
///
/// The coefficient lets the same device expand `1/(1 + m)` denominators
/// (take `c = -1`).
pub fn inverse_geometric(
    c: &Rational,
    m: &ExponentKey,
    profile: &Profile,
) -> Result<Series, RingError> {
    if c.is_zero() {
        return Ok(Series::one(profile));
    }
    if !admissible_direction(m) {
        return Err(RingError::InadmissibleExpansion);
    }
    let mut out = Series::one(profile);
    let mut key = m.clone();
    let mut coeff = c.clone();
    while profile.contains(&key) {
        out = out.add(&Series::monomial(profile, key.clone(), coeff.clone()))?;
        key = key.combine(m);
        coeff *= c;
    }
    Ok(out)
}

/// The factors `(1 + sign * a * q^{i*step})` of an infinite Pochhammer-type
/// product, restricted to the ones that differ from 1 on the window.
pub fn pochhammer_factors(
    a: &ExponentKey,
    sign: Sign,
    step: u32,
    profile: &Profile,
) -> Result<Vec<Series>, RingError> {
    assert!(step >= 1, "pochhammer step must be at least 1");
    let admissible = a.q() >= 1
        || a.z() >= 1
        || (0..a.t_len()).all(|i| a.t(i) >= 0);
    if !admissible {
        return Err(RingError::InadmissibleExpansion);
    }
    let mut factors = Vec::new();
    let mut i = 0u32;
    while a.q() + i * step <= profile.q_max() {
        let key = a.clone().with_q(a.q() + i * step);
        let factor = Series::one(profile).add(&Series::monomial(
            profile,
            key,
            sign.rational(),
        ))?;
        factors.push(factor);
        i += 1;
    }
    Ok(factors)
}

/// `prod_{i>=0} (1 + sign * a * q^{i*step})` truncated to the profile.
///
/// Covers `(-q;q)_inf`, `(q;q^2)_inf`, `(t;q^2)_inf`, `(-qz;q)_inf` and
/// friends; only finitely many factors differ from 1 inside the window.
pub fn pochhammer_inf(
    a: &ExponentKey,
    sign: Sign,
    step: u32,
    profile: &Profile,
) -> Result<Series, RingError> {
    let mut acc = Series::one(profile);
    for f in pochhammer_factors(a, sign, step, profile)? {
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}
