//! Boundary expansions of the normal-ordering correction constants.
//!
//! The rational functions `(t+1)/(2(t-1))` (Ramond) and `t^(1/2)/(t-1)`
//! (Neveu-Schwarz, in the hat variable) straddle the pole at `t = 1`, so
//! they are only ever represented through their two boundary expansions:
//! `minus` is the `|t| < 1` side, `plus` the `|t| > 1` side. Each identity
//! states its convention explicitly.

use super::profile::Profile;
use super::series::Series;
use super::RingError;
use crate::rational::{rat, rat_int};

/// `(t+1)/(2(t-1))` for `|t| < 1`: `-1/2 - sum_{j>=1} t^j`.
pub fn correction_minus(var: &str, profile: &Profile) -> Result<Series, RingError> {
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut s = Series::constant(profile, rat(-1, 2));
    for j in 1..=profile.band(idx) {
        s = s.add(&Series::monomial(
            profile,
            profile.key().with_t(idx, j as i32),
            rat_int(-1),
        ))?;
    }
    Ok(s)
}

/// `(t+1)/(2(t-1))` for `|t| > 1`: `+1/2 + sum_{j>=1} t^{-j}`.
pub fn correction_plus(var: &str, profile: &Profile) -> Result<Series, RingError> {
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut s = Series::constant(profile, rat(1, 2));
    for j in 1..=profile.band(idx) {
        s = s.add(&Series::monomial(
            profile,
            profile.key().with_t(idx, -(j as i32)),
            rat_int(1),
        ))?;
    }
    Ok(s)
}

/// `t^(1/2)/(t-1)` for `|t| < 1`, in the hat variable: `-sum_{j>=0} t^(2j+1)`.
pub fn correction_ns_minus(var: &str, profile: &Profile) -> Result<Series, RingError> {
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut s = Series::zero(profile);
    let mut j = 1i32;
    while j as u32 <= profile.band(idx) {
        s = s.add(&Series::monomial(
            profile,
            profile.key().with_t(idx, j),
            rat_int(-1),
        ))?;
        j += 2;
    }
    Ok(s)
}

/// `t^(1/2)/(t-1)` for `|t| > 1`, in the hat variable:
/// `sum_{j>=0} t^(-(2j+1))`, the sum over negative half-odd modes.
pub fn correction_ns_plus(var: &str, profile: &Profile) -> Result<Series, RingError> {
    let idx = profile
        .var_index(var)
        .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
    let mut s = Series::zero(profile);
    let mut j = 1i32;
    while j as u32 <= profile.band(idx) {
        s = s.add(&Series::monomial(
            profile,
            profile.key().with_t(idx, -j),
            rat_int(1),
        ))?;
        j += 2;
    }
    Ok(s)
}
