//! Truncated multigraded Laurent series with exact rational coefficients.

use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

use super::profile::{ExponentKey, MaskConstraint, Profile};
use super::RingError;
use crate::rational::{rat, Rational};
use crate::report::{CheckReport, MonomialMismatch};

/// A truncated series: sparse terms inside a [`Profile`] window, plus an
/// optional reliability mask produced by q-shift substitutions.
///
/// Values are immutable after construction; every operation is a pure
/// function returning a fresh series. Masked series support only `add`,
/// `neg`, `scale`, restriction and windowed comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    profile: Profile,
    terms: BTreeMap<ExponentKey, Rational>,
    mask: Vec<MaskConstraint>,
}

/// One serialized term of the canonical form.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalTerm {
    pub exponents: BTreeMap<String, i64>,
    pub num: String,
    pub den: String,
}

impl Series {
    pub fn zero(profile: &Profile) -> Series {
        Series {
            profile: profile.clone(),
            terms: BTreeMap::new(),
            mask: Vec::new(),
        }
    }

    pub fn one(profile: &Profile) -> Series {
        Series::constant(profile, Rational::one())
    }

    pub fn constant(profile: &Profile, c: Rational) -> Series {
        Series::monomial(profile, profile.key(), c)
    }

    /// Single term `c * key`; silently truncated away if the key lies
    /// outside the profile.
    pub fn monomial(profile: &Profile, key: ExponentKey, c: Rational) -> Series {
        let mut s = Series::zero(profile);
        s.insert(key, c);
        s
    }

    pub fn profile(&self) -> &Profile {
        &self.profile
    }

    pub fn is_masked(&self) -> bool {
        !self.mask.is_empty()
    }

    pub fn mask(&self) -> &[MaskConstraint] {
        &self.mask
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentKey, &Rational)> {
        self.terms.iter()
    }

    /// Accumulate `c` at `key`, dropping keys outside the profile and
    /// pruning exact zeros.
    pub(crate) fn insert(&mut self, key: ExponentKey, c: Rational) {
        if c.is_zero() || !self.profile.contains(&key) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn set_mask(&mut self, mask: Vec<MaskConstraint>) {
        self.mask = mask;
    }

    fn check_same_profile(&self, other: &Series) -> Result<(), RingError> {
        if self.profile != other.profile {
            return Err(RingError::ProfileMismatch);
        }
        Ok(())
    }

    /// Coefficientwise sum; masks are intersected (constraint lists unioned).
    pub fn add(&self, other: &Series) -> Result<Series, RingError> {
        self.check_same_profile(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        for m in &other.mask {
            if !out.mask.contains(m) {
                out.mask.push(m.clone());
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        self.scale(&rat(-1, 1))
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            let mut s = Series::zero(&self.profile);
            s.mask = self.mask.clone();
            return s;
        }
        Series {
            profile: self.profile.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
            mask: self.mask.clone(),
        }
    }

    /// Convolution product truncated to the window. Exact on the retained
    /// window whenever every contributing source key lies inside it; masked
    /// operands are rejected because masks do not propagate through products.
    pub fn mul(&self, other: &Series) -> Result<Series, RingError> {
        self.check_same_profile(other)?;
        if self.is_masked() || other.is_masked() {
            return Err(RingError::MaskedOperand);
        }
        let q_max = self.profile.q_max();
        let mut out = Series::zero(&self.profile);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                // terms are sorted with q leading, so the rest of the inner
                // loop is out of window too
                if ka.q() + kb.q() > q_max {
                    break;
                }
                out.insert(ka.combine(kb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Stored coefficient or 0. Errors on keys outside the profile or
    /// hidden by the mask.
    pub fn coeff(&self, key: &ExponentKey) -> Result<Rational, RingError> {
        if !self.profile.contains(key) {
            return Err(RingError::KeyOutsideProfile {
                key: key.display(&self.profile),
            });
        }
        if self.mask.iter().any(|m| !m.admits(key)) {
            return Err(RingError::MaskedCoefficient {
                key: key.display(&self.profile),
            });
        }
        Ok(self.coeff_unchecked(key))
    }

    /// Stored coefficient or zero, ignoring profile bounds and masks.
    pub fn coeff_at(&self, key: &ExponentKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn coeff_unchecked(&self, key: &ExponentKey) -> Rational {
        self.coeff_at(key)
    }

    /// Drop every term outside the (smaller) window; masks are kept.
    pub fn restrict(&self, window: &Profile) -> Result<Series, RingError> {
        if !window.is_subwindow_of(&self.profile) {
            return Err(RingError::WindowNotContained);
        }
        let mut out = Series::zero(window);
        for (k, c) in &self.terms {
            out.insert(k.clone(), c.clone());
        }
        out.mask = self.mask.clone();
        Ok(out)
    }

    /// Multiplicative inverse on the window. Requires a non-zero constant
    /// term; expands `1/(c(1-g)) = (1/c) sum g^k` and fails if the powers of
    /// `g` do not die out on the window (no consistent expansion direction).
    pub fn inverse(&self) -> Result<Series, RingError> {
        if self.is_masked() {
            return Err(RingError::MaskedOperand);
        }
        let unit = self.profile.key();
        let c0 = self.coeff_unchecked(&unit);
        if c0.is_zero() {
            return Err(RingError::NonInvertible);
        }
        let inv_c0 = c0.recip();
        // g = 1 - s/c0
        let g = Series::one(&self.profile).sub(&self.scale(&inv_c0))?;
        let max_band = self
            .profile
            .vars()
            .iter()
            .map(|v| v.band)
            .max()
            .unwrap_or(0);
        let cap = self.profile.q_max() + self.profile.z_max() + max_band + 2;
        let mut acc = Series::one(&self.profile);
        let mut pow = Series::one(&self.profile);
        for _ in 0..cap {
            pow = pow.mul(&g)?;
            if pow.is_zero() {
                return Ok(acc.scale(&inv_c0));
            }
            acc = acc.add(&pow)?;
        }
        Err(RingError::NonInvertible)
    }

    /// Compare coefficients on `window`, skipping keys hidden by either
    /// mask; reports the first mismatch in graded-lexicographic order.
    pub fn eq_on_window(
        &self,
        other: &Series,
        window: &Profile,
        identity: &str,
        params: serde_json::Value,
    ) -> Result<CheckReport, RingError> {
        if !window.is_subwindow_of(&self.profile) || !window.is_subwindow_of(&other.profile) {
            return Err(RingError::WindowNotContained);
        }
        let admissible = |k: &ExponentKey| {
            self.mask.iter().all(|m| m.admits(k)) && other.mask.iter().all(|m| m.admits(k))
        };
        let mut keys: BTreeSet<&ExponentKey> = BTreeSet::new();
        keys.extend(self.terms.keys().filter(|k| window.contains(k)));
        keys.extend(other.terms.keys().filter(|k| window.contains(k)));
        let mut compared = 0usize;
        for k in keys {
            if !admissible(k) {
                continue;
            }
            compared += 1;
            let a = self.coeff_unchecked(k);
            let b = other.coeff_unchecked(k);
            if a != b {
                return Ok(CheckReport::exact_fail(
                    identity,
                    params,
                    MonomialMismatch {
                        monomial: k.display(window),
                        lhs: a.to_string(),
                        rhs: b.to_string(),
                    },
                ));
            }
        }
        Ok(CheckReport::exact_pass(identity, params, compared))
    }

    /// Canonical serialisable form: terms sorted graded-lexicographically,
    /// exponents labelled with the profile's variable names.
    pub fn canonical_terms(&self) -> Vec<CanonicalTerm> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut exponents = BTreeMap::new();
                exponents.insert("q".to_string(), i64::from(k.q()));
                for (i, v) in self.profile.vars().iter().enumerate() {
                    exponents.insert(v.name.clone(), i64::from(k.t(i)));
                }
                exponents.insert("z".to_string(), i64::from(k.z()));
                CanonicalTerm {
                    exponents,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                }
            })
            .collect()
    }

    /// Human-readable rendering, mainly for failure messages and the CLI
    /// text format.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(k, c)| format!("{} {}", c, k.display(&self.profile)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
