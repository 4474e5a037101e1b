//! Truncation profiles, exponent keys and reliability masks.
//!
//! A profile declares the retained window of a series: the grading variable
//! `q` up to `q_max`, a fixed ordered set of Laurent variables each with a
//! symmetric band `[-M, M]`, and `z` up to `z_max`. Keys are exponent tuples
//! aligned with the declaration order, so term ordering (derived `Ord`) is
//! graded-lexicographic: `q` first, then the Laurent variables, then `z`.

use serde::Serialize;
use std::fmt;

/// One declared Laurent variable and its retained band.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarSpec {
    pub name: String,
    pub band: u32,
}

/// Retention window for a family of series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    q_max: u32,
    vars: Vec<VarSpec>,
    z_max: u32,
}

impl Profile {
    pub fn new(q_max: u32, vars: &[(&str, u32)], z_max: u32) -> Profile {
        let vars = vars
            .iter()
            .map(|(name, band)| VarSpec {
                name: (*name).to_string(),
                band: *band,
            })
            .collect();
        Profile { q_max, vars, z_max }
    }

    /// Series in `q` alone.
    pub fn q_only(q_max: u32) -> Profile {
        Profile::new(q_max, &[], 0)
    }

    /// Series in `q` and a single Laurent variable.
    pub fn univariate(q_max: u32, var: &str, band: u32) -> Profile {
        Profile::new(q_max, &[(var, band)], 0)
    }

    pub fn q_max(&self) -> u32 {
        self.q_max
    }

    pub fn z_max(&self) -> u32 {
        self.z_max
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn band(&self, var: usize) -> u32 {
        self.vars[var].band
    }

    /// Fresh all-zero key with the right variable count.
    pub fn key(&self) -> ExponentKey {
        ExponentKey::zero(self.vars.len())
    }

    pub fn contains(&self, key: &ExponentKey) -> bool {
        key.t.len() == self.vars.len()
            && key.q <= self.q_max
            && key.z <= self.z_max
            && key
                .t
                .iter()
                .zip(&self.vars)
                .all(|(&e, v)| e.unsigned_abs() <= v.band)
    }

    /// Same variable names, every bound no larger.
    pub fn is_subwindow_of(&self, other: &Profile) -> bool {
        self.q_max <= other.q_max
            && self.z_max <= other.z_max
            && self.vars.len() == other.vars.len()
            && self
                .vars
                .iter()
                .zip(&other.vars)
                .all(|(a, b)| a.name == b.name && a.band <= b.band)
    }

    pub fn same_vars(&self, other: &Profile) -> bool {
        self.vars.len() == other.vars.len()
            && self
                .vars
                .iter()
                .zip(&other.vars)
                .all(|(a, b)| a.name == b.name)
    }
}

/// Exponent tuple of one monomial: `q^q * prod_i t_i^{t[i]} * z^z`.
///
/// The `t` entries are aligned with the owning profile's variable
/// declaration order; a missing variable is exponent 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentKey {
    pub(crate) q: u32,
    pub(crate) t: Vec<i32>,
    pub(crate) z: u32,
}

impl ExponentKey {
    pub fn zero(num_vars: usize) -> ExponentKey {
        ExponentKey {
            q: 0,
            t: vec![0; num_vars],
            z: 0,
        }
    }

    pub fn with_q(mut self, e: u32) -> ExponentKey {
        self.q = e;
        self
    }

    pub fn with_t(mut self, var: usize, exp: i32) -> ExponentKey {
        self.t[var] = exp;
        self
    }

    pub fn with_z(mut self, e: u32) -> ExponentKey {
        self.z = e;
        self
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn t(&self, var: usize) -> i32 {
        self.t[var]
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    pub fn t_len(&self) -> usize {
        self.t.len()
    }

    pub fn is_unit(&self) -> bool {
        self.q == 0 && self.z == 0 && self.t.iter().all(|&e| e == 0)
    }

    /// Exponentwise sum (monomial product).
    pub fn combine(&self, other: &ExponentKey) -> ExponentKey {
        debug_assert_eq!(self.t.len(), other.t.len());
        ExponentKey {
            q: self.q + other.q,
            t: self
                .t
                .iter()
                .zip(&other.t)
                .map(|(a, b)| a + b)
                .collect(),
            z: self.z + other.z,
        }
    }

    /// Monomial power `self^k`.
    pub fn pow(&self, k: u32) -> ExponentKey {
        ExponentKey {
            q: self.q * k,
            t: self.t.iter().map(|e| e * k as i32).collect(),
            z: self.z * k,
        }
    }

    /// `q^e t1^j ... z^k` rendered with the profile's variable names.
    pub fn display(&self, profile: &Profile) -> String {
        let mut parts = Vec::new();
        if self.q != 0 {
            parts.push(format!("q^{}", self.q));
        }
        for (e, v) in self.t.iter().zip(profile.vars()) {
            if *e != 0 {
                parts.push(format!("{}^{}", v.name, e));
            }
        }
        if self.z != 0 {
            parts.push(format!("z^{}", self.z));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl fmt::Display for ExponentKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q:{}", self.q)?;
        for e in &self.t {
            write!(f, ", {e}")?;
        }
        write!(f, ", z:{})", self.z)
    }
}

/// Linear reliability constraint `q_exp <= bound + sum_v coeff_v * t_exp(v)`.
///
/// Coefficients at keys violating the constraint depend on source data
/// outside the builder's window and must never be compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskConstraint {
    pub bound: i64,
    pub t_coeffs: Vec<i64>,
}

impl MaskConstraint {
    pub fn admits(&self, key: &ExponentKey) -> bool {
        let mut rhs = self.bound;
        for (c, e) in self.t_coeffs.iter().zip(&key.t) {
            rhs += c * i64::from(*e);
        }
        i64::from(key.q) <= rhs
    }
}
