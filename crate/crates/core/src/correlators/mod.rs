//! Exact q-series builders for the correlation functions.
//!
//! Everything here is a finite, exactly-truncated object: the n-point
//! functions as partition sums, their closed forms, and the identity pairs
//! relating the two routes. The strict suite reads the base variable as `q`;
//! the odd-strict suite reads it as `q^(1/2)` and its Laurent variable as
//! `t^(1/2)`, which keeps every exponent integral (weights enter as
//! `q^(|λ|/2)` and eigenvalues as `t^(λ_k/2)`).

mod identities;

pub use identities::{
    closed_form_onepoint, euler_identity, lambert_swap, lemma_row_sums, modify_z_form,
    quasi_periodicity_exact, regularized_expectation_identity, rminus_closed_form,
    theta_logderiv_form,
};

use crate::partitions::{eigen_poly, enumerate, Partition, PartitionKind};
use crate::rational::rat_int;
use crate::ring::{pochhammer_inf, Profile, RingError, Series, Sign};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorrelatorError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("weight cutoff {got} is below the q-window {needed}")]
    InsufficientCutoff { needed: u32, got: u32 },
    #[error("t-band {band} is below the q-window {needed}; eigenvalue rows would be lost")]
    InsufficientBand { needed: u32, band: u32 },
    #[error("corrected exact series are only built for one t-variable, got {0}")]
    ArityUnsupported(usize),
}

/// Expansion side of the normal-ordering correction at the pole `t = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `|t| < 1` boundary expansion.
    Minus,
    /// `|t| > 1` boundary expansion.
    Plus,
}

/// Which correlation function to build.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrelatorSpec {
    pub kind: PartitionKind,
    pub arity: usize,
    pub normal_ordered: bool,
    /// Correction convention, used only when `normal_ordered` is false.
    pub correction: Convention,
    /// Weight each partition by `z^(ℓ(λ))` and the prefactor accordingly.
    pub z_weighted: bool,
}

/// Row exponents of the one-point closed forms: all of `1..=q_max` for the
/// strict suite, the odd ones for the odd-strict suite (in hat variables the
/// Neveu-Schwarz modes `n - 1/2` sit at odd integers).
pub(crate) fn row_exponents(kind: PartitionKind, q_max: u32) -> Vec<u32> {
    match kind {
        PartitionKind::Strict => (1..=q_max).collect(),
        PartitionKind::OddStrict => (1..=q_max).step_by(2).collect(),
    }
}

/// `sum_λ q^(|λ|) = (-q;q)_inf` resp. `prod (1 + q^(2k+1))` truncated.
pub fn partition_generating_fn(
    kind: PartitionKind,
    profile: &Profile,
) -> Result<Series, RingError> {
    let step = match kind {
        PartitionKind::Strict => 1,
        PartitionKind::OddStrict => 2,
    };
    pochhammer_inf(&profile.key().with_q(1), Sign::Plus, step, profile)
}

/// z-graded variant `sum_λ q^(|λ|) z^(ℓ(λ))`, a Pochhammer product in `qz`.
pub fn partition_generating_fn_z(
    kind: PartitionKind,
    profile: &Profile,
) -> Result<Series, RingError> {
    let step = match kind {
        PartitionKind::Strict => 1,
        PartitionKind::OddStrict => 2,
    };
    pochhammer_inf(
        &profile.key().with_q(1).with_z(1),
        Sign::Plus,
        step,
        profile,
    )
}

/// Unnormalised partition sum `sum_λ f(λ) q^(|λ|)` over the stream, with the
/// weight cutoff taken from the q-window (heavier partitions cannot reach
/// it).
pub fn partition_sum<F>(kind: PartitionKind, profile: &Profile, mut f: F) -> Series
where
    F: FnMut(&Partition) -> Series,
{
    partition_sum_cutoff(kind, profile.q_max(), profile, &mut f)
}

/// Like [`partition_sum`] but with an explicit weight cutoff, for shifted
/// identities whose source window is wider than the target one.
pub fn partition_sum_cutoff<F>(
    kind: PartitionKind,
    max_weight: u32,
    profile: &Profile,
    f: &mut F,
) -> Series
where
    F: FnMut(&Partition) -> Series,
{
    let mut acc = Series::zero(profile);
    for lam in enumerate(kind, max_weight) {
        let contribution = f(&lam);
        if contribution.is_zero() {
            continue;
        }
        let weight_key = profile.key().with_q(lam.weight());
        let weighted = contribution
            .mul(&Series::monomial(profile, weight_key, rat_int(1)))
            .expect("unmasked, same profile");
        acc = acc.add(&weighted).expect("same profile");
    }
    acc
}

/// q-expectation value: the partition sum normalised by the exact inverse of
/// the partition generating function.
pub fn expectation<F>(
    kind: PartitionKind,
    max_weight: u32,
    profile: &Profile,
    f: F,
) -> Result<Series, CorrelatorError>
where
    F: FnMut(&Partition) -> Series,
{
    if max_weight < profile.q_max() {
        return Err(CorrelatorError::InsufficientCutoff {
            needed: profile.q_max(),
            got: max_weight,
        });
    }
    let mut f = f;
    let sum = partition_sum_cutoff(kind, max_weight, profile, &mut f);
    let norm = partition_generating_fn(kind, profile)?.inverse()?;
    Ok(sum.mul(&norm)?)
}

/// The normal-ordered n-point function `:R:` / `:S:` as an exact partition
/// sum: `sum_λ q^(|λ|) prod_i F(λ; t_i)`. The arity is the number of
/// Laurent variables declared in the profile; every band must cover the
/// q-window so no eigenvalue row is lost.
pub fn normal_ordered_npoint(
    kind: PartitionKind,
    profile: &Profile,
) -> Result<Series, CorrelatorError> {
    for v in profile.vars() {
        if v.band < profile.q_max() {
            return Err(CorrelatorError::InsufficientBand {
                needed: profile.q_max(),
                band: v.band,
            });
        }
    }
    let names: Vec<String> = profile.vars().iter().map(|v| v.name.clone()).collect();
    Ok(partition_sum(kind, profile, |lam| {
        let mut prod = Series::one(profile);
        for name in &names {
            let f = eigen_poly(lam, name, profile);
            prod = prod.mul(&f).expect("unmasked, same profile");
        }
        prod
    }))
}

/// The corrected one-point function `R(t)` / `S(t)` (optionally z-weighted,
/// `R(t;z)`): normal-ordered sum plus the chosen boundary expansion of the
/// correction constant times the (z-weighted) partition generating function.
pub fn corrected_onepoint(
    kind: PartitionKind,
    convention: Convention,
    profile: &Profile,
    z_weighted: bool,
) -> Result<Series, CorrelatorError> {
    corrected_onepoint_cutoff(kind, convention, profile, z_weighted, profile.q_max())
}

/// [`corrected_onepoint`] with an explicit weight cutoff (used by the
/// shifted quasi-periodicity check, whose source window is `N + M`).
pub fn corrected_onepoint_cutoff(
    kind: PartitionKind,
    convention: Convention,
    profile: &Profile,
    z_weighted: bool,
    max_weight: u32,
) -> Result<Series, CorrelatorError> {
    if profile.num_vars() != 1 {
        return Err(CorrelatorError::ArityUnsupported(profile.num_vars()));
    }
    if max_weight < profile.q_max() {
        return Err(CorrelatorError::InsufficientCutoff {
            needed: profile.q_max(),
            got: max_weight,
        });
    }
    let var = profile.vars()[0].name.clone();
    let mut f = |lam: &Partition| {
        let mut s = eigen_poly(lam, &var, profile);
        if z_weighted {
            let zkey = profile.key().with_z(lam.len() as u32);
            s = s
                .mul(&Series::monomial(profile, zkey, rat_int(1)))
                .expect("unmasked, same profile");
        }
        s
    };
    let sum = partition_sum_cutoff(kind, max_weight, profile, &mut f);
    let gen = if z_weighted {
        partition_generating_fn_z(kind, profile)?
    } else {
        partition_generating_fn(kind, profile)?
    };
    let corr = correction_series(kind, convention, &var, profile)?;
    Ok(sum.add(&gen.mul(&corr)?)?)
}

/// The boundary expansion of the correction constant for the given kind.
pub fn correction_series(
    kind: PartitionKind,
    convention: Convention,
    var: &str,
    profile: &Profile,
) -> Result<Series, RingError> {
    use crate::ring::{
        correction_minus, correction_ns_minus, correction_ns_plus, correction_plus,
    };
    match (kind, convention) {
        (PartitionKind::Strict, Convention::Minus) => correction_minus(var, profile),
        (PartitionKind::Strict, Convention::Plus) => correction_plus(var, profile),
        (PartitionKind::OddStrict, Convention::Minus) => correction_ns_minus(var, profile),
        (PartitionKind::OddStrict, Convention::Plus) => correction_ns_plus(var, profile),
    }
}

/// Build the exact series named by a [`CorrelatorSpec`]. Normal-ordered
/// specs get variables `t1..tn` (just `t` for arity 1); corrected specs are
/// one-point only.
pub fn build_correlator(
    spec: &CorrelatorSpec,
    q_max: u32,
    band: u32,
    z_max: u32,
) -> Result<Series, CorrelatorError> {
    let names: Vec<String> = if spec.arity == 1 {
        vec!["t".to_string()]
    } else {
        (1..=spec.arity).map(|i| format!("t{i}")).collect()
    };
    let vars: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), band)).collect();
    let z = if spec.z_weighted { z_max } else { 0 };
    let profile = Profile::new(q_max, &vars, z);
    if spec.normal_ordered {
        if spec.z_weighted {
            if spec.arity != 1 {
                return Err(CorrelatorError::ArityUnsupported(spec.arity));
            }
            let var = names[0].clone();
            return Ok(partition_sum(spec.kind, &profile, |lam| {
                let zkey = profile.key().with_z(lam.len() as u32);
                eigen_poly(lam, &var, &profile)
                    .mul(&Series::monomial(&profile, zkey, rat_int(1)))
                    .expect("unmasked, same profile")
            }));
        }
        normal_ordered_npoint(spec.kind, &profile)
    } else {
        corrected_onepoint(spec.kind, spec.correction, &profile, spec.z_weighted)
    }
}

/// Largest possible length of a strict partition of weight at most `w`;
/// bounds the z-grading of z-weighted sums.
pub fn max_length(w: u32) -> u32 {
    let mut k = 0u32;
    while (k + 1) * (k + 2) / 2 <= w {
        k += 1;
    }
    k
}
