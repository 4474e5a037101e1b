//! Streaming enumeration of strict and odd strict partitions, and the
//! per-partition eigenvalue polynomials of the correlator operators.

use crate::rational::rat_int;
use crate::ring::{Profile, Series};
use serde::Serialize;

/// Which partition family a stream ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PartitionKind {
    /// Strictly decreasing parts.
    Strict,
    /// Strictly decreasing parts, all odd.
    OddStrict,
}

/// A partition with strictly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Partition {
        debug_assert!(parts.windows(2).all(|w| w[0] > w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition { parts }
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn part_allowed(kind: PartitionKind, c: u32) -> bool {
    match kind {
        PartitionKind::Strict => true,
        PartitionKind::OddStrict => c % 2 == 1,
    }
}

/// Largest weight fillable with distinct kind-parts strictly below `c`.
fn max_fill_below(kind: PartitionKind, c: u32) -> u64 {
    match kind {
        PartitionKind::Strict => {
            let c = u64::from(c);
            c * (c - 1) / 2
        }
        PartitionKind::OddStrict => {
            // odd values below c: 1, 3, ..., their sum is count^2
            let count = u64::from(c / 2);
            count * count
        }
    }
}

struct Frame {
    rem: u32,
    cand: u32,
}

/// Depth-first sweep over the partitions of one fixed weight, emitting them
/// in lexicographically descending order.
struct WeightSweep {
    kind: PartitionKind,
    prefix: Vec<u32>,
    frames: Vec<Frame>,
}

impl WeightSweep {
    fn new(kind: PartitionKind, weight: u32) -> WeightSweep {
        WeightSweep {
            kind,
            prefix: Vec::new(),
            frames: vec![Frame {
                rem: weight,
                cand: weight,
            }],
        }
    }

    fn next(&mut self) -> Option<Partition> {
        while let Some(top) = self.frames.last_mut() {
            let rem = top.rem;
            let mut cand = top.cand.min(rem);
            let mut found = None;
            while cand >= 1 {
                if part_allowed(self.kind, cand) {
                    if cand == rem {
                        found = Some((cand, true));
                        break;
                    }
                    if u64::from(rem - cand) <= max_fill_below(self.kind, cand) {
                        found = Some((cand, false));
                        break;
                    }
                }
                cand -= 1;
            }
            match found {
                None => {
                    self.frames.pop();
                    self.prefix.pop();
                }
                Some((c, leaf)) => {
                    top.cand = c - 1;
                    if leaf {
                        let mut parts = self.prefix.clone();
                        parts.push(c);
                        return Some(Partition::new(parts));
                    }
                    self.prefix.push(c);
                    self.frames.push(Frame {
                        rem: rem - c,
                        cand: c - 1,
                    });
                }
            }
        }
        None
    }
}

/// Streams every partition of the kind with weight at most `max_weight`,
/// each exactly once: the empty partition first, then by increasing weight,
/// lexicographically descending within a weight.
pub struct PartitionIter {
    kind: PartitionKind,
    max_weight: u32,
    weight: u32,
    sweep: Option<WeightSweep>,
    emitted_empty: bool,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if !self.emitted_empty {
            self.emitted_empty = true;
            return Some(Partition::empty());
        }
        loop {
            if let Some(sweep) = &mut self.sweep {
                if let Some(p) = sweep.next() {
                    return Some(p);
                }
            }
            if self.weight >= self.max_weight {
                return None;
            }
            self.weight += 1;
            self.sweep = Some(WeightSweep::new(self.kind, self.weight));
        }
    }
}

/// Stream of all kind-partitions with `|λ| <= max_weight`.
pub fn enumerate(kind: PartitionKind, max_weight: u32) -> PartitionIter {
    PartitionIter {
        kind,
        max_weight,
        weight: 0,
        sweep: None,
        emitted_empty: false,
    }
}

/// `counts[n] = #{λ of the kind : |λ| = n}` for `0 <= n <= max_weight`,
/// by direct enumeration.
pub fn count_table(kind: PartitionKind, max_weight: u32) -> Vec<u64> {
    let mut counts = vec![0u64; max_weight as usize + 1];
    for p in enumerate(kind, max_weight) {
        counts[p.weight() as usize] += 1;
    }
    counts
}

/// The eigenvalue polynomial `F(λ; t) = sum_k (t^{λ_k} - t^{-λ_k})` of the
/// normal-ordered correlator operator on the basis vector indexed by `λ`.
///
/// For the odd strict family the same formula is read in the hat variable
/// (`t^(λ_k/2) = t̂^(λ_k)`). Parts beyond the band are truncated away; the
/// caller's weight/band bookkeeping must make them irrelevant.
pub fn eigen_poly(partition: &Partition, var: &str, profile: &Profile) -> Series {
    let idx = profile
        .var_index(var)
        .unwrap_or_else(|| panic!("variable {var} not declared in profile"));
    let mut s = Series::zero(profile);
    for &part in partition.parts() {
        let e = part as i32;
        s = s
            .add(&Series::monomial(
                profile,
                profile.key().with_t(idx, e),
                rat_int(1),
            ))
            .and_then(|s| {
                s.add(&Series::monomial(
                    profile,
                    profile.key().with_t(idx, -e),
                    rat_int(-1),
                ))
            })
            .expect("same profile");
    }
    s
}
