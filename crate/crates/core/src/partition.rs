//! Integer partitions, beta-sets and the d-abacus.
//!
//! A [`Partition`] is stored as its weakly decreasing sequence of positive
//! parts. Cores and quotients are computed on the abacus: a beta-set with a
//! multiple of `d` beads is laid out on `d` runners, every bead is pushed as
//! far up its runner as it will go (the core), and the bead positions on each
//! runner read off as a partition (the quotient).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Multiplicity of each part value, as `(value, count)` in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, c)) if *v == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    pub fn hook_lengths(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut hooks = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.0[j] - i as u32 - 1;
                hooks.push(arm + leg + 1);
            }
        }
        hooks
    }

    /// True when no hook has length `d` (equivalently, none divisible by `d`).
    pub fn is_core(&self, d: u32) -> bool {
        assert!(d >= 1);
        let beta = BetaSet::from_partition(self, self.len());
        let beads: BTreeSet<u32> = beta.beads().iter().copied().collect();
        !beads.iter().any(|&b| b >= d && !beads.contains(&(b - d)))
    }

    pub fn beta_set(&self) -> BetaSet {
        BetaSet::from_partition(self, self.len())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

/// Lexicographic descending: `(4) < (3,1) < (2,2) < ...` in this ordering,
/// so a sorted list starts with the one-row partition.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// First-column hook lengths of a partition, padded to a chosen bead count.
///
/// The normalized form has exactly as many beads as the partition has parts,
/// so it never contains bead 0 except for the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaSet(Vec<u32>);

impl BetaSet {
    /// Beads `λ_i + (m - i)` for `i = 1..m`; panics if `m < λ.len()`.
    pub fn from_partition(lambda: &Partition, m: usize) -> Self {
        assert!(m >= lambda.len(), "bead count below partition length");
        let mut beads: Vec<u32> = (0..m)
            .map(|i| lambda.0.get(i).copied().unwrap_or(0) + (m - 1 - i) as u32)
            .collect();
        beads.reverse();
        BetaSet(beads)
    }

    pub fn from_beads(mut beads: Vec<u32>) -> Result<Self> {
        beads.sort_unstable();
        if beads.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!(
                "repeated bead in {beads:?}"
            )));
        }
        Ok(BetaSet(beads))
    }

    /// Ascending bead positions.
    pub fn beads(&self) -> &[u32] {
        &self.0
    }

    pub fn to_partition(&self) -> Partition {
        let parts: Vec<u32> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &b)| b - i as u32)
            .rev()
            .filter(|&x| x > 0)
            .collect();
        Partition(parts)
    }

    /// Adds bead 0 and moves every other bead down by one; same partition.
    pub fn shifted(&self) -> BetaSet {
        let mut beads = Vec::with_capacity(self.0.len() + 1);
        beads.push(0);
        beads.extend(self.0.iter().map(|b| b + 1));
        BetaSet(beads)
    }

    pub fn normalized(&self) -> BetaSet {
        let lead = self
            .0
            .iter()
            .enumerate()
            .take_while(|(i, &b)| b == *i as u32)
            .count();
        BetaSet(self.0[lead..].iter().map(|b| b - lead as u32).collect())
    }
}

/// Core, quotient and weight of a partition with respect to `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreQuotient {
    pub core: Partition,
    pub quotient: Vec<Partition>,
    pub weight: u32,
}

/// Abacus computation of the `d`-core and `d`-quotient.
///
/// The bead count is rounded up to a multiple of `d` so runner labels are
/// fixed; runner `i` holds the beads congruent to `i` mod `d`.
pub fn core_quotient(lambda: &Partition, d: u32) -> CoreQuotient {
    assert!(d >= 1, "d must be positive");
    let d_us = d as usize;
    let m = lambda.len().div_ceil(d_us) * d_us;
    let beta = BetaSet::from_partition(lambda, m);
    let mut runners: Vec<Vec<u32>> = vec![Vec::new(); d_us];
    for &b in beta.beads() {
        runners[(b % d) as usize].push(b / d);
    }
    let mut core_beads = Vec::with_capacity(m);
    let mut quotient = Vec::with_capacity(d_us);
    for (i, levels) in runners.iter().enumerate() {
        for j in 0..levels.len() as u32 {
            core_beads.push(j * d + i as u32);
        }
        quotient.push(BetaSet(levels.clone()).to_partition());
    }
    let core = BetaSet::from_beads(core_beads)
        .expect("abacus beads are distinct")
        .to_partition();
    let weight = quotient.iter().map(Partition::size).sum();
    debug_assert_eq!(lambda.size(), core.size() + d * weight);
    CoreQuotient {
        core,
        quotient,
        weight,
    }
}

/// Calls `f` on every partition of `t` in lexicographic descending order.
pub fn for_each_partition<F: FnMut(&[u32])>(t: u32, mut f: F) {
    fn rec<F: FnMut(&[u32])>(rest: u32, max: u32, buf: &mut Vec<u32>, f: &mut F) {
        if rest == 0 {
            f(buf);
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            buf.push(k);
            rec(rest - k, k, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    rec(t, t, &mut buf, &mut f);
}

/// All partitions of `t`, lexicographic descending.
pub fn partitions_of(t: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(t, |p| out.push(Partition(p.to_vec())));
    out
}

/// Partitions of `t` into distinct parts, lexicographic descending.
pub fn strict_partitions_of(t: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(buf.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            buf.push(k);
            rec(rest - k, k - 1, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, t, &mut Vec::new(), &mut out);
    out
}

/// All `d`-cores of size `m`, lexicographic descending.
pub fn cores_of_size(m: u32, d: u32) -> Vec<Partition> {
    partitions_of(m)
        .into_iter()
        .filter(|p| p.is_core(d))
        .collect()
}

/// Partitions of `n` in which no part occurs `p` or more times.
pub fn count_pregular_partitions(n: u32, p: u32) -> BigUint {
    assert!(p >= 2);
    let mut count: u64 = 0;
    for_each_partition(n, |parts| {
        let mut run = 1u32;
        let mut ok = true;
        for w in parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= p {
                    ok = false;
                    break;
                }
            } else {
                run = 1;
            }
        }
        if ok {
            count += 1;
        }
    });
    BigUint::from(count)
}
