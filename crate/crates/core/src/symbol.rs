//! Lusztig symbols: unordered pairs of beta-sets up to simultaneous shift.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{partitions_of, BetaSet};

/// A symbol in canonical form: rows sorted ascending, not both starting at
/// 0, longer row first (lexicographically larger first on a tie).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.top, &self.bottom).serialize(s)
    }
}

impl Symbol {
    pub fn new(x: Vec<u32>, y: Vec<u32>) -> Result<Self> {
        for row in [&x, &y] {
            let set: BTreeSet<_> = row.iter().collect();
            if set.len() != row.len() {
                return Err(Error::InvalidArgument(format!(
                    "repeated entry in symbol row {row:?}"
                )));
            }
        }
        Ok(Self::normalize(x, y))
    }

    fn normalize(mut x: Vec<u32>, mut y: Vec<u32>) -> Self {
        x.sort_unstable();
        y.sort_unstable();
        let mut lead = 0;
        while x.get(lead) == Some(&(lead as u32)) && y.get(lead) == Some(&(lead as u32)) {
            lead += 1;
        }
        let shift = lead as u32;
        let mut x: Vec<u32> = x[lead..].iter().map(|v| v - shift).collect();
        let mut y: Vec<u32> = y[lead..].iter().map(|v| v - shift).collect();
        if (y.len(), &y) > (x.len(), &x) {
            std::mem::swap(&mut x, &mut y);
        }
        Symbol { top: x, bottom: y }
    }

    pub fn rows(&self) -> (&[u32], &[u32]) {
        (&self.top, &self.bottom)
    }

    /// Adds 0 to both rows and increments every entry.
    pub fn shifted_rows(&self) -> (Vec<u32>, Vec<u32>) {
        let shift = |r: &[u32]| std::iter::once(0).chain(r.iter().map(|v| v + 1)).collect();
        (shift(&self.top), shift(&self.bottom))
    }

    pub fn defect(&self) -> u32 {
        (self.top.len() - self.bottom.len()) as u32
    }

    pub fn rank(&self) -> u32 {
        let total: i64 = self
            .top
            .iter()
            .chain(&self.bottom)
            .map(|&v| i64::from(v))
            .sum();
        let a = (self.top.len() + self.bottom.len()) as i64 - 1;
        (total - a * a / 4) as u32
    }

    pub fn is_degenerate(&self) -> bool {
        self.top == self.bottom
    }

    /// Moves of an entry `x` to `x - d` within its own row.
    pub fn remove_hook(&self, d: u32) -> Vec<Symbol> {
        assert!(d >= 1);
        let mut out = BTreeSet::new();
        for (row, other, flip) in [
            (&self.top, &self.bottom, false),
            (&self.bottom, &self.top, true),
        ] {
            for &x in row.iter() {
                if x < d || row.contains(&(x - d)) {
                    continue;
                }
                let moved: Vec<u32> = row
                    .iter()
                    .map(|&v| if v == x { x - d } else { v })
                    .collect();
                let (a, b) = if flip {
                    (other.clone(), moved)
                } else {
                    (moved, other.clone())
                };
                out.insert(Symbol::normalize(a, b));
            }
        }
        out.into_iter().collect()
    }

    /// Moves of an entry `x` out of its row to `x - e` in the other row.
    pub fn remove_cohook(&self, e: u32) -> Vec<Symbol> {
        assert!(e >= 1);
        let mut out = BTreeSet::new();
        for (row, other) in [(&self.top, &self.bottom), (&self.bottom, &self.top)] {
            for &x in row.iter() {
                if x < e || other.contains(&(x - e)) {
                    continue;
                }
                let from: Vec<u32> = row.iter().copied().filter(|&v| v != x).collect();
                let mut to = other.clone();
                to.push(x - e);
                out.insert(Symbol::normalize(from, to));
            }
        }
        out.into_iter().collect()
    }

    pub fn remove(&self, kind: Removal) -> Vec<Symbol> {
        match kind {
            Removal::Hook(d) => self.remove_hook(d),
            Removal::Cohook(e) => self.remove_cohook(e),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?})", self.top, self.bottom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Removal {
    Hook(u32),
    Cohook(u32),
}

impl Removal {
    pub fn length(self) -> u32 {
        match self {
            Removal::Hook(d) | Removal::Cohook(d) => d,
        }
    }
}

impl fmt::Display for Removal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Removal::Hook(d) => write!(f, "hook({d})"),
            Removal::Cohook(e) => write!(f, "cohook({e})"),
        }
    }
}

impl Serialize for Removal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Removes hooks (or cohooks) until none remain. Returns the core and the
/// number of removals.
pub fn symbol_core_weight(sym: &Symbol, kind: Removal) -> (Symbol, u32) {
    let mut current = sym.clone();
    let mut weight = 0;
    while let Some(next) = current.remove(kind).into_iter().next() {
        current = next;
        weight += 1;
    }
    assert_eq!(
        sym.rank(),
        current.rank() + kind.length() * weight,
        "rank bookkeeping failed for {sym} under {kind}"
    );
    (current, weight)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalType {
    B,
    C,
    D,
    TwistedD,
}

impl ClassicalType {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassicalType::B => "B",
            ClassicalType::C => "C",
            ClassicalType::D => "D",
            ClassicalType::TwistedD => "2D",
        }
    }

    fn admits_defect(self, defect: u32) -> bool {
        match self {
            ClassicalType::B | ClassicalType::C => defect % 2 == 1,
            ClassicalType::D => defect.is_multiple_of(4),
            ClassicalType::TwistedD => defect % 4 == 2,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassicalType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(ClassicalType::B),
            "C" => Ok(ClassicalType::C),
            "D" => Ok(ClassicalType::D),
            "2D" => Ok(ClassicalType::TwistedD),
            other => Err(Error::InvalidArgument(format!(
                "unknown classical type {other}"
            ))),
        }
    }
}

impl Serialize for ClassicalType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnipotentSymbol {
    pub symbol: Symbol,
    /// 2 for degenerate symbols of type D, which label two characters.
    pub multiplicity: u32,
}

/// Symbols of rank `n` labelling unipotent characters of the given type.
///
/// A symbol of defect `D` and rank `n` is built from a bipartition of
/// `n - ⌊D²/4⌋` by padding its beta-sets to lengths differing by `D`.
pub fn enumerate_unipotent_symbols(ty: ClassicalType, n: u32) -> Vec<UnipotentSymbol> {
    let mut found = BTreeSet::new();
    let mut defect = 0u32;
    while defect * defect / 4 <= n {
        if ty.admits_defect(defect) {
            let rest = n - defect * defect / 4;
            for a in 0..=rest {
                for alpha in partitions_of(a) {
                    for beta in partitions_of(rest - a) {
                        let m = alpha.len().max(beta.len()) + 1;
                        let x = BetaSet::from_partition(&alpha, m + defect as usize);
                        let y = BetaSet::from_partition(&beta, m);
                        found.insert(Symbol::normalize(x.beads().to_vec(), y.beads().to_vec()));
                    }
                }
            }
        }
        defect += 1;
    }
    found
        .into_iter()
        .map(|symbol| {
            debug_assert_eq!(symbol.rank(), n);
            let multiplicity = if symbol.is_degenerate() { 2 } else { 1 };
            UnipotentSymbol {
                symbol,
                multiplicity,
            }
        })
        .collect()
}
