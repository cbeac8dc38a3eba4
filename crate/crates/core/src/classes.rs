//! Unipotent classes of adjoint classical groups in odd characteristic.
//!
//! A class of the algebraic group is labelled by `(α, β)`; the Jordan type
//! is `λ = α ∪ α ∪ β` for B and D and `λ = α ∪ α ∪ 2β` for C. Over `F_q` a
//! class splits into as many classes as its component group has elements.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::partition::{for_each_partition, Partition};
use crate::report::{decimal, decimal_opt, Row, Verdict, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassType {
    B,
    C,
    D,
}

impl ClassType {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassType::B => "B",
            ClassType::C => "C",
            ClassType::D => "D",
        }
    }
}

impl fmt::Display for ClassType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(ClassType::B),
            "C" => Ok(ClassType::C),
            "D" => Ok(ClassType::D),
            other => Err(Error::InvalidArgument(format!(
                "unknown class type {other}"
            ))),
        }
    }
}

impl Serialize for ClassType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassParam {
    #[serde(rename = "type")]
    pub ty: ClassType,
    pub n: u32,
    pub alpha: Partition,
    pub beta: Partition,
    /// Type D with `β = ∅` and every part of `α` even: two classes.
    pub degenerate: bool,
}

impl ClassParam {
    /// Jordan type of the class as `(part, multiplicity)`, parts ascending.
    pub fn jordan_multiplicities(&self) -> BTreeMap<u32, u32> {
        jordan(self.ty, self.alpha.parts(), self.beta.parts())
    }

    pub fn jordan_type(&self) -> Partition {
        let parts = self
            .jordan_multiplicities()
            .into_iter()
            .flat_map(|(i, m)| std::iter::repeat_n(i, m as usize))
            .collect();
        Partition::from_unsorted(parts)
    }
}

fn jordan(ty: ClassType, alpha: &[u32], beta: &[u32]) -> BTreeMap<u32, u32> {
    let mut m = BTreeMap::new();
    for &a in alpha {
        *m.entry(a).or_insert(0) += 2;
    }
    for &b in beta {
        let part = if ty == ClassType::C { 2 * b } else { b };
        *m.entry(part).or_insert(0) += 1;
    }
    m
}

/// Strictly decreasing sequences summing to `t`, parts `>= min` in steps of
/// `step` (so `step = 2, min = 1` gives distinct odd parts).
fn for_each_distinct<F: FnMut(&[u32])>(t: u32, min: u32, step: u32, f: &mut F) {
    fn rec<F: FnMut(&[u32])>(
        rest: u32,
        max: u32,
        min: u32,
        step: u32,
        acc: &mut Vec<u32>,
        f: &mut F,
    ) {
        if rest == 0 {
            f(acc);
            return;
        }
        let mut part = max.min(rest);
        // align to the residue class of `min`
        while part >= min && !(part - min).is_multiple_of(step) {
            part -= 1;
        }
        while part >= min {
            acc.push(part);
            rec(rest - part, part.saturating_sub(step), min, step, acc, f);
            acc.pop();
            if part < min + step {
                break;
            }
            part -= step;
        }
    }
    rec(t, t, min, step, &mut Vec::new(), f);
}

/// Visits every `(α, β)` of the given type and rank.
fn for_each_param<F: FnMut(&[u32], &[u32])>(ty: ClassType, n: u32, mut f: F) {
    let (total, scale, min, step) = match ty {
        ClassType::C => (n, 1, 1, 1),
        ClassType::B => (2 * n + 1, 2, 1, 2),
        ClassType::D => (2 * n, 2, 1, 2),
    };
    for a in 0..=total / scale {
        let rest = total - scale * a;
        for_each_partition(a, |alpha| {
            for_each_distinct(rest, min, step, &mut |beta| f(alpha, beta));
        });
    }
}

fn is_degenerate(ty: ClassType, alpha: &[u32], beta: &[u32]) -> bool {
    ty == ClassType::D && beta.is_empty() && alpha.iter().all(|a| a % 2 == 0)
}

pub fn enumerate_class_params(ty: ClassType, n: u32) -> Vec<ClassParam> {
    let mut out = Vec::new();
    for_each_param(ty, n, |alpha, beta| {
        out.push(ClassParam {
            ty,
            n,
            alpha: Partition::from_unsorted(alpha.to_vec()),
            beta: Partition::from_unsorted(beta.to_vec()),
            degenerate: is_degenerate(ty, alpha, beta),
        });
    });
    out.sort();
    out
}

fn split_exponent(ty: ClassType, alpha: &[u32], beta: &[u32]) -> u32 {
    if is_degenerate(ty, alpha, beta) {
        return 0;
    }
    let parts = jordan(ty, alpha, beta);
    let parity = if ty == ClassType::C { 0 } else { 1 };
    parts.keys().filter(|&&i| i % 2 == parity).count() as u32
}

/// Upper bound for `log₂` of the component group order: distinct odd parts
/// for B and D, distinct even part lengths of `λ` for C.
pub fn split_exponent_upper(c: &ClassParam) -> u32 {
    split_exponent(c.ty, c.alpha.parts(), c.beta.parts())
}

/// Classes of `G̃` over a class of the algebraic group with Jordan type
/// given by `mult` (both classes for a very even D label).
fn exact_classes(ty: ClassType, mult: &BTreeMap<u32, u32>) -> u64 {
    let odd_distinct = mult.keys().filter(|&&i| i % 2 == 1).count() as u32;
    let even_distinct = mult.keys().filter(|&&i| i % 2 == 0).count() as u32;
    let odd_with_odd_mult = mult.iter().any(|(&i, &m)| i % 2 == 1 && m % 2 == 1);
    let even_with_odd_mult = mult.iter().any(|(&i, &m)| i % 2 == 0 && m % 2 == 1);
    let exponent = match ty {
        ClassType::B => odd_distinct - 1,
        ClassType::C => {
            if even_with_odd_mult {
                even_distinct - 1
            } else {
                even_distinct
            }
        }
        ClassType::D => {
            if odd_distinct == 0 {
                return 2;
            }
            if odd_with_odd_mult {
                odd_distinct.saturating_sub(2)
            } else {
                odd_distinct - 1
            }
        }
    };
    1 << exponent
}

/// Σ over parameters of `2^{split_exponent_upper}`, degenerate labels twice.
pub fn count_classes_upper(ty: ClassType, n: u32) -> BigUint {
    let mut total = BigUint::zero();
    for_each_param(ty, n, |alpha, beta| {
        if is_degenerate(ty, alpha, beta) {
            total += 2u32;
        } else {
            total += BigUint::one() << split_exponent(ty, alpha, beta);
        }
    });
    total
}

/// Number of unipotent classes of the split adjoint group over `F_q`, `q` odd.
pub fn count_classes_exact(ty: ClassType, n: u32) -> BigUint {
    let mut total = BigUint::zero();
    for_each_param(ty, n, |alpha, beta| {
        total += exact_classes(ty, &jordan(ty, alpha, beta));
    });
    total
}

/// `2^{n+⌊√(2n+1)⌋}`, `2^{n+⌊√n⌋}`, `2^{n+⌊√(2n)⌋}` for B, C, D.
pub fn closed_form_bound(ty: ClassType, n: u32) -> BigUint {
    let n64 = u64::from(n);
    let root = match ty {
        ClassType::B => isqrt(2 * n64 + 1),
        ClassType::C => isqrt(n64),
        ClassType::D => isqrt(2 * n64),
    };
    BigUint::from(2u32).pow(n + root as u32)
}

/// `(2^n − 2^{⌊n/2⌋})·2^{⌊√(2n)⌋} + 2^{⌊n/2⌋+1}`.
pub fn d_split_display(n: u32) -> BigUint {
    let two = BigUint::from(2u32);
    let half = n / 2;
    let root = isqrt(2 * u64::from(n)) as u32;
    (two.clone().pow(n) - two.clone().pow(half)) * two.clone().pow(root) + two.pow(half + 1)
}

/// The map `(α, β) ↦ (α, β′)` onto pairs of partitions of `n`, for type B.
pub fn b_reencode(c: &ClassParam) -> Result<(Partition, Partition)> {
    if c.ty != ClassType::B {
        return Err(Error::InvalidArgument(
            "re-encoding is defined for type B".into(),
        ));
    }
    let mut beta: Vec<u32> = c.beta.parts().to_vec();
    beta.reverse();
    let prime = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if i % 2 == 0 {
                (b - 1) / 2
            } else {
                b.div_ceil(2)
            }
        })
        .filter(|&x| x > 0)
        .collect();
    Ok((c.alpha.clone(), Partition::from_unsorted(prime)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCountRow {
    #[serde(rename = "type")]
    pub ty: ClassType,
    pub n: u32,
    #[serde(serialize_with = "decimal_opt")]
    pub exact: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub upper: BigUint,
    #[serde(serialize_with = "decimal")]
    pub closed_form_bound: BigUint,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// Checks `exact <= upper <= closed form`; the verdict compares the upper
/// count with the closed form.
pub fn verify_class_counts(ty: ClassType, n: u32) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let exact = count_classes_exact(ty, n);
    let upper = count_classes_upper(ty, n);
    let closed = closed_form_bound(ty, n);
    let params = enumerate_params_len(ty, n);
    let mut trace = vec![
        format!("{params} labels (α,β) for {ty}_{n}"),
        format!("exact count from component groups: {exact}"),
        format!("Σ 2^(split exponent bound) = {upper}"),
    ];
    let verdict = if exact > upper {
        trace.push("exact count exceeds the split bound".into());
        Verdict::Violation
    } else {
        Verdict::classify(&upper, &closed, true)
    };
    let mut report = VerificationReport::default();
    report.rows.push(Row::Classes(ClassCountRow {
        ty,
        n,
        exact: Some(exact),
        upper,
        closed_form_bound: closed,
        verdict,
        trace,
    }));
    Ok(report)
}

fn enumerate_params_len(ty: ClassType, n: u32) -> u64 {
    let mut count = 0;
    for_each_param(ty, n, |_, _| count += 1);
    count
}
