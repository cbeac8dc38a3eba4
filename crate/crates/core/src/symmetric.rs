//! Blocks of symmetric and alternating groups and weight-level spin blocks.
//!
//! Blocks of `S_n` are labelled by `p`-cores; a block with core `c` has
//! weight `(n - |c|)/p` and `k(p-1, w)` simple modules. Alternating-group
//! blocks are handled through their covering symmetric block.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::arith::require_prime;
use crate::error::{Error, Result};
use crate::multipartition::{count_multipartitions, BigCount};
use crate::partition::{
    core_quotient, cores_of_size, count_pregular_partitions, partitions_of, Partition,
};
use crate::report::{
    decimal, BoundCertificate, CensusCheck, EllKind, Row, Verdict, VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymFamily {
    Symmetric,
    Alternating,
    Spin,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymBlock {
    pub n: u32,
    pub p: u32,
    pub core: Partition,
    pub weight: u32,
    pub family: SymFamily,
}

impl SymBlock {
    pub fn new(n: u32, p: u32, core: Partition, family: SymFamily) -> Result<Self> {
        if !core.is_core(p) || core.size() > n || !(n - core.size()).is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!(
                "{core} is not a {p}-core of a partition of {n}"
            )));
        }
        let weight = (n - core.size()) / p;
        Ok(SymBlock {
            n,
            p,
            core,
            weight,
            family,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymRow {
    pub family: SymFamily,
    pub n: Option<u32>,
    pub p: u32,
    pub core: Option<Partition>,
    pub weight: u32,
    #[serde(serialize_with = "decimal")]
    pub ell: BigUint,
    pub ell_kind: EllKind,
    pub s_lower: u32,
    #[serde(serialize_with = "decimal")]
    pub p_pow_s: BigUint,
    /// Number of blocks this row stands for when more than one.
    #[serde(skip_serializing_if = "is_one")]
    pub blocks: u32,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

fn is_one(x: &u32) -> bool {
    *x == 1
}

impl SymRow {
    fn from_certificate(
        family: SymFamily,
        n: Option<u32>,
        p: u32,
        core: Option<Partition>,
        weight: u32,
        cert: BoundCertificate,
        blocks: u32,
    ) -> Self {
        let p_pow_s = cert.p_pow_s(u64::from(p));
        let verdict = cert.verdict(u64::from(p));
        SymRow {
            family,
            n,
            p,
            core,
            weight,
            ell: cert.ell().clone(),
            ell_kind: cert.ell_kind(),
            s_lower: cert.s_lower,
            p_pow_s,
            blocks,
            verdict,
            trace: cert.trace,
        }
    }
}

/// One block per `p`-core of size `n - pw`, heaviest weight first, cores in
/// lexicographic descending order within a weight.
pub fn enumerate_blocks_sym(n: u32, p: u32) -> Result<Vec<SymBlock>> {
    require_prime(u64::from(p))?;
    let mut blocks = Vec::new();
    for w in (0..=n / p).rev() {
        for core in cores_of_size(n - p * w, p) {
            blocks.push(SymBlock {
                n,
                p,
                core,
                weight: w,
                family: SymFamily::Symmetric,
            });
        }
    }
    Ok(blocks)
}

fn k(s: u32, t: u32) -> BigCount {
    count_multipartitions(s, t)
}

pub fn sym_invariants(b: &SymBlock) -> BoundCertificate {
    let (p, w) = (b.p, b.weight);
    if w == 0 {
        return BoundCertificate::exact(
            BigUint::one(),
            0,
            vec!["defect zero: weight 0, ℓ(B)=1".into()],
        );
    }
    let trace = vec![
        format!("ℓ(B)=k(p-1,w)=k({},{w})", p - 1),
        format!("k(B)=k(p,w)=k({p},{w})={}", k(p, w)),
        format!("defect group contains elementary abelian subgroup of rank w={w}, so s(B)>=w"),
    ];
    BoundCertificate::exact(k(p - 1, w), w, trace)
}

/// Certificate for the block(s) of `A_n` covered by the symmetric block `b`.
pub fn alt_invariants(b: &SymBlock) -> Result<BoundCertificate> {
    if b.family != SymFamily::Symmetric {
        return Err(Error::InvalidArgument(
            "expected the covering symmetric block".into(),
        ));
    }
    let (p, w) = (b.p, b.weight);
    if w == 0 {
        return Ok(BoundCertificate::exact(
            BigUint::one(),
            0,
            vec!["defect zero: covering block has weight 0".into()],
        ));
    }
    if p == 2 {
        let covering = k(1, w);
        let mut trace = vec![format!("ℓ(B̂)=k(1,{w})={covering}")];
        let ell = if w % 2 == 0 {
            trace.push(format!("w even: ℓ(B)=ℓ(B̂)+k(1,w/2)=ℓ(B̂)+k(1,{})", w / 2));
            covering + k(1, w / 2)
        } else {
            trace.push("w odd: ℓ(B)=ℓ(B̂)".into());
            covering
        };
        let s_lower = match w {
            1 => {
                trace.push("s(B)>=s(B̂)-1=0".into());
                0
            }
            2 => {
                trace.push("w=2: defect groups elementary abelian of order 4".into());
                2
            }
            3 => {
                trace.push("w=3: |D|=2^3, s(B)>=2".into());
                2
            }
            _ => {
                trace.push(format!(
                    "w>=4: ℓ(B)<=k(1,w)+k(1,w/2)<=2^w<=2^s(B), s(B)>={w}"
                ));
                w
            }
        };
        return Ok(BoundCertificate::exact(ell, s_lower, trace));
    }
    if w < p {
        let kb = k(p, w);
        let trace = vec![
            format!("1<=w<p: defect groups elementary abelian, s(B)=w={w}"),
            format!("ℓ(B)<k(B)<=k(B̂)=k({p},{w})={kb}"),
        ];
        return Ok(BoundCertificate::upper(kb - 1u32, w, trace));
    }
    let mut trace = vec![
        format!("p<=w: ℓ(B)<=2ℓ(B̂)=2k({},{w})", p - 1),
        format!("s(B)>=w={w}"),
    ];
    if p == 3 && w <= 6 {
        trace.push("p=3, w<=6: closed by direct comparison 2k(2,w)<3^w".into());
    }
    Ok(BoundCertificate::upper(k(p - 1, w) * 2u32, w, trace))
}

/// Weight-level count for faithful blocks of double covers at odd `p`.
pub fn spin_weight_check(p: u32, w: u32) -> Result<BoundCertificate> {
    require_prime(u64::from(p))?;
    if p == 2 {
        return Err(Error::InvalidArgument("spin blocks need odd p".into()));
    }
    if w == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let t = (p - 1) / 2;
    let (ell, rule) = if w.is_multiple_of(2) {
        (k(t, w), format!("w even: ℓ(B)=k(t,w)=k({t},{w})"))
    } else {
        (k(t, w) * 2u32, format!("w odd: ℓ(B)=2k(t,w)=2k({t},{w})"))
    };
    Ok(BoundCertificate::exact(
        ell,
        w,
        vec![rule, format!("t=(p-1)/2={t}, s(B)>=w={w}")],
    ))
}

/// Per-block verdicts for `S_n` plus the two census identities.
pub fn verify_sym_census(n: u32, p: u32) -> Result<VerificationReport> {
    let blocks = enumerate_blocks_sym(n, p)?;
    let mut report = VerificationReport::default();
    let mut ordinary = BigUint::default();
    let mut brauer = BigUint::default();
    for b in &blocks {
        ordinary += k(p, b.weight);
        let cert = sym_invariants(b);
        brauer += cert.ell().clone();
        report.rows.push(Row::Sym(SymRow::from_certificate(
            SymFamily::Symmetric,
            Some(n),
            p,
            Some(b.core.clone()),
            b.weight,
            cert,
            1,
        )));
    }
    report.checks.push(CensusCheck::new(
        format!("S_{n} p={p}: sum k(p,w_B) = p(n)"),
        ordinary,
        BigUint::from(partitions_of(n).len()),
    ));
    report.checks.push(CensusCheck::new(
        format!("S_{n} p={p}: sum ℓ(B) = #p-regular partitions"),
        brauer,
        count_pregular_partitions(n, p),
    ));
    Ok(report)
}

/// Blocks of `A_n`, one row per pair of conjugate `S_n` blocks.
pub fn verify_alt_census(n: u32, p: u32) -> Result<VerificationReport> {
    let blocks = enumerate_blocks_sym(n, p)?;
    let mut report = VerificationReport::default();
    let mut seen = std::collections::HashSet::new();
    for b in &blocks {
        let conj = b.core.conjugate();
        if seen.contains(&conj) {
            continue;
        }
        seen.insert(b.core.clone());
        let cert = alt_invariants(b)?;
        let self_conjugate = conj == b.core;
        // A self-conjugate defect-zero character splits on restriction.
        let count = if b.weight == 0 && self_conjugate && n >= 2 {
            2
        } else {
            1
        };
        report.rows.push(Row::Sym(SymRow::from_certificate(
            SymFamily::Alternating,
            Some(n),
            p,
            Some(b.core.clone()),
            b.weight,
            cert,
            count,
        )));
    }
    Ok(report)
}

pub fn verify_spin(p: u32, max_w: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for w in 1..=max_w {
        let cert = spin_weight_check(p, w)?;
        report.rows.push(Row::Sym(SymRow::from_certificate(
            SymFamily::Spin,
            None,
            p,
            None,
            w,
            cert,
            1,
        )));
    }
    Ok(report)
}

/// Weight of `λ` for `p`, via the abacus.
pub fn block_of(lambda: &Partition, p: u32) -> (Partition, u32) {
    let cq = core_quotient(lambda, p);
    (cq.core, cq.weight)
}
