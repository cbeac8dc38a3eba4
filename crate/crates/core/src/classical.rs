//! Unipotent blocks of classical groups of types B, C, D and ²D.
//!
//! For odd `p` the unipotent characters are grouped by the core of their
//! symbol: `d`-hooks when `d = ord(q mod p)` is odd, `d/2`-cohooks when it
//! is even. For `p = 2` only an upper bound through unipotent class counts
//! is available.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::arith::require_prime;
use crate::bounds::count_irr_g2d2w;
use crate::classes::{closed_form_bound, count_classes_exact, ClassType};
use crate::error::{Error, Result};
use crate::linear::mult_order;
use crate::multipartition::count_multipartitions;
use crate::report::{
    decimal, decimal_opt, BoundCertificate, CensusCheck, EllKind, Row, Verdict, VerificationReport,
};
use crate::symbol::{
    enumerate_unipotent_symbols, symbol_core_weight, ClassicalType, Removal, Symbol,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalBlock {
    pub ty: ClassicalType,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub d: u32,
    pub kind: Removal,
    pub core: Symbol,
    pub weight: u32,
    pub degenerate_core: bool,
    /// Unipotent characters in the block, degenerate symbols counted twice.
    pub symbols: u32,
    /// Number of blocks sharing this core: 2 for a degenerate defect-zero core.
    pub blocks: u32,
}

impl ClassicalBlock {
    /// `ℓ(B)` predicted from the relative Weyl group.
    pub fn predicted_ell(&self) -> BigUint {
        let len = self.kind.length();
        if self.weight == 0 {
            BigUint::one()
        } else if self.degenerate_core {
            count_irr_g2d2w(len, self.weight)
        } else {
            count_multipartitions(2 * len, self.weight)
        }
    }

    pub fn certificate(&self) -> BoundCertificate {
        let (len, w) = (self.kind.length(), self.weight);
        let mut trace = vec![format!(
            "d=ord({} mod {})={}, removing {}",
            self.q, self.p, self.d, self.kind
        )];
        if w == 0 {
            trace.push("defect zero: core symbol, ℓ(B)=1".into());
            if self.blocks == 2 {
                trace.push("degenerate core labels two characters, two blocks".into());
            }
            return BoundCertificate::exact(BigUint::one(), 0, trace);
        }
        if self.degenerate_core {
            trace.push(format!(
                "degenerate core: relative Weyl group G({},2,{w}), ℓ(B)=|Irr G({},2,{w})|",
                2 * len,
                2 * len
            ));
        } else {
            trace.push(format!(
                "relative Weyl group C_{}≀S_{w}: ℓ(B)=k({},{w})",
                2 * len,
                2 * len
            ));
        }
        trace.push(format!("defect groups have rank at least w={w}"));
        BoundCertificate::exact(self.predicted_ell(), w, trace)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalRow {
    #[serde(rename = "type")]
    pub ty: ClassicalType,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<Removal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<Symbol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degenerate_core: Option<bool>,
    /// Unipotent class count feeding the `p = 2` bound.
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "decimal_opt"
    )]
    pub unipotent_classes: Option<BigUint>,
    #[serde(serialize_with = "decimal")]
    pub ell: BigUint,
    pub ell_kind: EllKind,
    pub s_lower: u32,
    #[serde(serialize_with = "decimal")]
    pub p_pow_s: BigUint,
    pub blocks: u32,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

fn validate_odd(n: u32, q: u64, p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        return Err(Error::InvalidArgument(
            "p=2 is handled by the class-count branch".into(),
        ));
    }
    if q.is_multiple_of(p) {
        return Err(Error::Divisible { a: q as i64, p });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(())
}

/// Unipotent `p`-blocks for odd `p`, one entry per core, heaviest first.
///
/// Fails with [`Error::Invariant`] if a block's character count differs from
/// the predicted `ℓ(B)`.
pub fn classical_unipotent_blocks(
    ty: ClassicalType,
    n: u32,
    q: u64,
    p: u64,
) -> Result<Vec<(ClassicalBlock, BoundCertificate)>> {
    validate_odd(n, q, p)?;
    let d = mult_order(q as i64, p)?;
    let kind = if d % 2 == 1 {
        Removal::Hook(d)
    } else {
        Removal::Cohook(d / 2)
    };
    let mut by_core: BTreeMap<Symbol, (u32, u32)> = BTreeMap::new();
    for us in enumerate_unipotent_symbols(ty, n) {
        let (core, w) = symbol_core_weight(&us.symbol, kind);
        let entry = by_core.entry(core).or_insert((w, 0));
        if entry.0 != w {
            return Err(Error::Invariant(format!(
                "core {} reached with weights {} and {w}",
                us.symbol, entry.0
            )));
        }
        entry.1 += us.multiplicity;
    }
    let mut out: Vec<(ClassicalBlock, BoundCertificate)> = Vec::new();
    for (core, (weight, symbols)) in by_core {
        let degenerate_core = core.is_degenerate();
        let blocks = if weight == 0 && degenerate_core { 2 } else { 1 };
        let block = ClassicalBlock {
            ty,
            n,
            q,
            p,
            d,
            kind,
            degenerate_core,
            core,
            weight,
            symbols,
            blocks,
        };
        let predicted = block.predicted_ell() * blocks;
        if predicted != BigUint::from(symbols) {
            return Err(Error::Invariant(format!(
                "{ty}_{n} block with core {} has {symbols} characters, predicted {predicted}",
                block.core
            )));
        }
        let cert = block.certificate();
        out.push((block, cert));
    }
    out.sort_by(|a, b| {
        b.0.weight
            .cmp(&a.0.weight)
            .then_with(|| a.0.core.cmp(&b.0.core))
    });
    Ok(out)
}

/// Rows for every unipotent block plus the identity `Σ ℓ(B) = #symbols`.
pub fn verify_classical_census(
    ty: ClassicalType,
    n: u32,
    q: u64,
    p: u64,
) -> Result<VerificationReport> {
    let blocks = classical_unipotent_blocks(ty, n, q, p)?;
    let total: u32 = enumerate_unipotent_symbols(ty, n)
        .iter()
        .map(|s| s.multiplicity)
        .sum();
    let mut report = VerificationReport::default();
    let mut sum = BigUint::zero();
    for (b, cert) in blocks {
        sum += cert.ell() * b.blocks;
        let p_pow_s = cert.p_pow_s(p);
        let verdict = cert.verdict(p);
        report.rows.push(Row::Classical(ClassicalRow {
            ty,
            n,
            q,
            p,
            d: Some(b.d),
            kind: Some(b.kind),
            core: Some(b.core),
            weight: Some(b.weight),
            degenerate_core: Some(b.degenerate_core),
            unipotent_classes: None,
            ell: cert.ell().clone(),
            ell_kind: cert.ell_kind(),
            s_lower: cert.s_lower,
            p_pow_s,
            blocks: b.blocks,
            verdict,
            trace: cert.trace,
        }));
    }
    report.checks.push(CensusCheck::new(
        format!("{ty}_{n}(q={q}) p={p}: Σ ℓ(B) = #unipotent characters"),
        sum,
        BigUint::from(total),
    ));
    Ok(report)
}

/// Smallest rank for which the `p = 2` branch applies.
fn min_rank_p2(ty: ClassicalType) -> u32 {
    match ty {
        ClassicalType::B | ClassicalType::C => 2,
        ClassicalType::D | ClassicalType::TwistedD => 4,
    }
}

/// Number of unipotent classes used in the `p = 2` bound, whether it is
/// exact for the group in question, and where it comes from.
fn p2_class_count(ty: ClassicalType, n: u32) -> (BigUint, bool, String) {
    let class_ty = match ty {
        ClassicalType::B => ClassType::B,
        ClassicalType::C => ClassType::C,
        ClassicalType::D | ClassicalType::TwistedD => ClassType::D,
    };
    let small = match ty {
        ClassicalType::C => n == 2,
        ClassicalType::B => (2..=4).contains(&n),
        ClassicalType::D | ClassicalType::TwistedD => (4..=6).contains(&n),
    };
    if small {
        let exact = count_classes_exact(class_ty, n);
        if ty == ClassicalType::TwistedD {
            let note = format!("twisted form has at most the {exact} classes of split D_{n}");
            return (exact, false, note);
        }
        return (
            exact.clone(),
            true,
            format!("G̃ has exactly {exact} unipotent classes"),
        );
    }
    let bound = closed_form_bound(class_ty, n);
    (
        bound.clone(),
        false,
        format!("at most {bound} unipotent classes (closed form)"),
    )
}

/// Principal 2-block of a classical group over `F_q`, `q` odd.
pub fn verify_classical_p2(ty: ClassicalType, n: u32, q: u64) -> Result<VerificationReport> {
    if q.is_multiple_of(2) {
        return Err(Error::Divisible { a: q as i64, p: 2 });
    }
    if n < min_rank_p2(ty) {
        return Err(Error::Unsupported(format!(
            "{ty}_{n} below the supported rank at p=2"
        )));
    }
    let factor: u32 = match ty {
        ClassicalType::B | ClassicalType::C => 2,
        ClassicalType::D | ClassicalType::TwistedD => 4,
    };
    let rank = match ty {
        ClassicalType::B | ClassicalType::C => 2 * n,
        ClassicalType::D | ClassicalType::TwistedD => 2 * n - 1,
    };
    let (classes, _, source) = p2_class_count(ty, n);
    let ell = &classes * factor;
    let trace = vec![
        "p=2: all unipotent characters lie in the principal block".to_string(),
        format!("ℓ(B) <= {factor} ℓ(B̃), ℓ(B̃) <= #unipotent classes of G̃"),
        source,
        format!("sectional 2-rank of the defect group >= {rank}"),
    ];
    let cert = BoundCertificate::upper(ell, rank, trace);
    let p_pow_s = BigUint::from(2u32).pow(rank);
    let verdict = cert.verdict(2);
    let mut report = VerificationReport::default();
    report.rows.push(Row::Classical(ClassicalRow {
        ty,
        n,
        q,
        p: 2,
        d: None,
        kind: None,
        core: None,
        weight: None,
        degenerate_core: None,
        unipotent_classes: Some(classes),
        ell: cert.ell().clone(),
        ell_kind: cert.ell_kind(),
        s_lower: rank,
        p_pow_s,
        blocks: 1,
        verdict,
        trace: cert.trace,
    }));
    Ok(report)
}
