//! Block censuses for `GL_n(q)` and `GU_n(q)`, and certificate replay for
//! `SL_n(q)` and `SU_n(q)`.
//!
//! A block is a semisimple `p'`-class `s` together with a unipotent block of
//! `C(s) = ∏ GL_{m_i}(ε q^{f_i})`, where `ε = -1` selects the unitary
//! reading. Classes are not listed one by one; a [`CentralizerShape`] records
//! the `(f, m)` data and the number of classes sharing it.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{divisors, is_prime_power, mobius, p_prime_part, prime_divisors, require_prime};
use crate::error::{Error, Result};
use crate::multipartition::{count_multipartitions, partition_count, BigCount};
use crate::partition::{cores_of_size, Partition};
use crate::report::{
    decimal, BoundCertificate, CensusCheck, EllKind, Row, Verdict, VerificationReport,
};

/// Least `d >= 1` with `a^d ≡ 1 (mod p)`.
pub fn mult_order(a: i64, p: u64) -> Result<u32> {
    require_prime(p)?;
    let p_i = p as i64;
    let base = a.rem_euclid(p_i);
    if base == 0 {
        return Err(Error::Divisible { a, p });
    }
    let mut x = base;
    let mut d = 1;
    while x != 1 {
        x = x * base % p_i;
        d += 1;
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearGroup {
    GL,
    GU,
    SL,
    SU,
}

impl LinearGroup {
    pub fn is_unitary(self) -> bool {
        matches!(self, LinearGroup::GU | LinearGroup::SU)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LinearGroup::GL => "GL",
            LinearGroup::GU => "GU",
            LinearGroup::SL => "SL",
            LinearGroup::SU => "SU",
        }
    }
}

impl Serialize for LinearGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl fmt::Display for LinearGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Default caps on shape enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_n: u32,
    pub max_q: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_n: 6, max_q: 9 }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_n: u32::MAX,
            max_q: u64::MAX,
        }
    }

    fn check(&self, n: u32, q: u64) -> Result<()> {
        if n > self.max_n || q > self.max_q {
            return Err(Error::InvalidArgument(format!(
                "n={n}, q={q} exceeds caps n<={}, q<={}",
                self.max_n, self.max_q
            )));
        }
        Ok(())
    }
}

fn validate(n: u32, q: u64, p: u64, limits: &Limits) -> Result<()> {
    require_prime(p)?;
    if !is_prime_power(q) {
        return Err(Error::InvalidArgument(format!(
            "q={q} is not a prime power"
        )));
    }
    if q.is_multiple_of(p) {
        return Err(Error::Divisible { a: q as i64, p });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    limits.check(n, q)
}

/// `(εq)^f` where `ε = -1` for unitary groups.
fn level(q: u64, f: u32, unitary: bool) -> i128 {
    let base = if unitary { -(q as i128) } else { q as i128 };
    base.pow(f)
}

/// Number of Frobenius orbits of size `f` on `p'`-elements of `F̄_q^×`,
/// for `x ↦ x^q` (linear) or `x ↦ x^{-q}` (unitary).
pub fn count_orbits_pprime(q: u64, f: u32, p: u64, unitary: bool) -> BigCount {
    assert!(f >= 1);
    let mut total: i128 = 0;
    for e in divisors(u64::from(f)) {
        let fixed = (level(q, e as u32, unitary) - 1).unsigned_abs() as u64;
        total += i128::from(mobius(u64::from(f) / e)) * i128::from(p_prime_part(fixed, p));
    }
    assert!(
        total >= 0 && total % i128::from(f) == 0,
        "orbit count not integral"
    );
    BigCount::from((total / i128::from(f)) as u64)
}

/// Monic irreducible polynomials of degree `f` over `F_q`, other than `X`,
/// whose roots have order prime to `p`.
pub fn count_irr_polys_pprime(q: u64, f: u32, p: u64) -> BigCount {
    count_orbits_pprime(q, f, p, false)
}

/// Degrees and multiplicities of the eigenvalue orbits of a semisimple class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CentralizerShape {
    /// `(f, m)` pairs sorted by `f` ascending, then `m` descending.
    pub factors: Vec<(u32, u32)>,
    pub unitary: bool,
}

impl Serialize for CentralizerShape {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[u32; 2]> = self.factors.iter().map(|&(f, m)| [f, m]).collect();
        pairs.serialize(s)
    }
}

impl CentralizerShape {
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(f, m)| f * m).sum()
    }
}

fn falling(n: &BigUint, k: u32) -> BigUint {
    let mut out = BigUint::one();
    for i in 0..k {
        if *n < BigUint::from(i + 1) {
            return BigUint::zero();
        }
        out *= n - i;
    }
    out
}

fn factorial(k: u32) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// All shapes of degree `n` with the number of semisimple `p'`-classes of
/// each. Shapes with no realizing class are omitted.
pub fn enumerate_shapes(n: u32, q: u64, p: u64, unitary: bool) -> Vec<(CentralizerShape, BigUint)> {
    let orbits: Vec<BigUint> = (1..=n)
        .map(|f| count_orbits_pprime(q, f, p, unitary))
        .collect();
    let mut out = Vec::new();
    fn rec(
        f: u32,
        rest: u32,
        orbits: &[BigUint],
        acc: &mut Vec<(u32, u32)>,
        count: BigUint,
        unitary: bool,
        out: &mut Vec<(CentralizerShape, BigUint)>,
    ) {
        if rest == 0 {
            out.push((
                CentralizerShape {
                    factors: acc.clone(),
                    unitary,
                },
                count,
            ));
            return;
        }
        if f as usize > orbits.len() {
            return;
        }
        let available = &orbits[f as usize - 1];
        for mass in (0..=rest / f).rev() {
            for mults in crate::partition::partitions_of(mass) {
                let parts = mults.parts();
                let ways = falling(available, parts.len() as u32)
                    / mults
                        .multiplicities()
                        .iter()
                        .fold(BigUint::one(), |a, &(_, c)| a * factorial(c));
                if ways.is_zero() {
                    continue;
                }
                let before = acc.len();
                acc.extend(parts.iter().map(|&m| (f, m)));
                rec(
                    f + 1,
                    rest - f * mass,
                    orbits,
                    acc,
                    &count * &ways,
                    unitary,
                    out,
                );
                acc.truncate(before);
            }
        }
    }
    rec(
        1,
        n,
        &orbits,
        &mut Vec::new(),
        BigUint::one(),
        unitary,
        &mut out,
    );
    out
}

/// Unipotent `p`-block of a single factor `GL_m(εq^f)`: a `d`-core and weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentBlock {
    pub d: u32,
    pub core: Partition,
    pub weight: u32,
}

impl UnipotentBlock {
    pub fn ell(&self) -> BigCount {
        count_multipartitions(self.d, self.weight)
    }
}

/// Unipotent blocks of a group with `m`-dimensional natural module whose
/// block parameter is `d`: one per `d`-core of size `m - dw`.
pub fn unipotent_blocks_for(m: u32, d: u32) -> Vec<UnipotentBlock> {
    let mut out = Vec::new();
    for w in (0..=m / d).rev() {
        for core in cores_of_size(m - d * w, d) {
            out.push(UnipotentBlock { d, core, weight: w });
        }
    }
    out
}

/// Unipotent blocks of `GL_n(q)`, with `ℓ = k(d, w)`.
pub fn gl_unipotent_blocks(
    n: u32,
    q: u64,
    p: u64,
) -> Result<Vec<(UnipotentBlock, BoundCertificate)>> {
    validate(n, q, p, &Limits::unlimited())?;
    let d = mult_order(q as i64, p)?;
    let blocks = unipotent_blocks_for(n, d);
    let total: BigUint = blocks.iter().map(UnipotentBlock::ell).sum();
    if total != partition_count(n) {
        return Err(Error::Invariant(format!(
            "unipotent blocks of GL_{n}({q}) miss partitions"
        )));
    }
    Ok(blocks
        .into_iter()
        .map(|b| {
            let trace = vec![
                format!("d=ord({q} mod {p})={d}"),
                format!(
                    "unipotent characters with {d}-core {}: ℓ(B)=k(d,w)=k({d},{})",
                    b.core, b.weight
                ),
                format!(
                    "elementary abelian subgroup of order p^w, s(B)>={}",
                    b.weight
                ),
            ];
            let cert = BoundCertificate::exact(b.ell(), b.weight, trace);
            (b, cert)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearRow {
    pub group: LinearGroup,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub shape: CentralizerShape,
    pub d_list: Vec<u32>,
    pub cores: Vec<Partition>,
    pub weights: Vec<u32>,
    #[serde(serialize_with = "decimal")]
    pub ell: BigUint,
    pub ell_kind: EllKind,
    pub s_lower: u32,
    #[serde(serialize_with = "decimal")]
    pub p_pow_s: BigUint,
    /// Number of blocks with these invariants.
    #[serde(serialize_with = "decimal")]
    pub blocks: BigUint,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// One block type of `GL_n(εq)`: a shape, a choice of factor blocks, and
/// the number of blocks realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlBlock {
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub shape: CentralizerShape,
    pub factors: Vec<UnipotentBlock>,
    pub count: BigUint,
}

impl GlBlock {
    pub fn d_list(&self) -> Vec<u32> {
        self.factors.iter().map(|b| b.d).collect()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.factors.iter().map(|b| b.weight).collect()
    }

    pub fn ell(&self) -> BigUint {
        self.factors.iter().map(UnipotentBlock::ell).product()
    }

    pub fn s_lower(&self) -> u32 {
        self.factors.iter().map(|b| b.weight).sum()
    }

    pub fn certificate(&self) -> BoundCertificate {
        let group = if self.shape.unitary { "GU" } else { "GL" };
        let mut trace = vec![format!(
            "C(s)=∏ GL_m(({}q)^f) over shape {:?}; B is the product of unipotent blocks B_i",
            if self.shape.unitary { "-" } else { "" },
            self.shape.factors
        )];
        for (&(f, m), b) in self.shape.factors.iter().zip(&self.factors) {
            trace.push(format!(
                "factor f={f} m={m}: d={} core {} w={} ℓ(B_i)=k({},{})",
                b.d, b.core, b.weight, b.d, b.weight
            ));
        }
        trace.push(format!(
            "{group}: s(B)>=Σw_i={}, similarly for the defect groups",
            self.s_lower()
        ));
        BoundCertificate::exact(self.ell(), self.s_lower(), trace)
    }

    fn row(&self, group: LinearGroup, cert: BoundCertificate) -> LinearRow {
        let p_pow_s = cert.p_pow_s(self.p);
        let verdict = cert.verdict(self.p);
        LinearRow {
            group,
            n: self.n,
            q: self.q,
            p: self.p,
            shape: self.shape.clone(),
            d_list: self.d_list(),
            cores: self.factors.iter().map(|b| b.core.clone()).collect(),
            weights: self.weights(),
            ell: cert.ell().clone(),
            ell_kind: cert.ell_kind(),
            s_lower: cert.s_lower,
            p_pow_s,
            blocks: self.count.clone(),
            verdict,
            trace: cert.trace,
        }
    }
}

/// Every block type of `GL_n(q)` (or `GU_n(q)`), plus the number of
/// `p`-regular classes computed from the shapes alone.
pub fn enumerate_gl_blocks(
    n: u32,
    q: u64,
    p: u64,
    unitary: bool,
    limits: &Limits,
) -> Result<(Vec<GlBlock>, BigUint)> {
    validate(n, q, p, limits)?;
    let mut blocks = Vec::new();
    let mut regular_classes = BigUint::zero();
    for (shape, count) in enumerate_shapes(n, q, p, unitary) {
        let per_factor: Vec<Vec<UnipotentBlock>> = shape
            .factors
            .iter()
            .map(|&(f, m)| {
                let lv = level(q, f, unitary).rem_euclid(i128::from(p)) as i64;
                let d = mult_order(lv, p).expect("p does not divide q");
                unipotent_blocks_for(m, d)
            })
            .collect();
        let classes: BigUint = shape
            .factors
            .iter()
            .map(|&(_, m)| partition_count(m))
            .product();
        regular_classes += &count * classes;
        let mut choice = vec![0usize; per_factor.len()];
        loop {
            blocks.push(GlBlock {
                n,
                q,
                p,
                shape: shape.clone(),
                factors: choice
                    .iter()
                    .zip(&per_factor)
                    .map(|(&i, bs)| bs[i].clone())
                    .collect(),
                count: count.clone(),
            });
            // odometer over factor choices
            let mut pos = per_factor.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < per_factor[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
            if choice.iter().all(|&c| c == 0) {
                break;
            }
        }
    }
    Ok((blocks, regular_classes))
}

fn block_census(
    n: u32,
    q: u64,
    p: u64,
    unitary: bool,
    limits: &Limits,
) -> Result<VerificationReport> {
    let group = if unitary {
        LinearGroup::GU
    } else {
        LinearGroup::GL
    };
    let (blocks, regular_classes) = enumerate_gl_blocks(n, q, p, unitary, limits)?;
    let mut report = VerificationReport::default();
    let mut brauer_total = BigUint::zero();
    for b in &blocks {
        let cert = b.certificate();
        brauer_total += &b.count * cert.ell();
        let row = b.row(group, cert);
        if row.s_lower >= 1 && row.verdict != Verdict::Strict {
            return Err(Error::Invariant(format!(
                "{group}_{n}({q}) block not strict at p={p}"
            )));
        }
        report.rows.push(Row::Linear(row));
    }
    report.checks.push(CensusCheck::new(
        format!("{group}_{n}({q}) p={p}: Σ ℓ(B) = #p-regular classes"),
        brauer_total,
        regular_classes,
    ));
    Ok(report)
}

pub fn gl_block_census(n: u32, q: u64, p: u64, limits: &Limits) -> Result<VerificationReport> {
    block_census(n, q, p, false, limits)
}

pub fn gu_block_census(n: u32, q: u64, p: u64, limits: &Limits) -> Result<VerificationReport> {
    block_census(n, q, p, true, limits)
}

/// Certificate for the blocks of `SL_n(q)` / `SU_n(q)` covered by `b`.
pub fn sl_su_certificate(b: &GlBlock) -> BoundCertificate {
    let unitary = b.shape.unitary;
    let (q, p, n) = (b.q, b.p, b.n);
    let critical = if unitary {
        (q + 1) % p == 0
    } else {
        (q - 1) % p == 0
    };
    let sign = if unitary { "+" } else { "-" };
    if !critical {
        let mut cert = b.certificate();
        cert.trace.insert(
            0,
            format!("p∤(q{sign}1): |G̃:G| prime to p, defect groups of B and B̃ agree; certificate inherited"),
        );
        return cert;
    }
    let mut trace = vec![
        format!("p|(q{sign}1): d=1, each B_i is the principal block of G_i"),
        "G̃/G cyclic: s(B)>=s(B̃)-1 and ℓ(B)<=n ℓ(B̃)".to_string(),
    ];
    let mut ell = BigUint::one();
    let mut rank = 0u32;
    for &(f, m) in &b.shape.factors {
        if m == 2 && p == 2 {
            trace.push(format!("factor f={f} n_i=2, p=2: ℓ(B_i)=3 and |D_i|=8"));
            ell *= 3u32;
            rank += 2;
        } else {
            if m == 2 && p == 3 {
                trace.push(format!(
                    "factor f={f} n_i=2, p=3: Sylow p-subgroups of G_i cyclic"
                ));
            }
            ell *= partition_count(m);
            rank += m;
        }
    }
    trace.push(format!("ℓ(B̃)<={ell}, s(B̃)>={rank}"));
    let s_lower = rank.saturating_sub(1);
    let cert = BoundCertificate::upper(ell * n, s_lower, trace);
    let mut cert = cert;
    if cert.verdict(p) == Verdict::BoundOnly {
        cert.trace
            .push("certificate does not close: n ℓ(B̃) > p^(s(B̃)-1)".into());
    }
    cert
}

pub fn sl_su_verify(
    n: u32,
    q: u64,
    p: u64,
    unitary: bool,
    limits: &Limits,
) -> Result<VerificationReport> {
    let group = if unitary {
        LinearGroup::SU
    } else {
        LinearGroup::SL
    };
    let (blocks, _) = enumerate_gl_blocks(n, q, p, unitary, limits)?;
    let mut report = VerificationReport::default();
    for b in &blocks {
        report
            .rows
            .push(Row::Linear(b.row(group, sl_su_certificate(b))));
    }
    Ok(report)
}

/// `|GL_n(q)|` or `|GU_n(q)|` without the `q`-power, as the list of its
/// cyclotomic-type factors `q^i - ε^i`.
pub fn order_factors(n: u32, q: u64, unitary: bool) -> Vec<u64> {
    (1..=n)
        .map(|i| (level(q, i, unitary) - 1).unsigned_abs() as u64)
        .collect()
}

/// Primes dividing the group order other than the characteristic.
pub fn relevant_primes(n: u32, q: u64, unitary: bool) -> Vec<u64> {
    let mut ps: Vec<u64> = order_factors(n, q, unitary)
        .into_iter()
        .flat_map(prime_divisors)
        .filter(|p| !q.is_multiple_of(*p))
        .collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}
