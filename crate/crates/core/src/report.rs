//! Certificates, verdicts and the report container every verifier returns.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

use crate::bounds::OlssonCheck;
use crate::classes::ClassCountRow;
use crate::classical::ClassicalRow;
use crate::linear::LinearRow;
use crate::symmetric::SymRow;
use crate::tables::TableVerdictRow;

/// Serializes a big integer as a decimal JSON string.
pub fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

pub fn decimal_opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => decimal(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// `ℓ < p^s` certified.
    Strict,
    /// `ℓ = p^s`.
    Equal,
    /// An exact `ℓ` exceeds `p^s`.
    Violation,
    /// Only an upper bound is known and it does not settle the inequality.
    BoundOnly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Strict => "strict",
            Verdict::Equal => "equal",
            Verdict::Violation => "violation",
            Verdict::BoundOnly => "bound-only",
        }
    }

    /// Compares a value of `ℓ` against `p^s`.
    pub fn classify(ell: &BigUint, p_pow_s: &BigUint, exact: bool) -> Verdict {
        match ell.cmp(p_pow_s) {
            std::cmp::Ordering::Less => Verdict::Strict,
            std::cmp::Ordering::Equal => Verdict::Equal,
            std::cmp::Ordering::Greater if exact => Verdict::Violation,
            std::cmp::Ordering::Greater => Verdict::BoundOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EllKind {
    Exact,
    Upper,
}

/// Upper bound on `ℓ(B)` and lower bound on `s(B)` with the rules used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    #[serde(serialize_with = "decimal")]
    pub ell_upper: BigUint,
    #[serde(serialize_with = "decimal_opt")]
    pub ell_exact: Option<BigUint>,
    pub s_lower: u32,
    pub trace: Vec<String>,
}

impl BoundCertificate {
    pub fn exact(ell: BigUint, s_lower: u32, trace: Vec<String>) -> Self {
        BoundCertificate {
            ell_upper: ell.clone(),
            ell_exact: Some(ell),
            s_lower,
            trace,
        }
    }

    pub fn upper(ell_upper: BigUint, s_lower: u32, trace: Vec<String>) -> Self {
        BoundCertificate {
            ell_upper,
            ell_exact: None,
            s_lower,
            trace,
        }
    }

    /// The exact value when known, else the upper bound.
    pub fn ell(&self) -> &BigUint {
        self.ell_exact.as_ref().unwrap_or(&self.ell_upper)
    }

    pub fn ell_kind(&self) -> EllKind {
        if self.ell_exact.is_some() {
            EllKind::Exact
        } else {
            EllKind::Upper
        }
    }

    pub fn p_pow_s(&self, p: u64) -> BigUint {
        BigUint::from(p).pow(self.s_lower)
    }

    pub fn verdict(&self, p: u64) -> Verdict {
        Verdict::classify(self.ell(), &self.p_pow_s(p), self.ell_exact.is_some())
    }

    pub fn is_defect_zero(&self) -> bool {
        self.s_lower == 0 && self.ell().is_one()
    }
}

/// An exact identity between two independently computed totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCheck {
    pub name: String,
    #[serde(serialize_with = "decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

impl CensusCheck {
    pub fn new(name: impl Into<String>, lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs == rhs;
        CensusCheck {
            name: name.into(),
            lhs,
            rhs,
            holds,
        }
    }
}

/// Row from the multipartition sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OlssonRow {
    pub section: &'static str,
    pub s: u32,
    pub t: u32,
    #[serde(flatten)]
    pub check: OlssonCheck,
    /// Set to `"weak-exception"` where `k(s,t) > s^t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<&'static str>,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// Row from the wreath-product sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathRow {
    pub section: &'static str,
    pub ell: u32,
    pub q: u32,
    #[serde(serialize_with = "decimal")]
    pub upper: BigUint,
    #[serde(serialize_with = "decimal")]
    pub ell_pow_q: BigUint,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

/// Row from the `G(2d,2,w)` sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionRow {
    pub section: &'static str,
    pub d: u32,
    pub w: u32,
    #[serde(serialize_with = "decimal")]
    pub irr: BigUint,
    #[serde(serialize_with = "decimal")]
    pub bound: BigUint,
    pub verdict: Verdict,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Row {
    Sym(SymRow),
    Classical(ClassicalRow),
    Linear(LinearRow),
    Classes(ClassCountRow),
    Table(TableVerdictRow),
    Olsson(OlssonRow),
    Wreath(WreathRow),
    Reflection(ReflectionRow),
}

impl Row {
    pub fn verdict(&self) -> Verdict {
        match self {
            Row::Sym(r) => r.verdict,
            Row::Classical(r) => r.verdict,
            Row::Linear(r) => r.verdict,
            Row::Classes(r) => r.verdict,
            Row::Table(r) => r.verdict,
            Row::Olsson(r) => r.verdict,
            Row::Wreath(r) => r.verdict,
            Row::Reflection(r) => r.verdict,
        }
    }

    pub fn trace(&self) -> &[String] {
        match self {
            Row::Sym(r) => &r.trace,
            Row::Classical(r) => &r.trace,
            Row::Linear(r) => &r.trace,
            Row::Classes(r) => &r.trace,
            Row::Table(r) => &r.trace,
            Row::Olsson(r) => &r.trace,
            Row::Wreath(r) => &r.trace,
            Row::Reflection(r) => &r.trace,
        }
    }

    /// Rows that the equality registry marks as known equality cases never
    /// count as violations, whatever their verdict field says.
    pub fn is_violation(&self) -> bool {
        self.verdict() == Verdict::Violation
    }
}

/// Per-block rows plus census identities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub rows: Vec<Row>,
    pub checks: Vec<CensusCheck>,
}

impl VerificationReport {
    pub fn extend(&mut self, other: VerificationReport) {
        self.rows.extend(other.rows);
        self.checks.extend(other.checks);
    }

    pub fn violations(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.is_violation())
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CensusCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none() && self.failed_checks().next().is_none()
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict() == verdict).count()
    }
}
