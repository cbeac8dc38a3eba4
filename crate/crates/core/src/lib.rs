//! Exact block-invariant censuses for finite groups.
//!
//! Each verifier returns a [`VerificationReport`]: one row per block (or
//! table entry) carrying an upper bound for the number of simple modules
//! `ℓ(B)`, a lower bound for the sectional `p`-rank `s(B)`, and a verdict on
//! `ℓ(B) <= p^{s(B)}`, together with census identities that tie the rows to
//! independently computed totals.

pub mod arith;
pub mod bounds;
pub mod classes;
pub mod classical;
pub mod error;
pub mod linear;
pub mod multipartition;
pub mod partition;
pub mod report;
pub mod symbol;
pub mod symmetric;
pub mod tables;

pub use error::{Error, Result};
pub use multipartition::{count_multipartitions, partition_count, BigCount};
pub use partition::Partition;
pub use report::{BoundCertificate, CensusCheck, EllKind, Row, Verdict, VerificationReport};
pub use symbol::{ClassicalType, Symbol};
