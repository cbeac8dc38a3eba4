//! Standalone inequalities: the multipartition bound, the wreath-product
//! block bound and the character count of `G(2d, 2, w)`.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::multipartition::{count_multipartitions, multipartition_row, BigCount};
use crate::report::{OlssonRow, ReflectionRow, Row, Verdict, VerificationReport, WreathRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OlssonCheck {
    #[serde(serialize_with = "crate::report::decimal")]
    pub k: BigCount,
    /// `k(s,t) <= s^t`
    pub weak_holds: bool,
    /// `k(s,t) < (s+1)^t`
    pub strict_holds: bool,
}

pub fn olsson_check(s: u32, t: u32) -> OlssonCheck {
    assert!(s >= 1 && t >= 1, "s and t must be positive");
    let k = count_multipartitions(s, t);
    let weak_holds = k <= BigUint::from(s).pow(t);
    let strict_holds = k < BigUint::from(s + 1).pow(t);
    OlssonCheck {
        k,
        weak_holds,
        strict_holds,
    }
}

/// `(ℓ^q − ℓ)/q + qℓ`: simple modules of a block of `G ≀ C_q` covering
/// `b ⊗ ... ⊗ b` when `b` has `ℓ` simple modules.
pub fn wreath_block_upper(ell: &BigUint, q: u32) -> Result<BigCount> {
    let num = ell.pow(q) - ell;
    if !(&num % q).is_zero() || !is_prime(u64::from(q)) {
        return Err(Error::NotPrime(u64::from(q)));
    }
    Ok(num / q + ell * q)
}

/// `|Irr(G(2d, 2, w))|` from the restriction of characters of `C_{2d} ≀ S_w`.
///
/// Tuples without the order-two symmetry restrict irreducibly and pair up;
/// the `k(d, w/2)` symmetric ones (even `w` only) each split in two.
pub fn count_irr_g2d2w(d: u32, w: u32) -> BigCount {
    assert!(d >= 1 && w >= 1, "d and w must be positive");
    let full = count_multipartitions(2 * d, w);
    if w % 2 == 1 {
        assert!((&full % 2u32).is_zero(), "k(2d, w) odd for odd w");
        return full / 2u32;
    }
    let fixed = count_multipartitions(d, w / 2);
    let twice = full + fixed * 3u32;
    assert!((&twice % 2u32).is_zero(), "G(2d,2,w) count not integral");
    twice / 2u32
}

/// `k(s,t)` against `s^t` and `(s+1)^t` for `1 <= s <= s_max`, `1 <= t <= t_max`.
///
/// The verdict tracks the strict bound. Rows where only the weak bound fails
/// carry the `weak-exception` flag.
pub fn olsson_sweep(s_max: u32, t_max: u32) -> VerificationReport {
    let mut report = VerificationReport::default();
    for s in 1..=s_max {
        let row = multipartition_row(s, t_max);
        for t in 1..=t_max {
            let k = row[t as usize].clone();
            let weak_holds = k <= BigUint::from(s).pow(t);
            let strict_holds = k < BigUint::from(s + 1).pow(t);
            let flag = (s >= 2 && !weak_holds).then_some("weak-exception");
            let verdict = if strict_holds {
                Verdict::Strict
            } else {
                Verdict::Violation
            };
            let trace = vec![
                format!("k({s},{t})={k}"),
                format!("compared with {s}^{t} and {}^{t}", s + 1),
            ];
            report.rows.push(Row::Olsson(OlssonRow {
                section: "olsson",
                s,
                t,
                check: OlssonCheck {
                    k,
                    weak_holds,
                    strict_holds,
                },
                flag,
                verdict,
                trace,
            }));
        }
    }
    report
}

/// The wreath bound against `ℓ^q`. For `ℓ <= 2` the bound is not claimed
/// to beat `ℓ^q`, so such rows are `bound-only`.
pub fn wreath_sweep(primes: &[u32], ell_max: u32) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for &q in primes {
        for l in 1..=ell_max {
            let ell = BigUint::from(l);
            let upper = wreath_block_upper(&ell, q)?;
            let ell_pow_q = ell.pow(q);
            let mut trace = vec![format!("({l}^{q}-{l})/{q}+{q}*{l}={upper}")];
            let verdict = if l <= 2 {
                trace.push("ℓ<=2: settled by the case analysis, not by this bound".into());
                Verdict::classify(&upper, &ell_pow_q, false)
            } else {
                Verdict::classify(&upper, &ell_pow_q, true)
            };
            report.rows.push(Row::Wreath(WreathRow {
                section: "wreath",
                ell: l,
                q,
                upper,
                ell_pow_q,
                verdict,
                trace,
            }));
        }
    }
    Ok(report)
}

/// `|Irr G(2d,2,w)|` against `(2d+1)^w`.
pub fn reflection_sweep(d_max: u32, w_max: u32) -> VerificationReport {
    let mut report = VerificationReport::default();
    for d in 1..=d_max {
        for w in 1..=w_max {
            let irr = count_irr_g2d2w(d, w);
            let bound = BigUint::from(2 * d + 1).pow(w);
            let verdict = Verdict::classify(&irr, &bound, true);
            let rule = if w % 2 == 1 {
                format!("w odd: k({},{w})/2", 2 * d)
            } else {
                format!("w even: (k({},{w})+3k({d},{}))/2", 2 * d, w / 2)
            };
            report.rows.push(Row::Reflection(ReflectionRow {
                section: "reflection",
                d,
                w,
                irr,
                bound,
                verdict,
                trace: vec![rule],
            }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;

    #[test]
    fn olsson_examples() {
        let c = olsson_check(2, 6);
        assert_eq!(c.k, BigUint::from(65u32));
        assert!(!c.weak_holds && c.strict_holds);
        assert!(olsson_check(2, 7).weak_holds);
        assert!(olsson_check(3, 3).weak_holds);
    }

    #[test]
    fn wreath_examples() {
        let w = |l: u32, q: u32| wreath_block_upper(&BigUint::from(l), q).unwrap();
        assert_eq!(w(1, 3), BigUint::from(3u32));
        assert_eq!(w(2, 3), BigUint::from(8u32));
        assert_eq!(w(3, 2), BigUint::from(9u32));
        assert!(wreath_block_upper(&BigUint::from(2u32), 4).is_err());
    }

    #[test]
    fn wreath_below_power() {
        for q in [2u32, 3, 5, 7] {
            for l in 1..=50u32 {
                let ell = BigUint::from(l);
                let v = wreath_block_upper(&ell, q).unwrap();
                if l > 3 || (l == 3 && q >= 3) {
                    assert!(v < ell.pow(q), "l={l} q={q}");
                }
            }
        }
    }

    /// Irreducible characters of G(2d,2,w) by explicit orbit counting on
    /// 2d-tuples of partitions under the half-turn of the tuple.
    fn orbit_oracle(d: usize, w: u32) -> u64 {
        let mut tuples: Vec<Vec<Vec<u32>>> = vec![vec![]];
        for _ in 0..2 * d {
            let mut next = Vec::new();
            for t in &tuples {
                let used: u32 = t.iter().map(|p| p.iter().sum::<u32>()).sum();
                for m in 0..=w - used {
                    for p in partitions_of(m) {
                        let mut t2 = t.clone();
                        t2.push(p.parts().to_vec());
                        next.push(t2);
                    }
                }
            }
            tuples = next;
        }
        let full: Vec<_> = tuples
            .into_iter()
            .filter(|t| t.iter().map(|p| p.iter().sum::<u32>()).sum::<u32>() == w)
            .collect();
        let fixed = full.iter().filter(|t| t[..d] == t[d..]).count() as u64;
        (full.len() as u64 - fixed) / 2 + 2 * fixed
    }

    #[test]
    fn olsson_sweep_exceptions() {
        let r = olsson_sweep(12, 40);
        assert!(r.is_clean());
        let flagged: Vec<(u32, u32)> = r
            .rows
            .iter()
            .filter_map(|row| match row {
                Row::Olsson(o) if o.flag.is_some() => Some((o.s, o.t)),
                _ => None,
            })
            .collect();
        assert_eq!(flagged, (2..=6).map(|t| (2, t)).collect::<Vec<_>>());
    }

    #[test]
    fn wreath_sweep_verdicts() {
        let r = wreath_sweep(&[2, 3, 5, 7], 50).unwrap();
        assert!(r.is_clean());
        // ℓ=3,q=2 and ℓ=2,q=3
        assert_eq!(r.count(Verdict::Equal), 2);
        assert!(wreath_sweep(&[4], 3).is_err());
    }

    #[test]
    fn g2d2w_examples() {
        assert_eq!(count_irr_g2d2w(1, 2), BigUint::from(4u32));
        assert_eq!(count_irr_g2d2w(1, 3), BigUint::from(5u32));
        assert_eq!(count_irr_g2d2w(2, 1), BigUint::from(2u32));
    }

    #[test]
    fn g2d2w_matches_explicit_orbits() {
        for (d, wmax) in [(1usize, 7u32), (2, 4), (3, 3)] {
            for w in 1..=wmax {
                assert_eq!(
                    count_irr_g2d2w(d as u32, w),
                    BigUint::from(orbit_oracle(d, w)),
                    "d={d} w={w}"
                );
            }
        }
    }

    #[test]
    fn g2d2w_below_bound() {
        for d in 1..=8u32 {
            for w in 1..=20u32 {
                assert!(count_irr_g2d2w(d, w) < BigUint::from(2 * d + 1).pow(w));
            }
        }
    }
}
