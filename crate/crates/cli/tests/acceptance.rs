//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use blockcensus_core::bounds::{count_irr_g2d2w, olsson_sweep, wreath_block_upper, wreath_sweep};
use blockcensus_core::classes::{
    closed_form_bound, count_classes_exact, count_classes_upper, ClassType,
};
use blockcensus_core::linear::{gl_block_census, gu_block_census, relevant_primes, Limits};
use blockcensus_core::partition_count;
use blockcensus_core::symbol::{
    enumerate_unipotent_symbols, symbol_core_weight, ClassicalType, Removal,
};
use blockcensus_core::symmetric::{alt_invariants, enumerate_blocks_sym, verify_sym_census};
use blockcensus_core::tables::{s_effective, table_rows, verify_tables, Section};
use blockcensus_core::{count_multipartitions, Row, Verdict};
use num_bigint::BigUint;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn olsson() -> Outcome {
    let start = Instant::now();
    for row in olsson_sweep(12, 40).rows {
        let Row::Olsson(o) = row else { unreachable!() };
        let exception = o.s == 2 && (2..=6).contains(&o.t);
        if o.s >= 2 {
            ensure(o.check.weak_holds != exception, || {
                format!("weak bound at s={} t={}", o.s, o.t)
            })?;
        }
        ensure(o.check.strict_holds, || {
            format!("strict bound fails at s={} t={}", o.s, o.t)
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn symmetric_census() -> Outcome {
    let start = Instant::now();
    for p in [2u32, 3, 5, 7, 11] {
        for n in 1..=40 {
            let r = verify_sym_census(n, p).map_err(|e| e.to_string())?;
            ensure(
                r.checks.len() == 2 && r.checks.iter().all(|c| c.holds),
                || format!("census n={n} p={p}"),
            )?;
            for row in &r.rows {
                let Row::Sym(s) = row else { unreachable!() };
                if s.weight > 0 {
                    ensure(s.verdict == Verdict::Strict, || {
                        format!("n={n} p={p} w={} not strict", s.weight)
                    })?;
                }
            }
        }
    }
    within(start, Duration::from_secs(60))
}

fn alternating_anchors() -> Outcome {
    let cert = |n: u32, w: u32| {
        let b = enumerate_blocks_sym(n, 2)
            .unwrap()
            .into_iter()
            .find(|b| b.weight == w)
            .unwrap();
        alt_invariants(&b).unwrap()
    };
    let w2 = cert(4, 2);
    ensure(w2.ell().clone() == big(3) && w2.s_lower == 2, || {
        format!("w=2: ℓ={} s={}", w2.ell(), w2.s_lower)
    })?;
    for n in [6, 7] {
        let w3 = cert(n, 3);
        ensure(w3.ell().clone() == big(3) && w3.s_lower >= 2, || {
            format!("w=3: ℓ={} s={}", w3.ell(), w3.s_lower)
        })?;
    }
    Ok(())
}

fn wreath() -> Outcome {
    let v = wreath_block_upper(&big(1), 3).map_err(|e| e.to_string())?;
    ensure(v == big(3), || format!("ℓ=1, q=3 gives {v}"))?;
    let r = wreath_sweep(&[2], 3).map_err(|e| e.to_string())?;
    let edge = r
        .rows
        .iter()
        .find_map(|row| match row {
            Row::Wreath(w) if w.ell == 3 && w.q == 2 => Some(w.verdict),
            _ => None,
        })
        .ok_or("missing ℓ=3, q=2 row")?;
    ensure(edge == Verdict::Equal, || {
        format!("ℓ=3, q=2 verdict {edge:?}")
    })
}

/// Coefficients of `P(x)^s` up to `x^t` by repeated convolution.
fn tuple_counts(s: u32, t: u32) -> Vec<BigUint> {
    let p: Vec<BigUint> = (0..=t).map(partition_count).collect();
    let mut acc: Vec<BigUint> = (0..=t).map(|i| big(u64::from(i == 0))).collect();
    for _ in 0..s {
        acc = (0..=t as usize)
            .map(|n| (0..=n).map(|j| &acc[j] * &p[n - j]).sum())
            .collect();
    }
    acc
}

fn reflection_groups() -> Outcome {
    let start = Instant::now();
    for d in 1..=8u32 {
        let all = tuple_counts(2 * d, 20);
        let half = tuple_counts(d, 10);
        for w in 1..=20u32 {
            // Tuples fixed by the rotation by d slots repeat a d-tuple twice.
            let fixed = if w % 2 == 0 {
                half[(w / 2) as usize].clone()
            } else {
                big(0)
            };
            let orbits = (&all[w as usize] - &fixed) / 2u32 + fixed * 2u32;
            let formula = count_irr_g2d2w(d, w);
            ensure(formula == orbits, || {
                format!("d={d} w={w}: {formula} vs {orbits}")
            })?;
        }
    }
    ensure(count_irr_g2d2w(1, 2) == big(4), || "d=1, w=2".into())?;
    ensure(count_irr_g2d2w(1, 3) == big(5), || "d=1, w=3".into())?;
    within(start, Duration::from_secs(5))
}

fn symbol_blocks() -> Outcome {
    let start = Instant::now();
    for ty in [ClassicalType::B, ClassicalType::C] {
        for n in 1..=8 {
            let symbols = enumerate_unipotent_symbols(ty, n);
            for kind in [
                Removal::Hook(1),
                Removal::Hook(3),
                Removal::Cohook(1),
                Removal::Cohook(2),
            ] {
                let mut blocks = std::collections::BTreeMap::new();
                for s in &symbols {
                    let (core, w) = symbol_core_weight(&s.symbol, kind);
                    *blocks.entry((core, w)).or_insert(0u64) += u64::from(s.multiplicity);
                }
                for ((core, w), size) in blocks {
                    let expected = count_multipartitions(2 * kind.length(), w);
                    ensure(big(size) == expected, || {
                        format!("{ty}_{n} {kind} core {core}: {size} vs {expected}")
                    })?;
                }
            }
        }
    }
    let total = |ty, n| {
        enumerate_unipotent_symbols(ty, n)
            .iter()
            .map(|s| s.multiplicity)
            .sum::<u32>()
    };
    ensure(total(ClassicalType::B, 2) == 6, || "B_2 total".into())?;
    ensure(total(ClassicalType::D, 4) == 14, || "D_4 total".into())?;
    within(start, Duration::from_secs(60))
}

fn unipotent_classes() -> Outcome {
    let start = Instant::now();
    for (ty, n, v) in [
        (ClassType::C, 2, 5),
        (ClassType::B, 3, 10),
        (ClassType::B, 4, 21),
        (ClassType::D, 4, 13),
        (ClassType::D, 5, 18),
        (ClassType::D, 6, 37),
    ] {
        let got = count_classes_exact(ty, n);
        ensure(got == big(v), || format!("{ty}_{n}: {got}, expected {v}"))?;
    }
    for ty in [ClassType::B, ClassType::C, ClassType::D] {
        for n in 1..=30 {
            let upper = count_classes_upper(ty, n);
            let closed = closed_form_bound(ty, n);
            ensure(upper <= closed, || format!("{ty}_{n}: {upper} > {closed}"))?;
        }
    }
    within(start, Duration::from_secs(30))
}

fn linear_census() -> Outcome {
    let start = Instant::now();
    let limits = Limits::default();
    for unitary in [false, true] {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=5 {
                for p in relevant_primes(n, q, unitary) {
                    let r = if unitary {
                        gu_block_census(n, q, p, &limits)
                    } else {
                        gl_block_census(n, q, p, &limits)
                    }
                    .map_err(|e| e.to_string())?;
                    ensure(r.checks.iter().all(|c| c.holds), || {
                        format!("census n={n} q={q} p={p} unitary={unitary}")
                    })?;
                    for row in &r.rows {
                        let Row::Linear(l) = row else { unreachable!() };
                        ensure(l.ell <= l.p_pow_s, || format!("ℓ > p^s in {row:?}"))?;
                        if l.s_lower >= 1 {
                            ensure(l.verdict == Verdict::Strict, || {
                                format!("not strict: {row:?}")
                            })?;
                        }
                    }
                }
            }
        }
    }
    let r = gl_block_census(2, 3, 2, &limits).map_err(|e| e.to_string())?;
    ensure(r.checks[0].lhs == big(2), || {
        format!("GL_2(3), p=2 total {}", r.checks[0].lhs)
    })?;
    within(start, Duration::from_secs(120))
}

fn exceptional_tables() -> Outcome {
    let start = Instant::now();
    let rows = table_rows().map_err(|e| e.to_string())?;
    let report = verify_tables().map_err(|e| e.to_string())?;
    ensure(rows.len() == report.rows.len(), || "row count".into())?;
    for (row, out) in rows.iter().zip(&report.rows) {
        let Row::Table(t) = out else { unreachable!() };
        match row.section {
            Section::GoodPrime => ensure(t.verdict == Verdict::Strict, || {
                format!("{} d={}", row.group, row.param)
            })?,
            Section::BadPrime => {
                ensure(t.s_effective == s_effective(row), || "s_effective".into())?;
                ensure(t.verdict != Verdict::Violation, || {
                    format!("{} p={}", row.group, row.param)
                })?;
            }
            Section::SmallRank => ensure(t.verdict == Verdict::Strict, || {
                format!("{} p={}", row.group, row.param)
            })?,
            Section::Equality => ensure(t.verdict == Verdict::Equal, || {
                format!("{} registry", row.group)
            })?,
        }
        if row.group == "F4" && row.section == Section::BadPrime && row.param == 2 {
            ensure(t.s_effective == 8, || "F4 at p=2 must use 8".into())?;
        }
    }
    within(start, Duration::from_secs(1))
}

fn determinism() -> Outcome {
    let run = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_verify"))
            .args(["all", "--jobs", jobs])
            .output()
            .expect("run verify")
    };
    let one = run("1");
    let many = run("4");
    ensure(one.status.success() && many.status.success(), || {
        format!(
            "exit codes {:?} {:?}",
            one.status.code(),
            many.status.code()
        )
    })?;
    ensure(!one.stdout.is_empty() && one.stdout == many.stdout, || {
        "outputs differ".into()
    })
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("multipartition bounds sweep", olsson),
        ("symmetric group census", symmetric_census),
        ("alternating p=2 anchors", alternating_anchors),
        ("wreath formula", wreath),
        ("G(2d,2,w) closed formula", reflection_groups),
        ("symbol block sizes", symbol_blocks),
        ("unipotent class counts", unipotent_classes),
        ("GL/GU census", linear_census),
        ("exceptional tables", exceptional_tables),
        ("determinism across worker counts", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
