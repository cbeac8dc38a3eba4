//! Counts p-regular conjugacy classes of small GL_n(q) and GU_n(q) by
//! listing every matrix, and compares with the shape enumeration.

use std::collections::HashMap;

use blockcensus_core::linear::{enumerate_gl_blocks, gl_block_census, gu_block_census, Limits};
use num_bigint::BigUint;

/// F_q for q = p or p^2, elements numbered 0..q.
struct Field {
    q: usize,
    add: Vec<Vec<u8>>,
    mul: Vec<Vec<u8>>,
    frob: Vec<u8>,
}

impl Field {
    fn new(p: usize, k: u32) -> Field {
        // a + bθ with θ^2 = c0 + c1 θ
        let (c0, c1) = match (p, k) {
            (_, 1) => (0, 0),
            (2, 2) => (1, 1),
            (3, 2) => (2, 0),
            _ => panic!("unsupported field"),
        };
        let q = p.pow(k);
        let split = |x: usize| (x % p, x / p);
        let join = |a: usize, b: usize| (a % p + p * (b % p)) as u8;
        let mut add = vec![vec![0u8; q]; q];
        let mut mul = vec![vec![0u8; q]; q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = split(x);
                let (c, d) = split(y);
                add[x][y] = join(a + c, b + d);
                // (a + bθ)(c + dθ) = ac + bd c0 + (ad + bc + bd c1) θ
                mul[x][y] = join(a * c + b * d * c0, a * d + b * c + b * d * c1);
            }
        }
        let mut field = Field {
            q,
            add,
            mul,
            frob: vec![0; q],
        };
        // x ↦ x^p generates the Galois group
        for x in 0..q {
            let mut y = 1u8;
            for _ in 0..p {
                y = field.mul[y as usize][x];
            }
            field.frob[x] = y;
        }
        field
    }
}

type Mat = Vec<u8>;

fn mat_mul(f: &Field, n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut c = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0u8;
            for k in 0..n {
                s = f.add[s as usize][f.mul[a[i * n + k] as usize][b[k * n + j] as usize] as usize];
            }
            c[i * n + j] = s;
        }
    }
    c
}

fn identity(n: usize) -> Mat {
    (0..n * n).map(|i| u8::from(i % (n + 1) == 0)).collect()
}

fn all_matrices(q: usize, n: usize) -> impl Iterator<Item = Mat> {
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut idx| {
        let mut m = vec![0u8; n * n];
        for e in m.iter_mut() {
            *e = (idx % q) as u8;
            idx /= q;
        }
        m
    })
}

/// GL_n(F) as the matrices with a two-sided inverse among all matrices,
/// optionally restricted to those preserving the standard Hermitian form.
fn group(f: &Field, n: usize, unitary: bool) -> Vec<Mat> {
    let id = identity(n);
    let candidates: Vec<Mat> = all_matrices(f.q, n)
        .filter(|m| {
            if !unitary {
                return true;
            }
            // conj(m)^T m = I, conj is x ↦ x^{sqrt q}
            let ct: Mat = (0..n * n)
                .map(|i| f.frob[m[(i % n) * n + i / n] as usize])
                .collect();
            mat_mul(f, n, &ct, m) == id
        })
        .collect();
    if unitary {
        return candidates;
    }
    candidates
        .into_iter()
        .filter(|m| det_nonzero(f, n, m))
        .collect()
}

fn det_nonzero(f: &Field, n: usize, m: &Mat) -> bool {
    // Gaussian elimination over the field.
    let inv = |x: u8| {
        (1..f.q as u8)
            .find(|&y| f.mul[x as usize][y as usize] == 1)
            .unwrap()
    };
    let neg = |x: u8| {
        (0..f.q as u8)
            .find(|&y| f.add[x as usize][y as usize] == 0)
            .unwrap()
    };
    let mut a = m.clone();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return false;
        };
        for k in 0..n {
            a.swap(col * n + k, piv * n + k);
        }
        let pinv = inv(a[col * n + col]);
        for r in col + 1..n {
            let factor = neg(f.mul[a[r * n + col] as usize][pinv as usize]);
            for k in 0..n {
                let sub = f.mul[factor as usize][a[col * n + k] as usize];
                a[r * n + k] = f.add[a[r * n + k] as usize][sub as usize];
            }
        }
    }
    true
}

fn order(f: &Field, n: usize, g: &Mat) -> u64 {
    let id = identity(n);
    let mut x = g.clone();
    let mut k = 1;
    while x != id {
        x = mat_mul(f, n, &x, g);
        k += 1;
    }
    k
}

fn regular_classes(f: &Field, n: usize, unitary: bool, p: u64) -> u64 {
    let g = group(f, n, unitary);
    let index: HashMap<&Mat, usize> = g.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let id = identity(n);
    let inverse: Vec<usize> = g
        .iter()
        .map(|a| g.iter().position(|b| mat_mul(f, n, a, b) == id).unwrap())
        .collect();
    let mut seen = vec![false; g.len()];
    let mut count = 0;
    for i in 0..g.len() {
        if seen[i] {
            continue;
        }
        for (h, &hi) in g.iter().zip(&inverse) {
            let c = mat_mul(f, n, &mat_mul(f, n, h, &g[i]), &g[hi]);
            seen[index[&c]] = true;
        }
        if !order(f, n, &g[i]).is_multiple_of(p) {
            count += 1;
        }
    }
    count
}

fn shapes(n: u32, q: u64, p: u64, unitary: bool) -> u64 {
    let (_, classes) = enumerate_gl_blocks(n, q, p, unitary, &Limits::default()).unwrap();
    classes.try_into().unwrap()
}

#[test]
fn general_linear_matches_matrices() {
    for (n, q, k, char_p, primes) in [
        (2usize, 2u64, 1u32, 2usize, vec![3u64]),
        (2, 3, 1, 3, vec![2]),
        (3, 2, 1, 2, vec![3, 7]),
        (2, 5, 1, 5, vec![2, 3]),
        (2, 4, 2, 2, vec![3, 5]),
    ] {
        let f = Field::new(char_p, k);
        for p in primes {
            assert_eq!(
                regular_classes(&f, n, false, p),
                shapes(n as u32, q, p, false),
                "GL_{n}({q}) p={p}"
            );
        }
    }
}

#[test]
fn unitary_matches_matrices() {
    // GU_n(q) lives over F_{q^2}.
    for (n, q, char_p, primes) in [
        (2usize, 2u64, 2usize, vec![3u64]),
        (2, 3, 3, vec![2]),
        (3, 2, 2, vec![3]),
    ] {
        let f = Field::new(char_p, 2);
        for p in primes {
            assert_eq!(
                regular_classes(&f, n, true, p),
                shapes(n as u32, q, p, true),
                "GU_{n}({q}) p={p}"
            );
        }
    }
}

#[test]
fn census_identity_holds_on_the_oracle_groups() {
    for (n, q, p) in [(2, 3, 2), (3, 2, 7), (2, 4, 5)] {
        let r = gl_block_census(n, q, p, &Limits::default()).unwrap();
        assert!(r.is_clean());
    }
    let r = gu_block_census(3, 2, 3, &Limits::default()).unwrap();
    assert!(r.is_clean());
    assert_eq!(
        r.checks[0].rhs,
        BigUint::from(regular_classes(&Field::new(2, 2), 3, true, 3))
    );
}
