use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{frac, rat, Rational};

/// Integer points of `Z^n` with `Σ|v_i| ≤ max_norm`, by increasing norm.
/// Within one norm the order is lexicographic in the per-coordinate
/// sequence `0, 1, -1, 2, -2, …`, so `(0, 1)` precedes `(0, -1)` and `(1, 0)`.
pub fn grid_points(n: usize, max_norm: u32) -> impl Iterator<Item = Vec<Rational>> {
    (0..=max_norm).flat_map(move |s| {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fill(n, s as i64, &mut cur, &mut out);
        out.into_iter().map(|v| v.into_iter().map(rat).collect::<Vec<_>>())
    })
}

fn fill(n: usize, rest: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == n {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if cur.len() + 1 == n {
        for v in signed(rest) {
            cur.push(v);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    for a in 0..=rest {
        for v in signed(a) {
            cur.push(v);
            fill(n, rest - a, cur, out);
            cur.pop();
        }
    }
}

fn signed(a: i64) -> Vec<i64> {
    if a == 0 {
        vec![0]
    } else {
        vec![a, -a]
    }
}

/// Seeded random points of `Q^n` with small numerators and denominators.
/// A third of the coordinates are zero, so coordinate subspaces get hit.
pub fn random_rational_points(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_ratio(1, 3) { rat(0) } else { frac(rng.gen_range(-6..=6), rng.gen_range(1..=3)) })
                .collect()
        })
        .collect()
}
