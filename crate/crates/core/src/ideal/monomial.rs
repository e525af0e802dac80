//! Squarefree monomial ideals as hypergraphs: minimal primes are minimal
//! vertex covers (transversals) of the generator supports.

use super::{Ideal, IdealError};
use crate::scalar::Field;

/// Size of a smallest set of vertices meeting every edge. Edges are bitmasks.
/// Returns `usize::MAX` when some edge is empty.
pub fn min_transversal_size(edges: &[u64]) -> usize {
    if edges.contains(&0) {
        return usize::MAX;
    }
    // drop edges containing another edge; they are hit automatically
    let mut minimal: Vec<u64> = Vec::new();
    let mut sorted = edges.to_vec();
    sorted.sort_by_key(|e| e.count_ones());
    sorted.dedup();
    for e in sorted {
        if !minimal.iter().any(|&f| f & e == f) {
            minimal.push(e);
        }
    }
    let mut best = minimal.iter().fold(0u64, |acc, e| acc | e).count_ones() as usize;
    branch(&minimal, 0, 0, &mut best);
    best
}

fn branch(edges: &[u64], chosen: u64, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    match edges.iter().find(|&&e| e & chosen == 0) {
        None => *best = size,
        Some(&e) => {
            let mut bits = e;
            while bits != 0 {
                let v = bits & bits.wrapping_neg();
                bits &= bits - 1;
                branch(edges, chosen | v, size + 1, best);
            }
        }
    }
}

/// All inclusion-minimal transversals (Berge's algorithm), sorted.
pub fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut current: Vec<u64> = vec![0];
    for &e in edges {
        let mut next: Vec<u64> = Vec::new();
        for &t in &current {
            if t & e != 0 {
                next.push(t);
            } else {
                let mut bits = e;
                while bits != 0 {
                    let v = bits & bits.wrapping_neg();
                    bits &= bits - 1;
                    next.push(t | v);
                }
            }
        }
        next.sort_by_key(|t| (t.count_ones(), *t));
        next.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(next.len());
        for t in next {
            if !kept.iter().any(|&k| k & t == k) {
                kept.push(t);
            }
        }
        current = kept;
    }
    current.sort_by_key(|t| (t.count_ones(), *t));
    current
}

/// Minimal primes of a squarefree monomial ideal, each given as the sorted
/// list of variable indices generating it.
pub fn monomial_minimal_primes<F: Field>(ideal: &Ideal<F>) -> Result<Vec<Vec<usize>>, IdealError> {
    let mut edges = Vec::with_capacity(ideal.gens().len());
    for (index, g) in ideal.gens().iter().enumerate() {
        let [(m, _)] = g.terms() else {
            return Err(IdealError::NotMonomial { index });
        };
        if !m.is_squarefree() {
            return Err(IdealError::NotSquarefree { index });
        }
        assert!(m.nvars() <= 64, "monomial ideals support at most 64 variables");
        edges.push(m.support_mask());
    }
    let mut primes: Vec<Vec<usize>> = minimal_transversals(&edges)
        .into_iter()
        .map(|t| (0..64).filter(|i| t >> i & 1 == 1).collect())
        .collect();
    primes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(primes)
}
