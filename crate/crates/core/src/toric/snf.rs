//! Smith and Hermite normal forms over any signed integer type.

use num_integer::Integer;
use num_traits::Signed;

pub type IntMatrix<T> = Vec<Vec<T>>;

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub diagonal: Vec<T>,
    pub d: IntMatrix<T>,
    pub u: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

impl<T: Integer + Signed + Clone> SnfResult<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|x| !x.is_zero()).count()
    }
}

pub fn identity<T: Integer + Clone>(n: usize) -> IntMatrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

pub fn mat_mul<T: Integer + Clone>(a: &IntMatrix<T>, b: &IntMatrix<T>) -> IntMatrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free elimination (Bareiss).
pub fn determinant<T: Integer + Signed + Clone>(a: &IntMatrix<T>) -> T {
    let n = a.len();
    let mut m = a.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j].clone() * m[k][k].clone() - m[i][k].clone() * m[k][j].clone()) / prev.clone();
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return T::one();
    }
    sign * m[n - 1][n - 1].clone()
}

pub fn smith_normal_form<T: Integer + Signed + Clone>(a: &IntMatrix<T>) -> SnfResult<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut d = a.clone();
    let mut u = identity::<T>(rows);
    let mut v = identity::<T>(cols);

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero() && pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(d, u, v);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[i][t].clone() / d[t][t].clone();
                if !q.is_zero() {
                    add_row(&mut d, i, t, &-q.clone());
                    add_row(&mut u, i, t, &-q);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = d[t][j].clone() / d[t][t].clone();
                if !q.is_zero() {
                    add_col(&mut d, j, t, &-q.clone());
                    add_col(&mut v, j, t, &-q);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, &T::one());
                    add_row(&mut u, t, i, &T::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish(d, u, v)
}

fn finish<T: Integer + Signed + Clone>(d: IntMatrix<T>, u: IntMatrix<T>, v: IntMatrix<T>) -> SnfResult<T> {
    let k = d.len().min(d.first().map_or(0, |r| r.len()));
    let diagonal = (0..k).map(|i| d[i][i].clone()).collect();
    SnfResult { diagonal, d, u, v }
}

fn swap_cols<T>(m: &mut IntMatrix<T>, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[dst] += c * row[src]`
fn add_row<T: Integer + Clone>(m: &mut IntMatrix<T>, dst: usize, src: usize, c: &T) {
    for j in 0..m[dst].len() {
        let delta = m[src][j].clone() * c.clone();
        m[dst][j] = m[dst][j].clone() + delta;
    }
}

/// `col[dst] += c * col[src]`
fn add_col<T: Integer + Clone>(m: &mut IntMatrix<T>, dst: usize, src: usize, c: &T) {
    for row in m.iter_mut() {
        let delta = row[src].clone() * c.clone();
        row[dst] = row[dst].clone() + delta;
    }
}

fn negate_row<T: Integer + Signed + Clone>(m: &mut IntMatrix<T>, r: usize) {
    for x in m[r].iter_mut() {
        *x = -x.clone();
    }
}

/// Row-style Hermite normal form: the result is `w · a` for a unimodular
/// `w`, in row echelon form with positive pivots and the entries above each
/// pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hermite_normal_form<T: Integer + Signed + Clone>(a: &IntMatrix<T>) -> IntMatrix<T> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h = a.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[i][c].is_zero() && best.is_none_or(|b| h[i][c].abs() < h[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap(r, b);
            let mut done = true;
            for i in r + 1..rows {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    add_row(&mut h, i, r, &-q);
                }
                done &= h[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate_row(&mut h, r);
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                add_row(&mut h, i, r, &-q);
            }
        }
        r += 1;
    }
    h
}
