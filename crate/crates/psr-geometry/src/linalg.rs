//! Exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::rat::{dot, Point, Rat};

/// Reduced row echelon form of the row space; zero rows dropped.
pub fn rref(rows: &[Point], n: usize) -> Vec<Point> {
    let mut m: Vec<Point> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut lead = 0;
    let mut r = 0;
    while r < m.len() && lead < n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][lead].is_zero()) else {
            lead += 1;
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][lead];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[lead].is_zero() {
                let f = row[lead].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &f * y;
                }
            }
        }
        r += 1;
        lead += 1;
    }
    m.truncate(r);
    m
}

pub fn rank(rows: &[Point], n: usize) -> usize {
    rref(rows, n).len()
}

/// Basis of {x : row·x = 0 for every row}.
pub fn nullspace(rows: &[Point], n: usize) -> Vec<Point> {
    let e = rref(rows, n);
    let pivots: Vec<usize> = e.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
    let mut basis = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); n];
        v[free] = Rat::one();
        for (row, &p) in e.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Orthogonal projection of `x` onto the orthogonal complement of span(`basis`).
pub fn project_out(x: &[Rat], basis: &[Point]) -> Point {
    if basis.is_empty() {
        return x.to_vec();
    }
    let n = x.len();
    let q = gram_schmidt(basis, n);
    let mut y = x.to_vec();
    for b in &q {
        let c = dot(&y, b) / dot(b, b);
        for (yi, bi) in y.iter_mut().zip(b) {
            *yi = &*yi - &c * bi;
        }
    }
    y
}

/// Orthogonal (not normalised) basis of span(rows).
pub fn gram_schmidt(rows: &[Point], n: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for r in rref(rows, n) {
        let mut v = r.clone();
        for b in &out {
            let c = dot(&v, b) / dot(b, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = &*vi - &c * bi;
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// Solves the square or overdetermined system `a x = b` if consistent.
pub fn solve(a: &[Point], b: &[Rat], n: usize) -> Option<Point> {
    let aug: Vec<Point> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(&aug, n + 1);
    let mut x = vec![Rat::zero(); n];
    for row in &e {
        let p = row.iter().position(|v| !v.is_zero()).unwrap();
        if p == n {
            return None;
        }
        x[p] = row[n].clone();
    }
    Some(x)
}
