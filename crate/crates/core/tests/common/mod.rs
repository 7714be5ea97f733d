//! Naive reference implementations over `Vec<Vec<bool>>`, kept independent of
//! the bit-packed kernels they are compared against.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Grid = Vec<Vec<bool>>;

pub fn sylvester_rows(exponent: u32) -> Vec<Vec<i8>> {
    let mut h = vec![vec![1i8]];
    for _ in 0..exponent {
        let n = h.len();
        let mut next = vec![vec![0i8; 2 * n]; 2 * n];
        for r in 0..2 * n {
            for c in 0..2 * n {
                let e = h[r % n][c % n];
                next[r][c] = if r >= n && c >= n { -e } else { e };
            }
        }
        h = next;
    }
    h
}

/// P_u spelled out entry by entry from the cell layout, for a normalised
/// Hadamard matrix `h` of order u given as plain rows.
pub fn naive_p(h: &[Vec<i8>]) -> Grid {
    let u = h.len();
    let n = 2 * u;
    let h2: Vec<Vec<i8>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let e = h[r % u][c % u];
                    if r >= u && c >= u {
                        -e
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    let m = n - 1;
    let first: Vec<usize> = (0..u).chain((u + 1..n).rev()).collect();
    let latin = |r: usize, c: usize| first[(c + r) % m];
    // A_i[j][k] = h_i[k] h_i[j] == -1 ; S_i[j][k] = h_u[k] h_i[j] == -1
    let a = |i: usize, j: usize, k: usize| h2[i][k] * h2[i][j] == -1;
    let s = |i: usize, j: usize, k: usize| h2[u][k] * h2[i][j] == -1;
    let mut p = vec![vec![false; n * n]; n * n];
    for (row, prow) in p.iter_mut().enumerate() {
        for (col, entry) in prow.iter_mut().enumerate() {
            let (ci, cj) = (row / n, col / n);
            let (j, k) = (row % n, col % n);
            *entry = match (ci, cj) {
                (0, 0) => false,
                (0, cj) => s(cj, j, k),
                (ci, 0) => s(ci, k, j),
                (ci, cj) => a(latin(ci - 1, cj - 1), j, k),
            };
        }
    }
    p
}

pub fn pair(g: &Grid, i: usize, j: usize) -> usize {
    g[i].iter().zip(&g[j]).filter(|(a, b)| **a && **b).count()
}

pub fn triple(g: &Grid, i: usize, j: usize, k: usize) -> usize {
    (0..g[i].len()).filter(|&c| g[i][c] && g[j][c] && g[k][c]).count()
}

pub fn pair_spectrum(g: &Grid) -> BTreeMap<usize, u64> {
    let mut s = BTreeMap::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            *s.entry(pair(g, i, j)).or_default() += 1;
        }
    }
    s
}

pub fn anchored_spectrum(g: &Grid, a: usize) -> BTreeMap<usize, u64> {
    let mut s = BTreeMap::new();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if i != a && j != a {
                *s.entry(triple(g, a, i, j)).or_default() += 1;
            }
        }
    }
    s
}

/// Number of blocks containing both points p and q.
pub fn point_pair(g: &Grid, p: usize, q: usize) -> usize {
    g.iter().filter(|row| row[p] && row[q]).count()
}

pub fn distance(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn to_grid(m: &pq3::matrix::BitMatrix) -> Grid {
    (0..m.rows()).map(|r| m.row_bits(r)).collect()
}
