//! Assembly of the symmetric 2-(4u², 2u²−u, u²−u) design `P_u` from a
//! normalised Hadamard matrix of order `u`.
//!
//! Doubling `H_u` gives `H_2u` with rows `h_0..h_{2u−1}`. The signed cells are
//! `h_i ⊗ h_iᵀ` and `h_u ⊗ h_iᵀ`; their 0/1 images are `A_i` and `S_i`. `P_u`
//! is a `2u × 2u` grid of `2u × 2u` cells:
//!
//! ```text
//!   0      S_1  S_2  ...  S_{2u−1}
//!   S_1ᵀ
//!   ...          A_{L[i−1][j−1]}
//!   S_{2u−1}ᵀ
//! ```
//!
//! where `L` is the cyclic Latin square on `{0..2u−1} \ {u}`. The result is
//! certified before it is returned.

use std::fmt;

use serde::Serialize;

use crate::designs::{self, CertifyOptions, DesignCertificate};
use crate::error::{Error, Result};
use crate::hadamard::HadamardMatrix;
use crate::matrix::{outer, sign_to_bit, BitMatrix};

/// The `A_i` and `S_i` cells for one doubled Hadamard matrix.
#[derive(Debug, Clone)]
pub struct CellSet {
    u: usize,
    a_cells: Vec<BitMatrix>,
    s_cells: Vec<BitMatrix>,
}

impl CellSet {
    pub fn u(&self) -> usize {
        self.u
    }

    pub fn a(&self, i: usize) -> &BitMatrix {
        &self.a_cells[i]
    }

    pub fn s(&self, i: usize) -> &BitMatrix {
        &self.s_cells[i]
    }
}

/// Builds `A_i = bits(h_i ⊗ h_iᵀ)` and `S_i = bits(h_u ⊗ h_iᵀ)` for `0 ≤ i < 2u`.
pub fn build_cells(h2u: &HadamardMatrix) -> Result<CellSet> {
    let n = h2u.order();
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidU(n));
    }
    if !h2u.is_normalised() {
        return Err(Error::NotNormalised);
    }
    let u = n / 2;
    let split = h2u.row(u);
    if !(split[..u].iter().all(|&e| e == 1) && split[u..].iter().all(|&e| e == -1)) {
        return Err(Error::SplitRow { row: u });
    }
    let mut a_cells = Vec::with_capacity(n);
    let mut s_cells = Vec::with_capacity(n);
    for i in 0..n {
        let h_i = h2u.row(i);
        a_cells.push(sign_to_bit(&outer(h_i, h_i)?));
        s_cells.push(sign_to_bit(&outer(split, h_i)?));
    }
    Ok(CellSet { u, a_cells, s_cells })
}

/// Outcome of a structural check on a Latin square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatinReport {
    pub ok: bool,
    pub failure: Option<String>,
}

impl LatinReport {
    fn pass() -> Self {
        Self { ok: true, failure: None }
    }

    fn fail(msg: String) -> Self {
        Self {
            ok: false,
            failure: Some(msg),
        }
    }
}

/// Outcome of the row-difference check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeeReport {
    pub ok: bool,
    /// First offending row pair and the number of differences of magnitude `u` it has.
    pub failure: Option<(usize, usize, usize)>,
}

/// A `(2u−1) × (2u−1)` array over the symbols `{0..2u−1} \ {u}`.
///
/// The Latin property is checked on demand rather than enforced, so that
/// mutated squares can be examined.
#[derive(Clone, PartialEq, Eq)]
pub struct LatinSquare {
    u: usize,
    grid: Vec<Vec<usize>>,
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LatinSquare(u={})", self.u)?;
        for row in &self.grid {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Cyclic shifts of `(0, 1, …, u−1, 2u−1, 2u−2, …, u+1)`: row `r` reads the
/// first row starting at offset `r`.
pub fn build_latin_square(u: usize) -> Result<LatinSquare> {
    if u < 2 {
        return Err(Error::InvalidU(u));
    }
    let side = 2 * u - 1;
    let first: Vec<usize> = (0..u).chain((u + 1..2 * u).rev()).collect();
    let grid = (0..side)
        .map(|r| (0..side).map(|c| first[(c + r) % side]).collect())
        .collect();
    Ok(LatinSquare { u, grid })
}

impl LatinSquare {
    /// Wraps an arbitrary grid; only the shape is checked.
    pub fn from_grid(u: usize, grid: Vec<Vec<usize>>) -> Result<Self> {
        let side = (2 * u).saturating_sub(1);
        if u < 1 || grid.len() != side || grid.iter().any(|r| r.len() != side) {
            return Err(Error::Shape(format!("Latin square for u={u} must be {side}x{side}")));
        }
        Ok(Self { u, grid })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn side(&self) -> usize {
        self.grid.len()
    }

    pub fn get(&self, row: usize, col: usize) -> usize {
        self.grid[row][col]
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.grid[r]
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn grid_mut(&mut self) -> &mut [Vec<usize>] {
        &mut self.grid
    }

    /// Every row and column is a permutation of `{0..2u−1} \ {u}`.
    pub fn check_latin(&self) -> LatinReport {
        let (u, side) = (self.u, self.side());
        let is_perm = |symbols: &mut dyn Iterator<Item = usize>| {
            let mut seen = vec![false; 2 * u];
            for s in symbols {
                if s >= 2 * u || s == u || seen[s] {
                    return false;
                }
                seen[s] = true;
            }
            true
        };
        for r in 0..side {
            if !is_perm(&mut self.grid[r].iter().copied()) {
                return LatinReport::fail(format!("row {r} is not a permutation of the symbol set"));
            }
        }
        for c in 0..side {
            if !is_perm(&mut (0..side).map(|r| self.grid[r][c])) {
                return LatinReport::fail(format!("column {c} is not a permutation of the symbol set"));
            }
        }
        LatinReport::pass()
    }

    /// For every pair of distinct rows, exactly one position-wise difference has
    /// magnitude `u`.
    pub fn lee_difference_check(&self) -> LeeReport {
        let side = self.side();
        for a in 0..side {
            for b in a + 1..side {
                let hits = self.grid[a]
                    .iter()
                    .zip(&self.grid[b])
                    .filter(|(&x, &y)| x.abs_diff(y) == self.u)
                    .count();
                if hits != 1 {
                    return LeeReport {
                        ok: false,
                        failure: Some((a, b, hits)),
                    };
                }
            }
        }
        LeeReport { ok: true, failure: None }
    }
}

/// Label of one cell of the `P_u` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Zero,
    S(usize),
    STransposed(usize),
    A(usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Zero => write!(f, "0"),
            Cell::S(i) => write!(f, "S{i}"),
            Cell::STransposed(i) => write!(f, "S{i}T"),
            Cell::A(i) => write!(f, "A{i}"),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which cell sits at grid position `(i, j)`.
pub fn cell_map(latin: &LatinSquare) -> Vec<Vec<Cell>> {
    let n = latin.side() + 1;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (i, j) {
                    (0, 0) => Cell::Zero,
                    (0, j) => Cell::S(j),
                    (i, 0) => Cell::STransposed(i),
                    (i, j) => Cell::A(latin.get(i - 1, j - 1)),
                })
                .collect()
        })
        .collect()
}

/// A certified `P_u`.
#[derive(Debug, Clone)]
pub struct PseudoQuasi3Design {
    pub u: usize,
    pub incidence: BitMatrix,
    pub latin: LatinSquare,
    pub certificate: DesignCertificate,
}

impl PseudoQuasi3Design {
    /// Blocks `0..2u`, the first row of cells.
    pub fn anchor_blocks(&self) -> std::ops::Range<usize> {
        0..2 * self.u
    }

    pub fn params(&self) -> (usize, usize, usize) {
        expected_params(self.u)
    }

    pub fn triple_values(&self) -> (usize, usize) {
        expected_triple_values(self.u)
    }

    pub fn cell_map(&self) -> Vec<Vec<Cell>> {
        cell_map(&self.latin)
    }
}

/// `(4u², 2u²−u, u²−u)`.
pub fn expected_params(u: usize) -> (usize, usize, usize) {
    (4 * u * u, 2 * u * u - u, u * u - u)
}

/// `(u²/2 − u, u²/2 − u/2)` for even `u`.
pub fn expected_triple_values(u: usize) -> (usize, usize) {
    (u * u / 2 - u, u * u / 2 - u / 2)
}

/// Places the cells, without certification.
pub fn place_cells(cells: &CellSet, latin: &LatinSquare) -> BitMatrix {
    let n = 2 * cells.u();
    let mut p = BitMatrix::zeros(n * n, n * n);
    for (i, row) in cell_map(latin).iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            match *cell {
                Cell::Zero => {}
                Cell::S(s) => p.set_block(i * n, j * n, cells.s(s)),
                Cell::STransposed(s) => p.set_block(i * n, j * n, &cells.s(s).transpose()),
                Cell::A(a) => p.set_block(i * n, j * n, cells.a(a)),
            }
        }
    }
    p
}

/// Builds `P_u` from a normalised Hadamard matrix of even order `u` and
/// certifies the parameters and the anchored triple values before returning.
pub fn assemble_p(h: &HadamardMatrix) -> Result<PseudoQuasi3Design> {
    let u = h.order();
    if u < 2 || !u.is_multiple_of(2) {
        return Err(Error::InvalidU(u));
    }
    let h2u = h.double()?;
    let cells = build_cells(&h2u)?;
    let latin = build_latin_square(u)?;
    let incidence = place_cells(&cells, &latin);

    let anchors: Vec<usize> = (0..2 * u).collect();
    let certificate = designs::certify(
        &incidence,
        &CertifyOptions {
            anchors,
            ..Default::default()
        },
    )
    .map_err(|e| Error::Certification(e.to_string()))?;

    let (v, k, lambda) = expected_params(u);
    if !certificate.symmetric || certificate.params() != (v, k, lambda) || certificate.b != v {
        return Err(Error::Certification(format!(
            "expected symmetric 2-({v}, {k}, {lambda}), got 2-({}, {}, {}) with {} blocks, symmetric={}",
            certificate.v, certificate.k, certificate.lambda, certificate.b, certificate.symmetric
        )));
    }
    if let Some((c, w)) = incidence.column_weights().into_iter().enumerate().find(|&(_, w)| w != k) {
        return Err(Error::Certification(format!("point {c} lies in {w} blocks, expected {k}")));
    }
    let (x, y) = expected_triple_values(u);
    for (anchor, spectrum) in &certificate.triple_spectra {
        if let Some(bad) = spectrum.keys().find(|&&t| t != x && t != y) {
            return Err(Error::Certification(format!(
                "anchor {anchor} has a triple intersection of {bad}, expected {x} or {y}"
            )));
        }
    }
    Ok(PseudoQuasi3Design {
        u,
        incidence,
        latin,
        certificate,
    })
}
