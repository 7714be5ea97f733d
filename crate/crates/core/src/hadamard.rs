//! Hadamard matrices: Sylvester and Paley I constructions, Kronecker
//! composition, normalisation and the doubling `[[H, H], [H, -H]]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{kronecker, SignMatrix};

/// Largest Sylvester exponent accepted by [`sylvester`].
pub const DEFAULT_SYLVESTER_CAP: u32 = 6;

/// A sign matrix whose rows are verified to be pairwise orthogonal.
#[derive(Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    matrix: SignMatrix,
    normalised: bool,
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hadamard(normalised={}) ", self.normalised)?;
        self.matrix.fmt(f)
    }
}

/// Outcome of an orthogonality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HadamardReport {
    pub order: usize,
    pub is_hadamard: bool,
    /// First offending row pair and its inner product. For a diagonal failure
    /// both indices are equal.
    pub failure: Option<(usize, usize, i64)>,
}

/// Checks `H Hᵀ = nI` row pair by row pair, stopping at the first failure.
pub fn is_hadamard(m: &SignMatrix) -> HadamardReport {
    let n = m.order();
    for a in 0..n {
        for b in a..n {
            let dot = m.row_dot(a, b);
            let expected = if a == b { n as i64 } else { 0 };
            if dot != expected {
                return HadamardReport {
                    order: n,
                    is_hadamard: false,
                    failure: Some((a, b, dot)),
                };
            }
        }
    }
    HadamardReport {
        order: n,
        is_hadamard: true,
        failure: None,
    }
}

fn is_normalised(m: &SignMatrix) -> bool {
    (0..m.order()).all(|i| m.get(0, i) == 1 && m.get(i, 0) == 1)
}

impl HadamardMatrix {
    /// Gate for externally supplied matrices.
    pub fn verify(matrix: SignMatrix) -> Result<Self> {
        let report = is_hadamard(&matrix);
        if let Some((row_a, row_b, dot)) = report.failure {
            return Err(Error::NotHadamard { row_a, row_b, dot });
        }
        let normalised = is_normalised(&matrix);
        Ok(Self { matrix, normalised })
    }

    pub fn matrix(&self) -> &SignMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SignMatrix {
        self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn is_normalised(&self) -> bool {
        self.normalised
    }

    pub fn row(&self, i: usize) -> &[i8] {
        self.matrix.row(i)
    }

    /// Negates every column headed by −1, then every row led by −1.
    pub fn normalize(&self) -> Self {
        let mut m = self.matrix.clone();
        for j in 0..m.order() {
            if m.get(0, j) < 0 {
                m.negate_column(j);
            }
        }
        for i in 0..m.order() {
            if m.get(i, 0) < 0 {
                m.negate_row(i);
            }
        }
        Self {
            matrix: m,
            normalised: true,
        }
    }

    /// `[[H, H], [H, -H]]`.
    pub fn double(&self) -> Result<Self> {
        if !self.normalised {
            return Err(Error::NotNormalised);
        }
        let u = self.order();
        let matrix = SignMatrix::from_fn(2 * u, |r, c| {
            let e = self.matrix.get(r % u, c % u);
            if r >= u && c >= u {
                -e
            } else {
                e
            }
        })?;
        Ok(Self {
            matrix,
            normalised: true,
        })
    }
}

pub fn sylvester(exponent: u32) -> Result<HadamardMatrix> {
    sylvester_capped(exponent, DEFAULT_SYLVESTER_CAP)
}

/// Order `2^exponent` Sylvester matrix, doubling from `[[1]]`.
pub fn sylvester_capped(exponent: u32, cap: u32) -> Result<HadamardMatrix> {
    if exponent > cap {
        return Err(Error::ExponentCap { exponent, cap });
    }
    let mut h = HadamardMatrix {
        matrix: SignMatrix::ones(1)?,
        normalised: true,
    };
    for _ in 0..exponent {
        h = h.double()?;
    }
    Ok(h)
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Paley I matrix of order `q + 1` for a prime `q ≡ 3 (mod 4)`, normalised.
pub fn paley_i(q: u64) -> Result<HadamardMatrix> {
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q % 4 != 3 {
        return Err(Error::PaleyResidue(q));
    }
    let q_us = q as usize;
    let mut residue = vec![false; q_us];
    for x in 1..q_us {
        residue[x * x % q_us] = true;
    }
    // quadratic character of (b - a) mod q
    let chi = |a: usize, b: usize| -> i8 {
        let diff = (b + q_us - a) % q_us;
        match diff {
            0 => 0,
            d if residue[d] => 1,
            _ => -1,
        }
    };
    // H = I + [[0, 1ᵀ], [-1, Q]]
    let n = q_us + 1;
    let matrix = SignMatrix::from_fn(n, |r, c| match (r, c) {
        (r, c) if r == c => 1,
        (0, _) => 1,
        (_, 0) => -1,
        (r, c) => chi(r - 1, c - 1),
    })?;
    let h = HadamardMatrix::verify(matrix)?;
    Ok(h.normalize())
}

/// Kronecker product of two Hadamard matrices, normalised.
pub fn kronecker_hadamard(a: &HadamardMatrix, b: &HadamardMatrix) -> HadamardMatrix {
    let h = HadamardMatrix {
        matrix: kronecker(a.matrix(), b.matrix()),
        normalised: false,
    };
    debug_assert!(is_hadamard(h.matrix()).is_hadamard);
    h.normalize()
}

/// Where a Hadamard matrix came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HadamardSource {
    Sylvester(u32),
    Paley(u64),
    Kronecker(Box<HadamardSource>, Box<HadamardSource>),
    Imported(String),
}

impl fmt::Display for HadamardSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HadamardSource::Sylvester(k) => write!(f, "sylvester:{k}"),
            HadamardSource::Paley(q) => write!(f, "paley:{q}"),
            HadamardSource::Kronecker(a, b) => write!(f, "kron:{a},{b}"),
            HadamardSource::Imported(path) => write!(f, "import:{path}"),
        }
    }
}

impl HadamardSource {
    /// Builds the matrix this source describes. Imported sources cannot be rebuilt here.
    pub fn build(&self) -> Result<HadamardMatrix> {
        match self {
            HadamardSource::Sylvester(k) => sylvester(*k),
            HadamardSource::Paley(q) => paley_i(*q),
            HadamardSource::Kronecker(a, b) => Ok(kronecker_hadamard(&a.build()?, &b.build()?)),
            HadamardSource::Imported(_) => Err(Error::Shape("imported matrices must be read from file".into())),
        }
    }
}

/// Picks a constructor for order `n`: Sylvester, then Paley I, then doubling a
/// smaller supported order.
pub fn source_for_order(n: usize) -> Result<HadamardSource> {
    if n == 0 {
        return Err(Error::UnsupportedOrder(n));
    }
    if n.is_power_of_two() {
        let k = n.trailing_zeros();
        if k <= DEFAULT_SYLVESTER_CAP {
            return Ok(HadamardSource::Sylvester(k));
        }
    }
    if n.is_multiple_of(4) && is_prime(n as u64 - 1) {
        return Ok(HadamardSource::Paley(n as u64 - 1));
    }
    if n.is_multiple_of(2) && n > 2 {
        if let Ok(half) = source_for_order(n / 2) {
            return Ok(HadamardSource::Kronecker(
                Box::new(HadamardSource::Sylvester(1)),
                Box::new(half),
            ));
        }
    }
    Err(Error::UnsupportedOrder(n))
}
