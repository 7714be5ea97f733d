//! Self-complementary binary codes built from quasi-symmetric designs, the
//! Grey-Rankin bound, and the design conditions under which a code meets it.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::designs::verify_2design;
use crate::error::{Error, Result};
use crate::matrix::{popcount, xor_count, BitMatrix};

/// A set of distinct length-`n` binary words kept in ascending numeric order
/// (column 0 is the most significant bit).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryCode {
    words: BitMatrix,
    min_distance: Option<usize>,
    self_complementary: bool,
}

/// `(n, M, d)` plus the self-complementary flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub n: usize,
    pub m: usize,
    pub d: Option<usize>,
    pub self_complementary: bool,
}

impl fmt::Display for CodeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            Some(d) => write!(f, "({}, {}, {})", self.n, self.m, d),
            None => write!(f, "({}, {}, -)", self.n, self.m),
        }
    }
}

impl BinaryCode {
    /// Sorts the rows of `words` and rejects duplicates.
    pub fn new(words: BitMatrix) -> Result<Self> {
        let mut order: Vec<usize> = (0..words.rows()).collect();
        order.sort_by(|&a, &b| words.row_words(a).cmp(words.row_words(b)));
        if let Some(pair) = order
            .windows(2)
            .find(|w| words.row_words(w[0]) == words.row_words(w[1]))
        {
            return Err(Error::DuplicateWord(words.row_string(pair[0])));
        }
        let sorted = BitMatrix::from_packed_rows(words.cols(), order.iter().map(|&i| words.row_words(i)));
        let mut code = Self {
            words: sorted,
            min_distance: None,
            self_complementary: false,
        };
        code.self_complementary = code.check_self_complementary();
        code.min_distance = match code.len() {
            0 | 1 => None,
            _ if code.self_complementary => Some(code.min_distance_halved()),
            _ => Some(code.min_distance_full()),
        };
        Ok(code)
    }

    pub fn n(&self) -> usize {
        self.words.cols()
    }

    pub fn len(&self) -> usize {
        self.words.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.words.rows() == 0
    }

    pub fn words(&self) -> &BitMatrix {
        &self.words
    }

    pub fn is_self_complementary(&self) -> bool {
        self.self_complementary
    }

    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            n: self.n(),
            m: self.len(),
            d: self.min_distance,
            self_complementary: self.self_complementary,
        }
    }

    fn find(&self, word: &[u64]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.words.row_words(mid).cmp(word) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn check_self_complementary(&self) -> bool {
        let flipped = self.words.complement();
        (0..self.len()).all(|i| self.find(flipped.row_words(i)).is_some())
    }

    /// Minimum distance over all C(M, 2) pairs.
    pub fn min_distance_full(&self) -> usize {
        let m = self.len();
        (0..m)
            .into_par_iter()
            .map(|i| {
                (i + 1..m)
                    .map(|j| xor_count(self.words.row_words(i), self.words.row_words(j)))
                    .min()
                    .unwrap_or(usize::MAX)
            })
            .min()
            .unwrap_or(usize::MAX)
    }

    /// Minimum distance of a self-complementary code from the words whose first
    /// bit is 0: `d(a, b̄) = n − d(a, b)` covers the other half, and a word sits
    /// at distance `n` from its own complement.
    fn min_distance_halved(&self) -> usize {
        let n = self.n();
        let reps: Vec<&[u64]> = (0..self.len())
            .map(|i| self.words.row_words(i))
            .filter(|w| w[0] >> 63 == 0)
            .collect();
        debug_assert_eq!(2 * reps.len(), self.len());
        (0..reps.len())
            .into_par_iter()
            .map(|i| {
                reps[i + 1..]
                    .iter()
                    .map(|b| {
                        let d = xor_count(reps[i], b);
                        d.min(n - d)
                    })
                    .min()
                    .unwrap_or(n)
            })
            .min()
            .unwrap_or(n)
            .min(n)
    }

    /// Drops word `i`; the summary is recomputed.
    pub fn without_word(&self, i: usize) -> Result<Self> {
        let keep = (0..self.len()).filter(|&r| r != i).map(|r| self.words.row_words(r));
        Self::new(BitMatrix::from_packed_rows(self.n(), keep))
    }
}

impl fmt::Debug for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryCode{}", self.summary())
    }
}

/// Exact minimum Hamming distance.
pub fn min_distance(c: &BinaryCode) -> Result<usize> {
    c.min_distance.ok_or(Error::TooFewWords)
}

/// Code file: `n M` header, then one word per line.
impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.len())?;
        for r in 0..self.len() {
            writeln!(f, "{}", self.words.row_string(r))?;
        }
        Ok(())
    }
}

impl FromStr for BinaryCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        // same layout as a bit matrix with the header fields swapped
        let mut lines = s.lines();
        let header = lines.next().unwrap_or_default();
        let mut fields = header.split_whitespace();
        let (Some(n), Some(m), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                line: 1,
                message: format!("header must be \"n M\", got {header:?}"),
            });
        };
        let rest: Vec<&str> = lines.collect();
        let words: BitMatrix = format!("{m} {n}\n{}", rest.join("\n")).parse()?;
        Self::new(words)
    }
}

/// Rows of the design, their complements, and the all-zero and all-one words.
pub fn design_to_code(m: &BitMatrix) -> Result<BinaryCode> {
    verify_2design(m)?;
    let n = m.cols();
    let complement = m.complement();
    let zero = BitMatrix::zeros(1, n);
    let one = BitMatrix::ones(1, n);
    let rows = (0..m.rows())
        .map(|i| m.row_words(i))
        .chain((0..m.rows()).map(|i| complement.row_words(i)))
        .chain([zero.row_words(0), one.row_words(0)]);
    BinaryCode::new(BitMatrix::from_packed_rows(n, rows))
}

/// The words of exactly `weight` ones, in ascending numeric order, as an
/// incidence matrix.
pub fn code_to_design(c: &BinaryCode, weight: usize) -> Result<BitMatrix> {
    if !c.is_self_complementary() {
        return Err(Error::NotSelfComplementary);
    }
    let words = c.words();
    let picked: Vec<&[u64]> = (0..c.len())
        .map(|i| words.row_words(i))
        .filter(|w| popcount(w) == weight)
        .collect();
    if picked.is_empty() {
        return Err(Error::NoWordsOfWeight(weight));
    }
    Ok(BitMatrix::from_packed_rows(c.n(), picked))
}

/// `M ≤ 8d(n−d) / (n − (n−2d)²)` evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreyRankinReport {
    pub n: usize,
    pub d: usize,
    /// Word count of the code checked against the bound, if any.
    pub m: Option<usize>,
    pub self_complementary: Option<bool>,
    /// `n − (n−2d)²`.
    pub denominator: i64,
    pub applicable: bool,
    /// Bound as a reduced fraction; absent when the denominator is zero.
    pub bound_numerator: Option<i64>,
    pub bound_denominator: Option<i64>,
    pub meets_with_equality: bool,
}

impl GreyRankinReport {
    pub fn bound(&self) -> Option<Ratio<i64>> {
        Some(Ratio::new(self.bound_numerator?, self.bound_denominator?))
    }

    /// The bound when it is a whole number.
    pub fn integer_bound(&self) -> Option<i64> {
        self.bound().filter(|b| b.is_integer()).map(|b| b.to_integer())
    }
}

pub fn grey_rankin_bound(n: usize, d: usize) -> Result<GreyRankinReport> {
    if d == 0 || d >= n {
        return Err(Error::InvalidCodeParameters { n, d });
    }
    let (ni, di) = (n as i64, d as i64);
    let denominator = ni - (ni - 2 * di).pow(2);
    let numerator = 8 * di * (ni - di);
    let bound = (denominator != 0).then(|| Ratio::new(numerator, denominator));
    Ok(GreyRankinReport {
        n,
        d,
        m: None,
        self_complementary: None,
        denominator,
        applicable: denominator > 0,
        bound_numerator: bound.map(|b| *b.numer()),
        bound_denominator: bound.map(|b| *b.denom()),
        meets_with_equality: false,
    })
}

/// Grey-Rankin report for a code; equality is exact integer equality `M = bound`.
pub fn certify_grey_rankin_optimal(c: &BinaryCode) -> Result<GreyRankinReport> {
    let d = min_distance(c)?;
    let mut report = grey_rankin_bound(c.n(), d)?;
    if !report.applicable {
        return Err(Error::BoundNotApplicable { n: c.n(), d });
    }
    report.m = Some(c.len());
    report.self_complementary = Some(c.is_self_complementary());
    report.meets_with_equality = report.bound() == Some(Ratio::from_integer(c.len() as i64));
    Ok(report)
}

/// Itemised conditions for a quasi-symmetric design to correspond to a
/// self-complementary code meeting the Grey-Rankin bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    /// Point count.
    pub n: usize,
    /// Block size.
    pub d: usize,
    pub lambda: usize,
    pub n_even: bool,
    /// `(n−2d)² < n` and `2d < n`, i.e. `n − √n < 2d < n`.
    pub distance_window: bool,
    pub d_even: bool,
    pub intersection_sizes: Vec<usize>,
    /// `(d/2, (3d−n)/2)` when both are non-negative integers.
    pub required_intersections: Option<(usize, usize)>,
    pub intersections_ok: bool,
    /// `λ · (n − (n−2d)²) = d(d−1)`.
    pub lambda_ok: bool,
    pub holds: bool,
}

pub fn theorem_a_check(m: &BitMatrix) -> Result<TheoremAReport> {
    let cert = verify_2design(m)?;
    let (n, d, lambda) = (cert.v, cert.k, cert.lambda);
    let (ni, di) = (n as i64, d as i64);
    let gap = (ni - 2 * di).pow(2);
    let n_even = n % 2 == 0;
    let distance_window = gap < ni && 2 * d < n;
    let d_even = d % 2 == 0;
    let low = 3 * di - ni;
    let required_intersections = (d_even && low >= 0 && low % 2 == 0).then_some((d / 2, (low / 2) as usize));
    let intersection_sizes = cert.pair_values();
    let intersections_ok = required_intersections
        .map(|(a, b)| intersection_sizes.iter().all(|&s| s == a || s == b))
        .unwrap_or(false);
    let lambda_ok = lambda as i64 * (ni - gap) == di * (di - 1);
    Ok(TheoremAReport {
        n,
        d,
        lambda,
        n_even,
        distance_window,
        d_even,
        intersection_sizes,
        required_intersections,
        intersections_ok,
        lambda_ok,
        holds: n_even && distance_window && d_even && intersections_ok && lambda_ok,
    })
}
