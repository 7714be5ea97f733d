//! 2-design verification, intersection spectra, pseudo quasi-3 witnesses and
//! derived/residual/dual designs.
//!
//! Spectra are value → count maps. All scans are exact integer counts; the
//! parallel ones reduce into maps, so the result does not depend on the order
//! in which rayon visits the index ranges.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{and_count, BitMatrix};

/// Intersection size → number of occurrences.
pub type Spectrum = BTreeMap<usize, u64>;

fn merge(mut a: Spectrum, b: Spectrum) -> Spectrum {
    for (value, count) in b {
        *a.entry(value).or_default() += count;
    }
    a
}

/// Verified parameters and intersection data of a 2-design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignCertificate {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    /// Blocks through each point.
    pub r: usize,
    pub lambda: usize,
    pub symmetric: bool,
    pub pair_spectrum: Spectrum,
    /// `(x, y)` with `x < y`, present only for exactly two pair intersection sizes.
    pub quasi_symmetric: Option<(usize, usize)>,
    /// The single pair intersection size when there is only one.
    pub intersection_regular: Option<usize>,
    /// Anchored triple spectra, keyed by anchor block.
    pub triple_spectra: BTreeMap<usize, Spectrum>,
    /// Every block whose anchored triple spectrum has at most two values;
    /// `None` when no witness scan was run.
    pub witnesses: Option<Vec<usize>>,
    /// Spectrum over all C(b, 3) triples; opt-in.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_triple_spectrum: Option<Spectrum>,
}

impl DesignCertificate {
    pub fn params(&self) -> (usize, usize, usize) {
        (self.v, self.k, self.lambda)
    }

    /// `k(k−1) = λ(v−1)`, the counting identity every symmetric design satisfies.
    pub fn symmetric_counting_holds(&self) -> bool {
        self.k * self.k.saturating_sub(1) == self.lambda * (self.v - 1)
    }

    /// `b·k(k−1) = λ·v(v−1)`: both sides count (block, ordered point pair) incidences.
    pub fn pair_counting_holds(&self) -> bool {
        self.b * self.k * self.k.saturating_sub(1) == self.lambda * self.v * (self.v - 1)
    }

    /// `bk = vr` and `r(k−1) = λ(v−1)`; for a symmetric design both reduce to
    /// [`Self::symmetric_counting_holds`].
    pub fn counting_identities_hold(&self) -> bool {
        self.b * self.k == self.v * self.r
            && self.r * self.k.saturating_sub(1) == self.lambda * (self.v - 1)
    }

    pub fn pair_values(&self) -> Vec<usize> {
        self.pair_spectrum.keys().copied().collect()
    }
}

/// What [`certify`] should compute beyond the basic 2-design check.
#[derive(Debug, Clone, Default)]
pub struct CertifyOptions {
    pub anchors: Vec<usize>,
    pub witnesses: bool,
    pub full_triples: bool,
}

fn check_shape(m: &BitMatrix, needed: usize) -> Result<()> {
    if m.rows() < needed || m.cols() < 2 {
        return Err(Error::TooSmall {
            needed,
            blocks: m.rows(),
            points: m.cols(),
        });
    }
    Ok(())
}

/// Verifies that `m` is the incidence matrix of a 2-design and returns its
/// certificate (without triple data).
pub fn verify_2design(m: &BitMatrix) -> Result<DesignCertificate> {
    check_shape(m, 2)?;
    let (b, v) = (m.rows(), m.cols());
    let k = m.weight_unchecked(0);
    if let Some(block) = (1..b).find(|&i| m.weight_unchecked(i) != k) {
        return Err(Error::NonConstantBlockSize {
            block,
            size: m.weight_unchecked(block),
            expected: k,
        });
    }

    let points = m.transpose();
    let lambda = points.pair_unchecked(0, 1);
    let violation = (0..v).into_par_iter().find_map_first(|p| {
        (p + 1..v).find_map(|q| {
            let count = points.pair_unchecked(p, q);
            (count != lambda).then_some(Error::NonConstantPairCount {
                p,
                q,
                count,
                expected: lambda,
            })
        })
    });
    if let Some(err) = violation {
        return Err(err);
    }

    let r = points.weight_unchecked(0);
    let pair_spectrum = pair_spectrum(m);
    let symmetric = b == v && pair_spectrum.len() == 1 && pair_spectrum.contains_key(&lambda);
    let values: Vec<usize> = pair_spectrum.keys().copied().collect();
    Ok(DesignCertificate {
        v,
        b,
        k,
        r,
        lambda,
        symmetric,
        quasi_symmetric: (values.len() == 2).then(|| (values[0], values[1])),
        intersection_regular: (values.len() == 1).then(|| values[0]),
        pair_spectrum,
        triple_spectra: BTreeMap::new(),
        witnesses: None,
        full_triple_spectrum: None,
    })
}

/// [`verify_2design`] plus the triple scans requested in `opts`.
pub fn certify(m: &BitMatrix, opts: &CertifyOptions) -> Result<DesignCertificate> {
    let mut cert = verify_2design(m)?;
    for &a in &opts.anchors {
        cert.triple_spectra.insert(a, anchored_triple_spectrum(m, a)?);
    }
    if opts.witnesses {
        cert.witnesses = Some(witness_scan(m)?);
    }
    if opts.full_triples {
        cert.full_triple_spectrum = Some(full_triple_spectrum(m)?);
    }
    Ok(cert)
}

/// Multiset of `|B_i ∩ B_j|` over all unordered block pairs.
pub fn pair_spectrum(m: &BitMatrix) -> Spectrum {
    let b = m.rows();
    (0..b)
        .into_par_iter()
        .fold(Spectrum::new, |mut acc, i| {
            for j in i + 1..b {
                *acc.entry(m.pair_unchecked(i, j)).or_default() += 1;
            }
            acc
        })
        .reduce(Spectrum::new, merge)
}

/// Rows `B_anchor ∩ B_i` for every `i ≠ anchor`, paired with their index.
fn anchored_rows(m: &BitMatrix, anchor: usize) -> Vec<(usize, Vec<u64>)> {
    let a = m.row_words(anchor);
    (0..m.rows())
        .filter(|&i| i != anchor)
        .map(|i| (i, a.iter().zip(m.row_words(i)).map(|(x, y)| x & y).collect()))
        .collect()
}

/// Multiset of `|B_anchor ∩ B_i ∩ B_j|` over pairs `i < j` avoiding the anchor.
pub fn anchored_triple_spectrum(m: &BitMatrix, anchor: usize) -> Result<Spectrum> {
    check_shape(m, 3)?;
    if anchor >= m.rows() {
        return Err(Error::IndexOutOfRange {
            index: anchor,
            len: m.rows(),
        });
    }
    let masked = anchored_rows(m, anchor);
    Ok((0..masked.len())
        .into_par_iter()
        .fold(Spectrum::new, |mut acc, x| {
            let (_, ref row) = masked[x];
            for &(j, _) in &masked[x + 1..] {
                *acc.entry(and_count(row, m.row_words(j))).or_default() += 1;
            }
            acc
        })
        .reduce(Spectrum::new, merge))
}

/// True when the triples through `anchor` take at most two sizes. Stops at the
/// third distinct size.
fn is_witness(m: &BitMatrix, anchor: usize) -> bool {
    let masked = anchored_rows(m, anchor);
    let mut seen = [usize::MAX; 2];
    for (x, (_, row)) in masked.iter().enumerate() {
        for &(j, _) in &masked[x + 1..] {
            let t = and_count(row, m.row_words(j));
            if seen.contains(&t) {
                continue;
            }
            if seen[0] == usize::MAX {
                seen[0] = t;
            } else if seen[1] == usize::MAX {
                seen[1] = t;
            } else {
                return false;
            }
        }
    }
    true
}

fn witness_scan(m: &BitMatrix) -> Result<Vec<usize>> {
    check_shape(m, 3)?;
    let mut found: Vec<usize> = (0..m.rows())
        .into_par_iter()
        .filter(|&a| is_witness(m, a))
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// Every block through which all triples have at most two intersection sizes.
/// The design is pseudo quasi-3 exactly when this is non-empty.
pub fn pseudo_quasi3_witnesses(m: &BitMatrix) -> Result<Vec<usize>> {
    check_shape(m, 3)?;
    if !verify_2design(m)?.symmetric {
        return Err(Error::NotSymmetric);
    }
    witness_scan(m)
}

/// Spectrum of `|B_i ∩ B_j ∩ B_k|` over all C(b, 3) triples. Cubic cost.
pub fn full_triple_spectrum(m: &BitMatrix) -> Result<Spectrum> {
    check_shape(m, 3)?;
    let b = m.rows();
    Ok((0..b)
        .into_par_iter()
        .fold(Spectrum::new, |mut acc, i| {
            for (j, row) in anchored_rows(m, i).into_iter().filter(|&(j, _)| j > i) {
                for k in j + 1..b {
                    *acc.entry(and_count(&row, m.row_words(k))).or_default() += 1;
                }
            }
            acc
        })
        .reduce(Spectrum::new, merge))
}

/// Quasi-3 (for blocks): every block is a witness and the global triple
/// spectrum has exactly two values.
pub fn is_quasi3(m: &BitMatrix) -> Result<bool> {
    let witnesses = pseudo_quasi3_witnesses(m)?;
    if witnesses.len() != m.rows() {
        return Ok(false);
    }
    Ok(full_triple_spectrum(m)?.len() == 2)
}

fn split_on_block(m: &BitMatrix, block: usize) -> Result<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    if block >= m.rows() {
        return Err(Error::IndexOutOfRange {
            index: block,
            len: m.rows(),
        });
    }
    if !verify_2design(m)?.symmetric {
        return Err(Error::NotSymmetric);
    }
    let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != block).collect();
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..m.cols()).partition(|&c| m.get(block, c));
    Ok((rows, inside, outside))
}

/// Blocks other than `block`, restricted to the points of `block`.
pub fn derived_design(m: &BitMatrix, block: usize) -> Result<BitMatrix> {
    let (rows, inside, _) = split_on_block(m, block)?;
    Ok(m.submatrix(&rows, &inside))
}

/// Blocks other than `block`, restricted to the points outside `block`.
pub fn residual_design(m: &BitMatrix, block: usize) -> Result<BitMatrix> {
    let (rows, _, outside) = split_on_block(m, block)?;
    Ok(m.submatrix(&rows, &outside))
}

/// Swaps the roles of points and blocks.
pub fn dual_design(m: &BitMatrix) -> Result<BitMatrix> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.transpose())
}

/// Distinct values of a spectrum.
pub fn spectrum_values(s: &Spectrum) -> BTreeSet<usize> {
    s.keys().copied().collect()
}
