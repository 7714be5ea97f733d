//! Pseudo quasi-3 designs from Hadamard matrices.
//!
//! The pipeline is: a normalised Hadamard matrix of order `u` ([`hadamard`])
//! is doubled and cut into Kronecker cells that are laid out along a cyclic
//! Latin square to form the symmetric 2-(4u², 2u²−u, u²−u) design `P_u`
//! ([`construction`]). Triples of blocks through any of the first `2u` blocks
//! meet in only two sizes, so the derived and residual designs at those blocks
//! are quasi-symmetric ([`designs`]). Each of them, padded with complements and
//! the two constant words, is a self-complementary code meeting the
//! Grey-Rankin bound ([`codes`]).
//!
//! Every claim is checked by exhaustive integer counting on bit-packed rows
//! ([`matrix`]).

pub mod codes;
pub mod construction;
pub mod designs;
pub mod error;
pub mod hadamard;
pub mod matrix;

pub use error::{Error, Result};
