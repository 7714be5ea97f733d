//! Parsing of `--hadamard` descriptors.
//!
//! Accepted forms: `sylvester:k`, `paley:q`, `kron:A,B`, `import:FILE` or a bare
//! file path. Kronecker operands split at the first top-level comma, so a nested
//! left operand must be wrapped in parentheses: `kron:(kron:sylvester:1,paley:3),paley:11`.

use std::path::{Path, PathBuf};

use pq3::hadamard::{kronecker_hadamard, paley_i, sylvester, HadamardMatrix, HadamardSource};
use pq3::matrix::SignMatrix;

use crate::{read_text, CliError, CliResult};

/// A verified, normalised Hadamard matrix with its provenance.
#[derive(Debug)]
pub struct Resolved {
    pub matrix: HadamardMatrix,
    pub source: HadamardSource,
    /// Files read while resolving, in reading order.
    pub inputs: Vec<PathBuf>,
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    match t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(inner) if balanced(inner) => strip_parens(inner),
        _ => t,
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn bad(spec: &str, why: &str) -> CliError {
    CliError::Input(format!("bad Hadamard descriptor {spec:?}: {why}"))
}

/// Parses and builds the matrix described by `spec`.
pub fn resolve(spec: &str) -> CliResult<Resolved> {
    let spec = strip_parens(spec);
    if let Some(k) = spec.strip_prefix("sylvester:") {
        let k: u32 = k.trim().parse().map_err(|_| bad(spec, "exponent is not an integer"))?;
        return Ok(Resolved {
            matrix: sylvester(k)?,
            source: HadamardSource::Sylvester(k),
            inputs: vec![],
        });
    }
    if let Some(q) = spec.strip_prefix("paley:") {
        let q: u64 = q.trim().parse().map_err(|_| bad(spec, "q is not an integer"))?;
        return Ok(Resolved {
            matrix: paley_i(q)?,
            source: HadamardSource::Paley(q),
            inputs: vec![],
        });
    }
    if let Some(rest) = spec.strip_prefix("kron:") {
        let (a, b) = split_top_level(rest).ok_or_else(|| bad(spec, "expected two operands"))?;
        let a = resolve(a)?;
        let b = resolve(b)?;
        let mut inputs = a.inputs;
        inputs.extend(b.inputs);
        return Ok(Resolved {
            matrix: kronecker_hadamard(&a.matrix, &b.matrix),
            source: HadamardSource::Kronecker(Box::new(a.source), Box::new(b.source)),
            inputs,
        });
    }
    let path = spec.strip_prefix("import:").unwrap_or(spec);
    if path.is_empty() {
        return Err(bad(spec, "empty path"));
    }
    import(Path::new(path))
}

/// Reads a `+`/`-` matrix file, verifies orthogonality and normalises it.
pub fn import(path: &Path) -> CliResult<Resolved> {
    let m: SignMatrix = read_text(path)?
        .parse()
        .map_err(|e: pq3::Error| CliError::Input(format!("{}: {e}", path.display())))?;
    let h = HadamardMatrix::verify(m).map_err(|e| match CliError::from(e) {
        CliError::Verification(msg) => CliError::Verification(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    Ok(Resolved {
        matrix: h.normalize(),
        source: HadamardSource::Imported(path.display().to_string()),
        inputs: vec![path.to_path_buf()],
    })
}
