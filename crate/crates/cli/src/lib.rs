//! Command implementations behind the `pq3` binary.
//!
//! Every command certifies what it produced before anything touches the disk,
//! then writes its artifacts and a `manifest.json` listing each file with its
//! SHA-256 digest. Outputs contain no timestamps or absolute paths, so the same
//! invocation always yields byte-identical files.

pub mod manifest;
pub mod source;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use pq3::codes::{
    certify_grey_rankin_optimal, code_to_design, design_to_code, theorem_a_check, BinaryCode,
    GreyRankinReport, TheoremAReport,
};
use pq3::construction::{assemble_p, PseudoQuasi3Design};
use pq3::designs::{self, anchored_triple_spectrum, CertifyOptions, DesignCertificate, Spectrum};
use pq3::matrix::BitMatrix;
use pq3::Error;

use crate::manifest::RunManifest;
use crate::source::{resolve, Resolved};

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Exit code 1.
    #[error("verification failed: {0}")]
    Verification(String),
    /// Exit code 2.
    #[error("input error: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotHadamard { .. }
            | Error::NotNormalised
            | Error::SplitRow { .. }
            | Error::Certification(_)
            | Error::NonConstantBlockSize { .. }
            | Error::NonConstantPairCount { .. }
            | Error::NotSymmetric
            | Error::NotSelfComplementary
            | Error::BoundNotApplicable { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Sub-design taken at an anchor block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Derived,
    Residual,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Derived => "derived",
            Kind::Residual => "residual",
        })
    }
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn read_design(path: &Path) -> CliResult<BitMatrix> {
    read_text(path)?
        .parse()
        .map_err(|e: Error| CliError::Input(format!("{}: {e}", path.display())))
}

/// `2-(v,k,lambda)`.
pub fn design_label((v, k, lambda): (usize, usize, usize)) -> String {
    format!("2-({v},{k},{lambda})")
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialise");
    s.push('\n');
    s
}

/// Files staged in memory, written in order once every check has passed.
#[derive(Default)]
struct Staged {
    files: Vec<(String, String)>,
}

impl Staged {
    fn add(&mut self, name: impl Into<String>, contents: String) {
        self.files.push((name.into(), contents));
    }

    fn commit(self, out: &Path, mut manifest: RunManifest) -> CliResult<RunManifest> {
        fs::create_dir_all(out)?;
        for (name, contents) in &self.files {
            fs::write(out.join(name), contents)?;
            manifest.add_output(name, contents.as_bytes());
        }
        fs::write(out.join("manifest.json"), to_json(&manifest))?;
        Ok(manifest)
    }
}

/// Result of a command: the manifest plus a short human summary.
pub struct Outcome {
    pub manifest: RunManifest,
    pub summary: String,
    pub json: serde_json::Value,
    pub warnings: Vec<String>,
}

pub fn cmd_hadamard(spec: &str, out: &Path) -> CliResult<Outcome> {
    let Resolved { matrix, source, inputs } = resolve(spec)?;
    let mut manifest = RunManifest::new("hadamard");
    manifest.param("hadamard", spec);
    manifest.param("source", source.to_string());
    manifest.param("order", matrix.order());
    for input in &inputs {
        manifest.add_input_file(input)?;
    }
    let mut staged = Staged::default();
    staged.add("hadamard.txt", matrix.matrix().to_string());
    let manifest = staged.commit(out, manifest)?;
    Ok(Outcome {
        summary: format!("order {} Hadamard matrix from {source}", matrix.order()),
        json: json!({ "order": matrix.order(), "source": source.to_string() }),
        manifest,
        warnings: vec![],
    })
}

/// JSON description of how `P_u` was laid out.
#[derive(Serialize)]
struct ConstructionManifest {
    u: usize,
    hadamard_source: String,
    shift_convention: &'static str,
    params: (usize, usize, usize),
    triple_values: (usize, usize),
    anchor_blocks: Vec<usize>,
    cell_map: Vec<Vec<String>>,
}

fn construction_manifest(design: &PseudoQuasi3Design, source: &str) -> ConstructionManifest {
    ConstructionManifest {
        u: design.u,
        hadamard_source: source.to_string(),
        shift_convention: "left: row r reads the first row starting at offset r",
        params: design.params(),
        triple_values: design.triple_values(),
        anchor_blocks: design.anchor_blocks().collect(),
        cell_map: design
            .cell_map()
            .iter()
            .map(|row| row.iter().map(|c| c.to_string()).collect())
            .collect(),
    }
}

fn construct(u: usize, spec: Option<&str>, full_triples: bool) -> CliResult<(PseudoQuasi3Design, DesignCertificate, Resolved)> {
    let spec = match spec {
        Some(s) => s.to_string(),
        None => pq3::hadamard::source_for_order(u)?.to_string(),
    };
    let resolved = resolve(&spec)?;
    if resolved.matrix.order() != u {
        return Err(CliError::Input(format!(
            "Hadamard matrix from {spec} has order {}, expected {u}",
            resolved.matrix.order()
        )));
    }
    let design = assemble_p(&resolved.matrix)?;
    let certificate = designs::certify(
        &design.incidence,
        &CertifyOptions {
            anchors: design.anchor_blocks().collect(),
            witnesses: true,
            full_triples,
        },
    )?;
    Ok((design, certificate, resolved))
}

pub fn cmd_construct(u: usize, spec: Option<&str>, full_triples: bool, out: &Path) -> CliResult<Outcome> {
    let (design, certificate, resolved) = construct(u, spec, full_triples)?;
    let mut manifest = RunManifest::new("construct");
    manifest.param("u", u);
    manifest.param("hadamard", resolved.source.to_string());
    manifest.param("full_triples", full_triples);
    for input in &resolved.inputs {
        manifest.add_input_file(input)?;
    }
    let mut staged = Staged::default();
    staged.add("p_u.txt", design.incidence.to_string());
    staged.add("certificate.json", to_json(&certificate));
    staged.add(
        "construction.json",
        to_json(&construction_manifest(&design, &resolved.source.to_string())),
    );
    let manifest = staged.commit(out, manifest)?;
    let witnesses = certificate.witnesses.as_ref().map_or(0, Vec::len);
    Ok(Outcome {
        summary: format!(
            "P_{u}: symmetric {}, anchored triple values {:?}, {witnesses} witness blocks",
            design_label(certificate.params()),
            design.triple_values()
        ),
        json: json!({
            "u": u,
            "params": certificate.params(),
            "triple_values": design.triple_values(),
            "witnesses": certificate.witnesses,
        }),
        manifest,
        warnings: vec![],
    })
}

/// Sub-design plus what the parent design says about its anchor.
#[derive(Serialize)]
struct DeriveReport {
    kind: Kind,
    anchor: usize,
    anchor_is_witness: bool,
    anchor_triple_spectrum: Spectrum,
    certificate: DesignCertificate,
}

fn derive(m: &BitMatrix, anchor: usize, kind: Kind) -> CliResult<(BitMatrix, DeriveReport)> {
    let sub = match kind {
        Kind::Derived => designs::derived_design(m, anchor)?,
        Kind::Residual => designs::residual_design(m, anchor)?,
    };
    let spectrum = anchored_triple_spectrum(m, anchor)?;
    let certificate = designs::verify_2design(&sub)?;
    Ok((
        sub,
        DeriveReport {
            kind,
            anchor,
            anchor_is_witness: spectrum.len() <= 2,
            anchor_triple_spectrum: spectrum,
            certificate,
        },
    ))
}

fn witness_warning(report: &DeriveReport) -> Option<String> {
    (!report.anchor_is_witness).then(|| {
        format!(
            "block {} is not a pseudo quasi-3 witness: its triples meet in {:?}",
            report.anchor,
            report.anchor_triple_spectrum.keys().collect::<Vec<_>>()
        )
    })
}

pub fn cmd_derive(design: &Path, anchor: usize, kind: Kind, out: &Path) -> CliResult<Outcome> {
    let m = read_design(design)?;
    let (sub, report) = derive(&m, anchor, kind)?;
    let mut manifest = RunManifest::new("derive");
    manifest.param("anchor", anchor);
    manifest.param("kind", kind);
    manifest.add_input_file(design)?;
    let mut staged = Staged::default();
    staged.add(format!("{kind}.txt"), sub.to_string());
    staged.add(format!("{kind}_certificate.json"), to_json(&report));
    let manifest = staged.commit(out, manifest)?;
    let cert = &report.certificate;
    Ok(Outcome {
        summary: format!(
            "{kind} design at block {anchor}: {}, block intersections {:?}",
            design_label(cert.params()),
            cert.pair_values()
        ),
        json: json!({
            "kind": kind,
            "anchor": anchor,
            "params": cert.params(),
            "pair_spectrum": cert.pair_spectrum,
            "anchor_is_witness": report.anchor_is_witness,
        }),
        warnings: witness_warning(&report).into_iter().collect(),
        manifest,
    })
}

/// Code built from a design with its bound and design-condition reports.
pub struct CodeBundle {
    pub code: BinaryCode,
    pub grey_rankin: GreyRankinReport,
    pub theorem_a: TheoremAReport,
}

pub fn code_bundle(m: &BitMatrix) -> CliResult<CodeBundle> {
    let code = design_to_code(m)?;
    let grey_rankin = certify_grey_rankin_optimal(&code)?;
    let theorem_a = theorem_a_check(m)?;
    Ok(CodeBundle {
        code,
        grey_rankin,
        theorem_a,
    })
}

fn bound_status(b: &CodeBundle) -> String {
    let s = b.code.summary();
    let verdict = if b.grey_rankin.meets_with_equality {
        "meets bound"
    } else {
        "below bound"
    };
    format!("({},{},{}) {verdict}", s.n, s.m, s.d.unwrap_or(0))
}

pub fn cmd_code(design: &Path, out: &Path) -> CliResult<Outcome> {
    let m = read_design(design)?;
    let bundle = code_bundle(&m)?;
    let mut manifest = RunManifest::new("code");
    manifest.add_input_file(design)?;
    let mut staged = Staged::default();
    staged.add("code.txt", bundle.code.to_string());
    staged.add("grey_rankin.json", to_json(&bundle.grey_rankin));
    staged.add("theorem_a.json", to_json(&bundle.theorem_a));
    let manifest = staged.commit(out, manifest)?;
    Ok(Outcome {
        summary: bound_status(&bundle),
        json: json!({
            "code": bundle.code.summary(),
            "grey_rankin": bundle.grey_rankin,
            "theorem_a": bundle.theorem_a,
        }),
        manifest,
        warnings: vec![],
    })
}

pub fn cmd_decode(code: &Path, weight: usize, out: &Path) -> CliResult<Outcome> {
    let parsed: BinaryCode = read_text(code)?
        .parse()
        .map_err(|e: Error| CliError::Input(format!("{}: {e}", code.display())))?;
    let m = code_to_design(&parsed, weight)?;
    let certificate = designs::verify_2design(&m)?;
    let mut manifest = RunManifest::new("decode");
    manifest.param("weight", weight);
    manifest.add_input_file(code)?;
    let mut staged = Staged::default();
    staged.add("decoded.txt", m.to_string());
    staged.add("decoded_certificate.json", to_json(&certificate));
    let manifest = staged.commit(out, manifest)?;
    Ok(Outcome {
        summary: format!("{} words of weight {weight}: {}", m.rows(), design_label(certificate.params())),
        json: json!({ "weight": weight, "blocks": m.rows(), "params": certificate.params() }),
        manifest,
        warnings: vec![],
    })
}

/// One line of the pipeline summary table.
#[derive(Debug, Serialize)]
pub struct SummaryRow {
    pub u: usize,
    pub design: (usize, usize, usize),
    pub derived: (usize, usize, usize),
    pub residual: (usize, usize, usize),
    pub residual_code: String,
    pub derived_code: String,
}

impl fmt::Display for SummaryRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u={} | P_u {} | derived {} | residual {} | {}; {}",
            self.u,
            design_label(self.design),
            design_label(self.derived),
            design_label(self.residual),
            self.residual_code,
            self.derived_code
        )
    }
}

pub fn cmd_pipeline(u: usize, spec: Option<&str>, anchor: usize, full_triples: bool, out: &Path) -> CliResult<Outcome> {
    let (design, certificate, resolved) = construct(u, spec, full_triples)?;
    let m = &design.incidence;
    let (derived, derived_report) = derive(m, anchor, Kind::Derived)?;
    let (residual, residual_report) = derive(m, anchor, Kind::Residual)?;
    let derived_bundle = code_bundle(&derived)?;
    let residual_bundle = code_bundle(&residual)?;
    for (name, b) in [("derived", &derived_bundle), ("residual", &residual_bundle)] {
        if !b.grey_rankin.meets_with_equality || !b.theorem_a.holds {
            return Err(CliError::Verification(format!(
                "{name} code {} fails: equality={}, design conditions={}",
                b.code.summary(),
                b.grey_rankin.meets_with_equality,
                b.theorem_a.holds
            )));
        }
    }

    let row = SummaryRow {
        u,
        design: certificate.params(),
        derived: derived_report.certificate.params(),
        residual: residual_report.certificate.params(),
        residual_code: bound_status(&residual_bundle),
        derived_code: bound_status(&derived_bundle),
    };

    let mut manifest = RunManifest::new("pipeline");
    manifest.param("u", u);
    manifest.param("hadamard", resolved.source.to_string());
    manifest.param("anchor", anchor);
    manifest.param("full_triples", full_triples);
    for input in &resolved.inputs {
        manifest.add_input_file(input)?;
    }

    let mut staged = Staged::default();
    staged.add("hadamard.txt", resolved.matrix.matrix().to_string());
    staged.add("p_u.txt", m.to_string());
    staged.add("certificate.json", to_json(&certificate));
    staged.add(
        "construction.json",
        to_json(&construction_manifest(&design, &resolved.source.to_string())),
    );
    for (kind, sub, report, bundle) in [
        (Kind::Derived, &derived, &derived_report, &derived_bundle),
        (Kind::Residual, &residual, &residual_report, &residual_bundle),
    ] {
        staged.add(format!("{kind}.txt"), sub.to_string());
        staged.add(format!("{kind}_certificate.json"), to_json(report));
        staged.add(format!("{kind}_code.txt"), bundle.code.to_string());
        staged.add(format!("{kind}_grey_rankin.json"), to_json(&bundle.grey_rankin));
        staged.add(format!("{kind}_theorem_a.json"), to_json(&bundle.theorem_a));
    }
    staged.add("summary.txt", format!("{row}\n"));
    staged.add("summary.json", to_json(&row));
    let manifest = staged.commit(out, manifest)?;

    let warnings = [witness_warning(&derived_report)].into_iter().flatten().collect();
    Ok(Outcome {
        summary: row.to_string(),
        json: serde_json::to_value(&row).expect("summary serialises"),
        manifest,
        warnings,
    })
}

/// Output paths of a manifest, resolved against `out`.
pub fn output_paths(out: &Path, manifest: &RunManifest) -> Vec<PathBuf> {
    manifest.outputs.iter().map(|a| out.join(&a.path)).collect()
}

