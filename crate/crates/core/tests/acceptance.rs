//! Acceptance criteria, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so criteria execute sequentially
//! and their wall-clock limits are measured without interference.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pq3::codes::{
    certify_grey_rankin_optimal, code_to_design, design_to_code, min_distance, theorem_a_check,
};
use pq3::construction::{
    assemble_p, build_latin_square, expected_params, expected_triple_values, PseudoQuasi3Design,
};
use pq3::designs::{
    anchored_triple_spectrum, derived_design, dual_design, pseudo_quasi3_witnesses,
    residual_design, verify_2design, DesignCertificate,
};
use pq3::hadamard::{is_hadamard, kronecker_hadamard, paley_i, sylvester, HadamardMatrix};
use pq3::matrix::{BitMatrix, SignMatrix};
use pq3::Error;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn seed_for(u: usize) -> HadamardMatrix {
    match u {
        12 => paley_i(11).unwrap(),
        u => sylvester(u.trailing_zeros()).unwrap(),
    }
}

fn build(u: usize) -> Result<PseudoQuasi3Design, String> {
    assemble_p(&seed_for(u)).map_err(|e| format!("u={u}: {e}"))
}

fn values(s: &pq3::designs::Spectrum) -> Vec<usize> {
    s.keys().copied().collect()
}

fn sorted_rows(m: &BitMatrix) -> Vec<String> {
    let mut rows: Vec<String> = (0..m.rows()).map(|r| m.row_string(r)).collect();
    rows.sort();
    rows
}

fn check_symmetric_cert(cert: &DesignCertificate, u: usize) -> Result<(), String> {
    let (v, k, lambda) = expected_params(u);
    ensure!(cert.symmetric, "u={u}: not symmetric");
    ensure!(cert.b == v, "u={u}: b={} != v={v}", cert.b);
    ensure!(
        cert.params() == (v, k, lambda),
        "u={u}: got 2-{:?}, expected 2-{:?}",
        cert.params(),
        (v, k, lambda)
    );
    ensure!(cert.symmetric_counting_holds(), "u={u}: k(k-1) != lambda(v-1)");
    Ok(())
}

fn check_anchors(design: &PseudoQuasi3Design, exact: bool) -> Result<(), String> {
    let u = design.u;
    let (x, y) = expected_triple_values(u);
    let pairs = {
        let b = design.incidence.rows() as u64 - 1;
        b * (b - 1) / 2
    };
    for a in design.anchor_blocks() {
        let s = anchored_triple_spectrum(&design.incidence, a).map_err(|e| e.to_string())?;
        ensure!(s.values().sum::<u64>() == pairs, "u={u} anchor {a}: {} triples scanned", s.values().sum::<u64>());
        let got = values(&s);
        if exact {
            ensure!(got == vec![x, y], "u={u} anchor {a}: values {got:?}, expected [{x}, {y}]");
        } else {
            ensure!(got.iter().all(|&t| t == x || t == y), "u={u} anchor {a}: values {got:?} not within {{{x}, {y}}}");
        }
    }
    Ok(())
}

fn ac1_hadamard() -> Outcome {
    let mut checked = Vec::new();
    for k in 0..=5 {
        checked.push((format!("sylvester({k})"), sylvester(k).map_err(|e| e.to_string())?));
    }
    for q in [3, 7, 11, 19] {
        checked.push((format!("paley({q})"), paley_i(q).map_err(|e| e.to_string())?));
    }
    checked.push((
        "kron(2,12)".into(),
        kronecker_hadamard(&sylvester(1).unwrap(), &paley_i(11).unwrap()),
    ));
    for (name, h) in &checked {
        let n = h.order() as i64;
        let m = h.matrix();
        for a in 0..h.order() {
            for b in 0..h.order() {
                let dot = m.row_dot(a, b);
                ensure!(dot == if a == b { n } else { 0 }, "{name}: (HH^T)[{a}][{b}] = {dot}");
            }
        }
        ensure!(is_hadamard(m).is_hadamard, "{name}: is_hadamard disagrees");
        let once = h.normalize();
        ensure!(once.normalize() == once, "{name}: normalize not idempotent");
        ensure!(is_hadamard(once.matrix()).is_hadamard, "{name}: normalize broke orthogonality");
    }
    let kron = &checked.last().unwrap().1;
    ensure!(kron.order() == 24, "kron order {}", kron.order());
    Ok(format!("{} matrices, orders up to 32, HH^T = nI exactly", checked.len()))
}

fn ac2_u2() -> Outcome {
    let design = build(2)?;
    check_symmetric_cert(&design.certificate, 2)?;
    ensure!(design.params() == (16, 6, 2), "params {:?}", design.params());
    check_anchors(&design, false)?;
    Ok("2-(16,6,2), anchors 0..3 within {0,1} over 105 triples each".into())
}

fn ac3_u4() -> Outcome {
    let design = build(4)?;
    check_symmetric_cert(&design.certificate, 4)?;
    ensure!(design.certificate.params() == (64, 28, 12), "params");
    check_anchors(&design, true)?;
    let w = pseudo_quasi3_witnesses(&design.incidence).map_err(|e| e.to_string())?;
    let set: BTreeSet<usize> = w.iter().copied().collect();
    ensure!((0..8).all(|a| set.contains(&a)), "witnesses {w:?} miss an anchor block");
    Ok(format!("2-(64,28,12), anchors 0..7 exactly {{4,6}}, {} witnesses", w.len()))
}

fn ac4_u8_u12() -> Outcome {
    let mut lines = Vec::new();
    for (u, params, triples) in [(8, (256, 120, 56), (24, 28)), (12, (576, 276, 132), (60, 66))] {
        let design = build(u)?;
        check_symmetric_cert(&design.certificate, u)?;
        ensure!(design.certificate.params() == params, "u={u}: params {:?}", design.certificate.params());
        ensure!(expected_triple_values(u) == triples, "u={u}: triple formula");
        check_anchors(&design, true)?;
        lines.push(format!("u={u}: 2-{params:?} {triples:?}"));
    }
    Ok(lines.join("; "))
}

fn ac5_sub_designs() -> Outcome {
    for u in [2, 4, 8, 12] {
        let design = build(u)?;
        let m = &design.incidence;
        let (derived_pair, residual_pair) = ((u * u / 2 - u, u * u / 2 - u / 2), (u * u / 2 - u / 2, u * u / 2));
        let derived_params = (2 * u * u - u, u * u - u, u * u - u - 1);
        let residual_params = (2 * u * u + u, u * u, u * u - u);
        let mut first: Option<(DesignCertificate, DesignCertificate)> = None;
        for a in design.anchor_blocks() {
            let dc = verify_2design(&derived_design(m, a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let rc = verify_2design(&residual_design(m, a).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure!(dc.params() == derived_params, "u={u} anchor {a}: derived 2-{:?}", dc.params());
            ensure!(rc.params() == residual_params, "u={u} anchor {a}: residual 2-{:?}", rc.params());
            ensure!(
                dc.pair_values() == vec![derived_pair.0, derived_pair.1],
                "u={u} anchor {a}: derived spectrum {:?}",
                dc.pair_values()
            );
            ensure!(
                rc.pair_values() == vec![residual_pair.0, residual_pair.1],
                "u={u} anchor {a}: residual spectrum {:?}",
                rc.pair_values()
            );
            match &first {
                None => first = Some((dc, rc)),
                Some((d0, r0)) => ensure!(d0 == &dc && r0 == &rc, "u={u}: anchor {a} certificate differs from anchor 0"),
            }
        }
    }
    Ok("derived and residual parameters and two-valued spectra match for every anchor, u in {2,4,8,12}".into())
}

fn ac6_codes() -> Outcome {
    let mut lines = Vec::new();
    for u in [2, 4, 8, 12] {
        let m = build(u)?.incidence;
        let cases = [
            ("residual", residual_design(&m, 0), (2 * u * u + u, 8 * u * u, u * u)),
            ("derived", derived_design(&m, 0), (2 * u * u - u, 8 * u * u, u * u - u)),
        ];
        for (kind, sub, (n, big_m, d)) in cases {
            let code = design_to_code(&sub.map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let full = code.min_distance_full();
            let fast = min_distance(&code).map_err(|e| e.to_string())?;
            ensure!(full == fast, "u={u} {kind}: full scan {full} vs halved scan {fast}");
            let s = code.summary();
            ensure!(
                (s.n, s.m, full) == (n, big_m, d),
                "u={u} {kind}: code ({}, {}, {full}), expected ({n}, {big_m}, {d})",
                s.n,
                s.m
            );
            ensure!(s.self_complementary, "u={u} {kind}: not self-complementary");
            let report = certify_grey_rankin_optimal(&code).map_err(|e| e.to_string())?;
            ensure!(
                report.integer_bound() == Some(8 * (u * u) as i64),
                "u={u} {kind}: bound {:?}",
                report.bound()
            );
            ensure!(report.meets_with_equality, "u={u} {kind}: bound not met");
            if kind == "residual" {
                lines.push(format!("({n},{big_m},{d})"));
            }
        }
    }
    Ok(format!("residual codes {} and matching derived codes meet the bound", lines.join(" ")))
}

fn ac7_theorem_a() -> Outcome {
    for u in [2, 4, 8, 12] {
        let m = build(u)?.incidence;
        let derived = derived_design(&m, 0).map_err(|e| e.to_string())?;
        let residual = residual_design(&m, 0).map_err(|e| e.to_string())?;
        for (kind, sub) in [("derived", &derived), ("residual", &residual)] {
            let r = theorem_a_check(sub).map_err(|e| e.to_string())?;
            ensure!(
                r.n_even && r.distance_window && r.d_even && r.intersections_ok && r.lambda_ok && r.holds,
                "u={u} {kind}: {r:?}"
            );
        }
        let code = design_to_code(&derived).map_err(|e| e.to_string())?;
        let recovered = code_to_design(&code, u * u - u).map_err(|e| e.to_string())?;
        ensure!(recovered.rows() == 4 * u * u - 1, "u={u}: {} words of weight u^2-u", recovered.rows());
        ensure!(sorted_rows(&recovered) == sorted_rows(&derived), "u={u}: recovered words differ from the derived design");
        let cert = verify_2design(&recovered).map_err(|e| e.to_string())?;
        ensure!(cert.params() == (2 * u * u - u, u * u - u, u * u - u - 1), "u={u}: recovered 2-{:?}", cert.params());
    }
    Ok("all itemised conditions hold for both sub-designs; 4u^2-1 weight-(u^2-u) words recover the derived design".into())
}

fn ac8_latin() -> Outcome {
    for u in [2, 4, 8, 12, 16] {
        let l = build_latin_square(u).map_err(|e| e.to_string())?;
        ensure!(l.check_latin().ok, "u={u}: not Latin");
        ensure!(l.lee_difference_check().ok, "u={u}: difference check failed");
        let side = l.side();
        // swap two symbols in one row: each pair of positions in row 0, plus one interior row
        for row in [0, side / 2] {
            for c1 in 0..side {
                for c2 in c1 + 1..side {
                    let mut mutated = l.clone();
                    mutated.grid_mut()[row].swap(c1, c2);
                    ensure!(!mutated.check_latin().ok, "u={u}: swap ({row}; {c1},{c2}) still Latin");
                    ensure!(
                        !mutated.lee_difference_check().ok,
                        "u={u}: swap ({row}; {c1},{c2}) passes the difference check"
                    );
                }
            }
        }
    }
    Ok("u in {2,4,8,12,16} pass; every single-row swap fails both checks".into())
}

fn ac9_negative_and_properties() -> Outcome {
    // corrupted Hadamard file: flip one sign of sylvester(3)
    let mut text = sylvester(3).unwrap().matrix().to_string();
    let pos = text.find('\n').unwrap() + 1 + 8 + 1 + 3;
    let flipped = if &text[pos..pos + 1] == "+" { "-" } else { "+" };
    text.replace_range(pos..pos + 1, flipped);
    let parsed: SignMatrix = text.parse().map_err(|e: Error| e.to_string())?;
    match HadamardMatrix::verify(parsed) {
        Err(Error::NotHadamard { .. }) => {}
        other => return Err(format!("corrupted import accepted: {other:?}")),
    }

    let lopsided: BitMatrix = "3 4\n1100\n0110\n1110\n".parse().unwrap();
    ensure!(
        matches!(verify_2design(&lopsided), Err(Error::NonConstantBlockSize { .. })),
        "non-constant row sums accepted"
    );

    let mut certificates = 0;
    for u in [2, 4, 8, 12] {
        let design = build(u)?;
        let m = &design.incidence;
        ensure!(design.certificate.symmetric_counting_holds(), "u={u}: k(k-1) != lambda(v-1)");
        certificates += 1;
        for a in design.anchor_blocks() {
            for sub in [derived_design(m, a), residual_design(m, a)] {
                let sub = sub.map_err(|e| e.to_string())?;
                let cert = verify_2design(&sub).map_err(|e| e.to_string())?;
                ensure!(cert.counting_identities_hold(), "u={u} anchor {a}: r(k-1) != lambda(v-1)");
                certificates += 1;
                let code = design_to_code(&sub).map_err(|e| e.to_string())?;
                let back = code_to_design(&code, cert.k).map_err(|e| e.to_string())?;
                ensure!(sorted_rows(&back) == sorted_rows(&sub), "u={u} anchor {a}: round trip differs");
            }
        }
        let dual = dual_design(m).map_err(|e| e.to_string())?;
        let dc = verify_2design(&dual).map_err(|e| e.to_string())?;
        ensure!(dc.symmetric && dc.symmetric_counting_holds(), "u={u}: dual not symmetric");
        certificates += 1;
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..40), rng.gen_range(1..200));
        let m = BitMatrix::from_fn(r, c, |_, _| rng.gen_bool(0.5));
        ensure!(m.transpose().transpose() == m, "transpose not an involution");
        ensure!(m.complement().complement() == m, "complement not an involution");
        let square = BitMatrix::from_fn(r, r, |_, _| rng.gen_bool(0.5));
        let dd = dual_design(&dual_design(&square).unwrap()).unwrap();
        ensure!(dd == square, "dual not an involution");
    }
    Ok(format!("rejections fire; counting identities on {certificates} certificates; involutions and round trips hold"))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 Hadamard suite", Duration::from_secs(1), ac1_hadamard),
        ("AC2 P_2 certification", Duration::from_secs(1), ac2_u2),
        ("AC3 P_4 certification", Duration::from_secs(5), ac3_u4),
        ("AC4 P_8 and P_12 certification", Duration::from_secs(120), ac4_u8_u12),
        ("AC5 derived and residual designs", Duration::from_secs(60), ac5_sub_designs),
        ("AC6 Grey-Rankin optimal codes", Duration::from_secs(120), ac6_codes),
        ("AC7 design conditions and code-to-design recovery", Duration::from_secs(30), ac7_theorem_a),
        ("AC8 Latin square difference property", Duration::from_secs(1), ac8_latin),
        ("AC9 negative and property suite", Duration::from_secs(30), ac9_negative_and_properties),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} [{elapsed:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} [{elapsed:.2?}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
