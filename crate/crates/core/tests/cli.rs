use std::path::{Path, PathBuf};

use trivhom::cli::{export_fixtures, run, Outcome};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn trivhom(args: &[&str]) -> Outcome {
    let dir = fixtures();
    let dir = dir.to_str().unwrap();
    run(["trivhom", "--fixture-dir", dir].iter().chain(args))
}

#[test]
fn shipped_fixtures_match_the_bundled_ones() {
    let tmp = tempfile::tempdir().unwrap();
    let n = export_fixtures(tmp.path()).unwrap();
    let mut shipped: Vec<_> = std::fs::read_dir(fixtures()).unwrap().map(|e| e.unwrap().file_name()).collect();
    shipped.sort();
    assert_eq!(shipped.len(), n);
    for name in shipped {
        let a = std::fs::read(fixtures().join(&name)).unwrap();
        let b = std::fs::read(tmp.path().join(&name)).unwrap();
        assert_eq!(a, b, "{name:?} is stale; rerun export-fixtures");
    }
}

#[test]
fn every_shipped_category_validates() {
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        if let Some(stem) = name.strip_suffix(".fun") {
            let cat = format!("{}.cat", stem.split('.').next().unwrap());
            let out = trivhom(&["validate", &cat, "--functor", &name]);
            assert_eq!(out.code, 0, "{name}: {}", out.report);
        } else if name.ends_with(".cat") {
            let out = trivhom(&["validate", &name]);
            assert_eq!(out.code, 0, "{name}: {}", out.report);
        }
    }
}

#[test]
fn reports_are_byte_stable_and_mirrored_to_file() {
    let tmp = tempfile::tempdir().unwrap();
    let report = tmp.path().join("r.txt");
    let report = report.to_str().unwrap();
    let args = ["cohomology", "fusion_s4.cat", "fusion_s4.center.fun", "--report", report];
    let first = trivhom(&args);
    let saved = std::fs::read_to_string(report).unwrap();
    let second = trivhom(&args);
    assert_eq!(first, second);
    assert_eq!(saved, first.report);
    assert!(!first.report.contains("elapsed"));
}

#[test]
fn cohomology_of_classical_fixtures() {
    let out = trivhom(&["cohomology", "grp_c2_bar.cat", "grp_c2_bar.z4_neg.fun", "--ring", "Zmod:2^2"]);
    assert_eq!(out.code, 0, "{}", out.report);
    assert!(out.report.contains("PASS d∘d = 0"));
    assert!(out.report.contains("1       Z/2\n"), "{}", out.report);
    let out = trivhom(&["cohomology", "poset2.cat", "poset2.z.fun", "--max-degree", "3"]);
    assert!(out.report.ends_with("0       Z\n1       0\n2       0\n3       0\n"), "{}", out.report);
}

#[test]
fn verify_homotopy_passes_on_the_homotopy_fixtures() {
    for (cat, fun) in [("grp_c2.cat", "grp_c2.z4_neg.fun"), ("fusion_s4.cat", "fusion_s4.center.fun")] {
        let out = trivhom(&["verify-homotopy", "--system", cat, "--functor", fun]);
        assert_eq!(out.code, 0, "{}", out.report);
        assert!(out.report.contains("PASS contraction degree 1"));
        assert!(out.report.contains("PASS vanishing degree 2"));
    }
    let out = trivhom(&["verify-homotopy", "--system", "grp_c2.cat", "--functor", "grp_c2.z4_neg.fun", "--p", "R"]);
    assert_eq!(out.code, 2);
}

#[test]
fn verify_mackey_on_group_files() {
    for g in ["c2_regular", "c3_regular", "c2_center", "c3_center", "s3_p2", "s3_p3"] {
        let out = trivhom(&["verify-mackey", &format!("{g}.grp")]);
        assert_eq!(out.code, 0, "{g}: {}", out.report);
        assert!(out.report.contains("H^2 = 0"));
    }
    for g in ["c2_two_copies", "c2_point"] {
        let out = trivhom(&["verify-mackey", &format!("{g}.grp")]);
        assert_eq!(out.code, 1, "{g}: {}", out.report);
        assert!(out.report.contains("witness:"), "{}", out.report);
    }
}

#[test]
fn structural_checks() {
    assert_eq!(trivhom(&["check-ordered", "idempotent.cat"]).code, 1);
    assert_eq!(trivhom(&["check-ordered", "fusion_s4.cat"]).code, 0);
    assert_eq!(trivhom(&["check-a-category", "fusion_s4.cat"]).code, 0);
    let out = trivhom(&["check-mult", "bowtie.cat"]);
    assert_eq!(out.code, 1);
    assert!(out.report.contains("FAIL partition: "));
    let out = trivhom(&["check-mult", "klein.cat"]);
    assert_eq!(out.code, 0, "{}", out.report);
    let out = trivhom(&["product", "fusion_s4.cat", "V", "V"]);
    assert_eq!(out.code, 0);
    assert!(out.report.starts_with("V × V = V + V + V + V + V + V\n"));
    let out = trivhom(&["pullback", "chain3.cat", "X<Z", "Y<Z"]);
    assert_eq!(out.code, 0);
    assert!(out.report.starts_with("pull-back of (X<Z, Y<Z) = X\n"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(trivhom(&["validate", "missing.cat"]).code, 2);
    assert_eq!(trivhom(&["cohomology", "poset2.cat", "poset2.z.fun", "--ring", "Zmod:4"]).code, 2);
    assert_eq!(trivhom(&["cohomology", "poset2.cat", "poset2.z.fun", "--ring", "Zmod:3"]).code, 2);
    assert_eq!(trivhom(&["cohomology", "poset2.cat", "chain3.z_z3.fun"]).code, 2);
    assert_eq!(trivhom(&["product", "poset2.cat", "X", "W"]).code, 2);
    assert_eq!(trivhom(&["frobnicate"]).code, 2);
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.cat");
    std::fs::write(&bad, "OBJECTS\nX\nMORPHISMS\nf X Y\n").unwrap();
    let out = trivhom(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.report.starts_with("ERROR "), "{}", out.report);
}
