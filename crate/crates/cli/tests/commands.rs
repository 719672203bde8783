use std::path::PathBuf;
use std::process::Command;

use fispec_cli::config::{FISetDecl, GeneratorDecl, IdentifyDecl, OrbitDecl, RelationDecl, SourceLine, SubgroupDecl};
use fispec_cli::{
    cmd_decompose, cmd_eval, cmd_multiplicities, cmd_orbits, cmd_report, cmd_spectrum, JobConfig, SpectrumDocument,
    SpectrumFlags, Status,
};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn load(name: &str) -> JobConfig {
    JobConfig::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn families(doc: &SpectrumDocument) -> Vec<(String, String)> {
    let mut out: Vec<_> = doc
        .report
        .families
        .iter()
        .map(|f| (f.value.display_in("n"), f.multiplicity.display_in("n")))
        .collect();
    out.sort();
    out
}

#[test]
fn eval_lists_elements() {
    let cfg = load("shapes.fis");
    let two = "fiset \"pairs\" { orbit { m = 2, H = \"symmetric\", label = \"S\" } }";
    let pairs = JobConfig::parse(two).unwrap();
    assert_eq!(cmd_eval(&pairs, "pairs", 4).unwrap().lines().count(), 6);
    assert_eq!(cmd_eval(&cfg, "ordered_pairs", 3).unwrap().lines().count(), 6);
    assert_eq!(cmd_eval(&cfg, "subsets3", 2).unwrap(), "");
    let listing = cmd_eval(&cfg, "half_ordered", 3).unwrap();
    assert_eq!(listing.lines().count(), 3);
    assert!(listing.lines().all(|l| l.ends_with("\torbit 0")));
}

#[test]
fn eval_exports_relations_as_triplets() {
    let cfg = load("kneser.fis");
    let text = cmd_eval(&cfg, "kneser2", 5).unwrap();
    let mut lines = text.lines();
    let header: serde_json::Value = serde_json::from_str(lines.next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(header["degree"], 5);
    assert_eq!(header["rows"].as_array().unwrap().len(), 10);
    assert_eq!(lines.next(), Some("row,col,value"));
    assert_eq!(lines.count(), 30);
}

#[test]
fn decompose_examples() {
    let cfg = load("shapes.fis");
    let out = cmd_decompose(&cfg, "subsets3", 10).unwrap();
    assert_eq!(out.status, Status::Success);
    assert!(out.text.contains("(m=3, H=S_3)"), "{}", out.text);
    let from: usize = out
        .text
        .split("from degree ")
        .nth(2)
        .and_then(|s| s.split(',').next())
        .unwrap()
        .parse()
        .unwrap();
    assert!(from <= 6);
    assert!(cmd_decompose(&cfg, "ordered_pairs", 10)
        .unwrap()
        .text
        .contains("(m=2, H=trivial)"));
    assert!(cmd_decompose(&cfg, "crush", 10)
        .unwrap()
        .text
        .contains("(m=0, H=trivial)"));
}

#[test]
fn decompose_is_undecided_when_the_range_is_too_short() {
    let cfg = load("shapes.fis");
    let out = cmd_decompose(&cfg, "subsets3", 4).unwrap();
    assert_eq!(out.status, Status::Undecided);
    assert_eq!(out.status.exit_code(), 2);
    assert_eq!(cmd_orbits(&cfg, "subsets3", 4).unwrap().status, Status::Undecided);
}

#[test]
fn multiplicity_examples() {
    let cfg = JobConfig::parse(
        "fiset \"one\" { orbit { m = 1, H = \"symmetric\", label = \"S\" } }\n\
         fiset \"two\" { orbit { m = 2, H = \"symmetric\", label = \"S\" } }\n\
         fiset \"none\" { }",
    )
    .unwrap();
    let table = |name| {
        cmd_multiplicities(&cfg, name, 4, 9)
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.split('\t').take(2).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
    };
    assert_eq!(table("one"), ["[] 1", "[1] 1"]);
    assert_eq!(table("two"), ["[] 1", "[1] 1", "[2] 1"]);
    assert!(table("none").is_empty());
}

#[test]
fn spectrum_examples() {
    let cfg = load("kneser.fis");
    let out = cmd_spectrum(&cfg, "kneser2", &SpectrumFlags::default()).unwrap();
    let doc = SpectrumDocument::from_json(&out.text).unwrap();
    assert_eq!(doc.schema, 1);
    assert_eq!(doc.report.caps, cfg.caps);
    assert_eq!(
        families(&doc),
        [
            ("-n + 3".to_string(), "n - 1".to_string()),
            ("1".to_string(), "1/2*n^2 - 3/2*n".to_string()),
            ("1/2*n^2 - 5/2*n + 3".to_string(), "1".to_string()),
        ]
    );
    let intro = cmd_spectrum(&load("intro.fis"), "distinct", &SpectrumFlags::default()).unwrap();
    assert_eq!(
        SpectrumDocument::from_json(&intro.text).unwrap().report.families.len(),
        2
    );
}

#[test]
fn spectrum_flags() {
    let cfg = load("containment.fis");
    assert!(cmd_spectrum(&cfg, "contains", &SpectrumFlags::default()).is_err());
    let singular = SpectrumFlags {
        singular: true,
        oracle_check: true,
        ..Default::default()
    };
    let out = cmd_spectrum(&cfg, "contains", &singular).unwrap();
    assert_eq!(out.status, Status::Success);
    let doc = SpectrumDocument::from_json(&out.text).unwrap();
    assert_eq!(doc.report.oracle.len(), 2);
    assert_eq!(
        families(&doc),
        [("2*n - 2".into(), "1".into()), ("n - 2".into(), "n - 1".into())]
    );
    let laplacian = SpectrumFlags {
        laplacian: true,
        ..Default::default()
    };
    let out = cmd_spectrum(&cfg, "disjoint_ordered", &laplacian).unwrap();
    let doc = SpectrumDocument::from_json(&out.text).unwrap();
    assert!(doc.report.families.iter().any(|f| f.value.is_zero()));
    let both = SpectrumFlags {
        laplacian: true,
        singular: true,
        ..Default::default()
    };
    assert!(cmd_spectrum(&cfg, "disjoint_ordered", &both).is_err());
}

#[test]
fn corrupted_cache_fails_the_oracle() {
    let cfg = load("kneser.fis");
    let out = cmd_spectrum(&cfg, "kneser2", &SpectrumFlags::default()).unwrap();
    let mut doc = SpectrumDocument::from_json(&out.text).unwrap();
    let check = |doc: SpectrumDocument| {
        let flags = SpectrumFlags {
            oracle_check: true,
            cached: Some(doc),
            ..Default::default()
        };
        cmd_spectrum(&cfg, "kneser2", &flags).unwrap()
    };
    assert_eq!(check(doc.clone()).status, Status::Success);
    let mut coeffs = doc.report.blocks[1].coefficients.coeffs().to_vec();
    coeffs[0] = &coeffs[0] + &fispec::RationalPolynomial::one();
    doc.report.blocks[1].coefficients = fispec::spectra::BiPoly::new(coeffs);
    let out = check(doc);
    assert_eq!(out.status, Status::Failed);
    assert_eq!(out.status.exit_code(), 1);
    let doc = SpectrumDocument::from_json(&out.text).unwrap();
    assert!(doc.report.oracle.iter().all(|o| !o.agrees && o.diagnostic.is_some()));
}

#[test]
fn reports_are_deterministic() {
    let cfg = load("containment.fis");
    let a = cmd_report(&cfg, 8, 3, true).unwrap();
    let b = cmd_report(&cfg, 8, 3, true).unwrap();
    assert_eq!(a.status, Status::Success);
    assert_eq!(a.text, b.text);
    let v: serde_json::Value = serde_json::from_str(&a.text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["relations"].as_array().unwrap().len(), 2);
}

#[test]
fn fixtures_round_trip() {
    for name in ["kneser.fis", "intro.fis", "shapes.fis", "containment.fis"] {
        let cfg = load(name);
        assert_eq!(JobConfig::parse(&cfg.serialize()).unwrap(), cfg, "{name}");
    }
}

fn run_binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fispec")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_exit_codes() {
    let shapes = fixture("shapes.fis");
    let shapes = shapes.to_str().unwrap();
    let (code, stdout, _) = run_binary(&["-c", shapes, "--name", "half_ordered"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(m=3, H=<(1 2)>)"));
    let (code, _, _) = run_binary(&["-c", shapes, "--name", "subsets3", "--n-max", "4"]);
    assert_eq!(code, 2);
    let (code, _, stderr) = run_binary(&["-c", shapes, "eval", "--name", "missing", "--n", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("missing"), "{stderr}");

    let dir = std::env::temp_dir().join(format!("fispec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.fis");
    std::fs::write(&bad, "fiset \"a\" {\n  orbit { m = 2, shape = 1 }\n}\n").unwrap();
    let (code, _, stderr) = run_binary(&["-c", bad.to_str().unwrap(), "eval", "--name", "a", "--n", "2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("line 2"), "{stderr}");

    let kneser = fixture("kneser.fis");
    let kneser = kneser.to_str().unwrap();
    let report = dir.join("k.json");
    let csv = dir.join("k.csv");
    let (code, _, _) = run_binary(&[
        "-c",
        kneser,
        "--out",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(std::fs::read_to_string(&csv)
        .unwrap()
        .starts_with("n,eigenvalue,multiplicity\n5,"));
    let (code, _, _) = run_binary(&["-c", kneser, "--oracle-check", "--from", report.to_str().unwrap()]);
    assert_eq!(code, 0);

    let text = std::fs::read_to_string(&report).unwrap();
    let mut doc = SpectrumDocument::from_json(&text).unwrap();
    let mut coeffs = doc.report.blocks[0].coefficients.coeffs().to_vec();
    coeffs[0] = &coeffs[0] + &fispec::RationalPolynomial::one();
    doc.report.blocks[0].coefficients = fispec::spectra::BiPoly::new(coeffs);
    std::fs::write(&report, doc.to_json()).unwrap();
    let (code, _, _) = run_binary(&["-c", kneser, "--oracle-check", "--from", report.to_str().unwrap()]);
    assert_eq!(code, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn text() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[ -~]{0,12}").unwrap()
}

fn ident() -> impl Strategy<Value = String> {
    proptest::string::string_regex("[a-z][a-z0-9_]{0,6}").unwrap()
}

fn fiset_decl() -> impl Strategy<Value = FISetDecl> {
    let h = prop_oneof![
        Just(SubgroupDecl::Trivial),
        Just(SubgroupDecl::Symmetric),
        proptest::collection::vec(text(), 0..3).prop_map(SubgroupDecl::Generators),
    ];
    let orbit = (0usize..6, h, text()).prop_map(|(m, h, label)| OrbitDecl { m, h, label });
    let ident = (0usize..9, text(), text()).prop_map(|(degree, a, b)| IdentifyDecl { degree, a, b });
    (
        proptest::collection::vec(orbit, 0..3),
        proptest::collection::vec(ident, 0..2),
    )
        .prop_map(|(orbits, identifications)| FISetDecl {
            orbits,
            identifications,
            line: SourceLine(0),
        })
}

fn job_config() -> impl Strategy<Value = JobConfig> {
    (
        proptest::collection::btree_map(ident(), fiset_decl(), 1..4),
        proptest::collection::vec((ident(), any::<bool>(), any::<bool>(), 0usize..3), 0..3),
        (1usize..5000, 1usize..5000),
        (
            proptest::option::of(0usize..20),
            proptest::option::of(0usize..5),
            any::<bool>(),
            proptest::option::of(text()),
        ),
    )
        .prop_map(
            |(fisets, rels, (matrix_size, oracle_size), (n_max, cutoff, oracle_check, out))| {
                let names: Vec<String> = fisets.keys().cloned().collect();
                let mut cfg = JobConfig {
                    fisets,
                    ..Default::default()
                };
                cfg.caps.matrix_size = matrix_size;
                cfg.caps.oracle_size = oracle_size;
                for (i, (name, symmetric, cross, gens)) in rels.into_iter().enumerate() {
                    let source = names[i % names.len()].clone();
                    let target = cross.then(|| names[(i + 1) % names.len()].clone());
                    let generators = (0..gens)
                        .map(|k| GeneratorDecl {
                            degree: k + 1,
                            x: format!("v:K=[{k}]"),
                            y: format!("v:K=[{k}]:coset=\"(1 2)\""),
                        })
                        .collect();
                    cfg.relations.insert(
                        name,
                        RelationDecl {
                            source,
                            target,
                            symmetric,
                            generators,
                            line: SourceLine(0),
                        },
                    );
                }
                cfg.job.command = Some("report".into());
                cfg.job.n_max = n_max;
                cfg.job.lambda_cutoff = cutoff;
                cfg.job.oracle_check = oracle_check;
                cfg.job.out = out;
                cfg
            },
        )
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(cfg in job_config()) {
        let text = cfg.serialize();
        let back = JobConfig::parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, cfg);
    }
}
