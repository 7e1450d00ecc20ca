//! Golden reports. `UPDATE_GOLDEN=1 cargo test -p absorb-cli --test golden`
//! rewrites the expectations.

mod common;

use absorb_cli::doc::{build, emit_instance, parse_instance};
use absorb_cli::error::CliError;
use absorb_cli::gen::generate;
use absorb_core::{Error, Predicate, Verdict};
use serde_json::Value;

#[test]
fn golden_corpus() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for case in common::cases() {
        let run = common::run(&case.args);
        if update {
            common::store(&case, &run);
        }
        bad.extend(common::compare(&case, &run));
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn corpus_has_ten_documents() {
    let docs = std::fs::read_dir(common::golden_dir())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().path().extension().is_some_and(|x| x == "json"))
        .count();
    assert_eq!(docs, 10);
}

#[test]
fn text_and_structured_verdicts_agree() {
    for file in ["e24.json", "sum.json", "final.json", "z12.json", "idealization.json", "z4x4.json"] {
        let args = |fmt: &str| {
            ["check", file, "--predicate", "s2as,s-second,s2abs,strong2as", "--format", fmt].map(String::from).to_vec()
        };
        let text = common::run(&args("text")).stdout;
        let json: Value = serde_json::from_str(&common::run(&args("structured")).stdout).unwrap();
        let structured: Vec<String> = json["results"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| format!("{}: {}", r["predicate"].as_str().unwrap(), r["verdict"].as_str().unwrap()))
            .collect();
        let from_text: Vec<String> = text
            .lines()
            .filter(|l| l.starts_with("  "))
            .map(|l| l.trim().split(" (").next().unwrap().to_string())
            .collect();
        assert_eq!(from_text, structured, "{file}");
    }
}

#[test]
fn documents_round_trip() {
    for entry in std::fs::read_dir(common::golden_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "json") {
            continue;
        }
        let Ok(doc) = parse_instance(&std::fs::read_to_string(&path).unwrap()) else { continue };
        let emitted = emit_instance(&doc);
        assert_eq!(parse_instance(&emitted).unwrap(), doc, "{}", path.display());
        assert_eq!(emit_instance(&parse_instance(&emitted).unwrap()), emitted);
    }
}

#[test]
fn example_document_builds_the_z4_instance() {
    let text = std::fs::read_to_string(common::golden_dir().join("e24.json")).unwrap();
    let built = build(&parse_instance(&text).unwrap(), 4096).unwrap();
    assert_eq!(built.module.size(), 4);
    assert_eq!(built.mcs.elements(), vec![1, 3]);
    let n = &built.submodules.iter().find(|(name, _)| name == "N").unwrap().1;
    assert!(n.is_whole());
    let checker = absorb_core::Checker::with_defaults(&built.module);
    let r = checker.check(Predicate::S2AbsorbingSecond, n, &built.mcs).unwrap();
    assert_eq!((r.verdict, r.witness), (Verdict::True, Some(1)));
}

#[test]
fn parse_errors_are_positioned() {
    match parse_instance("") {
        Err(CliError::Syntax { line: 1, column: 0, .. }) => {}
        other => panic!("{other:?}"),
    }
    match parse_instance("{\n  \"ring\": { \"kind\": \"zn\", \"n\": 4 },\n  \"module\": 7\n}") {
        Err(CliError::Syntax { line: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn nilpotent_seed_is_a_semantic_error() {
    let doc = parse_instance(r#"{"ring":{"kind":"zn","n":4},"module":{"kind":"regular"},"mcs":{"seeds":[2]}}"#).unwrap();
    assert!(matches!(build(&doc, 4096), Err(CliError::Core(Error::InvalidMcs(_)))));
}

#[test]
fn generation_is_deterministic_and_valid() {
    for seed in 0..50 {
        let a = generate(seed, 16);
        assert_eq!(emit_instance(&a), emit_instance(&generate(seed, 16)));
        let built = build(&a, 16).unwrap();
        assert!(built.module.size() <= 16);
    }
    let first = common::run(&["gen", "--seed", "7", "--max-order", "16"].map(String::from));
    let second = common::run(&["gen", "--seed", "7", "--max-order", "16"].map(String::from));
    assert_eq!(first.stdout, second.stdout);
}
