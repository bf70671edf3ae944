//! End-to-end jobs through the command-line layer: documents, exit codes,
//! output files and determinism.

use std::path::PathBuf;

use lie_gradings::cli::{main_with_args, run, Flags, JobSpec, Mode};
use serde_json::{json, Value};

fn job(mode: Mode, flags: Flags) -> Value {
    let spec = JobSpec::from_flags(mode, &flags).unwrap();
    serde_json::from_str(&run(&spec).unwrap().document.to_json()).unwrap()
}

fn root_flags(ty: &str, order: Option<&str>, j: &str) -> Flags {
    Flags { root_type: Some(ty.into()), order: order.map(Into::into), j: Some(j.into()), ..Flags::default() }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lie-gradings-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn exit_code(args: &[&str]) -> i32 {
    main_with_args(std::iter::once("lie-gradings").chain(args.iter().copied()).map(std::ffi::OsString::from))
}

#[test]
fn restrict_e7_a3_a2() {
    let doc = job(Mode::Restrict, root_flags("E7", Some("3,4,2,5,6,7,1"), "3,4,5,6,7"));
    assert_eq!(doc["format"], "lie-gradings-result");
    let r = &doc["result"];
    assert_eq!(r["I"], json!([1, 2]));
    assert_eq!(r["cartan_matrix"], json!([["2/1", "-24/7"], ["-1/1", "2/1"]]));
    assert_eq!(r["chambers"], 12);
    let st = &r["statistics"];
    assert_eq!(st["exponents"], json!([1, 5]));
    assert_eq!(st["coxeter_h"], 6);
    assert_eq!(st["levi_class_size"], 3);
    assert_eq!(st["restricted_weyl_order"], 4);
}

/// The second worked example, with the other reading of the nodes:
/// Levi A4+A1 inside E7.
#[test]
fn grading_e7_a4_a1() {
    let flags = root_flags("E7", Some("3,2,4,5,6,7,1"), "3,4,5,6,7");
    let restricted = job(Mode::Restrict, flags.clone());
    assert_eq!(restricted["result"]["cartan_matrix"], json!([["2/1", "-16/7"], ["-4/3", "2/1"]]));
    let g = job(Mode::Grading, flags);
    let r = &g["result"];
    assert_eq!(r["labelled_diagram"], "2,-5,2,2,2,2/-4");
    let sequences: Vec<(String, Value)> = r["restricted_roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| (x["root"]["name"].as_str().unwrap().to_string(), x["multiplicities"].clone()))
        .collect();
    let expected = [
        ("α1", json!([4])),
        ("α2", json!([3, 5])),
        ("α1+α2", json!([1, 3, 5, 7])),
        ("α1+2α2", json!([2, 6])),
        ("2α1+2α2", json!([4])),
        ("2α1+3α2", json!([1])),
    ];
    assert_eq!(sequences.len(), expected.len());
    for (name, seq) in expected {
        let found = sequences.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("{name} missing"));
        assert_eq!(found.1, seq, "{name}");
    }
}

#[test]
fn pyramid_sl_332_characteristics() {
    let flags = Flags {
        root_type: Some("sl".into()),
        partition: Some("3,3,2".into()),
        integral: true,
        ..Flags::default()
    };
    let doc = job(Mode::Pyramid, flags);
    let mut chars: Vec<&str> =
        doc["result"]["classes"].as_array().unwrap().iter().map(|c| c["characteristic"].as_str().unwrap()).collect();
    chars.sort();
    assert_eq!(chars, ["0,0,2,0,0,2,0", "0,1,1,0,1,1,0", "0,2,0,0,2,0,0"]);
}

#[test]
fn g2_empty_levi_row() {
    let doc = job(Mode::Restrict, root_flags("G2", None, ""));
    let st = &doc["result"]["statistics"];
    assert_eq!(st["hyperplanes"], 6);
    assert_eq!(st["chambers"], 12);
    assert_eq!(st["restricted_weyl_order"], 12);
    assert_eq!(st["levi_class_size"], 1);
    assert_eq!(st["coxeter_h"], 6);
    assert_eq!(st["exponents"], json!([1, 5]));
}

#[test]
fn exit_codes() {
    let dir = scratch("exit");
    let out = dir.join("g2.json");
    assert_eq!(exit_code(&["restrict", "--type", "G2", "--J", "1", "--json", out.to_str().unwrap()]), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["provenance"]["budget_exceeded"], false);

    assert_eq!(exit_code(&["restrict", "--type", "E9", "--J", "1"]), 1);
    assert_eq!(exit_code(&["pyramid", "--type", "sp", "--partition", "3"]), 1);
    assert_eq!(exit_code(&["restrict", "--type", "G2", "--bogus"]), 1);

    let partial = dir.join("partial.json");
    let code = exit_code(&["restrict", "--type", "E7", "--J", "1,3,5,6,7", "--budget", "10", "--json", partial.to_str().unwrap()]);
    assert_eq!(code, 2);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&partial).unwrap()).unwrap();
    assert_eq!(doc["provenance"]["budget_exceeded"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn dot_and_svg_outputs() {
    let dir = scratch("outputs");
    let dot = dir.join("e6.dot");
    let svg = dir.join("e7.svg");
    let json_out = dir.join("e6.json");
    let args = ["grading", "--type", "E6", "--J", "1,3,4", "--dot", dot.to_str().unwrap(), "--json", json_out.to_str().unwrap()];
    assert_eq!(exit_code(&args), 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches(" -- ").count(), 6);
    assert_eq!(exit_code(&["render", "--type", "E7", "--J", "1,3,5,6,7", "--svg", svg.to_str().unwrap()]), 0);
    let picture = std::fs::read_to_string(&svg).unwrap();
    assert!(picture.contains("<svg") && picture.trim_end().ends_with("</svg>"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_file_supplies_defaults() {
    let dir = scratch("config");
    let cfg = dir.join("job.conf");
    let out = dir.join("out.json");
    std::fs::write(&cfg, "# E7 example\ntype = E7\norder = 3,4,2,5,6,7,1\nJ = 3,4,5,6,7\n").unwrap();
    let code = exit_code(&["restrict", "--config", cfg.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["result"]["chambers"], 12);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn documents_are_deterministic() {
    let flags = Flags {
        root_type: Some("sp".into()),
        partition: Some("2,2,1,1".into()),
        integral: true,
        graph: true,
        seed: Some(7),
        ..Flags::default()
    };
    let spec = JobSpec::from_flags(Mode::Pyramid, &flags).unwrap();
    let a = run(&spec).unwrap();
    let b = run(&spec).unwrap();
    assert_eq!(a.document.to_json(), b.document.to_json());
    assert_eq!(a.dot, b.dot);
    let g = root_flags("E6", None, "1,3,4");
    let spec = JobSpec::from_flags(Mode::Grading, &Flags { graph: true, seed: Some(3), ..g }).unwrap();
    assert_eq!(run(&spec).unwrap().document.to_json(), run(&spec).unwrap().document.to_json());
}
