use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use ordinal::cli::run;
use ordinal::valuation::{Rule, Violation};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn ordinal(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ordinal").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_certifies_the_three_atom_partition_lattice() {
    let r = ordinal(&["poset", "check", "--input", &fixture("partitions3.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r);
    assert_eq!(v["certificate"]["is_lattice"], true);
    assert_eq!(v["elements"], 5);
    assert_eq!(v["bottom"], "a|b|c");
    assert_eq!(v["top"], "abc");
    assert_eq!(
        v["join_irreducibles"],
        serde_json::json!(["a|bc", "b|ac", "c|ab"])
    );
    assert_eq!(v["consistency"]["violations"], serde_json::json!([]));
}

#[test]
fn audit_of_derived_valuation_passes() {
    let r = ordinal(&[
        "rules",
        "audit",
        "--poset",
        &fixture("b3.json"),
        "--atoms",
        &fixture("atoms.json"),
        "--rules",
        "sum,chain,diamond,context",
        "--tol",
        "1e-9",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r);
    assert_eq!(v["passed"], true);
    let reports = v["reports"].as_array().unwrap();
    let rules: Vec<&str> = reports
        .iter()
        .map(|r| r["rule"].as_str().unwrap())
        .collect();
    assert_eq!(rules, ["sum", "chain", "diamond", "context"]);
    for rep in reports {
        assert_eq!(rep["violations"], serde_json::json!([]));
        assert_eq!(rep["tolerance"], 1e-9);
        assert!(rep["checked"].as_u64().unwrap() > 0);
        assert!(rep["skipped"].is_u64());
    }
}

#[test]
fn audit_finds_the_poset_through_the_valuation_file() {
    let r = ordinal(&["rules", "audit", "--atoms", &fixture("atoms.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert_eq!(json(&r)["reports"].as_array().unwrap().len(), 6);
}

#[test]
fn interval_table_agrees_across_frames() {
    let r = ordinal(&[
        "spacetime",
        "interval",
        "--scene",
        &fixture("boostdemo.json"),
        "--events",
        "e1,e2",
        "--frames",
        "rest,k=2",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v = json(&r);
    assert_eq!(v["invariant"], true);
    let frames = v["frames"].as_array().unwrap();
    let cells =
        |f: &Value| ["dp", "dq", "dt", "dx", "ds2"].map(|k| f[k].as_str().unwrap().to_owned());
    assert_eq!(cells(&frames[0]), ["3", "1", "2", "1", "3"]);
    assert_eq!(cells(&frames[1]), ["6", "1/2", "13/4", "11/4", "3"]);

    let text = ordinal(&[
        "--format",
        "text",
        "spacetime",
        "interval",
        "--scene",
        &fixture("boostdemo.json"),
        "--events",
        "e1,e2",
        "--frames",
        "rest,k=3/2,k=2",
    ]);
    assert_eq!(text.code, 0);
    let lines: Vec<&str> = text.out.lines().collect();
    assert!(lines[0].starts_with("frame"));
    assert_eq!(lines.len(), 5);
    assert!(lines[1..4]
        .iter()
        .all(|l| l.split_whitespace().last() == Some("3")));
}

#[test]
fn not_a_lattice_exits_one_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let bowtie = write(
        dir.path(),
        "bowtie.json",
        r#"{"elements": ["a","b","c","d"], "covers": [["a","c"],["a","d"],["b","c"],["b","d"]]}"#,
    );
    let r = ordinal(&["poset", "check", "--input", &bowtie]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["certificate"]["witness"], serde_json::json!(["a", "b"]));
    assert_eq!(v["certificate"]["missing"], "join");
    let t = ordinal(&["poset", "check", "--input", &bowtie, "--format", "text"]);
    assert_eq!(t.code, 1);
    assert!(t
        .out
        .contains("no: `a` and `b` have no unique least upper bound"));
}

fn perturbed_total_valuation(dir: &Path) -> String {
    let values = r#"{"poset": "POSET", "values": {
        "{}": 0, "{a}": 1, "{b}": 2, "{c}": 3,
        "{a,b}": 3, "{a,c}": 4, "{b,c}": 5, "{a,b,c}": 6.5}}"#;
    write(
        dir,
        "values.json",
        &values.replace("POSET", &fixture("b3.json")),
    )
}

#[test]
fn violations_exit_one_and_text_lines_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let values = perturbed_total_valuation(dir.path());
    let j = ordinal(&["rules", "audit", "--values", &values]);
    assert_eq!(j.code, 1, "{}", j.err);
    let report = json(&j);
    assert_eq!(report["passed"], false);

    let t = ordinal(&["rules", "audit", "--values", &values, "--format", "text"]);
    assert_eq!(t.code, 1);
    let from_text: Vec<(Rule, Violation)> = t
        .out
        .lines()
        .filter(|l| l.starts_with("violation\t"))
        .map(|l| Violation::from_text_line(l).expect("well-formed violation line"))
        .collect();
    let from_json: Vec<(Rule, Violation)> = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|rep| {
            let rule: Rule = serde_json::from_value(rep["rule"].clone()).unwrap();
            rep["violations"]
                .as_array()
                .unwrap()
                .iter()
                .map(move |v| (rule, serde_json::from_value(v.clone()).unwrap()))
        })
        .collect();
    assert!(!from_text.is_empty());
    assert_eq!(from_text, from_json);
    assert!(from_text.iter().any(|(rule, _)| *rule == Rule::Sum));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let values = perturbed_total_valuation(dir.path());
    let scene = fixture("boostdemo.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["poset", "check", "--input", "PARTS"],
        vec!["poset", "export-dot", "--input", "PARTS"],
        vec!["poset", "gen", "partition", "--atoms", "a,b,c,d"],
        vec!["rules", "audit", "--values", &values],
        vec!["--format", "text", "rules", "audit", "--values", &values],
        vec![
            "info", "mutual", "--dist", "DIST", "--a", "a|bc", "--b", "b|ac",
        ],
        vec!["spacetime", "project", "--scene", &scene],
        vec![
            "spacetime",
            "interval",
            "--scene",
            &scene,
            "--events",
            "e1,e2",
            "--frames",
            "rest,k=3/2,k=2",
        ],
    ];
    let (parts, dist) = (fixture("partitions3.json"), fixture("dist.json"));
    for cmd in commands {
        let cmd: Vec<&str> = cmd
            .into_iter()
            .map(|a| match a {
                "PARTS" => parts.as_str(),
                "DIST" => dist.as_str(),
                other => other,
            })
            .collect();
        let (a, b) = (ordinal(&cmd), ordinal(&cmd));
        assert_eq!(
            (a.code, &a.out, &a.err),
            (b.code, &b.out, &b.err),
            "{cmd:?}"
        );
        assert!(!a.out.is_empty());
    }
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(dir.path(), "broken.json", "{\"elements\": [");
    let cyclic = write(
        dir.path(),
        "cyclic.json",
        r#"{"elements": ["a","b"], "covers": [["a","b"],["b","a"]]}"#,
    );
    let redundant = write(
        dir.path(),
        "redundant.json",
        r#"{"elements": ["a","b","c"], "covers": [["a","b"],["b","c"],["a","c"]]}"#,
    );
    let cases: Vec<Vec<&str>> = vec![
        vec!["poset", "check", "--input", &broken],
        vec!["poset", "check", "--input", &cyclic],
        vec!["poset", "check", "--input", &redundant],
        vec!["poset", "check", "--input", "/no/such/file.json"],
        vec!["poset", "check", "--inptu", "x.json"],
        vec!["poset", "frobnicate"],
        vec!["--format", "yaml", "poset", "check", "--input", &broken],
        vec!["rules", "audit", "--poset", "b3.json"],
        vec!["poset", "gen", "boolean", "--atoms", "a,a"],
        vec!["poset", "gen", "grid", "--n", "0"],
    ];
    for args in cases {
        let r = ordinal(&args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.out.is_empty(), "{args:?}: {}", r.out);
        assert!(!r.err.is_empty(), "{args:?}");
    }
    let product = ordinal(&[
        "rules",
        "audit",
        "--atoms",
        &fixture("atoms.json"),
        "--rules",
        "product",
    ]);
    assert_eq!(product.code, 2);
    let unknown = ordinal(&[
        "rules",
        "audit",
        "--atoms",
        &fixture("atoms.json"),
        "--rules",
        "sum,nope",
    ]);
    assert_eq!(unknown.code, 2);
    assert!(unknown.err.contains("unknown rule `nope`"));
}

#[test]
fn help_exits_zero() {
    let r = ordinal(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("spacetime"));
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let target_s = target.to_string_lossy().into_owned();
    let parts = fixture("partitions3.json");
    let to_file = ordinal(&["poset", "check", "--input", &parts, "--output", &target_s]);
    assert_eq!(to_file.code, 0);
    assert!(to_file.out.is_empty());
    let to_stdout = ordinal(&["poset", "check", "--input", &parts]);
    assert_eq!(fs::read_to_string(&target).unwrap(), to_stdout.out);
}

#[test]
fn generators_reproduce_the_fixtures() {
    let r = ordinal(&["poset", "gen", "partition", "--atoms", "a,b,c"]);
    assert_eq!(
        r.out,
        fs::read_to_string(fixture("partitions3.json")).unwrap()
    );
    let r = ordinal(&["poset", "gen", "boolean", "--atoms", "a,b,c"]);
    assert_eq!(r.out, fs::read_to_string(fixture("b3.json")).unwrap());
    let grid = json(&ordinal(&["poset", "gen", "grid", "--n", "3"]));
    assert_eq!(grid["elements"].as_array().unwrap().len(), 9);
    let divisors = json(&ordinal(&["poset", "gen", "divisors", "--n", "60"]));
    assert_eq!(divisors["elements"].as_array().unwrap().len(), 12);
}

#[test]
fn dot_has_one_node_per_element_and_one_edge_per_cover() {
    let r = ordinal(&[
        "poset",
        "export-dot",
        "--input",
        &fixture("partitions3.json"),
    ]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("digraph"));
    assert_eq!(r.out.matches("[label=").count(), 5);
    assert_eq!(r.out.matches(" -> ").count(), 6);
    assert!(r.out.contains("\"a|b|c\" -> \"a|bc\";"));
}

#[test]
fn information_commands() {
    let dist = fixture("dist.json");
    let h = json(&ordinal(&[
        "info",
        "entropy",
        "--dist",
        &dist,
        "--partition",
        "a|bc",
    ]));
    assert_eq!(h["entropy"], 1.0);
    let m = json(&ordinal(&[
        "info", "mutual", "--dist", &dist, "--a", "a|bc", "--b", "a|bc",
    ]));
    assert_eq!(m["I"], m["H_A"]);
    assert_eq!(m["joint"], "a|bc");
    let mismatch = ordinal(&["info", "entropy", "--dist", &dist, "--partition", "a|b"]);
    assert_eq!(mismatch.code, 2);
}

#[test]
fn desynchronized_frames_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let scene = write(
        dir.path(),
        "desync.json",
        r#"{"events": [{"id": "e1", "t": "0", "x": "0"}, {"id": "e2", "t": "2", "x": "1"}],
            "chains": [
              {"id": "P", "k": "1", "tick": "1", "origin": {"t": "0", "x": "0"}, "range": [0, 200]},
              {"id": "Q", "k": "1", "tick": "2", "origin": {"t": "0", "x": "5"}, "range": [0, 200]},
              {"id": "Q1", "k": "1", "tick": "1", "origin": {"t": "0", "x": "5"}, "range": [0, 200]}
            ]}"#,
    );
    let sync = ordinal(&[
        "spacetime",
        "sync",
        "--scene",
        &scene,
        "--frames",
        "P:Q,P:Q1",
    ]);
    assert_eq!(sync.code, 1, "{}", sync.err);
    let rows = json(&sync);
    assert_eq!(rows[0]["synchronized"], false);
    assert_eq!(rows[1]["synchronized"], true);
    assert_eq!(rows[1]["range"], serde_json::json!([0, 100]));

    let ranged = ordinal(&[
        "spacetime",
        "sync",
        "--scene",
        &scene,
        "--frames",
        "P:Q1",
        "--range",
        "10,40",
    ]);
    assert_eq!(ranged.code, 0, "{}", ranged.err);
    assert_eq!(json(&ranged)[0]["range"], serde_json::json!([10, 40]));
    for bad in ["5", "1,2,3", "9,3"] {
        let r = ordinal(&[
            "spacetime",
            "sync",
            "--scene",
            &scene,
            "--frames",
            "P:Q1",
            "--range",
            bad,
        ]);
        assert_eq!(r.code, 2, "--range {bad}");
    }

    let checked = ordinal(&[
        "spacetime",
        "interval",
        "--scene",
        &scene,
        "--events",
        "e1,e2",
        "--frames",
        "P:Q1,P:Q",
    ]);
    assert_eq!(checked.code, 2);
    assert!(checked.err.contains("not synchronized"));

    let forced = ordinal(&[
        "spacetime",
        "interval",
        "--scene",
        &scene,
        "--events",
        "e1,e2",
        "--frames",
        "P:Q1,P:Q",
        "--unchecked",
    ]);
    assert_eq!(forced.code, 1);
    assert_eq!(json(&forced)["invariant"], false);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ordinal");
    let ok = Command::new(bin)
        .args(["poset", "check", "--input", &fixture("partitions3.json")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["poset", "check"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
