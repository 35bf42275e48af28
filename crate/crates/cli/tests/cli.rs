//! End-to-end runs of the `ihsimp` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

use ihsimp::complex::{FilteredComplex, Simplex};
use ihsimp_cli::document::ComplexDocument;

fn ihsimp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ihsimp")).args(args).output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).expect("JSON lines")).collect()
}

/// Writes `corpus generate NAME` into `dir`.
fn generate(dir: &TempDir, name: &str) -> PathBuf {
    let o = ihsimp(&["corpus", "generate", name]);
    assert!(o.status.success());
    let path = dir.path().join(format!("{name}.json"));
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn suspension_zero_homology() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "suspension");
    let o = ihsimp(&["ih", p(&f), "--perversity", "zero", "--ring", "Z"]);
    assert_eq!(o.status.code(), Some(0));
    let groups: Vec<String> = lines(&o).iter().map(|v| v["group"].as_str().unwrap().to_string()).collect();
    assert_eq!(groups, ["Z", "0", "Z"]);
}

#[test]
fn residual_suite_passes_on_suspension() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "suspension");
    let o = ihsimp(&["verify", p(&f), "--suite", "residual"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let records = lines(&o);
    assert!(records.iter().all(|r| r["verdict"] == "PASS"));
    assert_eq!(records.iter().filter(|r| r["check"] == "residual").count(), 2);
}

#[test]
fn skeleton_filtered_simplex_is_not_full() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "skeleton-simplex");
    let o = ihsimp(&["check-full", p(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(lines(&o)[0]["verdict"], "FAIL");
    let ok = ihsimp(&["check-full", p(&generate(&dir, "flag-simplex"))]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn every_suite_passes_on_the_full_corpus() {
    let dir = TempDir::new().unwrap();
    for name in ihsimp::corpus::full().iter().map(|e| e.name) {
        let o = ihsimp(&["verify", p(&generate(&dir, name)), "--suite", "all"]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(lines(&o).iter().all(|r| r["verdict"] == "PASS"), "{name}: {}", stdout(&o));
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "pinched-torus");
    for args in [vec!["verify", p(&f), "--suite", "all"], vec!["bih", p(&f), "--perversity", "top", "--ring", "Zp:3"]] {
        assert_eq!(ihsimp(&args).stdout, ihsimp(&args).stdout);
    }
    assert_eq!(ihsimp(&["corpus", "generate", "torus"]).stdout, ihsimp(&["corpus", "generate", "torus"]).stdout);
}

#[test]
fn subdivide_writes_an_equivalent_document() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "cone");
    let out = dir.path().join("sd.json");
    let o = ihsimp(&["subdivide", p(&f), "-k", "2", "-o", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(lines(&o)[0]["full"], true);
    for pv in ["zero", "top"] {
        let a = ihsimp(&["ih", p(&f), "--perversity", pv]);
        let b = ihsimp(&["ih", p(&out), "--perversity", pv]);
        let strip = |o: &Output| lines(o).iter().map(|v| v["group"].clone()).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
    }
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "sphere");
    assert_eq!(ihsimp(&["ih", p(&f), "--perversity", "nope"]).status.code(), Some(2));
    assert_eq!(ihsimp(&["ih", p(&f), "--perversity", "zero", "--ring", "Zp:4"]).status.code(), Some(2));
    assert_eq!(ihsimp(&["verify", p(&f), "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(ihsimp(&["corpus", "generate", "klein-bottle"]).status.code(), Some(2));
    assert_eq!(ihsimp(&["ih", "/nonexistent.json", "--perversity", "zero"]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"name\": \"x\",\n  \"n\": -1\n}\n").unwrap();
    let o = ihsimp(&["check-full", p(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn strata_table_addresses_table_perversities() {
    let dir = TempDir::new().unwrap();
    let f = generate(&dir, "pinched-torus");
    let table = lines(&ihsimp(&["strata", p(&f)]));
    let singular: Vec<&Value> = table.iter().filter(|s| s["regular"] == false).collect();
    assert_eq!(singular.len(), 1);
    let (level, index) = (singular[0]["level"].as_u64().unwrap(), singular[0]["index"].as_u64().unwrap());
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&f).unwrap()).unwrap();
    doc["perversities"] = serde_json::json!([
        {"name": "pinch", "kind": "table", "values": [{"level": level, "index": index, "value": 0}]}
    ]);
    let g = dir.path().join("table.json");
    std::fs::write(&g, doc.to_string()).unwrap();
    let a = lines(&ihsimp(&["ih", p(&g), "--perversity", "pinch"]));
    let b = lines(&ihsimp(&["ih", p(&g), "--perversity", "zero"]));
    let groups = |v: &[Value]| v.iter().map(|x| x["group"].clone()).collect::<Vec<_>>();
    assert_eq!(groups(&a), groups(&b));
}

fn complex() -> impl Strategy<Value = FilteredComplex> {
    (1usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(0..=n, 7),
            prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=n + 2), 1..6),
        )
            .prop_map(|(n, levels, facets)| {
                let facets: Vec<Simplex> =
                    facets.iter().map(|f| Simplex::from_ids(&f.iter().copied().collect::<Vec<_>>()).unwrap()).collect();
                FilteredComplex::from_vertex_levels(n, &facets, |v| levels[v.0 as usize]).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn documents_round_trip(k in complex()) {
        let doc = ComplexDocument::from_complex("random", &k, &[]);
        let back = ComplexDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.load().unwrap().complex, k);
    }
}
