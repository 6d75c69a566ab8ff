//! End-to-end tests of the `lms` binary: exit codes, JSON shape and
//! byte-level determinism of repeated invocations.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lms() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lms"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    lms().args(args).current_dir(dir).output().expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    fn new(tag: &str) -> Fixtures {
        let dir = std::env::temp_dir().join(format!("lms-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).expect("temp dir");
        let write = |name: &str, body: &str| {
            std::fs::write(dir.join(name), body).expect("fixture written");
        };
        write(
            "c3.json",
            r#"{"labels":["a","b","c"],"d":[[0,1,2.5],[0,0,1],[0,0,0]],"seq":[0,2],"total":true}"#,
        );
        write(
            "c3tight.json",
            r#"{"labels":["a","b","c"],"d":[[0,1,2.0],[0,0,1],[0,0,0]],"seq":[0,2]}"#,
        );
        write("antichain3.json", r#"{"labels":["a","b","c"],"d":[[0,0,0],[0,0,0],[0,0,0]]}"#,);
        write(
            "halfline123.json",
            r#"{"labels":["1","2","3"],"d":[[0,0,0],[1,0,0],[2,1,0]]}"#,
        );
        write(
            "dup.json",
            r#"{"labels":["a","b","b2","c"],"d":[[0,1,1,2.5],[0,0,0,1],[0,0,0,1],[0,0,0,0]]}"#,
        );
        Fixtures { dir }
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

#[test]
fn check_passes_and_refutes_with_exit_codes() {
    let fx = Fixtures::new("check");
    let good = run(&["check", "c3.json"], &fx.dir);
    assert_eq!(good.status.code(), Some(0));
    let doc = json_of(&good);
    assert_eq!(doc["format"], 1);
    assert_eq!(doc["reverse_triangle"]["pass"], true);
    assert_eq!(doc["distinguishing"]["pass"], true);

    let bad = run(&["check", "antichain3.json"], &fx.dir);
    assert_eq!(bad.status.code(), Some(2));
    let doc = json_of(&bad);
    assert_eq!(doc["distinguishing"]["pass"], false);
    assert_eq!(doc["distinguishing"]["witness"], serde_json::json!(["a", "b"]));
}

#[test]
fn malformed_files_exit_one_with_diagnostics() {
    let fx = Fixtures::new("badfile");
    std::fs::write(fx.dir.join("broken.json"), "{\"labels\": [").unwrap();
    let out = run(&["check", "broken.json"], &fx.dir);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "diagnostic must carry a position: {err}");

    std::fs::write(
        fx.dir.join("negative.json"),
        r#"{"labels":["a","b"],"d":[[0,-1],[0,0]]}"#,
    )
    .unwrap();
    let out = run(&["check", "negative.json"], &fx.dir);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("d[0][1]"), "diagnostic must name the entry: {err}");
}

#[test]
fn relations_and_boundaries() {
    let fx = Fixtures::new("rel");
    let out = run(&["relations", "c3.json", "--eps", "1.2"], &fx.dir);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["chronology"], serde_json::json!([["a", "b"], ["a", "c"], ["b", "c"]]));
    assert_eq!(doc["chronology_eps"]["pairs"], serde_json::json!([["a", "c"]]));
    assert_eq!(doc["report"]["all_pass"], true);

    // d(x,y) = (x−y)₊ runs against numeric order: 1 is the future boundary
    let out = run(&["boundaries", "halfline123.json"], &fx.dir);
    let doc = json_of(&out);
    assert_eq!(doc["future"], serde_json::json!(["1"]));
    assert_eq!(doc["past"], serde_json::json!(["3"]));
    assert_eq!(doc["interior"], serde_json::json!(["2"]));
}

#[test]
fn time_values_and_normalization() {
    let fx = Fixtures::new("time");
    let out = run(&["time", "c3.json"], &fx.dir);
    let doc = json_of(&out);
    let tau_a = doc["tau"]["a"].as_f64().unwrap();
    assert!((tau_a - (-3.0 / 14.0)).abs() < 1e-15);
    assert_eq!(doc["monotone"], true);

    let out = run(&["time", "c3.json", "--normalize", "a,c"], &fx.dir);
    let doc = json_of(&out);
    assert_eq!(doc["tau"]["a"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["tau"]["c"].as_f64().unwrap(), 1.0);
    assert!((doc["tau"]["b"].as_f64().unwrap() - 15.0 / 26.0).abs() < 1e-15);
}

#[test]
fn length_matrix_and_chains() {
    let fx = Fixtures::new("len");
    let out = run(&["length", "c3.json"], &fx.dir);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["length_property"]["ok"], true);
    assert_eq!(doc["dcheck"][0][2].as_f64().unwrap(), 2.5);

    // tie on length 2 refines through b; slack diagonal keeps the direct step
    let out = run(&["length", "c3tight.json", "--from", "a", "--to", "c"], &fx.dir);
    assert_eq!(json_of(&out)["chain"], serde_json::json!(["a", "b", "c"]));
    let out = run(&["length", "c3.json", "--from", "a", "--to", "c"], &fx.dir);
    let doc = json_of(&out);
    assert_eq!(doc["chain"], serde_json::json!(["a", "c"]));
    assert_eq!(doc["maximal"], true);
    let out = run(&["length", "c3.json", "--from", "c", "--to", "a"], &fx.dir);
    assert_eq!(json_of(&out)["chain"], serde_json::Value::Null);
}

#[test]
fn quotient_merges_duplicates_and_exports_sidecar() {
    let fx = Fixtures::new("quot");
    let out = run(&["quotient", "dup.json", "--region", "a,b,b2,c"], &fx.dir);
    let doc = json_of(&out);
    assert_eq!(doc["classes"]["C1"], serde_json::json!(["b", "b2"]));
    assert_eq!(doc["space"]["labels"], serde_json::json!(["C0", "C1", "C2"]));
    assert_eq!(doc["kernel"], serde_json::json!([]));

    // antichain region collapses into the kernel; --spacelike-infinity
    // synthesizes the i0 class
    let out = run(
        &["quotient", "antichain3.json", "--region", "a,b,c", "--spacelike-infinity"],
        &fx.dir,
    );
    let doc = json_of(&out);
    assert_eq!(doc["classes"]["i0"], serde_json::json!(["a", "b", "c"]));
    assert_eq!(doc["space"]["labels"], serde_json::json!(["i0"]));
}

#[test]
fn quasimetric_report_and_exit() {
    let fx = Fixtures::new("qm");
    let out = run(&["quasimetric", "c3.json"], &fx.dir);
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["report"]["pass"], true);
    assert_eq!(doc["p"][0][1].as_f64().unwrap(), 0.0);
    assert!(doc["p"][1][0].as_f64().unwrap() > 0.0);
    // a sequence can also come from the flag
    let out = run(&["quasimetric", "c3.json", "--seq", "a,c", "--total"], &fx.dir);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gh_search_exit_codes() {
    let fx = Fixtures::new("ghsearch");
    let out = run(
        &["gh", "search", "c3.json", "c3.json", "--m", "2", "--eps", "0.1"],
        &fx.dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json_of(&out);
    assert_eq!(doc["found"], true);
    assert_eq!(doc["distortion"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["verified"], true);

    // anchors force |2.5 − 2| = 0.5 ≥ 0.4: certified infeasible
    let out = run(
        &["gh", "search", "c3.json", "c3tight.json", "--m", "2", "--eps", "0.4"],
        &fx.dir,
    );
    assert_eq!(out.status.code(), Some(2));
    let doc = json_of(&out);
    assert_eq!(doc["found"], false);
    assert_eq!(doc["certified"], true);
}

#[test]
fn gh_certify_constant_family() {
    let fx = Fixtures::new("ghcert");
    std::fs::write(
        fx.dir.join("exp.json"),
        r#"{
            "family": {"generator": "constant", "ramp": [0, 0]},
            "target": "c3.json",
            "schedule": {"deltas": [0.5, 0.25]},
            "probe_range": [0, 1],
            "m_max": 2
        }"#,
    )
    .unwrap();
    let out = run(&["gh", "certify", "exp.json"], &fx.dir);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json_of(&out);
    assert_eq!(doc["verdict"]["kind"], "consistent");
    // threaded run must produce the identical document
    let threaded = lms()
        .args(["--threads", "3", "gh", "certify", "exp.json"])
        .current_dir(&fx.dir)
        .output()
        .unwrap();
    assert_eq!(out.stdout, threaded.stdout);
}

#[test]
fn samples_are_byte_reproducible() {
    let fx = Fixtures::new("sample");
    let a = run(
        &["sample", "minkowski", "--dim", "2", "--n", "25", "--mode", "poisson", "--seed", "42"],
        &fx.dir,
    );
    let b = run(
        &["sample", "minkowski", "--dim", "2", "--n", "25", "--mode", "poisson", "--seed", "42"],
        &fx.dir,
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "identical invocations must be byte-identical");

    let c = run(&["sample", "causet", "--kind", "links", "--n", "8", "--seed", "1"], &fx.dir);
    let doc = json_of(&c);
    assert_eq!(doc["labels"].as_array().unwrap().len(), 8);

    // written files load back through every subcommand entry point
    let out = run(
        &["sample", "halfline", "--points", "1,2,3", "--shift", "2", "-o", "hl.json"],
        &fx.dir,
    );
    assert_eq!(out.status.code(), Some(0));
    let check = run(&["check", "hl.json"], &fx.dir);
    assert_eq!(check.status.code(), Some(0));
    let real = run(&["sample", "realline", "--depth", "2", "--fill", "10"], &fx.dir);
    assert_eq!(real.status.code(), Some(0));
}
