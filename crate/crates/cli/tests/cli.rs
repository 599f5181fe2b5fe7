use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn twofib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twofib")).args(args).output().expect("binary runs")
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is a JSON report")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn bundled_two_bracket_parses_and_validates() {
    let o = twofib(&["nerve", &f("2[walking-arrow].json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["schema"], "twofib-report/1");
    assert_eq!(r["result"]["counts"][0], 2);
}

#[test]
fn empty_two_category_is_legal() {
    let o = twofib(&["nerve", &f("empty.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(report(&o)["result"]["counts"].as_array().unwrap().iter().all(|c| c == 0));
}

#[test]
fn malformed_inputs_exit_1_with_diagnostics() {
    let o = twofib(&["nerve", &f("malformed-missing-vcomp.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("vcomp: composite"), "{}", stderr(&o));
    let o = twofib(&["nerve", &f("interchange-violation.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("interchange fails"), "{}", stderr(&o));
    let o = twofib(&["nerve", &f("not-json.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = twofib(&["nerve", &f("no-such-file.json")]);
    assert_eq!(o.status.code(), Some(1));
    // usage errors are input errors too
    assert_eq!(twofib(&["gray", "2", "--cap", "2"]).status.code(), Some(1));
    assert_eq!(twofib(&["nerve", &f("2[pt].json"), "--top", "9"]).status.code(), Some(1));
}

#[test]
fn duality_on_the_vertex_inclusions() {
    let args = |v: &str| {
        vec!["duality".to_string(), "--source".into(), f("pt.json"), "--target".into(), f("walking-arrow.json"), "--functor".into(), f(v)]
    };
    let run = |v: &str| {
        let a = args(v);
        twofib(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    let o = run("vertex-0.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("AGREE(Yes)"), "{}", stderr(&o));
    let o = run("vertex-1.json");
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("AGREE(No)"), "{}", stderr(&o));
    assert_eq!(report(&o)["result"]["outcome"], "Agree");
}

#[test]
fn exit_codes_separate_failure_from_unknown() {
    let yes = twofib(&["check-cofinal", "--fixture", "bracket-pt-arrow-0"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = twofib(&["check-cofinal", "--fixture", "bracket-pt-arrow-1"]);
    assert_eq!(no.status.code(), Some(2));
    assert_eq!(twofib(&["contractible", "boundary:2"]).status.code(), Some(2));
    // contractible but not collapsible: stays undecided
    assert_eq!(twofib(&["contractible", "dunce"]).status.code(), Some(3));
    let spent = twofib(&["check-fibration", "--fixture", "walking-two-cell", "--budget", "5"]);
    assert_eq!(spent.status.code(), Some(3), "{}", stderr(&spent));
    assert_eq!(twofib(&["joyal", "--example", "feet-of-vee"]).status.code(), Some(2));
}

#[test]
fn two_functors_from_files() {
    let o = twofib(&[
        "check-fibration",
        "--source",
        &f("2[pt].json"),
        "--target",
        &f("2[walking-arrow].json"),
        "--functor",
        &f("2[vertex-0].json"),
        "--n-max",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(report(&o)["result"]["Fibration"].is_object());
    let o = twofib(&["ext", "--source", &f("walking-two-cell.json"), "--target", &f("walking-two-cell.json"), "--functor", &f("id-walking-two-cell.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // a functor file of the wrong size
    let o = twofib(&["ext", "--source", &f("2[pt].json"), "--target", &f("2[pt].json"), "--functor", &f("id-walking-two-cell.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_embed_cap_and_budgets() {
    let o = twofib(&["homology", "boundary:3", "--cap", "5", "--collapse-states", "77"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    assert_eq!(r["cap"], 5);
    assert_eq!(r["budgets"]["collapse_states"], 77);
    let groups = &r["result"]["homology"]["groups"];
    assert_eq!(groups[2]["rank"], 1);
    assert_eq!(groups[1]["rank"], 0);
}

#[test]
fn laxlim_worked_instance() {
    let count = |marking: &str| {
        let o = twofib(&["laxlim", "--example", "worked-instance", "--marking", marking, "--oracle"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let r = report(&o);
        assert_eq!(r["result"]["oracle"]["pass"], true);
        r["result"]["limit"]["cat"]["objects"].as_array().unwrap().len()
    };
    assert_eq!(count("none"), 1);
    assert_eq!(count("g"), 1);
    assert_eq!(count("both"), 0);
    let o = twofib(&["laxlim", "--shape", "arrow", "--a", &f("pt.json"), "--b", &f("walking-arrow.json"), "--f", &f("vertex-0.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn corpus_sections_are_deterministic() {
    let run = || twofib(&["corpus", "--section", "4", "--json"]);
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let table = twofib(&["corpus", "--section", "5"]);
    assert_eq!(table.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&table.stdout).starts_with("PASS 5 "));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("twofib-cli-test-{}.json", std::process::id()));
    let o = twofib(&["gray", "1", "--marked", "sharp", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["command"], "gray");
    std::fs::remove_file(path).ok();
}
