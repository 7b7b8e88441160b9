use std::path::PathBuf;
use std::process::{Command, Output};

fn asset(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "assets", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn tangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangle"))
        .args(args)
        .env_remove("TANGLE_FUEL")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    tangle(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(tangle(args).stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_slice(&tangle(&full).stdout).expect("valid JSON")
}

#[test]
fn run_exit_codes() {
    let demo = asset("demo.tangle");
    let deciders = asset("deciders.tangle");
    assert_eq!(code(&["run", &demo, "stop"]), 0);
    assert_eq!(code(&["run", &demo, "go"]), 10);
    assert_eq!(code(&["--fuel", "10", "run", &demo, "diag", "diag"]), 12);
    assert_eq!(code(&["run", &demo, "nosuch"]), 2);
    assert_eq!(code(&["run", &demo, "halts"]), 2);
    assert_eq!(code(&["run", &demo, "diag"]), 2);
    assert_eq!(code(&["run", "/nonexistent/file", "stop"]), 2);
    assert_eq!(code(&["--fuel", "0", "run", &demo, "stop"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["run", &deciders, "stop"]), 0);
}

#[test]
fn fuel_exhaustion_exit_code_and_env_fuel() {
    let dir = std::env::temp_dir().join(format!("tangle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("deep.tangle");
    std::fs::write(&file, "procedure deep; begin deep; print ('x') end\n").unwrap();
    let f = file.to_string_lossy();
    assert_eq!(code(&["--fuel", "50", "run", &f, "deep"]), 11);
    let out = Command::new(env!("CARGO_BIN_EXE_tangle"))
        .args(["--json", "run", &f, "deep"])
        .env("TANGLE_FUEL", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["outcome"]["steps"], 7);
    assert_eq!(v["result"]["outcome"]["limit"], "steps");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn run_output_and_trace() {
    let demo = asset("demo.tangle");
    assert_eq!(
        stdout(&["run", &demo, "stop"]),
        "stop () -> Halted after 1 steps, output \"\"\n"
    );
    assert_eq!(
        stdout(&["run", &demo, "go"]),
        "go () -> Diverges: configuration after step 0 repeats after step 1\n"
    );
    let out = tangle(&["--trace", "run", &demo, "printA"]);
    let trace = String::from_utf8(out.stderr).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 3, "{trace}");
    assert!(lines[0].starts_with("1 printA@0 depth=1"), "{trace}");
}

#[test]
fn classify_exit_codes_and_json() {
    assert_eq!(code(&["classify", &asset("liar.eqn")]), 20);
    assert_eq!(code(&["classify", &asset("bg.eqn")]), 20);
    assert_eq!(code(&["classify", &asset("goedel.eqn")]), 20);
    assert_eq!(code(&["classify", &asset("truthteller.eqn")]), 21);
    assert_eq!(code(&["classify", &asset("h.eqn")]), 21);
    assert_eq!(code(&["classify", &asset("const.eqn")]), 0);
    assert_eq!(code(&["classify", &asset("demo.tangle")]), 2);
    let v = json(&["classify", &asset("truthteller.eqn")]);
    assert_eq!(v["result"]["type"], "classification");
    assert_eq!(v["exit_status"], 21);
    let c = &v["result"]["classification"];
    assert_eq!(c["label"], "Underdetermined");
    assert_eq!(c["count"], 2);
    assert_eq!(c["models"], serde_json::json!([{"U": true}, {"U": false}]));
}

#[test]
fn refute_exit_codes() {
    let d = asset("deciders.tangle");
    assert_eq!(code(&["refute", &d, "alwaysTrue"]), 0);
    assert_eq!(code(&["refute", &d, "alwaysFalse", "--mode", "what"]), 0);
    assert_eq!(code(&["refute", &d, "alwaysTrue", "--mode", "prints-a"]), 0);
    assert_eq!(code(&["refute", &d, "looper"]), 30);
    assert_eq!(code(&["refute", &d, "halts"]), 30);
    assert_eq!(code(&["refute", &d, "deep"]), 31);
    assert_eq!(
        code(&["refute", &d, "alwaysTrue", "--decider-fuel", "1"]),
        31
    );
    assert_eq!(code(&["refute", &d, "nosuch"]), 2);
    assert_eq!(code(&["refute", &d, "evenDigit"]), 2);
    assert_eq!(code(&["refute", &d, "stop"]), 2);
    let v = json(&["refute", &d, "alwaysFalse"]);
    assert_eq!(v["result"]["type"], "refutation");
    assert_eq!(v["result"]["verdict"], "WrongAnswer");
    assert_eq!(v["result"]["witness"]["kind"], "halting_trace");
    let v = json(&["refute", &d, "alwaysTrue"]);
    assert_eq!(v["result"]["witness"]["kind"], "cycle");
}

#[test]
fn refute_trace_prints_transcript() {
    let d = asset("deciders.tangle");
    let plain = stdout(&["refute", &d, "alwaysTrue"]);
    let traced = stdout(&["--trace", "refute", &d, "alwaysTrue"]);
    assert!(plain.contains("transcript: 9 lines"), "{plain}");
    assert!(traced.contains("1 diag@0 depth=1"), "{traced}");
}

#[test]
fn diag_prints_the_adversary() {
    assert_eq!(
        stdout(&["diag", &asset("demo.tangle"), "halts"]),
        "procedure diag_1 (s: string);\nbegin\n  if halts (s, s) then diag_1 (s)\nend\n"
    );
    assert_eq!(
        stdout(&["diag", &asset("deciders.tangle"), "halts"]),
        "procedure diag (s: string);\nbegin\n  if halts (s, s) then diag (s)\nend\n"
    );
}

#[test]
fn envelope_is_stable() {
    let demo = asset("demo.tangle");
    let a = tangle(&["--json", "run", &demo, "go"]);
    let b = tangle(&["--json", "run", &demo, "go"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["command"], format!("--json run {demo} go"));
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["outcome"]["status"], "diverges");
    assert_eq!(
        v["result"]["outcome"]["witness"],
        serde_json::json!({"first": 0, "second": 1})
    );
    assert_eq!(v["exit_status"], 10);
    let e = json(&["run", &demo, "nosuch"]);
    assert_eq!(e["result"]["type"], "error");
    assert_eq!(e["exit_status"], 2);
}

#[test]
fn demo_detects_corrupted_assets() {
    assert_eq!(code(&["demo"]), 0);
    let dir = std::env::temp_dir().join(format!("tangle-demo-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("liar.eqn"), "L = (L = true)\n").unwrap();
    let d = dir.to_string_lossy();
    let out = tangle(&["demo", "--assets", &d]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL] liar"), "{text}");
    assert!(text.contains("16/17 checks passed"), "{text}");
    let v = json(&["demo", "--assets", &d]);
    assert_eq!(v["exit_status"], 1);
    assert_ne!(v["inputs_digest"], json(&["demo"])["inputs_digest"]);
    std::fs::remove_dir_all(&dir).unwrap();
}
