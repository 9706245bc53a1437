use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stardecomp"))
        .args(args)
        .env_remove("DECOMP_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stardecomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn betti_of_a_sphere() {
    let out = run(&["betti", corpus("boundary_d3.cplx").to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["betti"], serde_json::json!([0, 0, 0, 1]));
}

#[test]
fn sd_writes_facets_and_labels() {
    let labels = std::env::temp_dir().join(format!("stardecomp-labels-{}.json", std::process::id()));
    let out = run(&["sd", corpus("simplex_d2.cplx").to_str().unwrap(), "--labels", labels.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.trim().is_empty()).count(), 6);
    let map: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&labels).unwrap()).unwrap();
    assert_eq!(map["labels"].as_object().unwrap().len(), 7);
}

#[test]
fn collapse_and_rc_verdicts() {
    assert_eq!(code(&run(&["collapse", corpus("hexagon_disk.cplx").to_str().unwrap()])), 0);
    let out = run(&["collapse", corpus("hexagon_disk.cplx").to_str().unwrap(), "--target", "3"]);
    assert_eq!(json(&out)["certificate"]["terminal_vertex"], serde_json::json!([3]));
    assert_eq!(code(&run(&["collapse", corpus("cycle_4.cplx").to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["check-rc", corpus("cycle_4.cplx").to_str().unwrap()])), 0);
    assert_eq!(code(&run(&["check-rc", corpus("dunce_hat.cplx").to_str().unwrap()])), 1);
}

#[test]
fn hrc_failure_exit_code_and_witness() {
    let out = run(&["check-hrc", corpus("two_triangles.cplx").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["witness"], serde_json::json!([3]));
    let out = run(&["shell-sd2", corpus("dunce_hat.cplx").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["witness"], serde_json::json!([]));
}

#[test]
fn shell_sd2_reports_and_writes_certificates() {
    let report = std::env::temp_dir().join(format!("stardecomp-report-{}.json", std::process::id()));
    let out = run(&["shell-sd2", corpus("boundary_d3.cplx").to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["sd2_facets"], 144);
    let full: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(full["result"], "shelled");
    assert_eq!(full["report"]["shelling"]["facets"].as_array().unwrap().len(), 144);
    assert_eq!(full["report"]["shelling_check"]["result"], "ok");
}

#[test]
fn shelling_orders_given_on_the_command_line() {
    let k = tmp("square.cplx", "0 1 2\n0 2 3\n");
    let good = tmp("good.json", r#"{"facets": [[0,1,2],[0,2,3]]}"#);
    assert_eq!(code(&run(&["check-shelling", k.to_str().unwrap(), "--order", good.to_str().unwrap()])), 0);
    let bowtie = tmp("bowtie.cplx", "1 2 3\n3 4 5\n");
    assert_eq!(code(&run(&["check-shelling", bowtie.to_str().unwrap()])), 1);
    let order = tmp("bowtie.json", r#"{"facets": [[1,2,3],[3,4,5]]}"#);
    let out = run(&["check-shelling", bowtie.to_str().unwrap(), "--order", order.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["index"], 1);
    let missing = tmp("short.json", r#"{"facets": [[1,2,3]]}"#);
    assert_eq!(code(&run(&["check-shelling", bowtie.to_str().unwrap(), "--order", missing.to_str().unwrap()])), 64);
}

#[test]
fn shedding_and_star_decomposition() {
    let c = corpus("cycle_4.cplx");
    assert_eq!(code(&run(&["check-shedding", c.to_str().unwrap()])), 0);
    let out = run(&["check-stardecomp", c.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let cert = tmp("star.json", &json(&out)["certificate"].to_string());
    let xset: Vec<String> = json(&out)["xset"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    let xset = xset.join(",");
    let verified = run(&["check-stardecomp", c.to_str().unwrap(), "--xset", &xset, "--cert", cert.to_str().unwrap()]);
    assert_eq!(code(&verified), 0, "{}", String::from_utf8_lossy(&verified.stdout));
    let odd = tmp("c5.cplx", "0 1\n1 2\n2 3\n3 4\n0 4\n");
    assert_eq!(code(&run(&["check-stardecomp", odd.to_str().unwrap()])), 1);
}

#[test]
fn usage_and_input_errors_exit_64() {
    assert_eq!(code(&run(&["betti", "/nonexistent/file.cplx"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["--budget", "lots", "betti", "x"])), 64);
    let bad = tmp("bad.cplx", "1 2 x\n");
    assert_eq!(code(&run(&["betti", bad.to_str().unwrap()])), 64);
    let mixed = tmp("mixed.cplx", "1 2 3\n3 4\n");
    assert_eq!(code(&run(&["check-hrc", mixed.to_str().unwrap()])), 64);
}

#[test]
fn budget_from_flag_and_environment() {
    let k = corpus("boundary_d3.cplx");
    assert_eq!(code(&run(&["--budget", "1", "shell-sd2", k.to_str().unwrap()])), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_stardecomp"))
        .args(["shell-sd2", k.to_str().unwrap()])
        .env("DECOMP_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
