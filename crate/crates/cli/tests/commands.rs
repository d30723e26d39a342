use std::io::Write;
use std::process::{Command, Output, Stdio};

use braidwork_core::{scott_diagram, verify_trace, Trace};
use serde_json::Value;

const NESTED: &str = "strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_braidwork"))
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    // the process may exit before reading
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("braidwork-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn closed_boundary_of_nested_example() {
    let path = scratch("nested.wd", NESTED);
    let o = run(&["boundary", "--closed", &path], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let delta = "s1 s2 s3 s1 s2 s1";
    let expected = format!("{delta} s3 s3 s3 s2 s3 s1 s2 s1' s3' s3 s3 s3 {delta}");
    assert_eq!(v["braid"], expected);
    assert_eq!(v["invariants"]["exponent_sum"], 20);
    assert_eq!(v["invariants"]["linking"][0][1], 7);
    let text = run(&["boundary", "--text", "-"], NESTED);
    assert_eq!(String::from_utf8_lossy(&text.stdout).trim(), expected);
}

#[test]
fn empty_input_is_a_usage_error() {
    let o = run(&["parse", "-"], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage: braidwork parse"));
    assert_eq!(bin().output().unwrap().status.code(), Some(2));
    assert_eq!(run(&["boundary", "--front", "--back", "-"], NESTED).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_reason() {
    let o = run(&["validate", "-"], "strands 2; comps A:1 B:2; T[1]");
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["valid"], false);
    assert!(v["reason"].as_str().unwrap().contains("tangency"));
    let o = run(&["parse", "-"], "strands 2; comps A:1 B:2; Q[1]");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["error"], "input");
    let o = run(&["move", "apply", "-", "--kind", "M4", "--variant", "ii_x", "--params", "1,2,4"], NESTED);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["reason"].as_str().unwrap().starts_with("not applicable"));
}

#[test]
fn scott_script_replays() {
    let scott = run(&["gen", "scott", "--k", "-1"], "");
    assert_eq!(scott.status.code(), Some(0));
    let diagram = scratch("scott.wd", &String::from_utf8(scott.stdout).unwrap());
    let script = run(&["gen", "script", "--k", "-1"], "");
    let script = scratch("script.json", &String::from_utf8(script.stdout).unwrap());
    let o = run(&["script", "run", &diagram, &script], "");
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], true);
    let t: Trace = serde_json::from_value(v.clone()).unwrap();
    assert!(verify_trace(&t));
    assert_eq!(t.initial, *scott_diagram(-1).unwrap().diagram());
    let trace = scratch("trace.json", &v.to_string());
    let o = run(&["script", "verify", &trace], "");
    assert_eq!(json(&o)["verdict"], true);
}

#[test]
fn generated_qhd_passes_its_check() {
    let qhd = run(&["gen", "qhd", "--k", "-1"], "");
    let text = String::from_utf8(qhd.stdout).unwrap();
    let o = run(&["qhd-check", "--k", "-1", "-"], &text);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], true, "{v}");
    assert_eq!(v["b2"], 0);
    assert_eq!(v["points"], v["disks"]);
    let h = json(&run(&["homology", "-"], &text));
    assert_eq!((h["b2"].as_u64(), h["verdict"].as_bool()), (Some(0), Some(true)));
    let odd = run(&["gen", "qhd", "--k", "0"], "");
    assert_eq!(odd.status.code(), Some(1));
    assert_eq!(json(&odd)["error"], "generator");
}

#[test]
fn homology_free_points_and_nf() {
    let v = json(&run(&["homology", "--free", "A=2", "--free", "B=2", "-"], NESTED));
    assert_eq!((v["b2"].as_u64(), v["points"].as_u64(), v["disks"].as_u64()), (Some(6), Some(8), Some(2)));
    assert_eq!(v["weights"]["A"], 7);
    assert_eq!(v["verdict"], false);
    let nf = json(&run(&["nf", "--strands", "3", "s1 s2 s1 s2' s1' s2'"], ""));
    assert_eq!(nf["canonical"], "3|0|");
    let via_diagram = json(&run(&["nf", "-"], NESTED));
    let b = json(&run(&["boundary", "-"], NESTED));
    assert_eq!(via_diagram["hash"], b["nf_hash"]);
}

#[test]
fn move_apply_and_list() {
    let scott = scott_diagram(-1).unwrap();
    let text = braidwork::input::arrangement_to_text(&scott.arrangement);
    let listed = json(&run(&["move", "list", "--pos", "4", "-"], &text));
    let first = &braidwork_core::qhd_script(-1).unwrap()[0];
    let first_json = serde_json::to_value(first).unwrap();
    assert!(listed["moves"].as_array().unwrap().contains(&first_json), "{listed}");
    let o = run(&["move", "apply", "-", "--instance", &first_json.to_string()], &text);
    let v = json(&o);
    assert_eq!(v["boundary_unchanged"], true);
    assert_eq!(v["guarantee"], "WORD");
    assert!(v["dsl"].as_str().unwrap().contains("free C1:1"));
}

#[test]
fn render_to_file() {
    let out = std::env::temp_dir().join(format!("braidwork-render-{}.svg", std::process::id()));
    let o = run(&["render", "-", "--out", out.to_str().unwrap()], NESTED);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml"));
    let stdout = run(&["render", "-"], NESTED);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), svg);
}
