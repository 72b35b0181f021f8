//! End-to-end checks of the `redstab` binary.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_redstab")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "`{}` failed: {out}", args.join(" "));
    serde_json::from_str(&out).expect("json output")
}

#[test]
fn hilb_bounds_for_a_line() {
    let v = json(&["walls", "hilb", "--m", "1"]);
    assert_eq!(v["N"], 1);
    assert_eq!(v["M"], 3);
    let v = json(&["walls", "hilb", "--m", "2"]);
    assert_eq!(v["red_line"]["slope"], "4");
    assert_eq!(v["red_line"]["intercept"], "-13");
    assert_eq!(v["green_line"]["slope"], "1");
    assert_eq!(v["green_line"]["intercept"], "11");
}

#[test]
fn charge_of_top_vector_is_one() {
    let v = json(&["charge", "eval", "--t", "[0,2]", "--v", "[0,0,1]"]);
    assert_eq!(v["value"], "1");
    assert_eq!(v["mode"], "exact");
    let v = json(&["charge", "eval", "--t", "[0,2,\"inf\"]", "--v", "[0,0,0,1]"]);
    assert_eq!(v["value"], "0");
}

#[test]
fn separated_roots_do_not_interlace() {
    let v = json(&["interlace", "check", "--f", "[0,-1,1]", "--g", "[12,-7,1]"]);
    assert_eq!(v["interlaced"], false);
    let v = json(&["interlace", "check", "--f", "[0,-2,1]", "--g", "[-1,1]", "--n", "2"]);
    assert_eq!(v["interlaced"], true);
}

#[test]
fn gamma_and_roots_round_trip() {
    let v = json(&["charge", "gamma", "--t", "2", "--n", "3"]);
    assert_eq!(v["gamma"], serde_json::json!(["1", "2", "2", "4/3"]));
    let v = json(&["interlace", "from-roots", "--t", "[1,2,3]"]);
    assert_eq!(v["poly"], serde_json::json!(["-6", "11", "-6", "1"]));
    let v = json(&["interlace", "roots", "--f", "[-6,11,-6,1]"]);
    assert_eq!(v["roots"], serde_json::json!(["1", "2", "3"]));
}

#[test]
fn restriction_closed_form_for_pairs() {
    let v = json(&["restrict", "xi", "--t", "[0,4]", "--m", "1"]);
    assert_eq!(v["tuple"], serde_json::json!(["5/2"]));
}

#[test]
fn domain_errors_exit_one() {
    let (code, out) = run(&["charge", "eval", "--t", "[1,1]", "--v", "[0,0,1]"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "InvalidTuple");
    assert!(v["config"].is_object());
}

#[test]
fn usage_errors_exit_two() {
    let (code, out) = run(&["interlace", "check", "--f", "[0,1]"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"], "UsageError");
    let (code, _) = run(&["charge", "eval", "--t", "[0,1]", "--v", "[0,0,1]", "--format", "svg"]);
    assert_eq!(code, 2);
    let (code, _) = run(&["interlace", "roots", "--f", "[\"x\"]"]);
    assert_eq!(code, 2);
}

#[test]
fn seeded_runs_are_reproducible() {
    let gram = "[[3,0,0,0,0],[0,3,0,0,0],[0,0,-1,0,0],[0,0,0,-1,0],[0,0,0,0,-1]]";
    let args = ["quadform", "deform", "--h", "[1,0,0,0,0]", "--f1", "[0,1,0,0,0]", "--f2", "[0,0,1,0,0]",
        "--gram", gram, "--d", "1/2", "--big-n", "2", "--seed", "7", "--samples", "200"];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0), "{a}");
    assert_eq!(a, b);
    let s = ["selftest", "--only", "4", "--seed", "7"];
    assert_eq!(run(&s), run(&s));
}

#[test]
fn plot_formats() {
    let (code, csv) = run(&["walls", "plot", "--figure", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(csv.lines().any(|l| l == "coord1,coord2,residual"));
    let (code, svg) = run(&["walls", "plot", "--figure", "1", "--format", "svg"]);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("redstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hilb.json");
    let (code, out) = run(&["walls", "hilb", "--m", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["m"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
