//! Acceptance report: one PASS/FAIL line per criterion at full scale with
//! seed 0. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use redstab::acceptance::{run_one, CriterionResult, Scale, GOLDEN_FIGURE1, GOLDEN_FIGURE4};

const SEED: u64 = 0;

fn budget(id: usize) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(30)),
        2 => Some(Duration::from_secs(60)),
        6 => Some(Duration::from_secs(180)),
        _ => None,
    }
}

fn bin(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_redstab"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run redstab: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

/// Runs the binary twice per invocation and compares stdout byte for byte.
fn binary_stability() -> Result<String, String> {
    let cases: [(&[&str], Option<&str>); 3] = [
        (&["walls", "plot", "--figure", "1", "--format", "svg"], Some(GOLDEN_FIGURE1)),
        (&["walls", "plot", "--figure", "4", "--format", "svg"], Some(GOLDEN_FIGURE4)),
        (&["selftest", "--seed", "0"], None),
    ];
    for (args, golden) in cases {
        let (c1, a) = bin(args)?;
        let (c2, b) = bin(args)?;
        let cmd = args.join(" ");
        if a != b || c1 != c2 {
            return Err(format!("`redstab {cmd}` output differs between runs"));
        }
        if c1 != 0 {
            return Err(format!("`redstab {cmd}` exited with status {c1}"));
        }
        if let Some(g) = golden {
            if a != g.as_bytes() {
                return Err(format!("`redstab {cmd}` differs from the golden file"));
            }
        }
    }
    Ok("binary output byte-stable for both figures and selftest --seed 0".to_string())
}

fn main() -> ExitCode {
    let scale = Scale::full();
    let mut failed = 0;
    for id in 1..=12 {
        let start = Instant::now();
        let mut r: CriterionResult = run_one(id, &scale, SEED);
        let elapsed = start.elapsed();
        if let Some(limit) = budget(id) {
            if r.passed && elapsed > limit {
                r.passed = false;
                r.detail = format!("{} but took {elapsed:.1?} (limit {limit:?})", r.detail);
            }
        }
        if id == 12 && r.passed {
            match binary_stability() {
                Ok(d) => r.detail = format!("{}; {d}", r.detail),
                Err(e) => {
                    r.passed = false;
                    r.detail = e;
                }
            }
        }
        if !r.passed {
            failed += 1;
        }
        println!("{} [{elapsed:.2?}]", r.line());
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
