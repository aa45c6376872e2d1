#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const KNOT: &str = "B3 s1^7 s2^-1";

pub const CASES: &[Case] = &[
    Case { name: "analyze_knot", args: &["analyze", KNOT], exit: 0 },
    Case { name: "analyze_weak", args: &["analyze", "B3 s1^3 s2^-1", "--assert-hyperbolic"], exit: 0 },
    Case { name: "analyze_delta6", args: &["analyze", "B3 s1 s2 s1 s1 s2 s1 s1 s2 s1 s1 s2 s1 s1 s2 s1 s1 s2 s1"], exit: 0 },
    Case { name: "analyze_malformed", args: &["analyze", "B3 s1^x"], exit: 2 },
    Case { name: "analyze_table", args: &["--format", "table", "analyze", KNOT], exit: 0 },
    Case { name: "cfrac_seven_halves", args: &["cfrac", "--", "-7/2"], exit: 0 },
    Case { name: "cfrac_mixed", args: &["cfrac", "--", "-3+1/5"], exit: 0 },
    Case { name: "cfrac_out_of_range", args: &["cfrac", "--", "-1/2"], exit: 2 },
    Case { name: "surgery_two_sevenths", args: &["surgery", KNOT, "--slopes", "2/7"], exit: 0 },
    Case { name: "surgery_five_halves", args: &["surgery", KNOT, "--slopes", "5/2"], exit: 0 },
    Case { name: "surgery_chain_form", args: &["surgery", KNOT, "--slopes", "1/4", "--chain"], exit: 0 },
    Case { name: "surgery_negative_slope", args: &["surgery", KNOT, "--slopes", "-1/3"], exit: 2 },
    Case { name: "enumerate_one_fifth", args: &["enumerate", KNOT, "--slopes", "1/5", "--isom-order", "2"], exit: 0 },
    Case { name: "enumerate_link", args: &["enumerate", "B4 s1^5 s3^5 s2^2", "--slopes", "2/5,2/7", "--count-only"], exit: 0 },
    Case { name: "enumerate_half", args: &["enumerate", KNOT, "--slopes", "1/2"], exit: 0 },
    Case { name: "enumerate_weak_braid", args: &["enumerate", "B3 s1^3 s2^-1", "--slopes", "1/3"], exit: 3 },
    Case { name: "theta_one_fifth_k2", args: &["theta", KNOT, "--slope", "1/5", "--tuple", "2"], exit: 0 },
    Case { name: "theta_one_fifth_all", args: &["theta", KNOT, "--slope", "1/5"], exit: 0 },
    Case { name: "theta_two_sevenths_all", args: &["theta", KNOT, "--slope", "2/7"], exit: 0 },
    Case { name: "theta_bad_tuple", args: &["theta", KNOT, "--slope", "1/5", "--tuple", "9"], exit: 2 },
    Case {
        name: "limits_max_tail",
        args: &["limits", "--coeffs", "-4(-2,-3)", "--tuple", r#"{"prefix":[2],"tail":"max"}"#, "--levels", "4", "--braid", KNOT],
        exit: 0,
    },
    Case {
        name: "limits_compare",
        args: &[
            "limits", "--coeffs", "(-3)", "--tuple", r#"{"prefix":[],"tail":"ones"}"#,
            "--other-coeffs", "-3(-3,-3)", "--other-tuple", r#"{"prefix":[2],"tail":"ones"}"#,
        ],
        exit: 0,
    },
    Case {
        name: "limits_periodic_pm",
        args: &["limits", "--coeffs", "(-4)", "--tuple", r#"{"prefix":[3,1],"tail":{"periodic":[1,3]}}"#],
        exit: 0,
    },
    Case { name: "limits_bad_tuple", args: &["limits", "--coeffs", "(-3)", "--tuple", r#"{"prefix":[5],"tail":"ones"}"#], exit: 2 },
    Case { name: "family_example420", args: &["family", "example420", "--k", "1"], exit: 0 },
    Case { name: "family_power", args: &["family", "power", "B3 s1 s2^-1", "--k", "5"], exit: 0 },
    Case { name: "family_delta2l", args: &["family", "delta2l", KNOT, "--l", "2"], exit: 0 },
    Case { name: "family_lspace", args: &["family", "lspace", "--m", "3", "--k", "7", "--l", "2"], exit: 0 },
    Case { name: "family_lspace_link", args: &["family", "lspace", "--braid", "B2 s1^2", "--k", "1", "--l", "1"], exit: 3 },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_contact-surgery")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Runs every case twice and compares against `tests/golden/<name>.out`.
/// With `UPDATE_GOLDEN` set, rewrites the files instead.
pub fn check_goldens() -> Result<(), String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let (code, first) = run(case.args);
        let (_, second) = run(case.args);
        if first != second {
            failures.push(format!("{}: reruns differ", case.name));
        }
        if code != case.exit {
            failures.push(format!("{}: exit {code}, expected {}", case.name, case.exit));
        }
        let path = golden_dir().join(format!("{}.out", case.name));
        if update {
            fs::write(&path, &first).map_err(|e| e.to_string())?;
            continue;
        }
        match fs::read(&path) {
            Ok(expected) if expected == first => {}
            Ok(_) => failures.push(format!("{}: output differs from {}", case.name, path.display())),
            Err(e) => failures.push(format!("{}: {e}", case.name)),
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}
