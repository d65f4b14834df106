use std::process::{Command, Output};

use legz::descent::{parametric_family, StepRecord};
use legz::normform::primitivize;
use legz::{bound_test, GaussianInt, LegendreEquation, NormalizationTrace, Solution};
use serde_json::Value;

fn legz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legz"))
        .args(args)
        .env_remove("LEGZ_FACTOR_CEILING")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// The single stderr line, which must look like `legz: <reason>: ...`.
fn reason(o: &Output) -> String {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines.len(), 1, "stderr: {err:?}");
    let rest = lines[0].strip_prefix("legz: ").expect("prefixed");
    rest.split(':').next().unwrap().to_string()
}

fn g(s: &str) -> GaussianInt {
    s.parse().unwrap()
}

fn field(v: &Value, a: &str, b: &str) -> GaussianInt {
    g(v[a][b].as_str().unwrap())
}

#[test]
fn solve_golden_text() {
    let o = legz(&["solve", "-a", "i", "-b", "7", "-c", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("solution: (2+2i, 1, 1)\n"), "{out}");
    assert!(out.contains("bound_holds: true\n"));
}

#[test]
fn solve_golden_json_is_fixed() {
    let o = legz(&["solve", "-a", "i", "-b", "7", "-c", "1", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"equation":{"a":"i","b":"7","c":"1"},"normal_form":{"a":"i","b":"7","c":"1"},"#,
            r#""solvable":true,"solution":{"x":"2+2i","y":"1","z":"1"},"trace":[],"bound_holds":true}"#,
            "\n"
        )
    );
}

#[test]
fn solve_meets_bound_exactly() {
    let o = legz(&["solve", "-a", "i", "-b", "7", "-c", "1", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let z = field(&v, "solution", "z");
    assert!(bound_test(&z, &g("i"), &g("7")));
}

#[test]
fn check_examples() {
    assert_eq!(
        code(&legz(&[
            "check", "-a", "i", "-b", "7", "-c", "1", "-x", "2+2i", "-y", "1", "-z", "1"
        ])),
        0
    );
    assert_eq!(
        code(&legz(&[
            "check", "-a", "1", "-b", "1", "-c", "1", "-x", "1", "-y", "i", "-z", "0"
        ])),
        0
    );
    let o = legz(&[
        "check", "-a", "i", "-b", "7", "-c", "1", "-x", "1", "-y", "1", "-z", "1",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(reason(&o), "residual-nonzero");
    assert!(stdout(&o).contains("residual: 8+i\n"));
}

#[test]
fn usage_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["solve", "-a", "1q", "-b", "1", "-c", "1"],
        &["solve", "-a", "1", "-b", "1"],
        &["solve", "-a", "1", "-b", "1", "-c", "1", "-x", "1"],
        &["solve", "-a", "0", "-b", "1", "-c", "1"],
        &[
            "check", "-a", "1", "-b", "1", "-c", "1", "-x", "1", "-y", "1",
        ],
        &[
            "check", "-a", "1", "-b", "1", "-c", "1", "-x", "0", "-y", "0", "-z", "0",
        ],
        &["trace", "-a", "i", "-b", "7", "-c", "1", "-x", "2+2i"],
        &[
            "trace", "-a", "i", "-b", "7", "-c", "1", "-x", "1", "-y", "1", "-z", "1",
        ],
        &["search", "-a", "1", "-b", "1", "-c", "1", "--jobs", "0"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = legz(args);
        assert_eq!(code(&o), 2, "{args:?}");
        reason(&o);
    }
}

#[test]
fn factor_ceiling_from_env() {
    let run = |ceiling: &str| {
        Command::new(env!("CARGO_BIN_EXE_legz"))
            .args(["normalize", "-a", "1000003", "-b", "1", "-c", "1"])
            .env("LEGZ_FACTOR_CEILING", ceiling)
            .output()
            .unwrap()
    };
    let o = run("100");
    assert_eq!(code(&o), 2);
    assert_eq!(reason(&o), "factor-limit");
    assert_eq!(code(&run("2000000")), 0);
    let o = run("lots");
    assert_eq!(code(&o), 2);
    assert_eq!(reason(&o), "bad-env");
}

#[test]
fn samet_exit_codes() {
    let o = legz(&["samet", "-a", "1", "-b", "1+i", "-c", "3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(reason(&o), "unsolvable");
    assert!(stdout(&o).contains("mod c: 1+i is not a square mod 3\n"));
    let o = legz(&["samet", "-a", "i", "-b", "7", "-c", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o).lines().filter(|l| l.starts_with("mod ")).count(),
        3
    );
}

#[test]
fn unsolvable_solve_still_reports() {
    let o = legz(&["solve", "-a", "1", "-b", "1+i", "-c", "3", "--json"]);
    assert_eq!(code(&o), 1);
    assert_eq!(reason(&o), "unsolvable");
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solvable"], Value::Bool(false));
    assert!(v["solution"].is_null());
}

#[test]
fn search_golden_and_absent() {
    let o = legz(&[
        "search",
        "-a",
        "i",
        "-b",
        "7",
        "-c",
        "1",
        "--search-bound",
        "8",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("solution: (2+2i, 1, 1)\n"));
    let o = legz(&[
        "search",
        "-a",
        "1",
        "-b",
        "1+i",
        "-c",
        "3",
        "--search-bound",
        "30",
    ]);
    assert_eq!(code(&o), 1);
    assert_eq!(reason(&o), "not-found");
}

#[test]
fn jobs_do_not_change_output() {
    for eq in [["3", "5", "-7"], ["1", "1+i", "-3-2i"], ["2+i", "1", "1+i"]] {
        let base = [
            "search",
            "-a",
            eq[0],
            "-b",
            eq[1],
            "-c",
            eq[2],
            "--search-bound",
            "100",
        ];
        let serial = legz(&base);
        let mut par = base.to_vec();
        par.extend(["--jobs", "4"]);
        let par = legz(&par);
        assert_eq!(serial.stdout, par.stdout);
        assert_eq!(code(&serial), code(&par));
    }
}

#[test]
fn normalize_trace_replays() {
    let o = legz(&["normalize", "-a", "12", "-b", "2+2i", "-c", "4i", "--json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lines: Vec<&str> = v["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l.as_str().unwrap())
        .collect();
    assert!(!lines.is_empty());
    let trace: NormalizationTrace = lines.join("\n").parse().unwrap();
    let normal = LegendreEquation::new(
        field(&v, "normal_form", "a"),
        field(&v, "normal_form", "b"),
        field(&v, "normal_form", "c"),
    )
    .unwrap();
    let back = trace.replay(&normal);
    assert_eq!([back.a, back.b, back.c], [g("12"), g("2+2i"), g("4i")]);
}

#[test]
fn trace_from_inflated_seed() {
    let eq = LegendreEquation::try_normal(g("i"), g("7"), g("1")).unwrap();
    let s0 = Solution::new(g("2+2i"), g("1"), g("1")).unwrap();
    let [x, y, z] = parametric_family(&eq, &s0, &g("3-i"), &g("2+5i"), &g("-4+i"));
    let seed = primitivize(&Solution::new(x, y, z).unwrap());
    let (sx, sy, sz) = (seed.x.to_string(), seed.y.to_string(), seed.z.to_string());
    let args = [
        "trace", "-a", "i", "-b", "7", "-c", "1", "-x", &sx, "-y", &sy, "-z", &sz,
    ];
    let o = legz(&args);
    assert_eq!(code(&o), 0);
    let steps: Vec<StepRecord> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("STEP "))
        .map(|l| l.parse().unwrap())
        .collect();
    assert!(!steps.is_empty());
    for s in &steps {
        assert!(s.norm_out < s.norm_in);
        assert_eq!(s.z_in.norm(), s.norm_in);
    }
    for w in steps.windows(2) {
        assert_eq!(w[0].norm_out, w[1].norm_in);
    }
    let mut json_args = args.to_vec();
    json_args.push("--json");
    let v: Value = serde_json::from_str(&stdout(&legz(&json_args))).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), steps.len());
    assert_eq!(v["bound_holds"], Value::Bool(true));
}

/// `solve --json`, then feed the emitted solution to `check`.
#[test]
fn json_solution_round_trips_through_check() {
    let corpus = [
        ["i", "7", "1"],
        ["3", "5", "-7"],
        ["2+i", "1", "1+i"],
        ["1", "1", "1"],
        ["12", "2", "4i"],
        ["-3", "7+7i", "5"],
        ["9i", "-4", "25"],
        ["1", "-i", "3-2i"],
    ];
    let mut solved = 0;
    for [a, b, c] in corpus {
        let o = legz(&["solve", "-a", a, "-b", b, "-c", c, "--json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        match code(&o) {
            0 => {
                solved += 1;
                let s = |k| v["solution"][k].as_str().unwrap().to_string();
                let (x, y, z) = (s("x"), s("y"), s("z"));
                let chk = legz(&[
                    "check", "-a", a, "-b", b, "-c", c, "-x", &x, "-y", &y, "-z", &z,
                ]);
                assert_eq!(code(&chk), 0, "{a} {b} {c}: ({x}, {y}, {z})");
                assert_eq!(v["bound_holds"], Value::Bool(true));
            }
            1 => assert!(v["solution"].is_null()),
            other => panic!("{a} {b} {c}: exit {other}"),
        }
    }
    assert!(solved >= 5, "only {solved} solved");
}
