use std::path::PathBuf;
use std::process::{Command, Output};

fn grover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("grover-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn simulate_reports_both_columns() {
    let o = grover(&[
        "--json", "simulate", "--n", "4", "--target", "11", "--t", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["p_simulated", "p_closed_form"] {
        assert!(
            (v[key].as_f64().unwrap() - 0.9613189697265625).abs() < 1e-12,
            "{key}"
        );
    }
    let text = stdout(&grover(&[
        "simulate", "--n", "4", "--target", "11", "--t", "3",
    ]));
    assert!(text.contains("p_simulated    0.961318969727"));
    assert!(text.contains("p_closed_form  0.961318969727"));
}

#[test]
fn simulate_exact_four_state_case() {
    let v = json(&grover(&[
        "--json", "simulate", "--n", "2", "--target", "1", "--t", "1",
    ]));
    assert!((v["p_simulated"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["p_closed_form"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn simulate_rejects_out_of_range_target() {
    let o = grover(&["simulate", "--n", "4", "--target", "99", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1..=16"));
}

#[test]
fn simulate_histogram_is_reproducible() {
    let args = [
        "simulate", "--n", "5", "--target", "7", "--t", "4", "--shots", "5000", "--seed", "11",
    ];
    let (a, b) = (grover(&args), grover(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("index,count\n"));
    let path = scratch("hist.csv");
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    assert_eq!(grover(&with_file).status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let total: u64 = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 5000);
}

#[test]
fn dense_cap_is_read_from_the_environment() {
    let run = |cap: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_grover"))
            .args([
                "--json", "simulate", "--n", "4", "--target", "3", "--t", "2",
            ])
            .env("GROVER_DENSE_CAP", cap)
            .output()
            .unwrap();
        json(&o)["path"].as_str().unwrap().to_string()
    };
    assert_eq!(run("6"), "dense");
    assert_eq!(run("3"), "kernel");
}

#[test]
fn curve_over_one_period() {
    let o = grover(&["curve", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,p_simulated,p_closed_form");
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[4], "3,0.961318969727,0.961318969727");
    assert!(stderr(&o).contains("peak at t = 3"));
    assert_eq!(grover(&["curve", "--n", "4"]).stdout, o.stdout);
}

#[test]
fn curve_for_four_states() {
    let csv = stdout(&grover(&["curve", "--n", "2"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[1], "0,0.250000000000,0.250000000000");
    assert_eq!(lines[2], "1,1.00000000000,1.00000000000");
}

#[test]
fn curve_writes_to_a_file() {
    let path = scratch("curve.csv");
    let o = grover(&["curve", "--n", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "peak at t = 3\n");
    assert_eq!(
        std::fs::read(&path).unwrap(),
        grover(&["curve", "--n", "4"]).stdout
    );
    assert_eq!(
        grover(&["curve", "--n", "4", "--t-max", "6"]).status.code(),
        Some(1)
    );
    let bad = grover(&[
        "curve",
        "--n",
        "4",
        "--output",
        "/nonexistent/dir/curve.csv",
    ]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn optimal_reports() {
    let four = json(&grover(&["--json", "optimal", "--n", "4"]));
    assert_eq!(
        (
            four["t_floor"].as_u64(),
            four["t_ceil"].as_u64(),
            four["t_best"].as_u64()
        ),
        (Some(2), Some(3), Some(3))
    );
    let two = json(&grover(&["--json", "optimal", "--n", "2"]));
    assert_eq!(two["t_best"], 1);
    assert!((two["p_best"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let one = json(&grover(&["--json", "optimal", "--n", "1"]));
    assert_eq!(one["t_best"], 0);
    assert!((one["p_best"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(grover(&["optimal", "--n", "0"]).status.code(), Some(1));
}

#[test]
fn factor_outcomes_and_exit_codes() {
    let o = grover(&[
        "--json", "factor", "--m", "143", "--seed", "1", "--shots", "10000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        (v["factor_found"].as_u64(), v["cofactor"].as_u64()),
        (Some(11), Some(13))
    );

    let v = json(&grover(&[
        "--json", "factor", "--m", "15", "--seed", "1", "--shots", "100",
    ]));
    assert_eq!(
        (v["factor_found"].as_u64(), v["cofactor"].as_u64()),
        (Some(3), Some(5))
    );

    let prime = grover(&["factor", "--m", "13"]);
    assert_eq!(prime.status.code(), Some(2));
    assert!(stderr(&prime).contains("no divisor in search range"));
    assert_eq!(grover(&["factor", "--m", "30"]).status.code(), Some(2));
    assert_eq!(grover(&["factor", "--m", "5"]).status.code(), Some(1));
}

#[test]
fn verify_on_a_reduced_grid() {
    let o = grover(&["verify", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["summary"]["passed"], 13);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(stderr(&o).contains("13/13 checks passed"));
}

#[test]
fn verify_report_is_deterministic_apart_from_timings() {
    let strip = |o: Output| {
        let mut v = json(&o);
        for r in v["results"].as_array_mut().unwrap() {
            r["elapsed_ms"] = 0.into();
        }
        v
    };
    let args = ["verify", "--n-max", "3", "--seed", "99"];
    assert_eq!(strip(grover(&args)), strip(grover(&args)));
}

#[test]
fn verify_fault_injection_fails_named_checks() {
    for (fault, ids) in [
        ("non-unitary-diffusion", "T1.4, T2.3"),
        ("misplaced-oracle", "T2.2, T2.3"),
    ] {
        let o = grover(&["verify", "--n-max", "3", "--inject-fault", fault]);
        assert_ne!(o.status.code(), Some(0));
        assert!(
            stderr(&o).contains(&format!("failed: {ids}")),
            "{fault}: {}",
            stderr(&o)
        );
    }
}

#[test]
fn help_documents_index_conventions() {
    let o = grover(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("--target 12"));
    assert!(text.contains("GROVER_DENSE_CAP"));
    assert_eq!(grover(&["simulate"]).status.code(), Some(1));
}
