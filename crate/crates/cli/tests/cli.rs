use std::process::{Command, Output};

use esd_core::{concurrence_x, evolve_werner_analytic, ChannelKind, WernerLikeParams};
use serde_json::Value;

fn esd_sim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esd-sim"))
        .args(args)
        .env_remove("ESD_SIM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn pc_ad_thirty_degrees() {
    let out = esd_sim(&["pc", "--channel", "ad", "--r", "1", "--theta-deg", "30"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "status"), "ESD");
    let pc: f64 = field(&text, "pc").parse().unwrap();
    assert!((pc - 0.5773503).abs() < 1e-7);
}

#[test]
fn evolve_pd_at_critical_point_json() {
    let out = esd_sim(&[
        "evolve",
        "--channel",
        "pd",
        "--r",
        "0.7",
        "--theta-deg",
        "45",
        "--p",
        "0.537090",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["concurrence"].as_f64().unwrap().abs() < 1e-5);
    assert_eq!(v["channel"], "pd");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        ["channel", "r", "theta", "p", "x_elements", "concurrence"]
    );
    let xe = v["x_elements"].as_object().unwrap();
    for k in ["x", "y", "z", "w", "u", "v"] {
        assert!(xe.contains_key(k), "missing {k}");
    }
    assert!((v["theta"].as_f64().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn pc_json_carries_status_and_pc() {
    let out = esd_sim(&[
        "pc",
        "--channel",
        "pd",
        "--r",
        "1",
        "--theta",
        "0.5",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "NoESD");
    assert!(v["pc"].is_null());

    let out = esd_sim(&[
        "pc",
        "--channel",
        "ad",
        "--r",
        "1",
        "--theta",
        "0.5",
        "--method",
        "analytic",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "ESD");
    assert!((v["pc"].as_f64().unwrap() - 0.5f64.tan()).abs() < 1e-12);
}

#[test]
fn concurrence_reports_both_routes() {
    let out = esd_sim(&[
        "concurrence",
        "--channel",
        "d",
        "--r",
        "0.9",
        "--theta",
        "0.3",
        "--p",
        "0.2",
        "--json",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let closed = v["concurrence"].as_f64().unwrap();
    let eig = v["concurrence_eig"].as_f64().unwrap();
    assert!(closed > 0.0 && (closed - eig).abs() < 1e-9);

    let out = esd_sim(&["concurrence", "--r", "0.7", "--theta-deg", "45"]);
    let c: f64 = field(&stdout(&out), "concurrence").parse().unwrap();
    assert!((c - 0.55).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_one_and_name_the_flag() {
    let cases: [(&[&str], &str); 6] = [
        (
            &[
                "pc",
                "--channel",
                "d",
                "--r",
                "1",
                "--theta",
                "1",
                "--method",
                "analytic",
            ],
            "--method",
        ),
        (
            &["pc", "--channel", "ad", "--r", "1.5", "--theta", "1"],
            "--r",
        ),
        (
            &[
                "evolve",
                "--channel",
                "ad",
                "--r",
                "1",
                "--theta",
                "1",
                "--p",
                "2",
            ],
            "--p",
        ),
        (
            &["pc", "--channel", "xx", "--r", "1", "--theta", "1"],
            "--channel",
        ),
        (
            &[
                "pc",
                "--channel",
                "ad",
                "--r",
                "1",
                "--theta",
                "1",
                "--theta-deg",
                "4",
            ],
            "--theta",
        ),
        (
            &["scan", "--channel", "ad", "--r", "1", "--p-steps", "1"],
            "--p-steps",
        ),
    ];
    for (args, flag) in cases {
        let out = esd_sim(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(stderr(&out).contains(flag), "{args:?}: {}", stderr(&out));
    }
    assert_eq!(esd_sim(&["figure", "7"]).status.code(), Some(1));
    assert_eq!(esd_sim(&[]).status.code(), Some(1));
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(esd_sim(&["--help"]).status.code(), Some(0));
    assert_eq!(esd_sim(&["--version"]).status.code(), Some(0));
}

#[test]
fn scan_rows_round_trip_through_the_library() {
    let out = esd_sim(&[
        "scan",
        "--channel",
        "ad",
        "--r",
        "0.6,1",
        "--theta-steps",
        "9",
        "--p-steps",
        "11",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,p,r,concurrence"));
    let mut count = 0;
    for line in lines {
        assert_eq!(line, line.trim_end());
        assert!(!line.contains('e') && !line.contains('E'), "{line}");
        let v: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let params = WernerLikeParams::new(v[2], v[0]).unwrap();
        let xe = evolve_werner_analytic(ChannelKind::AmplitudeDamping, &params, v[1]).unwrap();
        assert!((concurrence_x(&xe).value() - v[3]).abs() <= 1e-12, "{line}");
        count += 1;
    }
    assert_eq!(count, 2 * 9 * 11);
}

#[test]
fn scan_json_matches_csv() {
    let args = [
        "scan",
        "--channel",
        "pd",
        "--r",
        "0.8",
        "--theta-steps",
        "5",
        "--p-steps",
        "4",
    ];
    let csv = stdout(&esd_sim(&args));
    let mut with_json = args.to_vec();
    with_json.push("--json");
    let rows: Vec<Value> = serde_json::from_str(&stdout(&esd_sim(&with_json))).unwrap();
    assert_eq!(rows.len(), csv.lines().count() - 1);
    for (row, line) in rows.iter().zip(csv.lines().skip(1)) {
        let c: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(row["concurrence"].as_f64().unwrap(), c);
    }
}

#[test]
fn figure_output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut contents = Vec::new();
    for threads in ["1", "4", "0"] {
        let path = dir.path().join(format!("fig2-{threads}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_esd-sim"))
            .args(["figure", "2", "-o"])
            .arg(&path)
            .env("ESD_SIM_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        contents.push(std::fs::read(&path).unwrap());
    }
    assert!(contents.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn figure_six_has_seven_series() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig6.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_esd-sim"))
        .args(["figure", "6", "--check", "-o"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stderr(&out).contains("PASS"));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rs: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    rs.dedup();
    assert_eq!(rs, ["0.4", "0.5", "0.6", "0.7", "0.8", "0.9", "1"]);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_esd-sim"))
        .args(["figure", "1"])
        .env("ESD_SIM_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ESD_SIM_THREADS"));
}
