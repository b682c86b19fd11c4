use std::path::PathBuf;
use std::process::{Command, Output};

use isojac::report::FamilyReport;

fn isojac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isojac"))
        .args(args)
        .env_remove(isojac_cli::CAP_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("isojac-{}-{name}", std::process::id()))
}

#[test]
fn classpoly_examples() {
    let o = isojac(&["classpoly", "--m", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x^2 - 4834944*x + 14670139392");
    let o = isojac(&["classpoly", "--m", "2"]);
    assert_eq!(stdout(&o).trim(), "x - 8000");
    assert_eq!(isojac(&["classpoly", "--m", "7"]).status.code(), Some(2));
    assert_eq!(isojac(&["classpoly", "--m", "0"]).status.code(), Some(2));
}

#[test]
fn bad_usage_is_a_validation_error() {
    assert_eq!(isojac(&[]).status.code(), Some(2));
    assert_eq!(isojac(&["classpoly"]).status.code(), Some(2));
    assert_eq!(isojac(&["family", "--m", "6", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(isojac(&["--help"]).status.code(), Some(0));
}

#[test]
fn precision_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_isojac"))
            .args(["classpoly", "--m", "6"])
            .env(isojac_cli::CAP_ENV, cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("64").status.code(), Some(3));
    assert_eq!(run("4096").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn family_small_report() {
    let o = isojac(&["family", "--m", "6", "--digits", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("mu(sqrt(6)) = 0.9854941"));
    assert!(text.contains("mu(sqrt(6)/3) = 0.4214295"));
    assert_eq!(text.matches("\nC(alpha_1, alpha_").count(), 1);
    assert!(text.contains("(x^4 + 276*x^3 + 342*x^2 - 396*x - 207)"));
    assert_eq!(isojac(&["family", "--m", "12"]).status.code(), Some(2));
    assert_eq!(isojac(&["family", "--m", "6", "--digits", "6"]).status.code(), Some(2));
}

#[test]
fn family_json_round_trips_and_agrees_with_text() {
    let path = scratch("m6.json");
    let o = isojac(&["family", "--m", "6", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let json = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let report: FamilyReport = serde_json::from_str(&json).unwrap();
    let again: FamilyReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    assert!(report.all_certified());

    let text = stdout(&isojac(&["family", "--m", "6"]));
    for a in &report.alphas {
        assert!(text.contains(&a.mu), "{} missing from text", a.mu);
        assert!(text.contains(&a.j), "{} missing from text", a.j);
    }
    for q in &report.quartics {
        for c in q.equation.coefficients.values() {
            assert!(text.contains(&c.decimal));
        }
    }
}

#[test]
fn iso_examples() {
    let o = isojac(&["iso", "0,0,0", "6,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Isomorphic\n"));
    assert!(stdout(&o).contains("witness"));

    let o = isojac(&["iso", "1,3,5", "1,3,-5"]);
    assert!(stdout(&o).starts_with("NonIsomorphic\n"));
    assert!(stdout(&o).contains("product: -15"));

    let o = isojac(&["iso", "-1,-3,5", "1,3,5"]);
    assert!(stdout(&o).starts_with("Isomorphic\n"));

    assert_eq!(isojac(&["iso", "2,0,0", "0,0,0"]).status.code(), Some(2));
    assert_eq!(isojac(&["iso", "1,2,3", "1,2,-3"]).status.code(), Some(2));
    assert_eq!(isojac(&["iso", "1,2", "0,0,0"]).status.code(), Some(2));
}

#[test]
fn iso_with_intervals() {
    let o = isojac(&["iso", "1+-1/1000,3,5", "1,3,-5"]);
    assert!(stdout(&o).starts_with("NonIsomorphic\n"));
    let o = isojac(&["iso", "1+-1/1000,3,5", "1,3,5"]);
    assert!(stdout(&o).starts_with("Undecided\n"));
    let o = isojac(&["iso", "0.5,0.25,-1.75", "1/2,1/4,-7/4"]);
    assert!(stdout(&o).starts_with("Isomorphic\n"));
}

#[test]
fn certify_examples() {
    for (m, d) in [("6", "3"), ("30", "15")] {
        let o = isojac(&["certify", "--m", m, "--d", d]);
        assert_eq!(o.status.code(), Some(0));
        let cert: isojac::latticecert::IsoCertificate = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(cert.is_valid());
        assert_eq!(cert.det.abs(), 1);
    }
    assert_eq!(isojac(&["certify", "--m", "6", "--d", "2"]).status.code(), Some(2));
    assert_eq!(isojac(&["certify", "--m", "6", "--d", "5"]).status.code(), Some(2));
}

#[test]
fn run_writes_to_the_given_streams() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = isojac_cli::run(["isojac", "classpoly", "--m", "10"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(String::from_utf8(out).unwrap().trim(), "x^2 - 425692800*x + 9103145472000");
}
