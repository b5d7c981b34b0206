use std::process::{Command, Output};

fn klein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein"))
        .args(args)
        .env_remove("KLEIN_WORKERS")
        .env_remove("KLEIN_DEGREE_CAP")
        .env_remove("KLEIN_SEED")
        .output()
        .expect("run klein")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = klein(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_ideal_reports() {
    let r = json(&["check-ideal", "a^3", "b^4"]);
    assert_eq!(r["parameter"], true);
    assert_eq!(r["steenrod_closed"], true);
    assert_eq!(r["c3_invariant"], false);
    assert_eq!(r["generators"], serde_json::json!(["a^3", "b^4"]));
    assert!(r["certificates"][0]["sq"].is_array());

    let r = json(&["check-ideal", "a", "b"]);
    for flag in ["parameter", "steenrod_closed", "c3_invariant", "orbit_generated"] {
        assert_eq!(r[flag], true, "{flag}");
    }
    assert_eq!(r["rep_type"], "nontrivial");

    let r = json(&["check-ideal", "a*b", "b^2"]);
    assert_eq!(r["parameter"], false);
}

#[test]
fn check_ideal_text() {
    let o = klein(&["check-ideal", "a^2*b + a*b^2", "a^4 + a^2*b^2 + b^4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("rep-type         trivial"), "{text}");
    assert!(text.contains("c3-invariant     yes"), "{text}");
}

#[test]
fn parse_errors_exit_2() {
    let o = klein(&["check-ideal", "a^"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = klein(&["check-ideal", "a^3 + b"]);
    assert_eq!(o.status.code(), Some(2), "inhomogeneous generator");
    let o = klein(&["--degree-cap", "4", "check-ideal", "a^5", "b"]);
    assert_eq!(o.status.code(), Some(2), "cap exceeded");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(klein(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(klein(&["search"]).status.code(), Some(2));
    assert_eq!(klein(&["search", "--degrees", "0..3"]).status.code(), Some(2));
    assert_eq!(klein(&["search", "--degrees", "21"]).status.code(), Some(2));
    assert_eq!(klein(&["--workers", "0", "search", "--degrees", "2"]).status.code(), Some(2));
    assert_eq!(klein(&["--format", "yaml", "density"]).status.code(), Some(2));
    assert_eq!(klein(&["--help"]).status.code(), Some(0));
}

#[test]
fn search_range() {
    let r = json(&["search", "--degrees", "1..20"]);
    let reports = r.as_array().unwrap();
    assert_eq!(reports.len(), 20);
    let mut hit = Vec::new();
    for rep in reports {
        let survivors = rep["survivors"].as_array().unwrap();
        if !survivors.is_empty() {
            let n = rep["degree"].as_u64().unwrap();
            assert_eq!(survivors.len(), 1);
            let expected = if n == 1 { "a".to_string() } else { format!("a^{n}") };
            assert_eq!(survivors[0]["v"], expected);
            assert!(survivors[0]["certificate"]["sq1"].is_object());
            hit.push(n);
        }
        for key in ["candidates", "after_kernel", "after_coprime", "elapsed_ms", "config"] {
            assert!(!rep[key].is_null(), "{key}");
        }
    }
    assert_eq!(hit, [1, 2, 4, 8, 16]);
}

#[test]
fn search_single_degree_and_workers() {
    let r = json(&["search", "--degrees", "3"]);
    assert_eq!(r[0]["survivors"].as_array().unwrap().len(), 0);
    let one = klein(&["--workers", "1", "search", "--degrees", "8"]);
    let four = klein(&["--workers", "4", "search", "--degrees", "8"]);
    assert_eq!(stdout(&one), stdout(&four));
    let brute = klein(&["search", "--degrees", "8", "--no-kernel-prefilter"]);
    let brute = stdout(&brute);
    let fast = stdout(&one);
    let survivors = |s: &str| s.lines().nth(1).unwrap().split_whitespace().last().unwrap().to_string();
    assert_eq!(survivors(&brute), survivors(&fast));
}

#[test]
fn env_fallbacks() {
    let o = Command::new(env!("CARGO_BIN_EXE_klein"))
        .args(["search", "--degrees", "22"])
        .env("KLEIN_DEGREE_CAP", "22")
        .env("KLEIN_WORKERS", "2")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = Command::new(env!("CARGO_BIN_EXE_klein"))
        .args(["search", "--degrees", "2"])
        .env("KLEIN_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn admissible_tables() {
    let o = klein(&["--format", "csv", "admissible", "--bound", "1"]);
    assert_eq!(stdout(&o), "m_plus_1,n_plus_1,families\n1,1,C\n");
    let o = klein(&["--format", "csv", "admissible", "--bound", "4"]);
    let csv = stdout(&o);
    for line in ["2,3,A|B", "3,4,A", "1,1,C", "2,2,C", "4,4,C"] {
        assert!(csv.lines().any(|l| l == line), "{line} in {csv}");
    }
    let r = json(&["admissible", "--bound", "16"]);
    assert!(r.as_array().unwrap().iter().any(|p| p["low"] == 6 && p["high"] == 7));
}

#[test]
fn density_table() {
    let r = json(&["density", "--r", "64,256,1024"]);
    let d: Vec<f64> = r.as_array().unwrap().iter().map(|x| x["density_f64"].as_f64().unwrap()).collect();
    assert!(d[0] > d[1] && d[1] > d[2]);
    let c: Vec<u64> = r.as_array().unwrap().iter().map(|x| x["family_c"].as_u64().unwrap()).collect();
    assert_eq!(c, [7, 9, 11]);
}

#[test]
fn selftest_filters_and_prints_seed() {
    let o = klein(&["--seed", "7", "selftest", "--suite", "kameko", "--cases", "100"]);
    let text = stdout(&o);
    assert!(text.starts_with("seed 7\n"), "{text}");
    let suites: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(suites.len(), 1);
    assert!(suites[0].contains("kameko"));
    #[cfg(not(feature = "corrupt-sq"))]
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(klein(&["selftest", "--suite", "nope"]).status.code(), Some(2));
}

#[cfg(not(feature = "corrupt-sq"))]
#[test]
fn selftest_default_seed_passes() {
    let o = klein(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

/// Built with `--features corrupt-sq`, one bit of every `Sq^2` is flipped.
#[cfg(feature = "corrupt-sq")]
#[test]
fn corrupted_square_fails_cartan() {
    let o = klein(&["selftest", "--suite", "cartan"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL cartan"));
}
