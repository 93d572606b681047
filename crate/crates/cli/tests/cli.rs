use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn exang(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exang"))
        .args(args)
        .env_remove("EXANG_MAX_MULT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("exang-cli-{}-{name}", std::process::id()))
}

#[test]
fn validate_f1_passes_and_prints_bounds() {
    let o = exang(&["validate", &fixture("F1")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("bounds: max_mult=2 padding=2"));
    assert!(text.contains("verdict: PASS"));
}

#[test]
fn f2_quotient_is_no_with_witness() {
    let o = exang(&["quotient", &fixture("F2"), "--subcat", "X234", "--decide"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("verdict: NO"));
    assert!(text.contains("witness: 4 -> 2/3/4 -> 1/2/3 -> 1"), "{text}");
}

#[test]
fn f1_quotient_is_yes() {
    let o = exang(&["quotient", &fixture("F1"), "--subcat", "X", "--decide"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: YES"));
}

#[test]
fn xi_from_h_on_f3_is_neither() {
    let o = exang(&["xi-from", &fixture("F3"), "--subcat", "H", "--flags"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: neither n-exact nor (n+2)-angulated"));
}

#[test]
fn proper_and_wkc_subcommands() {
    let o = exang(&["proper", &fixture("F3"), "--class", "xiH"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = exang(&["wkc", &fixture("F1"), "--subcat", "X", "--exangle", "S1:S3:1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = exang(&["wkc", &fixture("F2"), "--subcat", "X234", "--exangle", "1:4:1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_2() {
    let o = exang(&["validate", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = exang(&["validate", "does-not-exist.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = exang(&["quotient", &fixture("F1"), "--subcat", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = exang(&["quotient", &fixture("F1"), "--subcat", "P"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    let (a, b) = (scratch("a.json"), scratch("b.json"));
    for p in [&a, &b] {
        let o = exang(&["--json", p.to_str().unwrap(), "quotient", &fixture("F2"), "--subcat", "X234", "--decide"]);
        assert_eq!(o.status.code(), Some(1));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let doc: serde_json::Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(doc["ok"], false);
    assert!(doc["bounds"].as_str().unwrap().starts_with("max_mult=2"));
    assert!(doc["extra"]["witness"]["complex"].as_str().unwrap().starts_with("4 -> "));
    std::fs::remove_file(a).ok();
    std::fs::remove_file(b).ok();
}
