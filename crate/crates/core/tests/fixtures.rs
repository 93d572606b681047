use exang::format::{self, PresentationFile};
use exang::{Bounds, Checker};

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn full_suite(name: &str) {
    let fx = format::load(fixture_path(name)).unwrap();
    let report = Checker::new(&fx.structure, Bounds::default()).full_suite().unwrap();
    let failures: Vec<_> = report.failures().take(5).collect();
    assert!(report.ok(), "{name}: {failures:?}");
}

#[test]
fn f1_passes_full_suite() {
    full_suite("F1");
}

#[test]
fn f2_passes_full_suite() {
    full_suite("F2");
}

#[test]
fn f3_passes_full_suite() {
    full_suite("F3");
}

#[test]
fn a2_passes_full_suite() {
    full_suite("A2");
}

#[test]
fn fixtures_round_trip() {
    for name in ["F1", "F2", "F3", "A2"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let fx = format::parse(&text).unwrap();
        let again = format::parse(&PresentationFile::from_fixture(&fx).to_json()).unwrap();
        assert_eq!(fx.structure, again.structure, "{name}");
        assert_eq!(fx.subcategories, again.subcategories, "{name}");
        assert_eq!(fx.classes, again.classes, "{name}");
    }
}

