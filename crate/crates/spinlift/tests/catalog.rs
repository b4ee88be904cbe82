use serde_json::{json, Value};

use spinlift::catalog::{
    bundled_catalog, bundled_catalog_json, bundled_expectations, classify, load_catalog,
    parse_catalog, parse_expectations, render_classification, render_report, verify, Format,
};
use spinlift::Error;

fn bundled() -> Value {
    serde_json::from_str(bundled_catalog_json()).unwrap()
}

fn record_json(family: &str) -> Value {
    bundled()["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["family"] == family)
        .unwrap()
        .clone()
}

fn one_record(record: Value) -> String {
    json!({ "format_version": 1, "records": [record] }).to_string()
}

fn toy(orientable: bool, alpha: Value) -> Value {
    json!({
        "family": "toy",
        "holonomy": "C2",
        "nilpotency_class": 1,
        "orientable": orientable,
        "generators": [
            {"name": "alpha", "role": "holonomy"},
            {"name": "a", "role": "lattice"},
            {"name": "b", "role": "lattice"},
            {"name": "c", "role": "lattice"},
            {"name": "d", "role": "lattice"}
        ],
        "relations": [
            {"lhs": [["alpha", 2]], "rhs": [["b", 1]]},
            {"lhs": [["alpha", -1], ["a", 1], ["alpha", 1]], "rhs": [["a", -1]]},
            {"lhs": [["a", -1], ["b", 1], ["a", 1]], "rhs": [["b", 1]]}
        ],
        "holonomy_matrices": {"alpha": alpha},
        "parameter_classes": [[]]
    })
}

#[test]
fn single_record_loads() {
    let catalog = parse_catalog(&one_record(record_json("4"))).unwrap();
    assert_eq!(catalog.len(), 1);
    assert_eq!(catalog.records()[0].family, "4");
    assert_eq!(catalog.records()[0].parameters(), ["k1", "k2", "k3", "k4"]);
}

#[test]
fn load_from_disk() {
    let dir = std::env::temp_dir().join(format!("spinlift-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.json");
    std::fs::write(&path, one_record(record_json("27"))).unwrap();
    assert_eq!(load_catalog(&path).unwrap().len(), 1);
    assert!(matches!(
        load_catalog(dir.join("missing.json")),
        Err(Error::Io(_))
    ));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn corrupted_relator_is_inconsistent() {
    let mut r = record_json("4");
    r["relations"][0]["lhs"] = json!([["alpha", 1]]);
    match parse_catalog(&one_record(r)) {
        Err(Error::InconsistentRecord { family, detail }) => {
            assert_eq!(family, "4");
            assert!(detail.contains("alpha"), "{detail}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_matrix_is_inconsistent() {
    let mut r = record_json("4");
    r["holonomy_matrices"]["alpha"] =
        json!([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    assert!(matches!(
        parse_catalog(&one_record(r)),
        Err(Error::InconsistentRecord { .. })
    ));
}

#[test]
fn unknown_holonomy_is_a_schema_error() {
    let mut r = record_json("4");
    r["holonomy"] = json!("A5");
    match parse_catalog(&one_record(r)) {
        Err(Error::Schema(msg)) => assert!(msg.contains("A5"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn schema_errors_carry_a_location() {
    let mut doc = bundled();
    doc["records"][2]["nilpotency_class"] = json!("one");
    let text = serde_json::to_string_pretty(&doc).unwrap();
    match parse_catalog(&text) {
        Err(Error::Schema(msg)) => {
            assert!(msg.contains("records[2].nilpotency_class"), "{msg}");
            assert!(msg.contains("line"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
    let mut r = record_json("4");
    r["colour"] = json!("red");
    match parse_catalog(&one_record(r)) {
        Err(Error::Schema(msg)) => assert!(msg.contains("colour"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn format_version_and_duplicates() {
    let text = json!({ "format_version": 2, "records": [] }).to_string();
    assert!(matches!(parse_catalog(&text), Err(Error::Schema(_))));
    let r = record_json("4");
    let text = json!({ "format_version": 1, "records": [r.clone(), r] }).to_string();
    assert!(matches!(parse_catalog(&text), Err(Error::Schema(_))));
    let text = json!({"format_version": 1, "rows": [
        {"family": "1", "holonomy": "1", "params": [0, 0, 0], "count": 16},
        {"family": "1", "holonomy": "1", "params": [2, 0, 0], "count": 16}
    ]})
    .to_string();
    assert!(matches!(parse_expectations(&text), Err(Error::Schema(_))));
}

#[test]
fn orientability_claim_is_checked() {
    let reflection = json!([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    let half_turn = json!([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]);
    assert!(parse_catalog(&one_record(toy(false, reflection.clone()))).is_ok());
    assert!(parse_catalog(&one_record(toy(true, half_turn.clone()))).is_ok());
    assert!(matches!(
        parse_catalog(&one_record(toy(true, reflection))),
        Err(Error::InconsistentRecord { .. })
    ));
    assert!(matches!(
        parse_catalog(&one_record(toy(false, half_turn))),
        Err(Error::InconsistentRecord { .. })
    ));
}

#[test]
fn non_orientable_records_are_refused() {
    let reflection = json!([[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    let catalog = parse_catalog(&one_record(toy(false, reflection))).unwrap();
    match classify(&catalog, Some("toy"), None) {
        Err(e @ Error::NonOrientable(_)) => assert!(e.to_string().contains("SL"), "{e}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn classify_examples() {
    let catalog = bundled_catalog().unwrap();
    let count = |family: &str, params: &[i64]| {
        let rows = classify(&catalog, Some(family), Some(params)).unwrap();
        assert_eq!(rows.len(), 1);
        rows[0].clone()
    };
    let row = count("27", &[0, 0, 0, 1, 0]);
    assert_eq!(
        (row.count, row.parallelizable, row.holonomy.as_str()),
        (16, true, "C2×C2")
    );
    let row = count("B5b", &[1, 1, 0, 0, 1]);
    assert_eq!(
        (row.count, row.exists, row.parallelizable),
        (0, false, false)
    );
    let row = count("1", &[2, 0, 0]);
    assert_eq!(row.count, 16);
    assert_eq!(row.params, [2, 0, 0]);
    assert_eq!(row.params_mod2, [0, 0, 0]);
    assert!(matches!(
        classify(&catalog, Some("999"), None),
        Err(Error::FamilyNotFound(_))
    ));
    assert!(classify(&catalog, Some("1"), Some(&[0, 0])).is_err());
}

#[test]
fn classify_is_stable_under_record_permutation() {
    let mut doc = bundled();
    let reference = classify(&parse_catalog(&doc.to_string()).unwrap(), None, None).unwrap();
    let records = doc["records"].as_array_mut().unwrap();
    records.reverse();
    let n = records.len();
    records.rotate_left(n / 3);
    let permuted = classify(&parse_catalog(&doc.to_string()).unwrap(), None, None).unwrap();
    assert_eq!(reference, permuted);
    assert_eq!(
        render_classification(&reference, Format::Json),
        render_classification(&permuted, Format::Json)
    );
}

#[test]
fn full_verification() {
    let catalog = bundled_catalog().unwrap();
    let report = verify(&catalog, &bundled_expectations().unwrap());
    assert!(report.passed());
    assert_eq!(report.summary.rows, 127);
    assert_eq!(report.summary.failures, 0);
    assert_eq!(report.summary.zero_rows, 15);
    assert_eq!(report.zero_rows().len(), 15);
}

#[test]
fn altered_count_fails_one_row() {
    let catalog = bundled_catalog().unwrap();
    let mut expectations = bundled_expectations().unwrap();
    expectations.rows[3].count += 1;
    let report = verify(&catalog, &expectations);
    assert!(!report.passed());
    assert_eq!(report.summary.failures, 1);
    let failing: Vec<_> = report.rows.iter().filter(|r| !r.pass).collect();
    assert_eq!(failing[0].family, expectations.rows[3].family);
}

#[test]
fn missing_family_is_a_failing_row() {
    let catalog = parse_catalog(&one_record(record_json("4"))).unwrap();
    let expectations = parse_expectations(
        &json!({"format_version": 1, "rows": [
            {"family": "4", "holonomy": "C2", "params": [0, 0, 0, 0], "count": 16},
            {"family": "5", "holonomy": "C2", "params": [1, 0, 0, 1], "count": 0}
        ]})
        .to_string(),
    )
    .unwrap();
    let report = verify(&catalog, &expectations);
    assert_eq!(report.summary.failures, 1);
    assert_eq!(report.summary.zero_rows, 0);
    let bad = report.rows.iter().find(|r| r.family == "5").unwrap();
    assert!(bad.computed.is_none());
    assert!(bad.error.as_deref().unwrap().contains('5'));
}

#[test]
fn empty_expectations_pass() {
    let catalog = bundled_catalog().unwrap();
    let empty = parse_expectations(r#"{"format_version": 1, "rows": []}"#).unwrap();
    let report = verify(&catalog, &empty);
    assert!(report.passed());
    assert_eq!(report.summary.rows, 0);
}

#[test]
fn reports_are_deterministic() {
    let catalog = bundled_catalog().unwrap();
    let expectations = bundled_expectations().unwrap();
    let a = render_report(&verify(&catalog, &expectations), Format::Json);
    let b = render_report(
        &verify(&bundled_catalog().unwrap(), &expectations),
        Format::Json,
    );
    assert_eq!(a, b);
    let doc: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["summary"]["zero_rows"], 15);
}

#[test]
fn renderings() {
    let catalog = bundled_catalog().unwrap();
    let rows = classify(&catalog, Some("4"), None).unwrap();
    let csv = render_classification(&rows, Format::Csv);
    assert_eq!(csv.lines().count(), rows.len() + 1);
    let md = render_classification(&rows, Format::Markdown);
    assert!(
        md.lines().nth(1).unwrap().starts_with("|-")
            || md.lines().nth(1).unwrap().starts_with("| -")
    );
    let text = render_classification(&rows, Format::Text);
    assert!(text.contains('4'));
    assert!("yaml".parse::<Format>().is_err());
}
