use compalg::catalog::pair;
use compalg::cohomology::CohomologyMode;
use compalg::nonlinear::Variant;
use compalg::report::{run_report, ReportOptions, REPORT_SCHEMA};
use compalg::Invariant;
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> JSONSchema {
    let raw: Value = serde_json::from_str(REPORT_SCHEMA).expect("schema is json");
    JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(schema: &JSONSchema, report: &Value) {
    if let Err(errors) = schema.validate(report) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect();
        panic!("report violates schema: {msgs:#?}");
    }
}

#[test]
fn reports_validate_for_every_option_combination() {
    let s = schema();
    for (a, b) in [("A2_2", "A2_3"), ("A2_2", "A2_4"), ("A4_1", "A4_2")] {
        let p = pair(a, b).unwrap();
        for variant in [Variant::Paper, Variant::Standard] {
            for cohomology_mode in CohomologyMode::ALL {
                let opts = ReportOptions {
                    variant,
                    cohomology_mode,
                };
                let report = run_report(&p, &Invariant::ALL, opts).unwrap();
                assert_valid(&s, &report);
                assert_eq!(
                    report["invariants"].as_array().unwrap().len(),
                    Invariant::ALL.len()
                );
            }
        }
    }
}

#[test]
fn symbolic_pair_report_validates_and_warns() {
    let p = pair("A3_2", "A3_4").unwrap();
    let kinds = [
        Invariant::Derivation,
        Invariant::Centroid,
        Invariant::QuasiCentroid,
        Invariant::Cohomology,
    ];
    let report = run_report(&p, &kinds, ReportOptions::default()).unwrap();
    assert_valid(&schema(), &report);
    assert_eq!(report["pair"]["dim"], 3);
}

#[test]
fn four_dimensional_nonlinear_items_are_skipped_with_reason() {
    let p = pair("A4_1", "A4_2").unwrap();
    let report = run_report(&p, &[Invariant::Nijenhuis], ReportOptions::default()).unwrap();
    let item = &report["invariants"][0];
    assert_eq!(item["method"], "skipped");
    assert!(item["reason"].is_string());
    assert_eq!(item["verdicts"]["zero_map"], true);
}

#[test]
fn schema_rejects_tampered_reports() {
    let s = schema();
    let p = pair("A2_2", "A2_4").unwrap();
    let good = run_report(&p, &[Invariant::Derivation], ReportOptions::default()).unwrap();

    let mut extra = good.clone();
    extra["invariants"][0]["surprise"] = Value::Bool(true);
    assert!(!s.is_valid(&extra));

    let mut wrong_type = good.clone();
    wrong_type["invariants"][0]["dim"] = Value::String("one".into());
    assert!(!s.is_valid(&wrong_type));

    let mut missing = good;
    missing.as_object_mut().unwrap().remove("compatibility");
    assert!(!s.is_valid(&missing));
}
