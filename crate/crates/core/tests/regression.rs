use std::sync::OnceLock;

use compalg::catalog::{expected_results, PaperStatus};
use compalg::report::{paper_regression, RecordStatus, RegressionReport};

fn report() -> &'static RegressionReport {
    static REPORT: OnceLock<RegressionReport> = OnceLock::new();
    REPORT.get_or_init(paper_regression)
}

#[test]
fn every_row_is_recorded_once_and_consistently() {
    let r = report();
    let rows = expected_results();
    assert_eq!(r.records.len(), rows.len());
    for row in &rows {
        let rec = r
            .record(&row.id)
            .unwrap_or_else(|| panic!("missing {}", row.id));
        assert!(rec.consistent, "{}: {:?}", rec.id, rec.findings);
    }
    assert_eq!(r.summary.inconsistent_records, 0);
    assert_eq!(r.summary.inconsistent_pairs, 0);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn annotations_agree_with_recomputed_status() {
    for rec in &report().records {
        let agrees = match rec.annotation {
            PaperStatus::Confirmed => rec.status == RecordStatus::Match,
            PaperStatus::GarbledInPaper => rec.status == RecordStatus::GarbledInPaper,
            PaperStatus::Unattributed => matches!(
                rec.status,
                RecordStatus::UnattributedMatch | RecordStatus::UnattributedNomatch
            ),
        };
        assert!(
            agrees,
            "{}: annotated {:?}, computed {}",
            rec.id, rec.annotation, rec.status
        );
        if rec.status == RecordStatus::GarbledInPaper {
            assert!(!rec.findings.is_empty(), "{} has no findings", rec.id);
        }
    }
}

#[test]
fn known_confirmations() {
    let r = report();
    for id in [
        "invariants-dim2/A2_2+A2_3/derivation",
        "invariants-dim2/A2_2+A2_4/derivation",
        "invariants-dim2/A2_2+A2_4/automorphism",
        "rota-baxter-dim2/A2_2+A2_4/rota-baxter",
        "invariants-dim3/A3_3+A3_11/automorphism",
        "invariants-dim4/A4_1+A4_2/reynolds",
    ] {
        assert_eq!(
            r.record(id).map(|x| x.status),
            Some(RecordStatus::Match),
            "{id}"
        );
    }
    assert_eq!(
        r.record("invariants-dim2/A2_2+A2_3/centroid")
            .map(|x| x.status),
        Some(RecordStatus::GarbledInPaper)
    );
}

#[test]
fn witnesses_verify_and_diagonal_pairs_are_listed() {
    let r = report();
    for p in &r.pairs {
        assert!(p.consistent, "{}", p.pair);
        if p.witness["status"] == "found" {
            assert_eq!(p.witness["verified"], true, "{}", p.pair);
        }
        if p.onnose_compatible {
            assert_eq!(p.witness["status"], "found", "{}", p.pair);
        }
    }
    let dim2 = &r.onnose_compatible[&2];
    for name in ["A2_1", "A2_2", "A2_3", "A2_4"] {
        assert!(dim2.contains(&format!("({name}, {name})")), "{dim2:?}");
    }
    assert!(r.onnose_compatible[&3].contains(&"(A3_10, A3_12)".to_string()));
}

#[test]
fn regression_is_idempotent() {
    let again = paper_regression();
    assert_eq!(report().to_json(), again.to_json());
    assert_eq!(report().to_string(), again.to_string());
}
