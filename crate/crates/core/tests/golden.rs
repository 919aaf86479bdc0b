use hypermirror::golden::{embedded_tables, golden_suite, golden_suite_with, ItemStatus};
use hypermirror::Exec;

#[test]
fn intact_tables_pass() {
    let report = golden_suite(24, Exec::Parallel).unwrap();
    assert_eq!(report.items.len(), 13);
    assert!(report.passed(), "{report:#?}");
}

#[test]
fn corrupted_coefficient_fails_only_its_item() {
    let mut tables = embedded_tables();
    let g2 = tables.iter_mut().find(|t| t.name == "s5.g2").unwrap();
    g2.coeffs[1] = "4208177/4".into();
    let report = golden_suite_with(&tables, 24, Exec::Sequential).unwrap();
    let failed: Vec<_> = report.failures().map(|i| i.name.as_str()).collect();
    assert_eq!(failed, ["s5.g2"]);
    assert_eq!(
        report.item("s5.g2").unwrap().status,
        ItemStatus::Fail {
            exponent: 2,
            expected: "4208177/4".into(),
            computed: "4208175/4".into()
        }
    );
}

#[test]
fn short_order_is_partial() {
    let report = golden_suite(12, Exec::Parallel).unwrap();
    assert_eq!(report.failures().count(), 0);
    assert_eq!(
        report.item("s3.f0_tilde").unwrap().status,
        ItemStatus::Partial {
            checked_through: 12,
            table_order: 21
        }
    );
    assert_eq!(report.item("s3.z_of_q").unwrap().status, ItemStatus::Pass);
}

#[test]
fn parallel_and_sequential_reports_match() {
    assert_eq!(
        golden_suite(24, Exec::Parallel).unwrap(),
        golden_suite(24, Exec::Sequential).unwrap()
    );
}
