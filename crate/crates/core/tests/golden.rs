//! Golden-file comparison for the full structure reports. Regenerate with
//! `UPDATE_GOLDENS=1 cargo test -p hyperprime --test golden`.

use hyperprime::parse;
use hyperprime::report;
use std::path::PathBuf;

fn check_golden(fixture: &str, tag: &str) {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let input = root.join("../../fixtures").join(fixture);
    let golden = root.join("tests/golden").join(format!("{tag}_report.txt"));
    let parsed = parse::parse_structure(&std::fs::read_to_string(input).unwrap()).unwrap();
    let rendered = report::full_report(tag, &parsed);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
        std::fs::write(&golden, &rendered).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&golden)
        .unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
    assert_eq!(
        rendered,
        expected,
        "report for {tag} drifted from its golden file"
    );
}

#[test]
fn fix_a_report_matches_golden() {
    check_golden("fix_a.hyp", "fix_a");
}

#[test]
fn fix_b_report_matches_golden() {
    check_golden("fix_b.hyp", "fix_b");
}
