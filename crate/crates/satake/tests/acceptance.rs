//! Acceptance gate: runs every verification criterion and prints one
//! pass/fail line per criterion. All comparisons are exact (zero tolerance);
//! the timed criteria enforce their budgets inside the suite itself.

use satake::verify;

#[test]
fn acceptance_criteria() {
    let results = verify::run_all();
    assert_eq!(results.len(), 12);
    let mut all_passed = true;
    for r in &results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} — {}", r.id, r.name, r.details);
        all_passed &= r.passed;
    }
    assert!(all_passed, "at least one acceptance criterion failed");
}
