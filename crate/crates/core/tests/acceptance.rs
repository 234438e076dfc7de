//! The acceptance criteria, one line each. Runs without the test harness so
//! the table is always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use hurwitz3::suite::*;
use hurwitz3::DEFAULT_BUDGET;

const SEED: u64 = 0x5eed;

type Criterion<'a> = Box<dyn Fn() -> Vec<SuiteReport> + 'a>;

fn main() -> ExitCode {
    let started = Instant::now();
    let corpus = quasipositive_corpus(7, 2);
    println!("acceptance: seed {SEED:#x}, corpus of {} braids", corpus.len());

    let criteria: Vec<(&str, Criterion)> = vec![
        ("normal-form confluence, words of length <= 10", Box::new(|| vec![confluence(10)])),
        ("delta and delta^2 have a single orbit", Box::new(|| vec![single_orbit(2)])),
        ("conjugates of an atom have one weight-0 vertex", Box::new(|| vec![single_vertex(30, 9, SEED)])),
        (
            "components agree with the orbit oracle, |U| <= 7",
            Box::new(|| vec![graph_vs_oracle(&corpus, DEFAULT_BUDGET)]),
        ),
        ("h1/h2 edges carry move certificates", Box::new(|| vec![edge_certificates(&corpus, 1)])),
        ("parentheses of delta powers are balanced", Box::new(|| vec![balanced_parentheses(4, 8)])),
        ("matching rotates and is local", Box::new(|| vec![matching_rotation(3, 8), matching_locality(3, 8)])),
        ("diamond and vertical lifting, weight <= 2", Box::new(|| vec![diamond(&corpus, 2)])),
        ("vertex round trip", Box::new(|| vec![round_trip(200, 4, 3, SEED)])),
        ("f is a power of delta", Box::new(|| vec![f_invariant(500, 8, SEED)])),
    ];

    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let reports = run();
        let ok = reports.iter().all(SuiteReport::passed);
        failed += usize::from(!ok);
        let secs: f64 = reports.iter().map(|r| r.elapsed.as_secs_f64()).sum();
        let cases: u64 = reports.iter().map(|r| r.cases).sum();
        let unknown: u64 = reports.iter().map(|r| r.unknown).sum();
        println!(
            "criterion {:>2} {}  {title}  (cases {cases}, unknown {unknown}, {secs:.1}s)",
            n + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        for r in reports.iter().filter(|r| !r.passed()) {
            for f in &r.failures {
                println!("    {}: {f}", r.name);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
