//! Acceptance criteria. Each criterion runs one or more verification suites
//! at the pinned parameters and prints a single PASS/FAIL line.

use std::time::Instant;

use qbarnes::verify::{run_suite, Report, VerifyConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    target_secs: u64,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "generating function equals closed form (30 samples, r<=3, n<=12, x in {0,1,3})",
        suites: &["theorem1-gf"],
        target_secs: 30,
    },
    Criterion {
        id: 2,
        title: "addition formula exact (20 samples, n<=8, w<=5, r<=3)",
        suites: &["addition"],
        target_secs: 10,
    },
    Criterion {
        id: 3,
        title: "distribution relation exact (20 samples, f in {2,3}, n<=8, r<=2, w<=2)",
        suites: &["distribution"],
        target_secs: 60,
    },
    Criterion {
        id: 4,
        title: "r-fold Riemann sums converge (p in {3,5,7}, n<=3, N=1..4)",
        suites: &["eq1-convergence"],
        target_secs: 180,
    },
    Criterion {
        id: 5,
        title: "measure additivity exact and measure bounded (k<=4, f<=2, N<=2)",
        suites: &["measure-additivity", "measure-bound"],
        target_secs: 60,
    },
    Criterion {
        id: 6,
        title: "measure integral converges strictly (k<=2, p in {3,5}, N=1..4)",
        suites: &["prop5"],
        target_secs: 60,
    },
    Criterion {
        id: 7,
        title: "q -> 1 limit equals classical value at 1/u (n<=10, r<=2, 10 samples)",
        suites: &["qlimit"],
        target_secs: 30,
    },
    Criterion {
        id: 8,
        title: "Carlitz numbers at 1/u (k<=10, 10 samples)",
        suites: &["carlitz-bridge"],
        target_secs: 5,
    },
    Criterion {
        id: 9,
        title: "character Riemann sums and L-function interpolation (p in {3,5}, k<=4)",
        suites: &["eq8-bridge", "interpolation"],
        target_secs: 180,
    },
    Criterion {
        id: 10,
        title: "Kummer congruences (p in {3,5}, n in {1,2}, three pairs)",
        suites: &["kummer"],
        target_secs: 120,
    },
    Criterion {
        id: 11,
        title: "unit-power congruence (units x < p^2, n <= M-1, p in {3,5,7})",
        suites: &["unit-power"],
        target_secs: 30,
    },
];

fn describe_failures(reports: &[Report]) -> String {
    reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass))
        .take(3)
        .map(|c| serde_json::to_string(c).unwrap())
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() {
    let config = VerifyConfig::default();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let reports: Result<Vec<Report>, _> =
            c.suites.iter().map(|s| run_suite(s, &config)).collect();
        let elapsed = start.elapsed().as_secs_f64();
        let line = match &reports {
            Ok(reports) => {
                let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
                let pass = reports.iter().all(|r| r.pass) && checks > 0;
                if !pass {
                    failed.push(c.id);
                }
                let status = if pass { "PASS" } else { "FAIL" };
                let mut line = format!(
                    "criterion {:>2} [PRIMARY] {status}: {} — {checks} checks in {elapsed:.2}s (target < {}s)",
                    c.id, c.title, c.target_secs
                );
                if !pass {
                    line.push_str(&format!(" — {}", describe_failures(reports)));
                }
                line
            }
            Err(e) => {
                failed.push(c.id);
                format!("criterion {:>2} [PRIMARY] FAIL: {} — error: {e}", c.id, c.title)
            }
        };
        println!("{line}");
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
