//! Acceptance criteria 1 to 11, one line each.
//!
//! Every check of the verification suite belongs to one criterion; a
//! criterion passes when all its checks pass. Failures listed in
//! `KNOWN_RED` are printed as FAIL but do not fail the run unless
//! `KHOCO_STRICT=1`; see notes/decisions.md for each.

use std::process::ExitCode;
use std::time::Instant;

use khoco::exec::{DeadlineBudget, RayonExecutor};
use khoco::verify::{run_checks, Ctx, Status, VerificationRecord};

const CRITERIA: [&str; 11] = [
    "Hopf baseline",
    "reduced = unreduced",
    "connect sum",
    "RII/RIII counterexamples",
    "RII doubling",
    "Hopf recursion",
    "torus links",
    "annular",
    "sl3",
    "asymptotics",
    "property-substituted report",
];

/// The printed branched-unknot comparator is off by a factor of two.
const KNOWN_RED: &[&str] = &["asym-branched-unknot"];

fn main() -> ExitCode {
    let strict = std::env::var("KHOCO_STRICT").is_ok_and(|v| v == "1");
    let ctx = Ctx::new(RayonExecutor::from_env(), DeadlineBudget::env_limit(Some(600_000)));
    let t = Instant::now();
    let recs = run_checks(&ctx, |_| true);
    let mut unexpected = Vec::new();
    for (k, title) in CRITERIA.iter().enumerate() {
        let crit = k as u8 + 1;
        let mine: Vec<&VerificationRecord> = recs.iter().filter(|r| r.criterion == crit).collect();
        let failed: Vec<&&VerificationRecord> = mine.iter().filter(|r| r.status == Status::Fail).collect();
        let ms: u64 = mine.iter().map(|r| r.runtime_ms).sum();
        let ids: Vec<&str> = mine.iter().map(|r| r.check_id.as_str()).collect();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {crit:>2}: {status} {title} [{}] {:.1}s", ids.join(", "), ms as f64 / 1000.0);
        for r in &failed {
            let known = KNOWN_RED.contains(&r.check_id.as_str());
            println!("    {}{}: {}", r.check_id, if known { " (known red)" } else { "" }, r.details);
            if strict || !known {
                unexpected.push(r.check_id.clone());
            }
        }
    }
    println!("{} checks in {:.1}s", recs.len(), t.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
