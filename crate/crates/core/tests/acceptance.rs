//! Acceptance suite: one line per criterion, nonzero exit on any failure
//! or any run exceeding its time limit.

use std::process::ExitCode;

use torelli_core::verify;

fn main() -> ExitCode {
    let mut all_ok = true;
    for (i, (label, limit, run)) in verify::acceptance_checks().into_iter().enumerate() {
        let report = run();
        let in_time = report.elapsed <= limit;
        let ok = report.passed() && in_time;
        all_ok &= ok;
        println!(
            "[{}] criterion {}: {} — {} checks, {} failures, {:.2}s (limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            label,
            report.checks,
            report.failure_count,
            report.elapsed.as_secs_f64(),
            limit.as_secs()
        );
        for msg in &report.failures {
            println!("    {msg}");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
