//! Drive the batch front door in-process: run a job, then re-verify the
//! certificate it shipped.
//!
//!     cargo run --example cli_job

use serde_json::json;
use skewring::cli::run_json;

fn main() {
    let ring = json!({"n": 4, "generators": {"a": [2, 3, 4, 1]}});
    let job = json!({"command": "simple", "input": {"ring": ring}});
    let report = run_json(&job.to_string());
    print!("{}", report.to_text());

    let verify = json!({"command": "verify", "input": {"ring": ring, "certificate": report.certificates}});
    let checked = run_json(&verify.to_string());
    println!("re-verification: {} (exit {})", checked.outcome, checked.exit_code);
}
