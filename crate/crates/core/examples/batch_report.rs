//! Generates a batch of problem documents, runs them concurrently and prints a
//! one-line summary per report.

use torus_strata::problem::{batch_exit_code, generate, run_batch, Kind, OptionOverrides};

fn main() {
    let texts: Vec<String> = Kind::ALL
        .into_iter()
        .flat_map(|k| generate(k, 11, 2))
        .map(|doc| doc.to_string())
        .collect();
    let outcomes = run_batch(&texts, &OptionOverrides::default());
    for o in &outcomes {
        println!(
            "{:<11} {:?}",
            o.report["kind"].as_str().unwrap_or("?"),
            o.status
        );
    }
    println!("exit code {}", batch_exit_code(&outcomes));
}
