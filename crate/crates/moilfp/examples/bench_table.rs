//! Solve a small generated corpus and print the aggregated benchmark table.
//!
//! ```bash
//! cargo run --example bench_table
//! ```

use moilfp::bench::{render_tsv, run_bench};
use moilfp::generator::{generate, GenSpec};
use moilfp::search::SolveOptions;

fn main() {
    let mut instances = Vec::new();
    for (n, m) in [(3, 2), (4, 3), (5, 3)] {
        let spec = GenSpec { n, m, k: 2, seed: 7, count: 3 };
        instances.extend(generate(&spec).expect("spec is valid"));
    }
    let outcome = run_bench(&instances, &SolveOptions::default(), 2);
    print!("{}", render_tsv(&outcome.rows));
    for (name, err) in &outcome.failures {
        eprintln!("FAILED {name}: {err}");
    }
}
