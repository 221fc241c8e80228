//! Solve the bundled reference instance and print the full report.
//!
//! ```bash
//! cargo run --example solve_reference
//! ```

use moilfp::fixtures::reference_instance;
use moilfp::search::{render_report, solve, SolveOptions};

fn main() {
    let inst = reference_instance();
    let report = solve(&inst, &SolveOptions::default()).expect("reference instance solves");
    print!("{}", render_report(&inst, &report));
}
