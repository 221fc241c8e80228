//! Collect and print the search event log: relaxations, branchings, both cut
//! types, integer points, fathoming reasons and incumbent updates, all with
//! exact rational values.
//!
//! ```bash
//! cargo run --example trace_search
//! ```

use moilfp::fixtures::reference_instance;
use moilfp::search::{solve, SolveOptions};

fn main() {
    let inst = reference_instance();
    let opts = SolveOptions { collect_trace: true, ..Default::default() };
    let report = solve(&inst, &opts).expect("reference instance solves");
    for event in &report.trace {
        println!("{}", event.render());
    }
    println!(
        "-- {} events, {} nodes created, {} saturated --",
        report.trace.len(),
        report.created_nodes,
        report.saturated_nodes
    );
}
