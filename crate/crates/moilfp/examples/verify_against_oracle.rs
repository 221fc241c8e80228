//! Cross-check the branch-and-bound solver against brute-force enumeration on
//! a batch of random instances: exact value equality, point efficiency.
//!
//! ```bash
//! cargo run --example verify_against_oracle
//! ```

use moilfp::generator::{generate, GenSpec};
use moilfp::oracle::{enumerate, OracleError};
use moilfp::search::{solve, SolveOptions};

fn main() {
    let mut checked = 0;
    for seed in 1..=5u64 {
        let spec = GenSpec { n: 4, m: 3, k: 2, seed, count: 2 };
        for inst in generate(&spec).expect("spec is valid") {
            let truth = match enumerate(&inst, 1_000_000) {
                Ok(t) => t,
                Err(OracleError::TooLarge { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let report = solve(&inst, &SolveOptions::default()).expect("solve");
            let (_, best) = truth.best.clone().expect("nonempty integer domain");
            assert_eq!(report.psi_opt.as_ref(), Some(&best), "{}", inst.name);
            let x = report.x_opt.expect("optimum exists");
            assert!(truth.efficient_contains(&x), "{}", inst.name);
            checked += 1;
            println!("{}: solver == oracle ({} efficient points)", inst.name, truth.efficient.len());
        }
    }
    println!("-- {checked} instances verified --");
}
