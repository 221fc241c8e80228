//! Test integer points for efficiency and watch the dominance archive evolve.
//!
//! ```bash
//! cargo run --example test_efficiency
//! ```

use moilfp::efficiency::{efficiency_test, Archive};
use moilfp::fixtures::reference_instance;
use moilfp::model::Point;

fn main() {
    let inst = reference_instance();
    let mut archive = Archive::new();

    for coords in [[0i64, 0, 3, 0, 0, 0], [4, 0, 0, 0, 0, 0], [0, 1, 0, 12, 0, 0]] {
        let x = Point::from_ints(&coords);
        let z = inst.eval_criteria(&x).unwrap();
        let verdict = efficiency_test(&inst, &x).unwrap();
        println!("x={} z={} efficient={}", x.render(), z.render4(), verdict.efficient);
        if let Some((y, zy)) = &verdict.witness {
            println!("  dominated; efficient witness y={} z={}", y.render(), zy.render4());
            archive.insert(y.clone(), zy.clone());
        }
        archive.insert(x, z);
    }

    println!("archive ({} mutually non-dominated entries):", archive.len());
    for (x, z) in archive.entries() {
        println!("  x={} z={}", x.render(), z.render4());
    }
}
