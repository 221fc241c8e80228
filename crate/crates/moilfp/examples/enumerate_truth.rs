//! Brute-force enumeration of the reference instance: every feasible integer
//! point, the exact efficient set, and the best master value over it.
//!
//! ```bash
//! cargo run --example enumerate_truth
//! ```

use moilfp::fixtures::reference_instance;
use moilfp::oracle::{enumerate, DEFAULT_BOX_CAP};

fn main() {
    let inst = reference_instance();
    let truth = enumerate(&inst, DEFAULT_BOX_CAP).expect("reference box is small");
    print!("{}", truth.render(&inst));
}
