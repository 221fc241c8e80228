//! Bundled reference instance: 6 variables, 3 constraints, 2 criteria.
//! Used by the `selftest` command and the regression tests.

use crate::model::{parse_instance, Instance};

pub const REFERENCE_TEXT: &str = include_str!("../instances/reference_6_3_2.moilfp");

pub fn reference_instance() -> Instance {
    parse_instance(REFERENCE_TEXT, "reference_6_3_2").expect("bundled instance parses")
}
