//! Exact maximization of a linear fractional objective over the integer
//! efficient set of a multi-objective integer linear fractional program.
//!
//! All solver arithmetic is exact rational; decimals appear only in display
//! formatting. The main entry points are [`search::solve`] for the branch and
//! bound search, [`oracle::enumerate`] for brute-force ground truth, and
//! [`generator::generate`] for deterministic random corpora.

pub mod bench;
pub mod bnb;
pub mod cli;
pub mod efficiency;
pub mod fixtures;
pub mod generator;
pub mod model;
pub mod oracle;
pub mod search;
pub mod simplex;
