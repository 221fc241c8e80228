//! Random instance generation.
//!
//! The PRNG is pinned so any implementation reproduces the same corpus from
//! the same seed: a 64-bit linear congruential generator,
//! `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! seeded directly with the `GenSpec` seed. A draw advances the state once and
//! maps the top 31 bits onto `[lo, hi]` by `lo + (state >> 33) % (hi-lo+1)`.
//!
//! Coefficient distributions: numerator and denominator coefficients uniform
//! in [1, 99]; numerator constants uniform in [-10, 20]; denominator
//! constants uniform in [1, 20]; constraint coefficients uniform in [1, 30];
//! right-hand sides uniform in [50, 100]; all rows `<=`. Draw order matches
//! the file layout: master numerator row then constant, master denominator
//! row then constant, each criterion likewise, then the constraint matrix
//! row-major with each row followed by its right-hand side.

use crate::model::{rint, FractionalObjective, Instance, Rational, Row};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
}

#[derive(Debug, Clone, Copy)]
pub struct GenSpec {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub seed: u64,
    pub count: usize,
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 1 || self.m < 1 || self.k < 2 || self.count < 1 {
            return Err(GenError::BadSpec(format!(
                "need n >= 1, m >= 1, k >= 2, count >= 1 (got n={} m={} k={} count={})",
                self.n, self.m, self.k, self.count
            )));
        }
        Ok(())
    }
}

/// Pinned 64-bit linear congruential generator.
#[derive(Debug, Clone)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform draw in the inclusive range `[lo, hi]`.
    pub fn uniform(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let range = (hi - lo + 1) as u64;
        lo + ((self.next_u64() >> 33) % range) as i64
    }
}

fn draw_coeffs(rng: &mut Lcg64, n: usize, lo: i64, hi: i64) -> Vec<Rational> {
    (0..n).map(|_| rint(rng.uniform(lo, hi))).collect()
}

fn draw_objective(rng: &mut Lcg64, n: usize) -> FractionalObjective {
    let num = draw_coeffs(rng, n, 1, 99);
    let num_const = rint(rng.uniform(-10, 20));
    let den = draw_coeffs(rng, n, 1, 99);
    let den_const = rint(rng.uniform(1, 20));
    FractionalObjective::new(num, num_const, den, den_const)
}

/// File name for instance `index` of a spec: `{n}_{m}_{k}_{seed}_{index}.moilfp`.
pub fn instance_file_name(spec: &GenSpec, index: usize) -> String {
    format!("{}_{}_{}_{}_{}.moilfp", spec.n, spec.m, spec.k, spec.seed, index)
}

/// Deterministic corpus for a spec. Denominator coefficients and constants
/// are at least 1 and x >= 0, so denominators are positive everywhere;
/// constraint coefficients at least 1 with finite right-hand sides keep the
/// region bounded, and right-hand sides at least 50 keep the origin feasible.
pub fn generate(spec: &GenSpec) -> Result<Vec<Instance>, GenError> {
    spec.validate()?;
    let mut rng = Lcg64::new(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for index in 0..spec.count {
        let master = draw_objective(&mut rng, spec.n);
        let criteria = (0..spec.k).map(|_| draw_objective(&mut rng, spec.n)).collect();
        let mut rows = Vec::with_capacity(spec.m);
        for _ in 0..spec.m {
            let coeffs = draw_coeffs(&mut rng, spec.n, 1, 30);
            let rhs = rint(rng.uniform(50, 100));
            rows.push(Row::le(coeffs, rhs));
        }
        let name = instance_file_name(spec, index);
        let name = name.trim_end_matches(".moilfp").to_string();
        out.push(Instance::new(name, spec.n, rows, criteria, master));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_instance, write_instance};

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = GenSpec { n: 5, m: 3, k: 2, seed: 42, count: 3 };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(write_instance(x), write_instance(y));
        }
    }

    #[test]
    fn generated_instances_validate() {
        let spec = GenSpec { n: 4, m: 3, k: 2, seed: 7, count: 5 };
        for inst in generate(&spec).unwrap() {
            validate_instance(&inst).unwrap();
        }
    }

    #[test]
    fn table_shape_matches_spec() {
        let spec = GenSpec { n: 30, m: 10, k: 2, seed: 1, count: 10 };
        let insts = generate(&spec).unwrap();
        assert_eq!(insts.len(), 10);
        for inst in &insts {
            assert_eq!(inst.n, 30);
            assert_eq!(inst.m(), 10);
            assert_eq!(inst.k(), 2);
        }
    }

    #[test]
    fn bad_spec_rejected() {
        let spec = GenSpec { n: 3, m: 2, k: 1, seed: 0, count: 1 };
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn uniform_draws_stay_in_range() {
        let mut rng = Lcg64::new(123);
        for _ in 0..10_000 {
            let v = rng.uniform(-10, 20);
            assert!((-10..=20).contains(&v));
        }
    }
}
