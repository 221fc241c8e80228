//! Independent brute-force ground truth: enumerate the integer points of the
//! polytope, filter the efficient set by pairwise dominance and maximize the
//! master objective over it. Intentionally naive; only the integer box scan
//! is pruned. Requires integral constraint data so feasibility checks run in
//! machine integers.

use crate::model::{
    fmt4, fmt_exact, rone, rzero, CriterionVector, FractionalObjective, Instance, Point, Rational,
};
use crate::simplex::{SimplexError, SolveStatus, Tableau};
use num::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("integer box holds about {volume} points, above the cap of {cap}")]
    TooLarge { volume: u128, cap: u128 },
    #[error("feasible region is empty")]
    EmptyDomain,
    #[error("feasible region is unbounded")]
    UnboundedDomain,
    #[error("constraint data must be integral for enumeration")]
    NonIntegralData,
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

pub const DEFAULT_BOX_CAP: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct EnumeratedTruth {
    /// Per-variable integer upper bounds of the scanned box.
    pub box_bounds: Vec<i64>,
    pub feasible: Vec<Vec<i64>>,
    pub efficient: Vec<(Vec<i64>, CriterionVector)>,
    /// Master maximizer over the efficient set, ties broken by
    /// lexicographically smallest point.
    pub best: Option<(Vec<i64>, Rational)>,
}

impl EnumeratedTruth {
    pub fn best_point(&self) -> Option<Point> {
        self.best.as_ref().map(|(p, _)| Point::from_ints(p))
    }

    pub fn efficient_contains(&self, x: &Point) -> bool {
        self.efficient
            .iter()
            .any(|(p, _)| Point::from_ints(p) == *x)
    }

    /// Text report with counts and exact values, for golden files.
    pub fn render(&self, inst: &Instance) -> String {
        let mut out = String::new();
        out.push_str(&format!("instance: {}\n", inst.name));
        out.push_str(&format!(
            "box: [{}]\n",
            self.box_bounds
                .iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!("feasible points: {}\n", self.feasible.len()));
        out.push_str(&format!("efficient points: {}\n", self.efficient.len()));
        for (p, z) in &self.efficient {
            out.push_str(&format!(
                "  ({}) z={}\n",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
                z.render4()
            ));
        }
        match &self.best {
            Some((p, v)) => out.push_str(&format!(
                "best: ({}) psi={} ({})\n",
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "),
                fmt_exact(v),
                fmt4(v)
            )),
            None => out.push_str("best: none\n"),
        }
        out
    }
}

/// Per-variable upper bounds: maximize each coordinate over the continuous
/// relaxation and round down.
pub fn integer_box(inst: &Instance) -> Result<Vec<i64>, OracleError> {
    let mut bounds = Vec::with_capacity(inst.n);
    for j in 0..inst.n {
        let mut coeffs = vec![rzero(); inst.n];
        coeffs[j] = rone();
        let obj = FractionalObjective::linear(coeffs, rzero());
        let mut t = Tableau::new(inst, &[], &[obj]);
        let sol = t.optimize(0)?;
        match sol.status {
            SolveStatus::Optimal => {
                let ub = sol.value.floor();
                bounds.push(
                    ub.to_integer()
                        .to_i64()
                        .ok_or(OracleError::UnboundedDomain)?,
                );
            }
            SolveStatus::Infeasible => return Err(OracleError::EmptyDomain),
            SolveStatus::Unbounded => return Err(OracleError::UnboundedDomain),
        }
    }
    Ok(bounds)
}

struct IntRows {
    coeffs: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

fn integer_rows(inst: &Instance) -> Result<IntRows, OracleError> {
    let mut coeffs = Vec::with_capacity(inst.m());
    let mut rhs = Vec::with_capacity(inst.m());
    for row in &inst.rows {
        if !row.is_integral() {
            return Err(OracleError::NonIntegralData);
        }
        let cs = row
            .coeffs
            .iter()
            .map(|c| c.to_integer().to_i64().ok_or(OracleError::NonIntegralData))
            .collect::<Result<Vec<_>, _>>()?;
        coeffs.push(cs);
        rhs.push(row.rhs.to_integer().to_i64().ok_or(OracleError::NonIntegralData)?);
    }
    Ok(IntRows { coeffs, rhs })
}

/// Exact criterion values as i128 fractions; positive denominators.
fn criterion_fractions(inst: &Instance, x: &[i64]) -> Vec<(i128, i128)> {
    inst.criteria
        .iter()
        .map(|c| {
            let mut num = rational_to_i128(&c.num_const);
            let mut den = rational_to_i128(&c.den_const);
            for (j, &v) in x.iter().enumerate() {
                num += rational_to_i128(&c.num_coeffs[j]) * v as i128;
                den += rational_to_i128(&c.den_coeffs[j]) * v as i128;
            }
            debug_assert!(den > 0);
            (num, den)
        })
        .collect()
}

fn rational_to_i128(r: &Rational) -> i128 {
    debug_assert!(r.is_integer());
    r.to_integer().to_i128().expect("oracle data fits i128")
}

// a/b >= c/d with b, d > 0
fn frac_ge(a: (i128, i128), b: (i128, i128)) -> bool {
    a.0 * b.1 >= b.0 * a.1
}

fn frac_gt(a: (i128, i128), b: (i128, i128)) -> bool {
    a.0 * b.1 > b.0 * a.1
}

fn vec_dominates(a: &[(i128, i128)], b: &[(i128, i128)]) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| frac_ge(*x, *y))
        && a.iter().zip(b.iter()).any(|(x, y)| frac_gt(*x, *y))
}

/// Exhaustive scan of the integer box filtered by the constraints, then a
/// pairwise-dominance filter and the master argmax over the efficient set.
pub fn enumerate(inst: &Instance, cap: u128) -> Result<EnumeratedTruth, OracleError> {
    let bounds = integer_box(inst)?;
    let mut volume: u128 = 1;
    for &b in &bounds {
        if b < 0 {
            return Err(OracleError::EmptyDomain);
        }
        volume = volume.saturating_mul(b as u128 + 1);
        if volume > cap {
            return Err(OracleError::TooLarge { volume, cap });
        }
    }
    let rows = integer_rows(inst)?;
    let m = rows.rhs.len();
    let n = inst.n;

    // per-row minimum possible contribution of variables >= level, for pruning
    let mut min_tail = vec![vec![0i64; n + 1]; m];
    for r in 0..m {
        for j in (0..n).rev() {
            let c = rows.coeffs[r][j];
            let contrib = if c < 0 { c * bounds[j] } else { 0 };
            min_tail[r][j] = min_tail[r][j + 1] + contrib;
        }
    }

    let mut feasible: Vec<Vec<i64>> = Vec::new();
    let mut x = vec![0i64; n];
    let mut partial = vec![0i64; m];
    scan(
        0,
        &mut x,
        &mut partial,
        &bounds,
        &rows,
        &min_tail,
        &mut feasible,
    );

    // skyline of non-dominated criterion vectors
    let mut skyline: Vec<Vec<(i128, i128)>> = Vec::new();
    for p in &feasible {
        let z = criterion_fractions(inst, p);
        if skyline.iter().any(|s| vec_dominates(s, &z)) {
            continue;
        }
        skyline.retain(|s| !vec_dominates(&z, s));
        if !skyline.contains(&z) {
            skyline.push(z);
        }
    }

    let mut efficient: Vec<(Vec<i64>, CriterionVector)> = Vec::new();
    for p in &feasible {
        let z = criterion_fractions(inst, p);
        if !skyline.iter().any(|s| vec_dominates(s, &z)) {
            let zv = inst
                .eval_criteria(&Point::from_ints(p))
                .expect("feasible point evaluates");
            efficient.push((p.clone(), zv));
        }
    }

    let mut best: Option<(Vec<i64>, Rational)> = None;
    for (p, _) in &efficient {
        let v = inst
            .eval_master(&Point::from_ints(p))
            .expect("feasible point evaluates");
        match &best {
            Some((bp, bv)) => {
                if v > *bv || (v == *bv && p < bp) {
                    best = Some((p.clone(), v));
                }
            }
            None => best = Some((p.clone(), v)),
        }
    }

    Ok(EnumeratedTruth { box_bounds: bounds, feasible, efficient, best })
}

fn scan(
    level: usize,
    x: &mut Vec<i64>,
    partial: &mut Vec<i64>,
    bounds: &[i64],
    rows: &IntRows,
    min_tail: &[Vec<i64>],
    out: &mut Vec<Vec<i64>>,
) {
    let m = rows.rhs.len();
    if level == x.len() {
        if (0..m).all(|r| partial[r] <= rows.rhs[r]) {
            out.push(x.clone());
        }
        return;
    }
    for v in 0..=bounds[level] {
        x[level] = v;
        if v > 0 {
            for r in 0..m {
                partial[r] += rows.coeffs[r][level];
            }
        }
        // a row that cannot be satisfied by any completion prunes this value
        let ok = (0..m).all(|r| partial[r] + min_tail[r][level + 1] <= rows.rhs[r]);
        if ok {
            scan(level + 1, x, partial, bounds, rows, min_tail, out);
        }
    }
    for r in 0..m {
        partial[r] -= rows.coeffs[r][level] * bounds[level];
    }
    x[level] = 0;
}
