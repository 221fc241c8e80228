//! Plain bound-based branch and bound: maximize one fractional (or linear)
//! objective over the integer points of the instance polytope, optionally
//! intersected with extra rows. Used for the initial master solve and for the
//! efficiency-test subproblems; the efficiency-cut machinery lives elsewhere.

use crate::model::{rint, FractionalObjective, Instance, Point, Rational, Relation, Row};
use crate::simplex::{SimplexError, SolveStatus, Tableau};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BnbError {
    #[error("relaxation is unbounded")]
    Unbounded,
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("node limit {0} exceeded")]
    NodeLimit(u64),
}

#[derive(Debug, Clone)]
pub struct BnbResult {
    /// Best integer point and its exact objective value; `None` when the
    /// domain has no integer point.
    pub best: Option<(Point, Rational)>,
    pub created_nodes: u64,
}

/// Index of the most fractional coordinate (distance to nearest integer),
/// ties by lowest index. `None` when the point is integral.
pub fn most_fractional_coord(x: &Point) -> Option<usize> {
    let half = crate::model::rat(1, 2);
    let mut best: Option<(usize, Rational)> = None;
    for (j, v) in x.coords.iter().enumerate() {
        if v.is_integer() {
            continue;
        }
        let frac = v - v.floor();
        let dist = if frac > half { rint(1) - frac } else { frac };
        match &best {
            Some((_, cur)) if *cur >= dist => {}
            _ => best = Some((j, dist)),
        }
    }
    best.map(|(j, _)| j)
}

fn bound_row(n: usize, j: usize, le: bool, value: Rational) -> Row {
    let mut coeffs = vec![crate::model::rzero(); n];
    coeffs[j] = crate::model::rone();
    if le {
        Row { coeffs, relation: Relation::Le, rhs: value }
    } else {
        Row { coeffs, relation: Relation::Ge, rhs: value }
    }
}

#[derive(Debug, Clone, Default)]
pub struct BnbOptions {
    pub max_nodes: Option<u64>,
    /// Known feasible starting incumbent; prunes from the first node.
    pub seed: Option<(Point, Rational)>,
    /// Stop as soon as an integer point with value strictly above this
    /// threshold is found and return it (the result is then a witness, not
    /// the maximum).
    pub stop_above: Option<Rational>,
}

/// Depth-first branch and bound. Fathoms on infeasibility and on relaxation
/// value not exceeding the incumbent; branches on the most fractional
/// coordinate. Returns the exact integer maximum.
pub fn maximize_integer(
    inst: &Instance,
    extra_rows: &[Row],
    objective: &FractionalObjective,
    max_nodes: Option<u64>,
) -> Result<BnbResult, BnbError> {
    maximize_integer_opts(inst, extra_rows, objective, &BnbOptions { max_nodes, ..Default::default() })
}

pub fn maximize_integer_opts(
    inst: &Instance,
    extra_rows: &[Row],
    objective: &FractionalObjective,
    opts: &BnbOptions,
) -> Result<BnbResult, BnbError> {
    let max_nodes = opts.max_nodes;
    let mut root = Tableau::new(inst, extra_rows, &[objective.clone()]);
    let root_sol = root.optimize(0)?;
    let mut created: u64 = 1;
    let mut incumbent: Option<(Point, Rational)> = opts.seed.clone();

    struct Item {
        tableau: Tableau,
        new_row: Option<Row>,
    }
    let mut stack = Vec::new();
    match root_sol.status {
        SolveStatus::Infeasible => {
            return Ok(BnbResult { best: None, created_nodes: created })
        }
        SolveStatus::Unbounded => return Err(BnbError::Unbounded),
        SolveStatus::Optimal => stack.push(Item { tableau: root, new_row: None }),
    }

    while let Some(mut item) = stack.pop() {
        if let Some(cap) = max_nodes {
            if created > cap {
                return Err(BnbError::NodeLimit(cap));
            }
        }
        let sol = match item.new_row.take() {
            Some(row) => {
                let r = row.scaled_integral();
                item.tableau.add_row(&r.coeffs, r.relation, &r.rhs)?;
                item.tableau.reoptimize_dual(0)?
            }
            None => {
                // root was already solved
                solved_state(&item.tableau)
            }
        };
        match sol.status {
            SolveStatus::Infeasible => continue,
            SolveStatus::Unbounded => return Err(BnbError::Unbounded),
            SolveStatus::Optimal => {}
        }
        if let Some((_, inc)) = &incumbent {
            if sol.value <= *inc {
                continue;
            }
        }
        match most_fractional_coord(&sol.point) {
            None => {
                let early = opts
                    .stop_above
                    .as_ref()
                    .is_some_and(|threshold| sol.value > *threshold);
                incumbent = Some((sol.point, sol.value));
                if early {
                    break;
                }
            }
            Some(j) => {
                let floor = sol.point.coords[j].floor();
                let left = bound_row(inst.n, j, true, floor.clone());
                let right = bound_row(inst.n, j, false, floor + rint(1));
                created += 2;
                stack.push(Item { tableau: item.tableau.clone(), new_row: Some(right) });
                stack.push(Item { tableau: item.tableau, new_row: Some(left) });
            }
        }
    }
    Ok(BnbResult { best: incumbent, created_nodes: created })
}

fn solved_state(t: &Tableau) -> crate::simplex::LfpSolution {
    crate::simplex::LfpSolution {
        status: SolveStatus::Optimal,
        point: t.current_point(),
        value: t.value(0),
    }
}
