//! Potentially-efficient archive, the integer efficiency test and per-node
//! ideal points.

use crate::bnb::{maximize_integer_opts, BnbError, BnbOptions};
use crate::model::{
    dominates, rzero, CriterionVector, FractionalObjective, Instance, Point, Rational, Row,
};
use crate::simplex::{SimplexError, SolveStatus, Tableau};
use num::Signed;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EfficiencyError {
    #[error(transparent)]
    Bnb(#[from] BnbError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error("node relaxation is infeasible")]
    EmptyDomain,
    #[error("evaluation failed: {0}")]
    Model(#[from] crate::model::ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The vector was dominated by an existing entry; archive unchanged.
    Dominated,
    /// The vector was kept; entries it dominates were removed.
    Kept,
}

/// Mutually non-dominated (point, criterion vector) pairs.
#[derive(Debug, Clone, Default)]
pub struct Archive {
    entries: Vec<(Point, CriterionVector)>,
}

impl Archive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn entries(&self) -> &[(Point, CriterionVector)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn insert(&mut self, x: Point, z: CriterionVector) -> InsertOutcome {
        if self.entries.iter().any(|(_, v)| dominates(v, &z)) {
            return InsertOutcome::Dominated;
        }
        // an equal vector is already represented; keep one entry per vector
        if self.entries.iter().any(|(_, v)| *v == z) {
            return InsertOutcome::Kept;
        }
        self.entries.retain(|(_, v)| !dominates(&z, v));
        self.entries.push((x, z));
        InsertOutcome::Kept
    }

    /// True iff some archive vector strictly dominates `id`.
    pub fn dominates_vector(&self, id: &CriterionVector) -> bool {
        self.entries.iter().any(|(_, v)| dominates(v, id))
    }
}

#[derive(Debug, Clone)]
pub struct EfficiencyVerdict {
    pub efficient: bool,
    /// When not efficient: an efficient point whose vector dominates the
    /// tested one (through a dominance chain), with its criterion vector.
    pub witness: Option<(Point, CriterionVector)>,
}

/// Linearization of the improvement-slack test for one reference vector:
/// maximizing total scaled slack `sum_i (b_i num_i(x) - a_i den_i(x))` with
/// each term nonnegative, where `z_i(x_ref) = a_i / b_i` in lowest terms and
/// the denominators are positive, has optimum zero iff no feasible point
/// improves some criterion without worsening another.
fn improvement_program(
    inst: &Instance,
    z_ref: &CriterionVector,
) -> (FractionalObjective, Vec<Row>) {
    let n = inst.n;
    let mut obj_coeffs = vec![rzero(); n];
    let mut obj_const = rzero();
    let mut rows = Vec::with_capacity(inst.k());
    for (crit, zi) in inst.criteria.iter().zip(z_ref.values.iter()) {
        let a = Rational::from_integer(zi.numer().clone());
        let b = Rational::from_integer(zi.denom().clone());
        // slack_i(x) = b*num_i(x) - a*den_i(x); sign matches z_i(x) - z_i(x_ref)
        let mut coeffs = vec![rzero(); n];
        for j in 0..n {
            coeffs[j] = &b * &crit.num_coeffs[j] - &a * &crit.den_coeffs[j];
            obj_coeffs[j] += &coeffs[j];
        }
        let constant = &b * &crit.num_const - &a * &crit.den_const;
        obj_const += &constant;
        rows.push(Row::ge(coeffs, -constant));
    }
    (FractionalObjective::linear(obj_coeffs, obj_const), rows)
}

/// Tests an integral feasible point for efficiency. When the point is not
/// efficient, iterates the improvement program to a dominance fixpoint and
/// returns that fixpoint as the witness (the one-shot maximizer of the scaled
/// program need not itself be efficient).
pub fn efficiency_test(inst: &Instance, x_star: &Point) -> Result<EfficiencyVerdict, EfficiencyError> {
    debug_assert!(x_star.is_integral() && inst.is_feasible(x_star));
    let mut current = x_star.clone();
    let mut hops = 0usize;
    loop {
        let z = inst.eval_criteria(&current)?;
        let (obj, rows) = improvement_program(inst, &z);
        // the reference point itself scores zero, so seed the incumbent with
        // it; any integer point scoring above zero already certifies
        // non-efficiency, so stop at the first one
        let opts = BnbOptions {
            max_nodes: None,
            seed: Some((current.clone(), rzero())),
            stop_above: Some(rzero()),
        };
        let res = maximize_integer_opts(inst, &rows, &obj, &opts)?;
        let (y, value) = res.best.expect("seeded incumbent is always present");
        if !value.is_positive() {
            return Ok(EfficiencyVerdict {
                efficient: hops == 0,
                witness: if hops == 0 {
                    None
                } else {
                    let zy = inst.eval_criteria(&current)?;
                    Some((current, zy))
                },
            });
        }
        debug_assert!(
            dominates(&inst.eval_criteria(&y)?, &z),
            "improvement-program maximizer must dominate the reference vector"
        );
        current = y;
        hops += 1;
    }
}

/// Componentwise maxima of the k criteria over a node's continuous
/// relaxation. Expects a primal-feasible tableau tracking the criteria at
/// objective indices `0..k`.
pub fn ideal_point(node: &Tableau, k: usize) -> Result<CriterionVector, EfficiencyError> {
    assert!(node.is_primal_feasible());
    let mut values = Vec::with_capacity(k);
    for i in 0..k {
        let mut t = node.clone();
        let sol = t.solve_primal(i)?;
        match sol.status {
            SolveStatus::Optimal => values.push(sol.value),
            SolveStatus::Infeasible => return Err(EfficiencyError::EmptyDomain),
            SolveStatus::Unbounded => {
                return Err(EfficiencyError::Bnb(BnbError::Unbounded))
            }
        }
    }
    Ok(CriterionVector::new(values))
}
