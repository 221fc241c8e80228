//! Instance validation: nonempty bounded relaxation, strictly positive
//! objective denominators over the whole feasible region, and integral
//! constraint data (slacks of integer points must be integers for the
//! improving-direction cuts to stay valid).

use super::{rone, rzero, FractionalObjective, Instance, Rational};
use crate::simplex::{SimplexError, SolveStatus, Tableau};
use num::Signed;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValidationError {
    #[error("feasible region is empty")]
    EmptyDomain,
    #[error("feasible region is unbounded")]
    UnboundedDomain,
    #[error("denominator of objective {0} is not strictly positive over the feasible region (minimum {1})")]
    NonpositiveDenominator(String, String),
    #[error("constraint data must be integral (row {0})")]
    NonIntegralConstraintData(usize),
    #[error("simplex failure during validation: {0}")]
    Solver(#[from] SimplexError),
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// Optimal value of `max sum(x_j)` over the continuous relaxation.
    pub coordinate_sum_bound: Rational,
    /// Minimum of each tracked denominator (criteria first, master last)
    /// over the continuous relaxation.
    pub denominator_minima: Vec<Rational>,
}

/// Checks the contracts the solver relies on. Returns a report with the
/// boundedness certificate and the denominator minima.
pub fn validate_instance(inst: &Instance) -> Result<ValidationReport, ValidationError> {
    for (j, row) in inst.rows.iter().enumerate() {
        if !row.is_integral() {
            return Err(ValidationError::NonIntegralConstraintData(j + 1));
        }
    }

    // nonempty: a constant objective just runs the feasibility phase
    let constant = FractionalObjective::linear(vec![rzero(); inst.n], rzero());
    let mut t = Tableau::new(inst, &[], &[constant]);
    match t.optimize(0)?.status {
        SolveStatus::Infeasible => return Err(ValidationError::EmptyDomain),
        SolveStatus::Unbounded => unreachable!("constant objective cannot be unbounded"),
        SolveStatus::Optimal => {}
    }

    // bounded: maximize the coordinate sum
    let sum_obj = FractionalObjective::linear(vec![rone(); inst.n], rzero());
    let mut t = Tableau::new(inst, &[], &[sum_obj]);
    let sum_sol = t.optimize(0)?;
    match sum_sol.status {
        SolveStatus::Unbounded => return Err(ValidationError::UnboundedDomain),
        SolveStatus::Infeasible => return Err(ValidationError::EmptyDomain),
        SolveStatus::Optimal => {}
    }

    // each denominator strictly positive: minimize it (maximize its negation)
    let mut minima = Vec::new();
    for (i, obj) in inst
        .criteria
        .iter()
        .chain(std::iter::once(&inst.master))
        .enumerate()
    {
        let neg = FractionalObjective::linear(
            obj.den_coeffs.iter().map(|c| -c).collect(),
            -obj.den_const.clone(),
        );
        let mut t = Tableau::new(inst, &[], &[neg]);
        let sol = t.optimize(0)?;
        let min_den = match sol.status {
            SolveStatus::Optimal => -sol.value,
            SolveStatus::Unbounded => return Err(ValidationError::UnboundedDomain),
            SolveStatus::Infeasible => return Err(ValidationError::EmptyDomain),
        };
        if !min_den.is_positive() {
            let label = if i < inst.k() {
                format!("criterion {}", i + 1)
            } else {
                "master".to_string()
            };
            return Err(ValidationError::NonpositiveDenominator(
                label,
                crate::model::fmt_exact(&min_den),
            ));
        }
        minima.push(min_den);
    }

    Ok(ValidationReport {
        coordinate_sum_bound: sum_sol.value,
        denominator_minima: minima,
    })
}
