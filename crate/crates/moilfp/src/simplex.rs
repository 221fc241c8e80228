//! Dense exact-tableau simplex for linear fractional objectives.
//!
//! A tableau tracks the constraint body plus updated numerator/denominator
//! rows for several fractional objectives at once, so that after every pivot
//! the reduced gradient of any tracked objective can be read off exactly.
//! Primal pivots use the fractional reduced gradient
//! `gamma_j = den_value * num_j - num_value * den_j`; dual pivots restore
//! primal feasibility after row additions and are always followed by a primal
//! clean-up phase (the ratio objective's gradient is only a local certificate,
//! so dual optimality alone does not imply optimality of the ratio).

use crate::model::{FractionalObjective, Instance, Point, Rational, Relation, Row, rzero};
use num::{Signed, Zero};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplexError {
    #[error("dimension mismatch adding row: expected at most {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pivoting revisited a basis; cycle limit exceeded")]
    CycleLimitExceeded,
    #[error("variable {0} is basic, no reduced gradient")]
    NotNonbasic(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of one fractional-simplex solve.
#[derive(Debug, Clone)]
pub struct LfpSolution {
    pub status: SolveStatus,
    pub point: Point,
    pub value: Rational,
}

/// One tracked objective in reduced form: basic columns are priced out, so
/// `num(x) = num_const + sum_j num[j] x_j` over the nonbasic variables and
/// `num_const / den_const` is the objective value at the current basic point.
#[derive(Debug, Clone)]
struct ObjRow {
    num: Vec<Rational>,
    num_const: Rational,
    den: Vec<Rational>,
    den_const: Rational,
}

#[derive(Debug, Clone, Copy)]
pub struct PivotRecord {
    pub entering: usize,
    pub leaving: usize,
}

#[derive(Debug, Clone)]
pub struct Tableau {
    n_struct: usize,
    total_vars: usize,
    basis: Vec<usize>,
    /// row-major body, one entry per (row, variable)
    body: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    objs: Vec<ObjRow>,
    pivots: u64,
    pub log_pivots: bool,
    pub pivot_log: Vec<PivotRecord>,
}

impl Tableau {
    /// Slack-basis tableau over the normalized `<=` rows of an instance, with
    /// extra rows appended and the given objectives tracked.
    pub fn new(inst: &Instance, extra_rows: &[Row], objectives: &[FractionalObjective]) -> Self {
        let n = inst.n;
        let rows: Vec<Row> = inst
            .rows
            .iter()
            .cloned()
            .chain(extra_rows.iter().flat_map(|r| r.normalized()))
            .collect();
        let m = rows.len();
        let total = n + m;
        let mut body = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        for (i, row) in rows.iter().enumerate() {
            let mut r = vec![rzero(); total];
            r[..n].clone_from_slice(&row.coeffs);
            r[n + i] = crate::model::rone();
            body.push(r);
            rhs.push(row.rhs.clone());
            basis.push(n + i);
        }
        let objs = objectives
            .iter()
            .map(|o| {
                let mut num = vec![rzero(); total];
                num[..n].clone_from_slice(&o.num_coeffs);
                let mut den = vec![rzero(); total];
                den[..n].clone_from_slice(&o.den_coeffs);
                ObjRow {
                    num,
                    num_const: o.num_const.clone(),
                    den,
                    den_const: o.den_const.clone(),
                }
            })
            .collect();
        Tableau {
            n_struct: n,
            total_vars: total,
            basis,
            body,
            rhs,
            objs,
            pivots: 0,
            log_pivots: false,
            pivot_log: Vec::new(),
        }
    }

    pub fn n_struct(&self) -> usize {
        self.n_struct
    }

    pub fn total_vars(&self) -> usize {
        self.total_vars
    }

    pub fn n_objectives(&self) -> usize {
        self.objs.len()
    }

    pub fn pivot_count(&self) -> u64 {
        self.pivots
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn is_basic(&self, j: usize) -> bool {
        self.basis.contains(&j)
    }

    pub fn nonbasic_indices(&self) -> Vec<usize> {
        let basic: HashSet<usize> = self.basis.iter().copied().collect();
        (0..self.total_vars).filter(|j| !basic.contains(j)).collect()
    }

    pub fn is_primal_feasible(&self) -> bool {
        self.rhs.iter().all(|b| !b.is_negative())
    }

    /// Objective value `num_const / den_const` at the current basic point.
    pub fn value(&self, obj: usize) -> Rational {
        &self.objs[obj].num_const / &self.objs[obj].den_const
    }

    pub fn denominator_value(&self, obj: usize) -> Rational {
        self.objs[obj].den_const.clone()
    }

    /// Structural coordinates of the current basic solution.
    pub fn current_point(&self) -> Point {
        let mut coords = vec![rzero(); self.n_struct];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_struct {
                coords[b] = self.rhs[i].clone();
            }
        }
        Point::new(coords)
    }

    /// Value of any variable (structural, slack or cut slack) at the current
    /// basic solution.
    pub fn variable_value(&self, j: usize) -> Rational {
        for (i, &b) in self.basis.iter().enumerate() {
            if b == j {
                return self.rhs[i].clone();
            }
        }
        rzero()
    }

    /// Fractional reduced gradient of a tracked objective at a nonbasic
    /// column: `den_value * num_j - num_value * den_j`. Positive iff
    /// increasing `x_j` strictly improves the ratio locally (denominator
    /// value positive).
    pub fn reduced_gradient(&self, obj: usize, j: usize) -> Result<Rational, SimplexError> {
        if self.is_basic(j) {
            return Err(SimplexError::NotNonbasic(j));
        }
        Ok(self.gamma(obj, j))
    }

    fn gamma(&self, obj: usize, j: usize) -> Rational {
        let o = &self.objs[obj];
        &o.den_const * &o.num[j] - &o.num_const * &o.den[j]
    }

    /// Appends a row (coefficients over any existing variables) with a fresh
    /// slack, priced out against the current basis. The result stays
    /// basis-consistent but may be primal-infeasible.
    pub fn add_row(&mut self, coeffs: &[Rational], rel: Relation, rhs: &Rational) -> Result<(), SimplexError> {
        if coeffs.len() > self.total_vars {
            return Err(SimplexError::DimensionMismatch {
                expected: self.total_vars,
                got: coeffs.len(),
            });
        }
        assert!(rel != Relation::Eq, "added rows must be le or ge");
        let negate = rel == Relation::Ge;
        let slack = self.total_vars;
        self.total_vars += 1;
        for r in &mut self.body {
            r.push(rzero());
        }
        for o in &mut self.objs {
            o.num.push(rzero());
            o.den.push(rzero());
        }
        let mut row = vec![rzero(); self.total_vars];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = if negate { -c } else { c.clone() };
        }
        row[slack] = crate::model::rone();
        let mut b = if negate { -rhs } else { rhs.clone() };
        // price out basic variables
        for (i, &bv) in self.basis.iter().enumerate() {
            if !row[bv].is_zero() {
                let f = row[bv].clone();
                for j in 0..self.total_vars {
                    if !self.body[i][j].is_zero() {
                        let t = &f * &self.body[i][j];
                        row[j] -= t;
                    }
                }
                b -= &f * &self.rhs[i];
            }
        }
        self.body.push(row);
        self.rhs.push(b);
        self.basis.push(slack);
        Ok(())
    }

    fn pivot(&mut self, r: usize, e: usize) {
        let leaving = self.basis[r];
        let piv = self.body[r][e].clone();
        debug_assert!(!piv.is_zero());
        for v in self.body[r].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.rhs[r] /= &piv;
        let prow = std::mem::take(&mut self.body[r]);
        let prhs = self.rhs[r].clone();
        for i in 0..self.body.len() {
            if i == r || self.body[i].is_empty() {
                continue;
            }
            let f = self.body[i][e].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in self.body[i].iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        for o in &mut self.objs {
            let fnum = o.num[e].clone();
            if !fnum.is_zero() {
                for (v, p) in o.num.iter_mut().zip(prow.iter()) {
                    if !p.is_zero() {
                        *v -= &fnum * p;
                    }
                }
                o.num_const += &fnum * &prhs;
            }
            let fden = o.den[e].clone();
            if !fden.is_zero() {
                for (v, p) in o.den.iter_mut().zip(prow.iter()) {
                    if !p.is_zero() {
                        *v -= &fden * p;
                    }
                }
                o.den_const += &fden * &prhs;
            }
        }
        self.body[r] = prow;
        self.basis[r] = e;
        self.pivots += 1;
        if self.log_pivots {
            self.pivot_log.push(PivotRecord { entering: e, leaving });
        }
    }

    fn basis_key(&self) -> Vec<usize> {
        let mut b = self.basis.clone();
        b.sort_unstable();
        b
    }

    /// Primal fractional simplex on a tracked objective. Requires primal
    /// feasibility. Entering: largest reduced gradient among positive ones,
    /// ties by lowest index; leaving: min-ratio, ties by lowest basic index.
    /// Falls back to Bland order if a basis repeats without improvement.
    pub fn solve_primal(&mut self, obj: usize) -> Result<LfpSolution, SimplexError> {
        debug_assert!(self.is_primal_feasible());
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut best = self.value(obj);
        let mut bland = false;
        loop {
            debug_assert!(
                self.objs.iter().all(|o| o.den_const.is_positive()),
                "tracked denominator must stay positive at feasible bases"
            );
            let mut entering: Option<(usize, Rational)> = None;
            for j in 0..self.total_vars {
                if self.is_basic(j) {
                    continue;
                }
                let g = self.gamma(obj, j);
                if g.is_positive() {
                    if bland {
                        entering = Some((j, g));
                        break;
                    }
                    match &entering {
                        Some((_, cur)) if *cur >= g => {}
                        _ => entering = Some((j, g)),
                    }
                }
            }
            let Some((e, _)) = entering else {
                return Ok(self.solution(SolveStatus::Optimal, obj));
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.body.len() {
                let a = &self.body[i][e];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    match &leave {
                        Some((li, cur)) => {
                            if ratio < *cur || (ratio == *cur && self.basis[i] < self.basis[*li]) {
                                leave = Some((i, ratio));
                            }
                        }
                        None => leave = Some((i, ratio)),
                    }
                }
            }
            let Some((r, _)) = leave else {
                return Ok(self.solution(SolveStatus::Unbounded, obj));
            };
            self.pivot(r, e);
            let v = self.value(obj);
            if v > best {
                best = v;
                seen.clear();
                bland = false;
            } else if !seen.insert(self.basis_key()) {
                if bland {
                    return Err(SimplexError::CycleLimitExceeded);
                }
                bland = true;
                seen.clear();
            }
        }
    }

    /// Dual pivots until primal feasibility is restored (or a row certifies
    /// infeasibility), then a primal clean-up phase on the same objective.
    /// Leaving: most negative right-hand side, ties by lowest basic index;
    /// entering: exact min-ratio over negative row entries, ties by lowest
    /// index. The ratio numerators come from the objective's linearization
    /// frozen at phase start, so the dual phase is a plain linear dual
    /// simplex; the primal clean-up re-optimizes the true ratio objective.
    pub fn reoptimize_dual(&mut self, obj: usize) -> Result<LfpSolution, SimplexError> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut bland = false;
        // frozen linearization: w_j = d0 * num_j - n0 * den_j transforms like
        // a linear objective's reduced costs under pivots
        let n0 = self.objs[obj].num_const.clone();
        let d0 = self.objs[obj].den_const.clone();
        loop {
            let mut leave: Option<usize> = None;
            for i in 0..self.body.len() {
                if self.rhs[i].is_negative() {
                    match leave {
                        Some(li) => {
                            let better = if bland {
                                self.basis[i] < self.basis[li]
                            } else {
                                self.rhs[i] < self.rhs[li]
                                    || (self.rhs[i] == self.rhs[li]
                                        && self.basis[i] < self.basis[li])
                            };
                            if better {
                                leave = Some(i);
                            }
                        }
                        None => leave = Some(i),
                    }
                }
            }
            let Some(r) = leave else {
                return self.solve_primal(obj);
            };
            let mut entering: Option<(usize, Rational)> = None;
            for j in 0..self.total_vars {
                if self.is_basic(j) {
                    continue;
                }
                let a = &self.body[r][j];
                if a.is_negative() {
                    // the min-ratio rule also governs Bland mode; only the
                    // leaving choice changes there
                    let w = &d0 * &self.objs[obj].num[j] - &n0 * &self.objs[obj].den[j];
                    let ratio = w / a;
                    match &entering {
                        Some((_, cur)) if *cur <= ratio => {}
                        _ => entering = Some((j, ratio)),
                    }
                }
            }
            let Some((e, _)) = entering else {
                // rhs_r < 0 with a whole nonnegative row: infeasible
                return Ok(self.solution(SolveStatus::Infeasible, obj));
            };
            self.pivot(r, e);
            if !seen.insert(self.basis_key()) {
                if bland {
                    return Err(SimplexError::CycleLimitExceeded);
                }
                bland = true;
                seen.clear();
            }
        }
    }

    /// Solves from the current basis: a dual feasibility phase when some
    /// right-hand side is negative, then the primal fractional phase.
    pub fn optimize(&mut self, obj: usize) -> Result<LfpSolution, SimplexError> {
        if self.is_primal_feasible() {
            self.solve_primal(obj)
        } else {
            self.reoptimize_dual(obj)
        }
    }

    fn solution(&self, status: SolveStatus, obj: usize) -> LfpSolution {
        LfpSolution {
            status,
            point: self.current_point(),
            value: match status {
                SolveStatus::Optimal => self.value(obj),
                _ => rzero(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::reference_instance;
    use crate::model::{rat, rint, rone, FractionalObjective, Instance, Row};

    fn psi_tableau(inst: &Instance) -> Tableau {
        let mut objs = inst.criteria.clone();
        objs.push(inst.master.clone());
        Tableau::new(inst, &[], &objs)
    }

    #[test]
    fn root_relaxation_of_reference() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        let sol = t.solve_primal(2).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(
            sol.point.coords,
            vec![rint(0), rint(0), rat(22, 7), rint(0), rint(0), rint(0)]
        );
        assert_eq!(sol.value, rat(2126, 355));
    }

    #[test]
    fn constant_objective_is_optimal_at_start() {
        let inst = reference_instance();
        let zero = FractionalObjective::linear(vec![rint(0); 6], rint(0));
        let mut t = Tableau::new(&inst, &[], &[zero]);
        let sol = t.solve_primal(0).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.value, rint(0));
        assert_eq!(t.pivot_count(), 0);
    }

    #[test]
    fn linear_embedding_matches_reduced_cost() {
        // q = 0, beta = 1: gamma reduces to the plain LP reduced cost
        let inst = reference_instance();
        let lin = FractionalObjective::linear(
            vec![rint(3), rint(1), rint(2), rint(0), rint(0), rint(0)],
            rint(0),
        );
        let t = Tableau::new(&inst, &[], &[lin]);
        for j in 0..6 {
            assert_eq!(t.reduced_gradient(0, j).unwrap(), t.objs[0].num[j]);
        }
    }

    #[test]
    fn add_branch_row_and_reoptimize() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        t.solve_primal(2).unwrap();
        // x3 <= 3 on top of the root optimum: new rhs entry is 3 - 22/7 = -1/7
        let mut coeffs = vec![rint(0); 6];
        coeffs[2] = rone();
        t.add_row(&coeffs, Relation::Le, &rint(3)).unwrap();
        assert_eq!(*t.rhs.last().unwrap(), rat(-1, 7));
        assert!(!t.is_primal_feasible());
        let sol = t.reoptimize_dual(2).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.point, Point::from_ints(&[0, 0, 3, 0, 0, 0]));
        assert_eq!(sol.value, rat(290, 49));
    }

    #[test]
    fn non_binding_row_keeps_point() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        let before = t.solve_primal(2).unwrap();
        let coeffs = vec![rone(); 6];
        t.add_row(&coeffs, Relation::Le, &rint(1000)).unwrap();
        assert!(t.is_primal_feasible());
        let after = t.reoptimize_dual(2).unwrap();
        assert_eq!(after.point, before.point);
        assert_eq!(after.value, before.value);
    }

    #[test]
    fn infeasible_after_contradictory_rows() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        t.solve_primal(2).unwrap();
        let mut coeffs = vec![rint(0); 6];
        coeffs[0] = rone();
        t.add_row(&coeffs, Relation::Le, &rint(1)).unwrap();
        t.add_row(&coeffs, Relation::Ge, &rint(2)).unwrap();
        let sol = t.reoptimize_dual(2).unwrap();
        assert_eq!(sol.status, SolveStatus::Infeasible);
    }

    #[test]
    fn optimal_exit_has_nonpositive_gradients() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        let sol = t.solve_primal(2).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        for j in t.nonbasic_indices() {
            assert!(!t.reduced_gradient(2, j).unwrap().is_positive());
        }
    }

    #[test]
    fn unbounded_detected() {
        let inst = Instance::new(
            "unb",
            2,
            vec![Row::le(vec![rint(-1), rint(0)], rint(5))],
            vec![
                FractionalObjective::linear(vec![rone(), rzero()], rzero()),
                FractionalObjective::linear(vec![rzero(), rone()], rzero()),
            ],
            FractionalObjective::linear(vec![rone(), rone()], rzero()),
        );
        let mut t = Tableau::new(&inst, &[], &[inst.master.clone()]);
        let sol = t.solve_primal(0).unwrap();
        assert_eq!(sol.status, SolveStatus::Unbounded);
    }

    #[test]
    fn gradient_error_on_basic_index() {
        let inst = reference_instance();
        let mut t = psi_tableau(&inst);
        t.solve_primal(2).unwrap();
        let b = t.basis()[0];
        assert!(matches!(t.reduced_gradient(2, b), Err(SimplexError::NotNonbasic(_))));
    }
}
