//! Depth-first branch and bound over the master objective, reinforced with
//! improving-direction cuts (type I), incumbent-bound cuts (type II), the
//! archive dominance test and ideal-point pruning.

use crate::bnb::{maximize_integer, most_fractional_coord, BnbError};
use crate::efficiency::{
    efficiency_test, ideal_point, Archive, EfficiencyError, InsertOutcome,
};
use crate::model::{
    fmt4, fmt_exact, rint, rone, rzero, validate_instance, CriterionVector, Instance, Point,
    Rational, Row, ValidationError,
};
use crate::simplex::{SimplexError, SolveStatus, Tableau};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
    #[error(transparent)]
    Bnb(#[from] BnbError),
    #[error(transparent)]
    Efficiency(#[from] EfficiencyError),
    #[error("evaluation failed: {0}")]
    Model(#[from] crate::model::ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Branching,
    Cut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Relaxed,
    FathomedInfeasible,
    FathomedBound,
    FathomedDeltaEmpty,
    FathomedIdealDominated,
    FathomedEfficient,
    Branched,
    CutTypeI,
    CutTypeII,
    IntegerPoint,
    IncumbentUpdate,
}

impl Action {
    pub fn label(&self) -> &'static str {
        match self {
            Action::Relaxed => "relaxed",
            Action::FathomedInfeasible => "fathomed:infeasible",
            Action::FathomedBound => "fathomed:bound",
            Action::FathomedDeltaEmpty => "fathomed:delta-empty",
            Action::FathomedIdealDominated => "fathomed:ideal-dominated",
            Action::FathomedEfficient => "fathomed:efficient",
            Action::Branched => "branched",
            Action::CutTypeI => "cut-I",
            Action::CutTypeII => "cut-II",
            Action::IntegerPoint => "integer-point",
            Action::IncumbentUpdate => "incumbent-update",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TraceEvent {
    pub node: u64,
    pub parent: Option<u64>,
    pub kind: NodeKind,
    pub action: Action,
    pub detail: String,
}

impl TraceEvent {
    pub fn render(&self) -> String {
        let parent = self.parent.map_or("-".to_string(), |p| p.to_string());
        let kind = match self.kind {
            NodeKind::Branching => "branch",
            NodeKind::Cut => "cut",
        };
        format!(
            "node={} parent={} kind={} action={} {}",
            self.node,
            parent,
            kind,
            self.action.label(),
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completion {
    Complete,
    NodeLimit,
    TimeLimit,
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    pub collect_trace: bool,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: Completion,
    pub x_opt: Option<Point>,
    pub psi_opt: Option<Rational>,
    /// Distinct points certified efficient during the run, with their
    /// criterion vectors.
    pub efficient: Vec<(Point, CriterionVector)>,
    pub created_nodes: u64,
    pub saturated_nodes: u64,
    pub pivots: u64,
    pub wall_time: Duration,
    pub trace: Vec<TraceEvent>,
}

/// Nonbasic indices that can improve at least one criterion, plus those that
/// leave every criterion unchanged (exact sign tests over the k criterion
/// rows). Expects a tableau tracking the criteria at indices `0..k`.
pub fn build_delta(t: &Tableau, k: usize) -> BTreeSet<usize> {
    use num::{Signed, Zero};
    let mut delta = BTreeSet::new();
    for j in t.nonbasic_indices() {
        let mut any_positive = false;
        let mut all_zero = true;
        for i in 0..k {
            let g = t.reduced_gradient(i, j).expect("j is nonbasic");
            if g.is_positive() {
                any_positive = true;
                all_zero = false;
                break;
            }
            if !g.is_zero() {
                all_zero = false;
            }
        }
        if any_positive || all_zero {
            delta.insert(j);
        }
    }
    delta
}

/// The improving-direction cut `sum_{j in delta} x_j >= 1` over the full
/// variable space of a tableau with `total_vars` columns.
pub fn cut_type_i(delta: &BTreeSet<usize>, total_vars: usize) -> Row {
    assert!(!delta.is_empty(), "empty improving set must fathom instead");
    let mut coeffs = vec![rzero(); total_vars];
    for &j in delta {
        coeffs[j] = rone();
    }
    Row::ge(coeffs, rone())
}

/// The incumbent-bound cut: linearization of `psi(x) >= psi_opt` valid under
/// the positive master denominator, `(c - psi_opt d) x >= psi_opt mu - lambda`.
pub fn cut_type_ii(inst: &Instance, psi_opt: &Rational) -> Row {
    let m = &inst.master;
    let coeffs = m
        .num_coeffs
        .iter()
        .zip(m.den_coeffs.iter())
        .map(|(c, d)| c - psi_opt * d)
        .collect();
    Row::ge(coeffs, psi_opt * &m.den_const - &m.num_const)
}

fn bound_row(n: usize, j: usize, le: bool, value: Rational) -> Row {
    let mut coeffs = vec![rzero(); n];
    coeffs[j] = rone();
    if le {
        Row::le(coeffs, value)
    } else {
        Row::ge(coeffs, value)
    }
}

/// Outcome of the initial step: either the master optimum over the integer
/// domain is already efficient (search finished), or an efficient incumbent
/// plus archive to start the main loop from.
pub enum Step0 {
    Finished {
        x_opt: Point,
        psi_opt: Rational,
        z_opt: CriterionVector,
        created_nodes: u64,
    },
    Incumbent {
        x_opt: Point,
        psi_opt: Rational,
        archive: Archive,
        created_nodes: u64,
    },
}

#[derive(Debug, Error)]
#[error("feasible region has no integer point")]
pub struct EmptyIntegerDomain;

/// Solves the master objective over the integer domain and tests the
/// optimizer for efficiency; a non-efficient optimizer is replaced by the
/// efficient witness of the test.
pub fn step0(inst: &Instance) -> Result<Result<Step0, EmptyIntegerDomain>, SolveError> {
    let res = maximize_integer(inst, &[], &inst.master, None)?;
    let Some((x_star, psi_star)) = res.best else {
        return Ok(Err(EmptyIntegerDomain));
    };
    let verdict = efficiency_test(inst, &x_star)?;
    if verdict.efficient {
        let z = inst.eval_criteria(&x_star)?;
        return Ok(Ok(Step0::Finished {
            x_opt: x_star,
            psi_opt: psi_star,
            z_opt: z,
            created_nodes: res.created_nodes,
        }));
    }
    let (y, zy) = verdict.witness.expect("non-efficient verdict carries a witness");
    let psi_y = inst.eval_master(&y)?;
    let mut archive = Archive::new();
    archive.insert(y.clone(), zy);
    Ok(Ok(Step0::Incumbent {
        x_opt: y,
        psi_opt: psi_y,
        archive,
        created_nodes: res.created_nodes,
    }))
}

struct WorkItem {
    id: u64,
    parent: Option<u64>,
    kind: NodeKind,
    tableau: Tableau,
    rows: Vec<(Row, Action, String)>,
}

struct Search<'a> {
    opts: &'a SolveOptions,
    k: usize,
    archive: Archive,
    x_opt: Option<Point>,
    psi_opt: Option<Rational>,
    efficient: Vec<(Point, CriterionVector)>,
    created: u64,
    saturated: u64,
    pivots: u64,
    trace: Vec<TraceEvent>,
    next_id: u64,
    started: Instant,
}

impl<'a> Search<'a> {
    fn emit(&mut self, node: u64, parent: Option<u64>, kind: NodeKind, action: Action, detail: String) {
        if self.opts.collect_trace {
            self.trace.push(TraceEvent { node, parent, kind, action, detail });
        }
    }

    fn record_efficient(&mut self, x: &Point, z: &CriterionVector) {
        if !self.efficient.iter().any(|(p, _)| p == x) {
            self.efficient.push((x.clone(), z.clone()));
        }
    }

    fn update_incumbent(&mut self, node: u64, parent: Option<u64>, kind: NodeKind, x: Point, psi: Rational) {
        let better = match &self.psi_opt {
            Some(cur) => psi > *cur,
            None => true,
        };
        if better {
            self.emit(
                node,
                parent,
                kind,
                Action::IncumbentUpdate,
                format!("x={} psi={}", x.render(), fmt_exact(&psi)),
            );
            self.x_opt = Some(x);
            self.psi_opt = Some(psi);
        }
    }

    fn over_limits(&self) -> Option<Completion> {
        if let Some(cap) = self.opts.max_nodes {
            if self.created >= cap {
                return Some(Completion::NodeLimit);
            }
        }
        if let Some(cap) = self.opts.max_seconds {
            if self.started.elapsed().as_secs_f64() >= cap {
                return Some(Completion::TimeLimit);
            }
        }
        None
    }
}

/// Full run: validation, the initial integer master solve, then the
/// depth-first loop with cuts and fathoming tests. Returns the exact global
/// optimum of the master objective over the integer efficient set.
pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    validate_instance(inst)?;
    let started = Instant::now();

    let step = match step0(inst)? {
        Ok(s) => s,
        Err(EmptyIntegerDomain) => {
            return Ok(SolveReport {
                status: Completion::Complete,
                x_opt: None,
                psi_opt: None,
                efficient: Vec::new(),
                created_nodes: 0,
                saturated_nodes: 0,
                pivots: 0,
                wall_time: started.elapsed(),
                trace: Vec::new(),
            })
        }
    };

    let mut s = Search {
        opts,
        k: inst.k(),
        archive: Archive::new(),
        x_opt: None,
        psi_opt: None,
        efficient: Vec::new(),
        created: 0,
        saturated: 0,
        pivots: 0,
        trace: Vec::new(),
        next_id: 0,
        started,
    };

    match step {
        Step0::Finished { x_opt, psi_opt, z_opt, created_nodes } => {
            s.record_efficient(&x_opt, &z_opt);
            return Ok(SolveReport {
                status: Completion::Complete,
                x_opt: Some(x_opt),
                psi_opt: Some(psi_opt),
                efficient: s.efficient,
                created_nodes: created_nodes,
                saturated_nodes: 0,
                pivots: 0,
                wall_time: started.elapsed(),
                trace: Vec::new(),
            });
        }
        Step0::Incumbent { x_opt, psi_opt, archive, created_nodes } => {
            let z = inst.eval_criteria(&x_opt)?;
            s.record_efficient(&x_opt, &z);
            s.archive = archive;
            s.x_opt = Some(x_opt);
            s.psi_opt = Some(psi_opt);
            s.created = created_nodes;
        }
    }

    // root tableau tracks all criteria plus the master objective (index k)
    let mut objectives = inst.criteria.clone();
    objectives.push(inst.master.clone());
    let root = Tableau::new(inst, &[], &objectives);

    let mut stack = Vec::new();
    stack.push(WorkItem {
        id: s.next_id,
        parent: None,
        kind: NodeKind::Branching,
        tableau: root,
        rows: Vec::new(),
    });
    s.next_id += 1;
    s.created += 1;

    let psi_idx = s.k;
    let mut status = Completion::Complete;

    while let Some(mut item) = stack.pop() {
        if let Some(limit) = s.over_limits() {
            status = limit;
            break;
        }
        for (row, action, detail) in item.rows.drain(..) {
            let scaled = row.scaled_integral();
            debug_assert!(scaled.is_integral());
            let (coeffs, rel, rhs) = (scaled.coeffs, scaled.relation, scaled.rhs);
            item.tableau.add_row(&coeffs, rel, &rhs)?;
            if action != Action::Relaxed {
                s.emit(item.id, item.parent, item.kind, action, detail);
            }
        }
        let pivots_before = item.tableau.pivot_count();
        let sol = item.tableau.optimize(psi_idx)?;
        s.pivots = s
            .pivots
            .saturating_add(item.tableau.pivot_count() - pivots_before);
        match sol.status {
            SolveStatus::Infeasible => {
                s.saturated += 1;
                s.emit(item.id, item.parent, item.kind, Action::FathomedInfeasible, String::new());
                continue;
            }
            SolveStatus::Unbounded => return Err(BnbError::Unbounded.into()),
            SolveStatus::Optimal => {}
        }
        s.emit(
            item.id,
            item.parent,
            item.kind,
            Action::Relaxed,
            format!("x={} psi={}", sol.point.render(), fmt_exact(&sol.value)),
        );

        if let Some(psi_opt) = &s.psi_opt {
            if *psi_opt >= sol.value {
                s.saturated += 1;
                s.emit(item.id, item.parent, item.kind, Action::FathomedBound, String::new());
                continue;
            }
        }

        match most_fractional_coord(&sol.point) {
            Some(j) => {
                // branching node: left child bounds the coordinate down, right
                // child bounds it up and carries a fresh incumbent cut
                let floor = sol.point.coords[j].floor();
                s.emit(
                    item.id,
                    item.parent,
                    item.kind,
                    Action::Branched,
                    format!("x{}={}", j + 1, fmt_exact(&sol.point.coords[j])),
                );
                let left_id = s.next_id;
                let right_id = s.next_id + 1;
                s.next_id += 2;
                s.created += 2;
                let mut right_rows = vec![(
                    bound_row(inst.n, j, false, &floor + rint(1)),
                    Action::Relaxed,
                    String::new(),
                )];
                if let Some(psi_opt) = &s.psi_opt {
                    right_rows.push((
                        cut_type_ii(inst, psi_opt),
                        Action::CutTypeII,
                        format!("psi_opt={}", fmt_exact(psi_opt)),
                    ));
                }
                stack.push(WorkItem {
                    id: right_id,
                    parent: Some(item.id),
                    kind: NodeKind::Branching,
                    tableau: item.tableau.clone(),
                    rows: right_rows,
                });
                stack.push(WorkItem {
                    id: left_id,
                    parent: Some(item.id),
                    kind: NodeKind::Branching,
                    tableau: item.tableau,
                    rows: vec![(bound_row(inst.n, j, true, floor), Action::Relaxed, String::new())],
                });
            }
            None => {
                let x_star = sol.point;
                let z_star = inst.eval_criteria(&x_star)?;
                s.emit(
                    item.id,
                    item.parent,
                    item.kind,
                    Action::IntegerPoint,
                    format!("x={} z={}", x_star.render(), z_star.render4()),
                );
                let mut certified_efficient = false;
                if s.archive.insert(x_star.clone(), z_star.clone()) == InsertOutcome::Kept {
                    let verdict = efficiency_test(inst, &x_star)?;
                    if verdict.efficient {
                        certified_efficient = true;
                        s.record_efficient(&x_star, &z_star);
                        s.update_incumbent(
                            item.id,
                            item.parent,
                            item.kind,
                            x_star.clone(),
                            sol.value.clone(),
                        );
                    } else if let Some((y, zy)) = verdict.witness {
                        let psi_y = inst.eval_master(&y)?;
                        s.record_efficient(&y, &zy);
                        s.archive.insert(y.clone(), zy);
                        s.update_incumbent(item.id, item.parent, item.kind, y, psi_y);
                    }
                }
                if certified_efficient {
                    // no improvement of the master objective is possible in
                    // this subdomain once its optimum is efficient
                    s.saturated += 1;
                    s.emit(item.id, item.parent, item.kind, Action::FathomedEfficient, String::new());
                    continue;
                }
                let delta = build_delta(&item.tableau, s.k);
                if delta.is_empty() {
                    s.saturated += 1;
                    s.emit(item.id, item.parent, item.kind, Action::FathomedDeltaEmpty, String::new());
                    continue;
                }
                let id = ideal_point(&item.tableau, s.k)?;
                if s.archive.dominates_vector(&id) {
                    s.saturated += 1;
                    s.emit(
                        item.id,
                        item.parent,
                        item.kind,
                        Action::FathomedIdealDominated,
                        format!("ideal={}", id.render4()),
                    );
                    continue;
                }
                let cut = cut_type_i(&delta, item.tableau.total_vars());
                let detail = format!(
                    "delta={{{}}}",
                    delta.iter().map(|j| (j + 1).to_string()).collect::<Vec<_>>().join(",")
                );
                let cut_id = s.next_id;
                s.next_id += 1;
                s.created += 1;
                stack.push(WorkItem {
                    id: cut_id,
                    parent: Some(item.id),
                    kind: NodeKind::Cut,
                    tableau: item.tableau,
                    rows: vec![(cut, Action::CutTypeI, detail)],
                });
            }
        }
    }

    Ok(SolveReport {
        status,
        x_opt: s.x_opt,
        psi_opt: s.psi_opt,
        efficient: s.efficient,
        created_nodes: s.created,
        saturated_nodes: s.saturated,
        pivots: s.pivots,
        wall_time: started.elapsed(),
        trace: s.trace,
    })
}

/// Human-readable report lines for the CLI.
pub fn render_report(inst: &Instance, report: &SolveReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance: {}\n", inst.name));
    match (&report.x_opt, &report.psi_opt) {
        (Some(x), Some(v)) => {
            out.push_str(&format!("x_opt: {}\n", x.render()));
            out.push_str(&format!("psi_opt: {} ({})\n", fmt_exact(v), fmt4(v)));
        }
        _ => out.push_str("no integer feasible point\n"),
    }
    out.push_str(&format!("efficient solutions found: {}\n", report.efficient.len()));
    out.push_str(&format!("created nodes (CN): {}\n", report.created_nodes));
    out.push_str(&format!("saturated nodes (SN): {}\n", report.saturated_nodes));
    out.push_str(&format!("pivots: {}\n", report.pivots));
    out.push_str(&format!("wall seconds: {:.2}\n", report.wall_time.as_secs_f64()));
    if report.status != Completion::Complete {
        out.push_str("status: INCOMPLETE (resource cap reached)\n");
    }
    out
}
