//! Problem data: exact rationals, fractional objectives, instances, points,
//! criterion vectors and Pareto dominance.

mod format;
mod rational;
pub mod validate;

pub use format::{parse_instance, write_instance, ParseError};
pub use rational::{fmt4, fmt_exact, parse_rational, rat, rint, rone, rzero, Rational};
pub use validate::{validate_instance, ValidationError, ValidationReport};

use num::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("objective denominator evaluates to zero")]
    ZeroDenominator,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Ratio of two affine functions, `(num_coeffs·x + num_const) / (den_coeffs·x + den_const)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalObjective {
    pub num_coeffs: Vec<Rational>,
    pub num_const: Rational,
    pub den_coeffs: Vec<Rational>,
    pub den_const: Rational,
}

impl FractionalObjective {
    pub fn new(
        num_coeffs: Vec<Rational>,
        num_const: Rational,
        den_coeffs: Vec<Rational>,
        den_const: Rational,
    ) -> Self {
        assert_eq!(num_coeffs.len(), den_coeffs.len());
        Self { num_coeffs, num_const, den_coeffs, den_const }
    }

    /// A purely linear objective embedded as a ratio with denominator 1.
    pub fn linear(coeffs: Vec<Rational>, constant: Rational) -> Self {
        let den = vec![rzero(); coeffs.len()];
        Self::new(coeffs, constant, den, rone())
    }

    pub fn n(&self) -> usize {
        self.num_coeffs.len()
    }

    pub fn numerator_at(&self, x: &Point) -> Rational {
        affine_at(&self.num_coeffs, &self.num_const, x)
    }

    pub fn denominator_at(&self, x: &Point) -> Rational {
        affine_at(&self.den_coeffs, &self.den_const, x)
    }

    /// Exact value of the ratio at `x`.
    pub fn eval(&self, x: &Point) -> Result<Rational, ModelError> {
        if x.len() != self.n() {
            return Err(ModelError::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        let den = self.denominator_at(x);
        if den.is_zero() {
            return Err(ModelError::ZeroDenominator);
        }
        Ok(self.numerator_at(x) / den)
    }
}

fn affine_at(coeffs: &[Rational], constant: &Rational, x: &Point) -> Rational {
    let mut acc = constant.clone();
    for (c, v) in coeffs.iter().zip(x.coords.iter()) {
        if !c.is_zero() && !v.is_zero() {
            acc += c * v;
        }
    }
    acc
}

/// Row relation as written in an instance file. Rows are normalized to `<=`
/// when the instance is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// One constraint row over the structural variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Row {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, relation: Relation::Le, rhs }
    }

    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, relation: Relation::Ge, rhs }
    }

    /// Equivalent `<=` rows: `>=` is negated, `=` becomes a pair.
    pub fn normalized(&self) -> Vec<Row> {
        match self.relation {
            Relation::Le => vec![self.clone()],
            Relation::Ge => vec![Row::le(
                self.coeffs.iter().map(|c| -c).collect(),
                -self.rhs.clone(),
            )],
            Relation::Eq => {
                let mut out = Row::le(self.coeffs.clone(), self.rhs.clone()).normalized();
                out.extend(Row::ge(self.coeffs.clone(), self.rhs.clone()).normalized());
                out
            }
        }
    }

    /// Scales the row by the lcm of coefficient denominators so every
    /// coefficient and the right-hand side become integers. Slack variables of
    /// integral rows take integer values at integer points, which the
    /// improving-direction cuts rely on.
    pub fn scaled_integral(&self) -> Row {
        use num::bigint::BigInt;
        use num::Integer;
        let mut lcm = BigInt::from(1);
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let factor = Rational::from_integer(lcm);
        Row {
            coeffs: self.coeffs.iter().map(|c| c * &factor).collect(),
            relation: self.relation,
            rhs: &self.rhs * &factor,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer()) && self.rhs.is_integer()
    }
}

/// A point in variable space. Integrality is a predicate, not an invariant:
/// relaxation optima are points too.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Point { coords: v.iter().map(|&c| rint(c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(fmt_exact).collect();
        format!("({})", parts.join(", "))
    }
}

/// Values of the k criteria at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVector {
    pub values: Vec<Rational>,
}

impl CriterionVector {
    pub fn new(values: Vec<Rational>) -> Self {
        CriterionVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn render4(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(fmt4).collect();
        format!("({})", parts.join(", "))
    }
}

/// Pareto dominance in the maximization sense: `a` dominates `b` iff
/// `a_i >= b_i` everywhere and `a_i > b_i` somewhere.
pub fn dominates(a: &CriterionVector, b: &CriterionVector) -> bool {
    assert_eq!(a.len(), b.len(), "criterion vectors of different lengths");
    let mut strict = false;
    for (ai, bi) in a.values.iter().zip(b.values.iter()) {
        if ai < bi {
            return false;
        }
        if ai > bi {
            strict = true;
        }
    }
    strict
}

/// The full problem data: constraints, the k criteria and the master
/// fractional objective maximized over the integer efficient set.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub n: usize,
    /// Normalized `<=` constraint rows. All variables are implicitly
    /// nonnegative integers.
    pub rows: Vec<Row>,
    pub criteria: Vec<FractionalObjective>,
    pub master: FractionalObjective,
}

impl Instance {
    /// Builds an instance, normalizing every row to `<=`.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        rows: Vec<Row>,
        criteria: Vec<FractionalObjective>,
        master: FractionalObjective,
    ) -> Self {
        let rows = rows.iter().flat_map(|r| r.normalized()).collect::<Vec<_>>();
        for r in &rows {
            assert_eq!(r.coeffs.len(), n, "row width mismatch");
        }
        for obj in criteria.iter().chain(std::iter::once(&master)) {
            assert_eq!(obj.n(), n, "objective width mismatch");
        }
        Instance { name: name.into(), n, rows, criteria, master }
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.criteria.len()
    }

    /// Component i equals `criteria[i].eval(x)`.
    pub fn eval_criteria(&self, x: &Point) -> Result<CriterionVector, ModelError> {
        let values = self
            .criteria
            .iter()
            .map(|c| c.eval(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CriterionVector::new(values))
    }

    pub fn eval_master(&self, x: &Point) -> Result<Rational, ModelError> {
        self.master.eval(x)
    }

    /// Exact feasibility of a point against the normalized rows (x >= 0 included).
    pub fn is_feasible(&self, x: &Point) -> bool {
        if x.len() != self.n || x.coords.iter().any(|c| c.is_negative()) {
            return false;
        }
        self.rows.iter().all(|row| {
            let mut lhs = rzero();
            for (c, v) in row.coeffs.iter().zip(x.coords.iter()) {
                lhs += c * v;
            }
            lhs <= row.rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::reference_instance;

    #[test]
    fn eval_master_at_reference_points() {
        let inst = reference_instance();
        let x = Point::from_ints(&[0, 0, 3, 0, 0, 0]);
        assert_eq!(inst.eval_master(&x).unwrap(), rat(290, 49));
        let y = Point::from_ints(&[0, 1, 0, 12, 0, 0]);
        assert_eq!(inst.eval_master(&y).unwrap(), rat(724, 617));
        let origin = Point::from_ints(&[0; 6]);
        assert_eq!(inst.eval_master(&origin).unwrap(), rat(2, 13));
    }

    #[test]
    fn eval_criteria_at_reference_points() {
        let inst = reference_instance();
        let y = Point::from_ints(&[0, 1, 0, 12, 0, 0]);
        let z = inst.eval_criteria(&y).unwrap();
        assert_eq!(z.values, vec![rat(1286, 876), rat(604, 421)]);
        assert_eq!(z.render4(), "(1.4680, 1.4347)");
        let x = Point::from_ints(&[0, 0, 3, 0, 0, 0]);
        let zx = inst.eval_criteria(&x).unwrap();
        assert_eq!(zx.values, vec![rat(138, 224), rat(211, 171)]);
    }

    #[test]
    fn single_criterion_reduces_to_eval() {
        let obj = FractionalObjective::new(
            vec![rint(3), rint(1)],
            rint(2),
            vec![rint(1), rint(1)],
            rint(5),
        );
        let inst = Instance::new(
            "k1",
            2,
            vec![Row::le(vec![rint(1), rint(1)], rint(4))],
            vec![obj.clone(), obj.clone()],
            FractionalObjective::linear(vec![rint(1), rint(0)], rzero()),
        );
        let x = Point::from_ints(&[1, 2]);
        let z = inst.eval_criteria(&x).unwrap();
        assert_eq!(z.values[0], obj.eval(&x).unwrap());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let obj = FractionalObjective::new(vec![rint(1)], rzero(), vec![rint(-1)], rint(2));
        let x = Point::from_ints(&[2]);
        assert!(matches!(obj.eval(&x), Err(ModelError::ZeroDenominator)));
    }

    #[test]
    fn dominance_examples() {
        let a = CriterionVector::new(vec![rat(1286, 876), rat(604, 421)]);
        let b = CriterionVector::new(vec![rat(138, 224), rat(211, 171)]);
        assert!(dominates(&a, &b));
        assert!(!dominates(&b, &a));
        assert!(!dominates(&a, &a));
        let p = CriterionVector::new(vec![rint(2), rint(1)]);
        let q = CriterionVector::new(vec![rint(1), rint(2)]);
        assert!(!dominates(&p, &q));
        assert!(!dominates(&q, &p));
    }

    #[test]
    fn ge_and_eq_rows_normalize_to_le() {
        let ge = Row::ge(vec![rint(2), rint(-1)], rint(3));
        let norm = ge.normalized();
        assert_eq!(norm, vec![Row::le(vec![rint(-2), rint(1)], rint(-3))]);
        let eq = Row { coeffs: vec![rint(1), rint(1)], relation: Relation::Eq, rhs: rint(5) };
        assert_eq!(eq.normalized().len(), 2);
    }

    #[test]
    fn scaled_integral_clears_denominators() {
        let row = Row::ge(vec![rat(1, 3), rat(5, 6)], rat(7, 2));
        let scaled = row.scaled_integral();
        assert!(scaled.is_integral());
        assert_eq!(scaled.coeffs, vec![rint(2), rint(5)]);
        assert_eq!(scaled.rhs, rint(21));
    }
}
