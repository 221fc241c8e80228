//! Plain-text instance format.
//!
//! One logical item per line, `#` starts a comment, numbers are integers or
//! `p/q` rationals:
//!
//! ```text
//! MOILFP 1
//! dims n m k
//! psi num <n coeffs> <lambda>
//! psi den <n coeffs> <mu>
//! crit i num <n coeffs> <alpha_i>     (i = 1..k)
//! crit i den <n coeffs> <beta_i>
//! row j <n coeffs> <le|ge|eq> <b_j>   (j = 1..m)
//! ```

use super::rational::{fmt_exact, parse_rational, Rational};
use super::{FractionalObjective, Instance, Relation, Row};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError { line, msg: msg.into() }
}

struct Pending {
    num: Option<(Vec<Rational>, Rational)>,
    den: Option<(Vec<Rational>, Rational)>,
}

impl Pending {
    fn empty() -> Self {
        Pending { num: None, den: None }
    }

    fn into_objective(self, what: &str) -> Result<FractionalObjective, ParseError> {
        let (nc, nk) = self.num.ok_or_else(|| err(0, format!("missing `{what} num` line")))?;
        let (dc, dk) = self.den.ok_or_else(|| err(0, format!("missing `{what} den` line")))?;
        Ok(FractionalObjective::new(nc, nk, dc, dk))
    }
}

fn parse_coeff_tail(
    parts: &[&str],
    n: usize,
    lineno: usize,
) -> Result<(Vec<Rational>, Rational), ParseError> {
    if parts.len() != n + 1 {
        return Err(err(lineno, format!("expected {} numbers, got {}", n + 1, parts.len())));
    }
    let mut vals = Vec::with_capacity(n + 1);
    for p in parts {
        vals.push(parse_rational(p).map_err(|e| err(lineno, e))?);
    }
    let constant = vals.pop().unwrap();
    Ok((vals, constant))
}

/// Parses the instance text format. `name` labels the instance in reports.
pub fn parse_instance(text: &str, name: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (lineno, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    if header != "MOILFP 1" {
        return Err(err(lineno, format!("expected `MOILFP 1` header, got `{header}`")));
    }

    let (lineno, dims) = lines.next().ok_or_else(|| err(lineno, "missing `dims` line"))?;
    let dparts: Vec<&str> = dims.split_whitespace().collect();
    if dparts.len() != 4 || dparts[0] != "dims" {
        return Err(err(lineno, "expected `dims n m k`"));
    }
    let n: usize = dparts[1].parse().map_err(|_| err(lineno, "bad n"))?;
    let m: usize = dparts[2].parse().map_err(|_| err(lineno, "bad m"))?;
    let k: usize = dparts[3].parse().map_err(|_| err(lineno, "bad k"))?;
    if n == 0 || m == 0 || k < 2 {
        return Err(err(lineno, "need n >= 1, m >= 1, k >= 2"));
    }

    let mut psi = Pending::empty();
    let mut crits: Vec<Pending> = (0..k).map(|_| Pending::empty()).collect();
    let mut rows: Vec<Option<Row>> = vec![None; m];

    for (lineno, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[0] {
            "psi" => {
                if parts.len() < 2 {
                    return Err(err(lineno, "expected `psi num ...` or `psi den ...`"));
                }
                let tail = parse_coeff_tail(&parts[2..], n, lineno)?;
                match parts[1] {
                    "num" => psi.num = Some(tail),
                    "den" => psi.den = Some(tail),
                    other => return Err(err(lineno, format!("expected num|den, got `{other}`"))),
                }
            }
            "crit" => {
                if parts.len() < 3 {
                    return Err(err(lineno, "expected `crit i num|den ...`"));
                }
                let i: usize = parts[1].parse().map_err(|_| err(lineno, "bad criterion index"))?;
                if i == 0 || i > k {
                    return Err(err(lineno, format!("criterion index {i} out of 1..{k}")));
                }
                let tail = parse_coeff_tail(&parts[3..], n, lineno)?;
                match parts[2] {
                    "num" => crits[i - 1].num = Some(tail),
                    "den" => crits[i - 1].den = Some(tail),
                    other => return Err(err(lineno, format!("expected num|den, got `{other}`"))),
                }
            }
            "row" => {
                if parts.len() != n + 4 {
                    return Err(err(lineno, format!("expected `row j <{n} coeffs> <rel> <rhs>`")));
                }
                let j: usize = parts[1].parse().map_err(|_| err(lineno, "bad row index"))?;
                if j == 0 || j > m {
                    return Err(err(lineno, format!("row index {j} out of 1..{m}")));
                }
                let mut coeffs = Vec::with_capacity(n);
                for p in &parts[2..2 + n] {
                    coeffs.push(parse_rational(p).map_err(|e| err(lineno, e))?);
                }
                let relation = match parts[2 + n] {
                    "le" => Relation::Le,
                    "ge" => Relation::Ge,
                    "eq" => Relation::Eq,
                    other => return Err(err(lineno, format!("expected le|ge|eq, got `{other}`"))),
                };
                let rhs = parse_rational(parts[3 + n]).map_err(|e| err(lineno, e))?;
                rows[j - 1] = Some(Row { coeffs, relation, rhs });
            }
            other => return Err(err(lineno, format!("unknown item `{other}`"))),
        }
    }

    let master = psi.into_objective("psi")?;
    let criteria = crits
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.into_objective(&format!("crit {}", i + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(j, r)| r.ok_or_else(|| err(0, format!("missing row {}", j + 1))))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(Instance::new(name, n, rows, criteria, master))
}

fn write_coeffs(out: &mut String, coeffs: &[Rational], constant: &Rational) {
    for c in coeffs {
        out.push(' ');
        out.push_str(&fmt_exact(c));
    }
    out.push(' ');
    out.push_str(&fmt_exact(constant));
    out.push('\n');
}

/// Serializes an instance (rows are the normalized `<=` form).
pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    out.push_str("MOILFP 1\n");
    out.push_str(&format!("dims {} {} {}\n", inst.n, inst.m(), inst.k()));
    out.push_str("psi num");
    write_coeffs(&mut out, &inst.master.num_coeffs, &inst.master.num_const);
    out.push_str("psi den");
    write_coeffs(&mut out, &inst.master.den_coeffs, &inst.master.den_const);
    for (i, c) in inst.criteria.iter().enumerate() {
        out.push_str(&format!("crit {} num", i + 1));
        write_coeffs(&mut out, &c.num_coeffs, &c.num_const);
        out.push_str(&format!("crit {} den", i + 1));
        write_coeffs(&mut out, &c.den_coeffs, &c.den_const);
    }
    for (j, row) in inst.rows.iter().enumerate() {
        out.push_str(&format!("row {}", j + 1));
        for c in &row.coeffs {
            out.push(' ');
            out.push_str(&fmt_exact(c));
        }
        let rel = match row.relation {
            Relation::Le => "le",
            Relation::Ge => "ge",
            Relation::Eq => "eq",
        };
        out.push_str(&format!(" {} {}\n", rel, fmt_exact(&row.rhs)));
    }
    out
}
