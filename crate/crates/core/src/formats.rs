//! Text formats for the source problems: DIMACS CNF restricted to 3-SAT and
//! a DIMACS-like `p x3hs n m` format with one block per line.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::reductions::{check_block, check_clause, CnfFormula, CnfLiteral, X3hsInstance};

fn parse_error(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads `p <kind> <a> <b>`.
fn parse_header(line_no: usize, line: &str, kind: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    match fields.as_slice() {
        ["p", k, a, b] if *k == kind => {
            let a = a
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad count {a:?}")))?;
            let b = b
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad count {b:?}")))?;
            Ok((a, b))
        }
        _ => Err(parse_error(
            line_no,
            format!("expected header \"p {kind} <n> <m>\""),
        )),
    }
}

/// Parses DIMACS CNF in which every clause has three literals over distinct
/// variables. Clauses may span lines; errors report the line holding the
/// clause's terminating `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<i64> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_error(line_no, "duplicate header"));
            }
            header = Some(parse_header(line_no, line, "cnf")?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(parse_error(line_no, "clause before header"));
        };
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| parse_error(line_no, format!("bad literal {token:?}")))?;
            if lit != 0 {
                if lit.unsigned_abs() > n as u64 {
                    return Err(parse_error(
                        line_no,
                        format!("variable {} exceeds {n}", lit.unsigned_abs()),
                    ));
                }
                pending.push(lit);
                continue;
            }
            let clause: [i64; 3] = match pending.as_slice() {
                [a, b, c] => [*a, *b, *c],
                _ => return Err(Error::NotThreeSat { line: line_no }),
            };
            pending.clear();
            let clause = clause.map(CnfLiteral::from_dimacs);
            if let Err(msg) = check_clause(n, &clause) {
                return Err(if msg.contains("complement") {
                    Error::ComplementaryLiterals { line: line_no }
                } else {
                    Error::NotThreeSat { line: line_no }
                });
            }
            clauses.push(clause);
        }
    }

    let Some((n, m)) = header else {
        return Err(parse_error(last_line.max(1), "missing header"));
    };
    if !pending.is_empty() {
        return Err(parse_error(last_line, "clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(parse_error(
            last_line.max(1),
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(n, clauses)
}

pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for clause in &f.clauses {
        let [a, b, c] = clause.map(CnfLiteral::to_dimacs);
        writeln!(out, "{a} {b} {c} 0").expect("writing to a string");
    }
    out
}

/// Parses `p x3hs n m` followed by `m` lines of three distinct elements of
/// `[1, n]`. Lines starting with `c` are comments.
pub fn parse_x3hs(text: &str) -> Result<X3hsInstance> {
    let mut header = None;
    let mut blocks = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(parse_error(line_no, "duplicate header"));
            }
            header = Some(parse_header(line_no, line, "x3hs")?);
            continue;
        }
        let Some((n, _)) = header else {
            return Err(parse_error(line_no, "block before header"));
        };
        let values = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| parse_error(line_no, format!("bad element {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let block: [usize; 3] = values.as_slice().try_into().map_err(|_| Error::BadBlock {
            line: line_no,
            msg: format!("expected 3 elements, found {}", values.len()),
        })?;
        check_block(n, &block).map_err(|msg| Error::BadBlock { line: line_no, msg })?;
        blocks.push(block);
    }

    let Some((n, m)) = header else {
        return Err(parse_error(last_line.max(1), "missing header"));
    };
    if blocks.len() != m {
        return Err(parse_error(
            last_line.max(1),
            format!("header declares {m} blocks, found {}", blocks.len()),
        ));
    }
    X3hsInstance::new(n, blocks)
}

pub fn emit_x3hs(h: &X3hsInstance) -> String {
    let mut out = format!("p x3hs {} {}\n", h.ground_size, h.blocks.len());
    for [a, b, c] in &h.blocks {
        writeln!(out, "{a} {b} {c}").expect("writing to a string");
    }
    out
}

pub fn parse_permutation_json(text: &str) -> Result<Permutation> {
    serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
}

pub fn emit_permutation_json(p: &Permutation) -> String {
    serde_json::to_string(p).expect("permutations always serialize")
}

/// A source problem in either text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceProblem {
    Sat(CnfFormula),
    X3hs(X3hsInstance),
}

/// Picks the format from the first header line.
pub fn parse_source(text: &str) -> Result<SourceProblem> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| l.starts_with('p'))
        .ok_or_else(|| parse_error(1, "missing header"))?;
    match header.split_whitespace().nth(1) {
        Some("cnf") => parse_dimacs(text).map(SourceProblem::Sat),
        Some("x3hs") => parse_x3hs(text).map(SourceProblem::X3hs),
        _ => Err(parse_error(1, "header must be \"p cnf\" or \"p x3hs\"")),
    }
}
