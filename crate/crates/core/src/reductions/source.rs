//! The two source problems: 3-SAT formulas and exact hitting set instances.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A literal over a 1-indexed variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CnfLiteral {
    pub var: usize,
    pub positive: bool,
}

impl CnfLiteral {
    /// From a signed DIMACS literal.
    pub fn from_dimacs(lit: i64) -> Self {
        Self {
            var: lit.unsigned_abs() as usize,
            positive: lit > 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

/// A 3-CNF formula: every clause has three distinct variables and no clause
/// contains a variable in both polarities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCnf")]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<[CnfLiteral; 3]>,
}

#[derive(Deserialize)]
struct RawCnf {
    variable_count: usize,
    clauses: Vec<[CnfLiteral; 3]>,
}

impl TryFrom<RawCnf> for CnfFormula {
    type Error = Error;

    fn try_from(raw: RawCnf) -> Result<Self> {
        CnfFormula::new(raw.variable_count, raw.clauses)
    }
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<[CnfLiteral; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            check_clause(variable_count, clause)
                .map_err(|msg| Error::InvalidFormula(format!("clause {}: {msg}", j + 1)))?;
        }
        Ok(Self {
            variable_count,
            clauses,
        })
    }

    /// Builds a formula from signed DIMACS triples.
    pub fn from_dimacs_clauses(variable_count: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| c.map(CnfLiteral::from_dimacs))
            .collect();
        Self::new(variable_count, clauses)
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.variable_count
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// The clause with its literals ordered by variable.
    pub fn sorted_clause(&self, j: usize) -> [CnfLiteral; 3] {
        let mut c = self.clauses[j];
        c.sort_by_key(|l| l.var);
        c
    }
}

/// Validation shared with the DIMACS parser.
pub(crate) fn check_clause(
    variable_count: usize,
    clause: &[CnfLiteral; 3],
) -> std::result::Result<(), String> {
    for l in clause {
        if l.var == 0 || l.var > variable_count {
            return Err(format!("variable {} outside [1, {variable_count}]", l.var));
        }
    }
    let [a, b, c] = clause.map(|l| l.var);
    if a == b || a == c || b == c {
        if clause.iter().any(|x| {
            clause
                .iter()
                .any(|y| x.var == y.var && x.positive != y.positive)
        }) {
            return Err("contains a literal and its complement".into());
        }
        return Err("variables are not distinct".into());
    }
    Ok(())
}

/// Blocks of size three over the ground set `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawX3hs")]
pub struct X3hsInstance {
    pub ground_size: usize,
    pub blocks: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
struct RawX3hs {
    ground_size: usize,
    blocks: Vec<[usize; 3]>,
}

impl TryFrom<RawX3hs> for X3hsInstance {
    type Error = Error;

    fn try_from(raw: RawX3hs) -> Result<Self> {
        X3hsInstance::new(raw.ground_size, raw.blocks)
    }
}

impl X3hsInstance {
    pub fn new(ground_size: usize, blocks: Vec<[usize; 3]>) -> Result<Self> {
        for (j, block) in blocks.iter().enumerate() {
            check_block(ground_size, block)
                .map_err(|msg| Error::InvalidInstance(format!("block {}: {msg}", j + 1)))?;
        }
        Ok(Self {
            ground_size,
            blocks,
        })
    }

    pub fn sorted_block(&self, j: usize) -> [usize; 3] {
        let mut b = self.blocks[j];
        b.sort_unstable();
        b
    }

    /// Whether `subset` meets every block in exactly one element.
    pub fn is_exact_hitting_set(&self, subset: &[usize]) -> bool {
        if subset.iter().any(|&i| i == 0 || i > self.ground_size) {
            return false;
        }
        self.blocks
            .iter()
            .all(|b| b.iter().filter(|i| subset.contains(i)).count() == 1)
    }

    /// For every element, the 1-indexed blocks containing it, ascending.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.ground_size];
        for (j, b) in self.blocks.iter().enumerate() {
            for &i in b {
                occ[i - 1].push(j + 1);
            }
        }
        occ
    }
}

pub(crate) fn check_block(
    ground_size: usize,
    block: &[usize; 3],
) -> std::result::Result<(), String> {
    for &i in block {
        if i == 0 || i > ground_size {
            return Err(format!("element {i} outside [1, {ground_size}]"));
        }
    }
    if block[0] == block[1] || block[0] == block[2] || block[1] == block[2] {
        return Err("elements are not distinct".into());
    }
    Ok(())
}
