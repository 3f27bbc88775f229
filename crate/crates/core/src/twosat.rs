//! 2-SAT over an implication graph, decided by strongly connected components.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Not;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    /// Vertex id in the implication graph: `2v` for `v`, `2v + 1` for `¬v`.
    fn node(self) -> usize {
        2 * self.var + self.negated as usize
    }

    pub fn eval(self, model: &[bool]) -> bool {
        model[self.var] != self.negated
    }
}

impl Not for Literal {
    type Output = Literal;

    fn not(self) -> Literal {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }
}

/// A conjunction of two-literal disjunctions. Unit clauses are stored as
/// `(l, l)`. Variables may carry names for debugging output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwoSatFormula {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    clauses: Vec<(Literal, Literal)>,
}

impl TwoSatFormula {
    pub fn new() -> Self {
        Self::default()
    }

    /// A formula over `count` anonymous variables named `v0, v1, ...`.
    pub fn with_vars(count: usize) -> Self {
        let mut f = Self::new();
        for i in 0..count {
            f.var(format!("v{i}"));
        }
        f
    }

    /// Returns the variable with this name, creating it if needed.
    pub fn var(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        if let Some(&v) = self.by_name.get(&name) {
            return v;
        }
        let v = self.names.len();
        self.by_name.insert(name.clone(), v);
        self.names.push(name);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn clauses(&self) -> &[(Literal, Literal)] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Literal, b: Literal) -> Result<()> {
        for l in [a, b] {
            if l.var >= self.var_count() {
                return Err(Error::UnknownVariable(l.var));
            }
        }
        self.clauses.push((a, b));
        Ok(())
    }

    pub fn add_unit(&mut self, a: Literal) -> Result<()> {
        self.add_clause(a, a)
    }

    /// `a ⇒ b`, i.e. `¬a ∨ b`.
    pub fn add_implies(&mut self, a: Literal, b: Literal) -> Result<()> {
        self.add_clause(!a, b)
    }

    /// Exactly one of `a`, `b`.
    pub fn add_xor(&mut self, a: Literal, b: Literal) -> Result<()> {
        self.add_clause(a, b)?;
        self.add_clause(!a, !b)
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        model.len() == self.var_count()
            && self
                .clauses
                .iter()
                .all(|&(a, b)| a.eval(model) || b.eval(model))
    }

    /// Returns a satisfying assignment or `None` if the formula is
    /// unsatisfiable. The model is a deterministic function of the formula.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let n = self.var_count();
        let comp = strongly_connected_components(2 * n, self.implication_edges());
        let mut model = Vec::with_capacity(n);
        for v in 0..n {
            let (t, f) = (comp[Literal::pos(v).node()], comp[Literal::neg(v).node()]);
            if t == f {
                return None;
            }
            // Components are numbered in reverse topological order, so the
            // literal whose component comes first is implied by the other.
            model.push(t < f);
        }
        assert!(
            self.is_satisfied_by(&model),
            "2-SAT model does not satisfy its formula"
        );
        Some(model)
    }

    fn implication_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.clauses
            .iter()
            .flat_map(|&(a, b)| [((!a).node(), b.node()), ((!b).node(), a.node())])
    }

    /// DIMACS CNF text with one comment line per named variable.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (i, name) in self.names.iter().enumerate() {
            let _ = writeln!(out, "c var {} {}", i + 1, name);
        }
        let _ = writeln!(out, "p cnf {} {}", self.var_count(), self.clauses.len());
        let lit = |l: Literal| {
            let v = l.var as i64 + 1;
            if l.negated {
                -v
            } else {
                v
            }
        };
        for &(a, b) in &self.clauses {
            if a == b {
                let _ = writeln!(out, "{} 0", lit(a));
            } else {
                let _ = writeln!(out, "{} {} 0", lit(a), lit(b));
            }
        }
        out
    }
}

/// Iterative Tarjan. Returns the component index of every vertex; indices
/// follow the order in which components are completed.
fn strongly_connected_components(
    vertices: usize,
    edges: impl Iterator<Item = (usize, usize)>,
) -> Vec<usize> {
    // compressed adjacency
    let edges: Vec<(usize, usize)> = edges.collect();
    let mut start = vec![0usize; vertices + 1];
    for &(u, _) in &edges {
        start[u + 1] += 1;
    }
    for i in 0..vertices {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![0usize; edges.len()];
    for &(u, v) in &edges {
        adj[fill[u]] = v;
        fill[u] += 1;
    }

    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; vertices];
    let mut low = vec![0usize; vertices];
    let mut on_stack = vec![false; vertices];
    let mut comp = vec![UNSEEN; vertices];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut comps = 0;

    for root in 0..vertices {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, start[root]));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (u, ref mut next)) = call.last_mut() {
            if *next < start[u + 1] {
                let v = adj[*next];
                *next += 1;
                if index[v] == UNSEEN {
                    index[v] = counter;
                    low[v] = counter;
                    counter += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, start[v]));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = comps;
                    if w == u {
                        break;
                    }
                }
                comps += 1;
            }
        }
    }
    comp
}
