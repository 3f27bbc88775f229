//! The curated source corpus the reductions are checked against: small
//! enough that both sides can be solved by brute force.

use crate::reductions::{CnfFormula, X3hsInstance};

/// The eight clauses on `vars`, bit `t` of the pattern negating literal `t`
/// (most significant first).
fn clauses_on(vars: [i64; 3]) -> Vec<[i64; 3]> {
    (0..8)
        .map(|pattern: i64| {
            let mut c = vars;
            for (t, lit) in c.iter_mut().enumerate() {
                if pattern >> (2 - t) & 1 == 1 {
                    *lit = -*lit;
                }
            }
            c
        })
        .collect()
}

fn sign_tag(c: &[i64; 3]) -> String {
    c.iter()
        .map(|l| format!("{}{}", if *l < 0 { "n" } else { "p" }, l.abs()))
        .collect()
}

/// Every one-clause formula on three variables, every pair of distinct
/// clauses on three and on four variables, and the eight-clause
/// unsatisfiable formula on three variables. Names are unique file stems.
pub fn curated_3sat() -> Vec<(String, CnfFormula)> {
    let mut out = Vec::new();
    let three = clauses_on([1, 2, 3]);
    for c in &three {
        out.push((format!("one-{}", sign_tag(c)), vec![*c], 3));
    }
    for i in 0..three.len() {
        for j in i + 1..three.len() {
            out.push((
                format!("pair3-{}-{}", sign_tag(&three[i]), sign_tag(&three[j])),
                vec![three[i], three[j]],
                3,
            ));
        }
    }
    let four: Vec<[i64; 3]> = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]
        .into_iter()
        .flat_map(clauses_on)
        .collect();
    for i in 0..four.len() {
        for j in i + 1..four.len() {
            out.push((
                format!("pair4-{}-{}", sign_tag(&four[i]), sign_tag(&four[j])),
                vec![four[i], four[j]],
                4,
            ));
        }
    }
    out.push(("unsat-core".to_string(), three.clone(), 3));
    out.into_iter()
        .map(|(name, clauses, n)| {
            (
                name,
                CnfFormula::from_dimacs_clauses(n, &clauses).expect("valid clauses"),
            )
        })
        .collect()
}

/// Every instance with ground set `[1, n]`, `n` in `{3, 4}`, and one or two
/// blocks (repetition allowed, order ignored).
pub fn curated_x3hs() -> Vec<(String, X3hsInstance)> {
    let mut out = Vec::new();
    for n in 3..=4usize {
        let mut blocks = Vec::new();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    blocks.push([a, b, c]);
                }
            }
        }
        let tag = |b: &[usize; 3]| format!("{}{}{}", b[0], b[1], b[2]);
        for b in &blocks {
            out.push((format!("n{n}-{}", tag(b)), n, vec![*b]));
        }
        for i in 0..blocks.len() {
            for j in i..blocks.len() {
                out.push((
                    format!("n{n}-{}-{}", tag(&blocks[i]), tag(&blocks[j])),
                    n,
                    vec![blocks[i], blocks[j]],
                ));
            }
        }
    }
    out.into_iter()
        .map(|(name, n, blocks)| (name, X3hsInstance::new(n, blocks).expect("valid blocks")))
        .collect()
}
