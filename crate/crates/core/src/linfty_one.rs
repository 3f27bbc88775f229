//! Deciding whether some power of `α` lies within l∞ distance 1 of `β`.
//!
//! Each cycle of `α` admits at most two residues of the exponent. Those
//! residues are projected onto prime powers and the compatibility of the
//! projections is expressed as a 2-SAT formula; a model yields the exponent
//! through the Chinese remainder theorem.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::linf;
use crate::numth::{crt, factorize, prime_powers_up_to, Congruence};
use crate::perm::Permutation;
use crate::twosat::{Literal, TwoSatFormula};

/// The exponents `v` in `[0, a)` for which `α^v` keeps every point of one
/// cycle within distance 1 of its image under `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSet {
    /// Position of the cycle in the canonical decomposition of `α`.
    pub cycle_index: usize,
    pub cycle_length: usize,
    pub residues: Vec<usize>,
}

/// Residues of one prime power `p^d`, taken from the first cycle whose
/// length has `p`-adic valuation exactly `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePowerSlot {
    pub p: u64,
    pub d: u32,
    pub modulus: u64,
    pub owner_index: Option<usize>,
    pub residues: Vec<u64>,
    /// Residue selected by the satisfying assignment, if any.
    pub chosen: Option<u64>,
    #[serde(skip)]
    vars: Vec<usize>,
}

impl PrimePowerSlot {
    /// Variable standing for "the exponent is ≡ residue mod p^d", or the
    /// always-false variable when the residue is not available.
    fn literal_for(&self, residue: u64) -> Literal {
        let r = residue % self.modulus;
        match self.residues.iter().position(|&y| y == r) {
            Some(k) => Literal::pos(self.vars[k + 1]),
            None => Literal::pos(self.vars[0]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum EarlyNo {
    /// A fixed point of `α` is sent further than 1 by `β`.
    FixedPoint { point: usize, image: usize },
    /// No exponent works on this cycle.
    EmptyCycle { cycle_index: usize },
}

/// The 2-SAT encoding together with the data needed to read a witness back.
#[derive(Clone, Debug)]
pub struct Linf1Formula {
    pub formula: TwoSatFormula,
    pub cycles: Vec<Vec<usize>>,
    pub per_cycle: Vec<ResidueSet>,
    pub slots: Vec<PrimePowerSlot>,
}

#[derive(Clone, Debug)]
pub enum BuildOutcome {
    EarlyNo {
        reason: EarlyNo,
        per_cycle: Vec<ResidueSet>,
    },
    Formula(Linf1Formula),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Linf1Decision {
    pub answer: bool,
    #[serde(with = "crate::decimal::option")]
    pub witness: Option<BigInt>,
    pub early_no: Option<EarlyNo>,
    pub per_cycle: Vec<ResidueSet>,
    pub slots: Vec<PrimePowerSlot>,
}

/// Tests every shift of `cycle` (1-indexed points, in cycle order) against
/// `beta`.
pub fn admissible_residues(cycle: &[usize], beta: &Permutation) -> Result<ResidueSet> {
    residues_of(0, cycle, beta)
}

fn residues_of(cycle_index: usize, cycle: &[usize], beta: &Permutation) -> Result<ResidueSet> {
    let len = cycle.len();
    if len < 2 {
        return Err(Error::BadParameters(
            "cycle must have length at least 2".into(),
        ));
    }
    let mut residues = Vec::new();
    for v in 0..len {
        let fits = cycle.iter().enumerate().all(|(k, &j)| {
            let moved = cycle[(k + v) % len];
            moved.abs_diff(beta.apply(j)) <= 1
        });
        if fits {
            residues.push(v);
        }
    }
    if residues.len() > 2 {
        return Err(Error::InternalAssertion(format!(
            "cycle {cycle_index} of length {len} admits {} residues",
            residues.len()
        )));
    }
    Ok(ResidueSet {
        cycle_index,
        cycle_length: len,
        residues,
    })
}

fn check_degrees(alpha: &Permutation, beta: &Permutation) -> Result<()> {
    if alpha.degree() != beta.degree() {
        return Err(Error::DegreeMismatch {
            left: alpha.degree(),
            right: beta.degree(),
        });
    }
    Ok(())
}

/// Prime-power parts `p^d ∥ a` of a cycle length.
fn exact_prime_powers(a: usize) -> Vec<(u64, u32)> {
    factorize(a as u64)
}

pub fn build_formula(alpha: &Permutation, beta: &Permutation) -> Result<BuildOutcome> {
    check_degrees(alpha, beta)?;
    let n = alpha.degree();
    let dec = alpha.decompose();

    let mut per_cycle = Vec::with_capacity(dec.cycles.len());
    for (i, cycle) in dec.cycles.iter().enumerate() {
        per_cycle.push(residues_of(i, cycle, beta)?);
    }
    for &i in &dec.fixed_points {
        let image = beta.apply(i);
        if i.abs_diff(image) > 1 {
            return Ok(BuildOutcome::EarlyNo {
                reason: EarlyNo::FixedPoint { point: i, image },
                per_cycle,
            });
        }
    }
    if let Some(empty) = per_cycle.iter().find(|r| r.residues.is_empty()) {
        let reason = EarlyNo::EmptyCycle {
            cycle_index: empty.cycle_index,
        };
        return Ok(BuildOutcome::EarlyNo { reason, per_cycle });
    }

    let mut formula = TwoSatFormula::new();
    let mut slots = Vec::new();
    let mut slot_of: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    let factorizations: Vec<Vec<(u64, u32)>> = dec
        .cycles
        .iter()
        .map(|c| exact_prime_powers(c.len()))
        .collect();

    for (p, d, modulus) in prime_powers_up_to(n as u64) {
        let owner = factorizations.iter().position(|f| f.contains(&(p, d)));
        let mut residues: Vec<u64> = match owner {
            Some(i) => per_cycle[i]
                .residues
                .iter()
                .map(|&v| v as u64 % modulus)
                .collect(),
            None => Vec::new(),
        };
        residues.sort_unstable();
        residues.dedup();
        let vars = (0..=residues.len())
            .map(|k| formula.var(format!("x_{p}_{d}_{k}")))
            .collect();
        slot_of.insert((p, d), slots.len());
        slots.push(PrimePowerSlot {
            p,
            d,
            modulus,
            owner_index: owner,
            residues,
            chosen: None,
            vars,
        });
    }

    // Every slot picks exactly one of its residues; index 0 is never true.
    for s in &slots {
        formula.add_unit(Literal::neg(s.vars[0]))?;
        match s.residues.len() {
            1 => formula.add_unit(Literal::pos(s.vars[1]))?,
            2 => formula.add_xor(Literal::pos(s.vars[1]), Literal::pos(s.vars[2]))?,
            _ => {}
        }
    }

    // Choices for p^d and p^e (d <= e) must agree modulo p^d.
    for (a_idx, a) in slots.iter().enumerate() {
        for b in slots[a_idx..].iter().filter(|b| b.p == a.p) {
            for (k1, &y1) in a.residues.iter().enumerate() {
                for (k2, &y2) in b.residues.iter().enumerate() {
                    let lhs = Literal::pos(b.vars[k2 + 1]);
                    let rhs = Literal::pos(a.vars[k1 + 1]);
                    if y1 % a.modulus == y2 % a.modulus {
                        formula.add_implies(lhs, rhs)?;
                    } else {
                        formula.add_implies(lhs, !rhs)?;
                    }
                }
            }
        }
    }

    // Each cycle's residues must be realized by the slot choices.
    for (set, parts) in per_cycle.iter().zip(&factorizations) {
        let slot = |p: u64, d: u32| &slots[slot_of[&(p, d)]];
        match set.residues[..] {
            [v] => {
                for &(p, d) in parts {
                    formula.add_unit(slot(p, d).literal_for(v as u64))?;
                }
            }
            [v1, v2] => {
                let (v1, v2) = (v1 as u64, v2 as u64);
                let mut split = Vec::new();
                for &(p, d) in parts {
                    let s = slot(p, d);
                    if v1 % s.modulus == v2 % s.modulus {
                        formula.add_unit(s.literal_for(v1))?;
                    } else {
                        split.push(s);
                    }
                }
                for s in &split {
                    for t in &split {
                        formula.add_xor(s.literal_for(v1), t.literal_for(v2))?;
                    }
                }
            }
            _ => unreachable!("residue sets here have one or two elements"),
        }
    }

    Ok(BuildOutcome::Formula(Linf1Formula {
        formula,
        cycles: dec.cycles,
        per_cycle,
        slots,
    }))
}

/// Decides whether `l∞(β, α^z) <= 1` for some `z >= 0`. A positive answer
/// carries a witness in `[0, ord(α))` that has been checked directly.
pub fn decide(alpha: &Permutation, beta: &Permutation) -> Result<Linf1Decision> {
    let built = match build_formula(alpha, beta)? {
        BuildOutcome::EarlyNo { reason, per_cycle } => {
            return Ok(Linf1Decision {
                answer: false,
                witness: None,
                early_no: Some(reason),
                per_cycle,
                slots: Vec::new(),
            });
        }
        BuildOutcome::Formula(f) => f,
    };
    let Linf1Formula {
        formula,
        cycles,
        per_cycle,
        mut slots,
    } = built;
    let Some(model) = formula.solve() else {
        return Ok(Linf1Decision {
            answer: false,
            witness: None,
            early_no: None,
            per_cycle,
            slots,
        });
    };

    for s in &mut slots {
        let picked: Vec<u64> = s
            .residues
            .iter()
            .enumerate()
            .filter(|&(k, _)| model[s.vars[k + 1]])
            .map(|(_, &y)| y)
            .collect();
        match picked[..] {
            [] if s.residues.is_empty() => {}
            [y] => s.chosen = Some(y),
            _ => {
                return Err(Error::InternalAssertion(format!(
                    "slot {}^{} selects {} residues",
                    s.p,
                    s.d,
                    picked.len()
                )))
            }
        }
    }

    let chosen: BTreeMap<(u64, u32), u64> = slots
        .iter()
        .filter_map(|s| s.chosen.map(|y| ((s.p, s.d), y)))
        .collect();
    let mut per_cycle_congruences = Vec::with_capacity(cycles.len());
    for (cycle, set) in cycles.iter().zip(&per_cycle) {
        let mut parts = Vec::new();
        for (p, d) in exact_prime_powers(cycle.len()) {
            let y = chosen.get(&(p, d)).ok_or_else(|| {
                Error::InternalAssertion(format!("no residue chosen for {p}^{d}"))
            })?;
            parts.push(Congruence::new(*y, p.pow(d))?);
        }
        let (b_i, _) = crt(&parts)?;
        let in_set = set.residues.iter().any(|&v| BigInt::from(v) == b_i);
        if !in_set {
            return Err(Error::InternalAssertion(format!(
                "reconstructed residue {b_i} not admissible on cycle {}",
                set.cycle_index
            )));
        }
        per_cycle_congruences.push(Congruence::new(b_i, cycle.len())?);
    }
    let (witness, _) = crt(&per_cycle_congruences).map_err(|_| {
        Error::InternalAssertion("per-cycle residues are not CRT-consistent".into())
    })?;
    if linf(beta, &alpha.pow(&witness))? > 1 {
        return Err(Error::InternalAssertion(format!(
            "witness {witness} fails the distance check"
        )));
    }
    Ok(Linf1Decision {
        answer: true,
        witness: Some(witness),
        early_no: None,
        per_cycle,
        slots,
    })
}
