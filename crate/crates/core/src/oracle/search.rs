//! Exhaustive searches for exponents within distance `k` of the target.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::engine::{Engine, Index};
use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::reductions::DistanceInstance;

/// Largest table the engine builds for one component.
pub(crate) const TABLE_LIMIT: u64 = 100_000_000;

pub const DEFAULT_CAP: u64 = 10_000_000;
pub const DEFAULT_CAP_EACH: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest generator order scanned for one generator.
    pub cap: u64,
    /// Largest order of each generator for the two-generator grid.
    pub cap_each: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            cap_each: DEFAULT_CAP_EACH,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Every `z` in `[0, ord)`.
    Scan,
    /// Every `(z1, z2)` in `[0, ord1) x [0, ord2)`.
    Grid,
    /// Exact backtracking over residues of the exponents (l∞ only).
    ResidueSearch,
}

fn bounded_order(order: BigUint, cap: u64) -> Result<u64> {
    match order.to_u64() {
        Some(o) if o <= cap => Ok(o),
        _ => Err(Error::CapExceeded { order, cap }),
    }
}

/// The smallest `z` in `[0, ord(pi))` with `d(target, pi^z) <= k`. Refuses
/// with `CapExceeded` rather than scanning part of the group.
pub fn solve_cyclic_bruteforce(inst: &DistanceInstance, cap: u64) -> Result<Option<BigInt>> {
    if inst.generators.len() != 1 {
        return Err(Error::BadParameters("expected a single generator".into()));
    }
    let order = bounded_order(inst.generators[0].order(), cap)?;
    let engine = Engine::build(inst, TABLE_LIMIT.max(cap))?;
    Ok((0..order).find(|&z| engine.accepts(z, 0)).map(BigInt::from))
}

/// The lexicographically smallest `(z1, z2)` in
/// `[0, ord(pi1)) x [0, ord(pi2))` within `k`.
pub fn solve_two_gen_bruteforce(
    inst: &DistanceInstance,
    cap_each: u64,
) -> Result<Option<(BigInt, BigInt)>> {
    if inst.generators.len() != 2 {
        return Err(Error::BadParameters("expected two generators".into()));
    }
    let o1 = bounded_order(inst.generators[0].order(), cap_each)?;
    let o2 = bounded_order(inst.generators[1].order(), cap_each)?;
    let engine = Engine::build(inst, TABLE_LIMIT)?;
    for z1 in 0..o1 {
        if let Some(z2) = (0..o2).find(|&z2| engine.accepts(z1, z2)) {
            return Ok(Some((BigInt::from(z1), BigInt::from(z2))));
        }
    }
    Ok(None)
}

/// Same answer as [`solve_two_gen_bruteforce`] for l∞ instances, found by
/// fixing residues of the exponents component by component instead of
/// walking the grid. Every admissible residue class is explored, so a `None`
/// is a proof.
pub fn solve_two_gen_residue_search(inst: &DistanceInstance) -> Result<Option<(BigInt, BigInt)>> {
    if inst.generators.len() != 2 {
        return Err(Error::BadParameters("expected two generators".into()));
    }
    if inst.metric != Metric::LInf {
        return Err(Error::BadParameters(
            "residue search needs the l∞ metric".into(),
        ));
    }
    let engine = Engine::build(inst, TABLE_LIMIT)?;
    if engine.base > engine.k {
        return Ok(None);
    }
    let constraints: Vec<Constraint> = engine
        .components
        .iter()
        .map(|c| Constraint {
            index: c.index,
            allowed: (0..c.table.len())
                .filter(|&i| c.table[i] as usize <= engine.k)
                .collect(),
        })
        .collect();
    if constraints.iter().any(|c| c.allowed.is_empty()) {
        return Ok(None);
    }
    let mut search = ResidueSearch {
        constraints,
        done: Vec::new(),
        best: None,
    };
    search.done = vec![false; search.constraints.len()];
    let start = [Residue::free(), Residue::free()];
    search.descend(&start);
    Ok(search.best)
}

/// `z ≡ r (mod m)`.
#[derive(Clone, Debug)]
struct Residue {
    r: BigInt,
    m: BigInt,
}

impl Residue {
    fn free() -> Self {
        Self {
            r: BigInt::zero(),
            m: BigInt::one(),
        }
    }

    /// `z mod m'` when it is already determined by this residue, else the
    /// value forced modulo `gcd(m, m')`.
    fn restrict(&self, modulus: u64) -> (u64, u64) {
        let g = self
            .m
            .gcd(&BigInt::from(modulus))
            .to_u64()
            .expect("divides a u64");
        let r = self
            .r
            .mod_floor(&BigInt::from(g))
            .to_u64()
            .expect("below g");
        (r, g)
    }

    fn refine(&self, x: u64, modulus: u64) -> Self {
        let m = BigInt::from(modulus);
        let (r, l) = crate::numth::crt_pair(&self.r, &self.m, &BigInt::from(x), &m)
            .expect("caller checked consistency");
        Self { r, m: l }
    }
}

struct Constraint {
    index: Index,
    allowed: Vec<usize>,
}

struct ResidueSearch {
    constraints: Vec<Constraint>,
    done: Vec<bool>,
    best: Option<(BigInt, BigInt)>,
}

/// A residue `(r, modulus)` for each exponent, `None` where unconstrained.
type Candidate = (Option<(u64, u64)>, Option<(u64, u64)>);

impl ResidueSearch {
    /// Residue pairs `(z1 mod a, z2 mod b)` that satisfy constraint `c` and
    /// agree with `state`; `None` stands for an exponent the constraint does
    /// not involve.
    fn candidates(&self, c: &Constraint, state: &[Residue; 2]) -> Vec<Candidate> {
        let mut out = Vec::new();
        match c.index {
            Index::Linear { m, c: coef } => {
                let primary = if coef[0] == 1 { 0 } else { 1 };
                let other = 1 - primary;
                let e = coef[other];
                let pick = |p: u64, o: Option<u64>| {
                    let mut pair = [None, None];
                    pair[primary] = Some((p, m));
                    pair[other] = o.map(|o| (o, m));
                    (pair[0], pair[1])
                };
                let (rp, gp) = state[primary].restrict(m);
                if e == 0 {
                    for &s in &c.allowed {
                        if s as u64 % gp == rp {
                            out.push(pick(s as u64, None));
                        }
                    }
                } else {
                    let (r, g) = state[other].restrict(m);
                    let mut y = r;
                    while y < m {
                        let shift = (e as u128 * y as u128 % m as u128) as u64;
                        for &s in &c.allowed {
                            let x = (s as u64 + m - shift) % m;
                            if x % gp == rp {
                                out.push(pick(x, Some(y)));
                            }
                        }
                        y += g;
                    }
                }
            }
            Index::Grid { a, b } => {
                let ((r1, g1), (r2, g2)) = (state[0].restrict(a), state[1].restrict(b));
                for &i in &c.allowed {
                    let (x, y) = (i as u64 / b, i as u64 % b);
                    if x % g1 == r1 && y % g2 == r2 {
                        out.push((Some((x, a)), Some((y, b))));
                    }
                }
            }
        }
        out
    }

    fn descend(&mut self, state: &[Residue; 2]) {
        // Most constrained first.
        let mut pick: Option<(usize, Vec<_>)> = None;
        for (i, c) in self.constraints.iter().enumerate() {
            if self.done[i] {
                continue;
            }
            let cands = self.candidates(c, state);
            if pick
                .as_ref()
                .is_none_or(|(_, best)| cands.len() < best.len())
            {
                let empty = cands.is_empty();
                pick = Some((i, cands));
                if empty {
                    break;
                }
            }
        }
        let Some((i, cands)) = pick else {
            let leaf = (state[0].r.clone(), state[1].r.clone());
            if self.best.as_ref().is_none_or(|b| leaf < *b) {
                self.best = Some(leaf);
            }
            return;
        };
        self.done[i] = true;
        for (x, y) in cands {
            let next = [
                x.map_or_else(|| state[0].clone(), |(v, m)| state[0].refine(v, m)),
                y.map_or_else(|| state[1].clone(), |(v, m)| state[1].refine(v, m)),
            ];
            self.descend(&next);
        }
        self.done[i] = false;
    }
}
