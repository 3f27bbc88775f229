//! Exhaustive solvers for the source problems and small metric checks.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::metrics::hamming;
use crate::numth::is_prime;
use crate::perm::Permutation;
use crate::reductions::{CnfFormula, X3hsInstance};

pub const MAX_ENUMERATION_SIZE: usize = 25;
pub const MAX_BFS_DEGREE: usize = 8;

/// The first satisfying assignment in the order of `x1 x2 ... xn` read as a
/// binary number with `x1` most significant.
pub fn sat_bruteforce(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = f.variable_count;
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge(format!(
            "{n} variables exceed {MAX_ENUMERATION_SIZE}"
        )));
    }
    // Per clause: the mask of its variables and the bits that falsify it.
    let clauses: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(vars, bad), l| {
                let bit = 1u32 << (n - l.var);
                (vars | bit, if l.positive { bad } else { bad | bit })
            })
        })
        .collect();
    let found = (0..1u32 << n).find(|&mask| clauses.iter().all(|&(vars, bad)| mask & vars != bad));
    Ok(found.map(|mask| (1..=n).map(|v| mask >> (n - v) & 1 == 1).collect()))
}

/// The lexicographically smallest exact hitting set, as a sorted list.
pub fn x3hs_bruteforce(h: &X3hsInstance) -> Result<Option<Vec<usize>>> {
    let n = h.ground_size;
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::TooLarge(format!(
            "{n} elements exceed {MAX_ENUMERATION_SIZE}"
        )));
    }
    let occurrences = h.occurrences();
    let mut hits = vec![0u8; h.blocks.len()];
    let mut chosen = Vec::new();
    Ok(hitting_dfs(h, &occurrences, &mut hits, &mut chosen, 1).then_some(chosen))
}

/// Pre-order search over sorted subsets: the current set is checked before
/// any extension, and extensions add elements in increasing order.
fn hitting_dfs(
    h: &X3hsInstance,
    occurrences: &[Vec<usize>],
    hits: &mut [u8],
    chosen: &mut Vec<usize>,
    next: usize,
) -> bool {
    if hits.iter().all(|&c| c == 1) {
        return true;
    }
    // A block with no hit whose elements are all below `next` is lost.
    if h.blocks
        .iter()
        .zip(hits.iter())
        .any(|(b, &c)| c == 0 && b.iter().all(|&i| i < next))
    {
        return false;
    }
    for i in next..=h.ground_size {
        if occurrences[i - 1].iter().any(|&j| hits[j - 1] > 0) {
            continue;
        }
        for &j in &occurrences[i - 1] {
            hits[j - 1] += 1;
        }
        chosen.push(i);
        if hitting_dfs(h, occurrences, hits, chosen, i + 1) {
            return true;
        }
        chosen.pop();
        for &j in &occurrences[i - 1] {
            hits[j - 1] -= 1;
        }
    }
    false
}

/// Fewest transpositions turning `a` into `b`, by breadth-first search.
pub fn cayley_bfs(a: &Permutation, b: &Permutation) -> Result<usize> {
    let n = a.degree();
    if b.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: b.degree(),
        });
    }
    if n > MAX_BFS_DEGREE {
        return Err(Error::TooLarge(format!(
            "degree {n} exceeds {MAX_BFS_DEGREE}"
        )));
    }
    let goal = b.image();
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::from([(a.image(), 0)]);
    let mut queue = VecDeque::from([a.image()]);
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if cur == goal {
            return Ok(d);
        }
        for i in 0..n {
            for j in i + 1..n {
                let mut next = cur.clone();
                next.swap(i, j);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("the transpositions generate the symmetric group")
}

/// Whether some power `tau^z` with `z ≢ 0 (mod ord(tau))` moves at most `k`
/// points. Only the powers `tau^(ord/p)` for primes `p | ord` need checking,
/// since every nontrivial power has one of them as a power.
pub fn min_hamming_weight_cyclic(tau: &Permutation, k: usize) -> bool {
    let order = BigInt::from(tau.order());
    let id = Permutation::identity(tau.degree()).expect("degree >= 1");
    (2..=tau.degree() as u64)
        .filter(|&p| is_prime(p) && (&order % p).is_zero())
        .any(|p| {
            let power = tau.pow(&(&order / p));
            hamming(&power, &id).expect("same degree") <= k
        })
}

/// `min over 0 < z < ord(tau)` of the number of points `tau^z` moves, by
/// scanning; `None` for the identity.
pub fn min_hamming_weight_scan(tau: &Permutation) -> Option<usize> {
    let order = tau.order().to_u64().expect("scan needs a small order");
    let id = Permutation::identity(tau.degree()).expect("degree >= 1");
    let mut power = tau.clone();
    let mut best = None;
    for _ in 1..order {
        let w = hamming(&power, &id).expect("same degree");
        best = Some(best.map_or(w, |b: usize| b.min(w)));
        power = power.compose(tau).expect("same degree");
    }
    best
}
