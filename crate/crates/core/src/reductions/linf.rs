//! 3-SAT to l∞ distance from a cyclic group.

use num_bigint::BigInt;

use super::{BlockBuilder, CnfFormula, CnfLiteral, DecodeMeta, DistanceInstance};
use crate::constructions::{delta_cycle, label_bits, TripleShiftSystem};
use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::numth::odd_primes;
use crate::perm::Permutation;

/// The reserved point `w` in `1..=8` that the triple-shift product sends to 1
/// exactly under the clause's falsifying assignment. Literals are taken in
/// variable order.
pub fn falsifying_label(clause: &[CnfLiteral; 3]) -> usize {
    let mut c = *clause;
    c.sort_by_key(|l| l.var);
    let falsifying = (!c[0].positive, !c[1].positive, !c[2].positive);
    (1..=8)
        .find(|&w| label_bits(w) == falsifying)
        .expect("every bit triple has a label")
}

/// Variables get the odd primes from 5 on and `k = p_n^3`. Variable `i`
/// contributes two copies of `delta_cycle(p_i, k)`, the target fixing the
/// second, so only `z ≡ 0, 1 (mod p_i)` stay within `k`. A clause on
/// `d < e < f` gets a block of `k + 2` points: the generator is the
/// triple-shift product for `(p_d, p_e, p_f)` times the transposition
/// `(k, k+2)`, the target is the transposition `(w_j, k+2)` with `w_j` the
/// label of the falsifying assignment.
pub fn linf_from_3sat(f: &CnfFormula) -> Result<DistanceInstance> {
    let n = f.variable_count;
    if n == 0 {
        return Err(Error::InvalidFormula("formula has no variables".into()));
    }
    let primes = odd_primes(n, 5);
    let p_n = *primes.last().expect("n >= 1");
    let k = usize::try_from(p_n.pow(3))
        .map_err(|_| Error::TooLarge(format!("k = {p_n}^3 does not fit in memory")))?;
    let mut blocks = BlockBuilder::new(1);

    for &p in &primes {
        let delta = delta_cycle(p, k)?;
        let id = Permutation::identity(delta.degree())?;
        blocks.push(
            Permutation::direct_sum([&delta, &id])?,
            vec![Permutation::direct_sum([&delta, &delta])?],
        );
    }

    let mut clause_moduli = Vec::with_capacity(f.clauses.len());
    let mut w = Vec::with_capacity(f.clauses.len());
    for j in 0..f.clauses.len() {
        let clause = f.sorted_clause(j);
        let [p_d, p_e, p_f] = clause.map(|l| primes[l.var - 1]);
        let system = TripleShiftSystem::new(p_d, p_e, p_f)?;
        let swap = Permutation::transposition(k + 2, k, k + 2)?;
        let lambda = system.product().pad_to(k + 2)?.compose(&swap)?;
        let w_j = falsifying_label(&clause);
        let mu = Permutation::transposition(k + 2, w_j, k + 2)?;
        blocks.push(mu, vec![lambda]);
        clause_moduli.push(system.q);
        w.push(w_j);
    }

    blocks.finish(
        Metric::LInf,
        BigInt::from(k),
        DecodeMeta::LinfFrom3sat {
            primes,
            clause_moduli,
            w,
        },
    )
}
