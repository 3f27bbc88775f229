//! 3-SAT to Hamming distance from a cyclic group.

use num_bigint::BigInt;

use super::{BlockBuilder, CnfFormula, DecodeMeta, DistanceInstance};
use crate::error::Result;
use crate::metrics::Metric;
use crate::numth::{crt, odd_primes, Congruence};
use crate::perm::Permutation;

/// The bits `(b_d, b_e, b_f)` of the seven partial assignments satisfying a
/// clause, in lexicographic order.
pub(crate) fn satisfying_patterns(falsifying: [bool; 3]) -> Vec<[bool; 3]> {
    (0..8u8)
        .map(|m| [m & 4 != 0, m & 2 != 0, m & 1 != 0])
        .filter(|bits| *bits != falsifying)
        .collect()
}

/// Variable `i` gets the `i`-th odd prime `p_i` and a block of two `p_i`
/// cycles, one of which the target leaves fixed; `z ≡ 0, 1 (mod p_i)` are the
/// only exponents costing `p_i` mismatches there instead of `2 p_i`. Each
/// clause gets seven copies of a `q_j`-cycle, `q_j` the product of its
/// variables' primes; copy `l` of the target is the power matching the `l`-th
/// satisfying partial assignment, so exactly one copy agrees when the
/// exponent encodes a satisfying assignment.
pub fn hamming_from_3sat(f: &CnfFormula) -> Result<DistanceInstance> {
    let n = f.variable_count;
    let primes = odd_primes(n, 3);
    let mut blocks = BlockBuilder::new(1);
    let mut k = BigInt::from(0);

    for &p in &primes {
        let c = Permutation::long_cycle(p as usize)?;
        let id = Permutation::identity(p as usize)?;
        blocks.push(
            Permutation::direct_sum([&c, &id])?,
            vec![Permutation::direct_sum([&c, &c])?],
        );
        k += p;
    }

    let mut clause_moduli = Vec::with_capacity(f.clauses.len());
    for j in 0..f.clauses.len() {
        let clause = f.sorted_clause(j);
        let ps = clause.map(|l| primes[l.var - 1]);
        let q = ps.iter().product::<u64>();
        let c = Permutation::long_cycle(q as usize)?;
        let falsifying = clause.map(|l| !l.positive);
        let mut target_parts = Vec::with_capacity(7);
        for bits in satisfying_patterns(falsifying) {
            let system = (0..3)
                .map(|t| Congruence::new(u8::from(bits[t]), ps[t]))
                .collect::<Result<Vec<_>>>()?;
            let (z, _) = crt(&system)?;
            target_parts.push(c.pow(&z));
        }
        let gen_parts = vec![c.clone(); 7];
        blocks.push(
            Permutation::direct_sum(&target_parts)?,
            vec![Permutation::direct_sum(&gen_parts)?],
        );
        k += 6 * q;
        clause_moduli.push(q);
    }

    blocks.finish(
        Metric::Hamming,
        k,
        DecodeMeta::HammingFrom3sat {
            primes,
            clause_moduli,
        },
    )
}
