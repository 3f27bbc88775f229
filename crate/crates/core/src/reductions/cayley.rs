//! Exact hitting set to Cayley distance from a cyclic group.

use num_bigint::BigInt;

use super::{BlockBuilder, DecodeMeta, DistanceInstance, X3hsInstance};
use crate::error::Result;
use crate::metrics::Metric;
use crate::numth::{cayley_primes, crt, Congruence};
use crate::perm::Permutation;

/// Residues of the six target exponents modulo the three primes of a block,
/// element by element in ascending order.
pub(crate) const BLOCK_RESIDUES: [[u64; 3]; 6] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 2, 3],
    [3, 1, 2],
    [2, 3, 1],
];

/// Each block `C_j` gets six copies of a `q_j`-cycle, `q_j` the product of its
/// elements' primes. Target copy `d` is the power `s_{j,d}` with the residues
/// in [`BLOCK_RESIDUES`]; `tau * pi^-x` then has the most cycles on the block
/// exactly when `x` is 1 modulo one of its primes and 0 modulo the others.
pub fn cayley_from_x3hs(h: &X3hsInstance) -> Result<DistanceInstance> {
    let primes = cayley_primes(h.ground_size);
    let mut blocks = BlockBuilder::new(1);
    let mut degree = 0u64;
    let mut best_cycles = 0u64;
    let mut block_moduli = Vec::with_capacity(h.blocks.len());

    for j in 0..h.blocks.len() {
        let block = h.sorted_block(j);
        let ps = block.map(|i| primes[i - 1]);
        let q = ps.iter().product::<u64>();
        let c = Permutation::long_cycle(q as usize)?;
        let mut target_parts = Vec::with_capacity(6);
        for residues in BLOCK_RESIDUES {
            let system = (0..3)
                .map(|t| Congruence::new(residues[t], ps[t]))
                .collect::<Result<Vec<_>>>()?;
            let (s, _) = crt(&system)?;
            target_parts.push(c.pow(&s));
        }
        blocks.push(
            Permutation::direct_sum(&target_parts)?,
            vec![Permutation::direct_sum(&vec![c; 6])?],
        );
        degree += 6 * q;
        best_cycles += q + 2 + ps.iter().sum::<u64>();
        block_moduli.push(q);
    }

    let k = BigInt::from(degree) - BigInt::from(best_cycles);
    blocks.finish(
        Metric::Cayley,
        k,
        DecodeMeta::CayleyFromX3hs {
            primes,
            block_moduli,
            blocks: h.blocks.clone(),
        },
    )
}
