//! Exact hitting set to l∞ distance at most 1 from a two-generator abelian
//! group.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{BlockBuilder, DecodeMeta, DistanceInstance, X3hsInstance};
use crate::constructions::{extend_coprime, pair_t1_t2, CoprimeExtension};
use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::numth::{crt, odd_primes, Congruence};
use crate::perm::Permutation;

/// `table[i-1][j]` is the `(j n + i)`-th odd prime, for `j` in `0..=m`.
pub(crate) fn prime_table(n: usize, m: usize) -> Vec<Vec<u64>> {
    let primes = odd_primes((m + 1) * n, 3);
    (0..n)
        .map(|i| (0..=m).map(|j| primes[j * n + i]).collect())
        .collect()
}

fn crt2(r1: u64, p1: u64, r2: u64, p2: u64) -> Result<u64> {
    let (x, _) = crt(&[Congruence::new(r1, p1)?, Congruence::new(r2, p2)?])?;
    Ok(x.to_u64().expect("below p1 * p2"))
}

/// The gadget accepting exactly the two exponents `r1, r2 (mod t)` that are
/// also `0 (mod d)`.
fn component(t: u64, r1: u64, r2: u64, d: u64) -> Result<CoprimeExtension> {
    extend_coprime(t, r1.min(r2), r1.max(r2), d, 0)
}

/// Element `i` owns one prime per column `j = 0..=m`. For every block `j`
/// containing `i`, a cycle of length `p_{i,0} p_{i,j}` in the first
/// generator must land on the target within 1, which forces the first
/// exponent to agree on 0 or 1 modulo both primes. Block `j` on
/// `i1 < i2 < i3` gets two components: the first, moved by both generators,
/// accepts exponents that are the unit vector for `i1` or `i2` modulo the
/// block's primes; the second, moved only by the second generator, lets it
/// shift a hit on `i3` onto the unit vector for `i1`.
pub fn linf1_from_x3hs(h: &X3hsInstance) -> Result<DistanceInstance> {
    let (n, m) = (h.ground_size, h.blocks.len());
    if m == 0 {
        return Err(Error::InvalidInstance("instance has no blocks".into()));
    }
    let table = prime_table(n, m);
    let occurrences = h.occurrences();
    let mut blocks = BlockBuilder::new(2);

    for (i, row) in table.iter().enumerate() {
        let width = (row[0] * row[m]) as usize;
        for &j in &occurrences[i] {
            let pair = pair_t1_t2(row[0] * row[j], 0, 1)?;
            let alpha = pair.alpha.pad_to(width)?;
            blocks.push(
                pair.beta.pad_to(width)?,
                vec![alpha, Permutation::identity(width)?],
            );
        }
    }

    let mut block_moduli = Vec::with_capacity(m);
    for j in 1..=m {
        let [i1, i2, i3] = h.sorted_block(j - 1);
        let [p1, p2, p3] = [i1, i2, i3].map(|i| table[i - 1][j]);
        let width = (table[n - 1][j] * (table[n - 1][j] + 1)) as usize;

        let y = component(p1 * p2, crt2(1, p1, 0, p2)?, crt2(0, p1, 1, p2)?, p3)?;
        let z = component(p1 * p3, 0, crt2(1, p1, p3 - 1, p3)?, p2)?;
        let (gamma1, delta1) = (y.gamma.pad_to(width)?, y.delta.pad_to(width)?);
        let (gamma2, delta2) = (z.gamma.pad_to(width)?, z.delta.pad_to(width)?);
        let id = Permutation::identity(width)?;
        blocks.push(
            Permutation::direct_sum([&delta1, &delta2])?,
            vec![
                Permutation::direct_sum([&gamma1, &id])?,
                Permutation::direct_sum([&gamma1, &gamma2])?,
            ],
        );
        block_moduli.push(p1 * p2 * p3);
    }

    blocks.finish(
        Metric::LInf,
        BigInt::from(1),
        DecodeMeta::Linf1FromX3hs {
            prime_table: table,
            block_moduli,
            blocks: h.blocks.clone(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::linf;
    use crate::reductions::{decode_witness, Decoded};

    #[test]
    fn primes_follow_columns() {
        assert_eq!(
            prime_table(3, 1),
            vec![vec![3, 11], vec![5, 13], vec![7, 17]]
        );
    }

    #[test]
    fn single_block_layout() {
        let h = X3hsInstance::new(3, vec![[2, 3, 1]]).unwrap();
        let inst = linf1_from_x3hs(&h).unwrap();
        assert_eq!(inst.degree, 33 + 65 + 119 + 2 * (17 * 17 + 17));
        assert!(inst.generators[0]
            .commutes_with(&inst.generators[1])
            .unwrap());
        assert!(linf1_from_x3hs(&X3hsInstance::new(3, vec![]).unwrap()).is_err());
    }

    /// Builds the exponents from a hitting set as in the completeness
    /// argument and checks the distance.
    #[test]
    fn hitting_sets_give_witnesses() {
        let h = X3hsInstance::new(4, vec![[1, 2, 3], [2, 3, 4]]).unwrap();
        let inst = linf1_from_x3hs(&h).unwrap();
        let table = prime_table(4, 2);
        for set in [vec![2], vec![3], vec![1, 4]] {
            let mut x1 = Vec::new();
            for (i, row) in table.iter().enumerate() {
                let bit = u8::from(set.contains(&(i + 1)));
                for &p in row {
                    x1.push(Congruence::new(bit, p).unwrap());
                }
            }
            let x1 = crt(&x1).unwrap().0;
            let mut x2 = Vec::new();
            for j in 1..=2 {
                let block = h.sorted_block(j - 1);
                let last = block[2];
                for (pos, &i) in block.iter().enumerate() {
                    let p = table[i - 1][j];
                    // Shift a hit on the largest element to the smallest.
                    let r = match (set.contains(&last), pos) {
                        (true, 0) => 1,
                        (true, 2) => p - 1,
                        _ => 0,
                    };
                    x2.push(Congruence::new(r, p).unwrap());
                }
            }
            let x2 = crt(&x2).unwrap().0;
            let exps = [x1, x2];
            assert!(inst.distance_at(&exps).unwrap() <= 1, "set {set:?}");
            assert_eq!(
                decode_witness(&inst, &exps).unwrap(),
                Decoded::HittingSet(set)
            );
        }
    }

    #[test]
    fn non_hitting_exponents_fail() {
        let h = X3hsInstance::new(3, vec![[1, 2, 3]]).unwrap();
        let inst = linf1_from_x3hs(&h).unwrap();
        let pi2 = &inst.generators[1];
        // x1 = 0 hits nothing; no x2 below the block modulus rescues it.
        for x2 in 0..(11 * 13 * 17) {
            assert!(linf(&inst.target, &pi2.pow_u64(x2)).unwrap() > 1);
        }
    }
}
