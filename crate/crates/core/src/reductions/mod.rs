//! Reductions from 3-SAT and exact hitting set to subgroup distance
//! instances, and decoding of instance witnesses back to source solutions.

mod cayley;
mod hamming;
mod linf;
mod linf1;
mod source;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

pub use cayley::cayley_from_x3hs;
pub use hamming::hamming_from_3sat;
pub use linf::{falsifying_label, linf_from_3sat};
pub use linf1::linf1_from_x3hs;
pub(crate) use source::{check_block, check_clause};
pub use source::{CnfFormula, CnfLiteral, X3hsInstance};

use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::perm::Permutation;

/// Is there `z` (or `z1, z2`) with `d(target, g1^z1 g2^z2) <= k`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct DistanceInstance {
    pub degree: usize,
    pub metric: Metric,
    #[serde(with = "crate::decimal")]
    pub k: BigInt,
    pub generators: Vec<Permutation>,
    pub target: Permutation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decode_meta: Option<DecodeMeta>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    degree: usize,
    metric: Metric,
    #[serde(with = "crate::decimal")]
    k: BigInt,
    generators: Vec<Permutation>,
    target: Permutation,
    #[serde(default)]
    decode_meta: Option<DecodeMeta>,
}

impl TryFrom<RawInstance> for DistanceInstance {
    type Error = Error;

    fn try_from(r: RawInstance) -> Result<Self> {
        if r.degree != r.target.degree() {
            return Err(Error::DegreeMismatch {
                left: r.degree,
                right: r.target.degree(),
            });
        }
        DistanceInstance::new(r.metric, r.k, r.generators, r.target, r.decode_meta)
    }
}

impl DistanceInstance {
    pub fn new(
        metric: Metric,
        k: BigInt,
        generators: Vec<Permutation>,
        target: Permutation,
        decode_meta: Option<DecodeMeta>,
    ) -> Result<Self> {
        let degree = target.degree();
        if generators.is_empty() || generators.len() > 2 {
            return Err(Error::InvalidInstance(format!(
                "expected one or two generators, got {}",
                generators.len()
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: g.degree(),
                    right: degree,
                });
            }
        }
        if generators.len() == 2 && !generators[0].commutes_with(&generators[1])? {
            return Err(Error::InvalidInstance("generators do not commute".into()));
        }
        if k.is_negative() {
            return Err(Error::InvalidInstance("k must be non-negative".into()));
        }
        if let Some(meta) = &decode_meta {
            meta.check()?;
        }
        Ok(Self {
            degree,
            metric,
            k,
            generators,
            target,
            decode_meta,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instances always serialize")
    }

    /// The group element `g1^z1 (g2^z2)`.
    pub fn element(&self, exponents: &[BigInt]) -> Result<Permutation> {
        if exponents.len() != self.generators.len() {
            return Err(Error::BadParameters(format!(
                "expected {} exponents, got {}",
                self.generators.len(),
                exponents.len()
            )));
        }
        let mut acc = self.generators[0].pow(&exponents[0]);
        for (g, z) in self.generators.iter().zip(exponents).skip(1) {
            acc = acc.compose(&g.pow(z))?;
        }
        Ok(acc)
    }

    pub fn distance_at(&self, exponents: &[BigInt]) -> Result<usize> {
        self.metric
            .distance(&self.target, &self.element(exponents)?)
    }

    pub fn accepts(&self, exponents: &[BigInt]) -> Result<bool> {
        Ok(BigInt::from(self.distance_at(exponents)?) <= self.k)
    }

    /// `k` clamped to the machine range; any larger value exceeds every
    /// possible distance.
    pub fn k_usize(&self) -> usize {
        self.k.to_usize().unwrap_or(usize::MAX)
    }
}

/// What a reduction records so that witnesses can be decoded without the
/// source problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reduction", rename_all = "snake_case", deny_unknown_fields)]
pub enum DecodeMeta {
    /// Variable `i` is read from the exponent modulo `primes[i-1]`.
    #[serde(rename = "hamming_from_3sat")]
    HammingFrom3sat {
        primes: Vec<u64>,
        clause_moduli: Vec<u64>,
    },
    /// Element `i` is read modulo `primes[i-1]`.
    CayleyFromX3hs {
        primes: Vec<u64>,
        block_moduli: Vec<u64>,
        blocks: Vec<[usize; 3]>,
    },
    /// As for Hamming; `w[j]` is the point of clause block `j` that marks its
    /// falsifying assignment.
    #[serde(rename = "linf_from_3sat")]
    LinfFrom3sat {
        primes: Vec<u64>,
        clause_moduli: Vec<u64>,
        w: Vec<usize>,
    },
    /// `prime_table[i-1][j]` is the prime for element `i` and block `j`
    /// (column 0 is the element's own prime). Element `i` is read from the
    /// first exponent modulo `prime_table[i-1][0]`.
    Linf1FromX3hs {
        prime_table: Vec<Vec<u64>>,
        block_moduli: Vec<u64>,
        blocks: Vec<[usize; 3]>,
    },
}

impl DecodeMeta {
    pub fn name(&self) -> &'static str {
        match self {
            DecodeMeta::HammingFrom3sat { .. } => "hamming_from_3sat",
            DecodeMeta::CayleyFromX3hs { .. } => "cayley_from_x3hs",
            DecodeMeta::LinfFrom3sat { .. } => "linf_from_3sat",
            DecodeMeta::Linf1FromX3hs { .. } => "linf1_from_x3hs",
        }
    }

    /// Rejects metadata that decoding cannot use: moduli below 2, empty
    /// prime rows, or block elements outside the ground set.
    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(format!("decode_meta: {msg}")));
        let (moduli, blocks): (Vec<u64>, &[[usize; 3]]) = match self {
            DecodeMeta::HammingFrom3sat { primes, .. }
            | DecodeMeta::LinfFrom3sat { primes, .. } => (primes.clone(), &[]),
            DecodeMeta::CayleyFromX3hs { primes, blocks, .. } => (primes.clone(), blocks),
            DecodeMeta::Linf1FromX3hs {
                prime_table,
                blocks,
                ..
            } => {
                if prime_table.iter().any(Vec::is_empty) {
                    return bad("empty prime row".into());
                }
                (prime_table.iter().map(|row| row[0]).collect(), blocks)
            }
        };
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return bad(format!("modulus {m} is below 2"));
        }
        if let Some(e) = blocks
            .iter()
            .flatten()
            .find(|&&e| e == 0 || e > moduli.len())
        {
            return bad(format!(
                "block element {e} is outside [1, {}]",
                moduli.len()
            ));
        }
        Ok(())
    }

    pub fn from_sat(&self) -> bool {
        matches!(
            self,
            DecodeMeta::HammingFrom3sat { .. } | DecodeMeta::LinfFrom3sat { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoded {
    /// `assignment[i-1]` is the value of variable `i`.
    Assignment(Vec<bool>),
    /// Sorted elements of the hitting set.
    HittingSet(Vec<usize>),
}

fn residue(z: &BigInt, p: u64) -> u64 {
    z.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below a u64 modulus")
}

/// Reads bits off the residues of the first exponent. Elements that no
/// block constrains are reported in the set exactly when their residue is 1.
pub fn decode_witness(inst: &DistanceInstance, exponents: &[BigInt]) -> Result<Decoded> {
    let meta = inst
        .decode_meta
        .as_ref()
        .ok_or_else(|| Error::InvalidInstance("instance carries no decoding metadata".into()))?;
    if exponents.len() != inst.generators.len() {
        return Err(Error::BadParameters(format!(
            "expected {} exponents, got {}",
            inst.generators.len(),
            exponents.len()
        )));
    }
    let z = &exponents[0];
    let bit = |index: usize, p: u64, constrained: bool| -> Result<bool> {
        match residue(z, p) {
            0 => Ok(false),
            1 => Ok(true),
            r if constrained => Err(Error::UndecodableResidue {
                index,
                prime: p,
                residue: r,
            }),
            _ => Ok(false),
        }
    };
    match meta {
        DecodeMeta::HammingFrom3sat { primes, .. } | DecodeMeta::LinfFrom3sat { primes, .. } => {
            let bits = primes.iter().enumerate().map(|(i, &p)| bit(i + 1, p, true));
            Ok(Decoded::Assignment(bits.collect::<Result<_>>()?))
        }
        DecodeMeta::CayleyFromX3hs { primes, blocks, .. } => {
            let mut set = Vec::new();
            for (i, &p) in primes.iter().enumerate() {
                let constrained = blocks.iter().any(|b| b.contains(&(i + 1)));
                if bit(i + 1, p, constrained)? {
                    set.push(i + 1);
                }
            }
            Ok(Decoded::HittingSet(set))
        }
        DecodeMeta::Linf1FromX3hs {
            prime_table,
            blocks,
            ..
        } => {
            let mut set = Vec::new();
            for (i, row) in prime_table.iter().enumerate() {
                let constrained = blocks.iter().any(|b| b.contains(&(i + 1)));
                if bit(i + 1, row[0], constrained)? {
                    set.push(i + 1);
                }
            }
            Ok(Decoded::HittingSet(set))
        }
    }
}

/// Accumulates blocks of a product group embedded into one symmetric group.
/// Every block contributes one part to the target and one to each generator.
pub(crate) struct BlockBuilder {
    target: Vec<Permutation>,
    generators: Vec<Vec<Permutation>>,
}

impl BlockBuilder {
    pub(crate) fn new(generator_count: usize) -> Self {
        Self {
            target: Vec::new(),
            generators: vec![Vec::new(); generator_count],
        }
    }

    pub(crate) fn push(&mut self, target: Permutation, generators: Vec<Permutation>) {
        debug_assert_eq!(generators.len(), self.generators.len());
        debug_assert!(generators.iter().all(|g| g.degree() == target.degree()));
        self.target.push(target);
        for (acc, g) in self.generators.iter_mut().zip(generators) {
            acc.push(g);
        }
    }

    pub(crate) fn finish(
        self,
        metric: Metric,
        k: BigInt,
        meta: DecodeMeta,
    ) -> Result<DistanceInstance> {
        let target = Permutation::direct_sum(&self.target)?;
        let generators = self
            .generators
            .iter()
            .map(Permutation::direct_sum)
            .collect::<Result<Vec<_>>>()?;
        DistanceInstance::new(metric, k, generators, target, Some(meta))
    }
}
