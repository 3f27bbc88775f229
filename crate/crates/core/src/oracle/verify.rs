//! Checks a reduction end to end: solve both sides by brute force, compare
//! the verdicts and decode the instance witness.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::enumerate::{sat_bruteforce, x3hs_bruteforce};
use super::search::{
    solve_cyclic_bruteforce, solve_two_gen_bruteforce, solve_two_gen_residue_search, Caps, Method,
};
use crate::error::{Error, Result};
use crate::formats::SourceProblem;
use crate::metrics::Metric;
use crate::reductions::{decode_witness, Decoded, DistanceInstance};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    #[serde(with = "crate::decimal::option_vec")]
    pub witness: Option<Vec<BigInt>>,
    pub method: Method,
}

/// Searches the instance exhaustively. One generator is scanned up to
/// `caps.cap`; two generators use the grid when both orders are within
/// `caps.cap_each` and otherwise, for l∞, the exact residue search.
pub fn solve(inst: &DistanceInstance, caps: Caps) -> Result<Solution> {
    if inst.generators.len() == 1 {
        let witness = solve_cyclic_bruteforce(inst, caps.cap)?.map(|z| vec![z]);
        return Ok(Solution {
            witness,
            method: Method::Scan,
        });
    }
    match solve_two_gen_bruteforce(inst, caps.cap_each) {
        Ok(w) => Ok(Solution {
            witness: w.map(|(a, b)| vec![a, b]),
            method: Method::Grid,
        }),
        Err(Error::CapExceeded { .. }) if inst.metric == Metric::LInf => {
            let w = solve_two_gen_residue_search(inst)?;
            Ok(Solution {
                witness: w.map(|(a, b)| vec![a, b]),
                method: Method::ResidueSearch,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub reduction: String,
    pub source_solvable: bool,
    pub instance_solvable: bool,
    pub equivalent: bool,
    #[serde(with = "crate::decimal::option_vec")]
    pub witness: Option<Vec<BigInt>>,
    pub distance: Option<usize>,
    pub decoded: Option<Decoded>,
    pub decode_error: Option<String>,
    pub decoded_verifies: Option<bool>,
    pub method: Method,
}

impl VerificationReport {
    /// Equivalent verdicts and, on yes-instances, a decoded witness that
    /// solves the source.
    pub fn passed(&self) -> bool {
        self.equivalent && self.decoded_verifies != Some(false)
    }
}

pub fn verify_reduction(
    inst: &DistanceInstance,
    source: &SourceProblem,
    caps: Caps,
) -> Result<VerificationReport> {
    let meta = inst
        .decode_meta
        .as_ref()
        .ok_or_else(|| Error::InvalidInstance("instance carries no decoding metadata".into()))?;
    let source_solvable = match source {
        SourceProblem::Sat(f) if meta.from_sat() => sat_bruteforce(f)?.is_some(),
        SourceProblem::X3hs(h) if !meta.from_sat() => x3hs_bruteforce(h)?.is_some(),
        _ => {
            return Err(Error::BadParameters(format!(
                "source problem does not match reduction {}",
                meta.name()
            )))
        }
    };
    let solution = solve(inst, caps)?;
    let mut report = VerificationReport {
        reduction: meta.name().to_string(),
        source_solvable,
        instance_solvable: solution.witness.is_some(),
        equivalent: source_solvable == solution.witness.is_some(),
        witness: solution.witness.clone(),
        distance: None,
        decoded: None,
        decode_error: None,
        decoded_verifies: None,
        method: solution.method,
    };
    if let Some(w) = &solution.witness {
        report.distance = Some(inst.distance_at(w)?);
        match decode_witness(inst, w) {
            Ok(decoded) => {
                let ok = match (&decoded, source) {
                    (Decoded::Assignment(a), SourceProblem::Sat(f)) => f.is_satisfied_by(a),
                    (Decoded::HittingSet(s), SourceProblem::X3hs(h)) => h.is_exact_hitting_set(s),
                    _ => false,
                };
                report.decoded = Some(decoded);
                report.decoded_verifies = Some(ok);
            }
            Err(e @ Error::UndecodableResidue { .. }) => {
                report.decode_error = Some(e.to_string());
                report.decoded_verifies = Some(false);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}
