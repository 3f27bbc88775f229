//! Distances between permutations of equal degree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "hamming")]
    Hamming,
    #[serde(rename = "cayley")]
    Cayley,
    #[serde(rename = "linf")]
    LInf,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Hamming, Metric::Cayley, Metric::LInf];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hamming => "hamming",
            Metric::Cayley => "cayley",
            Metric::LInf => "linf",
        }
    }

    pub fn distance(self, a: &Permutation, b: &Permutation) -> Result<usize> {
        match self {
            Metric::Hamming => hamming(a, b),
            Metric::Cayley => cayley(a, b),
            Metric::LInf => linf(a, b),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::BadParameters(format!("unknown metric {s:?}")))
    }
}

fn check(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

/// Number of points on which `a` and `b` disagree.
pub fn hamming(a: &Permutation, b: &Permutation) -> Result<usize> {
    check(a, b)?;
    Ok(a.raw().iter().zip(b.raw()).filter(|(x, y)| x != y).count())
}

/// Minimum number of transpositions turning `a` into `b`: the degree minus
/// the number of cycles of `a b^-1`, fixed points included.
pub fn cayley(a: &Permutation, b: &Permutation) -> Result<usize> {
    let quotient = a.compose(&b.inverse())?;
    Ok(a.degree() - quotient.cycle_count())
}

/// Largest displacement `|i^a - i^b|` over all points.
pub fn linf(a: &Permutation, b: &Permutation) -> Result<usize> {
    check(a, b)?;
    Ok(a.raw()
        .iter()
        .zip(b.raw())
        .map(|(&x, &y)| x.abs_diff(y) as usize)
        .max()
        .unwrap_or(0))
}
