//! Builders for the permutations used by the l∞ gadgets.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::linf;
use crate::numth::{crt, is_prime, mod_inverse, Congruence};
use crate::perm::Permutation;

/// The cycle `(1, k+1, 2k+1, ..., hk+1, hk, (h-1)k, ..., k)` with
/// `h = (p-1)/2`, on `hk + 1` points. Its powers `0` and `1` stay within `k`
/// of the identity padded alongside it; other residues mod `p` do not.
pub fn delta_cycle(p: u64, k: usize) -> Result<Permutation> {
    if p < 5 || !is_prime(p) {
        return Err(Error::BadParameters(format!("{p} is not a prime >= 5")));
    }
    if k < 2 {
        return Err(Error::BadParameters(format!("step {k} must be at least 2")));
    }
    let h = (p as usize - 1) / 2;
    let mut cycle: Vec<usize> = (0..=h).map(|i| i * k + 1).collect();
    cycle.extend((1..=h).rev().map(|i| i * k));
    Permutation::from_cycles(h * k + 1, &[cycle])
}

/// A `t`-cycle `alpha` and an involution `beta` with
/// `l∞(beta, alpha^t1) <= 1` and `l∞(beta, alpha^t2) <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub t: u64,
    pub t1: u64,
    pub t2: u64,
    pub omega: u64,
    pub psi: u64,
    pub alpha: Permutation,
    pub beta: Permutation,
}

pub fn pair_t1_t2(t: u64, t1: u64, t2: u64) -> Result<PairWitness> {
    if t < 3 || t.is_multiple_of(2) {
        return Err(Error::BadParameters(format!(
            "t = {t} must be odd and at least 3"
        )));
    }
    if !(t1 < t2 && t2 < t) {
        return Err(Error::BadParameters(format!(
            "need 0 <= t1 < t2 < t, got {t1}, {t2}, {t}"
        )));
    }
    let omega = t2 - t1;
    if omega.gcd(&t) != 1 {
        return Err(Error::BadParameters(format!(
            "t1 = {t1} and t2 = {t2} agree modulo a prime factor of {t}"
        )));
    }
    let inv = mod_inverse(&BigInt::from(omega), &BigInt::from(t))?;
    let psi = ((inv * BigInt::from(t - t1)) % BigInt::from(t))
        .try_into()
        .expect("psi < t");

    let n = t as usize;
    let half = (n - 1) / 2;
    // values[pos] is the entry at position pos of the cycle
    let mut values = vec![0usize; n];
    for i in 0..n {
        let pos = (i as u64 * omega % t) as usize;
        values[pos] = if i <= half { 2 * i + 1 } else { 2 * (n - i) };
    }
    let alpha = Permutation::from_cycles(n, &[values.clone()])?;

    let mut transpositions = Vec::new();
    for i in 0..n {
        let a1 = values[(i + t1 as usize) % n];
        let a2 = values[(i + t2 as usize) % n];
        let partner = match a1.abs_diff(a2) {
            2 => (a1 + a2) / 2,
            1 if a2 == 1 => 1,
            1 if a1 == n => n,
            _ => {
                return Err(Error::InternalAssertion(format!(
                    "positions {i}: images {a1} and {a2} are not adjacent"
                )))
            }
        };
        if values[i] < partner {
            transpositions.push(vec![values[i], partner]);
        }
    }
    let beta = Permutation::from_cycles(n, &transpositions)
        .map_err(|e| Error::InternalAssertion(format!("transpositions overlap: {e}")))?;

    for e in [t1, t2] {
        if linf(&beta, &alpha.pow_u64(e))? > 1 {
            return Err(Error::InternalAssertion(format!(
                "l∞ bound fails at exponent {e}"
            )));
        }
    }
    Ok(PairWitness {
        t,
        t1,
        t2,
        omega,
        psi,
        alpha,
        beta,
    })
}

/// The pair from [`pair_t1_t2`] extended by a `d`-cycle on extra points,
/// with the target advanced by `d0` on that cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeExtension {
    pub pair: PairWitness,
    pub d: u64,
    pub d0: u64,
    pub gamma: Permutation,
    pub delta: Permutation,
    /// Exponents `a_r ≡ t_r (mod t)`, `a_r ≡ d0 (mod d)`.
    #[serde(with = "crate::decimal")]
    pub a1: BigInt,
    #[serde(with = "crate::decimal")]
    pub a2: BigInt,
}

pub fn extend_coprime(t: u64, t1: u64, t2: u64, d: u64, d0: u64) -> Result<CoprimeExtension> {
    if d < 3 {
        return Err(Error::BadParameters(format!("d = {d} must be at least 3")));
    }
    if d.gcd(&t) != 1 {
        return Err(Error::BadParameters(format!(
            "d = {d} and t = {t} are not coprime"
        )));
    }
    if d0 >= d {
        return Err(Error::BadParameters(format!(
            "d0 = {d0} must be below d = {d}"
        )));
    }
    let pair = pair_t1_t2(t, t1, t2)?;
    let eps = Permutation::long_cycle(d as usize)?;
    let gamma = Permutation::direct_sum([&pair.alpha, &eps])?;
    let delta = Permutation::direct_sum([&pair.beta, &eps.pow_u64(d0)])?;
    let exponent = |tr: u64| -> Result<BigInt> {
        Ok(crt(&[Congruence::new(tr, t)?, Congruence::new(d0, d)?])?.0)
    };
    let (a1, a2) = (exponent(t1)?, exponent(t2)?);
    for a in [&a1, &a2] {
        if linf(&delta, &gamma.pow(a))? > 1 {
            return Err(Error::InternalAssertion(format!(
                "l∞ bound fails at exponent {a}"
            )));
        }
    }
    Ok(CoprimeExtension {
        pair,
        d,
        d0,
        gamma,
        delta,
        a1,
        a2,
    })
}

/// Three commuting permutations on `q = p_d p_e p_f` points. Points are
/// labeled by triples `(r, s, t)` in `[1,p_f] × [1,p_e] × [1,p_d]`; `alpha`
/// increments `t`, `beta` increments `s` and `gamma` increments `r`, each
/// cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleShiftSystem {
    pub p_d: u64,
    pub p_e: u64,
    pub p_f: u64,
    pub q: u64,
    #[serde(skip)]
    labels: Vec<usize>,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub gamma: Permutation,
}

impl TripleShiftSystem {
    pub fn new(p_d: u64, p_e: u64, p_f: u64) -> Result<Self> {
        for p in [p_d, p_e, p_f] {
            if p < 3 || !is_prime(p) {
                return Err(Error::BadParameters(format!("{p} is not an odd prime")));
            }
        }
        if p_d == p_e || p_d == p_f || p_e == p_f {
            return Err(Error::BadParameters(format!(
                "primes {p_d}, {p_e}, {p_f} are not distinct"
            )));
        }
        let (pd, pe, pf) = (p_d as usize, p_e as usize, p_f as usize);
        let q = pd * pe * pf;
        let index = |r: usize, s: usize, t: usize| ((r - 1) * pe + (s - 1)) * pd + (t - 1);

        let mut labels = vec![0usize; q];
        let fixed = [
            ((1, 1, 2), 1),
            ((1, 1, 1), 2),
            ((1, pe, 2), 3),
            ((pf, 1, 2), 4),
            ((pf, pe, 2), 5),
            ((pf, 1, 1), 6),
            ((1, pe, 1), 7),
            ((pf, pe, 1), 8),
        ];
        for ((r, s, t), label) in fixed {
            labels[index(r, s, t)] = label;
        }
        // Label the rest along the orbit of the diagonal shift from (1,1,2).
        let (mut r, mut s, mut t) = (1, 1, 2);
        let mut next = 9;
        for _ in 0..q {
            let slot = &mut labels[index(r, s, t)];
            if *slot == 0 {
                *slot = next;
                next += 1;
            }
            r = r % pf + 1;
            s = s % pe + 1;
            t = t % pd + 1;
        }
        debug_assert_eq!(next, q + 1);

        let shift = |dr: usize, ds: usize, dt: usize| -> Result<Permutation> {
            let mut image = vec![0usize; q];
            for r in 1..=pf {
                for s in 1..=pe {
                    for t in 1..=pd {
                        let to = index(
                            (r - 1 + dr) % pf + 1,
                            (s - 1 + ds) % pe + 1,
                            (t - 1 + dt) % pd + 1,
                        );
                        image[labels[index(r, s, t)] - 1] = labels[to];
                    }
                }
            }
            Permutation::from_image(&image)
        };
        let alpha = shift(0, 0, 1)?;
        let beta = shift(0, 1, 0)?;
        let gamma = shift(1, 0, 0)?;
        Ok(Self {
            p_d,
            p_e,
            p_f,
            q: q as u64,
            labels,
            alpha,
            beta,
            gamma,
        })
    }

    /// The point carrying the triple `(r, s, t)`.
    pub fn label(&self, r: usize, s: usize, t: usize) -> usize {
        let (pd, pe) = (self.p_d as usize, self.p_e as usize);
        self.labels[((r - 1) * pe + (s - 1)) * pd + (t - 1)]
    }

    /// The product `alpha * beta * gamma`, a single `q`-cycle.
    pub fn product(&self) -> Permutation {
        self.alpha
            .compose(&self.beta)
            .and_then(|ab| ab.compose(&self.gamma))
            .expect("all three act on the same points")
    }

    /// `alpha^a beta^b gamma^c` for bits `a, b, c`.
    pub fn evaluate(&self, a: bool, b: bool, c: bool) -> Permutation {
        let id = Permutation::identity(self.q as usize).expect("q >= 27");
        [(a, &self.alpha), (b, &self.beta), (c, &self.gamma)]
            .into_iter()
            .filter(|(on, _)| *on)
            .fold(id, |acc, (_, p)| acc.compose(p).expect("same degree"))
    }
}

pub fn triple_shift_system(p_d: u64, p_e: u64, p_f: u64) -> Result<TripleShiftSystem> {
    TripleShiftSystem::new(p_d, p_e, p_f)
}

/// For the point `w` in `1..=8`, the bits `(a, b, c)` with
/// `w^(alpha^a beta^b gamma^c) = 1`.
pub fn label_bits(w: usize) -> (bool, bool, bool) {
    match w {
        1 => (false, false, false),
        2 => (true, false, false),
        3 => (false, true, false),
        4 => (false, false, true),
        5 => (false, true, true),
        6 => (true, false, true),
        7 => (true, true, false),
        8 => (true, true, true),
        _ => panic!("label {w} is not one of the eight reserved points"),
    }
}
