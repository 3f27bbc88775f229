//! Primes, valuations, modular inverses and the Chinese remainder theorem.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The constraint `x ≡ residue (mod modulus)`, stored normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub residue: BigInt,
    pub modulus: BigInt,
}

impl Congruence {
    /// Reduces `residue` into `[0, modulus)`. A modulus of 1 is accepted and
    /// imposes no constraint.
    pub fn new(residue: impl Into<BigInt>, modulus: impl Into<BigInt>) -> Result<Self> {
        let modulus = modulus.into();
        if modulus < BigInt::one() {
            return Err(Error::BadParameters(format!(
                "modulus {modulus} must be positive"
            )));
        }
        let residue = residue.into().mod_floor(&modulus);
        Ok(Self { residue, modulus })
    }

    pub fn holds(&self, x: &BigInt) -> bool {
        x.mod_floor(&self.modulus) == self.residue
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `>= min` in ascending order.
pub fn primes_from(min: u64) -> impl Iterator<Item = u64> {
    (min.max(2)..).filter(|&n| is_prime(n))
}

/// The first `count` primes that are at least `min`.
pub fn odd_primes(count: usize, min: u64) -> Vec<u64> {
    primes_from(min.max(3)).take(count).collect()
}

/// Solves a system of congruences, returning the least non-negative solution
/// and the lcm of the moduli. Moduli need not be coprime.
pub fn crt(congruences: &[Congruence]) -> Result<(BigInt, BigInt)> {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for c in congruences {
        (x, m) = crt_pair(&x, &m, &c.residue, &c.modulus)?;
    }
    Ok((x, m))
}

/// Merges `x ≡ r1 (mod m1)` with `x ≡ r2 (mod m2)`.
pub fn crt_pair(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Result<(BigInt, BigInt)> {
    let eg = m1.extended_gcd(m2);
    let g = eg.gcd;
    let diff = r2 - r1;
    if !(&diff % &g).is_zero() {
        return Err(Error::Inconsistent);
    }
    let lcm = m1 / &g * m2;
    // x = r1 + m1 * ((r2 - r1) / g * inv(m1/g) mod m2/g)
    let m2g = m2 / &g;
    let k = if m2g.is_one() {
        BigInt::zero()
    } else {
        ((&diff / &g) * &eg.x).mod_floor(&m2g)
    };
    let x = (r1 + m1 * k).mod_floor(&lcm);
    Ok((x, lcm))
}

/// The exponent of the prime `p` in `n`. Returns 0 for `n = 0`.
pub fn nu(p: u64, n: &BigInt) -> u32 {
    if n.is_zero() || p < 2 {
        return 0;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut d = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return d;
        }
        n = q;
        d += 1;
    }
}

pub fn nu_u64(p: u64, mut n: u64) -> u32 {
    if n == 0 {
        return 0;
    }
    let mut d = 0;
    while n.is_multiple_of(p) {
        n /= p;
        d += 1;
    }
    d
}

/// The inverse of `a` modulo `m` in `(0, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    let not_invertible = || Error::NotInvertible {
        value: a.to_string(),
        modulus: m.to_string(),
    };
    if *m < BigInt::from(2) {
        return Err(not_invertible());
    }
    let eg = a.mod_floor(m).extended_gcd(m);
    if !eg.gcd.is_one() {
        return Err(not_invertible());
    }
    Ok(eg.x.mod_floor(m))
}

/// `n` consecutive primes `p_1 < ... < p_n` with `p_1^3 > 6 p_n^2`, taking the
/// earliest such window in the sequence of primes.
pub fn cayley_primes(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut window: Vec<u64> = primes_from(2).take(n).collect();
    let mut next = primes_from(window[n - 1] + 1);
    loop {
        let lo = window[0] as u128;
        let hi = window[n - 1] as u128;
        if lo * lo * lo > 6 * hi * hi {
            return window;
        }
        window.remove(0);
        window.push(next.next().expect("primes are unbounded"));
    }
}

/// Prime factorization as `(p, exponent)` pairs in ascending order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All prime powers `p^d <= n` with `d >= 1`, as `(p, d, p^d)` sorted by `p`
/// then `d`.
pub fn prime_powers_up_to(n: u64) -> Vec<(u64, u32, u64)> {
    let mut out = Vec::new();
    for p in primes_from(2).take_while(|&p| p <= n) {
        let mut q = p;
        let mut d = 1;
        while q <= n {
            out.push((p, d, q));
            d += 1;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out
}
