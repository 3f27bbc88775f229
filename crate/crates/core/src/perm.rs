//! Permutations of `[1, n]`.
//!
//! Points are 1-indexed at every public boundary. Products are read left to
//! right: `i^(ab) = (i^a)^b`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest degree accepted from JSON, where `{"degree": n, "cycles": []}`
/// would otherwise allocate `n` points from a few bytes of input.
pub const MAX_JSON_DEGREE: usize = 1 << 24;

/// Points are stored as `u32`.
fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 {
        return Err(Error::ZeroDegree);
    }
    if degree > u32::MAX as usize {
        return Err(Error::TooLarge(format!(
            "degree {degree} exceeds {}",
            u32::MAX
        )));
    }
    Ok(())
}

/// A bijection on `[1, n]`, stored as its 0-indexed image table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PermutationRepr", into = "PermutationRepr")]
pub struct Permutation {
    image: Vec<u32>,
}

/// Disjoint cycle form of a permutation.
///
/// Each cycle starts at its smallest point, cycles are ordered by their first
/// point, and fixed points are listed separately in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
}

impl CycleDecomposition {
    /// Number of cycles with fixed points counted as 1-cycles.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len() + self.fixed_points.len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles)
            .expect("a cycle decomposition always describes a valid permutation")
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self::from_raw((0..degree as u32).collect()))
    }

    /// Builds a permutation from its 1-indexed image list `[1^p, ..., n^p]`.
    pub fn from_image(image: &[usize]) -> Result<Self> {
        let n = image.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        let mut raw = Vec::with_capacity(n);
        for &v in image {
            if v == 0 || v > n {
                return Err(Error::OutOfRange {
                    point: v,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::DuplicatePoint(v));
            }
            raw.push((v - 1) as u32);
        }
        Ok(Self::from_raw(raw))
    }

    /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        check_degree(degree)?;
        let mut raw: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::OutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::DuplicatePoint(p));
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                raw[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Self::from_raw(raw))
    }

    /// The cycle `(1, 2, ..., n)`.
    pub fn long_cycle(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Self::from_raw(
            (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        ))
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::DuplicatePoint(a));
        }
        Self::from_cycles(degree, &[[a, b]])
    }

    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Result<Self> {
        check_degree(degree)?;
        let mut raw: Vec<u32> = (0..degree as u32).collect();
        raw.shuffle(rng);
        Ok(Self::from_raw(raw))
    }

    pub(crate) fn from_raw(image: Vec<u32>) -> Self {
        debug_assert!(!image.is_empty());
        Self { image }
    }

    /// The 0-indexed image table.
    pub(crate) fn raw(&self) -> &[u32] {
        &self.image
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// `i^p` for a 1-indexed point `i`.
    ///
    /// Panics if `i` is outside `[1, n]`.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    /// The 1-indexed image list.
    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v as usize + 1).collect()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }

    /// Left-to-right product: `i^(self * other) = (i^self)^other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(Self::from_raw(
            self.image
                .iter()
                .map(|&v| other.image[v as usize])
                .collect(),
        ))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Self::from_raw(inv)
    }

    /// Raises to an arbitrary integer power by advancing every cycle by the
    /// exponent reduced modulo its length.
    pub fn pow(&self, e: &BigInt) -> Self {
        let mut out = vec![0u32; self.degree()];
        self.for_each_cycle(|cycle| {
            let len = cycle.len();
            let shift = e.mod_floor(&BigInt::from(len)).to_usize().unwrap_or(0);
            for (k, &p) in cycle.iter().enumerate() {
                out[p as usize] = cycle[(k + shift) % len];
            }
        });
        Self::from_raw(out)
    }

    pub fn pow_u64(&self, e: u64) -> Self {
        self.pow(&BigInt::from(e))
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> BigUint {
        let mut lengths = Vec::new();
        self.for_each_cycle(|c| lengths.push(c.len()));
        lengths.sort_unstable();
        lengths.dedup();
        lengths
            .into_iter()
            .fold(BigUint::one(), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    pub fn decompose(&self) -> CycleDecomposition {
        let mut cycles = Vec::new();
        let mut fixed_points = Vec::new();
        self.for_each_cycle(|c| {
            if c.len() == 1 {
                fixed_points.push(c[0] as usize + 1);
            } else {
                cycles.push(c.iter().map(|&p| p as usize + 1).collect());
            }
        });
        CycleDecomposition {
            degree: self.degree(),
            cycles,
            fixed_points,
        }
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut count = 0;
        self.for_each_cycle(|_| count += 1);
        count
    }

    /// Visits every cycle (1-cycles included) as a 0-indexed point sequence,
    /// starting from the smallest point of each cycle, in order of that point.
    pub(crate) fn for_each_cycle<F: FnMut(&[u32])>(&self, mut f: F) {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut buf = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            buf.clear();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                buf.push(p as u32);
                p = self.image[p] as usize;
            }
            f(&buf);
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| self.image[v as usize] == i as u32)
    }

    /// Number of moved points.
    pub fn support_size(&self) -> usize {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i as u32 != v)
            .count()
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// Places the parts on consecutive blocks of points: part `t` acts on the
    /// `t`-th block, shifted by the total degree of the parts before it.
    pub fn direct_sum<'a, I>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut raw = Vec::new();
        for part in parts {
            check_degree(raw.len() + part.degree())?;
            let offset = raw.len() as u32;
            raw.extend(part.image.iter().map(|&v| v + offset));
        }
        check_degree(raw.len())?;
        Ok(Self::from_raw(raw))
    }

    /// Extends with fixed points up to `degree`.
    pub fn pad_to(&self, degree: usize) -> Result<Self> {
        if degree < self.degree() {
            return Err(Error::BadParameters(format!(
                "cannot pad degree {} down to {degree}",
                self.degree()
            )));
        }
        check_degree(degree)?;
        let mut raw = self.image.clone();
        raw.extend(self.degree() as u32..degree as u32);
        Ok(Self::from_raw(raw))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dec = self.decompose();
        if dec.cycles.is_empty() {
            return write!(f, "()");
        }
        for c in &dec.cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// JSON shape: `{"degree": n, "cycles": [[..], ..]}` or `{"degree": n, "image": [..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PermutationRepr {
    degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycles: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    image: Option<Vec<usize>>,
}

impl TryFrom<PermutationRepr> for Permutation {
    type Error = String;

    fn try_from(repr: PermutationRepr) -> std::result::Result<Self, String> {
        if repr.degree > MAX_JSON_DEGREE {
            return Err(format!(
                "degree {} exceeds the JSON limit {MAX_JSON_DEGREE}",
                repr.degree
            ));
        }
        match (repr.cycles, repr.image) {
            (Some(cycles), None) => {
                Permutation::from_cycles(repr.degree, &cycles).map_err(|e| e.to_string())
            }
            (None, Some(image)) => {
                if image.len() != repr.degree {
                    return Err(format!(
                        "image has {} entries but degree is {}",
                        image.len(),
                        repr.degree
                    ));
                }
                Permutation::from_image(&image).map_err(|e| e.to_string())
            }
            _ => Err("expected exactly one of \"cycles\" or \"image\"".to_string()),
        }
    }
}

impl From<Permutation> for PermutationRepr {
    fn from(p: Permutation) -> Self {
        let dec = p.decompose();
        PermutationRepr {
            degree: dec.degree,
            cycles: Some(dec.cycles),
            image: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::gcd;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn from_cycles_examples() {
        assert_eq!(cyc(5, &[&[1, 2, 3, 4, 5]]).image(), vec![2, 3, 4, 5, 1]);
        assert_eq!(
            Permutation::from_cycles::<Vec<usize>>(4, &[])
                .unwrap()
                .image(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(cyc(5, &[&[1, 4, 3, 2, 5]]).image(), vec![4, 5, 2, 3, 1]);
    }

    #[test]
    fn from_cycles_errors() {
        assert_eq!(
            Permutation::from_cycles(3, &[[1, 4]]),
            Err(Error::OutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::from_cycles(3, &[[0, 1]]),
            Err(Error::OutOfRange {
                point: 0,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::from_cycles(4, &[vec![1, 2], vec![2, 3]]),
            Err(Error::DuplicatePoint(2))
        );
        assert_eq!(
            Permutation::from_cycles(4, &[[1, 2, 1]]),
            Err(Error::DuplicatePoint(1))
        );
        assert_eq!(
            Permutation::from_image(&[1, 1]),
            Err(Error::DuplicatePoint(1))
        );
        assert_eq!(Permutation::identity(0), Err(Error::ZeroDegree));
    }

    #[test]
    fn compose_left_to_right() {
        let a = cyc(3, &[&[1, 2]]);
        let b = cyc(3, &[&[2, 3]]);
        assert_eq!(a.compose(&b).unwrap().apply(1), 3);
        let id = Permutation::identity(3).unwrap();
        assert_eq!(id.compose(&b).unwrap(), b);
        let r = cyc(3, &[&[1, 2, 3]]);
        let r2 = cyc(3, &[&[1, 3, 2]]);
        assert!(r.compose(&r2).unwrap().is_identity());
        assert_eq!(
            a.compose(&Permutation::identity(4).unwrap()),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            Permutation::long_cycle(5).unwrap().inverse(),
            cyc(5, &[&[1, 5, 4, 3, 2]])
        );
        assert!(Permutation::identity(4).unwrap().inverse().is_identity());
        let inv = cyc(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(inv.inverse(), inv);
    }

    #[test]
    fn power_examples() {
        let c6 = Permutation::long_cycle(6).unwrap();
        assert_eq!(c6.pow_u64(2), cyc(6, &[&[1, 3, 5], &[2, 4, 6]]));
        assert!(c6.pow_u64(0).is_identity());
        let c4 = Permutation::long_cycle(4).unwrap();
        let thrice = c4.compose(&c4).unwrap().compose(&c4).unwrap();
        assert_eq!(c4.pow_u64(3).image(), vec![4, 1, 2, 3]);
        assert_eq!(c4.pow_u64(3), thrice);
        assert_eq!(c4.pow(&BigInt::from(-1)), c4.inverse());
    }

    #[test]
    fn order_examples() {
        assert_eq!(cyc(5, &[&[1, 2], &[3, 4, 5]]).order(), BigUint::from(6u32));
        assert_eq!(
            Permutation::identity(3).unwrap().order(),
            BigUint::from(1u32)
        );
        let c13: Vec<usize> = (1..=13).collect();
        let c17: Vec<usize> = (14..=30).collect();
        let c19: Vec<usize> = (31..=49).collect();
        let p = Permutation::from_cycles(49, &[c13, c17, c19]).unwrap();
        assert_eq!(p.order(), BigUint::from(4199u32));
    }

    #[test]
    fn decompose_examples() {
        let d = Permutation::from_image(&[2, 1, 4, 5, 3])
            .unwrap()
            .decompose();
        assert_eq!(d.cycles, vec![vec![1, 2], vec![3, 4, 5]]);
        assert!(d.fixed_points.is_empty());
        let d = Permutation::identity(3).unwrap().decompose();
        assert!(d.cycles.is_empty());
        assert_eq!(d.fixed_points, vec![1, 2, 3]);
        let d = Permutation::from_image(&[4, 5, 2, 3, 1])
            .unwrap()
            .decompose();
        assert_eq!(d.cycles, vec![vec![1, 4, 3, 2, 5]]);
    }

    #[test]
    fn direct_sum_examples() {
        let t = cyc(2, &[&[1, 2]]);
        let c3 = Permutation::long_cycle(3).unwrap();
        assert_eq!(
            Permutation::direct_sum([&t, &c3]).unwrap(),
            cyc(5, &[&[1, 2], &[3, 4, 5]])
        );
        let ids = [
            Permutation::identity(2).unwrap(),
            Permutation::identity(3).unwrap(),
        ];
        assert!(Permutation::direct_sum(&ids).unwrap().is_identity());
        assert_eq!(
            Permutation::direct_sum([&c3, &c3]).unwrap(),
            cyc(6, &[&[1, 2, 3], &[4, 5, 6]])
        );
        assert_eq!(Permutation::direct_sum(&[]), Err(Error::ZeroDegree));
    }

    #[test]
    fn json_accepts_both_forms_and_emits_cycles() {
        let p: Permutation = serde_json::from_str(r#"{"degree":5,"image":[2,1,4,5,3]}"#).unwrap();
        let q: Permutation =
            serde_json::from_str(r#"{"degree":5,"cycles":[[1,2],[3,4,5]]}"#).unwrap();
        assert_eq!(p, q);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"degree":5,"cycles":[[1,2],[3,4,5]]}"#
        );
        assert!(serde_json::from_str::<Permutation>(r#"{"degree":3,"image":[1,2]}"#).is_err());
        assert!(serde_json::from_str::<Permutation>(r#"{"degree":3}"#).is_err());
        assert!(serde_json::from_str::<Permutation>(
            r#"{"degree":3,"cycles":[[1,2]],"image":[2,1,3]}"#
        )
        .is_err());
        assert!(serde_json::from_str::<Permutation>(r#"{"degree":0,"cycles":[]}"#).is_err());
        assert!(
            serde_json::from_str::<Permutation>(r#"{"degree":4294967296,"cycles":[]}"#).is_err()
        );
        let big = format!(r#"{{"degree":{},"cycles":[]}}"#, MAX_JSON_DEGREE + 1);
        assert!(serde_json::from_str::<Permutation>(&big).is_err());
    }

    #[test]
    fn cycle_power_splits_by_gcd() {
        for l in 2..=60usize {
            let c = Permutation::long_cycle(l).unwrap();
            for x in 0..l {
                let g = gcd(x, l);
                let d = c.pow_u64(x as u64).decompose();
                assert_eq!(d.cycle_count(), g, "l={l} x={x}");
                let len = l / g;
                if len == 1 {
                    assert_eq!(d.fixed_points.len(), l);
                } else {
                    assert!(d.cycles.iter().all(|cy| cy.len() == len));
                }
            }
        }
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (1..=max, any::<u64>()).prop_map(|(n, seed)| {
            Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
        })
    }

    fn arb_triple(max: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1..=max, any::<[u64; 3]>()).prop_map(|(n, s)| {
            let mut p = s
                .iter()
                .map(|&x| Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(x)).unwrap());
            (p.next().unwrap(), p.next().unwrap(), p.next().unwrap())
        })
    }

    proptest! {
        #[test]
        fn image_is_bijection(p in arb_perm(50)) {
            let mut img = p.image();
            img.sort_unstable();
            prop_assert_eq!(img, (1..=p.degree()).collect::<Vec<_>>());
        }

        #[test]
        fn group_laws((a, b, c) in arb_triple(30), x in any::<i128>(), y in any::<i128>()) {
            let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
            let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            let lhs = a.pow(&(&x + &y));
            let rhs = a.pow(&x).compose(&a.pow(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn power_reduces_mod_order(p in arb_perm(40), hi in any::<u64>(), lo in any::<u64>()) {
            let e = (BigInt::from(hi) << 64) + BigInt::from(lo);
            let ord = BigInt::from(p.order());
            prop_assert_eq!(p.pow(&e), p.pow(&e.mod_floor(&ord)));
            prop_assert!(p.pow(&ord).is_identity());
        }

        #[test]
        fn order_is_minimal(p in arb_perm(12)) {
            let ord = p.order().to_u64().unwrap();
            for i in 1..ord {
                prop_assert!(!p.pow_u64(i).is_identity());
            }
        }

        #[test]
        fn decompose_round_trips(p in arb_perm(40)) {
            let d = p.decompose();
            prop_assert_eq!(d.to_permutation(), p.clone());
            for c in &d.cycles {
                prop_assert!(c.len() >= 2);
                prop_assert_eq!(c[0], *c.iter().min().unwrap());
            }
            prop_assert!(d.cycles.windows(2).all(|w| w[0][0] < w[1][0]));
        }

        #[test]
        fn direct_sum_distributes_over_power(
            parts in prop::collection::vec(arb_perm(8), 1..5),
            e in any::<i64>(),
        ) {
            let e = BigInt::from(e);
            let lhs = Permutation::direct_sum(&parts).unwrap().pow(&e);
            let powered: Vec<_> = parts.iter().map(|p| p.pow(&e)).collect();
            prop_assert_eq!(lhs, Permutation::direct_sum(&powered).unwrap());
        }

        #[test]
        fn json_round_trip(p in arb_perm(30)) {
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Permutation>(&s).unwrap(), p);
        }
    }
}
