//! Splits an instance into independent components and tabulates, for each
//! one, its share of the distance as a function of the exponents.
//!
//! For Hamming and l∞ the components are the orbits of the generated group;
//! for Cayley they also follow the target, since cycles of `tau * g^-1` can
//! cross orbits. The total is the sum (Hamming, Cayley) or maximum (l∞) of the
//! component values.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::metrics::Metric;
use crate::reductions::DistanceInstance;

/// How exponents select a table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Index {
    /// `(c[0] z1 + c[1] z2) mod m`. One coefficient is 1.
    Linear { m: u64, c: [u64; 2] },
    /// `(z1 mod a) * b + (z2 mod b)`.
    Grid { a: u64, b: u64 },
}

impl Index {
    pub(crate) fn at(&self, z1: u64, z2: u64) -> usize {
        match *self {
            Index::Linear { m, c } => {
                let v =
                    (c[0] as u128 * (z1 % m) as u128 + c[1] as u128 * (z2 % m) as u128) % m as u128;
                v as usize
            }
            Index::Grid { a, b } => ((z1 % a) * b + z2 % b) as usize,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Component {
    pub index: Index,
    pub table: Vec<u32>,
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    pub metric: Metric,
    pub k: usize,
    /// Combined value of the single-point components.
    pub base: usize,
    pub components: Vec<Component>,
}

impl Engine {
    pub(crate) fn is_max(&self) -> bool {
        self.metric == Metric::LInf
    }

    pub(crate) fn combine(&self, acc: usize, v: u32) -> usize {
        if self.is_max() {
            acc.max(v as usize)
        } else {
            acc + v as usize
        }
    }

    /// Whether `(z1, z2)` is within `k`, stopping as soon as it is not.
    pub(crate) fn accepts(&self, z1: u64, z2: u64) -> bool {
        let mut acc = self.base;
        if acc > self.k {
            return false;
        }
        for c in &self.components {
            acc = self.combine(acc, c.table[c.index.at(z1, z2)]);
            if acc > self.k {
                return false;
            }
        }
        true
    }

    /// Builds the tables. `limit` bounds the entries of any one table.
    pub(crate) fn build(inst: &DistanceInstance, limit: u64) -> Result<Self> {
        let n = inst.degree;
        let k = inst.k_usize();
        let clamp = u32::try_from(k.saturating_add(1)).unwrap_or(u32::MAX);
        let tau = inst.target.raw();
        let gens: Vec<&[u32]> = inst.generators.iter().map(|g| g.raw()).collect();

        let mut uf = UnionFind::new(n);
        for x in 0..n {
            for g in &gens {
                uf.union(x, g[x] as usize);
            }
            if inst.metric == Metric::Cayley {
                uf.union(x, tau[x] as usize);
            }
        }
        let mut groups: Vec<Vec<u32>> = Vec::new();
        let mut group_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = uf.find(x);
            if group_of_root[r] == usize::MAX {
                group_of_root[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[group_of_root[r]].push(x as u32);
        }

        let mut engine = Engine {
            metric: inst.metric,
            k,
            base: 0,
            components: Vec::new(),
        };
        let mut ctx = Ctx {
            metric: inst.metric,
            clamp,
            tau,
            slot: vec![u32::MAX; n],
            seen: Vec::new(),
        };
        for points in &groups {
            if points.len() == 1 {
                let x = points[0] as usize;
                let v = match inst.metric {
                    Metric::Hamming => u32::from(tau[x] as usize != x),
                    Metric::LInf => (tau[x] as usize).abs_diff(x) as u32,
                    Metric::Cayley => 0,
                };
                engine.base = engine.combine(engine.base, v);
                continue;
            }
            for (i, &x) in points.iter().enumerate() {
                ctx.slot[x as usize] = i as u32;
            }
            let comp = ctx.component(points, &gens, limit)?;
            if comp.table.iter().any(|&v| v != 0) {
                engine.components.push(comp);
            }
            for &x in points {
                ctx.slot[x as usize] = u32::MAX;
            }
        }
        Ok(engine)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

struct Ctx<'a> {
    metric: Metric,
    clamp: u32,
    tau: &'a [u32],
    /// Local index of each point of the current component, else `u32::MAX`.
    slot: Vec<u32>,
    seen: Vec<bool>,
}

impl Ctx<'_> {
    fn component(&mut self, points: &[u32], gens: &[&[u32]], limit: u64) -> Result<Component> {
        let orders = gens
            .iter()
            .map(|g| restricted_order(points, g, &self.slot))
            .collect::<Result<Vec<_>>>()?;

        // The orbit is one cycle of some generator and the other generator
        // acts on it as a power of that cycle.
        for p in 0..gens.len() {
            let cycle = walk(points[0], gens[p]);
            if cycle.len() != points.len() {
                continue;
            }
            let mut c = [0u64; 2];
            c[p] = 1;
            if gens.len() == 2 {
                match power_on_cycle(&cycle, gens[1 - p], &self.slot) {
                    Some(e) => c[1 - p] = e,
                    None => continue,
                }
            }
            let m = cycle.len() as u64;
            return Ok(Component {
                index: Index::Linear { m, c },
                table: self.cycle_table(points, &cycle),
            });
        }

        let (a, b) = (orders[0], orders.get(1).copied().unwrap_or(1));
        let entries = a.checked_mul(b).filter(|&e| e <= limit).ok_or_else(|| {
            Error::TooLarge(format!(
                "component table of {a} x {b} entries exceeds {limit}"
            ))
        })?;
        let mut table = Vec::with_capacity(entries as usize);
        let mut outer: Vec<u32> = points.to_vec();
        for _ in 0..a {
            let mut img = outer.clone();
            for _ in 0..b {
                table.push(self.value(points, &img));
                if let Some(g2) = gens.get(1) {
                    img.iter_mut().for_each(|y| *y = g2[*y as usize]);
                }
            }
            outer.iter_mut().for_each(|y| *y = gens[0][*y as usize]);
        }
        let index = if gens.len() == 1 {
            Index::Linear { m: a, c: [1, 0] }
        } else {
            Index::Grid { a, b }
        };
        Ok(Component { index, table })
    }

    /// Values of `cycle^r` for `r` in `[0, m)`, where the component
    /// `points` is the single cycle `cycle`.
    fn cycle_table(&mut self, points: &[u32], cycle: &[u32]) -> Vec<u32> {
        let m = cycle.len();
        let tau = self.tau;
        // position on the cycle, by local index
        let mut at = vec![0usize; m];
        for (i, &x) in cycle.iter().enumerate() {
            at[self.slot[x as usize] as usize] = i;
        }
        let local = |x: u32| self.slot[x as usize];
        match self.metric {
            Metric::Hamming => {
                let mut matches = vec![0u32; m];
                for (i, &x) in cycle.iter().enumerate() {
                    let y = local(tau[x as usize]);
                    if y != u32::MAX {
                        matches[(at[y as usize] + m - i) % m] += 1;
                    }
                }
                matches.iter().map(|&c| m as u32 - c).collect()
            }
            Metric::LInf => (0..m)
                .map(|r| {
                    let mut worst = 0u32;
                    for (i, &x) in cycle.iter().enumerate() {
                        worst = worst.max(tau[x as usize].abs_diff(cycle[(i + r) % m]));
                        if worst >= self.clamp {
                            return self.clamp;
                        }
                    }
                    worst
                })
                .collect(),
            Metric::Cayley => {
                // tau may act on the cycle as a rotation by s, in which case
                // tau * cycle^-r is a rotation by s - r.
                let s = at[local(tau[cycle[0] as usize]) as usize];
                let rotation = cycle
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| tau[x as usize] == cycle[(i + s) % m]);
                if rotation {
                    (0..m)
                        .map(|r| (m - ((s + m - r) % m).gcd(&m)) as u32)
                        .collect()
                } else {
                    (0..m)
                        .map(|r| {
                            let img: Vec<u32> = (0..m).map(|i| cycle[(at[i] + r) % m]).collect();
                            self.value(points, &img)
                        })
                        .collect()
                }
            }
        }
    }

    /// The component's share of the distance between the target and the
    /// element sending `points[i]` to `img[i]`.
    fn value(&mut self, points: &[u32], img: &[u32]) -> u32 {
        let tau = self.tau;
        match self.metric {
            Metric::Hamming => points
                .iter()
                .zip(img)
                .filter(|(&x, &y)| tau[x as usize] != y)
                .count() as u32,
            Metric::LInf => {
                let d = points
                    .iter()
                    .zip(img)
                    .map(|(&x, &y)| tau[x as usize].abs_diff(y))
                    .max()
                    .unwrap_or(0);
                d.min(self.clamp)
            }
            Metric::Cayley => {
                // cycles of x -> img^-1(tau(x))
                let len = points.len();
                let mut inv = vec![0u32; len];
                for (i, &y) in img.iter().enumerate() {
                    inv[self.slot[y as usize] as usize] = i as u32;
                }
                self.seen.clear();
                self.seen.resize(len, false);
                let mut cycles = 0;
                for start in 0..len {
                    if self.seen[start] {
                        continue;
                    }
                    cycles += 1;
                    let mut i = start;
                    while !self.seen[i] {
                        self.seen[i] = true;
                        i = inv[self.slot[tau[points[i] as usize] as usize] as usize] as usize;
                    }
                }
                (len - cycles) as u32
            }
        }
    }
}

fn walk(start: u32, g: &[u32]) -> Vec<u32> {
    let mut cycle = vec![start];
    let mut x = g[start as usize];
    while x != start {
        cycle.push(x);
        x = g[x as usize];
    }
    cycle
}

/// The `e` with `h = g^e` on the cycle `cycle` of `g`, if any.
fn power_on_cycle(cycle: &[u32], h: &[u32], slot: &[u32]) -> Option<u64> {
    let m = cycle.len();
    let target = h[cycle[0] as usize];
    if slot[target as usize] == u32::MAX {
        return None;
    }
    let e = cycle.iter().position(|&y| y == target)?;
    cycle
        .iter()
        .enumerate()
        .all(|(i, &x)| h[x as usize] == cycle[(i + e) % m])
        .then_some(e as u64)
}

/// Order of `g` restricted to the component.
fn restricted_order(points: &[u32], g: &[u32], slot: &[u32]) -> Result<u64> {
    let mut seen = vec![false; points.len()];
    let mut order = 1u64;
    for (i, &x) in points.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let mut len = 0u64;
        let mut y = x;
        loop {
            seen[slot[y as usize] as usize] = true;
            len += 1;
            y = g[y as usize];
            if y == x {
                break;
            }
        }
        order = order
            .checked_mul(len / order.gcd(&len))
            .ok_or_else(|| Error::TooLarge("restricted generator order exceeds 64 bits".into()))?;
    }
    Ok(order)
}
