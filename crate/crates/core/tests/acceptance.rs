//! Acceptance checks, one line per criterion. Run with
//! `cargo test -p sgdist --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sgdist::constructions::{delta_cycle, pair_t1_t2, triple_shift_system};
use sgdist::corpus::{curated_3sat, curated_x3hs};
use sgdist::formats::{parse_dimacs, parse_x3hs, SourceProblem};
use sgdist::linfty_one::decide;
use sgdist::metrics::{cayley, hamming, linf};
use sgdist::oracle::{cayley_bfs, min_hamming_weight_cyclic, verify_reduction, Caps};
use sgdist::perm::Permutation;
use sgdist::reductions::{
    cayley_from_x3hs, hamming_from_3sat, linf1_from_x3hs, linf_from_3sat, CnfFormula, X3hsInstance,
};
use sgdist::twosat::{Literal, TwoSatFormula};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs `work(i)` for `i` in `0..count` on all cores; the first error wins.
fn parallel<F>(count: usize, work: F) -> Result<(), String>
where
    F: Fn(usize) -> Result<(), String> + Sync,
{
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let next = AtomicUsize::new(0);
    let errors = std::sync::Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count || !errors.lock().unwrap().is_empty() {
                    break;
                }
                if let Err(e) = work(i) {
                    errors.lock().unwrap().push(e);
                }
            });
        }
    });
    match errors.into_inner().unwrap().into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

// Test-local permutation helpers on 0-indexed image vectors.

fn image0(p: &Permutation) -> Vec<usize> {
    p.image().into_iter().map(|v| v - 1).collect()
}

fn cycles0(img: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; img.len()];
    let mut out = Vec::new();
    for start in 0..img.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = img[x];
        }
        out.push(c);
    }
    out
}

/// lcm of the cycle lengths, or `None` once it exceeds `limit`.
fn order_capped(img: &[usize], limit: u64) -> Option<u64> {
    let mut ord = 1u64;
    for c in cycles0(img) {
        ord = ord.lcm(&(c.len() as u64));
        if ord > limit {
            return None;
        }
    }
    Some(ord)
}

fn power0(img: &[usize], z: u64) -> Vec<usize> {
    let mut out = vec![0; img.len()];
    for c in cycles0(img) {
        let s = (z % c.len() as u64) as usize;
        for (k, &x) in c.iter().enumerate() {
            out[x] = c[(k + s) % c.len()];
        }
    }
    out
}

fn linf0(a: &[usize], b: &[usize]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.abs_diff(*y))
        .max()
        .unwrap_or(0)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for l in 2..=60usize {
        let c = Permutation::long_cycle(l).unwrap();
        for x in 0..l {
            let g = x.gcd(&l);
            let d = c.pow_u64(x as u64).decompose();
            let mut lengths = d.cycle_lengths();
            lengths.extend(std::iter::repeat_n(1, d.fixed_points.len()));
            ensure(
                lengths.len() == g && lengths.iter().all(|&len| len == l / g),
                || format!("[[{l}]]^{x}: cycle lengths {lengths:?}"),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (l, x) pairs"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for l in 2..=40usize {
        let c = Permutation::long_cycle(l).unwrap();
        let powers: Vec<Permutation> = (0..l).map(|x| c.pow_u64(x as u64)).collect();
        for x in 0..l {
            for e in 0..l {
                let h = hamming(&powers[x], &powers[e]).unwrap();
                let want = if x == e { 0 } else { l };
                ensure(h == want, || format!("hamming l={l} x={x} e={e}: {h}"))?;
                if l >= 3 {
                    let close = linf(&powers[e], &powers[x]).unwrap() <= 1;
                    ensure(close == (x == e), || format!("linf l={l} a={e} x={x}"))?;
                }
                checked += 1;
            }
        }
    }
    for p in [5u64, 7, 11, 13] {
        for k in 2..=5usize {
            let delta = delta_cycle(p, k).unwrap();
            let id = Permutation::identity(delta.degree()).unwrap();
            let target = Permutation::direct_sum([&delta, &id]).unwrap();
            let gen = Permutation::direct_sum([&delta, &delta]).unwrap();
            for x in 0..p {
                let close = linf(&target, &gen.pow_u64(x)).unwrap() <= k;
                ensure(close == (x <= 1), || format!("delta p={p} k={k} x={x}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn all_perms(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::from_image(prefix).unwrap());
            return;
        }
        for v in 1..=n {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out
}

fn criterion_3() -> Outcome {
    let s4 = all_perms(4);
    for a in &s4 {
        for b in &s4 {
            let (f, o) = (cayley(a, b).unwrap(), cayley_bfs(a, b).unwrap());
            ensure(f == o, || format!("S4 {a} vs {b}: formula {f}, bfs {o}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<_> = (0..1000)
        .map(|_| {
            (
                Permutation::random(6, &mut rng).unwrap(),
                Permutation::random(6, &mut rng).unwrap(),
            )
        })
        .collect();
    parallel(pairs.len(), |i| {
        let (a, b) = &pairs[i];
        let (f, o) = (cayley(a, b).unwrap(), cayley_bfs(a, b).unwrap());
        ensure(f == o, || format!("S6 {a} vs {b}: formula {f}, bfs {o}"))
    })?;
    Ok(format!("{} S4 pairs, 1000 S6 pairs", s4.len() * s4.len()))
}

/// Bit-sliced truth table: word `w`, bit `b` is the assignment
/// `64w + b`, whose bit `v` is variable `v`.
fn two_sat_truth_table(vars: usize, clauses: &[(Literal, Literal)]) -> bool {
    const LOW: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let assignments = 1u64 << vars;
    let words = assignments.div_ceil(64) as usize;
    let valid = if assignments >= 64 {
        u64::MAX
    } else {
        (1u64 << assignments) - 1
    };
    let column = |lit: Literal, w: usize| -> u64 {
        let v = lit.var;
        let word = if v < 6 {
            LOW[v]
        } else if (w >> (v - 6)) & 1 == 1 {
            u64::MAX
        } else {
            0
        };
        if lit.negated {
            !word
        } else {
            word
        }
    };
    (0..words).any(|w| {
        clauses
            .iter()
            .fold(valid, |acc, &(a, b)| acc & (column(a, w) | column(b, w)))
            != 0
    })
}

fn criterion_4() -> Outcome {
    let sat = AtomicUsize::new(0);
    parallel(10_000, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(4_000_000 + i as u64);
        let vars = rng.gen_range(1..=20usize);
        let m = rng.gen_range(0..=2 * vars + 2);
        let lit = |rng: &mut ChaCha8Rng| Literal {
            var: rng.gen_range(0..vars),
            negated: rng.gen(),
        };
        let mut f = TwoSatFormula::with_vars(vars);
        let mut clauses = Vec::new();
        for _ in 0..m {
            let a = lit(&mut rng);
            let b = if rng.gen_ratio(1, 8) {
                a
            } else {
                lit(&mut rng)
            };
            f.add_clause(a, b).unwrap();
            clauses.push((a, b));
        }
        let expected = two_sat_truth_table(vars, &clauses);
        match f.solve() {
            Some(model) => {
                sat.fetch_add(1, Ordering::Relaxed);
                ensure(expected, || {
                    format!("formula {i}: solver says sat, table unsat")
                })?;
                ensure(model.len() == vars, || format!("formula {i}: model length"))?;
                let holds = |l: Literal| model[l.var] != l.negated;
                ensure(clauses.iter().all(|&(a, b)| holds(a) || holds(b)), || {
                    format!("formula {i}: model violates a clause")
                })
            }
            None => ensure(!expected, || {
                format!("formula {i}: solver says unsat, table sat")
            }),
        }
    })?;
    Ok(format!(
        "10000 formulas, {} satisfiable",
        sat.load(Ordering::Relaxed)
    ))
}

/// Smallest `z` in `[0, ord)` with `l∞(beta, alpha^z) <= 1`, scanning with a
/// per-point early exit.
fn linf1_scan(alpha: &[usize], beta: &[usize], ord: u64) -> Option<u64> {
    let cycles = cycles0(alpha);
    let mut slot = vec![(0usize, 0usize); alpha.len()];
    for (c, cyc) in cycles.iter().enumerate() {
        for (pos, &x) in cyc.iter().enumerate() {
            slot[x] = (c, pos);
        }
    }
    (0..ord).find(|&z| {
        (0..alpha.len()).all(|i| {
            let (c, pos) = slot[i];
            let cyc = &cycles[c];
            let img = cyc[(pos + (z % cyc.len() as u64) as usize) % cyc.len()];
            img.abs_diff(beta[i]) <= 1
        })
    })
}

fn criterion_5() -> Outcome {
    const ORDER_LIMIT: u64 = 100_000;
    let yes = AtomicUsize::new(0);
    parallel(10_000, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(5_000_000 + i as u64);
        let n = rng.gen_range(1..=40usize);
        let (alpha, ord) = loop {
            let a = Permutation::random(n, &mut rng).unwrap();
            if let Some(ord) = order_capped(&image0(&a), ORDER_LIMIT) {
                break (a, ord);
            }
        };
        let a0 = image0(&alpha);
        let mut b0 = match rng.gen_range(0..4) {
            0 => image0(&Permutation::random(n, &mut rng).unwrap()),
            _ => power0(&a0, rng.gen_range(0..ord)),
        };
        if n >= 2 && rng.gen_bool(0.6) {
            // Swap the images of two points, sometimes adjacent in value.
            let x = rng.gen_range(0..n);
            let y = if rng.gen_bool(0.5) {
                let v = b0[x];
                let w = if v + 1 < n { v + 1 } else { v - 1 };
                b0.iter().position(|&u| u == w).unwrap()
            } else {
                rng.gen_range(0..n)
            };
            b0.swap(x, y);
        }
        let beta = Permutation::from_image(&b0.iter().map(|v| v + 1).collect::<Vec<_>>()).unwrap();
        let expected = linf1_scan(&a0, &b0, ord);
        let got = decide(&alpha, &beta).map_err(|e| format!("case {i}: {e}"))?;
        ensure(got.answer == expected.is_some(), || {
            format!(
                "case {i}: alpha {alpha}, beta {beta}: decide {}, scan {expected:?}",
                got.answer
            )
        })?;
        if got.answer {
            yes.fetch_add(1, Ordering::Relaxed);
            let w = got
                .witness
                .as_ref()
                .ok_or(format!("case {i}: no witness"))?;
            let z = w.mod_floor(&BigInt::from(ord)).to_u64().unwrap();
            ensure(linf0(&power0(&a0, z), &b0) <= 1, || {
                format!("case {i}: witness {w} does not satisfy the bound")
            })?;
        }
        Ok(())
    })?;
    let mut pairs = 0;
    for t in (3..=45u64).step_by(2) {
        for t1 in 0..t {
            for t2 in t1 + 1..t {
                if (t2 - t1).gcd(&t) != 1 {
                    continue;
                }
                let w = pair_t1_t2(t, t1, t2).unwrap();
                let got = decide(&w.alpha, &w.beta).unwrap();
                let z = got
                    .witness
                    .as_ref()
                    .map(|z| z.mod_floor(&BigInt::from(t)).to_u64().unwrap());
                ensure(got.answer && (z == Some(t1) || z == Some(t2)), || {
                    format!("pair t={t} t1={t1} t2={t2}: witness {z:?}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "10000 random pairs ({} yes), {pairs} constructed pairs",
        yes.load(Ordering::Relaxed)
    ))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    for t in (3..=45u64).step_by(2) {
        for t1 in 0..t {
            for t2 in t1 + 1..t {
                if (t2 - t1).gcd(&t) != 1 {
                    continue;
                }
                let w = pair_t1_t2(t, t1, t2).map_err(|e| format!("t={t} t1={t1} t2={t2}: {e}"))?;
                let (a, b) = (image0(&w.alpha), image0(&w.beta));
                let cycles = cycles0(&a);
                ensure(a.len() == t as usize && cycles.len() == 1, || {
                    format!("t={t} t1={t1} t2={t2}: alpha is not a single t-cycle")
                })?;
                ensure((0..b.len()).all(|x| b[b[x]] == x), || {
                    format!("t={t} t1={t1} t2={t2}: beta is not an involution")
                })?;
                ensure(
                    linf0(&b, &power0(&a, t1)) <= 1 && linf0(&b, &power0(&a, t2)) <= 1,
                    || format!("t={t} t1={t1} t2={t2}: l-infinity bound violated"),
                )?;
                pairs += 1;
            }
        }
    }

    // Point w is sent to 1 by alpha^a beta^b gamma^c for these bits.
    const IDENTITIES: [(usize, [u64; 3]); 8] = [
        (1, [0, 0, 0]),
        (2, [1, 0, 0]),
        (3, [0, 1, 0]),
        (4, [0, 0, 1]),
        (5, [0, 1, 1]),
        (6, [1, 0, 1]),
        (7, [1, 1, 0]),
        (8, [1, 1, 1]),
    ];
    let primes = [3u64, 5, 7, 11];
    let mut triples = 0;
    for &pd in &primes {
        for &pe in &primes {
            for &pf in &primes {
                if pd == pe || pd == pf || pe == pf {
                    continue;
                }
                let tag = format!("({pd},{pe},{pf})");
                let sys = triple_shift_system(pd, pe, pf).map_err(|e| format!("{tag}: {e}"))?;
                let q = (pd * pe * pf) as usize;
                let (a, b, c) = (image0(&sys.alpha), image0(&sys.beta), image0(&sys.gamma));
                let after =
                    |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&v| y[v]).collect() };
                ensure(
                    after(&a, &b) == after(&b, &a)
                        && after(&a, &c) == after(&c, &a)
                        && after(&b, &c) == after(&c, &b),
                    || format!("{tag}: generators do not commute"),
                )?;
                let orders = [&a, &b, &c].map(|p| {
                    cycles0(p)
                        .iter()
                        .fold(1, |o, cyc| lcm_u64(o, cyc.len() as u64))
                });
                ensure(orders == [pd, pe, pf], || {
                    format!("{tag}: orders {orders:?}")
                })?;
                let abc = after(&after(&a, &b), &c);
                ensure(abc.len() == q && cycles0(&abc).len() == 1, || {
                    format!("{tag}: the product is not a single {q}-cycle")
                })?;
                for (w, bits) in IDENTITIES {
                    let mut x = w - 1;
                    for (bit, g) in bits.iter().zip([&a, &b, &c]) {
                        if *bit == 1 {
                            x = g[x];
                        }
                    }
                    ensure(x == 0, || format!("{tag}: {w} is sent to {} not 1", x + 1))?;
                }
                triples += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, {triples} prime triples"))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

type Corpus = (Vec<(PathBuf, CnfFormula)>, Vec<(PathBuf, X3hsInstance)>);

/// The committed corpus files, checked against the generator.
fn load_corpus() -> Result<Corpus, String> {
    let dir = corpus_dir();
    let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
    let mut sat = Vec::new();
    for (name, f) in curated_3sat() {
        let path = dir.join("3sat").join(format!("{name}.cnf"));
        let parsed = parse_dimacs(&read(&path)?).map_err(|e| format!("{name}: {e}"))?;
        ensure(parsed == f, || {
            format!("{} differs from the generator", path.display())
        })?;
        sat.push((path, f));
    }
    let mut x3hs = Vec::new();
    for (name, h) in curated_x3hs() {
        let path = dir.join("x3hs").join(format!("{name}.x3hs"));
        let parsed = parse_x3hs(&read(&path)?).map_err(|e| format!("{name}: {e}"))?;
        ensure(parsed == h, || {
            format!("{} differs from the generator", path.display())
        })?;
        x3hs.push((path, h));
    }
    Ok((sat, x3hs))
}

fn criterion_7() -> Outcome {
    let (sat, x3hs) = load_corpus()?;
    let caps = Caps {
        cap: 1_000_000,
        cap_each: 100_000,
    };
    let file = |p: &Path| p.file_name().unwrap().to_string_lossy().into_owned();
    let mut jobs = Vec::new();
    for (path, f) in &sat {
        let source = SourceProblem::Sat(f.clone());
        jobs.push((
            format!("hamming {}", file(path)),
            hamming_from_3sat(f),
            source.clone(),
        ));
        jobs.push((format!("linf {}", file(path)), linf_from_3sat(f), source));
    }
    for (path, h) in &x3hs {
        let source = SourceProblem::X3hs(h.clone());
        jobs.push((
            format!("cayley {}", file(path)),
            cayley_from_x3hs(h),
            source.clone(),
        ));
        jobs.push((format!("linf1 {}", file(path)), linf1_from_x3hs(h), source));
    }
    let yes = AtomicUsize::new(0);
    parallel(jobs.len(), |i| {
        let (tag, inst, source) = &jobs[i];
        let inst = inst.as_ref().map_err(|e| format!("{tag}: {e}"))?;
        let report = verify_reduction(inst, source, caps).map_err(|e| format!("{tag}: {e}"))?;
        ensure(report.passed(), || format!("{tag}: {report:?}"))?;
        if report.source_solvable {
            yes.fetch_add(1, Ordering::Relaxed);
        }
        Ok(())
    })?;
    Ok(format!(
        "{} reductions ({} yes) over {} formulas and {} hitting-set instances",
        jobs.len(),
        yes.load(Ordering::Relaxed),
        sat.len(),
        x3hs.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut taus = Vec::new();
    while taus.len() < 1000 {
        let n = rng.gen_range(1..=30usize);
        let tau = Permutation::random(n, &mut rng).unwrap();
        if let Some(ord) = order_capped(&image0(&tau), 100_000) {
            taus.push((tau, ord));
        }
    }
    parallel(taus.len(), |i| {
        let (tau, ord) = &taus[i];
        let lengths: Vec<u64> = cycles0(&image0(tau))
            .iter()
            .map(|c| c.len() as u64)
            .collect();
        // Points moved by tau^z are those on cycles whose length does not divide z.
        let best = (1..*ord)
            .map(|z| lengths.iter().filter(|&&l| z % l != 0).sum::<u64>() as usize)
            .min();
        for k in 0..=tau.degree() {
            let want = best.is_some_and(|b| b <= k);
            ensure(min_hamming_weight_cyclic(tau, k) == want, || {
                format!("tau {tau}, k={k}: scan minimum {best:?}")
            })?;
        }
        Ok(())
    })?;
    Ok("1000 permutations, all k".into())
}

fn run_cli(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_sgdist"))
        .args(args)
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    ensure(out.status.success(), || {
        format!(
            "sgdist {}: {} {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn criterion_9() -> Outcome {
    let (sat, x3hs) = load_corpus()?;
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-cli");
    std::fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    let mut jobs: Vec<(&str, &str, &Path)> = Vec::new();
    for (path, _) in &sat {
        jobs.push(("3sat", "hamming", path));
        jobs.push(("3sat", "linf", path));
    }
    for (path, _) in &x3hs {
        jobs.push(("x3hs", "cayley", path));
        jobs.push(("x3hs", "linf1", path));
    }
    let decoded = AtomicUsize::new(0);
    parallel(jobs.len(), |i| {
        let (from, target, src) = jobs[i];
        let src = src.to_str().unwrap();
        let inst = tmp.join(format!("{i}-{target}.json"));
        let inst = inst.to_str().unwrap();
        run_cli(&[
            "reduce", "--from", from, "--target", target, "--in", src, "--out", inst,
        ])?;
        let report = run_cli(&["verify", "--instance", inst, "--source", src, "--json"])?;
        let report: serde_json::Value = serde_json::from_str(&report).map_err(|e| e.to_string())?;
        if let Some(w) = report["witness"].as_array() {
            let exps: Vec<&str> = w.iter().map(|v| v.as_str().unwrap()).collect();
            let out = run_cli(&["decode", "--instance", inst, "--exponents", &exps.join(",")])?;
            let out: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
            ensure(out == report["decoded"], || {
                format!(
                    "{target} {src}: decode gave {out}, verify gave {}",
                    report["decoded"]
                )
            })?;
            decoded.fetch_add(1, Ordering::Relaxed);
        }
        std::fs::remove_file(inst).map_err(|e| e.to_string())
    })?;
    Ok(format!(
        "{} pipelines, {} decoded",
        jobs.len(),
        decoded.load(Ordering::Relaxed)
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("cycle powers split by gcd", criterion_1),
        ("metric lemmas", criterion_2),
        ("cayley formula vs bfs", criterion_3),
        ("2-sat vs truth table", criterion_4),
        ("linf<=1 decision vs scan", criterion_5),
        ("constructions", criterion_6),
        ("reduction equivalence on corpus", criterion_7),
        ("min hamming weight vs scan", criterion_8),
        ("cli reduce/verify/decode", criterion_9),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !only.is_empty() && !only.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {secs:>8.2}s  {name}: {detail}"),
            Err(e) => {
                failed += 1;
                println!("criterion {n} FAIL {secs:>8.2}s  {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
