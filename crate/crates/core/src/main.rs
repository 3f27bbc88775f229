use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use sgdist::constructions::{delta_cycle, extend_coprime, pair_t1_t2, triple_shift_system};
use sgdist::formats::{
    emit_dimacs, emit_permutation_json, emit_x3hs, parse_dimacs, parse_permutation_json,
    parse_source, parse_x3hs,
};
use sgdist::oracle::{solve, verify_reduction, Caps, DEFAULT_CAP, DEFAULT_CAP_EACH};
use sgdist::reductions::{
    cayley_from_x3hs, decode_witness, hamming_from_3sat, linf1_from_x3hs, linf_from_3sat,
    DistanceInstance,
};
use sgdist::{corpus, decimal, linfty_one, Error, Metric, Permutation};

/// Subgroup distance tools: metrics, the l∞ <= 1 decision procedure, gadget
/// constructions, reductions and brute-force verification.
///
/// Exit codes: 0 yes or success, 1 proven no (or an undecodable witness),
/// 2 usage or input error, 3 search limit exceeded.
#[derive(Parser)]
#[command(name = "sgdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two permutations.
    Distance {
        #[arg(long)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Search an instance exhaustively for exponents within k.
    Solve {
        instance: PathBuf,
        /// Replace the instance's bound.
        #[arg(long)]
        k: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_CAP_EACH)]
        cap_each: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether some power of alpha is within l∞ distance 1 of beta.
    DecideLinf1 {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        beta: PathBuf,
        /// Print the exponent after "yes".
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build a distance instance from a 3-SAT formula or X3HS instance.
    Reduce {
        #[arg(long)]
        from: SourceKind,
        #[arg(long)]
        target: TargetKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a reduced instance and its source by brute force and compare.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        /// DIMACS CNF or X3HS file; the header decides which.
        #[arg(long)]
        source: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = DEFAULT_CAP_EACH)]
        cap_each: u64,
        #[arg(long)]
        json: bool,
    },
    /// Emit gadget permutations as JSON.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Read an assignment or hitting set off instance exponents.
    Decode {
        #[arg(long)]
        instance: PathBuf,
        /// Comma-separated decimal exponents, one per generator.
        #[arg(long)]
        exponents: String,
    },
    /// Order of a permutation.
    Order { permutation: PathBuf },
    /// Write the curated 3-SAT and X3HS corpus into a directory.
    Corpus {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// The cycle whose powers 0 and 1 stay within k of the identity.
    Delta {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: usize,
    },
    /// A t-cycle and an involution within l∞ 1 of its powers t1 and t2.
    Pair {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        t1: u64,
        #[arg(long)]
        t2: u64,
    },
    /// The pair extended by a d-cycle coprime to t.
    Extend {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        t1: u64,
        #[arg(long)]
        t2: u64,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 0)]
        d0: u64,
    },
    /// Three commuting shifts on a labeled p_d x p_e x p_f torus.
    Triple {
        #[arg(long)]
        pd: u64,
        #[arg(long)]
        pe: u64,
        #[arg(long)]
        pf: u64,
    },
    /// A uniformly random permutation.
    Random {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SourceKind {
    #[value(name = "3sat")]
    ThreeSat,
    X3hs,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Hamming,
    Cayley,
    Linf,
    Linf1,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::TooLarge(_) => 3,
            Error::UndecodableResidue { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_permutation(path: &Path) -> Result<Permutation, Failure> {
    parse_permutation_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<DistanceInstance, Failure> {
    DistanceInstance::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            say!("{text}");
            Ok(())
        }
    }
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("values always serialize")
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Distance { metric, a, b } => {
            let (a, b) = (read_permutation(&a)?, read_permutation(&b)?);
            say!("{}", metric.distance(&a, &b)?);
            Ok(0)
        }
        Command::Order { permutation } => {
            say!("{}", read_permutation(&permutation)?.order());
            Ok(0)
        }
        Command::Solve {
            instance,
            k,
            cap,
            cap_each,
            json,
        } => {
            let mut inst = read_instance(&instance)?;
            if let Some(k) = k {
                let k = decimal::parse(&k).map_err(usage)?;
                inst = DistanceInstance::new(
                    inst.metric,
                    k,
                    inst.generators,
                    inst.target,
                    inst.decode_meta,
                )?;
            }
            let solution = solve(&inst, Caps { cap, cap_each })?;
            if json {
                say!("{}", pretty(&solution));
            } else {
                match &solution.witness {
                    Some(w) => say!(
                        "yes {}",
                        w.iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                    None => say!("no"),
                }
            }
            Ok(if solution.witness.is_some() { 0 } else { 1 })
        }
        Command::DecideLinf1 {
            alpha,
            beta,
            witness,
            json,
        } => {
            let decision =
                linfty_one::decide(&read_permutation(&alpha)?, &read_permutation(&beta)?)?;
            if json {
                say!("{}", pretty(&decision));
            } else {
                match (&decision.witness, witness) {
                    (Some(w), true) => say!("yes {w}"),
                    (Some(_), false) => say!("yes"),
                    (None, _) => say!("no"),
                }
            }
            Ok(if decision.answer { 0 } else { 1 })
        }
        Command::Reduce {
            from,
            target,
            input,
            out,
        } => {
            let text = read(&input)?;
            let inst = match (from, target) {
                (SourceKind::ThreeSat, TargetKind::Hamming) => {
                    hamming_from_3sat(&parse_dimacs(&text)?)?
                }
                (SourceKind::ThreeSat, TargetKind::Linf) => linf_from_3sat(&parse_dimacs(&text)?)?,
                (SourceKind::X3hs, TargetKind::Cayley) => cayley_from_x3hs(&parse_x3hs(&text)?)?,
                (SourceKind::X3hs, TargetKind::Linf1) => linf1_from_x3hs(&parse_x3hs(&text)?)?,
                _ => {
                    return Err(usage(
                        "3sat reduces to hamming or linf; x3hs reduces to cayley or linf1",
                    ))
                }
            };
            emit(out.as_deref(), &inst.to_json())?;
            Ok(0)
        }
        Command::Verify {
            instance,
            source,
            cap,
            cap_each,
            json,
        } => {
            let inst = read_instance(&instance)?;
            let source = parse_source(&read(&source)?)?;
            let report = verify_reduction(&inst, &source, Caps { cap, cap_each })?;
            if json {
                say!("{}", pretty(&report));
            } else {
                let witness = report.witness.as_ref().map_or("-".to_string(), |w| {
                    w.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                });
                say!("reduction         {}", report.reduction);
                say!("source solvable   {}", report.source_solvable);
                say!("instance solvable {}", report.instance_solvable);
                say!("equivalent        {}", report.equivalent);
                say!("witness           {witness}");
                say!("method            {:?}", report.method);
                if let Some(ok) = report.decoded_verifies {
                    say!("decoded verifies  {ok}");
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Construct { what } => {
            let value = match what {
                Construct::Delta { p, k } => json!({ "p": p, "k": k, "delta": delta_cycle(p, k)? }),
                Construct::Pair { t, t1, t2 } => {
                    serde_json::to_value(pair_t1_t2(t, t1, t2)?).expect("serializable")
                }
                Construct::Extend { t, t1, t2, d, d0 } => {
                    serde_json::to_value(extend_coprime(t, t1, t2, d, d0)?).expect("serializable")
                }
                Construct::Triple { pd, pe, pf } => {
                    let system = triple_shift_system(pd, pe, pf)?;
                    let mut value = serde_json::to_value(&system).expect("serializable");
                    value["product"] =
                        serde_json::to_value(system.product()).expect("serializable");
                    value
                }
                Construct::Random { degree, seed } => {
                    let p = Permutation::random(degree, &mut ChaCha8Rng::seed_from_u64(seed))?;
                    say!("{}", emit_permutation_json(&p));
                    return Ok(0);
                }
            };
            say!("{}", pretty(&value));
            Ok(0)
        }
        Command::Corpus { out } => {
            for (dir, files) in [
                (
                    "3sat",
                    corpus::curated_3sat()
                        .into_iter()
                        .map(|(n, f)| (format!("{n}.cnf"), emit_dimacs(&f)))
                        .collect::<Vec<_>>(),
                ),
                (
                    "x3hs",
                    corpus::curated_x3hs()
                        .into_iter()
                        .map(|(n, h)| (format!("{n}.x3hs"), emit_x3hs(&h)))
                        .collect(),
                ),
            ] {
                let dir = out.join(dir);
                fs::create_dir_all(&dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
                for (name, text) in files {
                    emit(Some(&dir.join(name)), &text)?;
                }
            }
            Ok(0)
        }
        Command::Decode {
            instance,
            exponents,
        } => {
            let inst = read_instance(&instance)?;
            let exponents = exponents
                .split(',')
                .map(|s| decimal::parse(s.trim()))
                .collect::<Result<Vec<BigInt>, _>>()
                .map_err(usage)?;
            let decoded = decode_witness(&inst, &exponents)?;
            say!("{}", serde_json::to_string(&decoded).expect("serializable"));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = writeln!(std::io::stderr(), "sgdist: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
