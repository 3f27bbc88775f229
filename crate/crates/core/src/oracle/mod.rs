//! Brute-force ground truth for the reductions and the decision procedures.

mod engine;
mod enumerate;
mod search;
mod verify;

pub use enumerate::{
    cayley_bfs, min_hamming_weight_cyclic, min_hamming_weight_scan, sat_bruteforce,
    x3hs_bruteforce, MAX_BFS_DEGREE, MAX_ENUMERATION_SIZE,
};
pub use search::{
    solve_cyclic_bruteforce, solve_two_gen_bruteforce, solve_two_gen_residue_search, Caps, Method,
    DEFAULT_CAP, DEFAULT_CAP_EACH,
};
pub use verify::{solve, verify_reduction, Solution, VerificationReport};
