//! The three ways to evaluate ||f||_{u2}^4 on one random function: the
//! literal triple sum, the fourth moment of the spectrum, and the average of
//! coset brackets for a coordinate pair.
//!
//! cargo run --release --example u2_paths -- 7

use std::time::Instant;

use hamming_energy::functionals::{u2_fourth_by_cosets, u2_fourth_fast, u2_fourth_naive};
use hamming_energy::hypercube::PairIndex;
use hamming_energy::DenseFunction;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse().expect("integer n")).unwrap_or(6);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let values = (0..1usize << n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let f = DenseFunction::new(n, values).unwrap();

    let t = Instant::now();
    let naive = u2_fourth_naive(&f).unwrap();
    println!("naive   {naive:.17e} ({:.2?})", t.elapsed());
    let t = Instant::now();
    let fast = u2_fourth_fast(&f);
    println!("fourier {fast:.17e} ({:.2?})", t.elapsed());
    let p = PairIndex::new(1, n, n).unwrap();
    let t = Instant::now();
    let cosets = u2_fourth_by_cosets(&f, p).unwrap();
    println!("cosets  {cosets:.17e} ({:.2?}, pair {p})", t.elapsed());
    println!("relative spread {:.3e}", (fast - naive).abs().max((cosets - naive).abs()) / naive);
}
