//! Certifies the constant-function maximizer on every Hamming sphere up to a
//! given dimension and prints one line per sphere.
//!
//! cargo run --release --example certify_theorem -- 8 8 7

use std::time::Instant;

use hamming_energy::verify::{verify_theorem, RATIO_TOL};
use hamming_energy::SphereSpec;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let n_max = args.next().unwrap_or(8) as u32;
    let trials = args.next().unwrap_or(8) as usize;
    let seed = args.next().unwrap_or(7);

    for n in 0..=n_max {
        for k in 0..=n {
            let t = Instant::now();
            let r = verify_theorem(SphereSpec::new(n, k).unwrap(), trials, seed, RATIO_TOL).unwrap();
            let sweeps = r.compression_runs.iter().map(|c| c.sweeps).max().unwrap_or(0);
            let iters = r.gradient_runs.iter().map(|g| g.iterations).max().unwrap_or(0);
            println!(
                "{:<9} mu={:<14} constant={:.12} compression={:.12} gradient={:.12} sweeps<={sweeps} iters<={iters} pass={} ({:.2?})",
                r.spec.to_string(),
                r.mu_exact,
                r.constant_ratio,
                r.best_ratio_compression,
                r.best_ratio_gradient,
                r.pass,
                t.elapsed()
            );
            for f in &r.failures {
                println!("    {f}");
            }
        }
    }
}
