//! Sweeps pair compressions over a random non-negative function on S(n,k)
//! until it stops moving, printing u2 and l2 after each sweep.
//!
//! cargo run --release --example compression_fixpoint -- 8 3

use hamming_energy::compression::{default_max_sweeps, symmetrize_to_fixpoint, DEFAULT_TOL};
use hamming_energy::functionals::{mu_constant, ratio};
use hamming_energy::{DenseFunction, PointSet, SphereSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(8);
    let k = args.next().unwrap_or(3);
    let s = SphereSpec::new(n, k).unwrap();
    let set = PointSet::sphere(s);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut f = DenseFunction::zeros(n).unwrap();
    for &x in set.points() {
        f.set(x, rng.random_range(0.0..1.0));
    }

    let out = symmetrize_to_fixpoint(&f, DEFAULT_TOL, default_max_sweeps(n)).unwrap();
    let per_sweep = out.trace.records.len() / out.sweeps.max(1);
    for r in out.trace.records.chunks(per_sweep.max(1)).filter_map(|c| c.last()) {
        println!("sweep {:>3}: u2^4={:.15e} l2={:.15}", r.sweep, r.u2_fourth, r.l2);
    }
    println!("start ratio    {:.15}", ratio(&f));
    println!("fixpoint ratio {:.15} (converged={}, sweeps={})", ratio(&out.function), out.converged, out.sweeps);
    println!("mu             {:.15}", mu_constant(s).unwrap().value);
    println!("worst u2 drop {:e}, l2 drift {:e}", out.trace.worst_u2_drop(), out.trace.l2_drift());
}
