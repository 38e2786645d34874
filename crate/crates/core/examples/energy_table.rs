//! Exact additive energy and mu for every sphere of one dimension, computed
//! by the integer transform and by Krawtchouk sums.
//!
//! cargo run --release --example energy_table -- 16

use hamming_energy::functionals::{additive_energy, energy_via_krawtchouk, mu_constant};
use hamming_energy::{PointSet, SphereSpec};

fn main() {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse().expect("integer n")).unwrap_or(10);
    println!("{:>4} {:>10} {:>24} {:>10} {:>28}", "k", "|S|", "E", "agree", "mu");
    for k in 0..=n {
        let s = SphereSpec::new(n, k).unwrap();
        let mu = mu_constant(s).unwrap();
        let by_transform = additive_energy(&PointSet::sphere(s)).unwrap();
        let agree = by_transform == energy_via_krawtchouk(s).unwrap();
        println!("{k:>4} {:>10} {:>24} {agree:>10} {:>28}", mu.size, mu.energy.0, format!("{} ({:.6})", mu.exact, mu.value));
    }
}
