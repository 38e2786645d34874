//! Lists the points of S(n,k), its complement sphere, and the cosets of a
//! coordinate pair.
//!
//! cargo run --example sphere_enumeration -- 5 2

use hamming_energy::hypercube::{coset, is_canonical, pairs, sphere_connected, PairIndex};
use hamming_energy::{PointSet, SphereSpec};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(5);
    let k = args.next().unwrap_or(2);
    let s = SphereSpec::new(n, k).expect("0 <= k <= n <= 24");

    let pts = s.points();
    println!("{s}: {} points, connected={}", s.size(), sphere_connected(s));
    for x in &pts {
        println!("  {}", x.to_bitstring(n));
    }
    println!("complement {} has {} points", s.complement(), s.complement().size());

    if n >= 2 {
        let p = PairIndex::new(1, 2, n).unwrap();
        let set = PointSet::sphere(s);
        println!("cosets of pair {p} meeting the sphere:");
        for x in (0..1u64 << n).map(hamming_energy::Point).filter(|&x| is_canonical(x, p)) {
            let c = coset(x, p);
            let inside: Vec<String> = c.iter().filter(|y| set.contains(**y)).map(|y| y.to_bitstring(n)).collect();
            if !inside.is_empty() {
                println!("  {} -> {}", x.to_bitstring(n), inside.join(" "));
            }
        }
        println!("{} coordinate pairs in total", pairs(n).count());
    }
}
