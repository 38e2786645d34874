//! Random spectra supported on each sphere: ratio4(f) against N times the
//! u2 ratio of the spectrum.
//!
//! cargo run --release --example duality -- 8

use hamming_energy::verify::remark_duality_check;
use hamming_energy::{PointSet, SphereSpec};

fn main() {
    let n: u32 = std::env::args().nth(1).map(|a| a.parse().expect("integer n")).unwrap_or(8);
    for k in 0..=n {
        let set = PointSet::sphere(SphereSpec::new(n, k).unwrap());
        let r = remark_duality_check(n, &set, 50, 3).unwrap();
        println!(
            "S({n},{k}) |A|={:<4} ratio deviation {:.2e} norm deviation {:.2e} pass={}",
            r.support_size, r.max_ratio_deviation, r.max_norm_deviation, r.pass
        );
    }
}
