//! Multi-start gradient ascent of the u2/l2 ratio over functions supported
//! on S(n,k), compared with the closed-form value of the constant.
//!
//! cargo run --release --example ratio_ascent -- 8 4 16

use hamming_energy::functionals::mu_constant;
use hamming_energy::optimize::{maximize_ratio, OptimizerConfig};
use hamming_energy::{PointSet, SphereSpec};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u32>().expect("integer argument"));
    let n = args.next().unwrap_or(8);
    let k = args.next().unwrap_or(4);
    let starts = args.next().unwrap_or(16) as usize;
    let s = SphereSpec::new(n, k).unwrap();
    let cfg = OptimizerConfig { starts, seed: 11, ..OptimizerConfig::default() };

    let res = maximize_ratio(&PointSet::sphere(s), &cfg).unwrap();
    for t in &res.starts {
        println!(
            "start {:>3}: ratio={:.15} iterations={:>5} accepted={:>5} rejected={:>3} residual={:.1e}",
            t.start, t.ratio, t.iterations, t.accepted_steps, t.rejected_steps, t.grad_norm
        );
    }
    let mu = mu_constant(s).unwrap();
    println!("best {:.15} from start {}; mu = {} = {:.15}", res.best_ratio, res.best_start, mu.exact, mu.value);

    let values: Vec<f64> = res.argmax.support().map(|x| res.argmax.at(x)).collect();
    let (lo, hi) = values.iter().fold((f64::INFINITY, 0.0f64), |(l, h), v| (l.min(v.abs()), h.max(v.abs())));
    println!("argmax |values| in [{lo:.12}, {hi:.12}] on {} points", values.len());
}
