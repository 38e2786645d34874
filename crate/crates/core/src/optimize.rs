//! Multi-start projected gradient ascent for `||f||_{u2}^4 / ||f||_2^4` over
//! functions supported on a given set.
//!
//! The ratio is scale invariant, so the ascent maximizes `u2^4` on the unit
//! l2 sphere of functions supported on `A`. The step moves along the
//! gradient taken with respect to the expectation inner product and then
//! re-projects. Because `u2^4 = sum_xi f^(xi)^4` is convex and its gradient
//! has non-negative inner product with `f`, every positive step size ascends
//! in exact arithmetic; backtracking only triggers on drops larger than
//! rounding noise. Accepted
//! steps double the step size, so the iteration approaches the normalized
//! gradient map `f <- P_A grad / ||P_A grad||`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::functionals::{l2_norm, EXACT_MAX_DIM};
use crate::hypercube::PointSet;
use crate::spectral::{fourier_forward, fwht_in_place, DenseFunction};
use crate::{Error, Result};

const MAX_STEP: f64 = 1e12;
const MIN_STEP: f64 = 1e-14;
const MAX_DEGENERATE_DRAWS: usize = 64;
/// Relative objective drop treated as rounding noise rather than a failed step.
pub const ROUNDING_SLACK: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub starts: usize,
    pub step: f64,
    pub tol: f64,
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig { starts: 32, step: 0.5, tol: 1e-10, max_iters: 50_000, seed: 0 }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.starts < 1 {
            return Err(Error::InvalidConfig("starts must be at least 1".into()));
        }
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::InvalidConfig(format!("step must be positive, got {}", self.step)));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Summary of one restart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StartTrace {
    pub start: usize,
    pub iterations: usize,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub grad_norm: f64,
    pub ratio: f64,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct OptimizerResult {
    pub best_ratio: f64,
    pub best_start: usize,
    /// Unit l2, zero outside the support.
    pub argmax: DenseFunction,
    pub starts: Vec<StartTrace>,
}

/// One ascent run from a given start.
#[derive(Clone, Debug)]
pub struct AscentRun {
    pub function: DenseFunction,
    pub trace: StartTrace,
    /// Objective after every accepted step, starting with the initial value.
    /// Non-decreasing up to [`ROUNDING_SLACK`].
    pub history: Vec<f64>,
}

/// Partial derivatives of `u2^4`:
/// `g(x) = 4 N^-3 sum_{a2,a3} f(a2) f(a3) f(x + a2 + a3)`,
/// evaluated as `(4/N)` times the inverse butterfly of `f^^3`.
pub fn u2_gradient(f: &DenseFunction) -> DenseFunction {
    let (_, g) = objective_and_gradient(f);
    g
}

fn objective_and_gradient(f: &DenseFunction) -> (f64, DenseFunction) {
    let spectrum = fourier_forward(f);
    let objective = spectrum.coeffs().iter().map(|c| (c * c) * (c * c)).sum();
    let mut t: Vec<f64> = spectrum.coeffs().iter().map(|c| c * c * c).collect();
    fwht_in_place(&mut t).expect("power-of-two table");
    let scale = 4.0 / t.len() as f64;
    t.iter_mut().for_each(|v| *v *= scale);
    (objective, DenseFunction::new(f.dim(), t).expect("finite gradient"))
}

/// Zeroes `f` outside `set` and rescales to unit l2.
pub fn project(f: &DenseFunction, set: &PointSet) -> Result<DenseFunction> {
    if f.dim() != set.dim() {
        return Err(Error::DimensionMismatch { left: f.dim(), right: set.dim() });
    }
    let mut out = DenseFunction::zeros(f.dim())?;
    for &x in set.points() {
        out.set(x, f.at(x));
    }
    let norm = l2_norm(&out);
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroAfterRestriction);
    }
    Ok(out.scaled(1.0 / norm))
}

/// Random start with i.i.d. Gaussian values on `set`, projected to unit l2.
pub fn random_start(set: &PointSet, rng: &mut impl Rng) -> Result<DenseFunction> {
    for _ in 0..MAX_DEGENERATE_DRAWS {
        let mut f = DenseFunction::zeros(set.dim())?;
        for &x in set.points() {
            f.set(x, rng.sample::<f64, _>(StandardNormal));
        }
        match project(&f, set) {
            Ok(f) => return Ok(f),
            Err(Error::ZeroAfterRestriction) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ZeroAfterRestriction)
}

/// Generator for restart `start` of a run seeded with `seed`.
pub fn start_rng(seed: u64, start: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    rng
}

/// Runs projected gradient ascent from `start`.
pub fn ascend(start: &DenseFunction, set: &PointSet, cfg: &OptimizerConfig) -> Result<AscentRun> {
    cfg.validate()?;
    let size = (1usize << set.dim()) as f64;
    let mut f = project(start, set)?;
    let (mut objective, mut grad) = objective_and_gradient(&f);
    let mut history = vec![objective];
    let mut step = cfg.step;
    let mut trace = StartTrace {
        start: 0,
        iterations: 0,
        accepted_steps: 0,
        rejected_steps: 0,
        grad_norm: f64::INFINITY,
        ratio: objective,
        converged: false,
    };
    let mut direction = DenseFunction::zeros(set.dim())?;
    loop {
        // Ascent direction in the expectation metric, restricted to the support.
        let mut radial = 0.0;
        for &x in set.points() {
            let d = size * grad.at(x);
            direction.set(x, d);
            radial += d * f.at(x);
        }
        radial /= size;
        let tangential: f64 = set
            .points()
            .iter()
            .map(|&x| {
                let r = direction.at(x) - radial * f.at(x);
                r * r
            })
            .sum::<f64>()
            / size;
        trace.grad_norm = tangential.sqrt();
        if trace.grad_norm < cfg.tol {
            trace.converged = true;
            break;
        }
        if trace.iterations >= cfg.max_iters || step < MIN_STEP {
            break;
        }
        trace.iterations += 1;

        let mut candidate = DenseFunction::zeros(set.dim())?;
        for &x in set.points() {
            candidate.set(x, f.at(x) + step * direction.at(x));
        }
        let candidate = project(&candidate, set)?;
        let (cand_objective, cand_grad) = objective_and_gradient(&candidate);
        if cand_objective >= objective - ROUNDING_SLACK * objective {
            f = candidate;
            objective = cand_objective;
            grad = cand_grad;
            history.push(objective);
            trace.accepted_steps += 1;
            step = (2.0 * step).min(MAX_STEP);
        } else {
            trace.rejected_steps += 1;
            step /= 2.0;
        }
    }
    trace.ratio = objective;
    Ok(AscentRun { function: f, trace, history })
}

/// Best ratio over `cfg.starts` seeded random restarts.
pub fn maximize_ratio(set: &PointSet, cfg: &OptimizerConfig) -> Result<OptimizerResult> {
    cfg.validate()?;
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if set.dim() > EXACT_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "maximize_ratio", n: set.dim(), max: EXACT_MAX_DIM });
    }
    let runs: Vec<Result<AscentRun>> = (0..cfg.starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = start_rng(cfg.seed, s);
            let start = random_start(set, &mut rng)?;
            let mut run = ascend(&start, set, cfg)?;
            run.trace.start = s;
            Ok(run)
        })
        .collect();
    let mut best: Option<AscentRun> = None;
    let mut traces = Vec::with_capacity(runs.len());
    for run in runs {
        let run = run?;
        traces.push(run.trace.clone());
        if best.as_ref().is_none_or(|b| run.trace.ratio > b.trace.ratio) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one start");
    Ok(OptimizerResult {
        best_ratio: best.trace.ratio,
        best_start: best.trace.start,
        argmax: best.function,
        starts: traces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::{mu_constant, ratio, u2_fourth_naive};
    use crate::hypercube::{Point, SphereSpec};

    fn sphere(n: u32, k: u32) -> PointSet {
        PointSet::sphere(SphereSpec::new(n, k).unwrap())
    }

    #[test]
    fn gradient_examples() {
        // Partial derivatives of the normalized quartic: 4 c^3 / N for a constant.
        for n in 0..=6 {
            let g = u2_gradient(&DenseFunction::constant(n, 1.5).unwrap());
            let want = 4.0 * 1.5f64.powi(3) / (1u64 << n) as f64;
            assert!(g.values().iter().all(|v| (v - want).abs() < 1e-12));
        }
        let g = u2_gradient(&DenseFunction::delta(2, Point(0), 1.0).unwrap());
        assert!((g.at(Point(0)) - 1.0 / 16.0).abs() < 1e-15);
        assert!(g.values()[1..].iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = start_rng(17, 0);
        for n in 1..=5 {
            let f = random_start(&PointSet::full(n).unwrap(), &mut rng).unwrap();
            let g = u2_gradient(&f);
            let h = 1e-5;
            for x in 0..f.len() {
                let (mut up, mut down) = (f.clone(), f.clone());
                up.set(Point(x as u64), f.values()[x] + h);
                down.set(Point(x as u64), f.values()[x] - h);
                let fd = (u2_fourth_naive(&up).unwrap() - u2_fourth_naive(&down).unwrap()) / (2.0 * h);
                assert!((fd - g.values()[x]).abs() <= 1e-6 * fd.abs().max(1e-3), "n={n} x={x}");
            }
        }
    }

    #[test]
    fn projection_examples() {
        let set = sphere(2, 1);
        let f = project(&DenseFunction::constant(2, 1.0).unwrap(), &set).unwrap();
        let r2 = std::f64::consts::SQRT_2;
        let want = [0.0, r2, r2, 0.0];
        assert!(f.values().iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        assert!(project(&f, &set).unwrap().max_abs_diff(&f) <= 1e-15);
        let z = DenseFunction::delta(2, Point(0), 1.0).unwrap();
        assert_eq!(project(&z, &set), Err(Error::ZeroAfterRestriction));
    }

    #[test]
    fn ratio_is_scale_invariant() {
        let mut rng = start_rng(5, 0);
        let f = random_start(&PointSet::full(6).unwrap(), &mut rng).unwrap();
        for c in [-3.0, 0.01, 7.5] {
            assert!((ratio(&f.scaled(c)) - ratio(&f)).abs() <= 1e-12 * ratio(&f));
        }
    }

    #[test]
    fn two_point_sphere_reaches_one_half() {
        let cfg = OptimizerConfig { starts: 4, ..Default::default() };
        let res = maximize_ratio(&sphere(2, 1), &cfg).unwrap();
        assert!((res.best_ratio - 0.5).abs() <= 1e-9);
        let v = res.argmax.at(Point(1)).abs();
        assert!((res.argmax.at(Point(2)).abs() - v).abs() < 1e-6);
    }

    #[test]
    fn singleton_ratio_is_inverse_space_size() {
        for n in [1, 3, 6] {
            let set = PointSet::new(n, [Point(1)]).unwrap();
            let res = maximize_ratio(&set, &OptimizerConfig { starts: 3, ..Default::default() }).unwrap();
            let want = 1.0 / (1u64 << n) as f64;
            assert!((res.best_ratio - want).abs() <= 4.0 * f64::EPSILON * want);
            assert!(res.starts.iter().all(|t| t.converged && t.iterations == 0));
        }
    }

    #[test]
    fn four_two_sphere_with_32_starts() {
        let mu = mu_constant(SphereSpec::new(4, 2).unwrap()).unwrap().value;
        let res = maximize_ratio(&sphere(4, 2), &OptimizerConfig::default()).unwrap();
        assert!((res.best_ratio - 7.0 / 24.0).abs() <= 1e-7, "{}", res.best_ratio);
        assert!(res.best_ratio <= mu + 1e-7);
        assert!((crate::functionals::l2_norm(&res.argmax) - 1.0).abs() <= 1e-12);
        assert!(res.argmax.supported_on(&sphere(4, 2)));
    }

    #[test]
    fn accepted_steps_never_decrease_the_objective() {
        let set = sphere(6, 2);
        let mut rng = start_rng(3, 1);
        let start = random_start(&set, &mut rng).unwrap();
        let run = ascend(&start, &set, &OptimizerConfig::default()).unwrap();
        assert!(run.history.windows(2).all(|w| w[1] >= w[0] * (1.0 - ROUNDING_SLACK)));
    }

    #[test]
    fn config_and_input_errors() {
        let bad = OptimizerConfig { starts: 0, ..Default::default() };
        assert!(maximize_ratio(&sphere(3, 1), &bad).is_err());
        let bad = OptimizerConfig { step: -1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let empty = PointSet::new(3, []).unwrap();
        assert_eq!(maximize_ratio(&empty, &OptimizerConfig::default()).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let cfg = OptimizerConfig { starts: 4, seed: 99, ..Default::default() };
        let a = maximize_ratio(&sphere(5, 2), &cfg).unwrap();
        let b = maximize_ratio(&sphere(5, 2), &cfg).unwrap();
        assert_eq!(a.starts, b.starts);
        assert_eq!(a.argmax, b.argmax);
    }
}
