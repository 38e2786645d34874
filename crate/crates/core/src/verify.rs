//! Certification harness.
//!
//! [`verify_theorem`] checks one sphere along two independent routes: the
//! compression fixpoint iteration from random non-negative starts, and the
//! proof-agnostic gradient ascent from random signed starts. Both must stay
//! at or below the closed form `E(S)/(2^n |S|^2)`, which the constant
//! function must attain.
//!
//! [`lemma_suite`] exercises the compression properties pair by pair and
//! [`remark_duality_check`] the l4 / u2 Fourier duality. All three produce
//! serializable reports; failures are recorded, never raised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::compression::{compress, compression_distance, default_max_sweeps, symmetrize_to_fixpoint, DEFAULT_TOL};
use crate::functionals::{
    coset_bracket, coset_representatives, l2_norm, l4_fourth, mu_constant, ratio, ratio4, u2_fourth_fast,
    u2_fourth_naive, NAIVE_MAX_DIM,
};
use crate::hypercube::{pairs, space_size, PointSet, SphereSpec};
use crate::optimize::{maximize_ratio, OptimizerConfig, StartTrace};
use crate::spectral::{fourier_inverse, DenseFunction, Normalization, Spectrum};
use crate::{Error, Result};

/// Default tolerance on optimized ratios.
pub const RATIO_TOL: f64 = 1e-7;
/// Tolerance on the ratio of the constant function against the closed form.
pub const CONSTANT_TOL: f64 = 1e-12;
/// Largest n for the full certification pipeline.
pub const VERIFY_MAX_DIM: u32 = 14;
/// Largest n for the lemma suite.
pub const LEMMA_MAX_DIM: u32 = NAIVE_MAX_DIM;
/// Largest n at which the lemma suite also checks per-coset brackets and
/// cross-checks `u2^4` against the cubic-time oracle.
pub const LEMMA_BRACKET_MAX_DIM: u32 = 6;
/// Largest n for the duality check.
pub const DUALITY_MAX_DIM: u32 = 10;

pub const L2_DRIFT_TOL: f64 = 1e-12;
pub const U2_SLACK: f64 = 1e-12;
pub const STRICTNESS_THRESHOLD: f64 = 1e-8;
pub const BRACKET_SLACK: f64 = 1e-12;
pub const DUALITY_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-10;

#[derive(Clone, Copy)]
enum Route {
    Compression = 1,
    Gradient = 2,
    Lemma = 3,
    Duality = 4,
    Signed = 5,
}

/// Seed for one (sphere, route) cell, derived from the user seed.
fn cell_seed(seed: u64, n: u32, k: u32, route: Route) -> u64 {
    seed ^ ((n as u64) << 56) ^ ((k as u64) << 48) ^ ((route as u64) << 40)
}

fn stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Values in `(0, 1]` on the sphere, zero elsewhere.
fn random_nonnegative(set: &PointSet, rng: &mut impl Rng) -> DenseFunction {
    let mut f = DenseFunction::zeros(set.dim()).expect("valid dimension");
    for &x in set.points() {
        f.set(x, 1.0 - rng.random::<f64>());
    }
    f
}

fn random_signed(set: &PointSet, rng: &mut impl Rng) -> DenseFunction {
    let mut f = DenseFunction::zeros(set.dim()).expect("valid dimension");
    for &x in set.points() {
        f.set(x, rng.sample::<f64, _>(StandardNormal));
    }
    f
}

/// Nonzero entries as `(bitstring, value)` for replaying a failure.
pub fn serialize_function(f: &DenseFunction) -> Vec<(String, f64)> {
    f.support().map(|x| (x.to_bitstring(f.dim()), f.at(x))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompressionRunSummary {
    pub trial: usize,
    pub sweeps: usize,
    pub converged: bool,
    pub last_change: f64,
    pub start_ratio: f64,
    pub ratio: f64,
    /// `(max - min) / mean` of the final values over the sphere.
    pub spread: f64,
    pub worst_u2_drop: f64,
    pub l2_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub spec: SphereSpec,
    pub size: u64,
    pub energy: u128,
    pub mu_exact: String,
    pub mu_closed_form: f64,
    pub constant_ratio: f64,
    pub best_ratio_compression: f64,
    pub best_ratio_gradient: f64,
    pub constant_attained: bool,
    pub pass: bool,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub compression_runs: Vec<CompressionRunSummary>,
    pub gradient_runs: Vec<StartTrace>,
    pub failures: Vec<String>,
    pub offending_function: Option<Vec<(String, f64)>>,
}

/// Certifies `mu(S(n,k)) = E(S) / (2^n |S|^2)` numerically.
pub fn verify_theorem(s: SphereSpec, trials: usize, seed: u64, tol: f64) -> Result<VerifyReport> {
    if s.n > VERIFY_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "verify_theorem", n: s.n, max: VERIFY_MAX_DIM });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("tol must be positive, got {tol}")));
    }
    let mu = mu_constant(s)?;
    let set = PointSet::sphere(s);
    let mut failures = Vec::new();
    let mut offending = None;

    let constant_ratio = ratio(&DenseFunction::indicator(&set));
    if (constant_ratio - mu.value).abs() > CONSTANT_TOL {
        failures.push(format!("constant ratio {constant_ratio} differs from closed form {}", mu.value));
    }

    let comp_seed = cell_seed(seed, s.n, s.k, Route::Compression);
    let max_sweeps = default_max_sweeps(s.n);
    let runs: Vec<(CompressionRunSummary, DenseFunction)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let start = random_nonnegative(&set, &mut stream(comp_seed, t));
            let out = symmetrize_to_fixpoint(&start, DEFAULT_TOL, max_sweeps).expect("positive tolerance");
            let (lo, hi, sum) = set.points().iter().fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |acc, &x| {
                let v = out.function.at(x);
                (acc.0.min(v), acc.1.max(v), acc.2 + v)
            });
            let mean = sum / set.len() as f64;
            let summary = CompressionRunSummary {
                trial: t,
                sweeps: out.sweeps,
                converged: out.converged,
                last_change: out.last_change,
                start_ratio: ratio(&start),
                ratio: ratio(&out.function),
                spread: (hi - lo) / mean,
                worst_u2_drop: out.trace.worst_u2_drop(),
                l2_drift: out.trace.l2_drift(),
            };
            (summary, start)
        })
        .collect();

    let mut constant_attained = true;
    let mut best_ratio_compression = f64::NEG_INFINITY;
    for (r, start) in &runs {
        best_ratio_compression = best_ratio_compression.max(r.ratio).max(r.start_ratio);
        let mut bad = Vec::new();
        if !r.converged {
            bad.push(format!("no convergence after {} sweeps (last change {:e})", r.sweeps, r.last_change));
        }
        if (r.ratio - mu.value).abs() > tol {
            bad.push(format!("fixpoint ratio {} misses {}", r.ratio, mu.value));
        }
        if r.spread > tol {
            bad.push(format!("fixpoint not constant (spread {:e})", r.spread));
        }
        if !bad.is_empty() {
            constant_attained = false;
            failures.push(format!("compression trial {}: {}", r.trial, bad.join("; ")));
            offending.get_or_insert_with(|| serialize_function(start));
        }
    }
    if best_ratio_compression > mu.value + tol {
        failures.push(format!("compression route exceeded closed form: {best_ratio_compression}"));
    }

    let cfg = OptimizerConfig {
        starts: trials.max(1),
        seed: cell_seed(seed, s.n, s.k, Route::Gradient),
        ..OptimizerConfig::default()
    };
    let opt = maximize_ratio(&set, &cfg)?;
    if opt.best_ratio > mu.value + tol {
        failures.push(format!("gradient route exceeded closed form: {}", opt.best_ratio));
        offending = Some(serialize_function(&opt.argmax));
    }

    Ok(VerifyReport {
        spec: s,
        size: mu.size,
        energy: mu.energy.0,
        mu_exact: mu.exact.to_string(),
        mu_closed_form: mu.value,
        constant_ratio,
        best_ratio_compression: if trials == 0 { constant_ratio } else { best_ratio_compression },
        best_ratio_gradient: opt.best_ratio,
        constant_attained,
        pass: failures.is_empty(),
        trials,
        seed,
        tol,
        compression_runs: runs.into_iter().map(|(r, _)| r).collect(),
        gradient_runs: opt.starts,
        failures,
        offending_function: offending,
    })
}

/// [`verify_theorem`] over every sphere with `n <= n_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub n_max: u32,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub cells: Vec<VerifyReport>,
    pub pass: bool,
}

pub fn verify_all(n_max: u32, trials: usize, seed: u64, tol: f64) -> Result<SweepReport> {
    if n_max > VERIFY_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "verify_all", n: n_max, max: VERIFY_MAX_DIM });
    }
    let specs: Vec<SphereSpec> = (0..=n_max)
        .flat_map(|n| (0..=n).map(move |k| SphereSpec { n, k }))
        .collect();
    let cells = specs
        .into_par_iter()
        .map(|s| verify_theorem(s, trials, seed, tol))
        .collect::<Result<Vec<_>>>()?;
    let pass = cells.iter().all(|c| c.pass);
    Ok(SweepReport { n_max, trials, seed, tol, cells, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub spec: SphereSpec,
    pub functions: usize,
    pub pair_checks: usize,
    pub support_violations: usize,
    pub worst_l2_drift: f64,
    pub l2_violations: usize,
    /// Smallest observed `u2^4(f^(ij)) - u2^4(f)`.
    pub worst_u2_change: f64,
    pub monotonicity_violations: usize,
    pub strictness_triggers: usize,
    pub strictness_failures: usize,
    /// Smallest increase among strictness triggers.
    pub min_strict_increase: f64,
    pub bracket_checks: usize,
    pub bracket_violations: usize,
    pub worst_bracket_margin: f64,
    pub oracle_mismatches: usize,
    pub pass: bool,
}

/// Compression properties on `trials` random non-negative functions on the
/// sphere, for every coordinate pair.
pub fn lemma_suite(s: SphereSpec, trials: usize, seed: u64) -> Result<LemmaReport> {
    let set = PointSet::sphere(s);
    let lemma_seed = cell_seed(seed, s.n, s.k, Route::Lemma);
    let population: Vec<DenseFunction> =
        (0..trials).map(|t| random_nonnegative(&set, &mut stream(lemma_seed, t))).collect();
    lemma_suite_on(s, &population)
}

/// Per-function tallies, merged in order.
#[derive(Default)]
struct LemmaTally {
    pair_checks: usize,
    support_violations: usize,
    worst_l2_drift: f64,
    l2_violations: usize,
    worst_u2_change: f64,
    monotonicity_violations: usize,
    strictness_triggers: usize,
    strictness_failures: usize,
    min_strict_increase: f64,
    bracket_checks: usize,
    bracket_violations: usize,
    worst_bracket_margin: f64,
    oracle_mismatches: usize,
}

fn lemma_one(f: &DenseFunction, set: &PointSet) -> LemmaTally {
    let n = set.dim();
    let with_oracle = n <= LEMMA_BRACKET_MAX_DIM;
    let mut t = LemmaTally {
        worst_u2_change: f64::INFINITY,
        min_strict_increase: f64::INFINITY,
        worst_bracket_margin: f64::INFINITY,
        ..Default::default()
    };
    let u2 = |g: &DenseFunction, mismatches: &mut usize| {
        let fast = u2_fourth_fast(g);
        if with_oracle {
            let naive = u2_fourth_naive(g).expect("small dimension");
            if (fast - naive).abs() > ORACLE_TOL * naive.abs().max(1.0) {
                *mismatches += 1;
            }
            naive
        } else {
            fast
        }
    };
    let base_u2 = u2(f, &mut t.oracle_mismatches);
    let base_l2 = l2_norm(f);
    for p in pairs(n) {
        t.pair_checks += 1;
        let g = compress(f, p).expect("pair within dimension");
        let outside_nonzero = g
            .values()
            .iter()
            .enumerate()
            .any(|(i, &v)| v != 0.0 && !set.contains(crate::Point(i as u64)));
        if outside_nonzero {
            t.support_violations += 1;
        }
        let drift = (l2_norm(&g) - base_l2).abs();
        t.worst_l2_drift = t.worst_l2_drift.max(drift);
        if drift > L2_DRIFT_TOL {
            t.l2_violations += 1;
        }
        let change = u2(&g, &mut t.oracle_mismatches) - base_u2;
        t.worst_u2_change = t.worst_u2_change.min(change);
        if change < -U2_SLACK {
            t.monotonicity_violations += 1;
        }
        if compression_distance(f, p).expect("pair within dimension") > STRICTNESS_THRESHOLD {
            t.strictness_triggers += 1;
            t.min_strict_increase = t.min_strict_increase.min(change);
            if !(change > 0.0) {
                t.strictness_failures += 1;
            }
        }
        if with_oracle && n >= 2 {
            let reps = coset_representatives(n, p);
            for &b1 in &reps {
                for &b2 in &reps {
                    for &b3 in &reps {
                        let before = coset_bracket(f, p, b1, b2, b3).expect("canonical");
                        let after = coset_bracket(&g, p, b1, b2, b3).expect("canonical");
                        t.bracket_checks += 1;
                        let margin = after - before;
                        t.worst_bracket_margin = t.worst_bracket_margin.min(margin);
                        if margin < -BRACKET_SLACK {
                            t.bracket_violations += 1;
                        }
                    }
                }
            }
        }
    }
    t
}

/// [`lemma_suite`] on an explicit population of functions supported on `s`.
pub fn lemma_suite_on(s: SphereSpec, population: &[DenseFunction]) -> Result<LemmaReport> {
    if s.n > LEMMA_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "lemma_suite", n: s.n, max: LEMMA_MAX_DIM });
    }
    let set = PointSet::sphere(s);
    for f in population {
        if f.dim() != s.n {
            return Err(Error::DimensionMismatch { left: f.dim(), right: s.n });
        }
    }
    let tallies: Vec<LemmaTally> = population.par_iter().map(|f| lemma_one(f, &set)).collect();
    let mut r = LemmaReport {
        spec: s,
        functions: population.len(),
        pair_checks: 0,
        support_violations: 0,
        worst_l2_drift: 0.0,
        l2_violations: 0,
        worst_u2_change: f64::INFINITY,
        monotonicity_violations: 0,
        strictness_triggers: 0,
        strictness_failures: 0,
        min_strict_increase: f64::INFINITY,
        bracket_checks: 0,
        bracket_violations: 0,
        worst_bracket_margin: f64::INFINITY,
        oracle_mismatches: 0,
        pass: true,
    };
    for t in tallies {
        r.pair_checks += t.pair_checks;
        r.support_violations += t.support_violations;
        r.worst_l2_drift = r.worst_l2_drift.max(t.worst_l2_drift);
        r.l2_violations += t.l2_violations;
        r.worst_u2_change = r.worst_u2_change.min(t.worst_u2_change);
        r.monotonicity_violations += t.monotonicity_violations;
        r.strictness_triggers += t.strictness_triggers;
        r.strictness_failures += t.strictness_failures;
        r.min_strict_increase = r.min_strict_increase.min(t.min_strict_increase);
        r.bracket_checks += t.bracket_checks;
        r.bracket_violations += t.bracket_violations;
        r.worst_bracket_margin = r.worst_bracket_margin.min(t.worst_bracket_margin);
        r.oracle_mismatches += t.oracle_mismatches;
    }
    r.pass = r.support_violations == 0
        && r.l2_violations == 0
        && r.monotonicity_violations == 0
        && r.strictness_failures == 0
        && r.bracket_violations == 0
        && r.oracle_mismatches == 0;
    Ok(r)
}

/// Outcome of the randomized search for a `u2` decrease under compression of
/// sign-changing functions. Exploratory: nothing is asserted about it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignedSearchReport {
    pub spec: SphereSpec,
    pub trials: usize,
    pub pair_checks: usize,
    pub decreases: usize,
    pub worst_u2_change: f64,
    pub example: Option<Vec<(String, f64)>>,
    pub example_pair: Option<(u32, u32)>,
}

pub fn signed_monotonicity_search(s: SphereSpec, trials: usize, seed: u64) -> Result<SignedSearchReport> {
    if s.n > crate::functionals::EXACT_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "signed_monotonicity_search", n: s.n, max: 20 });
    }
    let set = PointSet::sphere(s);
    let search_seed = cell_seed(seed, s.n, s.k, Route::Signed);
    let mut report = SignedSearchReport {
        spec: s,
        trials,
        pair_checks: 0,
        decreases: 0,
        worst_u2_change: f64::INFINITY,
        example: None,
        example_pair: None,
    };
    for t in 0..trials {
        let f = random_signed(&set, &mut stream(search_seed, t));
        let base = u2_fourth_fast(&f);
        for p in pairs(s.n) {
            report.pair_checks += 1;
            let change = u2_fourth_fast(&compress(&f, p)?) - base;
            if change < -U2_SLACK {
                report.decreases += 1;
                if report.example.is_none() {
                    report.example = Some(serialize_function(&f));
                    report.example_pair = Some((p.i(), p.j()));
                }
            }
            report.worst_u2_change = report.worst_u2_change.min(change);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub n: u32,
    pub support_size: usize,
    pub trials: usize,
    /// Largest `|ratio4(f) - N ratio_u2(f^)| / ratio4(f)`.
    pub max_ratio_deviation: f64,
    /// Largest `|l4^4(f) - N^3 u2^4(f^)| / l4^4(f)`.
    pub max_norm_deviation: f64,
    pub pass: bool,
}

/// Random spectra supported on `set`; checks `ratio4(f) = N ratio_u2(f^)`.
pub fn remark_duality_check(n: u32, set: &PointSet, trials: usize, seed: u64) -> Result<DualityReport> {
    if n > DUALITY_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "remark_duality_check", n, max: DUALITY_MAX_DIM });
    }
    if set.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: set.dim() });
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let size = space_size(n) as f64;
    let duality_seed = cell_seed(seed, n, set.len() as u32, Route::Duality);
    let mut report = DualityReport {
        n,
        support_size: set.len(),
        trials,
        max_ratio_deviation: 0.0,
        max_norm_deviation: 0.0,
        pass: true,
    };
    for t in 0..trials {
        let coeffs = random_signed(set, &mut stream(duality_seed, t)).into_values();
        let spectrum = Spectrum::new(n, coeffs, Normalization::Expectation)?;
        let f = fourier_inverse(&spectrum)?;
        let hat = spectrum.as_function();
        let r4 = ratio4(&f);
        let ru = ratio(&hat);
        report.max_ratio_deviation = report.max_ratio_deviation.max((r4 - size * ru).abs() / r4);
        let l4 = l4_fourth(&f);
        let dual = size.powi(3) * u2_fourth_fast(&hat);
        report.max_norm_deviation = report.max_norm_deviation.max((l4 - dual).abs() / l4);
    }
    report.pass = report.max_ratio_deviation <= DUALITY_TOL && report.max_norm_deviation <= DUALITY_TOL;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Point;

    fn spec(n: u32, k: u32) -> SphereSpec {
        SphereSpec::new(n, k).unwrap()
    }

    #[test]
    fn verify_examples() {
        let r = verify_theorem(spec(3, 1), 16, 1, RATIO_TOL).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.mu_exact, "7/24");
        assert_eq!(r.energy, 21);
        let r = verify_theorem(spec(4, 2), 16, 1, RATIO_TOL).unwrap();
        assert!(r.pass, "{:?}", r.failures);
        assert_eq!(r.mu_exact, "7/24");
        for n in 0..=6 {
            let r = verify_theorem(spec(n, 0), 4, 1, RATIO_TOL).unwrap();
            assert!(r.pass);
            assert_eq!(r.mu_closed_form, 1.0 / (1u64 << n) as f64);
        }
    }

    #[test]
    fn lemma_examples() {
        let r = lemma_suite(spec(4, 2), 100, 3).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.worst_l2_drift <= 1e-12);
        let r = lemma_suite(spec(2, 1), 10, 3).unwrap();
        assert!(r.pass);
        assert_eq!(r.strictness_triggers, 10);
        let set = PointSet::sphere(spec(5, 2));
        let constants: Vec<_> = (1..=5).map(|c| DenseFunction::on_set(&set, c as f64)).collect();
        let r = lemma_suite_on(spec(5, 2), &constants).unwrap();
        assert!(r.pass);
        assert_eq!(r.strictness_triggers, 0);
    }

    #[test]
    fn duality_examples() {
        let s31 = PointSet::sphere(spec(3, 1));
        assert!(remark_duality_check(3, &s31, 50, 0).unwrap().pass);
        let zero = PointSet::new(4, [Point(0)]).unwrap();
        let r = remark_duality_check(4, &zero, 3, 0).unwrap();
        assert!(r.pass);
        let full = PointSet::full(6).unwrap();
        assert!(remark_duality_check(6, &full, 10, 0).unwrap().pass);
    }

    #[test]
    fn delta_spectrum_gives_constant_function() {
        let spectrum = Spectrum::new(3, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], Normalization::Expectation)
            .unwrap();
        let f = fourier_inverse(&spectrum).unwrap();
        assert_eq!(ratio4(&f), 1.0);
        assert!((ratio(&spectrum.as_function()) - 1.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn verify_rejects_large_dimensions() {
        assert!(verify_theorem(spec(15, 3), 1, 0, RATIO_TOL).is_err());
        assert!(lemma_suite(spec(9, 3), 1, 0).is_err());
    }

    #[test]
    fn signed_search_runs() {
        let r = signed_monotonicity_search(spec(5, 2), 20, 0).unwrap();
        assert_eq!(r.pair_checks, 20 * 10);
    }
}
