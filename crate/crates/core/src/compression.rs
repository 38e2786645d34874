//! The (i,j) l2-compression and its iteration to a fixpoint.
//!
//! For a pair `p = (i, j)` the compression leaves `f(x)` alone when
//! `x_i = x_j`, and otherwise replaces both `f(x)` and `f(x + e_i + e_j)` by
//! their quadratic mean `sqrt((f(x)^2 + f(x+e_i+e_j)^2) / 2)`. It preserves
//! Hamming weight, hence sphere supports, and preserves `||f||_2`; on
//! functions supported on a sphere it does not decrease `||f||_{u2}`.

use serde::Serialize;

use crate::functionals::{l2_norm, u2_fourth_fast};
use crate::hypercube::{pairs, PairIndex};
use crate::spectral::DenseFunction;
use crate::{Error, Result};

/// Default stopping threshold on the per-sweep maximum pointwise change.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default sweep cap: `10 n^2`.
pub fn default_max_sweeps(n: u32) -> usize {
    (10 * n as usize * n as usize).max(1)
}

fn check_pair(f: &DenseFunction, p: PairIndex) -> Result<()> {
    if f.dim() < 2 {
        return Err(Error::DimensionTooSmall { op: "compress", n: f.dim(), min: 2 });
    }
    if !p.fits(f.dim()) {
        return Err(Error::InvalidPair { i: p.i(), j: p.j(), n: f.dim() });
    }
    Ok(())
}

/// Applies the compression in place and returns the largest pointwise change.
fn compress_in_place(values: &mut [f64], p: PairIndex) -> f64 {
    let (ei, ej) = (p.e_i().index(), p.e_j().index());
    let mut max_change = 0.0f64;
    // Visit each swapped pair {x, x + e_i + e_j} once, from the end with x_i = 1, x_j = 0.
    for x in 0..values.len() {
        if x & ei == 0 || x & ej != 0 {
            continue;
        }
        let y = x ^ ei ^ ej;
        let (a, b) = (values[x], values[y]);
        let m = ((a * a + b * b) / 2.0).sqrt();
        max_change = max_change.max((a - m).abs()).max((b - m).abs());
        values[x] = m;
        values[y] = m;
    }
    max_change
}

/// The compression `f^(ij)`.
pub fn compress(f: &DenseFunction, p: PairIndex) -> Result<DenseFunction> {
    check_pair(f, p)?;
    let mut values = f.values().to_vec();
    compress_in_place(&mut values, p);
    DenseFunction::new(f.dim(), values)
}

/// `max_x |f(x) - f^(ij)(x)|`.
pub fn compression_distance(f: &DenseFunction, p: PairIndex) -> Result<f64> {
    check_pair(f, p)?;
    let mut values = f.values().to_vec();
    Ok(compress_in_place(&mut values, p))
}

/// Compresses along every pair in lexicographic order, each step acting on
/// the previous output. Returns the result and the largest change seen.
pub fn sweep(f: &DenseFunction) -> (DenseFunction, f64) {
    let mut values = f.values().to_vec();
    let mut max_change = 0.0f64;
    for p in pairs(f.dim()) {
        max_change = max_change.max(compress_in_place(&mut values, p));
    }
    (DenseFunction::new(f.dim(), values).expect("compression keeps values finite"), max_change)
}

/// One compression step of a fixpoint run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub sweep: usize,
    pub pair_i: u32,
    pub pair_j: u32,
    pub max_change: f64,
    pub u2_fourth: f64,
    pub l2: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CompressionTrace {
    pub records: Vec<TraceRecord>,
}

impl CompressionTrace {
    /// Most negative step-to-step change of `u2^4` (0 when monotone).
    pub fn worst_u2_drop(&self) -> f64 {
        self.records
            .windows(2)
            .map(|w| w[1].u2_fourth - w[0].u2_fourth)
            .fold(0.0, f64::min)
    }

    /// Largest deviation of `l2` from the first record.
    pub fn l2_drift(&self) -> f64 {
        let Some(first) = self.records.first() else { return 0.0 };
        self.records.iter().map(|r| (r.l2 - first.l2).abs()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct FixpointOutcome {
    pub function: DenseFunction,
    pub trace: CompressionTrace,
    pub sweeps: usize,
    pub converged: bool,
    /// Maximum change during the last sweep.
    pub last_change: f64,
}

/// Sweeps until a sweep moves no value by `tol` or more, or `max_sweeps`
/// sweeps have run. Non-convergence is reported through the outcome flag.
pub fn symmetrize_to_fixpoint(f: &DenseFunction, tol: f64, max_sweeps: usize) -> Result<FixpointOutcome> {
    if !(tol > 0.0) {
        return Err(Error::InvalidConfig(format!("fixpoint tolerance must be positive, got {tol}")));
    }
    let n = f.dim();
    let mut values = f.values().to_vec();
    let mut trace = CompressionTrace::default();
    let mut sweeps = 0;
    let mut last_change = f64::INFINITY;
    let mut converged = false;
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut max_change = 0.0f64;
        for p in pairs(n) {
            let change = compress_in_place(&mut values, p);
            max_change = max_change.max(change);
            let current = DenseFunction::new(n, values.clone())?;
            trace.records.push(TraceRecord {
                sweep: sweeps,
                pair_i: p.i(),
                pair_j: p.j(),
                max_change: change,
                u2_fourth: u2_fourth_fast(&current),
                l2: l2_norm(&current),
            });
        }
        last_change = max_change;
        if max_change < tol {
            converged = true;
            break;
        }
    }
    Ok(FixpointOutcome {
        function: DenseFunction::new(n, values)?,
        trace,
        sweeps,
        converged,
        last_change,
    })
}
