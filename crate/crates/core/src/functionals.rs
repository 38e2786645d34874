//! Scalar functionals on F_2^n.
//!
//! All real functionals use the uniform probability measure, so that
//! `||f||_2^2 = E_x f(x)^2` and
//!
//! ```text
//! ||f||_{u2}^4 = N^-3 sum_{a1+a2=a3+a4} f(a1) f(a2) f(a3) f(a4),   N = 2^n.
//! ```
//!
//! The u2 functional has three independent evaluators which are used as
//! oracles for each other: a literal triple loop, the spectral identity
//! `||f||_{u2}^4 = sum_xi f^(xi)^4`, and a regrouping of the quadruple sum
//! over cosets of the projection forgetting a coordinate pair.
//!
//! Set energies are exact: the integer indicator is transformed with the
//! counting butterfly and `E(A) = N^-1 sum_xi A^(xi)^4` is accumulated in
//! `i128`.

use std::fmt;

use num_integer::{binomial, Integer};
use rayon::prelude::*;
use serde::Serialize;

use crate::hypercube::{is_canonical, space_size, PairIndex, Point, PointSet, SphereSpec};
use crate::spectral::{fourier_forward, fwht_in_place, DenseFunction};
use crate::{Error, Result};

/// Largest n accepted by the cubic-time evaluators.
pub const NAIVE_MAX_DIM: u32 = 8;
/// Largest n accepted by the coset evaluator (also cubic time).
pub const COSET_MAX_DIM: u32 = 10;
/// Largest n accepted by the exact integer energy paths.
pub const EXACT_MAX_DIM: u32 = 20;

/// `(E_x f(x)^2)^(1/2)`.
pub fn l2_norm(f: &DenseFunction) -> f64 {
    (f.values().iter().map(|v| v * v).sum::<f64>() / f.len() as f64).sqrt()
}

/// `E_x f(x)^4`.
pub fn l4_fourth(f: &DenseFunction) -> f64 {
    f.values().iter().map(|v| (v * v) * (v * v)).sum::<f64>() / f.len() as f64
}

/// Ground-truth `||f||_{u2}^4` by direct summation over `(a1, a2, a3)`, with
/// `a4 = a1 + a2 + a3`.
pub fn u2_fourth_naive(f: &DenseFunction) -> Result<f64> {
    let n = f.dim();
    if n > NAIVE_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "u2_fourth_naive", n, max: NAIVE_MAX_DIM });
    }
    let v = f.values();
    let len = v.len();
    // Per-a1 partial sums are merged in index order so the result does not
    // depend on the thread count.
    let partial: Vec<f64> = (0..len)
        .into_par_iter()
        .map(|a1| {
            let f1 = v[a1];
            if f1 == 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            for (a2, &f2) in v.iter().enumerate() {
                if f2 == 0.0 {
                    continue;
                }
                let s = a1 ^ a2;
                let inner: f64 = v.iter().enumerate().map(|(a3, &f3)| f3 * v[s ^ a3]).sum();
                acc += f1 * f2 * inner;
            }
            acc
        })
        .collect();
    let total: f64 = partial.iter().sum();
    Ok(total / (len as f64).powi(3))
}

/// `||f||_{u2}^4 = sum_xi f^(xi)^4` from one forward transform.
pub fn u2_fourth_fast(f: &DenseFunction) -> f64 {
    fourier_forward(f).coeffs().iter().map(|c| (c * c) * (c * c)).sum()
}

/// Sum of `f(a1) f(a2) f(a3) f(a4)` over `a_t` in the coset of `b_t`
/// with `a1 + a2 = a3 + a4`, where `b4 = b1 + b2 + b3`.
///
/// All representatives must have coordinates `i` and `j` cleared.
pub fn coset_bracket(f: &DenseFunction, p: PairIndex, b1: Point, b2: Point, b3: Point) -> Result<f64> {
    if !p.fits(f.dim()) {
        return Err(Error::InvalidPair { i: p.i(), j: p.j(), n: f.dim() });
    }
    for b in [b1, b2, b3] {
        if !is_canonical(b, p) || !b.is_valid_for(f.dim()) {
            return Err(Error::NonCanonical { bits: b.0, i: p.i(), j: p.j() });
        }
    }
    Ok(bracket_unchecked(f.values(), p, b1.index(), b2.index(), b3.index()))
}

#[inline]
fn bracket_unchecked(v: &[f64], p: PairIndex, b1: usize, b2: usize, b3: usize) -> f64 {
    let (ei, ej) = (p.e_i().index(), p.e_j().index());
    let offsets = [0, ei, ej, ei | ej];
    let b4 = b1 ^ b2 ^ b3;
    let mut sum = 0.0;
    for &u1 in &offsets {
        let f1 = v[b1 ^ u1];
        if f1 == 0.0 {
            continue;
        }
        for &u2 in &offsets {
            let f2 = v[b2 ^ u2];
            if f2 == 0.0 {
                continue;
            }
            for &u3 in &offsets {
                sum += f1 * f2 * v[b3 ^ u3] * v[b4 ^ u1 ^ u2 ^ u3];
            }
        }
    }
    sum
}

/// Canonical representatives of the cosets of `ker pi_ij`, increasing.
pub fn coset_representatives(n: u32, p: PairIndex) -> Vec<Point> {
    (0..space_size(n) as u64)
        .map(Point)
        .filter(|&b| is_canonical(b, p))
        .collect()
}

/// `||f||_{u2}^4` as `4^-3` times the average of [`coset_bracket`] over all
/// `(N/4)^3` representative triples.
pub fn u2_fourth_by_cosets(f: &DenseFunction, p: PairIndex) -> Result<f64> {
    let n = f.dim();
    if n < 2 {
        return Err(Error::DimensionTooSmall { op: "u2_fourth_by_cosets", n, min: 2 });
    }
    if n > COSET_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "u2_fourth_by_cosets", n, max: COSET_MAX_DIM });
    }
    if !p.fits(n) {
        return Err(Error::InvalidPair { i: p.i(), j: p.j(), n });
    }
    let reps: Vec<usize> = coset_representatives(n, p).into_iter().map(Point::index).collect();
    let v = f.values();
    let partial: Vec<f64> = reps
        .par_iter()
        .map(|&b1| {
            let mut acc = 0.0;
            for &b2 in &reps {
                for &b3 in &reps {
                    acc += bracket_unchecked(v, p, b1, b2, b3);
                }
            }
            acc
        })
        .collect();
    let triples = (reps.len() as f64).powi(3);
    Ok(partial.iter().sum::<f64>() / triples / 64.0)
}

/// `||f||_{u2}^4 / ||f||_2^4`; NaN for the zero function.
pub fn ratio(f: &DenseFunction) -> f64 {
    let l2 = l2_norm(f);
    u2_fourth_fast(f) / (l2 * l2 * l2 * l2)
}

/// `||f||_4^4 / ||f||_2^4`; NaN for the zero function.
pub fn ratio4(f: &DenseFunction) -> f64 {
    let l2 = l2_norm(f);
    l4_fourth(f) / (l2 * l2 * l2 * l2)
}

/// Number of quadruples `(a1, a2, a3, a4)` in `A^4` with `a1 + a2 = a3 + a4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct EnergyValue(pub u128);

impl fmt::Display for EnergyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exact additive energy through the integer Walsh-Hadamard transform.
pub fn additive_energy(set: &PointSet) -> Result<EnergyValue> {
    let n = set.dim();
    if n > EXACT_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "additive_energy", n, max: EXACT_MAX_DIM });
    }
    let mut t = vec![0i64; space_size(n)];
    for p in set.points() {
        t[p.index()] = 1;
    }
    fwht_in_place(&mut t)?;
    let overflow = || Error::Overflow { op: "additive_energy" };
    let mut sum: i128 = 0;
    for &c in &t {
        let sq = (c as i128).checked_mul(c as i128).ok_or_else(overflow)?;
        let q = sq.checked_mul(sq).ok_or_else(overflow)?;
        sum = sum.checked_add(q).ok_or_else(overflow)?;
    }
    exact_quotient(sum, space_size(n) as i128, "additive_energy")
}

fn exact_quotient(sum: i128, size: i128, op: &'static str) -> Result<EnergyValue> {
    let (q, r) = sum.div_rem(&size);
    if r != 0 || q < 0 {
        return Err(Error::Overflow { op });
    }
    Ok(EnergyValue(q as u128))
}

/// Krawtchouk value `K_k(w) = sum_j (-1)^j C(w,j) C(n-w,k-j)`: the counting
/// transform of the indicator of `S(n,k)` at any character of weight `w`.
pub fn krawtchouk(n: u32, k: u32, w: u32) -> i128 {
    assert!(w <= n && k <= n, "krawtchouk: need k, w <= n");
    let (n, k, w) = (n as i128, k as i128, w as i128);
    (0..=k.min(w))
        .filter(|&j| k - j <= n - w)
        .map(|j| {
            let term = binomial(w, j) * binomial(n - w, k - j);
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `E(S(n,k)) = 2^-n sum_w C(n,w) K_k(w)^4`, exact.
pub fn energy_via_krawtchouk(s: SphereSpec) -> Result<EnergyValue> {
    if s.n > EXACT_MAX_DIM {
        return Err(Error::DimensionTooLarge { op: "energy_via_krawtchouk", n: s.n, max: EXACT_MAX_DIM });
    }
    let overflow = || Error::Overflow { op: "energy_via_krawtchouk" };
    let mut sum: i128 = 0;
    for w in 0..=s.n {
        let kv = krawtchouk(s.n, s.k, w);
        let q = kv.checked_pow(4).ok_or_else(overflow)?;
        let term = q.checked_mul(binomial(s.n as i128, w as i128)).ok_or_else(overflow)?;
        sum = sum.checked_add(term).ok_or_else(overflow)?;
    }
    exact_quotient(sum, space_size(s.n) as i128, "energy_via_krawtchouk")
}

/// Non-negative reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    pub numer: u128,
    pub denom: u128,
}

impl Rational {
    pub fn new(numer: u128, denom: u128) -> Self {
        assert!(denom != 0, "zero denominator");
        let g = numer.gcd(&denom);
        Rational { numer: numer / g, denom: denom / g }
    }

    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

/// The value of `||f||_{u2}^4 / ||f||_2^4` at the constant function on a
/// sphere: `E(S) / (2^n |S|^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MuValue {
    pub spec: SphereSpec,
    pub size: u64,
    pub energy: EnergyValue,
    pub exact: Rational,
    pub value: f64,
}

impl fmt::Display for MuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E={} |A|={} mu={} ({})", self.energy, self.size, self.exact, self.value)
    }
}

/// Closed-form `mu(S(n,k))` from the exact energy.
pub fn mu_constant(s: SphereSpec) -> Result<MuValue> {
    let set = PointSet::sphere(s);
    let energy = additive_energy(&set)?;
    let size = s.size();
    let denom = (space_size(s.n) as u128)
        .checked_mul(size as u128 * size as u128)
        .ok_or(Error::Overflow { op: "mu_constant" })?;
    let exact = Rational::new(energy.0, denom);
    Ok(MuValue { spec: s, size, energy, exact, value: exact.to_f64() })
}
