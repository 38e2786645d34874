//! Walsh-Hadamard transforms over F_2^n.
//!
//! Two normalizations are kept apart by a tag on [`Spectrum`]:
//!
//! * `Counting`: `t(xi) = sum_x f(x) (-1)^<xi,x>`, the raw butterfly output.
//! * `Expectation`: `f^(xi) = 2^-n sum_x f(x) (-1)^<xi,x>`, for which
//!   `E_x f(x)^2 = sum_xi f^(xi)^2` and `||f||_{u2}^4 = sum_xi f^(xi)^4`.

use std::ops::{Add, Sub};

use crate::hypercube::{check_dim, space_size, Point, PointSet};
use crate::{Error, Result};

/// In-place unnormalized Walsh-Hadamard transform.
///
/// Applying it twice multiplies the table by its length. Works for any
/// additive group element type, in particular `f64` and exact `i64`.
pub fn fwht_in_place<T>(t: &mut [T]) -> Result<()>
where
    T: Copy + Add<Output = T> + Sub<Output = T>,
{
    let len = t.len();
    if !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { len });
    }
    let mut h = 1;
    while h < len {
        for block in t.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
    Ok(())
}

/// A real-valued function on F_2^n stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseFunction {
    n: u32,
    values: Vec<f64>,
}

impl DenseFunction {
    pub fn new(n: u32, values: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if values.len() != space_size(n) {
            return Err(Error::LengthMismatch { len: values.len(), n });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(DenseFunction { n, values })
    }

    pub fn zeros(n: u32) -> Result<Self> {
        check_dim(n)?;
        Ok(DenseFunction { n, values: vec![0.0; space_size(n)] })
    }

    pub fn constant(n: u32, c: f64) -> Result<Self> {
        DenseFunction::new(n, vec![c; space_size(n)])
    }

    pub fn delta(n: u32, at: Point, value: f64) -> Result<Self> {
        let mut f = DenseFunction::zeros(n)?;
        if !at.is_valid_for(n) {
            return Err(Error::InvalidPoint { bits: at.0, n });
        }
        f.values[at.index()] = value;
        Ok(f)
    }

    /// `c` on the points of `set`, zero elsewhere.
    pub fn on_set(set: &PointSet, c: f64) -> Self {
        let mut values = vec![0.0; space_size(set.dim())];
        for p in set.points() {
            values[p.index()] = c;
        }
        DenseFunction { n: set.dim(), values }
    }

    pub fn indicator(set: &PointSet) -> Self {
        DenseFunction::on_set(set, 1.0)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    #[inline]
    pub fn at(&self, x: Point) -> f64 {
        self.values[x.index()]
    }

    pub fn set(&mut self, x: Point, v: f64) {
        self.values[x.index()] = v;
    }

    pub fn scaled(&self, c: f64) -> Self {
        DenseFunction { n: self.n, values: self.values.iter().map(|v| c * v).collect() }
    }

    /// Points where the value is nonzero.
    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, _)| Point(i as u64))
    }

    /// True when every nonzero value lies in `set`.
    pub fn supported_on(&self, set: &PointSet) -> bool {
        self.n == set.dim() && self.support().all(|x| set.contains(x))
    }

    /// Largest absolute pointwise difference.
    pub fn max_abs_diff(&self, other: &DenseFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Which scaling a [`Spectrum`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Characters averaged against f: divides the raw transform by `2^n`.
    Expectation,
    /// Raw character sums.
    Counting,
}

/// Walsh-Hadamard coefficients indexed by character.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    n: u32,
    coeffs: Vec<f64>,
    normalization: Normalization,
}

impl Spectrum {
    pub fn new(n: u32, coeffs: Vec<f64>, normalization: Normalization) -> Result<Self> {
        check_dim(n)?;
        if coeffs.len() != space_size(n) {
            return Err(Error::LengthMismatch { len: coeffs.len(), n });
        }
        if let Some(index) = coeffs.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Spectrum { n, coeffs, normalization })
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// The coefficient table viewed as a function of the character.
    pub fn as_function(&self) -> DenseFunction {
        DenseFunction { n: self.n, values: self.coeffs.clone() }
    }

    /// Rescales to the other convention.
    pub fn renormalized(&self, to: Normalization) -> Spectrum {
        let size = space_size(self.n) as f64;
        let factor = match (self.normalization, to) {
            (Normalization::Counting, Normalization::Expectation) => 1.0 / size,
            (Normalization::Expectation, Normalization::Counting) => size,
            _ => 1.0,
        };
        Spectrum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            normalization: to,
        }
    }
}

/// Expectation-normalized transform `f^(xi) = E_x f(x) (-1)^<xi,x>`.
pub fn fourier_forward(f: &DenseFunction) -> Spectrum {
    let mut coeffs = f.values.clone();
    fwht_in_place(&mut coeffs).expect("dense tables have power-of-two length");
    let scale = 1.0 / coeffs.len() as f64;
    coeffs.iter_mut().for_each(|c| *c *= scale);
    Spectrum { n: f.n, coeffs, normalization: Normalization::Expectation }
}

/// Counting-normalized transform `sum_x f(x) (-1)^<xi,x>`.
pub fn fourier_forward_counting(f: &DenseFunction) -> Spectrum {
    let mut coeffs = f.values.clone();
    fwht_in_place(&mut coeffs).expect("dense tables have power-of-two length");
    Spectrum { n: f.n, coeffs, normalization: Normalization::Counting }
}

/// `f(x) = sum_xi f^(xi) (-1)^<xi,x>`; requires the expectation convention.
pub fn fourier_inverse(s: &Spectrum) -> Result<DenseFunction> {
    if s.normalization != Normalization::Expectation {
        return Err(Error::WrongNormalization { expected: "expectation" });
    }
    let mut values = s.coeffs.clone();
    fwht_in_place(&mut values)?;
    Ok(DenseFunction { n: s.n, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::SphereSpec;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_function(n: u32, rng: &mut ChaCha8Rng) -> DenseFunction {
        let v = (0..space_size(n)).map(|_| rng.random_range(-1.0..1.0)).collect();
        DenseFunction::new(n, v).unwrap()
    }

    /// Direct O(N^2) character sums.
    fn character_sums(f: &[f64]) -> Vec<f64> {
        let len = f.len();
        (0..len)
            .map(|xi| {
                (0..len)
                    .map(|x| if (xi & x).count_ones() % 2 == 0 { f[x] } else { -f[x] })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn butterfly_examples() {
        let mut t = [1.0, 0.0, 0.0, 0.0];
        fwht_in_place(&mut t).unwrap();
        assert_eq!(t, [1.0; 4]);
        let mut t = [1.0; 4];
        fwht_in_place(&mut t).unwrap();
        assert_eq!(t, [4.0, 0.0, 0.0, 0.0]);
        let mut t = [3.0, -1.0, 2.0, 0.0];
        fwht_in_place(&mut t).unwrap();
        fwht_in_place(&mut t).unwrap();
        assert_eq!(t, [12.0, -4.0, 8.0, 0.0]);
        let mut t = [1i64; 3];
        assert!(matches!(fwht_in_place(&mut t), Err(Error::NotPowerOfTwo { len: 3 })));
    }

    #[test]
    fn butterfly_matches_character_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 0..=7 {
            let f = random_function(n, &mut rng);
            let mut t = f.values().to_vec();
            fwht_in_place(&mut t).unwrap();
            for (a, b) in t.iter().zip(character_sums(f.values())) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn forward_examples() {
        let d = DenseFunction::delta(2, Point(0), 1.0).unwrap();
        assert_eq!(fourier_forward(&d).coeffs(), &[0.25; 4]);
        let c = DenseFunction::constant(2, 1.0).unwrap();
        assert_eq!(fourier_forward(&c).coeffs(), &[1.0, 0.0, 0.0, 0.0]);
        let a = DenseFunction::indicator(&PointSet::sphere(SphereSpec::new(2, 1).unwrap()));
        assert_eq!(fourier_forward(&a).coeffs(), &[0.5, 0.0, 0.0, -0.5]);
    }

    #[test]
    fn inverse_examples() {
        let s = Spectrum::new(2, vec![1.0, 0.0, 0.0, 0.0], Normalization::Expectation).unwrap();
        assert_eq!(fourier_inverse(&s).unwrap().values(), &[1.0; 4]);
        let s = Spectrum::new(2, vec![0.25; 4], Normalization::Expectation).unwrap();
        assert_eq!(fourier_inverse(&s).unwrap().values(), &[1.0, 0.0, 0.0, 0.0]);
        let s = Spectrum::new(2, vec![0.25; 4], Normalization::Counting).unwrap();
        assert!(matches!(fourier_inverse(&s), Err(Error::WrongNormalization { .. })));
    }

    #[test]
    fn round_trip_and_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=12 {
            let f = random_function(n, &mut rng);
            let s = fourier_forward(&f);
            if n <= 10 {
                let g = fourier_inverse(&s).unwrap();
                assert!(f.max_abs_diff(&g) <= 1e-12, "n={n}");
            }
            let lhs = f.values().iter().map(|v| v * v).sum::<f64>() / f.len() as f64;
            let rhs = s.coeffs().iter().map(|c| c * c).sum::<f64>();
            assert!((lhs - rhs).abs() <= 1e-12 * lhs, "n={n}");
        }
    }

    #[test]
    fn convolution_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..=8 {
            let f = random_function(n, &mut rng);
            let g = random_function(n, &mut rng);
            let len = f.len();
            let conv: Vec<f64> = (0..len)
                .map(|x| (0..len).map(|y| f.values()[y] * g.values()[x ^ y]).sum::<f64>() / len as f64)
                .collect();
            let conv = DenseFunction::new(n, conv).unwrap();
            let lhs = fourier_forward(&conv);
            let (fh, gh) = (fourier_forward(&f), fourier_forward(&g));
            for ((c, a), b) in lhs.coeffs().iter().zip(fh.coeffs()).zip(gh.coeffs()) {
                assert!((c - a * b).abs() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn integer_indicator_transform_is_exact() {
        // Worst case for magnitudes: the all-ones table at n = 24.
        let n = 24;
        let mut t = vec![1i64; space_size(n)];
        fwht_in_place(&mut t).unwrap();
        assert_eq!(t[0], 1 << n);
        assert!(t[1..].iter().all(|&v| v == 0));
        let mut t = vec![1.0f64; space_size(n)];
        fwht_in_place(&mut t).unwrap();
        assert_eq!(t[0], (1u64 << n) as f64);
    }

    #[test]
    fn renormalization_round_trips() {
        let f = DenseFunction::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let c = fourier_forward_counting(&f);
        assert_eq!(c.renormalized(Normalization::Expectation), fourier_forward(&f));
    }

    proptest! {
        #[test]
        fn linearity(a in -3.0f64..3.0, seed in any::<u64>(), n in 0u32..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_function(n, &mut rng);
            let g = random_function(n, &mut rng);
            let h = DenseFunction::new(
                n,
                f.values().iter().zip(g.values()).map(|(x, y)| a * x + y).collect(),
            ).unwrap();
            let (fh, gh, hh) = (fourier_forward(&f), fourier_forward(&g), fourier_forward(&h));
            for i in 0..f.len() {
                prop_assert!((hh.coeffs()[i] - (a * fh.coeffs()[i] + gh.coeffs()[i])).abs() < 1e-12);
            }
        }
    }
}
