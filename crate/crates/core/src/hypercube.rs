//! Bit-level combinatorics of F_2^n.
//!
//! A point is a bitmask; coordinate `e_i` (1-based, as in the usual basis
//! notation) lives at bit position `i - 1`. Coordinate pairs `(i, j)` and the
//! four-element cosets `{b, b+e_i, b+e_j, b+e_i+e_j}` of the projection that
//! forgets coordinates `i` and `j` are the building blocks of compressions.

use std::collections::VecDeque;
use std::fmt;

use num_integer::binomial;

use crate::{Error, Result, MAX_DIM};

/// A vector of F_2^n stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub u64);

impl Point {
    pub const ZERO: Point = Point(0);

    /// Checked constructor: all bits at positions `>= n` must be clear.
    pub fn new(bits: u64, n: u32) -> Result<Self> {
        check_dim(n)?;
        if bits >> n != 0 {
            return Err(Error::InvalidPoint { bits, n });
        }
        Ok(Point(bits))
    }

    /// The basis vector `e_i`, 1-based.
    pub fn basis(i: u32) -> Self {
        debug_assert!((1..=MAX_DIM).contains(&i));
        Point(1 << (i - 1))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Coefficient of `e_i` (1-based).
    #[inline]
    pub fn coord(self, i: u32) -> bool {
        (self.0 >> (i - 1)) & 1 == 1
    }

    /// Inner product over F_2: parity of the common support.
    #[inline]
    pub fn dot(self, other: Point) -> bool {
        (self.0 & other.0).count_ones() & 1 == 1
    }

    pub fn is_valid_for(self, n: u32) -> bool {
        n <= MAX_DIM && self.0 >> n == 0
    }

    /// Bitstring of length `n`, most significant coordinate first
    /// (the same order as a `0b` literal).
    pub fn to_bitstring(self, n: u32) -> String {
        if n == 0 {
            return String::new();
        }
        format!("{:0width$b}", self.0, width = n as usize)
    }
}

// Addition in F_2^n is XOR.
impl std::ops::Add for Point {
    type Output = Point;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Point) -> Point {
        Point(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

pub(crate) fn check_dim(n: u32) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::InvalidDimension { n, max: MAX_DIM })
    } else {
        Ok(())
    }
}

/// Number of points of F_2^n.
#[inline]
pub fn space_size(n: u32) -> usize {
    1usize << n
}

/// Hamming weight.
#[inline]
pub fn weight(x: Point) -> u32 {
    x.weight()
}

/// The Hamming sphere `S(n, k)`: all vectors of weight `k` in F_2^n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct SphereSpec {
    pub n: u32,
    pub k: u32,
}

impl SphereSpec {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        check_dim(n)?;
        if k > n {
            return Err(Error::InvalidWeight { n, k });
        }
        Ok(SphereSpec { n, k })
    }

    /// `C(n, k)`.
    pub fn size(&self) -> u64 {
        binomial(self.n as u64, self.k as u64)
    }

    pub fn points(&self) -> Vec<Point> {
        sphere_points(*self)
    }

    /// The sphere `S(n, n-k)`, image of this one under complementation.
    pub fn complement(&self) -> SphereSpec {
        SphereSpec { n: self.n, k: self.n - self.k }
    }
}

impl fmt::Display for SphereSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.n, self.k)
    }
}

/// Iterator over the masks of weight `k` below `2^n` in increasing order.
///
/// Successors come from Gosper's next-combination trick.
#[derive(Clone, Debug)]
pub struct SpherePoints {
    next: Option<u64>,
    limit: u64,
}

impl SpherePoints {
    pub fn new(s: SphereSpec) -> Self {
        let next = if s.k == 0 { Some(0) } else { Some((1u64 << s.k) - 1) };
        SpherePoints { next, limit: 1u64 << s.n }
    }
}

impl Iterator for SpherePoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let v = self.next?;
        if v >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if v == 0 {
            None
        } else {
            let c = v & v.wrapping_neg();
            let r = v + c;
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(Point(v))
    }
}

/// All `C(n, k)` points of the sphere, strictly increasing.
pub fn sphere_points(s: SphereSpec) -> Vec<Point> {
    let mut out = Vec::with_capacity(s.size() as usize);
    out.extend(SpherePoints::new(s));
    out
}

/// A coordinate pair `i < j`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairIndex {
    i: u32,
    j: u32,
}

impl PairIndex {
    pub fn new(i: u32, j: u32, n: u32) -> Result<Self> {
        if i < 1 || i >= j || j > n || n > MAX_DIM {
            return Err(Error::InvalidPair { i, j, n });
        }
        Ok(PairIndex { i, j })
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// `e_i + e_j` as a mask.
    #[inline]
    pub fn mask(&self) -> u64 {
        (1u64 << (self.i - 1)) | (1u64 << (self.j - 1))
    }

    #[inline]
    pub fn e_i(&self) -> Point {
        Point(1u64 << (self.i - 1))
    }

    #[inline]
    pub fn e_j(&self) -> Point {
        Point(1u64 << (self.j - 1))
    }

    pub fn fits(&self, n: u32) -> bool {
        self.j <= n
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// All pairs `(i, j)` with `1 <= i < j <= n` in lexicographic order.
pub fn pairs(n: u32) -> impl Iterator<Item = PairIndex> {
    (1..=n).flat_map(move |i| ((i + 1)..=n).map(move |j| PairIndex { i, j }))
}

/// Whether coordinates `i` and `j` of a point agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairParity {
    /// `<x, e_i + e_j> = 0`
    Equal,
    /// `<x, e_i + e_j> = 1`
    Differ,
}

#[inline]
pub fn pair_parity(x: Point, p: PairIndex) -> PairParity {
    if (x.0 & p.mask()).count_ones() == 1 {
        PairParity::Differ
    } else {
        PairParity::Equal
    }
}

/// `x + e_i + e_j`.
#[inline]
pub fn flip_pair(x: Point, p: PairIndex) -> Point {
    Point(x.0 ^ p.mask())
}

/// Canonical representative of the coset of `ker pi_ij` containing `x`:
/// `x` with coordinates `i` and `j` cleared.
#[inline]
pub fn project_pair(x: Point, p: PairIndex) -> Point {
    Point(x.0 & !p.mask())
}

#[inline]
pub fn is_canonical(x: Point, p: PairIndex) -> bool {
    x.0 & p.mask() == 0
}

/// The coset `{b, b+e_i, b+e_j, b+e_i+e_j}` of the representative of `x`.
#[inline]
pub fn coset(x: Point, p: PairIndex) -> [Point; 4] {
    let b = project_pair(x, p);
    [b, b + p.e_i(), b + p.e_j(), b + p.e_i() + p.e_j()]
}

/// Compact membership bitmap over F_2^n.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(n: u32) -> Self {
        Bitmap(vec![0; space_size(n).div_ceil(64)])
    }

    #[inline]
    fn get(&self, x: u64) -> bool {
        (self.0[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    /// Sets the bit, returning its previous value.
    #[inline]
    fn set(&mut self, x: u64) -> bool {
        let w = &mut self.0[(x >> 6) as usize];
        let m = 1u64 << (x & 63);
        let old = *w & m != 0;
        *w |= m;
        old
    }
}

/// Whether `S(n, k)` is connected under `v ~ v + e_i + e_j`, by BFS.
pub fn sphere_connected(s: SphereSpec) -> bool {
    let total = s.size() as usize;
    let start = match SpherePoints::new(s).next() {
        Some(p) => p,
        None => return true,
    };
    let mut seen = Bitmap::new(s.n);
    seen.set(start.0);
    let mut queue = VecDeque::from([start]);
    let mut reached = 1usize;
    while let Some(v) = queue.pop_front() {
        for p in pairs(s.n) {
            if pair_parity(v, p) != PairParity::Differ {
                continue;
            }
            let w = flip_pair(v, p);
            if !seen.set(w.0) {
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == total
}

/// A duplicate-free set of points of F_2^n, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    n: u32,
    points: Vec<Point>,
    members: Bitmap,
}

impl PointSet {
    /// Builds a set, rejecting out-of-range and duplicate points.
    pub fn new(n: u32, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        check_dim(n)?;
        let mut members = Bitmap::new(n);
        let mut pts = Vec::new();
        for p in points {
            if !p.is_valid_for(n) {
                return Err(Error::InvalidPoint { bits: p.0, n });
            }
            if members.set(p.0) {
                return Err(Error::DuplicatePoint { bits: p.0 });
            }
            pts.push(p);
        }
        pts.sort_unstable();
        Ok(PointSet { n, points: pts, members })
    }

    pub fn sphere(s: SphereSpec) -> Self {
        PointSet::new(s.n, SpherePoints::new(s)).expect("sphere points are valid and distinct")
    }

    pub fn full(n: u32) -> Result<Self> {
        check_dim(n)?;
        PointSet::new(n, (0..space_size(n) as u64).map(Point))
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn contains(&self, x: Point) -> bool {
        x.is_valid_for(self.n) && self.members.get(x.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(i: u32, j: u32) -> PairIndex {
        PairIndex::new(i, j, 24).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(weight(Point(0b0000)), 0);
        assert_eq!(weight(Point(0b1011)), 3);
        assert_eq!(weight(Point::new(0b1111, 4).unwrap()), 4);
    }

    #[test]
    fn sphere_enumeration_examples() {
        let s = |n, k| sphere_points(SphereSpec::new(n, k).unwrap());
        assert_eq!(s(3, 2), vec![Point(0b011), Point(0b101), Point(0b110)]);
        assert_eq!(s(3, 0), vec![Point(0)]);
        assert_eq!(s(4, 1), vec![Point(1), Point(2), Point(4), Point(8)]);
        assert_eq!(s(4, 4), vec![Point(0b1111)]);
        assert_eq!(s(0, 0), vec![Point(0)]);
    }

    #[test]
    fn sphere_sizes_and_order_exhaustive() {
        for n in 0..=14 {
            for k in 0..=n {
                let s = SphereSpec::new(n, k).unwrap();
                let pts = sphere_points(s);
                assert_eq!(pts.len() as u64, s.size(), "{s}");
                assert!(pts.iter().all(|p| p.weight() == k && p.is_valid_for(n)));
                assert!(pts.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(SphereSpec::new(3, 4).is_err());
        assert!(SphereSpec::new(25, 1).is_err());
        assert!(PairIndex::new(2, 2, 4).is_err());
        assert!(PairIndex::new(0, 2, 4).is_err());
        assert!(PairIndex::new(1, 5, 4).is_err());
        assert!(Point::new(0b100, 2).is_err());
    }

    #[test]
    fn pair_examples() {
        let p = pair(1, 2);
        assert_eq!(pair_parity(Point(0b01), p), PairParity::Differ);
        assert_eq!(pair_parity(Point(0b11), p), PairParity::Equal);
        assert_eq!(pair_parity(Point(0b00), p), PairParity::Equal);
        assert_eq!(flip_pair(Point(0b01), p), Point(0b10));
        assert_eq!(flip_pair(Point(0b11), p), Point(0b00));
        assert_eq!(project_pair(Point(0b111), p), Point(0b100));
        assert_eq!(project_pair(Point(0b100), p), Point(0b100));
        let mut c = coset(Point(0b01), p);
        c.sort();
        assert_eq!(c, [Point(0), Point(1), Point(2), Point(3)]);
    }

    #[test]
    fn pairs_are_lexicographic() {
        let v: Vec<_> = pairs(4).map(|p| (p.i(), p.j())).collect();
        assert_eq!(v, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(pairs(1).count(), 0);
        assert_eq!(pairs(0).count(), 0);
    }

    #[test]
    fn connectivity_examples() {
        assert!(sphere_connected(SphereSpec::new(3, 1).unwrap()));
        assert!(sphere_connected(SphereSpec::new(5, 0).unwrap()));
        assert!(sphere_connected(SphereSpec::new(12, 6).unwrap()));
    }

    #[test]
    fn every_sphere_up_to_14_is_connected() {
        for n in 0..=14 {
            for k in 0..=n {
                assert!(sphere_connected(SphereSpec::new(n, k).unwrap()), "S({n},{k})");
            }
        }
    }

    #[test]
    fn point_set_validation() {
        assert!(matches!(
            PointSet::new(2, [Point(1), Point(1)]),
            Err(Error::DuplicatePoint { .. })
        ));
        assert!(matches!(
            PointSet::new(2, [Point(4)]),
            Err(Error::InvalidPoint { .. })
        ));
        let s = PointSet::new(3, [Point(5), Point(1)]).unwrap();
        assert_eq!(s.points(), &[Point(1), Point(5)]);
        assert!(s.contains(Point(5)) && !s.contains(Point(4)) && !s.contains(Point(9)));
    }

    #[test]
    fn bitstrings() {
        assert_eq!(Point(0b0011).to_bitstring(4), "0011");
        assert_eq!(Point(0).to_bitstring(0), "");
    }

    fn point_and_pair() -> impl Strategy<Value = (u32, Point, PairIndex)> {
        (2u32..=24).prop_flat_map(|n| {
            (Just(n), 0u64..(1u64 << n), 1..n).prop_flat_map(|(n, x, i)| {
                ((i + 1)..=n).prop_map(move |j| (n, Point(x), PairIndex::new(i, j, n).unwrap()))
            })
        })
    }

    proptest! {
        #[test]
        fn flip_preserves_weight_iff_differ((_n, x, p) in point_and_pair()) {
            let y = flip_pair(x, p);
            prop_assert_eq!(flip_pair(y, p), x);
            prop_assert_eq!(y.weight() == x.weight(), pair_parity(x, p) == PairParity::Differ);
        }

        #[test]
        fn representative_plus_e_i_is_in_pair((_n, x, p) in point_and_pair()) {
            let b = project_pair(x, p);
            prop_assert!(is_canonical(b, p));
            prop_assert!(coset(x, p).contains(&x));
            if pair_parity(x, p) == PairParity::Differ {
                let y = b + p.e_i();
                prop_assert!(y == x || y == flip_pair(x, p));
            }
        }
    }
}
