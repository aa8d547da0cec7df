//! Sites, domains, neighborhoods and binary grid images.
//!
//! Every algorithm in this crate is written against two small abstractions:
//! [`SiteImage`], an image whose domain can be enumerated in a fixed order
//! and whose sites can be mapped to dense indices, and [`Neighborhood`], a
//! function from a site to an ordered list of neighboring sites. Regular 2D
//! and 3D grids implement both here; cell complexes implement them in
//! [`crate::complex`].

use std::fmt;

/// A site of a `D`-dimensional regular grid.
///
/// For 2D images the coordinates are `[row, col]`; for 3D volumes they are
/// `[z, y, x]`. The derived ordering is lexicographic over the coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<const D: usize>(pub [i32; D]);

pub type Point2 = Point<2>;
pub type Point3 = Point<3>;

impl<const D: usize> Point<D> {
    pub const fn new(coords: [i32; D]) -> Self {
        Point(coords)
    }

    #[inline]
    pub fn offset(self, delta: [i32; D]) -> Self {
        let mut c = self.0;
        for i in 0..D {
            c[i] += delta[i];
        }
        Point(c)
    }
}

impl<const D: usize> std::ops::Index<usize> for Point<D> {
    type Output = i32;
    fn index(&self, axis: usize) -> &i32 {
        &self.0[axis]
    }
}

impl<const D: usize> fmt::Debug for Point<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An axis-aligned box with inclusive bounds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GridBox<const D: usize> {
    min: Point<D>,
    max: Point<D>,
}

pub type Box2 = GridBox<2>;
pub type Box3 = GridBox<3>;

impl<const D: usize> GridBox<D> {
    /// Panics if `min[i] > max[i]` on some axis.
    pub fn new(min: Point<D>, max: Point<D>) -> Self {
        for i in 0..D {
            assert!(min[i] <= max[i], "invalid box: min {min:?} > max {max:?} on axis {i}");
        }
        GridBox { min, max }
    }

    /// Box anchored at the origin with the given extent per axis (each > 0).
    pub fn with_shape(shape: [usize; D]) -> Self {
        let mut max = [0i32; D];
        for i in 0..D {
            assert!(shape[i] > 0, "box extent must be positive");
            max[i] = shape[i] as i32 - 1;
        }
        GridBox::new(Point([0; D]), Point(max))
    }

    pub fn min(&self) -> Point<D> {
        self.min
    }

    pub fn max(&self) -> Point<D> {
        self.max
    }

    pub fn shape(&self) -> [usize; D] {
        std::array::from_fn(|i| (self.max[i] - self.min[i] + 1) as usize)
    }

    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, p: Point<D>) -> bool {
        (0..D).all(|i| self.min[i] <= p[i] && p[i] <= self.max[i])
    }

    /// Row-major linear index (last axis fastest). `p` must be inside the box.
    #[inline]
    pub fn index_of(&self, p: Point<D>) -> usize {
        let mut idx = 0usize;
        for i in 0..D {
            let extent = (self.max[i] - self.min[i] + 1) as usize;
            idx = idx * extent + (p[i] - self.min[i]) as usize;
        }
        idx
    }

    pub fn point_at(&self, mut index: usize) -> Point<D> {
        let shape = self.shape();
        let mut c = [0i32; D];
        for i in (0..D).rev() {
            c[i] = self.min[i] + (index % shape[i]) as i32;
            index /= shape[i];
        }
        Point(c)
    }

    /// Same box grown by `margin` sites on every side.
    pub fn inflate(&self, margin: i32) -> Self {
        let mut lo = self.min.0;
        let mut hi = self.max.0;
        for i in 0..D {
            lo[i] -= margin;
            hi[i] += margin;
        }
        GridBox::new(Point(lo), Point(hi))
    }

    /// Every site exactly once, row-major, last axis fastest.
    pub fn iter(&self) -> BoxIter<D> {
        BoxIter { bounds: *self, next: Some(self.min) }
    }
}

impl<const D: usize> IntoIterator for &GridBox<D> {
    type Item = Point<D>;
    type IntoIter = BoxIter<D>;
    fn into_iter(self) -> BoxIter<D> {
        self.iter()
    }
}

pub struct BoxIter<const D: usize> {
    bounds: GridBox<D>,
    next: Option<Point<D>>,
}

impl<const D: usize> Iterator for BoxIter<D> {
    type Item = Point<D>;

    fn next(&mut self) -> Option<Point<D>> {
        let current = self.next?;
        let mut c = current.0;
        let mut axis = D;
        self.next = loop {
            if axis == 0 {
                break None;
            }
            axis -= 1;
            if c[axis] < self.bounds.max[axis] {
                c[axis] += 1;
                break Some(Point(c));
            }
            c[axis] = self.bounds.min[axis];
        };
        Some(current)
    }
}

/// A function from a site to a finite, deterministically ordered sequence
/// of sites, never including the site itself. No domain filtering is done.
pub trait Neighborhood<S> {
    fn for_each_neighbor<F: FnMut(S)>(&self, site: S, f: F);

    fn neighbors(&self, site: S) -> Vec<S> {
        let mut out = Vec::new();
        self.for_each_neighbor(site, |n| out.push(n));
        out
    }
}

impl<S, N: Neighborhood<S>> Neighborhood<S> for &N {
    fn for_each_neighbor<F: FnMut(S)>(&self, site: S, f: F) {
        (**self).for_each_neighbor(site, f)
    }
}

/// A grid neighborhood given by a symmetric offset list, sorted
/// lexicographically.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GridNeighborhood<const D: usize> {
    offsets: &'static [[i32; D]],
}

impl<const D: usize> GridNeighborhood<D> {
    pub fn offsets(&self) -> &'static [[i32; D]] {
        self.offsets
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }
}

impl<const D: usize> fmt::Debug for GridNeighborhood<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.offsets.len())
    }
}

impl<const D: usize> Neighborhood<Point<D>> for GridNeighborhood<D> {
    #[inline]
    fn for_each_neighbor<F: FnMut(Point<D>)>(&self, site: Point<D>, mut f: F) {
        for &d in self.offsets {
            f(site.offset(d));
        }
    }
}

const C4_OFFSETS: [[i32; 2]; 4] = [[-1, 0], [0, -1], [0, 1], [1, 0]];

const C8_OFFSETS: [[i32; 2]; 8] =
    [[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]];

const C6_OFFSETS: [[i32; 3]; 6] =
    [[-1, 0, 0], [0, -1, 0], [0, 0, -1], [0, 0, 1], [0, 1, 0], [1, 0, 0]];

const fn cube_offsets<const N: usize>(max_nonzero: usize) -> [[i32; 3]; N] {
    let mut out = [[0i32; 3]; N];
    let mut n = 0;
    let mut a = -1;
    while a <= 1 {
        let mut b = -1;
        while b <= 1 {
            let mut c = -1;
            while c <= 1 {
                let nz = (a != 0) as usize + (b != 0) as usize + (c != 0) as usize;
                if nz > 0 && nz <= max_nonzero {
                    out[n] = [a, b, c];
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

const C18_OFFSETS: [[i32; 3]; 18] = cube_offsets::<18>(2);
const C26_OFFSETS: [[i32; 3]; 26] = cube_offsets::<26>(3);

/// 4-connectivity on the square grid.
pub const C4: GridNeighborhood<2> = GridNeighborhood { offsets: &C4_OFFSETS };
/// 8-connectivity on the square grid.
pub const C8: GridNeighborhood<2> = GridNeighborhood { offsets: &C8_OFFSETS };
/// 6-connectivity (face neighbors) on the cubic grid.
pub const C6: GridNeighborhood<3> = GridNeighborhood { offsets: &C6_OFFSETS };
/// 18-connectivity (face and edge neighbors) on the cubic grid.
pub const C18: GridNeighborhood<3> = GridNeighborhood { offsets: &C18_OFFSETS };
/// 26-connectivity on the cubic grid.
pub const C26: GridNeighborhood<3> = GridNeighborhood { offsets: &C26_OFFSETS };

/// An image whose domain can be enumerated and densely indexed, with a
/// notion of foreground membership. This is what the thinning canvas needs.
pub trait SiteImage: Clone {
    type Site: Copy + Eq;

    /// The iteration domain, in a fixed order.
    fn sites(&self) -> impl Iterator<Item = Self::Site> + '_;

    /// Whether `s` belongs to the iteration domain.
    fn has(&self, s: Self::Site) -> bool;

    /// Dense index of a site of the domain, in `0..self.index_bound()`.
    fn site_index(&self, s: Self::Site) -> usize;

    fn index_bound(&self) -> usize;

    /// Membership in the foreground set being thinned. `s` must be in the
    /// domain.
    fn is_foreground(&self, s: Self::Site) -> bool;
}

/// A boolean image on a box of the `D`-dimensional grid, one byte per site.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryGridImage<const D: usize> {
    domain: GridBox<D>,
    values: Vec<bool>,
}

pub type BinaryImage2 = BinaryGridImage<2>;
pub type BinaryImage3 = BinaryGridImage<3>;

impl<const D: usize> BinaryGridImage<D> {
    /// All-background image.
    pub fn new(domain: GridBox<D>) -> Self {
        BinaryGridImage { values: vec![false; domain.len()], domain }
    }

    pub fn from_fn(domain: GridBox<D>, mut f: impl FnMut(Point<D>) -> bool) -> Self {
        let values = domain.iter().map(&mut f).collect();
        BinaryGridImage { domain, values }
    }

    /// Values in row-major order. Panics on length mismatch.
    pub fn from_vec(domain: GridBox<D>, values: Vec<bool>) -> Self {
        assert_eq!(values.len(), domain.len(), "value count does not match domain");
        BinaryGridImage { domain, values }
    }

    pub fn domain(&self) -> GridBox<D> {
        self.domain
    }

    /// Panics outside the domain.
    #[inline]
    pub fn get(&self, p: Point<D>) -> bool {
        assert!(self.domain.contains(p), "read outside domain at {p:?}");
        self.values[self.domain.index_of(p)]
    }

    /// Background extension: `false` outside the domain.
    #[inline]
    pub fn get_clamped(&self, p: Point<D>) -> bool {
        self.domain.contains(p) && self.values[self.domain.index_of(p)]
    }

    /// Panics outside the domain.
    #[inline]
    pub fn set(&mut self, p: Point<D>, v: bool) {
        assert!(self.domain.contains(p), "write outside domain at {p:?}");
        let i = self.domain.index_of(p);
        self.values[i] = v;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn count_foreground(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    pub fn foreground(&self) -> impl Iterator<Item = Point<D>> + '_ {
        self.domain.iter().zip(&self.values).filter(|(_, &v)| v).map(|(p, _)| p)
    }

    pub fn complement(&self) -> Self {
        BinaryGridImage { domain: self.domain, values: self.values.iter().map(|v| !v).collect() }
    }

    /// Copy onto a larger domain, background elsewhere.
    pub fn padded(&self, margin: i32) -> Self {
        let domain = self.domain.inflate(margin);
        BinaryGridImage::from_fn(domain, |p| self.get_clamped(p))
    }
}

impl<const D: usize> fmt::Debug for BinaryGridImage<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryGridImage {:?}..{:?}", self.domain.min(), self.domain.max())?;
        if D == 2 {
            let w = self.domain.shape()[D - 1];
            for row in self.values.chunks(w) {
                let line: String = row.iter().map(|&v| if v { '#' } else { '.' }).collect();
                writeln!(f, "{line}")?;
            }
        }
        Ok(())
    }
}

impl<const D: usize> SiteImage for BinaryGridImage<D> {
    type Site = Point<D>;

    fn sites(&self) -> impl Iterator<Item = Point<D>> + '_ {
        self.domain.iter()
    }

    #[inline]
    fn has(&self, s: Point<D>) -> bool {
        self.domain.contains(s)
    }

    #[inline]
    fn site_index(&self, s: Point<D>) -> usize {
        self.domain.index_of(s)
    }

    fn index_bound(&self) -> usize {
        self.values.len()
    }

    #[inline]
    fn is_foreground(&self, s: Point<D>) -> bool {
        self.values[self.domain.index_of(s)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn box_iteration_order() {
        let b = Box2::new(Point([0, 0]), Point([0, 1]));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![Point([0, 0]), Point([0, 1])]);

        let b = Box2::new(Point([0, 0]), Point([1, 1]));
        let sites: Vec<_> = b.iter().collect();
        assert_eq!(sites.len(), 4);
        assert_eq!(sites[0], Point([0, 0]));
        assert_eq!(sites[1], Point([0, 1]));
        assert_eq!(sites[3], Point([1, 1]));
    }

    #[test]
    fn box_41_cube() {
        let b = Box3::new(Point([0, 0, 0]), Point([40, 40, 40]));
        assert_eq!(b.iter().count(), 68_921);
        assert_eq!(b.len(), 68_921);
    }

    #[test]
    fn box_index_matches_iteration() {
        let b = Box3::new(Point([-1, 2, 0]), Point([1, 4, 3]));
        for (i, p) in b.iter().enumerate() {
            assert_eq!(b.index_of(p), i);
            assert_eq!(b.point_at(i), p);
        }
    }

    #[test]
    #[should_panic]
    fn inverted_box_rejected() {
        Box2::new(Point([1, 0]), Point([0, 0]));
    }

    #[test]
    fn neighborhood_sizes() {
        assert_eq!(C4.len(), 4);
        assert_eq!(C8.len(), 8);
        assert_eq!(C6.len(), 6);
        assert_eq!(C18.len(), 18);
        assert_eq!(C26.len(), 26);
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(
            C4.neighbors(Point([5, 5])),
            vec![Point([4, 5]), Point([5, 4]), Point([5, 6]), Point([6, 5])]
        );
        let n8 = C8.neighbors(Point([0, 0]));
        assert_eq!(n8.len(), 8);
        assert!(n8.contains(&Point([-1, -1])));
        let n6 = C6.neighbors(Point([1, 1, 1]));
        assert_eq!(n6.len(), 6);
        for q in n6 {
            let d: i32 = (0..3).map(|i| (q[i] - 1).abs()).sum();
            assert_eq!(d, 1);
        }
    }

    fn check_offsets<const D: usize>(n: GridNeighborhood<D>) {
        let offs = n.offsets();
        assert!(offs.windows(2).all(|w| w[0] < w[1]), "{n:?} not sorted");
        for o in offs {
            assert!(o.iter().any(|&c| c != 0));
            let neg = o.map(|c| -c);
            assert!(offs.contains(&neg), "{n:?} not symmetric");
        }
    }

    #[test]
    fn offsets_sorted_and_symmetric() {
        check_offsets(C4);
        check_offsets(C8);
        check_offsets(C6);
        check_offsets(C18);
        check_offsets(C26);
    }

    proptest! {
        #[test]
        fn neighborhood_symmetric_2d(r in -50i32..50, c in -50i32..50) {
            let s = Point([r, c]);
            for n in [C4, C8] {
                for t in n.neighbors(s) {
                    prop_assert!(t != s);
                    prop_assert!(n.neighbors(t).contains(&s));
                }
            }
        }

        #[test]
        fn neighborhood_symmetric_3d(z in -9i32..9, y in -9i32..9, x in -9i32..9) {
            let s = Point([z, y, x]);
            for n in [C6, C18, C26] {
                for t in n.neighbors(s) {
                    prop_assert!(t != s);
                    prop_assert!(n.neighbors(t).contains(&s));
                }
            }
        }

        #[test]
        fn write_then_read(vals in proptest::collection::vec(any::<bool>(), 30), idx in 0usize..30, v: bool) {
            let b = Box2::with_shape([5, 6]);
            let mut img = BinaryImage2::from_vec(b, vals.clone());
            let p = b.point_at(idx);
            img.set(p, v);
            prop_assert_eq!(img.get(p), v);
            for (i, q) in b.iter().enumerate() {
                if q != p {
                    prop_assert_eq!(img.get(q), vals[i]);
                }
            }
        }

        #[test]
        fn clamped_read_outside_is_false(vals in proptest::collection::vec(any::<bool>(), 16), r in -20i32..20, c in -20i32..20) {
            let b = Box2::with_shape([4, 4]);
            let img = BinaryImage2::from_vec(b, vals);
            let p = Point([r, c]);
            if !b.contains(p) {
                prop_assert!(!img.get_clamped(p));
            }
        }
    }
}
