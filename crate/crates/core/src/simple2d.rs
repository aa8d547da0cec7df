//! 2D simple points from connectivity numbers, tabulated over all 256
//! configurations of the 8-neighborhood.

use crate::image::{BinaryGridImage, BinaryImage2, GridNeighborhood, Point, Point2, C8};
use crate::thinning::{Detach, SimplePredicate, SitePredicate};

/// Foreground/background adjacency pair on the square grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connectivity2 {
    /// 4-connected foreground, 8-connected background.
    Four,
    /// 8-connected foreground, 4-connected background.
    Eight,
}

impl Connectivity2 {
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            4 => Some(Connectivity2::Four),
            8 => Some(Connectivity2::Eight),
            _ => None,
        }
    }
}

/// Bit `i` is the state of the `i`-th [`C8`] offset:
/// `(-1,-1) (-1,0) (-1,1) (0,-1) (0,1) (1,-1) (1,0) (1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config8(pub u8);

impl Config8 {
    /// Encodes the clamped-read 8-neighborhood of `p`.
    #[inline]
    pub fn of(image: &BinaryImage2, p: Point2) -> Self {
        Self::from_fn(|d| image.get_clamped(p.offset(d)))
    }

    #[inline]
    pub fn from_fn(mut f: impl FnMut([i32; 2]) -> bool) -> Self {
        let mut mask = 0u8;
        for (i, &d) in C8.offsets().iter().enumerate() {
            if f(d) {
                mask |= 1 << i;
            }
        }
        Config8(mask)
    }

    #[inline]
    pub fn bit(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
}

// Ring adjacency between C8 positions, as bitmasks over the same indices.
const fn ring_adjacency(eight: bool) -> [u8; 8] {
    let offs = [[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]];
    let mut adj = [0u8; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            let dr = offs[i][0] - offs[j][0];
            let dc = offs[i][1] - offs[j][1];
            let (ar, ac) = (if dr < 0 { -dr } else { dr }, if dc < 0 { -dc } else { dc });
            let adjacent = if eight { ar <= 1 && ac <= 1 && ar + ac > 0 } else { ar + ac == 1 };
            if adjacent {
                adj[i] |= 1 << j;
            }
            j += 1;
        }
        i += 1;
    }
    adj
}

const RING_ADJ4: [u8; 8] = ring_adjacency(false);
const RING_ADJ8: [u8; 8] = ring_adjacency(true);
// Positions 4-adjacent to the center: (-1,0) (0,-1) (0,1) (1,0).
const CENTER_ADJ4: u8 = 0b0101_1010;

/// Number of components of `set` under `adj` that intersect `anchor`.
fn count_components(set: u8, adj: &[u8; 8], anchor: u8) -> u32 {
    let mut remaining = set;
    let mut count = 0;
    while remaining != 0 {
        let seed = remaining & remaining.wrapping_neg();
        let mut comp = seed;
        loop {
            let mut grown = comp;
            let mut bits = comp;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= adj[i] & set;
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        remaining &= !comp;
        if comp & anchor != 0 {
            count += 1;
        }
    }
    count
}

/// Connectivity numbers `(T_fg, T_bg)` of a center pixel with the given
/// neighborhood configuration.
///
/// `T_fg` counts the foreground components of the 8-neighborhood that are
/// adjacent to the center under the foreground adjacency; `T_bg` does the
/// same for the background under the dual adjacency.
pub fn connectivity_numbers_2d(mask: Config8, conn: Connectivity2) -> (u32, u32) {
    let fg = mask.0;
    let bg = !mask.0;
    match conn {
        Connectivity2::Four => {
            (count_components(fg, &RING_ADJ4, CENTER_ADJ4), count_components(bg, &RING_ADJ8, 0xff))
        }
        Connectivity2::Eight => {
            (count_components(fg, &RING_ADJ8, 0xff), count_components(bg, &RING_ADJ4, CENTER_ADJ4))
        }
    }
}

/// 256-entry simple-point table, packed into 32 bytes.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleLut2D {
    bits: [u8; 32],
    conn: Connectivity2,
}

impl std::fmt::Debug for SimpleLut2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleLut2D({:?}, {} simple)", self.conn, self.count_simple())
    }
}

pub fn build_simple_lut_2d(conn: Connectivity2) -> SimpleLut2D {
    let mut bits = [0u8; 32];
    for m in 0..=255u8 {
        if connectivity_numbers_2d(Config8(m), conn) == (1, 1) {
            bits[m as usize / 8] |= 1 << (m % 8);
        }
    }
    SimpleLut2D { bits, conn }
}

impl SimpleLut2D {
    #[inline]
    pub fn is_simple(&self, mask: Config8) -> bool {
        self.bits[mask.0 as usize / 8] >> (mask.0 % 8) & 1 == 1
    }

    pub fn connectivity(&self) -> Connectivity2 {
        self.conn
    }

    /// Bit `k` of byte `j` is the verdict for mask `8j + k`.
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.bits
    }

    pub fn count_simple(&self) -> u32 {
        self.bits.iter().map(|b| b.count_ones()).sum()
    }
}

/// Simple-point predicate for binary 2D images backed by a [`SimpleLut2D`].
#[derive(Clone, Copy, Debug)]
pub struct SimplePoint2d {
    lut: SimpleLut2D,
}

impl SimplePoint2d {
    pub fn new(conn: Connectivity2) -> Self {
        SimplePoint2d { lut: build_simple_lut_2d(conn) }
    }

    pub fn with_lut(lut: SimpleLut2D) -> Self {
        SimplePoint2d { lut }
    }

    pub fn lut(&self) -> &SimpleLut2D {
        &self.lut
    }
}

impl SimplePredicate<BinaryImage2> for SimplePoint2d {
    #[inline]
    fn is_simple(&self, p: Point2, image: &BinaryImage2) -> bool {
        is_simple_point2d(p, image, &self.lut)
    }
}

/// `false` for background sites.
#[inline]
pub fn is_simple_point2d(p: Point2, image: &BinaryImage2, lut: &SimpleLut2D) -> bool {
    image.get_clamped(p) && lut.is_simple(Config8::of(image, p))
}

/// Detaches a grid site by setting it to `false`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DetachPoint;

impl<const D: usize> Detach<BinaryGridImage<D>> for DetachPoint {
    #[inline]
    fn detach(&mut self, p: Point<D>, image: &mut BinaryGridImage<D>) {
        detach_point(p, image);
    }
}

#[inline]
pub fn detach_point<const D: usize>(p: Point<D>, image: &mut BinaryGridImage<D>) {
    image.set(p, false);
}

/// Number of foreground neighbors of `p` under `nbh` (clamped reads).
pub fn count_neighbors<const D: usize>(
    p: Point<D>,
    nbh: &GridNeighborhood<D>,
    image: &BinaryGridImage<D>,
) -> usize {
    nbh.offsets().iter().filter(|&&d| image.get_clamped(p.offset(d))).count()
}

/// Constraint keeping the end points of a reference image: a site fails it
/// iff it has exactly one foreground neighbor in the reference.
#[derive(Clone, Debug)]
pub struct NotEndPoint<const D: usize> {
    nbh: GridNeighborhood<D>,
    reference: BinaryGridImage<D>,
}

impl<const D: usize> NotEndPoint<D> {
    pub fn new(nbh: GridNeighborhood<D>, reference: BinaryGridImage<D>) -> Self {
        NotEndPoint { nbh, reference }
    }
}

impl<const D: usize> SitePredicate<Point<D>> for NotEndPoint<D> {
    fn test(&self, p: Point<D>) -> bool {
        is_not_end_point(p, &self.nbh, &self.reference)
    }
}

/// A site with zero neighbors is not an end point.
pub fn is_not_end_point<const D: usize>(
    p: Point<D>,
    nbh: &GridNeighborhood<D>,
    reference: &BinaryGridImage<D>,
) -> bool {
    count_neighbors(p, nbh, reference) != 1
}

/// Foreground sites of `image` with exactly one foreground neighbor.
pub fn end_points<const D: usize>(
    image: &BinaryGridImage<D>,
    nbh: &GridNeighborhood<D>,
) -> Vec<Point<D>> {
    image.foreground().filter(|&p| count_neighbors(p, nbh, image) == 1).collect()
}
