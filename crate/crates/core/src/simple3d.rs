//! (26,6) simple voxels from 3D connectivity numbers.
//!
//! The default predicate evaluates the connectivity numbers of the 3x3x3
//! neighborhood on every query, using fixed-size bitmask flood fills. An
//! optional table over all 2^26 configurations (8 MiB) can be filled eagerly
//! or memoized lazily; both answer exactly like the on-the-fly path.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::image::{BinaryImage3, Point3, C26};
use crate::par::{self, Execution};
use crate::thinning::SimplePredicate;

/// Bit `i` is the state of the `i`-th [`C26`] offset (lexicographic order).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Config26(pub u32);

pub const CONFIG26_COUNT: usize = 1 << 26;

impl Config26 {
    #[inline]
    pub fn of(image: &BinaryImage3, p: Point3) -> Self {
        let mut mask = 0u32;
        for (i, &d) in C26.offsets().iter().enumerate() {
            if image.get_clamped(p.offset(d)) {
                mask |= 1 << i;
            }
        }
        Config26(mask)
    }
}

const OFFS: [[i32; 3]; 26] = {
    let mut out = [[0i32; 3]; 26];
    let mut n = 0;
    let mut a = -1;
    while a <= 1 {
        let mut b = -1;
        while b <= 1 {
            let mut c = -1;
            while c <= 1 {
                if a != 0 || b != 0 || c != 0 {
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
};

const fn nonzero(o: [i32; 3]) -> u32 {
    (o[0] != 0) as u32 + (o[1] != 0) as u32 + (o[2] != 0) as u32
}

const fn abs(x: i32) -> i32 {
    if x < 0 {
        -x
    } else {
        x
    }
}

const fn adjacency(six: bool) -> [u32; 26] {
    let mut adj = [0u32; 26];
    let mut i = 0;
    while i < 26 {
        let mut j = 0;
        while j < 26 {
            let dz = abs(OFFS[i][0] - OFFS[j][0]);
            let dy = abs(OFFS[i][1] - OFFS[j][1]);
            let dx = abs(OFFS[i][2] - OFFS[j][2]);
            let ok = if six {
                dz + dy + dx == 1
            } else {
                i != j && dz <= 1 && dy <= 1 && dx <= 1
            };
            if ok {
                adj[i] |= 1 << j;
            }
            j += 1;
        }
        i += 1;
    }
    adj
}

const fn positions(max_nonzero: u32) -> u32 {
    let mut m = 0u32;
    let mut i = 0;
    while i < 26 {
        if nonzero(OFFS[i]) <= max_nonzero {
            m |= 1 << i;
        }
        i += 1;
    }
    m
}

const ADJ26: [u32; 26] = adjacency(false);
const ADJ6: [u32; 26] = adjacency(true);
const FACE_POSITIONS: u32 = positions(1);
const N18_POSITIONS: u32 = positions(2);
const ALL26: u32 = (1 << 26) - 1;

fn count_components(set: u32, adj: &[u32; 26], anchor: u32) -> u32 {
    let mut remaining = set;
    let mut count = 0;
    while remaining != 0 {
        let mut comp = remaining & remaining.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            let mut bits = frontier;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= adj[i];
            }
            next &= set & !comp;
            comp |= next;
            frontier = next;
        }
        remaining &= !comp;
        if comp & anchor != 0 {
            count += 1;
        }
    }
    count
}

/// `(T26, T6)`: the number of 26-components of the foreground in the
/// 26-neighborhood, and the number of 6-components of the background in the
/// 18-neighborhood that are 6-adjacent to the center.
pub fn connectivity_numbers_3d(mask: Config26) -> (u32, u32) {
    let fg = mask.0 & ALL26;
    let bg = !mask.0 & N18_POSITIONS;
    (count_components(fg, &ADJ26, ALL26), count_components(bg, &ADJ6, FACE_POSITIONS))
}

#[inline]
pub fn is_simple_config26(mask: Config26) -> bool {
    let fg = mask.0 & ALL26;
    // Cheap rejections before the flood fills.
    if fg == 0 || (!fg & FACE_POSITIONS) == 0 {
        return false;
    }
    connectivity_numbers_3d(mask) == (1, 1)
}

const WORDS: usize = CONFIG26_COUNT / 64;

/// Table of simple configurations over all 2^26 masks.
pub enum Lut3d {
    Eager(Vec<u64>),
    Lazy { known: Vec<AtomicU64>, simple: Vec<AtomicU64> },
}

impl std::fmt::Debug for Lut3d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Lut3d::Eager(_) => write!(f, "Lut3d::Eager"),
            Lut3d::Lazy { .. } => write!(f, "Lut3d::Lazy"),
        }
    }
}

impl Lut3d {
    /// Evaluates every configuration up front.
    pub fn eager(exec: Execution) -> Self {
        let mut words = vec![0u64; WORDS];
        par::fill(&mut words, exec, |w, slot| {
            let base = (w as u32) << 6;
            let mut bits = 0u64;
            for k in 0..64 {
                if is_simple_config26(Config26(base | k)) {
                    bits |= 1 << k;
                }
            }
            *slot = bits;
        });
        Lut3d::Eager(words)
    }

    /// Empty memo table, filled on demand. Safe to share between threads.
    pub fn lazy() -> Self {
        let known = (0..WORDS).map(|_| AtomicU64::new(0)).collect();
        let simple = (0..WORDS).map(|_| AtomicU64::new(0)).collect();
        Lut3d::Lazy { known, simple }
    }

    #[inline]
    pub fn is_simple(&self, mask: Config26) -> bool {
        let m = (mask.0 & ALL26) as usize;
        let (w, bit) = (m >> 6, 1u64 << (m & 63));
        match self {
            Lut3d::Eager(words) => words[w] & bit != 0,
            Lut3d::Lazy { known, simple } => {
                if known[w].load(Ordering::Acquire) & bit != 0 {
                    return simple[w].load(Ordering::Relaxed) & bit != 0;
                }
                let v = is_simple_config26(Config26(m as u32));
                if v {
                    simple[w].fetch_or(bit, Ordering::Relaxed);
                }
                known[w].fetch_or(bit, Ordering::Release);
                v
            }
        }
    }

    /// Table size in bytes (value plane only).
    pub fn size_bytes(&self) -> usize {
        WORDS * 8
    }
}

/// (26,6) simple-point predicate for binary volumes.
#[derive(Clone, Debug, Default)]
pub struct SimplePoint3d {
    table: Option<Arc<Lut3d>>,
}

impl SimplePoint3d {
    /// On-the-fly connectivity numbers.
    pub fn new() -> Self {
        SimplePoint3d { table: None }
    }

    pub fn with_lut(table: Arc<Lut3d>) -> Self {
        SimplePoint3d { table: Some(table) }
    }

    pub fn uses_lut(&self) -> bool {
        self.table.is_some()
    }
}

impl SimplePredicate<BinaryImage3> for SimplePoint3d {
    #[inline]
    fn is_simple(&self, p: Point3, image: &BinaryImage3) -> bool {
        if !image.get_clamped(p) {
            return false;
        }
        let mask = Config26::of(image, p);
        match &self.table {
            Some(t) => t.is_simple(mask),
            None => is_simple_config26(mask),
        }
    }
}

/// `false` for background sites. `lut` selects the table path.
pub fn is_simple_point3d(p: Point3, image: &BinaryImage3, lut: Option<&Lut3d>) -> bool {
    if !image.get_clamped(p) {
        return false;
    }
    let mask = Config26::of(image, p);
    match lut {
        Some(t) => t.is_simple(mask),
        None => is_simple_config26(mask),
    }
}
