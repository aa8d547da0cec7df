//! Brute-force global topology checks.
//!
//! These are deliberately naive: whole-image component labeling and Euler
//! characteristics of cubical complexes. They are the ground truth that the
//! local simple-point characterizations are tested against, and are only
//! meant for desk-scale images.

use petgraph::unionfind::UnionFind;

use crate::complex::{build_cubical_from_binary, ComplexImage};
use crate::image::{BinaryGridImage, BinaryImage2, BinaryImage3, GridNeighborhood, Point2, Point3, C26, C4, C6, C8};

/// Component labels per site in domain order (0 for background, components
/// numbered from 1 in order of first appearance) and the component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<u32>,
    pub count: usize,
}

pub fn label_components<const D: usize>(image: &BinaryGridImage<D>, conn: &GridNeighborhood<D>) -> Labeling {
    let dom = image.domain();
    let values = image.values();
    let mut uf = UnionFind::<usize>::new(values.len());
    for (i, p) in dom.iter().enumerate() {
        if !values[i] {
            continue;
        }
        for &d in conn.offsets() {
            let q = p.offset(d);
            if dom.contains(q) {
                let j = dom.index_of(q);
                if values[j] {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut root_label = vec![0u32; values.len()];
    let mut labels = vec![0u32; values.len()];
    let mut count = 0;
    for i in 0..values.len() {
        if values[i] {
            let r = uf.find(i);
            if root_label[r] == 0 {
                count += 1;
                root_label[r] = count as u32;
            }
            labels[i] = root_label[r];
        }
    }
    Labeling { labels, count }
}

pub fn count_components<const D: usize>(image: &BinaryGridImage<D>, conn: &GridNeighborhood<D>) -> usize {
    label_components(image, conn).count
}

/// Background components of the image padded with one background ring, so
/// that everything outside counts as a single component.
pub fn count_background_components<const D: usize>(
    image: &BinaryGridImage<D>,
    conn: &GridNeighborhood<D>,
) -> usize {
    count_components(&image.padded(1).complement(), conn)
}

/// Euler characteristic of the closed cubical complex spanned by the
/// foreground.
pub fn cubical_euler<const D: usize>(image: &BinaryGridImage<D>) -> i64 {
    let c = build_cubical_from_binary(image);
    ComplexImage::full(c.complex.clone(), D).euler_characteristic()
}

/// Topological summary of a 2D image under the (4,8) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Topology2 {
    pub fg4: usize,
    pub bg8: usize,
}

pub fn topology_2d(image: &BinaryImage2) -> Topology2 {
    Topology2 { fg4: count_components(image, &C4), bg8: count_background_components(image, &C8) }
}

/// Topological summary of a 3D image under the (26,6) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Topology3 {
    pub fg26: usize,
    pub bg6: usize,
    pub euler: i64,
}

pub fn topology_3d(image: &BinaryImage3) -> Topology3 {
    Topology3 {
        fg26: count_components(image, &C26),
        bg6: count_background_components(image, &C6),
        euler: cubical_euler(image),
    }
}

/// Deleting `p` keeps the foreground 4-component count and the background
/// 8-component count.
pub fn oracle_is_simple_2d(p: Point2, image: &BinaryImage2) -> bool {
    if !image.get_clamped(p) {
        return false;
    }
    let mut after = image.clone();
    after.set(p, false);
    topology_2d(image) == topology_2d(&after)
}

/// Deleting `p` keeps the foreground 26-component count, the background
/// 6-component count and the cubical Euler characteristic.
pub fn oracle_is_simple_3d(p: Point3, image: &BinaryImage3) -> bool {
    if !image.get_clamped(p) {
        return false;
    }
    let mut after = image.clone();
    after.set(p, false);
    topology_3d(image) == topology_3d(&after)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{Box2, Box3, Point};
    use crate::simple2d::{build_simple_lut_2d, Config8, Connectivity2};
    use proptest::prelude::*;

    fn image(rows: &[&str]) -> BinaryImage2 {
        BinaryImage2::from_fn(Box2::with_shape([rows.len(), rows[0].len()]), |p| {
            rows[p[0] as usize].as_bytes()[p[1] as usize] == b'#'
        })
    }

    #[test]
    fn labeling_examples() {
        let empty = BinaryImage2::new(Box2::with_shape([4, 4]));
        assert_eq!(count_components(&empty, &C4), 0);
        let diag = image(&["#.", ".#"]);
        assert_eq!(count_components(&diag, &C4), 2);
        assert_eq!(count_components(&diag, &C8), 1);
        let checker = BinaryImage2::from_fn(Box2::with_shape([4, 4]), |p| (p[0] + p[1]) % 2 == 0);
        assert_eq!(count_components(&checker, &C8), 1);
        assert_eq!(count_components(&checker, &C4), 8);
        let l = label_components(&diag, &C4);
        assert_eq!(l.labels, vec![1, 0, 0, 2]);
    }

    #[test]
    fn background_is_padded() {
        let ring = image(&["###", "#.#", "###"]);
        assert_eq!(count_background_components(&ring, &C8), 2);
        let bar = image(&["###"]);
        assert_eq!(count_background_components(&bar, &C8), 1);
    }

    #[test]
    fn oracle_2d_examples() {
        let lone = image(&["...", ".#.", "..."]);
        assert!(!oracle_is_simple_2d(Point([1, 1]), &lone));
        let line = image(&["#####"]);
        assert!(oracle_is_simple_2d(Point([0, 0]), &line));
        assert!(!oracle_is_simple_2d(Point([0, 2]), &line));
    }

    // Every 3x3 configuration, embedded in an empty 5x5 frame.
    #[test]
    fn oracle_matches_lut_exhaustively() {
        let lut = build_simple_lut_2d(Connectivity2::Four);
        for m in 0..=255u8 {
            let cfg = Config8(m);
            let img = BinaryImage2::from_fn(Box2::with_shape([5, 5]), |p| {
                let (r, c) = (p[0] - 2, p[1] - 2);
                if r == 0 && c == 0 {
                    true
                } else if r.abs() <= 1 && c.abs() <= 1 {
                    let i = crate::image::C8.offsets().iter().position(|&d| d == [r, c]).unwrap();
                    cfg.bit(i)
                } else {
                    false
                }
            });
            assert_eq!(oracle_is_simple_2d(Point([2, 2]), &img), lut.is_simple(cfg), "mask {m}");
        }
    }

    #[test]
    fn oracle_3d_examples() {
        let dom = Box3::with_shape([5, 5, 5]);
        let lone = BinaryImage3::from_fn(dom, |p| p == Point([2, 2, 2]));
        assert!(!oracle_is_simple_3d(Point([2, 2, 2]), &lone));
        let bar = BinaryImage3::from_fn(dom, |p| p[0] == 2 && p[1] == 2);
        assert!(oracle_is_simple_3d(Point([2, 2, 0]), &bar));
        assert!(!oracle_is_simple_3d(Point([2, 2, 2]), &bar));
        // A square ring of voxels in one plane: removing any voxel cuts the
        // tunnel, caught only by the Euler characteristic.
        let ring = BinaryImage3::from_fn(Box3::with_shape([3, 3, 3]), |p| p[0] == 1 && !(p[1] == 1 && p[2] == 1));
        let before = topology_3d(&ring);
        assert_eq!((before.fg26, before.bg6, before.euler), (1, 1, 0));
        let mut cut = ring.clone();
        cut.set(Point([1, 0, 1]), false);
        let after = topology_3d(&cut);
        assert_eq!((after.fg26, after.bg6), (before.fg26, before.bg6));
        assert_ne!(after.euler, before.euler);
        assert!(!oracle_is_simple_3d(Point([1, 0, 1]), &ring));
        let block = BinaryImage3::from_fn(dom, |p| (0..3).all(|i| (1..=3).contains(&p[i])));
        assert!(!oracle_is_simple_3d(Point([2, 2, 2]), &block));
    }

    fn transpose(img: &BinaryImage2) -> BinaryImage2 {
        let [h, w] = img.domain().shape();
        BinaryImage2::from_fn(Box2::with_shape([w, h]), |p| img.get(Point([p[1], p[0]])))
    }

    fn flip(img: &BinaryImage2) -> BinaryImage2 {
        let [h, w] = img.domain().shape();
        BinaryImage2::from_fn(Box2::with_shape([h, w]), |p| img.get(Point([h as i32 - 1 - p[0], p[1]])))
    }

    proptest! {
        #[test]
        fn counts_invariant_under_site_order(vals in proptest::collection::vec(any::<bool>(), 42)) {
            let img = BinaryImage2::from_vec(Box2::with_shape([6, 7]), vals);
            for conn in [C4, C8] {
                let n = count_components(&img, &conn);
                prop_assert_eq!(count_components(&transpose(&img), &conn), n);
                prop_assert_eq!(count_components(&flip(&img), &conn), n);
            }
        }
    }
}
