//! Homotopic thinning driven by one breadth-first canvas.
//!
//! The canvas in [`thinning`] is generic over the image, the neighborhood,
//! the simple-site predicate, the detach operation and a constraint. The
//! other modules plug concrete choices into it: binary grid images in 2D and
//! 3D, cell complexes and gray-level images.

pub mod cli;
pub mod complex;
pub mod graylevel;
pub mod image;
pub mod io;
pub mod oracle;
pub mod par;
pub mod simple2d;
pub mod simple3d;
pub mod skeleton;
pub mod thinning;

use std::sync::Arc;

pub use complex::{CellComplex, ComplexError, ComplexImage, Face};
pub use graylevel::{gray_thinning, GrayGridImage2};
pub use image::{BinaryImage2, BinaryImage3, Box2, Box3, Point, Point2, Point3};
pub use par::Execution;
pub use simple3d::Lut3d;
pub use thinning::{breadth_first_thinning, ThinningParams};

use image::{C26, C4, C8};
use simple2d::{Connectivity2, DetachPoint, NotEndPoint, SimplePoint2d};
use simple3d::SimplePoint3d;
use thinning::NoConstraint;

/// (4,8) thinning of a 2D image. With `keep_end_points`, sites having a
/// single 4-neighbor in the input are never removed. Detaching a site
/// requeues its eight neighbors.
pub fn thin2d(image: &BinaryImage2, keep_end_points: bool) -> BinaryImage2 {
    let simple = SimplePoint2d::new(Connectivity2::Four);
    if keep_end_points {
        let keep = NotEndPoint::new(C4, image.clone());
        breadth_first_thinning(image, ThinningParams::new(C8, simple, DetachPoint, keep))
    } else {
        breadth_first_thinning(image, ThinningParams::new(C8, simple, DetachPoint, NoConstraint))
    }
}

/// (26,6) thinning of a volume, with or without a precomputed table.
pub fn thin3d(image: &BinaryImage3, lut: Option<Arc<Lut3d>>) -> BinaryImage3 {
    let simple = match lut {
        Some(t) => SimplePoint3d::with_lut(t),
        None => SimplePoint3d::new(),
    };
    breadth_first_thinning(image, ThinningParams::new(C26, simple, DetachPoint, NoConstraint))
}

/// Thins independent images, one task per image.
pub fn thin2d_batch(images: &[BinaryImage2], keep_end_points: bool, exec: Execution) -> Vec<BinaryImage2> {
    par::map(images, exec, |img| thin2d(img, keep_end_points))
}

pub fn thin3d_batch(images: &[BinaryImage3], lut: Option<Arc<Lut3d>>, exec: Execution) -> Vec<BinaryImage3> {
    par::map(images, exec, |img| thin3d(img, lut.clone()))
}
