//! Gray-level thinning: lowering destructible points with the same canvas.
//!
//! A point is destructible when it is a (4,8)-simple point of the cross
//! section at its own level, seen through its 3x3 neighborhood, and some
//! neighbor inside the domain is lower. Lowering it to the highest such value
//! then changes no cross-section's topology.

use crate::image::{BinaryImage2, Box2, Point2, SiteImage, C8};
use crate::simple2d::{build_simple_lut_2d, Config8, Connectivity2, SimpleLut2D};
use crate::thinning::{breadth_first_thinning, Detach, NoConstraint, SimplePredicate, ThinningParams};

/// 2D image of small unsigned levels; reads outside the domain give 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GrayGridImage2 {
    domain: Box2,
    values: Vec<u8>,
}

impl GrayGridImage2 {
    pub fn new(domain: Box2) -> Self {
        GrayGridImage2 { values: vec![0; domain.len()], domain }
    }

    pub fn from_fn(domain: Box2, f: impl FnMut(Point2) -> u8) -> Self {
        GrayGridImage2 { values: domain.iter().map(f).collect(), domain }
    }

    pub fn from_vec(domain: Box2, values: Vec<u8>) -> Self {
        assert_eq!(values.len(), domain.len(), "value count does not match domain");
        GrayGridImage2 { domain, values }
    }

    pub fn domain(&self) -> Box2 {
        self.domain
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn get(&self, p: Point2) -> u8 {
        assert!(self.domain.contains(p), "read outside domain at {p:?}");
        self.values[self.domain.index_of(p)]
    }

    #[inline]
    pub fn get_clamped(&self, p: Point2) -> u8 {
        if self.domain.contains(p) {
            self.values[self.domain.index_of(p)]
        } else {
            0
        }
    }

    #[inline]
    pub fn set(&mut self, p: Point2, v: u8) {
        assert!(self.domain.contains(p), "write outside domain at {p:?}");
        let i = self.domain.index_of(p);
        self.values[i] = v;
    }

    pub fn max_value(&self) -> u8 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

impl SiteImage for GrayGridImage2 {
    type Site = Point2;

    fn sites(&self) -> impl Iterator<Item = Point2> + '_ {
        self.domain.iter()
    }

    fn has(&self, p: Point2) -> bool {
        self.domain.contains(p)
    }

    fn site_index(&self, p: Point2) -> usize {
        self.domain.index_of(p)
    }

    fn index_bound(&self) -> usize {
        self.values.len()
    }

    fn is_foreground(&self, p: Point2) -> bool {
        self.values[self.domain.index_of(p)] > 0
    }
}

/// `{p : F(p) >= level}`.
pub fn cross_section(image: &GrayGridImage2, level: u32) -> BinaryImage2 {
    BinaryImage2::from_fn(image.domain, |p| image.get(p) as u32 >= level)
}

/// Highest value strictly below `F(p)` among the 8-neighbors of `p` inside
/// the domain, if any.
pub fn lowering_target(p: Point2, image: &GrayGridImage2) -> Option<u8> {
    let v = image.get_clamped(p);
    C8.offsets()
        .iter()
        .map(|&d| p.offset(d))
        .filter(|&q| image.domain.contains(q))
        .map(|q| image.get(q))
        .filter(|&q| q < v)
        .max()
}

pub fn is_destructible(p: Point2, image: &GrayGridImage2, lut: &SimpleLut2D) -> bool {
    let v = image.get_clamped(p);
    if v == 0 || lowering_target(p, image).is_none() {
        return false;
    }
    lut.is_simple(Config8::from_fn(|d| image.get_clamped(p.offset(d)) >= v))
}

/// Lowers `p` to the highest neighboring value below it. Panics if `p` has
/// no lower neighbor.
pub fn lower(p: Point2, image: &mut GrayGridImage2) {
    let target = lowering_target(p, image).unwrap_or_else(|| panic!("nothing to lower {p:?} to"));
    image.set(p, target);
}

#[derive(Clone, Copy, Debug)]
pub struct Destructible {
    lut: SimpleLut2D,
}

impl Default for Destructible {
    fn default() -> Self {
        Destructible { lut: build_simple_lut_2d(Connectivity2::Four) }
    }
}

impl SimplePredicate<GrayGridImage2> for Destructible {
    fn is_simple(&self, p: Point2, image: &GrayGridImage2) -> bool {
        is_destructible(p, image, &self.lut)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Lower;

impl Detach<GrayGridImage2> for Lower {
    fn detach(&mut self, p: Point2, image: &mut GrayGridImage2) {
        lower(p, image)
    }
}

/// Gray-level skeleton: lowers destructible points until none remains.
pub fn gray_thinning(image: &GrayGridImage2) -> GrayGridImage2 {
    breadth_first_thinning(image, ThinningParams::new(C8, Destructible::default(), Lower, NoConstraint))
}
