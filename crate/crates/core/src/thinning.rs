//! Breadth-first homotopic thinning, written once for every image type.
//!
//! The canvas is parameterized by a neighborhood, a "simple site" predicate,
//! a detach routine and a constraint predicate. Plugging in a different
//! quadruple turns it into binary 2D/3D skeletonization, collapse-based mesh
//! thinning or gray-level thinning.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use crate::image::{Neighborhood, SiteImage};

/// Decides whether a site may be removed without changing the topology of
/// the image's foreground.
pub trait SimplePredicate<I: SiteImage> {
    fn is_simple(&self, site: I::Site, image: &I) -> bool;
}

impl<I: SiteImage, F: Fn(I::Site, &I) -> bool> SimplePredicate<I> for F {
    fn is_simple(&self, site: I::Site, image: &I) -> bool {
        self(site, image)
    }
}

/// Removes a (simple) site from the foreground.
pub trait Detach<I: SiteImage> {
    fn detach(&mut self, site: I::Site, image: &mut I);
}

impl<I: SiteImage, F: FnMut(I::Site, &mut I)> Detach<I> for F {
    fn detach(&mut self, site: I::Site, image: &mut I) {
        self(site, image)
    }
}

/// A predicate on sites. In the thinning canvas a candidate must pass it to
/// be removed.
pub trait SitePredicate<S> {
    fn test(&self, site: S) -> bool;
}

impl<S, F: Fn(S) -> bool> SitePredicate<S> for F {
    fn test(&self, site: S) -> bool {
        self(site)
    }
}

/// The constantly-true constraint.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoConstraint;

impl<S> SitePredicate<S> for NoConstraint {
    #[inline]
    fn test(&self, _site: S) -> bool {
        true
    }
}

pub fn no_constraint() -> NoConstraint {
    NoConstraint
}

/// Adapter from a set of sites to preserve to a predicate: a site passes iff
/// it is not in the set.
#[derive(Clone, Debug)]
pub struct Preserve<S: Eq + Hash> {
    kept: HashSet<S>,
}

impl<S: Eq + Hash> Preserve<S> {
    pub fn new(kept: impl IntoIterator<Item = S>) -> Self {
        Preserve { kept: kept.into_iter().collect() }
    }
}

impl<S: Eq + Hash> SitePredicate<S> for Preserve<S> {
    fn test(&self, site: S) -> bool {
        !self.kept.contains(&site)
    }
}

/// The four functors driving [`breadth_first_thinning`].
#[derive(Clone, Debug)]
pub struct ThinningParams<N, P, D, C> {
    pub nbh: N,
    pub is_simple: P,
    pub detach: D,
    pub constraint: C,
}

impl<N, P, D, C> ThinningParams<N, P, D, C> {
    pub fn new(nbh: N, is_simple: P, detach: D, constraint: C) -> Self {
        ThinningParams { nbh, is_simple, detach, constraint }
    }
}

/// Breadth-first thinning with a FIFO queue.
///
/// Seeds the queue with every foreground site passing `constraint` and
/// `is_simple`, in domain order. A dequeued site is re-tested and detached
/// if it still passes; its foreground neighbors that are not already queued
/// are then enqueued, followed by the site itself if the detach routine left
/// it in the foreground (gray-level lowering does).
///
/// Returns the thinned copy; `input` is left untouched. On return no
/// foreground site passes both `constraint` and `is_simple`.
pub fn breadth_first_thinning<I, N, P, D, C>(input: &I, params: ThinningParams<N, P, D, C>) -> I
where
    I: SiteImage,
    N: Neighborhood<I::Site>,
    P: SimplePredicate<I>,
    D: Detach<I>,
    C: SitePredicate<I::Site>,
{
    let ThinningParams { nbh, is_simple, mut detach, constraint } = params;
    let mut output = input.clone();
    let mut in_queue = vec![false; output.index_bound()];
    let mut queue = VecDeque::new();

    let candidate = |p: I::Site, img: &I| {
        img.is_foreground(p) && constraint.test(p) && is_simple.is_simple(p, img)
    };

    for p in output.sites() {
        if candidate(p, &output) {
            queue.push_back(p);
            in_queue[output.site_index(p)] = true;
        }
    }

    while let Some(p) = queue.pop_front() {
        in_queue[output.site_index(p)] = false;
        if !candidate(p, &output) {
            continue;
        }
        detach.detach(p, &mut output);
        nbh.for_each_neighbor(p, |n| {
            if output.has(n) && output.is_foreground(n) {
                let i = output.site_index(n);
                if !in_queue[i] {
                    in_queue[i] = true;
                    queue.push_back(n);
                }
            }
        });
        if output.is_foreground(p) {
            let i = output.site_index(p);
            if !in_queue[i] {
                in_queue[i] = true;
                queue.push_back(p);
            }
        }
    }
    output
}

/// Sites of `image` that would still be removed by the canvas. Empty on any
/// output of [`breadth_first_thinning`] run with the same functors.
pub fn remaining_candidates<I, P, C>(image: &I, is_simple: &P, constraint: &C) -> Vec<I::Site>
where
    I: SiteImage,
    P: SimplePredicate<I>,
    C: SitePredicate<I::Site>,
{
    image
        .sites()
        .filter(|&p| image.is_foreground(p) && constraint.test(p) && is_simple.is_simple(p, image))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{BinaryImage2, Box2, Point, Point2, C4};

    #[test]
    fn no_constraint_is_always_true() {
        let c = no_constraint();
        assert!(SitePredicate::<Point2>::test(&c, Point([0, 0])));
        assert!(SitePredicate::<Point2>::test(&c, Point([-4, 9])));
        assert!(SitePredicate::<usize>::test(&c, 17));
    }

    #[test]
    fn preserve_adapter() {
        let k = Preserve::new([Point([1, 1]), Point([2, 2])]);
        assert!(!k.test(Point([1, 1])));
        assert!(k.test(Point([0, 1])));
    }

    fn detach_point(p: Point2, img: &mut BinaryImage2) {
        img.set(p, false);
    }

    #[test]
    fn empty_image_is_fixed_point() {
        let img = BinaryImage2::new(Box2::with_shape([10, 10]));
        let out = breadth_first_thinning(
            &img,
            ThinningParams::new(C4, |_p: Point2, _i: &BinaryImage2| true, detach_point, NoConstraint),
        );
        assert_eq!(out, img);
    }

    // With an "everything is simple" predicate the canvas must empty the
    // connected foreground, and visit sites in FIFO order.
    #[test]
    fn fifo_order_with_trivial_predicate() {
        let img = BinaryImage2::from_fn(Box2::with_shape([1, 4]), |_| true);
        let mut order = Vec::new();
        let out = breadth_first_thinning(
            &img,
            ThinningParams::new(
                C4,
                |_p: Point2, _i: &BinaryImage2| true,
                |p: Point2, i: &mut BinaryImage2| {
                    order.push(p);
                    i.set(p, false)
                },
                NoConstraint,
            ),
        );
        assert_eq!(out.count_foreground(), 0);
        assert_eq!(order, (0..4).map(|c| Point([0, c])).collect::<Vec<_>>());
        assert_eq!(img.count_foreground(), 4, "input must be untouched");
    }

    #[test]
    fn constraint_protects_sites() {
        let img = BinaryImage2::from_fn(Box2::with_shape([1, 4]), |_| true);
        let keep = Preserve::new([Point([0, 2])]);
        let out = breadth_first_thinning(
            &img,
            ThinningParams::new(C4, |_p: Point2, _i: &BinaryImage2| true, detach_point, keep),
        );
        assert_eq!(out.foreground().collect::<Vec<_>>(), vec![Point([0, 2])]);
    }
}
