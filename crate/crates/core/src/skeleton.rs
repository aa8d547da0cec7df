//! Collapse-based "simple site" functors for complex images, and the mesh
//! skeleton drivers built on the thinning canvas.

use crate::complex::{elementary_collapse, is_free_pair, ComplexImage, Face, SharedFaceAdjacency, SharedVertexAdjacency};
use crate::thinning::{breadth_first_thinning, Detach, SimplePredicate, SitePredicate, ThinningParams};

/// Faces of the closure of `t` whose whole true star lies inside that
/// closure (`t` included), in descending dimension then ascending id.
/// These are the faces that can disappear together with `t`.
pub fn private_closure(t: Face, img: &ComplexImage) -> Vec<Face> {
    let complex = img.complex();
    let closure = complex.closure(t);
    let mut private: Vec<Face> = Vec::with_capacity(closure.len());
    for &f in &closure {
        if !img.get(f) {
            continue;
        }
        if f == t {
            private.push(f);
            continue;
        }
        // Cofaces have higher dimension, so they were classified already.
        if img.true_cofaces(f).all(|g| private.contains(&g)) {
            private.push(f);
        }
    }
    private
}

/// Greedy free-pair elimination inside `set`. Pairs are taken with the upper
/// face by descending dimension then ascending id, the lower face by
/// ascending id. Returns the collapsed pairs and how many faces of `set`
/// survive.
fn greedy_collapse(set: &[Face], img: &ComplexImage) -> (Vec<(Face, Face)>, usize) {
    let mut alive: Vec<bool> = vec![true; set.len()];
    let mut remaining = set.len();
    let mut sequence = vec![];
    let complex = img.complex();
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(set[i].dim), set[i].id));
    'outer: loop {
        for &gi in &order {
            let g = set[gi];
            if !alive[gi] || g.dim == 0 {
                continue;
            }
            for f in complex.boundary(g) {
                let Some(fi) = set.iter().position(|&x| x == f) else { continue };
                if !alive[fi] {
                    continue;
                }
                // All true cofaces of a private face are in `set`.
                let mut live_cofaces = complex
                    .coboundary(f)
                    .filter(|&h| set.iter().position(|&x| x == h).is_some_and(|hi| alive[hi]));
                if live_cofaces.next() == Some(g) && live_cofaces.next().is_none() {
                    alive[fi] = false;
                    alive[gi] = false;
                    remaining -= 2;
                    sequence.push((f, g));
                    continue 'outer;
                }
            }
        }
        break;
    }
    (sequence, remaining)
}

/// A primary-dimension cell is simple when its private closure can be
/// emptied by elementary collapses.
pub fn is_simple_cell(t: Face, img: &ComplexImage) -> bool {
    if t.dim != img.primary_dim() || !img.get(t) {
        return false;
    }
    let y = private_closure(t, img);
    let (_, remaining) = greedy_collapse(&y, img);
    remaining == 0
}

/// Collapses away `t` and its private closure. Panics if `t` is not simple.
pub fn detach_cell(t: Face, img: &mut ComplexImage) {
    let y = private_closure(t, img);
    let (sequence, remaining) = greedy_collapse(&y, img);
    assert!(img.get(t) && remaining == 0, "detach_cell on non-simple cell {t:?}");
    for (f, g) in sequence {
        elementary_collapse(f, g, img).expect("greedy sequence stays free");
    }
}

/// Some boundary face of `t` forms a free pair with it.
pub fn is_cell_in_simple_pair(t: Face, img: &ComplexImage) -> bool {
    lowest_free_face(t, img).is_some()
}

fn lowest_free_face(t: Face, img: &ComplexImage) -> Option<Face> {
    if t.dim != img.primary_dim() || t.dim == 0 || !img.get(t) {
        return None;
    }
    img.complex().boundary(t).find(|&f| is_free_pair(f, t, img))
}

/// Collapses `t` with its lowest-id free boundary face. Panics if there is
/// none.
pub fn detach_cell_in_simple_pair(t: Face, img: &mut ComplexImage) {
    let f = lowest_free_face(t, img).unwrap_or_else(|| panic!("{t:?} is not in a simple pair"));
    elementary_collapse(f, t, img).expect("checked free pair");
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SimpleCell;

impl SimplePredicate<ComplexImage> for SimpleCell {
    fn is_simple(&self, t: Face, img: &ComplexImage) -> bool {
        is_simple_cell(t, img)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DetachCell;

impl Detach<ComplexImage> for DetachCell {
    fn detach(&mut self, t: Face, img: &mut ComplexImage) {
        detach_cell(t, img)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CellInSimplePair;

impl SimplePredicate<ComplexImage> for CellInSimplePair {
    fn is_simple(&self, t: Face, img: &ComplexImage) -> bool {
        is_cell_in_simple_pair(t, img)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DetachCellInSimplePair;

impl Detach<ComplexImage> for DetachCellInSimplePair {
    fn detach(&mut self, t: Face, img: &mut ComplexImage) {
        detach_cell_in_simple_pair(t, img)
    }
}

/// Thick skeleton: removes simple primary cells together with their private
/// faces until none is left. A removal requeues every primary cell sharing a
/// vertex with the removed one.
pub fn thick_skeleton<C: SitePredicate<Face>>(img: &ComplexImage, constraint: C) -> ComplexImage {
    let nbh = SharedVertexAdjacency::new(img.complex().clone());
    breadth_first_thinning(img, ThinningParams::new(nbh, SimpleCell, DetachCell, constraint))
}

/// Ultimate n-collapse, `n` being the image's primary dimension: removes
/// free `(n-1, n)` pairs until none is left.
pub fn ultimate_n_collapse<C: SitePredicate<Face>>(img: &ComplexImage, constraint: C) -> ComplexImage {
    let nbh = SharedFaceAdjacency::new(img.complex().clone());
    breadth_first_thinning(img, ThinningParams::new(nbh, CellInSimplePair, DetachCellInSimplePair, constraint))
}

/// Ultimate 2-collapse followed by an ultimate 1-collapse of its result.
pub fn thin_skeleton<C: SitePredicate<Face> + Clone>(img: &ComplexImage, constraint: C) -> ComplexImage {
    let two = ultimate_n_collapse(&img.clone().with_primary_dim(2), constraint.clone());
    ultimate_n_collapse(&two.with_primary_dim(1), constraint)
}

/// Lower faces (dimension `n-1` or `n-2`) that are true but not in the
/// closure of any true primary face. Empty for a pure result.
pub fn impure_faces(img: &ComplexImage) -> Vec<Face> {
    let n = img.primary_dim();
    let complex = img.complex();
    let mut covered: Vec<Vec<bool>> = (0..=n).map(|d| vec![false; complex.count(d)]).collect();
    for t in img.true_faces(n) {
        for f in complex.closure(t) {
            covered[f.dim][f.id] = true;
        }
    }
    let mut out = vec![];
    for d in n.saturating_sub(2)..n {
        for f in img.true_faces(d) {
            if !covered[d][f.id] {
                out.push(f);
            }
        }
    }
    out
}
