//! Cell complexes, complex-based binary images and elementary collapses.
//!
//! A [`CellComplex`] stores boundary and coboundary incidence per dimension
//! in compressed rows. Face ids are dense per dimension and every incidence
//! list is sorted by ascending id, which fixes all tie-breaks downstream.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::image::{BinaryGridImage, GridBox, Neighborhood, Point, SiteImage};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Face {
    pub dim: usize,
    pub id: usize,
}

impl Face {
    pub const fn new(dim: usize, id: usize) -> Self {
        Face { dim, id }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex index {index} out of range (mesh has {count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("triangle {0} repeats a vertex")]
    DegenerateTriangle(usize),
    #[error("triangle {0} duplicates an earlier triangle")]
    DuplicateTriangle(usize),
    #[error("face of dimension {dim} references missing {missing:?}")]
    MissingBoundary { dim: usize, missing: Face },
    #[error("faces ({0:?}, {1:?}) do not form a free pair")]
    NotFreePair(Face, Face),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Rows {
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl Rows {
    fn row(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    len: usize,
    boundary: Rows,
    coboundary: Rows,
}

/// A dimension-graded set of faces closed under boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    levels: Vec<Level>,
}

impl CellComplex {
    /// Highest dimension with at least one face, or 0 for an empty complex.
    pub fn dim(&self) -> usize {
        self.levels.iter().rposition(|l| l.len > 0).unwrap_or(0)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.len)
    }

    pub fn total_faces(&self) -> usize {
        self.levels.iter().map(|l| l.len).sum()
    }

    pub fn faces(&self, dim: usize) -> impl Iterator<Item = Face> {
        (0..self.count(dim)).map(move |id| Face::new(dim, id))
    }

    /// Faces of dimension `f.dim - 1` on the boundary of `f`, ascending.
    pub fn boundary(&self, f: Face) -> impl Iterator<Item = Face> + '_ {
        let row: &[u32] = if f.dim == 0 { &[] } else { self.levels[f.dim].boundary.row(f.id) };
        row.iter().map(move |&g| Face::new(f.dim - 1, g as usize))
    }

    /// Faces of dimension `f.dim + 1` having `f` on their boundary, ascending.
    pub fn coboundary(&self, f: Face) -> impl Iterator<Item = Face> + '_ {
        let row: &[u32] = self.levels[f.dim].coboundary.row(f.id);
        row.iter().map(move |&g| Face::new(f.dim + 1, g as usize))
    }

    pub fn boundary_len(&self, f: Face) -> usize {
        if f.dim == 0 {
            0
        } else {
            self.levels[f.dim].boundary.row(f.id).len()
        }
    }

    pub fn coboundary_len(&self, f: Face) -> usize {
        self.levels[f.dim].coboundary.row(f.id).len()
    }

    /// All faces of the closure of `f` (including `f`), by descending
    /// dimension then ascending id.
    pub fn closure(&self, f: Face) -> Vec<Face> {
        let mut out = vec![f];
        let mut layer = vec![f];
        while layer[0].dim > 0 {
            let mut next: Vec<Face> = layer.iter().flat_map(|&g| self.boundary(g)).collect();
            next.sort_unstable();
            next.dedup();
            out.extend_from_slice(&next);
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        out
    }

    /// `(face, boundary face)` pairs whose reverse incidence is missing.
    /// Empty for every complex built by this crate.
    pub fn incidence_violations(&self) -> Vec<(Face, Face)> {
        let mut bad = vec![];
        for d in 0..self.levels.len() {
            for f in self.faces(d) {
                for g in self.boundary(f) {
                    if !self.coboundary(g).any(|h| h == f) {
                        bad.push((f, g));
                    }
                }
                for h in self.coboundary(f) {
                    if !self.boundary(h).any(|g| g == f) {
                        bad.push((h, f));
                    }
                }
            }
        }
        bad
    }
}

/// Incremental construction of a [`CellComplex`], lowest dimension first.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    boundaries: Vec<Vec<Vec<u32>>>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self) -> Face {
        self.add_face_unchecked(0, vec![])
    }

    /// Adds a face of dimension `dim` whose boundary is the given faces of
    /// dimension `dim - 1`, which must already exist.
    pub fn add_face(&mut self, dim: usize, boundary: &[usize]) -> Result<Face, ComplexError> {
        if dim == 0 {
            return Ok(self.add_vertex());
        }
        let lower = self.boundaries.get(dim - 1).map_or(0, |l| l.len());
        for &b in boundary {
            if b >= lower {
                return Err(ComplexError::MissingBoundary { dim, missing: Face::new(dim - 1, b) });
            }
        }
        let mut row: Vec<u32> = boundary.iter().map(|&b| b as u32).collect();
        row.sort_unstable();
        row.dedup();
        Ok(self.add_face_unchecked(dim, row))
    }

    fn add_face_unchecked(&mut self, dim: usize, row: Vec<u32>) -> Face {
        while self.boundaries.len() <= dim {
            self.boundaries.push(vec![]);
        }
        self.boundaries[dim].push(row);
        Face::new(dim, self.boundaries[dim].len() - 1)
    }

    pub fn build(self) -> CellComplex {
        let n = self.boundaries.len();
        let mut levels: Vec<Level> = self
            .boundaries
            .iter()
            .map(|rows| {
                let mut offsets = Vec::with_capacity(rows.len() + 1);
                let mut targets = vec![];
                offsets.push(0);
                for r in rows {
                    targets.extend_from_slice(r);
                    offsets.push(targets.len() as u32);
                }
                Level { len: rows.len(), boundary: Rows { offsets, targets }, coboundary: Rows::default() }
            })
            .collect();
        for d in 0..n {
            let len = levels[d].len;
            let mut counts = vec![0u32; len + 1];
            if d + 1 < n {
                for row in &self.boundaries[d + 1] {
                    for &b in row {
                        counts[b as usize + 1] += 1;
                    }
                }
            }
            for i in 0..len {
                counts[i + 1] += counts[i];
            }
            let mut fill = counts.clone();
            let mut targets = vec![0u32; counts[len] as usize];
            if d + 1 < n {
                // Upper faces visited in ascending id, so rows come out sorted.
                for (g, row) in self.boundaries[d + 1].iter().enumerate() {
                    for &b in row {
                        targets[fill[b as usize] as usize] = g as u32;
                        fill[b as usize] += 1;
                    }
                }
            }
            levels[d].coboundary = Rows { offsets: counts, targets };
        }
        if levels.is_empty() {
            levels.push(Level { len: 0, boundary: Rows { offsets: vec![0], targets: vec![] }, coboundary: Rows { offsets: vec![0], targets: vec![] } });
        }
        CellComplex { levels }
    }
}

/// A triangle mesh seen as a simplicial 2-complex.
///
/// 0-faces are the mesh vertices in input order, 1-faces the distinct
/// edges sorted by `(min vertex, max vertex)`, 2-faces the triangles in
/// input order.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    pub complex: Arc<CellComplex>,
    pub positions: Vec<[f64; 3]>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

pub fn build_simplicial_from_off(
    positions: &[[f64; 3]],
    triangles: &[[usize; 3]],
) -> Result<SimplicialComplex, ComplexError> {
    let nv = positions.len();
    let mut seen = std::collections::HashSet::with_capacity(triangles.len());
    let mut edge_ids: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for &v in tri {
            if v >= nv {
                return Err(ComplexError::VertexOutOfRange { index: v, count: nv });
            }
        }
        let mut key = *tri;
        key.sort_unstable();
        if key[0] == key[1] || key[1] == key[2] {
            return Err(ComplexError::DegenerateTriangle(t));
        }
        if !seen.insert(key) {
            return Err(ComplexError::DuplicateTriangle(t));
        }
        for (a, b) in [(key[0], key[1]), (key[1], key[2]), (key[0], key[2])] {
            edge_ids.insert((a, b), 0);
        }
    }
    let mut edges = Vec::with_capacity(edge_ids.len());
    for (i, (k, id)) in edge_ids.iter_mut().enumerate() {
        *id = i;
        edges.push([k.0, k.1]);
    }

    let mut b = ComplexBuilder::new();
    for _ in 0..nv {
        b.add_vertex();
    }
    for e in &edges {
        b.add_face(1, e)?;
    }
    for tri in triangles {
        let mut k = *tri;
        k.sort_unstable();
        let ids = [edge_ids[&(k[0], k[1])], edge_ids[&(k[1], k[2])], edge_ids[&(k[0], k[2])]];
        b.add_face(2, &ids)?;
    }
    Ok(SimplicialComplex {
        complex: Arc::new(b.build()),
        positions: positions.to_vec(),
        edges,
        triangles: triangles.to_vec(),
    })
}

impl SimplicialComplex {
    /// Image with every face set, iterating over triangles.
    pub fn full_image(&self) -> ComplexImage {
        ComplexImage::full(self.complex.clone(), 2)
    }

    /// Vertex indices of a 0-, 1- or 2-face.
    pub fn vertices_of(&self, f: Face) -> Vec<usize> {
        match f.dim {
            0 => vec![f.id],
            1 => self.edges[f.id].to_vec(),
            2 => self.triangles[f.id].to_vec(),
            _ => vec![],
        }
    }
}

/// The closed cubical complex spanned by the foreground of a binary image:
/// one `D`-cube per foreground site plus all of its faces.
///
/// Faces are addressed by Khalimsky coordinates: the unit cube of site `p`
/// spans `[2p, 2p + 2]` on every axis, and a cell's dimension is the number
/// of odd coordinates.
#[derive(Clone, Debug)]
pub struct CubicalComplex<const D: usize> {
    pub complex: Arc<CellComplex>,
    pub coords: Vec<Vec<[i32; D]>>,
}

pub fn build_cubical_from_binary<const D: usize>(image: &BinaryGridImage<D>) -> CubicalComplex<D> {
    let dom = image.domain();
    let mut lo = [0i32; D];
    let mut hi = [0i32; D];
    for i in 0..D {
        lo[i] = 2 * dom.min()[i];
        hi[i] = 2 * dom.max()[i] + 2;
    }
    let kbox = GridBox::new(Point(lo), Point(hi));
    const ABSENT: u32 = u32::MAX;
    const PRESENT: u32 = u32::MAX - 1;
    let mut cells = vec![ABSENT; kbox.len()];

    let corner_box = GridBox::<D>::with_shape([3; D]);
    for p in image.foreground() {
        let mut base = [0i32; D];
        for i in 0..D {
            base[i] = 2 * p[i];
        }
        for d in corner_box.iter() {
            cells[kbox.index_of(Point(base).offset(d.0))] = PRESENT;
        }
    }

    let dim_of = |k: &[i32; D]| k.iter().filter(|&&c| c.rem_euclid(2) == 1).count();
    let mut builder = ComplexBuilder::new();
    let mut coords: Vec<Vec<[i32; D]>> = vec![vec![]; D + 1];
    for dim in 0..=D {
        for (idx, k) in kbox.iter().enumerate() {
            if cells[idx] != PRESENT || dim_of(&k.0) != dim {
                continue;
            }
            let mut bnd = Vec::with_capacity(2 * dim);
            for axis in 0..D {
                if k[axis].rem_euclid(2) == 1 {
                    for s in [-1, 1] {
                        let mut q = k.0;
                        q[axis] += s;
                        bnd.push(cells[kbox.index_of(Point(q))] as usize);
                    }
                }
            }
            let f = builder.add_face(dim, &bnd).expect("closure contains every boundary cell");
            cells[idx] = f.id as u32;
            coords[dim].push(k.0);
        }
    }
    CubicalComplex { complex: Arc::new(builder.build()), coords }
}

/// Boolean values on every face of a complex, iterating over the faces of
/// one primary dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexImage {
    complex: Arc<CellComplex>,
    primary_dim: usize,
    values: Vec<Vec<bool>>,
}

impl ComplexImage {
    pub fn new(complex: Arc<CellComplex>, primary_dim: usize) -> Self {
        let values = (0..=complex.dim().max(primary_dim)).map(|d| vec![false; complex.count(d)]).collect();
        ComplexImage { complex, primary_dim, values }
    }

    pub fn full(complex: Arc<CellComplex>, primary_dim: usize) -> Self {
        let mut img = Self::new(complex, primary_dim);
        img.values.iter_mut().for_each(|v| v.fill(true));
        img
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    pub fn primary_dim(&self) -> usize {
        self.primary_dim
    }

    /// Same values, iterating over another dimension. No copy.
    pub fn with_primary_dim(mut self, dim: usize) -> Self {
        while self.values.len() <= dim {
            self.values.push(vec![]);
        }
        self.primary_dim = dim;
        self
    }

    #[inline]
    pub fn get(&self, f: Face) -> bool {
        self.values.get(f.dim).and_then(|v| v.get(f.id)).copied().unwrap_or(false)
    }

    #[inline]
    pub fn set(&mut self, f: Face, v: bool) {
        self.values[f.dim][f.id] = v;
    }

    pub fn count_true(&self, dim: usize) -> usize {
        self.values.get(dim).map_or(0, |v| v.iter().filter(|&&b| b).count())
    }

    pub fn true_faces(&self, dim: usize) -> impl Iterator<Item = Face> + '_ {
        self.complex.faces(dim).filter(|&f| self.get(f))
    }

    /// True faces of dimension `f.dim + 1` having `f` on their boundary.
    pub fn true_cofaces(&self, f: Face) -> impl Iterator<Item = Face> + '_ {
        self.complex.coboundary(f).filter(|&g| self.get(g))
    }

    pub fn true_coface_count(&self, f: Face) -> usize {
        self.true_cofaces(f).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_characteristic(self)
    }
}

impl SiteImage for ComplexImage {
    type Site = Face;

    fn sites(&self) -> impl Iterator<Item = Face> + '_ {
        self.complex.faces(self.primary_dim)
    }

    fn has(&self, f: Face) -> bool {
        f.dim == self.primary_dim && f.id < self.complex.count(f.dim)
    }

    fn site_index(&self, f: Face) -> usize {
        f.id
    }

    fn index_bound(&self) -> usize {
        self.complex.count(self.primary_dim)
    }

    fn is_foreground(&self, f: Face) -> bool {
        self.get(f)
    }
}

/// Alternating count of true faces over all dimensions.
pub fn euler_characteristic(img: &ComplexImage) -> i64 {
    img.values
        .iter()
        .enumerate()
        .map(|(d, v)| {
            let n = v.iter().filter(|&&b| b).count() as i64;
            if d % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

/// `g` is a true face one dimension above `f`, `f` is true and on its
/// boundary, and `g` is the only true coface of `f`.
pub fn is_free_pair(f: Face, g: Face, img: &ComplexImage) -> bool {
    if g.dim != f.dim + 1 || !img.get(f) || !img.get(g) {
        return false;
    }
    let mut cofaces = img.true_cofaces(f);
    cofaces.next() == Some(g) && cofaces.next().is_none()
}

/// Removes a free pair. Other faces are untouched.
pub fn elementary_collapse(f: Face, g: Face, img: &mut ComplexImage) -> Result<(), ComplexError> {
    if !is_free_pair(f, g, img) {
        return Err(ComplexError::NotFreePair(f, g));
    }
    img.set(f, false);
    img.set(g, false);
    Ok(())
}

/// Two faces of the primary dimension `n` are adjacent when they share an
/// `(n-1)`-face. Neighbors come out by ascending id; filtering by image
/// value is left to the caller.
#[derive(Clone, Debug)]
pub struct SharedFaceAdjacency {
    complex: Arc<CellComplex>,
}

impl SharedFaceAdjacency {
    pub fn new(complex: Arc<CellComplex>) -> Self {
        SharedFaceAdjacency { complex }
    }
}

impl Neighborhood<Face> for SharedFaceAdjacency {
    fn for_each_neighbor<F: FnMut(Face)>(&self, t: Face, mut f: F) {
        let mut out: Vec<Face> = self
            .complex
            .boundary(t)
            .flat_map(|e| self.complex.coboundary(e))
            .filter(|&u| u != t)
            .collect();
        out.sort_unstable();
        out.dedup();
        out.into_iter().for_each(&mut f);
    }
}

/// Two faces of the same dimension are adjacent when their closures meet,
/// that is when they share a vertex. Every face whose star can change when
/// one of them is removed is in the closure of the other, so this is the
/// neighborhood to requeue when simplicity depends on the whole closure.
/// Neighbors come out by ascending id.
#[derive(Clone, Debug)]
pub struct SharedVertexAdjacency {
    complex: Arc<CellComplex>,
}

impl SharedVertexAdjacency {
    pub fn new(complex: Arc<CellComplex>) -> Self {
        SharedVertexAdjacency { complex }
    }
}

impl Neighborhood<Face> for SharedVertexAdjacency {
    fn for_each_neighbor<F: FnMut(Face)>(&self, t: Face, mut f: F) {
        let mut level: Vec<Face> = self.complex.closure(t).into_iter().filter(|g| g.dim == 0).collect();
        for _ in 0..t.dim {
            let mut up: Vec<Face> = level.iter().flat_map(|&g| self.complex.coboundary(g)).collect();
            up.sort_unstable();
            up.dedup();
            level = up;
        }
        level.into_iter().filter(|&u| u != t).for_each(&mut f);
    }
}
