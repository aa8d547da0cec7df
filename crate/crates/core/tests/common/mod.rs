//! Random and synthetic inputs shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use topothin::complex::{build_simplicial_from_off, SimplicialComplex};
use topothin::{BinaryImage2, BinaryImage3, Box2, Box3, GrayGridImage2, Point};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to `max`x`max`, foreground density drawn per image.
pub fn random_image2(rng: &mut impl Rng, max: usize) -> BinaryImage2 {
    let h = rng.gen_range(1..=max);
    let w = rng.gen_range(1..=max);
    let density = rng.gen_range(0.2..0.85);
    BinaryImage2::from_fn(Box2::with_shape([h, w]), |_| rng.gen_bool(density))
}

pub fn random_volume(rng: &mut impl Rng, n: usize) -> BinaryImage3 {
    let density = rng.gen_range(0.3..0.9);
    BinaryImage3::from_fn(Box3::with_shape([n, n, n]), |_| rng.gen_bool(density))
}

/// Up to `max`x`max`, values in `0..levels`.
pub fn random_gray(rng: &mut impl Rng, max: usize, levels: u8) -> GrayGridImage2 {
    let h = rng.gen_range(1..=max);
    let w = rng.gen_range(1..=max);
    GrayGridImage2::from_fn(Box2::with_shape([h, w]), |_| rng.gen_range(0..levels))
}

/// Vertices and triangles of a `rows`x`cols` grid of squares, two triangles
/// per square.
pub fn grid_mesh(rows: usize, cols: usize) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let v = |r: usize, c: usize| r * (cols + 1) + c;
    let mut positions = Vec::with_capacity((rows + 1) * (cols + 1));
    for r in 0..=rows {
        for c in 0..=cols {
            positions.push([c as f64, r as f64, 0.0]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            triangles.push([v(r, c), v(r, c + 1), v(r + 1, c)]);
            triangles.push([v(r, c + 1), v(r + 1, c + 1), v(r + 1, c)]);
        }
    }
    (positions, triangles)
}

/// Complex made of the chosen triangles, keeping only the vertices they use.
pub fn sub_mesh(positions: &[[f64; 3]], triangles: &[[usize; 3]]) -> SimplicialComplex {
    let mut remap = vec![usize::MAX; positions.len()];
    let mut kept = vec![];
    let tris: Vec<[usize; 3]> = triangles
        .iter()
        .map(|t| {
            t.map(|v| {
                if remap[v] == usize::MAX {
                    remap[v] = kept.len();
                    kept.push(positions[v]);
                }
                remap[v]
            })
        })
        .collect();
    build_simplicial_from_off(&kept, &tris).expect("grid triangles are valid")
}

/// Random subset of at most `max_tris` triangles of a small grid.
pub fn random_subcomplex(rng: &mut impl Rng, max_tris: usize) -> SimplicialComplex {
    let rows = rng.gen_range(1..=5);
    let cols = rng.gen_range(1..=5);
    let (pos, tris) = grid_mesh(rows, cols);
    let keep = rng.gen_range(0.3..1.0);
    let mut chosen: Vec<[usize; 3]> = tris.into_iter().filter(|_| rng.gen_bool(keep)).collect();
    chosen.truncate(max_tris);
    if chosen.is_empty() {
        chosen.push([0, 1, cols + 1]);
    }
    sub_mesh(&pos, &chosen)
}

/// Random triangulated disk grown by shelling inside a grid: every added
/// triangle meets the current disk in one edge (with a new apex) or in two
/// edges.
pub fn random_disk(rng: &mut impl Rng, max_tris: usize) -> SimplicialComplex {
    let (rows, cols) = (8, 8);
    let (pos, tris) = grid_mesh(rows, cols);
    let target = rng.gen_range(1..=max_tris);
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let edges_of = |t: &[usize; 3]| [key(t[0], t[1]), key(t[1], t[2]), key(t[0], t[2])];
    let mut in_disk = vec![false; tris.len()];
    let mut vert = vec![false; pos.len()];
    let mut edges = std::collections::HashSet::new();
    let mut chosen = vec![];
    let first = rng.gen_range(0..tris.len());
    let mut add = |i: usize, in_disk: &mut Vec<bool>, vert: &mut Vec<bool>, edges: &mut std::collections::HashSet<_>| {
        in_disk[i] = true;
        for v in tris[i] {
            vert[v] = true;
        }
        for e in edges_of(&tris[i]) {
            edges.insert(e);
        }
        chosen.push(tris[i]);
    };
    add(first, &mut in_disk, &mut vert, &mut edges);
    for _ in 1..target {
        let candidates: Vec<usize> = (0..tris.len())
            .filter(|&i| !in_disk[i])
            .filter(|&i| {
                let shared = edges_of(&tris[i]).iter().filter(|e| edges.contains(*e)).count();
                let known = tris[i].iter().filter(|&&v| vert[v]).count();
                (shared == 1 && known == 2) || shared == 2
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let i = candidates[rng.gen_range(0..candidates.len())];
        add(i, &mut in_disk, &mut vert, &mut edges);
    }
    sub_mesh(&pos, &chosen)
}

/// A `rows`x`cols` grid with square holes of side `hole` every `step`
/// squares.
pub fn holed_patch(rows: usize, cols: usize, hole: usize, step: usize) -> SimplicialComplex {
    let (pos, tris) = grid_mesh(rows, cols);
    let in_hole = |r: usize, c: usize| {
        r % step >= step - hole && c % step >= step - hole && r + step <= rows && c + step <= cols
    };
    let kept: Vec<[usize; 3]> = tris
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            let sq = i / 2;
            !in_hole(sq / cols, sq % cols)
        })
        .map(|(_, t)| *t)
        .collect();
    sub_mesh(&pos, &kept)
}

/// 254x321 scene of disks, rings, bars and a spiral.
pub fn synthetic_scene() -> BinaryImage2 {
    BinaryImage2::from_fn(Box2::with_shape([254, 321]), |p| {
        let (y, x) = (p[0] as f64, p[1] as f64);
        let d = |cy: f64, cx: f64| ((y - cy).powi(2) + (x - cx).powi(2)).sqrt();
        let disk = d(70.0, 70.0) < 50.0;
        let ring = (30.0..45.0).contains(&d(180.0, 80.0));
        let bars = (20.0..230.0).contains(&y) && (150.0..300.0).contains(&x) && ((x as i32 - 150) % 40) < 14;
        let cross = (y - 127.0).abs() < 6.0 && (140.0..310.0).contains(&x);
        let spiral = {
            let (dy, dx) = (y - 200.0, x - 250.0);
            let r = (dy * dy + dx * dx).sqrt();
            let a = dy.atan2(dx) + std::f64::consts::PI;
            r < 45.0 && ((r - 6.0 * a) % 18.0 + 18.0) % 18.0 < 7.0
        };
        disk || ring || bars || cross || spiral
    })
}

/// 41x41x41 volume: a thick torus, a hollow ball and a plate with holes.
pub fn synthetic_volume() -> BinaryImage3 {
    BinaryImage3::from_fn(Box3::with_shape([41, 41, 41]), |p| {
        let (z, y, x) = (p[0] as f64, p[1] as f64, p[2] as f64);
        let torus = {
            let q = ((x - 14.0).powi(2) + (y - 14.0).powi(2)).sqrt() - 9.0;
            (q * q + (z - 12.0).powi(2)).sqrt() < 4.0
        };
        let r = ((x - 28.0).powi(2) + (y - 28.0).powi(2) + (z - 28.0).powi(2)).sqrt();
        let shell = (5.0..11.0).contains(&r);
        let plate = (34.0..38.0).contains(&z) && x > 2.0 && y > 2.0 && x < 38.0 && y < 20.0 && (p[2] % 9 != 4 || p[1] % 7 != 3);
        torus || shell || plate
    })
}

pub fn point2(r: i32, c: i32) -> topothin::Point2 {
    Point([r, c])
}
