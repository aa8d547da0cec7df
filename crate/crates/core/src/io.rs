//! File codecs: PBM and PGM for 2D images, VOL for volumes, OFF for triangle
//! meshes, plus an edge-list writer for 1-complexes.
//!
//! PBM uses 1 for foreground. VOL is a small raw format: a text header
//! `D3 <nx> <ny> <nz>` and a newline, then one byte (0 or 1) per voxel with x
//! varying fastest and z slowest. Voxel `(x, y, z)` is site `[z, y, x]`.

use std::fmt::Write as _;
use std::io::{Read, Write};

use thiserror::Error;

use crate::complex::{ComplexImage, SimplicialComplex};
use crate::graylevel::GrayGridImage2;
use crate::image::{BinaryImage2, BinaryImage3, Box2, Box3};

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, CodecError> {
    Err(CodecError::Malformed(msg.into()))
}

/// ASCII (P1/P2) or raw (P4/P5) netpbm payloads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PnmEncoding {
    Ascii,
    #[default]
    Raw,
}

/// Whitespace-and-comment aware reader over a netpbm header.
struct Tokens<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(data: &'a [u8]) -> Self {
        Tokens { data, pos: 0 }
    }

    fn skip_space(&mut self) {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b'#' => {
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn word(&mut self) -> Option<&'a [u8]> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.data.len() && !self.data[self.pos].is_ascii_whitespace() && self.data[self.pos] != b'#' {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.data[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<usize, CodecError> {
        match self.word() {
            None => malformed(format!("missing {what}")),
            Some(w) => match std::str::from_utf8(w).ok().and_then(|s| s.parse::<usize>().ok()) {
                Some(n) => Ok(n),
                None => malformed(format!("bad {what} {:?}", String::from_utf8_lossy(w))),
            },
        }
    }

    /// Skips the single whitespace byte that ends a raw header.
    fn raw_payload(&mut self) -> Result<&'a [u8], CodecError> {
        match self.data.get(self.pos) {
            Some(c) if c.is_ascii_whitespace() => Ok(&self.data[self.pos + 1..]),
            _ => malformed("missing whitespace after header"),
        }
    }

    /// Next ASCII PBM digit; these may be packed without separators.
    fn bit(&mut self) -> Result<bool, CodecError> {
        self.skip_space();
        match self.data.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(false)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(true)
            }
            Some(&c) => malformed(format!("unexpected byte {c:#04x} in PBM data")),
            None => malformed("truncated PBM data"),
        }
    }
}

fn read_all(mut reader: impl Read) -> Result<Vec<u8>, CodecError> {
    let mut buf = Vec::new();
    reader.read_to_end(&mut buf)?;
    Ok(buf)
}

fn checked_domain2(width: usize, height: usize) -> Result<Box2, CodecError> {
    let limit = i32::MAX as usize;
    if width == 0 || height == 0 {
        return malformed("empty image");
    }
    if width > limit || height > limit || width.checked_mul(height).is_none() {
        return malformed(format!("dimensions {width}x{height} too large"));
    }
    Ok(Box2::with_shape([height, width]))
}

fn magic<'a>(tokens: &mut Tokens<'a>) -> Result<&'a [u8], CodecError> {
    match tokens.word() {
        Some(m) => Ok(m),
        None => malformed("empty file"),
    }
}

pub fn read_pbm(reader: impl Read) -> Result<BinaryImage2, CodecError> {
    let data = read_all(reader)?;
    let mut t = Tokens::new(&data);
    let raw = match magic(&mut t)? {
        b"P1" => false,
        b"P4" => true,
        m => return malformed(format!("not a PBM file (magic {:?})", String::from_utf8_lossy(m))),
    };
    let width = t.number("width")?;
    let height = t.number("height")?;
    let domain = checked_domain2(width, height)?;
    let mut values = Vec::with_capacity(domain.len());
    if raw {
        let payload = t.raw_payload()?;
        let stride = width.div_ceil(8);
        if payload.len() < stride * height {
            return malformed("truncated PBM data");
        }
        for row in payload.chunks(stride).take(height) {
            values.extend((0..width).map(|x| row[x / 8] & (0x80 >> (x % 8)) != 0));
        }
    } else {
        for _ in 0..domain.len() {
            values.push(t.bit()?);
        }
    }
    Ok(BinaryImage2::from_vec(domain, values))
}

pub fn write_pbm(image: &BinaryImage2, encoding: PnmEncoding, mut writer: impl Write) -> Result<(), CodecError> {
    let [height, width] = image.domain().shape();
    let values = image.values();
    let mut out = Vec::new();
    match encoding {
        PnmEncoding::Ascii => {
            let mut s = format!("P1\n{width} {height}\n");
            for row in values.chunks(width) {
                let line: Vec<&str> = row.iter().map(|&v| if v { "1" } else { "0" }).collect();
                let _ = writeln!(s, "{}", line.join(" "));
            }
            out.extend_from_slice(s.as_bytes());
        }
        PnmEncoding::Raw => {
            out.extend_from_slice(format!("P4\n{width} {height}\n").as_bytes());
            for row in values.chunks(width) {
                for byte in row.chunks(8) {
                    out.push(byte.iter().enumerate().fold(0u8, |b, (i, &v)| if v { b | 0x80 >> i } else { b }));
                }
            }
        }
    }
    writer.write_all(&out)?;
    Ok(())
}

pub fn read_pgm(reader: impl Read) -> Result<GrayGridImage2, CodecError> {
    let data = read_all(reader)?;
    let mut t = Tokens::new(&data);
    let raw = match magic(&mut t)? {
        b"P2" => false,
        b"P5" => true,
        m => return malformed(format!("not a PGM file (magic {:?})", String::from_utf8_lossy(m))),
    };
    let width = t.number("width")?;
    let height = t.number("height")?;
    let maxval = t.number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return malformed(format!("unsupported maxval {maxval}"));
    }
    let domain = checked_domain2(width, height)?;
    let values = if raw {
        let payload = t.raw_payload()?;
        if payload.len() < domain.len() {
            return malformed("truncated PGM data");
        }
        payload[..domain.len()].to_vec()
    } else {
        let mut v = Vec::with_capacity(domain.len());
        for _ in 0..domain.len() {
            let n = t.number("pixel value")?;
            if n > maxval {
                return malformed(format!("pixel value {n} exceeds maxval {maxval}"));
            }
            v.push(n as u8);
        }
        v
    };
    if values.iter().any(|&v| v as usize > maxval) {
        return malformed(format!("pixel value exceeds maxval {maxval}"));
    }
    Ok(GrayGridImage2::from_vec(domain, values))
}

/// Writes with maxval 255.
pub fn write_pgm(image: &GrayGridImage2, encoding: PnmEncoding, mut writer: impl Write) -> Result<(), CodecError> {
    let [height, width] = image.domain().shape();
    let mut out = Vec::new();
    match encoding {
        PnmEncoding::Ascii => {
            let mut s = format!("P2\n{width} {height}\n255\n");
            for row in image.values().chunks(width) {
                let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{}", line.join(" "));
            }
            out.extend_from_slice(s.as_bytes());
        }
        PnmEncoding::Raw => {
            out.extend_from_slice(format!("P5\n{width} {height}\n255\n").as_bytes());
            out.extend_from_slice(image.values());
        }
    }
    writer.write_all(&out)?;
    Ok(())
}

pub fn read_vol(reader: impl Read) -> Result<BinaryImage3, CodecError> {
    let data = read_all(reader)?;
    let Some(nl) = data.iter().position(|&b| b == b'\n') else {
        return malformed("missing VOL header line");
    };
    let header = std::str::from_utf8(&data[..nl]).map_err(|_| CodecError::Malformed("non-text VOL header".into()))?;
    let mut words = header.split_ascii_whitespace();
    if words.next() != Some("D3") {
        return malformed("bad VOL magic");
    }
    let mut dims = [0usize; 3];
    for (d, name) in dims.iter_mut().zip(["nx", "ny", "nz"]) {
        *d = match words.next().and_then(|w| w.parse().ok()) {
            Some(n) if n > 0 && n <= i32::MAX as usize => n,
            _ => return malformed(format!("bad {name} in VOL header")),
        };
    }
    if words.next().is_some() {
        return malformed("trailing fields in VOL header");
    }
    let [nx, ny, nz] = dims;
    let Some(len) = nx.checked_mul(ny).and_then(|n| n.checked_mul(nz)) else {
        return malformed("VOL dimensions too large");
    };
    let payload = &data[nl + 1..];
    if payload.len() < len {
        return malformed(format!("truncated VOL data: {} of {len} bytes", payload.len()));
    }
    if payload.len() > len {
        return malformed("trailing bytes after VOL data");
    }
    let mut values = Vec::with_capacity(len);
    for &b in payload {
        match b {
            0 => values.push(false),
            1 => values.push(true),
            _ => return malformed(format!("VOL byte {b} is neither 0 nor 1")),
        }
    }
    Ok(BinaryImage3::from_vec(Box3::with_shape([nz, ny, nx]), values))
}

pub fn write_vol(image: &BinaryImage3, mut writer: impl Write) -> Result<(), CodecError> {
    let [nz, ny, nx] = image.domain().shape();
    let mut out = format!("D3 {nx} {ny} {nz}\n").into_bytes();
    out.extend(image.values().iter().map(|&v| v as u8));
    writer.write_all(&out)?;
    Ok(())
}

/// Triangle mesh as stored in an OFF file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OffMesh {
    pub positions: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
}

pub fn read_off(reader: impl Read) -> Result<OffMesh, CodecError> {
    let data = read_all(reader)?;
    let text = std::str::from_utf8(&data).map_err(|_| CodecError::Malformed("OFF file is not text".into()))?;
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let mut first = lines.next().unwrap_or("");
    // The keyword may share its line with the counts.
    let rest = first.strip_prefix("OFF");
    match rest {
        Some(r) if r.trim().is_empty() => first = lines.next().unwrap_or(""),
        Some(r) => first = r.trim(),
        None => return malformed("missing OFF keyword"),
    }
    let counts: Vec<usize> = first
        .split_ascii_whitespace()
        .map(|w| w.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CodecError::Malformed(format!("bad OFF counts line {first:?}")))?;
    let (nv, nf) = match counts[..] {
        [v, f] | [v, f, _] => (v, f),
        _ => return malformed(format!("bad OFF counts line {first:?}")),
    };
    let mut mesh = OffMesh { positions: Vec::with_capacity(nv.min(1 << 24)), triangles: Vec::with_capacity(nf.min(1 << 24)) };
    for i in 0..nv {
        let Some(line) = lines.next() else {
            return malformed(format!("OFF file has {i} vertices, header says {nv}"));
        };
        let xyz: Vec<f64> = line
            .split_ascii_whitespace()
            .take(3)
            .map(|w| w.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CodecError::Malformed(format!("bad vertex line {line:?}")))?;
        if xyz.len() != 3 {
            return malformed(format!("bad vertex line {line:?}"));
        }
        mesh.positions.push([xyz[0], xyz[1], xyz[2]]);
    }
    for i in 0..nf {
        let Some(line) = lines.next() else {
            return malformed(format!("OFF file has {i} faces, header says {nf}"));
        };
        let ids: Vec<usize> = line
            .split_ascii_whitespace()
            .map(|w| w.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CodecError::Malformed(format!("bad face line {line:?}")))?;
        match ids[..] {
            [3, a, b, c, ..] => {
                if let Some(&bad) = [a, b, c].iter().find(|&&v| v >= nv) {
                    return malformed(format!("face {i} uses vertex {bad} of {nv}"));
                }
                mesh.triangles.push([a, b, c]);
            }
            [n, ..] => return malformed(format!("face {i} has arity {n}, only triangles are supported")),
            [] => return malformed(format!("empty face line {i}")),
        }
    }
    if lines.next().is_some() {
        return malformed("more elements than the OFF header declares");
    }
    Ok(mesh)
}

/// Writes the mesh with an edge count of 0.
pub fn write_off(mesh: &OffMesh, mut writer: impl Write) -> Result<(), CodecError> {
    let mut s = format!("OFF\n{} {} 0\n", mesh.positions.len(), mesh.triangles.len());
    for p in &mesh.positions {
        let _ = writeln!(s, "{} {} {}", p[0], p[1], p[2]);
    }
    for t in &mesh.triangles {
        let _ = writeln!(s, "3 {} {} {}", t[0], t[1], t[2]);
    }
    writer.write_all(s.as_bytes())?;
    Ok(())
}

/// All vertices of `mesh` with only the triangles whose face is set in
/// `image`.
pub fn surviving_triangles(mesh: &SimplicialComplex, image: &ComplexImage) -> OffMesh {
    OffMesh {
        positions: mesh.positions.clone(),
        triangles: image.true_faces(2).map(|f| mesh.triangles[f.id]).collect(),
    }
}

/// One `i j` line per set edge, then one `i` line per set vertex that has no
/// set edge.
pub fn write_edge_list(mesh: &SimplicialComplex, image: &ComplexImage, mut writer: impl Write) -> Result<(), CodecError> {
    let mut s = String::new();
    let mut covered = vec![false; mesh.positions.len()];
    for e in image.true_faces(1) {
        let [a, b] = mesh.edges[e.id];
        covered[a] = true;
        covered[b] = true;
        let _ = writeln!(s, "{a} {b}");
    }
    for v in image.true_faces(0) {
        if !covered[v.id] {
            let _ = writeln!(s, "{}", v.id);
        }
    }
    writer.write_all(s.as_bytes())?;
    Ok(())
}
