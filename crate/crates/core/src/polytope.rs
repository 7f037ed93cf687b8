//! The cone contractions σ̂₀…σ̂₃ and the tetrahedral fractal they generate.
//!
//! In coefficient coordinates `(a, b, c, d)` of `(a + bφ, c + dφ)` the
//! sector maps act by nonnegative integer matrices σ̂ᵢ, and the same
//! matrices describe how rᵢ changes the arrow tallies of a cutting sequence.
//! Dividing each row by its sum gives row-stochastic matrices that map the
//! standard simplex of `R⁴` into itself; iterating them and embedding the
//! simplex as a regular tetrahedron draws a fractal of nested tetrahedra.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cutting::ArrowCounts;
use crate::{Error, Result};

/// Default maximum depth for [`iterate_fractal`].
pub const DEFAULT_MAX_DEPTH: usize = 7;

/// A 4×4 nonnegative integer matrix acting on column vectors `(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConeContraction {
    pub rows: [[u32; 4]; 4],
}

const DERIVED: [[[u32; 4]; 4]; 4] = [
    [[1, 0, 0, 1], [0, 1, 1, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[0, 1, 0, 1], [1, 1, 1, 1], [1, 0, 0, 1], [0, 1, 1, 1]],
    [[0, 1, 1, 0], [1, 1, 0, 1], [0, 1, 0, 1], [1, 1, 1, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 1, 0, 1]],
];

/// σ̂ᵢ as derived from the action of σᵢ on `(a + bφ, c + dφ)`.
pub fn contraction(i: u8) -> ConeContraction {
    assert!(i < 4, "sector index {i} out of range");
    ConeContraction {
        rows: DERIVED[i as usize],
    }
}

/// The variant of σ̂ᵢ with σ̂₀'s third row misprinted as `(0, 0, 1, 1)`.
/// It is kept only so tests can show that it breaks conjugacy.
pub fn printed_contraction(i: u8) -> ConeContraction {
    let mut m = contraction(i);
    if i == 0 {
        m.rows[2] = [0, 0, 1, 1];
    }
    m
}

impl ConeContraction {
    pub fn apply(&self, v: [u128; 4]) -> [u128; 4] {
        self.rows.map(|r| (0..4).map(|j| r[j] as u128 * v[j]).sum())
    }

    pub fn apply_counts(&self, n: ArrowCounts) -> ArrowCounts {
        let [a, b, c, d] = self.apply(n.as_array());
        ArrowCounts::new(a, b, c, d)
    }

    /// Each row divided by its sum: a row-stochastic matrix.
    pub fn normalized(&self) -> RatMat4 {
        self.rows.map(|r| {
            let s: u32 = r.iter().sum();
            r.map(|x| BigRational::new(x.into(), s.into()))
        })
    }

    pub fn det(&self) -> BigInt {
        det4(&self.rows.map(|r| r.map(|x| BigRational::from_integer(x.into())))).to_integer()
    }
}

/// An exact 4×4 rational matrix, row-major.
pub type RatMat4 = [[BigRational; 4]; 4];

fn identity4() -> RatMat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigRational::one() } else { BigRational::zero() }))
}

fn mul4(a: &RatMat4, b: &RatMat4) -> RatMat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..4).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
    })
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn det4(m: &RatMat4) -> BigRational {
    let mut a = m.clone();
    let mut det = BigRational::one();
    for col in 0..4 {
        let Some(p) = (col..4).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..4 {
            let f = &a[r][col] / &a[col][col];
            for c in col..4 {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Solves `xᵀ·M = p` for the row vector `x`: the coordinates of `p` in the
/// basis formed by the rows of `M`.
pub fn row_coordinates(m: &RatMat4, p: &[BigRational; 4]) -> Result<[BigRational; 4]> {
    // Transpose so the unknowns multiply columns, then eliminate.
    let mut a: Vec<Vec<BigRational>> = (0..4)
        .map(|i| (0..4).map(|j| m[j][i].clone()).chain([p[i].clone()]).collect())
        .collect();
    for col in 0..4 {
        let piv = (col..4)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Invariant("degenerate cell".into()))?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        for c in col..5 {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..4 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..5 {
                    let t = &f * &a[col][c];
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(std::array::from_fn(|i| a[i][4].clone()))
}

/// The matrix `V` sending the standard simplex of `R⁴` to a regular
/// tetrahedron centred at the origin.
pub fn embedding() -> [[f64; 3]; 4] {
    let (r2, r3) = (2f64.sqrt(), 3f64.sqrt());
    [
        [1.0, 0.0, -r2 / 4.0],
        [-0.5, r3 / 2.0, -r2 / 4.0],
        [-0.5, -r3 / 2.0, -r2 / 4.0],
        [0.0, 0.0, 0.75 * r2],
    ]
}

fn embed(row: &[BigRational; 4], v: &[[f64; 3]; 4]) -> [f64; 3] {
    let w: Vec<f64> = row
        .iter()
        .map(|x| num_traits::ToPrimitive::to_f64(x).expect("finite"))
        .collect();
    std::array::from_fn(|k| (0..4).map(|j| w[j] * v[j][k]).sum())
}

/// One tetrahedron of the fractal.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    /// Contractions applied, outermost first: the cell is the image of the
    /// whole simplex under `M_{w₁}⋯M_{wₙ}`.
    pub word: Vec<u8>,
    /// Vertices in `R⁴` (rows of the product matrix); each lies in the
    /// standard simplex.
    #[serde(skip)]
    pub simplex: RatMat4,
    /// Vertices in `R³` after the embedding.
    pub vertices: [[f64; 3]; 4],
}

impl Cell {
    /// `|det|` of the product matrix: the cell's volume relative to the
    /// whole simplex.
    pub fn relative_volume(&self) -> BigRational {
        det4(&self.simplex).abs()
    }

    /// Euclidean volume of the embedded tetrahedron.
    pub fn volume(&self) -> f64 {
        let [p0, p1, p2, p3] = self.vertices;
        let e = |p: [f64; 3]| [p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]];
        let (a, b, c) = (e(p1), e(p2), e(p3));
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        det.abs() / 6.0
    }
}

/// The cells of one depth of the fractal, in lexicographic word order.
#[derive(Clone, Debug, Serialize)]
pub struct SimplexMesh {
    pub depth: usize,
    pub cells: Vec<Cell>,
}

fn cell(word: Vec<u8>, simplex: RatMat4, v: &[[f64; 3]; 4]) -> Cell {
    let vertices = std::array::from_fn(|i| embed(&simplex[i], v));
    Cell {
        word,
        simplex,
        vertices,
    }
}

/// All `4ⁿ` cells at depth `n`, within the default maximum depth.
pub fn iterate_fractal(depth: usize) -> Result<SimplexMesh> {
    iterate_fractal_with_max(depth, DEFAULT_MAX_DEPTH)
}

pub fn iterate_fractal_with_max(depth: usize, max_depth: usize) -> Result<SimplexMesh> {
    if depth > max_depth {
        return Err(Error::Domain(format!("depth {depth} exceeds the maximum {max_depth}")));
    }
    let mats: Vec<RatMat4> = (0..4).map(|i| contraction(i).normalized()).collect();
    let (mats, v) = (&mats, embedding());
    if depth == 0 {
        return Ok(SimplexMesh {
            depth,
            cells: vec![cell(Vec::new(), identity4(), &v)],
        });
    }
    // Each part holds the words starting with one letter; products are
    // accumulated left to right so a word's prefix is shared.
    let cells = (0u8..4)
        .into_par_iter()
        .map(|first| {
            let mut level = vec![(vec![first], mats[first as usize].clone())];
            for _ in 1..depth {
                level = level
                    .iter()
                    .flat_map(|(w, m)| {
                        (0u8..4).map(move |i| {
                            let mut w = w.clone();
                            w.push(i);
                            (w, mul4(m, &mats[i as usize]))
                        })
                    })
                    .collect();
            }
            level.into_iter().map(|(w, m)| cell(w, m, &v)).collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(SimplexMesh { depth, cells })
}

/// Checks that every vertex of `child` has nonnegative coordinates with
/// respect to the vertices of `parent`, i.e. the child cell lies inside.
pub fn nested_in(child: &Cell, parent: &Cell) -> Result<bool> {
    for p in &child.simplex {
        let x = row_coordinates(&parent.simplex, p)?;
        if x.iter().any(|t| t.is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies, for each cell of `mesh`, that it lies inside the cell of
/// `parent` whose word is its own with the first letter dropped.
pub fn check_nesting(mesh: &SimplexMesh, parent: &SimplexMesh) -> Result<bool> {
    if mesh.depth != parent.depth + 1 {
        return Err(Error::Domain("parent mesh must be one level shallower".into()));
    }
    let index: HashMap<&[u8], &Cell> = parent.cells.iter().map(|c| (c.word.as_slice(), c)).collect();
    let results: Vec<Result<bool>> = mesh
        .cells
        .par_iter()
        .map(|c| {
            let p = index
                .get(&c.word[1..])
                .ok_or_else(|| Error::Invariant(format!("no parent for {:?}", c.word)))?;
            nested_in(c, p)
        })
        .collect();
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mesh file formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl std::str::FromStr for MeshFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(MeshFormat::Off),
            "obj" => Ok(MeshFormat::Obj),
            _ => Err(Error::Parse(format!("unknown mesh format {s:?} (expected off or obj)"))),
        }
    }
}

/// Faces of a tetrahedron `0123`, each listed counterclockwise when seen
/// from outside if the vertices are positively oriented.
const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

fn oriented_faces(c: &Cell) -> [[usize; 3]; 4] {
    let [p0, p1, p2, p3] = c.vertices;
    let e = |p: [f64; 3]| [p[0] - p0[0], p[1] - p0[1], p[2] - p0[2]];
    let (a, b, d) = (e(p1), e(p2), e(p3));
    let det = a[0] * (b[1] * d[2] - b[2] * d[1]) - a[1] * (b[0] * d[2] - b[2] * d[0])
        + a[2] * (b[0] * d[1] - b[1] * d[0]);
    if det >= 0.0 {
        FACES
    } else {
        FACES.map(|[x, y, z]| [x, z, y])
    }
}

/// Vertex table and per-cell vertex indices, deduplicating exactly equal
/// simplex points when `merge` is set.
fn vertex_table(mesh: &SimplexMesh, merge: bool) -> (Vec<[f64; 3]>, Vec<[usize; 4]>) {
    let mut verts = Vec::new();
    let mut seen: HashMap<&[BigRational; 4], usize> = HashMap::new();
    let mut cells = Vec::with_capacity(mesh.cells.len());
    for c in &mesh.cells {
        let idx = std::array::from_fn(|k| {
            if merge {
                if let Some(&i) = seen.get(&c.simplex[k]) {
                    return i;
                }
                seen.insert(&c.simplex[k], verts.len());
            }
            verts.push(c.vertices[k]);
            verts.len() - 1
        });
        cells.push(idx);
    }
    (verts, cells)
}

/// Writes the mesh as ASCII OFF or OBJ.  Vertices are listed cell by cell
/// in word order; with `merge`, repeated points keep their first index.
pub fn export_mesh(mesh: &SimplexMesh, format: MeshFormat, merge: bool) -> String {
    let (verts, cells) = vertex_table(mesh, merge);
    let mut out = String::new();
    match format {
        MeshFormat::Off => {
            let _ = writeln!(out, "OFF");
            let _ = writeln!(out, "{} {} 0", verts.len(), 4 * cells.len());
            for v in &verts {
                let _ = writeln!(out, "{:.12} {:.12} {:.12}", v[0], v[1], v[2]);
            }
            for (c, idx) in mesh.cells.iter().zip(&cells) {
                for f in oriented_faces(c) {
                    let _ = writeln!(out, "3 {} {} {}", idx[f[0]], idx[f[1]], idx[f[2]]);
                }
            }
        }
        MeshFormat::Obj => {
            let _ = writeln!(out, "# depth {} fractal, {} cells", mesh.depth, cells.len());
            for v in &verts {
                let _ = writeln!(out, "v {:.12} {:.12} {:.12}", v[0], v[1], v[2]);
            }
            for (c, idx) in mesh.cells.iter().zip(&cells) {
                let name: String = c.word.iter().map(|d| char::from(b'0' + d)).collect();
                let _ = writeln!(out, "o cell_{name}");
                for f in oriented_faces(c) {
                    let _ = writeln!(out, "f {} {} {}", idx[f[0]] + 1, idx[f[1]] + 1, idx[f[2]] + 1);
                }
            }
        }
    }
    out
}

/// A mesh read back from a file: vertices and triangular faces.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    /// Number of `o` groups (OBJ only).
    pub objects: usize,
}

impl ParsedMesh {
    /// Tetrahedra, assuming four consecutive faces per cell.
    pub fn cell_count(&self) -> usize {
        self.faces.len() / 4
    }
}

fn parse_err(line: usize, what: &str) -> Error {
    Error::Parse(format!("line {line}: {what}"))
}

fn parse_floats(toks: &[&str], line: usize) -> Result<[f64; 3]> {
    if toks.len() < 3 {
        return Err(parse_err(line, "expected three coordinates"));
    }
    let mut p = [0.0; 3];
    for (k, t) in toks[..3].iter().enumerate() {
        p[k] = t.parse().map_err(|_| parse_err(line, "bad coordinate"))?;
    }
    Ok(p)
}

pub fn parse_obj(text: &str) -> Result<ParsedMesh> {
    let mut m = ParsedMesh::default();
    for (n, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            Some(&"v") => m.vertices.push(parse_floats(&toks[1..], n + 1)?),
            Some(&"f") => {
                if toks.len() != 4 {
                    return Err(parse_err(n + 1, "expected a triangle"));
                }
                let mut f = [0; 3];
                for k in 0..3 {
                    let i: usize = toks[k + 1]
                        .split('/')
                        .next()
                        .and_then(|s| s.parse().ok())
                        .filter(|&i| i >= 1 && i <= m.vertices.len())
                        .ok_or_else(|| parse_err(n + 1, "bad vertex index"))?;
                    f[k] = i - 1;
                }
                m.faces.push(f);
            }
            Some(&"o") => m.objects += 1,
            _ => {}
        }
    }
    Ok(m)
}

pub fn parse_off(text: &str) -> Result<ParsedMesh> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "OFF")) => {}
        _ => return Err(parse_err(1, "missing OFF header")),
    }
    let (n, counts) = lines.next().ok_or_else(|| parse_err(2, "missing counts"))?;
    let counts: Vec<usize> = counts
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(n, "bad count")))
        .collect::<Result<_>>()?;
    if counts.len() < 2 {
        return Err(parse_err(n, "expected vertex and face counts"));
    }
    let mut m = ParsedMesh::default();
    for _ in 0..counts[0] {
        let (n, l) = lines.next().ok_or_else(|| parse_err(n, "too few vertices"))?;
        m.vertices.push(parse_floats(&l.split_whitespace().collect::<Vec<_>>(), n)?);
    }
    for _ in 0..counts[1] {
        let (n, l) = lines.next().ok_or_else(|| parse_err(n, "too few faces"))?;
        let t: Vec<usize> = l
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(n, "bad face")))
            .collect::<Result<_>>()?;
        if t.len() != 4 || t[0] != 3 || t[1..].iter().any(|&i| i >= m.vertices.len()) {
            return Err(parse_err(n, "expected a triangle with valid indices"));
        }
        m.faces.push([t[1], t[2], t[3]]);
    }
    Ok(m)
}
