//! Billiard trajectories in the regular pentagon, lengths, and SVG output.
//!
//! Billiards are computed exactly in the sheared chart `A = P⁻¹(pentagon)`,
//! where reflections in the edges have `Q[√5]` matrices.  A chord is tracked
//! by its direction and height `h = d × x`; since a reflection `L` fixes the
//! edge and has determinant −1, the height after a bounce at edge `k` is
//! `d' × Vₖ − (h − d × Vₖ)` — additions only.  Floats appear only when
//! points are mapped through `P` for output.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cutting::period_of;
use crate::flow::{pentagon_core_curve, pentagon_vertices, FlowOptions, Polygon};
use crate::golden::{GMat2, GVec2, GoldenNum, PHI_F64};
use crate::symmetry::{classify, Multiplier, SymmetryClass};
use crate::tree::{tree_vector, Cylinder, TreeNode, TreeWord};
use crate::{Error, Result};

/// The shear `P = [[1, cos π/5], [0, sin π/5]]` from golden-L coordinates to
/// the double pentagon, and the normalization placing pentagon A centred at
/// the origin with circumradius 1.
#[derive(Clone, Copy, Debug)]
pub struct AffineChart {
    pub p: [[f64; 2]; 2],
    pub p_inv: [[f64; 2]; 2],
    /// Centre of A in pentagon coordinates.
    pub center: (f64, f64),
    /// Circumradius of A in pentagon coordinates.
    pub circumradius: f64,
}

impl Default for AffineChart {
    fn default() -> Self {
        let (s, c) = (std::f64::consts::PI / 5.0).sin_cos();
        let side = 1.0 / PHI_F64;
        let r = side / (2.0 * s);
        // The bottom edge runs from (0, 0) to (side, 0).
        let center = (side / 2.0, r * (std::f64::consts::PI / 5.0).cos());
        AffineChart {
            p: [[1.0, c], [0.0, s]],
            p_inv: [[1.0, -c / s], [0.0, 1.0 / s]],
            center,
            circumradius: r,
        }
    }
}

impl AffineChart {
    /// `P·v` as floats.
    pub fn to_pentagon(&self, v: &GVec2) -> (f64, f64) {
        let (x, y) = v.to_f64();
        (self.p[0][0] * x + self.p[0][1] * y, self.p[1][0] * x + self.p[1][1] * y)
    }

    /// `P⁻¹·(x, y)`.
    pub fn from_pentagon(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (
            self.p_inv[0][0] * x + self.p_inv[0][1] * y,
            self.p_inv[1][0] * x + self.p_inv[1][1] * y,
        )
    }

    /// A point of the sheared chart in the normalized drawing frame.
    pub fn to_frame(&self, v: &GVec2) -> (f64, f64) {
        let (x, y) = self.to_pentagon(v);
        (
            (x - self.center.0) / self.circumradius,
            (y - self.center.1) / self.circumradius,
        )
    }
}

/// Lengths of a direction's trajectories, in a pentagon of unit diagonal.
#[derive(Clone, Debug, Serialize)]
pub struct LengthReport {
    /// Exact `|P·h|²` of the double-pentagon holonomy `h`.
    pub squared: GoldenNum,
    pub double_pentagon: f64,
    pub multiplier: Multiplier,
    pub billiard: f64,
}

/// `|P·h|²` for a holonomy `h`, which is `x² + φxy + y²` because
/// `2 cos π/5 = φ`.
pub fn squared_length(h: &GVec2) -> GoldenNum {
    &h.x * &h.x + &(&(&h.x * &h.y) * &GoldenNum::phi()) + &h.y * &h.y
}

pub fn geometric_length(node: &TreeNode, which: Cylinder) -> LengthReport {
    let h = match which {
        Cylinder::Short => node.vector.clone(),
        Cylinder::Long => node.vector.scale(&GoldenNum::phi()),
    };
    let squared = squared_length(&h);
    let dp = squared.to_f64().sqrt();
    let multiplier = Multiplier::for_node(node);
    LengthReport {
        squared,
        double_pentagon: dp,
        multiplier,
        billiard: dp * multiplier.as_f64(),
    }
}

/// `cos(36°·m)` exactly.
fn cos36(m: i64) -> GoldenNum {
    let half = |p: i64, q: i64| GoldenNum::from_parts(p.into(), q.into(), 2.into()).expect("nonzero");
    match m.rem_euclid(10) {
        0 => GoldenNum::one(),
        1 | 9 => half(0, 1),
        2 | 8 => half(-1, 1),
        3 | 7 => half(1, -1),
        4 | 6 => half(0, -1),
        _ => -GoldenNum::one(),
    }
}

/// Reflection in edge `k` of A, as a matrix in sheared coordinates.  Edge
/// `k` points at angle `72°·k`; the sheared image of its normal, scaled by
/// `sin 36°`, is `(−cos(θ − 36°), cos θ)`.
pub fn edge_reflection(k: usize) -> GMat2 {
    let a = Polygon::new(pentagon_vertices());
    let e = a.edge(k);
    let m = 2 * k as i64;
    let n = GVec2::new(-cos36(m - 1), cos36(m));
    let basis = GMat2::new(e.x.clone(), n.x.clone(), e.y.clone(), n.y.clone());
    let flip = GMat2::from_ints([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]);
    &(&basis * &flip) * &basis.inverse().expect("edge and normal are independent")
}

struct Direction {
    d: GVec2,
    hv: Vec<GoldenNum>,
    he: Vec<GoldenNum>,
    after: Vec<Option<usize>>,
}

/// Exact billiard dynamics in A with cached per-direction data.
struct Billiard {
    a: Polygon,
    reflections: Vec<GMat2>,
    dirs: Vec<Direction>,
    index: HashMap<GVec2, usize>,
}

impl Billiard {
    fn new() -> Self {
        Billiard {
            a: Polygon::new(pentagon_vertices()),
            reflections: (0..5).map(edge_reflection).collect(),
            dirs: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn dir(&mut self, d: &GVec2) -> usize {
        if let Some(&i) = self.index.get(d) {
            return i;
        }
        let hv = self.a.vertices.iter().map(|x| d.cross(x)).collect();
        let he = (0..5).map(|k| d.cross(&self.a.edge(k))).collect();
        self.dirs.push(Direction {
            d: d.clone(),
            hv,
            he,
            after: vec![None; 5],
        });
        self.index.insert(d.clone(), self.dirs.len() - 1);
        self.dirs.len() - 1
    }

    fn exit_edge(&self, di: usize, h: &GoldenNum) -> Result<usize> {
        let dir = &self.dirs[di];
        if dir.hv.iter().any(|x| x == h) {
            return Err(Error::ConePoint(format!("billiard chord at height {h} meets a corner")));
        }
        (0..5)
            .find(|&k| dir.he[k].is_positive() && dir.hv[k] < *h && *h < dir.hv[(k + 1) % 5])
            .ok_or_else(|| Error::Domain(format!("height {h} misses the pentagon")))
    }

    fn exit_point(&self, di: usize, k: usize, h: &GoldenNum) -> GVec2 {
        let dir = &self.dirs[di];
        let s = (h - &dir.hv[k]) / &dir.he[k];
        self.a.vertex(k) + &self.a.edge(k).scale(&s)
    }

    /// Reflects chord `(di, h)` at edge `k`.
    fn bounce(&mut self, di: usize, k: usize, h: &GoldenNum) -> (usize, GoldenNum) {
        let ni = match self.dirs[di].after[k] {
            Some(ni) => ni,
            None => {
                let nd = self.reflections[k].apply(&self.dirs[di].d);
                let ni = self.dir(&nd);
                self.dirs[di].after[k] = Some(ni);
                ni
            }
        };
        let (hv_old, hv_new) = (&self.dirs[di].hv[k], &self.dirs[ni].hv[k]);
        (ni, hv_new - &(h - hv_old))
    }
}

/// A rendered trajectory with its metadata.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    /// Polyline in the drawing frame; for closed trajectories the first and
    /// last points coincide.
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
    pub word: Option<TreeWord>,
    pub which: Option<Cylinder>,
    pub class: Option<SymmetryClass>,
    pub surface_period: Option<u128>,
    /// Number of bounces in one period.
    pub bounces: usize,
    /// Euclidean length in a pentagon of unit diagonal.
    pub length: f64,
}

impl Trajectory {
    pub fn empty() -> Self {
        Trajectory {
            points: Vec::new(),
            closed: false,
            word: None,
            which: None,
            class: None,
            surface_period: None,
            bounces: 0,
            length: 0.0,
        }
    }

    /// Bounce points, one per bounce.
    pub fn bounce_points(&self) -> &[(f64, f64)] {
        if self.points.is_empty() {
            &self.points
        } else {
            &self.points[1..]
        }
    }
}

/// Traces the billiard trajectory of the chosen cylinder in the direction
/// of `w`.  The start lies on the edge of A whose midpoint is on the core
/// curve, at fraction `offset` along it; `offset = 1/2` gives the core
/// curve itself.
pub fn billiard_trajectory(w: &TreeWord, which: Cylinder, offset: &BigRational) -> Result<Trajectory> {
    if !offset.is_positive() || *offset >= BigRational::one() {
        return Err(Error::Domain(format!("offset {offset} is not in (0, 1)")));
    }
    let node = tree_vector(w);
    let v = &node.vector;
    let (core, _) = pentagon_core_curve(v, which, FlowOptions::default())?;
    let mut bil = Billiard::new();
    let k0 = (0..5)
        .find(|&k| bil.a.midpoint(k) == core.position)
        .ok_or_else(|| Error::Invariant("core curve does not start at an edge midpoint".into()))?;
    let e0 = bil.a.edge(k0);
    let start = bil.a.vertex(k0) + &e0.scale(&GoldenNum::rational(offset.clone()));
    let d0 = if e0.cross(v).is_positive() { v.clone() } else { -v };
    let d0i = bil.dir(&d0);
    let h0 = d0.cross(&start);

    let chart = AffineChart::default();
    let cap = crate::flow::step_cap();
    let mut exact = Vec::new();
    let (mut di, mut h) = (d0i, h0.clone());
    loop {
        if exact.len() as u64 >= cap {
            return Err(Error::StepCap(cap));
        }
        let k = bil.exit_edge(di, &h).map_err(|e| match e {
            Error::ConePoint(_) => Error::ConePoint(format!("offset {offset} runs into a corner")),
            e => e,
        })?;
        exact.push(bil.exit_point(di, k, &h));
        let (ni, nh) = bil.bounce(di, k, &h);
        di = ni;
        h = nh;
        if di == d0i && h == h0 {
            break;
        }
    }
    if exact.last() != Some(&start) {
        return Err(Error::Invariant("billiard trajectory did not close at its start".into()));
    }
    let mut pts = vec![chart.to_frame(&start)];
    pts.extend(exact.iter().map(|x| chart.to_frame(x)));
    let mut length = 0.0;
    let mut prev = chart.to_pentagon(&start);
    for x in &exact {
        let cur = chart.to_pentagon(x);
        length += ((cur.0 - prev.0).powi(2) + (cur.1 - prev.1).powi(2)).sqrt();
        prev = cur;
    }
    Ok(Trajectory {
        points: pts,
        closed: true,
        word: Some(w.clone()),
        which: Some(which),
        class: Some(classify(w).1),
        surface_period: Some(period_of(&node.coeffs, which)),
        bounces: exact.len(),
        length,
    })
}

fn rotate((x, y): (f64, f64), deg: f64) -> (f64, f64) {
    let (s, c) = deg.to_radians().sin_cos();
    (c * x - s * y, s * x + c * y)
}

/// Reflection across the line through the origin at angle `deg`.
fn reflect((x, y): (f64, f64), deg: f64) -> (f64, f64) {
    let (s, c) = (2.0 * deg).to_radians().sin_cos();
    (c * x + s * y, s * x - c * y)
}

/// Matching tolerance for bounce points.
pub const VISUAL_TOLERANCE: f64 = 1e-9;

/// True when `b` is `a` as a multiset, up to [`VISUAL_TOLERANCE`].
fn same_point_multiset(a: &[(f64, f64)], b: &[(f64, f64)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut sorted: Vec<(f64, f64)> = b.to_vec();
    sorted.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used = vec![false; sorted.len()];
    a.iter().all(|p| {
        let lo = sorted.partition_point(|q| q.0 < p.0 - VISUAL_TOLERANCE);
        let hit = (lo..sorted.len())
            .take_while(|&i| sorted[i].0 <= p.0 + VISUAL_TOLERANCE)
            .find(|&i| !used[i] && (sorted[i].1 - p.1).abs() <= VISUAL_TOLERANCE);
        hit.map(|i| used[i] = true).is_some()
    })
}

/// The symmetries of the pentagon, as maps of the drawing frame: rotations
/// by multiples of 72° and reflections in the five axes.
pub fn pentagon_symmetries() -> Vec<Box<dyn Fn((f64, f64)) -> (f64, f64)>> {
    let mut out: Vec<Box<dyn Fn((f64, f64)) -> (f64, f64)>> = Vec::new();
    for k in 0..5 {
        out.push(Box::new(move |p| rotate(p, 72.0 * k as f64)));
    }
    for k in 0..5 {
        out.push(Box::new(move |p| reflect(p, 90.0 + 36.0 * k as f64)));
    }
    out
}

/// Detects the symmetry of a closed trajectory from its bounce points:
/// invariance under the 72° rotation gives `DihedralFull`, otherwise
/// invariance under some reflection gives `BilateralOnly`.
pub fn symmetry_visual_check(t: &Trajectory) -> Option<SymmetryClass> {
    let pts = t.bounce_points();
    let image = |f: &dyn Fn((f64, f64)) -> (f64, f64)| pts.iter().map(|&p| f(p)).collect::<Vec<_>>();
    if same_point_multiset(&image(&|p| rotate(p, 72.0)), pts) {
        return Some(SymmetryClass::DihedralFull);
    }
    let reflective = (0..5).any(|k| same_point_multiset(&image(&|p| reflect(p, 90.0 + 36.0 * k as f64)), pts));
    reflective.then_some(SymmetryClass::BilateralOnly)
}

/// True when some symmetry of the pentagon carries one trajectory's bounce
/// points onto the other's.
pub fn congruent(a: &Trajectory, b: &Trajectory) -> bool {
    let (pa, pb) = (a.bounce_points(), b.bounce_points());
    pentagon_symmetries()
        .iter()
        .any(|f| same_point_multiset(&pa.iter().map(|&p| f(p)).collect::<Vec<_>>(), pb))
}

/// Drawing options for SVG output.
#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    pub size_px: u32,
    pub stroke: String,
    pub stroke_width: f64,
    pub outline: String,
    pub outline_width: f64,
    pub background: Option<String>,
    pub point_radius: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            size_px: 600,
            stroke: "#1f4e79".into(),
            stroke_width: 0.004,
            outline: "#000000".into(),
            outline_width: 0.01,
            background: None,
            point_radius: 0.35,
        }
    }
}

impl Style {
    /// Reads a TOML table of overrides.  Keys: `size`, `stroke`,
    /// `stroke_width`, `outline`, `outline_width`, `background`,
    /// `point_radius`.
    pub fn parse_config(text: &str) -> Result<Style> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Overrides {
            size: Option<u32>,
            stroke: Option<String>,
            stroke_width: Option<f64>,
            outline: Option<String>,
            outline_width: Option<f64>,
            background: Option<String>,
            point_radius: Option<f64>,
        }
        let o: Overrides = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let num = |name: &str, v: Option<f64>, default: f64| match v {
            Some(x) if !(x.is_finite() && x >= 0.0) => {
                Err(Error::Parse(format!("{name} must be a non-negative number, got {x}")))
            }
            v => Ok(v.unwrap_or(default)),
        };
        let d = Style::default();
        Ok(Style {
            size_px: o.size.unwrap_or(d.size_px),
            stroke: o.stroke.unwrap_or(d.stroke),
            stroke_width: num("stroke_width", o.stroke_width, d.stroke_width)?,
            outline: o.outline.unwrap_or(d.outline),
            outline_width: num("outline_width", o.outline_width, d.outline_width)?,
            background: o.background.or(d.background),
            point_radius: num("point_radius", o.point_radius, d.point_radius)?,
        })
    }
}

fn svg_header(out: &mut String, style: &Style, view: (f64, f64, f64, f64)) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="{1:.6} {2:.6} {3:.6} {4:.6}">"#,
        style.size_px, view.0, view.1, view.2, view.3
    );
    if let Some(bg) = &style.background {
        let _ = writeln!(
            out,
            r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="{bg}"/>"#,
            view.0, view.1, view.2, view.3
        );
    }
}

fn points_attr(pts: impl Iterator<Item = (f64, f64)>) -> String {
    pts.map(|(x, y)| format!("{x:.6},{:.6}", -y)).collect::<Vec<_>>().join(" ")
}

/// Draws the pentagon outline and the trajectory.  Output depends only on
/// the inputs, so repeated calls are byte-identical.
pub fn render_svg(t: &Trajectory, style: &Style) -> String {
    let chart = AffineChart::default();
    let mut out = String::new();
    svg_header(&mut out, style, (-1.1, -1.1, 2.2, 2.2));
    if let (Some(w), Some(which)) = (&t.word, t.which) {
        let _ = writeln!(out, "<title>{w} {which}</title>");
    }
    let corners = pentagon_vertices().iter().map(|v| chart.to_frame(v)).collect::<Vec<_>>();
    let _ = writeln!(
        out,
        r#"<polygon points="{}" fill="none" stroke="{}" stroke-width="{:.6}"/>"#,
        points_attr(corners.into_iter()),
        style.outline,
        style.outline_width
    );
    if !t.points.is_empty() {
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="{:.6}" stroke-linejoin="round"/>"#,
            points_attr(t.points.iter().copied()),
            style.stroke,
            style.stroke_width
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Scatter plot of tree vectors in `[0, n]²`, coloured by depth.
pub fn scatter_svg(nodes: &[TreeNode], n: f64, style: &Style) -> String {
    let mut out = String::new();
    let pad = n * 0.02;
    svg_header(&mut out, style, (-pad, -n - pad, n + 2.0 * pad, n + 2.0 * pad));
    let max_depth = nodes.iter().map(TreeNode::depth).max().unwrap_or(0).max(1);
    let _ = writeln!(out, r#"<g stroke="none">"#);
    for node in nodes {
        let (x, y) = node.vector.to_f64();
        let hue = 300.0 * node.depth() as f64 / max_depth as f64;
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.6}" cy="{:.6}" r="{:.6}" fill="hsl({hue:.1},70%,45%)"><title>{}</title></circle>"#,
            -y,
            style.point_radius,
            node.word
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Convenience for the core curve: `offset = 1/2`.
pub fn core_trajectory(w: &TreeWord, which: Cylinder) -> Result<Trajectory> {
    billiard_trajectory(w, which, &BigRational::new(1.into(), 2.into()))
}

/// Exact check that a rational offset is strictly inside `(0, 1)`.
pub fn valid_offset(offset: &BigRational) -> bool {
    offset.is_positive() && *offset < BigRational::one() && !offset.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::billiard_period;
    use crate::tree::{enumerate_tree, mirror_word};

    fn w(s: &str) -> TreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn chart_maps_sheared_pentagon_to_regular_one() {
        let chart = AffineChart::default();
        for v in pentagon_vertices() {
            let (x, y) = chart.to_frame(&v);
            assert!(((x * x + y * y).sqrt() - 1.0).abs() < 1e-12);
            let back = chart.from_pentagon(chart.to_pentagon(&v));
            let (vx, vy) = v.to_f64();
            assert!((back.0 - vx).abs() < 1e-12 && (back.1 - vy).abs() < 1e-12);
        }
        // The bottom edge is horizontal and below the centre.
        let a = chart.to_frame(&pentagon_vertices()[0]);
        let b = chart.to_frame(&pentagon_vertices()[1]);
        assert!((a.1 - b.1).abs() < 1e-12 && a.1 < 0.0);
    }

    #[test]
    fn reflections_fix_their_edges() {
        let a = Polygon::new(pentagon_vertices());
        let chart = AffineChart::default();
        for k in 0..5 {
            let l = edge_reflection(k);
            assert_eq!(l.apply(&a.edge(k)), a.edge(k));
            assert_eq!(l.det(), GoldenNum::integer(-1));
            assert_eq!(&l * &l, GMat2::identity());
            // In pentagon coordinates the reflection is orthogonal.
            let d = GVec2::from_ints((1, 0), (0, 0));
            let (x, y) = chart.to_pentagon(&d);
            let (rx, ry) = chart.to_pentagon(&l.apply(&d));
            assert!(((x * x + y * y) - (rx * rx + ry * ry)).abs() < 1e-12);
        }
    }

    #[test]
    fn length_examples() {
        let root = TreeNode::root();
        assert!((geometric_length(&root, Cylinder::Short).double_pentagon - 1.0).abs() < 1e-12);
        assert!((geometric_length(&root, Cylinder::Long).double_pentagon - PHI_F64).abs() < 1e-12);
        let node = tree_vector(&w(&format!("1{}2", "0".repeat(35))));
        let l = geometric_length(&node, Cylinder::Short);
        assert!((l.billiard - 909.0).abs() < 1.0, "{}", l.billiard);
        let l = geometric_length(&tree_vector(&w("12121")), Cylinder::Short);
        assert!((l.billiard - 964.0).abs() < 1.0, "{}", l.billiard);
    }

    #[test]
    fn root_core_is_the_midpoint_pentagon() {
        let t = core_trajectory(&w(""), Cylinder::Short).unwrap();
        assert_eq!(t.bounces, 5);
        assert!((t.length - 2.5).abs() < 1e-9);
        let r = 1.0 / AffineChart::default().circumradius;
        for &(x, y) in t.bounce_points() {
            // Midpoints of the edges sit at distance cos 36° from the centre.
            assert!(((x * x + y * y).sqrt() - (36f64).to_radians().cos()).abs() < 1e-9, "{r}");
        }
        assert_eq!(symmetry_visual_check(&t), Some(SymmetryClass::DihedralFull));
    }

    #[test]
    fn known_examples_render_with_expected_symmetry() {
        let t = core_trajectory(&w("120"), Cylinder::Short).unwrap();
        assert_eq!(t.bounces, 110);
        let t = core_trajectory(&w("121"), Cylinder::Short).unwrap();
        assert_eq!(symmetry_visual_check(&t), Some(SymmetryClass::BilateralOnly));
        let t = core_trajectory(&w("23"), Cylinder::Long).unwrap();
        assert_eq!(symmetry_visual_check(&t), Some(SymmetryClass::DihedralFull));
        let t = core_trajectory(&w("2011"), Cylinder::Short).unwrap();
        assert_eq!(symmetry_visual_check(&t), Some(SymmetryClass::BilateralOnly));
    }

    #[test]
    fn off_core_start_and_bad_offsets() {
        let t = billiard_trajectory(&w("121"), Cylinder::Short, &BigRational::new(2.into(), 5.into()));
        assert!(t.is_ok());
        assert!(billiard_trajectory(&w("1"), Cylinder::Short, &BigRational::zero()).is_err());
        assert!(billiard_trajectory(&w("1"), Cylinder::Short, &BigRational::one()).is_err());
    }

    #[test]
    fn closure_bounces_and_symmetry_to_depth_three() {
        for node in enumerate_tree(3) {
            for which in Cylinder::BOTH {
                let t = core_trajectory(&node.word, which).unwrap();
                let (first, last) = (t.points[0], *t.points.last().unwrap());
                assert!((first.0 - last.0).abs() < 1e-9 && (first.1 - last.1).abs() < 1e-9);
                assert_eq!(t.bounces as u128, billiard_period(&node, which).unwrap());
                assert_eq!(symmetry_visual_check(&t), Some(classify(&node.word).1));
                let l = geometric_length(&node, which).billiard;
                assert!((t.length - l).abs() < 1e-9 * l.max(1.0), "{} {which}", node.word);
            }
        }
    }

    #[test]
    fn mirror_words_give_congruent_trajectories() {
        for node in enumerate_tree(3).skip(1) {
            let m = mirror_word(&node.word).unwrap();
            for which in Cylinder::BOTH {
                let a = core_trajectory(&node.word, which).unwrap();
                let b = core_trajectory(&m, which).unwrap();
                assert!(congruent(&a, &b), "{} {which}", node.word);
            }
        }
    }

    #[test]
    fn svg_is_deterministic_and_parses() {
        let t = core_trajectory(&w("1000"), Cylinder::Short).unwrap();
        let style = Style::default();
        let a = render_svg(&t, &style);
        assert_eq!(a, render_svg(&t, &style));
        assert!(a.starts_with("<?xml") && a.trim_end().ends_with("</svg>"));
        let empty = render_svg(&Trajectory::empty(), &style);
        assert!(!empty.contains("<polyline"));
        let nodes = crate::tree::enumerate_in_box(&GoldenNum::integer(5));
        let s = scatter_svg(&nodes, 5.0, &style);
        assert_eq!(s.matches("<circle").count(), nodes.len());
    }

    #[test]
    fn style_config() {
        let s = Style::parse_config("size = 300\nstroke = \"#ff0000\" # red\n\nstroke_width = 0.01").unwrap();
        assert_eq!(s.size_px, 300);
        assert_eq!(s.stroke, "#ff0000");
        assert_eq!(s.stroke_width, 0.01);
        assert!(Style::parse_config("colour = red").is_err());
        assert!(Style::parse_config("stroke_width = -1").is_err());
    }
}
