//! An exact straight-line flow on translation surfaces given as convex
//! polygons with edges glued by translation.
//!
//! Two charts are built in: the golden L (three rectangles) and the sheared
//! double pentagon, the image of the regular double pentagon under `P⁻¹`,
//! whose vertices all lie in `Z[φ]²`.  The flow never divides: for a fixed
//! direction `v`, a chord of a convex polygon is determined by its height
//! `h = v × x`, the exit edge is the outgoing edge whose height range
//! contains `h`, and crossing an edge adds the height of its gluing
//! translation.  The trajectory is periodic exactly when the pair
//! (polygon, height) recurs.

use serde::Serialize;

use crate::golden::{GVec2, GoldenNum};
use crate::itinerary::cylinder_vectors;
use crate::tree::{tree_vector, Cylinder, TreeWord};
use crate::{Error, Result};

/// Default cap on edge crossings for one flow.
pub const DEFAULT_STEP_CAP: u64 = 1_000_000;

/// The step cap, overridden by the `PENTA_MAX_STEPS` environment variable.
pub fn step_cap() -> u64 {
    std::env::var("PENTA_MAX_STEPS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_CAP)
}

/// A convex polygon with vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<GVec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<GVec2>) -> Self {
        Polygon { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, k: usize) -> &GVec2 {
        &self.vertices[k % self.len()]
    }

    /// Edge vector from vertex `k` to vertex `k + 1`.
    pub fn edge(&self, k: usize) -> GVec2 {
        self.vertex(k + 1) - self.vertex(k)
    }

    pub fn midpoint(&self, k: usize) -> GVec2 {
        let half = GoldenNum::from_parts(1.into(), 0.into(), 2.into()).expect("nonzero");
        (self.vertex(k) + self.vertex(k + 1)).scale(&half)
    }

    /// Twice the signed area.
    pub fn double_area(&self) -> GoldenNum {
        (0..self.len()).fold(GoldenNum::zero(), |acc, k| {
            acc + self.vertex(k).cross(self.vertex(k + 1))
        })
    }

    pub fn is_convex_ccw(&self) -> bool {
        (0..self.len()).all(|k| self.edge(k).cross(&self.edge(k + 1)).is_positive())
    }

    /// True when `p` lies inside or on the boundary.
    pub fn contains(&self, p: &GVec2) -> bool {
        (0..self.len()).all(|k| !self.edge(k).cross(&(p - self.vertex(k))).is_negative())
    }
}

/// Where the far side of an edge continues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGlue {
    pub polygon: usize,
    pub edge: usize,
    /// Added to a point of this edge to get the same point on the partner.
    pub translation: GVec2,
}

/// A translation surface: convex polygons plus an edge pairing, with an
/// optional label per edge used to record cutting sequences.
#[derive(Clone, Debug)]
pub struct SurfaceChart {
    pub polygons: Vec<Polygon>,
    pub glue: Vec<Vec<EdgeGlue>>,
    pub labels: Option<Vec<Vec<u8>>>,
}

impl SurfaceChart {
    /// Builds a chart from `(polygon, edge) ↔ (polygon, edge)` pairs,
    /// checking that partners are parallel, equal in length and opposite in
    /// orientation.
    pub fn new(
        polygons: Vec<Polygon>,
        pairs: &[((usize, usize), (usize, usize))],
        labels: Option<Vec<Vec<u8>>>,
    ) -> Result<Self> {
        let mut glue: Vec<Vec<Option<EdgeGlue>>> =
            polygons.iter().map(|p| vec![None; p.len()]).collect();
        for &((p, e), (q, f)) in pairs {
            let (pp, qq) = (&polygons[p], &polygons[q]);
            if pp.edge(e) != -&qq.edge(f) {
                return Err(Error::Invariant(format!(
                    "edge {e} of polygon {p} and edge {f} of polygon {q} are not opposite"
                )));
            }
            let t = qq.vertex(f + 1) - pp.vertex(e);
            for (a, b, t) in [(p, e, t.clone()), (q, f, -&t)] {
                if glue[a][b].is_some() {
                    return Err(Error::Invariant(format!("edge {b} of polygon {a} glued twice")));
                }
                let partner = if (a, b) == (p, e) { (q, f) } else { (p, e) };
                glue[a][b] = Some(EdgeGlue {
                    polygon: partner.0,
                    edge: partner.1,
                    translation: t,
                });
            }
        }
        let glue = glue
            .into_iter()
            .enumerate()
            .map(|(p, edges)| {
                edges
                    .into_iter()
                    .enumerate()
                    .map(|(e, g)| {
                        g.ok_or_else(|| Error::Invariant(format!("edge {e} of polygon {p} unglued")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(polygon) = polygons.iter().position(|p| !p.is_convex_ccw()) {
            return Err(Error::Invariant(format!("polygon {polygon} is not convex and counterclockwise")));
        }
        Ok(SurfaceChart {
            polygons,
            glue,
            labels,
        })
    }

    pub fn area(&self) -> GoldenNum {
        let half = GoldenNum::from_parts(1.into(), 0.into(), 2.into()).expect("nonzero");
        self.polygons
            .iter()
            .fold(GoldenNum::zero(), |acc, p| acc + p.double_area())
            * half
    }

    /// The golden L: the unit square `S` (polygon 0), the rectangle
    /// `R = [1, φ] × [0, 1]` (polygon 1) and `T = [0, 1] × [1, φ]` (polygon 2).
    /// Edges are numbered bottom, right, top, left.
    pub fn golden_l() -> Self {
        let phi = || GoldenNum::phi();
        let rect = |x0: GoldenNum, x1: GoldenNum, y0: GoldenNum, y1: GoldenNum| {
            Polygon::new(vec![
                GVec2::new(x0.clone(), y0.clone()),
                GVec2::new(x1.clone(), y0),
                GVec2::new(x1, y1.clone()),
                GVec2::new(x0, y1),
            ])
        };
        let (zero, one) = (GoldenNum::zero, GoldenNum::one);
        let polygons = vec![
            rect(zero(), one(), zero(), one()),
            rect(one(), phi(), zero(), one()),
            rect(zero(), one(), one(), phi()),
        ];
        let pairs = [
            ((0, 0), (2, 2)),
            ((0, 1), (1, 3)),
            ((0, 2), (2, 0)),
            ((0, 3), (1, 1)),
            ((1, 0), (1, 2)),
            ((2, 1), (2, 3)),
        ];
        SurfaceChart::new(polygons, &pairs, None).expect("the golden L is well formed")
    }

    /// The double pentagon in sheared coordinates.
    ///
    /// Polygon 0 is `A = P⁻¹(regular pentagon)` with vertices `(0,0)`,
    /// `(φ̄,0)`, `(0,1)`, `(−1,φ)`, `(−1,1)`; polygon 1 is `−A`.  Edge `k` of A
    /// is glued to edge `k` of `−A`.  Labels follow the edge directions of the
    /// regular pentagon: 1 for the 36° edges, 2 for 144°, 3 for 108°, 4 for
    /// 72° and 5 for the horizontal ones.
    pub fn double_pentagon() -> Self {
        let a = pentagon_vertices();
        let b: Vec<GVec2> = a.iter().map(|v| -v).collect();
        let pairs: Vec<_> = (0..5).map(|k| ((0, k), (1, k))).collect();
        let labels = vec![PENTAGON_LABELS.to_vec(), PENTAGON_LABELS.to_vec()];
        SurfaceChart::new(vec![Polygon::new(a), Polygon::new(b)], &pairs, Some(labels))
            .expect("the double pentagon is well formed")
    }
}

/// Edge labels of the sheared pentagon, edge `k` running from vertex `k`.
pub const PENTAGON_LABELS: [u8; 5] = [5, 4, 2, 1, 3];

/// Vertices of the sheared pentagon `P⁻¹(regular pentagon)`, counterclockwise
/// from the left end of the bottom edge.
pub fn pentagon_vertices() -> Vec<GVec2> {
    vec![
        GVec2::from_ints((0, 0), (0, 0)),
        GVec2::from_ints((-1, 1), (0, 0)),
        GVec2::from_ints((0, 0), (1, 0)),
        GVec2::from_ints((-1, 0), (0, 1)),
        GVec2::from_ints((-1, 0), (1, 0)),
    ]
}

/// A starting point for the flow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowState {
    pub polygon: usize,
    pub position: GVec2,
    pub direction: GVec2,
}

/// What to collect while flowing.
#[derive(Clone, Copy, Debug)]
pub struct FlowOptions {
    pub cap: u64,
    /// Record the exact crossing points.
    pub record_points: bool,
    /// Accumulate, per polygon, `v · (exit − entry)` over all chords.
    pub measure_polygons: bool,
}

impl Default for FlowOptions {
    fn default() -> Self {
        FlowOptions {
            cap: step_cap(),
            record_points: false,
            measure_polygons: false,
        }
    }
}

/// One period of a closed trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct FlowReturn {
    /// Total displacement over one period.
    pub holonomy: GVec2,
    /// Number of edge crossings in one period.
    pub crossings: u64,
    /// Labels of the crossed edges, when the chart is labelled.
    pub labels: Vec<u8>,
    /// `(polygon left, edge, point)` for every crossing, if recorded.
    #[serde(skip)]
    pub points: Vec<(usize, usize, GVec2)>,
    /// Per-polygon sums of `v · (exit − entry)`, if measured.
    #[serde(skip)]
    pub occupancy: Vec<GoldenNum>,
}

struct Heights {
    vertex: Vec<Vec<GoldenNum>>,
    edge: Vec<Vec<GoldenNum>>,
    glue: Vec<Vec<GoldenNum>>,
}

impl Heights {
    fn new(chart: &SurfaceChart, v: &GVec2) -> Self {
        let vertex = chart
            .polygons
            .iter()
            .map(|p| p.vertices.iter().map(|x| v.cross(x)).collect())
            .collect();
        let edge = chart
            .polygons
            .iter()
            .map(|p| (0..p.len()).map(|k| v.cross(&p.edge(k))).collect())
            .collect();
        let glue = chart
            .glue
            .iter()
            .map(|g| g.iter().map(|e| v.cross(&e.translation)).collect())
            .collect();
        Heights { vertex, edge, glue }
    }

    /// The edge through which the chord at height `h` leaves polygon `p`
    /// (`outgoing = true`) or enters it.
    fn chord_edge(&self, p: usize, h: &GoldenNum, outgoing: bool) -> Result<usize> {
        let hv = &self.vertex[p];
        let n = hv.len();
        if hv.iter().any(|x| x == h) {
            return Err(Error::ConePoint(format!("chord at height {h} of polygon {p} meets a vertex")));
        }
        for k in 0..n {
            let he = &self.edge[p][k];
            let (lo, hi) = if outgoing {
                if !he.is_positive() {
                    continue;
                }
                (&hv[k], &hv[(k + 1) % n])
            } else {
                if !he.is_negative() {
                    continue;
                }
                (&hv[(k + 1) % n], &hv[k])
            };
            if lo < h && h < hi {
                return Ok(k);
            }
        }
        Err(Error::Domain(format!("height {h} misses polygon {p}")))
    }

    fn point_on_edge(&self, chart: &SurfaceChart, p: usize, k: usize, h: &GoldenNum) -> GVec2 {
        let poly = &chart.polygons[p];
        let s = (h - &self.vertex[p][k]) / &self.edge[p][k];
        poly.vertex(k) + &poly.edge(k).scale(&s)
    }
}

/// Flows from `start` until it returns, with the default options.
pub fn flow_to_return(chart: &SurfaceChart, start: &FlowState) -> Result<FlowReturn> {
    flow_with(chart, start, FlowOptions::default())
}

/// Flows from `start` until the pair (polygon, chord) recurs.
pub fn flow_with(chart: &SurfaceChart, start: &FlowState, opts: FlowOptions) -> Result<FlowReturn> {
    let v = &start.direction;
    if v.is_zero() {
        return Err(Error::Domain("flow direction must be nonzero".into()));
    }
    let poly0 = chart
        .polygons
        .get(start.polygon)
        .ok_or_else(|| Error::Domain(format!("no polygon {}", start.polygon)))?;
    if !poly0.contains(&start.position) {
        return Err(Error::Domain(format!(
            "{} is not in polygon {}",
            start.position, start.polygon
        )));
    }
    let heights = Heights::new(chart, v);
    let h0 = v.cross(&start.position);
    let (mut p, mut h) = (start.polygon, h0.clone());
    let mut out = FlowReturn {
        holonomy: GVec2::zero(),
        crossings: 0,
        labels: Vec::new(),
        points: Vec::new(),
        occupancy: vec![GoldenNum::zero(); chart.polygons.len()],
    };
    let mut shift = GVec2::zero();
    loop {
        if out.crossings >= opts.cap {
            return Err(Error::StepCap(opts.cap));
        }
        let k = heights.chord_edge(p, &h, true)?;
        if opts.record_points || opts.measure_polygons {
            let exit = heights.point_on_edge(chart, p, k, &h);
            if opts.measure_polygons {
                let k_in = heights.chord_edge(p, &h, false)?;
                let entry = heights.point_on_edge(chart, p, k_in, &h);
                out.occupancy[p] += &v.dot(&(&exit - &entry));
            }
            if opts.record_points {
                out.points.push((p, k, exit));
            }
        }
        if let Some(labels) = &chart.labels {
            out.labels.push(labels[p][k]);
        }
        let g = &chart.glue[p][k];
        shift = &shift + &g.translation;
        h += &heights.glue[p][k];
        p = g.polygon;
        out.crossings += 1;
        if p == start.polygon && h == h0 {
            break;
        }
    }
    out.holonomy = -&shift;
    Ok(out)
}

/// Starts of the core curves on the sheared double pentagon: the midpoints
/// of the edges of polygon A, in edge order.
fn pentagon_core_candidates(v: &GVec2) -> Vec<FlowState> {
    let a = Polygon::new(pentagon_vertices());
    (0..5)
        .map(|k| FlowState {
            polygon: 0,
            position: a.midpoint(k),
            direction: v.clone(),
        })
        .collect()
}

/// Weierstrass points of the golden L, each with a polygon containing it.
fn golden_l_core_candidates(v: &GVec2) -> Vec<FlowState> {
    let half = |p: i64, q: i64| GoldenNum::from_parts(p.into(), q.into(), 2.into()).expect("nonzero");
    let pts = [
        (0, half(1, 0), half(1, 0)),
        (1, half(1, 1), half(1, 0)),
        (2, half(1, 0), half(1, 1)),
        (1, GoldenNum::phi(), half(1, 0)),
        (2, half(1, 0), GoldenNum::phi()),
    ];
    pts.into_iter()
        .map(|(polygon, x, y)| FlowState {
            polygon,
            position: GVec2::new(x, y),
            direction: v.clone(),
        })
        .collect()
}

/// Finds, among `candidates`, a start on the core curve of the chosen
/// cylinder: its holonomy must be the short cylinder vector or φ times it.
fn core_curve(
    chart: &SurfaceChart,
    candidates: Vec<FlowState>,
    which: Cylinder,
    opts: FlowOptions,
) -> Result<(FlowState, FlowReturn)> {
    let v = candidates[0].direction.clone();
    let v = &v;
    let (short, long) = cylinder_vectors(v)?;
    let target = match which {
        Cylinder::Short => short,
        Cylinder::Long => long,
    };
    for start in candidates {
        match flow_with(chart, &start, opts) {
            Ok(ret) if ret.holonomy == target => return Ok((start, ret)),
            Ok(_) | Err(Error::ConePoint(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Invariant(format!("no {which} core curve found in direction {v}")))
}

/// The core curve of the chosen cylinder on the sheared double pentagon.
pub fn pentagon_core_curve(
    v: &GVec2,
    which: Cylinder,
    opts: FlowOptions,
) -> Result<(FlowState, FlowReturn)> {
    core_curve(&SurfaceChart::double_pentagon(), pentagon_core_candidates(v), which, opts)
}

/// The cutting sequence of the core curve, read off the flow on the
/// double pentagon.
pub fn cutting_sequence_flow(w: &TreeWord, which: Cylinder) -> Result<Vec<u8>> {
    let v = tree_vector(w).vector;
    Ok(pentagon_core_curve(&v, which, FlowOptions::default())?.1.labels)
}

/// Concentration ratio of a core curve on the golden L: (length inside the
/// short horizontal cylinder per unit area) ÷ (length inside the long
/// horizontal cylinder per unit area).  `None` when the trajectory never
/// enters the long cylinder.
pub fn cylinder_concentration(w: &TreeWord, which: Cylinder) -> Result<Option<GoldenNum>> {
    let v = tree_vector(w).vector;
    let opts = FlowOptions {
        measure_polygons: true,
        ..FlowOptions::default()
    };
    let chart = SurfaceChart::golden_l();
    let (_, ret) = core_curve(&chart, golden_l_core_candidates(&v), which, opts)?;
    let short_len = ret.occupancy[2].clone();
    let long_len = &ret.occupancy[0] + &ret.occupancy[1];
    if long_len.is_zero() {
        return Ok(None);
    }
    // Areas: φ̄ for the short cylinder, φ for the long one.
    let ratio = short_len * GoldenNum::phi() / (long_len * GoldenNum::phi_bar());
    Ok(Some(ratio))
}
