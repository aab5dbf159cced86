//! Colored half-edge subdivisions of the bounding rectangle.
//!
//! A [`PGraph`] holds the matching, the rectangle and every point added while
//! splitting, gluing and extending. Each edge is a pair of half-edges; a
//! half-edge is seen only from its left, so the half-edges bounding a face
//! form its counterclockwise boundary cycle.
//!
//! Matching edges carry one red and one blue half-edge (each colored like the
//! endpoint it points to). Every other edge is monochromatic.

mod build;
mod check;
mod dump;
mod face;

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::geom::{angle_cmp, orientation, rat, segment_intersection, CutLine, Intersection, Point2, Segment};
use crate::matching::{BRMatching, Color, Edge, PointSet};

pub use build::{build_subdivision, BuildLog, BuildOptions, ExtensionRecord};
pub use check::IntervalView;
pub use dump::{Dump, DumpFace, DumpHalfEdge, DumpVertex};
pub use face::Face;

pub type VertexId = usize;
pub type HalfEdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// A point of the input set, by id.
    Point(usize),
    /// A corner of the bounding rectangle.
    Corner,
    /// A point added by a split.
    Steiner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// A piece of the matching edge between the two point ids.
    Matching(Edge),
    Gamma,
    Glue,
    Extension,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub pos: Point2,
    pub kind: VertexKind,
    /// Outgoing half-edges sorted counterclockwise by direction.
    out: Vec<HalfEdgeId>,
}

impl Vertex {
    pub fn is_point(&self) -> bool {
        matches!(self.kind, VertexKind::Point(_))
    }

    pub fn outgoing(&self) -> &[HalfEdgeId] {
        &self.out
    }
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: VertexId,
    pub twin: HalfEdgeId,
    /// Successor on the boundary of the face to the left.
    pub next: HalfEdgeId,
    pub prev: HalfEdgeId,
    pub color: Color,
    pub kind: EdgeKind,
}

/// A point on the boundary, either at a vertex or inside an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryPoint {
    Vertex(VertexId),
    /// Interior point of the edge of the given half-edge.
    OnEdge(HalfEdgeId, Point2),
}

/// One uncovered open interval of the cut inside the rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: VertexId,
    pub hi: VertexId,
    /// Colors of the endpoints as seen from inside the interval.
    pub lo_color: Color,
    pub hi_color: Color,
}

#[derive(Clone, Debug)]
pub struct PGraph {
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    gamma: [Point2; 4],
    gamma_colored: bool,
    cut: Option<CutLine>,
    ledger: Vec<Interval>,
    matching: BRMatching,
    point_vertex: Vec<Option<VertexId>>,
}

impl PGraph {
    /// The matching and its enclosing rectangle (bounding box grown by 1).
    /// Rectangle half-edges get their color later in [`PGraph::build_g0`].
    pub fn new(points: &PointSet, m: &BRMatching) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::Contract("empty matching".into()));
        }
        if let Some(d) = m.defect(points) {
            return Err(Error::Contract(format!("not a BR-matching: {d}")));
        }
        let support = m.support();
        let xs = support.iter().map(|&i| &points.position(i).x);
        let ys = support.iter().map(|&i| &points.position(i).y);
        let (min_x, max_x) = (xs.clone().min().unwrap(), xs.max().unwrap());
        let (min_y, max_y) = (ys.clone().min().unwrap(), ys.max().unwrap());
        let one = rat(1);
        let (x0, x1) = (min_x - &one, max_x + &one);
        let (y0, y1) = (min_y - &one, max_y + &one);
        let gamma = [
            Point2::new(x0.clone(), y0.clone()),
            Point2::new(x1.clone(), y0),
            Point2::new(x1, y1.clone()),
            Point2::new(x0, y1),
        ];

        let mut g = PGraph {
            vertices: Vec::new(),
            half_edges: Vec::new(),
            gamma: gamma.clone(),
            gamma_colored: false,
            cut: None,
            ledger: Vec::new(),
            matching: m.clone(),
            point_vertex: vec![None; points.len()],
        };
        for &id in &support {
            let v = g.add_vertex(points.position(id).clone(), VertexKind::Point(id));
            g.point_vertex[id] = Some(v);
        }
        for &(a, b) in m.edges() {
            let (va, vb) = (g.point_vertex[a].unwrap(), g.point_vertex[b].unwrap());
            g.add_edge(va, vb, points.color(b), points.color(a), EdgeKind::Matching((a, b)));
        }
        let corners: Vec<VertexId> =
            gamma.iter().map(|c| g.add_vertex(c.clone(), VertexKind::Corner)).collect();
        for i in 0..4 {
            g.add_edge(corners[i], corners[(i + 1) % 4], Color::Blue, Color::Blue, EdgeKind::Gamma);
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v]
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn half_edge(&self, h: HalfEdgeId) -> &HalfEdge {
        &self.half_edges[h]
    }

    pub fn gamma(&self) -> &[Point2; 4] {
        &self.gamma
    }

    pub fn cut(&self) -> Option<&CutLine> {
        self.cut.as_ref()
    }

    pub fn matching(&self) -> &BRMatching {
        &self.matching
    }

    /// Uncovered intervals of the cut, ordered along its direction.
    pub fn ledger(&self) -> &[Interval] {
        &self.ledger
    }

    /// Number of uncovered intervals of the cut inside the rectangle.
    pub fn omega(&self) -> usize {
        self.ledger.len()
    }

    pub fn point_vertex(&self, id: usize) -> Option<VertexId> {
        self.point_vertex.get(id).copied().flatten()
    }

    pub fn target(&self, h: HalfEdgeId) -> VertexId {
        self.half_edges[self.half_edges[h].twin].origin
    }

    pub fn segment(&self, h: HalfEdgeId) -> Segment {
        Segment::new(
            self.vertices[self.half_edges[h].origin].pos.clone(),
            self.vertices[self.target(h)].pos.clone(),
        )
    }

    fn direction(&self, h: HalfEdgeId) -> Point2 {
        &self.vertices[self.target(h)].pos - &self.vertices[self.half_edges[h].origin].pos
    }

    /// One representative half-edge per edge.
    pub fn edges(&self) -> impl Iterator<Item = HalfEdgeId> + '_ {
        (0..self.half_edges.len()).filter(move |&h| h < self.half_edges[h].twin)
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    fn add_vertex(&mut self, pos: Point2, kind: VertexKind) -> VertexId {
        self.vertices.push(Vertex {
            pos,
            kind,
            out: Vec::new(),
        });
        self.vertices.len() - 1
    }

    /// Adds the edge `u v`; returns the half-edge `u -> v`.
    fn add_edge(&mut self, u: VertexId, v: VertexId, uv: Color, vu: Color, kind: EdgeKind) -> HalfEdgeId {
        let h = self.half_edges.len();
        let t = h + 1;
        self.half_edges.push(HalfEdge {
            origin: u,
            twin: t,
            next: t,
            prev: t,
            color: uv,
            kind,
        });
        self.half_edges.push(HalfEdge {
            origin: v,
            twin: h,
            next: h,
            prev: h,
            color: vu,
            kind,
        });
        self.insert_outgoing(u, h);
        self.insert_outgoing(v, t);
        self.relink(u);
        self.relink(v);
        h
    }

    fn insert_outgoing(&mut self, v: VertexId, h: HalfEdgeId) {
        let dir = self.direction(h);
        let pos = self.vertices[v]
            .out
            .partition_point(|&o| angle_cmp(&self.direction(o), &dir) == Ordering::Less);
        self.vertices[v].out.insert(pos, h);
    }

    /// Restores `next`/`prev` around `v`: the successor of an incoming
    /// half-edge is the next outgoing half-edge clockwise from its twin.
    fn relink(&mut self, v: VertexId) {
        let out = self.vertices[v].out.clone();
        let len = out.len();
        for (i, &o) in out.iter().enumerate() {
            let cw = out[(i + len - 1) % len];
            let incoming = self.half_edges[o].twin;
            self.half_edges[incoming].next = cw;
            self.half_edges[cw].prev = incoming;
        }
    }

    /// Splits the edge of `h` at the interior point `x`; returns the new vertex.
    pub fn split(&mut self, h: HalfEdgeId, x: Point2) -> Result<VertexId> {
        let seg = self.segment(h);
        if !seg.contains_interior(&x) {
            return Err(Error::Contract(format!("split point {x} is not inside edge {h}")));
        }
        if self.vertices.iter().any(|v| v.pos == x) {
            return Err(Error::Contract(format!("split point {x} is already a vertex")));
        }
        let t = self.half_edges[h].twin;
        let p = self.half_edges[h].origin;
        let q = self.half_edges[t].origin;
        let (ch, ct, kind) = (self.half_edges[h].color, self.half_edges[t].color, self.half_edges[h].kind);
        let x_id = self.add_vertex(x, VertexKind::Steiner);
        // h becomes p->x, t becomes q->x; h2 = x->q, t2 = x->p.
        let h2 = self.half_edges.len();
        let t2 = h2 + 1;
        self.half_edges.push(HalfEdge {
            origin: x_id,
            twin: t,
            next: t,
            prev: t,
            color: ch,
            kind,
        });
        self.half_edges.push(HalfEdge {
            origin: x_id,
            twin: h,
            next: h,
            prev: h,
            color: ct,
            kind,
        });
        self.half_edges[h].twin = t2;
        self.half_edges[t].twin = h2;
        self.insert_outgoing(x_id, h2);
        self.insert_outgoing(x_id, t2);
        self.relink(p);
        self.relink(q);
        self.relink(x_id);
        Ok(x_id)
    }

    /// Vertex at `b`, splitting its edge first when needed.
    fn materialize(&mut self, b: &BoundaryPoint) -> Result<VertexId> {
        match b {
            BoundaryPoint::Vertex(v) => Ok(*v),
            BoundaryPoint::OnEdge(h, x) => self.split(*h, x.clone()),
        }
    }

    pub fn boundary_position(&self, b: &BoundaryPoint) -> Point2 {
        match b {
            BoundaryPoint::Vertex(v) => self.vertices[*v].pos.clone(),
            BoundaryPoint::OnEdge(_, x) => x.clone(),
        }
    }

    /// Finds the vertex or edge containing `x`.
    pub fn locate(&self, x: &Point2) -> Option<BoundaryPoint> {
        if let Some(v) = self.vertices.iter().position(|v| &v.pos == x) {
            return Some(BoundaryPoint::Vertex(v));
        }
        self.edges()
            .find(|&h| self.segment(h).contains_interior(x))
            .map(|h| BoundaryPoint::OnEdge(h, x.clone()))
    }

    /// For a direction leaving `v`, the outgoing half-edge bounding that
    /// sector on its clockwise side and the incoming one on its
    /// counterclockwise side. Both lie on the face containing the sector.
    pub(crate) fn sector(&self, v: VertexId, dir: &Point2) -> Result<(HalfEdgeId, HalfEdgeId)> {
        let out = &self.vertices[v].out;
        invariant!(!out.is_empty(), "vertex {v} has no incident edges");
        for &o in out {
            let d = self.direction(o);
            if angle_cmp(&d, dir) == Ordering::Equal {
                return Err(Error::Contract(format!(
                    "viewing direction runs along an edge at vertex {v}"
                )));
            }
        }
        let after = out.partition_point(|&o| angle_cmp(&self.direction(o), dir) == Ordering::Less);
        let ccw = out[after % out.len()];
        let cw = out[(after + out.len() - 1) % out.len()];
        Ok((cw, self.half_edges[ccw].twin))
    }

    /// Color of the boundary point `x` as seen from `viewer`.
    pub fn color_seen(&self, x: &BoundaryPoint, viewer: &Point2) -> Result<Color> {
        match x {
            BoundaryPoint::OnEdge(h, _) => {
                let s = self.segment(*h);
                match orientation(&s.a, &s.b, viewer) {
                    1 => Ok(self.half_edges[*h].color),
                    -1 => Ok(self.half_edges[self.half_edges[*h].twin].color),
                    _ => Err(Error::Contract("viewer lies on the supporting line".into())),
                }
            }
            BoundaryPoint::Vertex(v) => {
                if self.vertices[*v].is_point() {
                    return Err(Error::Contract(format!(
                        "vertex {v} is an input point; its seen color is ambiguous"
                    )));
                }
                let dir = viewer - &self.vertices[*v].pos;
                let (out, inc) = self.sector(*v, &dir)?;
                let (a, b) = (self.half_edges[out].color, self.half_edges[inc].color);
                invariant!(a == b, "steiner vertex {v} switches color inside a face");
                Ok(a)
            }
        }
    }

    /// True if the open segment `a b` avoids every edge and vertex.
    pub fn visible(&self, a: &Point2, b: &Point2) -> bool {
        if a == b {
            return false;
        }
        let s = Segment::new(a.clone(), b.clone());
        self.edges().all(|h| match segment_intersection(&self.segment(h), &s) {
            Intersection::Empty => true,
            Intersection::Point { at, .. } => &at == a || &at == b,
            Intersection::Overlap(_) => false,
        })
    }

    /// Joins two color-visible boundary points with a monochromatic edge.
    /// Returns the half-edge from the vertex at `y` to the vertex at `y2`.
    pub fn glue(&mut self, y: &BoundaryPoint, y2: &BoundaryPoint) -> Result<HalfEdgeId> {
        for b in [y, y2] {
            if let BoundaryPoint::Vertex(v) = b {
                if self.vertices[*v].is_point() {
                    return Err(Error::Contract(format!("cannot glue at input point vertex {v}")));
                }
            }
        }
        if let (BoundaryPoint::OnEdge(h1, _), BoundaryPoint::OnEdge(h2, _)) = (y, y2) {
            if h1 == h2 || self.half_edges[*h1].twin == *h2 {
                return Err(Error::Contract("glue points lie on the same edge".into()));
            }
        }
        let (py, py2) = (self.boundary_position(y), self.boundary_position(y2));
        if !self.visible(&py, &py2) {
            return Err(Error::Contract(format!("{py} and {py2} are not visible")));
        }
        let c1 = self.color_seen(y, &py2)?;
        let c2 = self.color_seen(y2, &py)?;
        if c1 != c2 {
            return Err(Error::Contract(format!(
                "{py} and {py2} are visible but not color-visible ({c1} vs {c2})"
            )));
        }
        let vy = self.materialize(y)?;
        let vy2 = self.materialize(y2)?;
        Ok(self.add_edge(vy, vy2, c1, c1, EdgeKind::Glue))
    }

    /// Colors every rectangle half-edge.
    pub fn color_gamma(&mut self, c: Color) -> Result<()> {
        if self.gamma_colored {
            return Err(Error::Contract("rectangle already colored".into()));
        }
        for h in &mut self.half_edges {
            if h.kind == EdgeKind::Gamma {
                h.color = c;
            }
        }
        self.gamma_colored = true;
        Ok(())
    }

    pub fn gamma_color(&self) -> Option<Color> {
        if !self.gamma_colored {
            return None;
        }
        self.half_edges.iter().find(|h| h.kind == EdgeKind::Gamma).map(|h| h.color)
    }

    /// The two points where the cut meets the rectangle, ordered along it.
    pub fn gamma_chord(&self, cut: &CutLine) -> Result<(Point2, Point2)> {
        let mut hits: Vec<Point2> = Vec::new();
        for i in 0..4 {
            let side = Segment::new(self.gamma[i].clone(), self.gamma[(i + 1) % 4].clone());
            if cut.side(&side.a) == 0 && cut.side(&side.b) == 0 {
                return Err(Error::Degenerate("cut runs along the rectangle".into()));
            }
            if let Some(x) = cut.meet_segment(&side) {
                if !hits.contains(&x) {
                    hits.push(x);
                }
            }
        }
        invariant!(hits.len() == 2, "cut meets the rectangle in {} points", hits.len());
        hits.sort_by_key(|p| cut.param(p));
        let hi = hits.pop().unwrap();
        Ok((hits.pop().unwrap(), hi))
    }
}

#[cfg(test)]
mod tests;
