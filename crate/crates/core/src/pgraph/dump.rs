//! JSON-friendly snapshot of a subdivision.

use serde::Serialize;

use super::{EdgeKind, IntervalView, PGraph, VertexKind};
use crate::error::Result;
use crate::geom::{CutLine, Point2};
use crate::matching::Color;

#[derive(Clone, Debug, Serialize)]
pub struct DumpVertex {
    pub id: usize,
    pub pos: Point2,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpHalfEdge {
    pub id: usize,
    pub origin: usize,
    pub target: usize,
    pub twin: usize,
    pub next: usize,
    pub color: Color,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct DumpFace {
    pub boundary: Vec<usize>,
    pub vertices: Vec<usize>,
    /// Input point ids of the switch-vertices, in boundary order.
    pub switch_points: Vec<usize>,
    pub crosses_cut: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Dump {
    pub vertices: Vec<DumpVertex>,
    pub half_edges: Vec<DumpHalfEdge>,
    pub faces: Vec<DumpFace>,
    pub cut: Option<CutLine>,
    pub intervals: Vec<IntervalView>,
}

impl PGraph {
    pub fn dump(&self) -> Result<Dump> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| DumpVertex {
                id,
                pos: v.pos.clone(),
                kind: v.kind,
            })
            .collect();
        let half_edges = self
            .half_edges
            .iter()
            .enumerate()
            .map(|(id, h)| DumpHalfEdge {
                id,
                origin: h.origin,
                target: self.target(id),
                twin: h.twin,
                next: h.next,
                color: h.color,
                kind: h.kind,
            })
            .collect();
        let faces = self
            .faces()?
            .iter()
            .map(|f| DumpFace {
                boundary: f.boundary.clone(),
                vertices: self.face_vertices(f),
                switch_points: self
                    .switch_vertices(f)
                    .into_iter()
                    .filter_map(|(_, v)| match self.vertices[v].kind {
                        VertexKind::Point(id) => Some(id),
                        _ => None,
                    })
                    .collect(),
                crosses_cut: self.cut.as_ref().is_some_and(|c| self.face_crosses(f, c)),
            })
            .collect();
        Ok(Dump {
            vertices,
            half_edges,
            faces,
            cut: self.cut.clone(),
            intervals: self.ledger_view(),
        })
    }
}

