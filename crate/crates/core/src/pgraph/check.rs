//! Invariant checks and the from-scratch recomputation of the cut intervals.

use num::{Signed, Zero};
use serde::Serialize;

use super::{BoundaryPoint, EdgeKind, PGraph, VertexKind};
use crate::error::{invariant, Error, Result};
use crate::geom::{orientation, segment_intersection, Intersection, Point2, Rational, Segment};
use crate::matching::{Color, PointSet};

/// An uncovered interval described by coordinates instead of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalView {
    pub lo: Point2,
    pub hi: Point2,
    pub lo_color: Color,
    pub hi_color: Color,
}

impl PGraph {
    /// Checks the half-edge structure and the four defining conditions:
    /// extra points avoid the input, the rectangle and the matching are
    /// subdivided, matching half-edges are colored by their head and every
    /// other edge is monochromatic, and the drawing is plane.
    pub fn check_p_graph(&self, points: &PointSet) -> Result<()> {
        self.check_structure(points)?;
        self.check_planar_since(0)
    }

    fn check_conditions(&self, points: &PointSet) -> Result<()> {

        // (1) extra points are disjoint from the matched points.
        let support = self.matching.support();
        for (v, vert) in self.vertices.iter().enumerate() {
            if !vert.is_point() {
                let clash = support.iter().any(|&id| points.position(id) == &vert.pos);
                invariant!(!clash, "extra vertex {v} coincides with an input point");
            }
        }

        // (2) subdivisions of the rectangle and of the matching.
        for (v, vert) in self.vertices.iter().enumerate() {
            let gamma = vert
                .out
                .iter()
                .filter(|&&h| self.half_edges[h].kind == EdgeKind::Gamma)
                .count();
            let matching: Vec<EdgeKind> = vert
                .out
                .iter()
                .map(|&h| self.half_edges[h].kind)
                .filter(|k| matches!(k, EdgeKind::Matching(_)))
                .collect();
            match vert.kind {
                VertexKind::Corner => invariant!(gamma == 2, "corner {v} has {gamma} rectangle edges"),
                VertexKind::Point(_) => {
                    invariant!(gamma == 0, "input point {v} lies on the rectangle");
                    invariant!(matching.len() == 1, "input point {v} has {} matching pieces", matching.len());
                }
                VertexKind::Steiner => {
                    invariant!(gamma == 0 || gamma == 2, "steiner vertex {v} has {gamma} rectangle pieces");
                    invariant!(
                        matching.is_empty() || (matching.len() == 2 && matching[0] == matching[1]),
                        "steiner vertex {v} breaks a matching edge subdivision"
                    );
                }
            }
        }
        for h in self.edges() {
            let s = self.segment(h);
            match self.half_edges[h].kind {
                EdgeKind::Gamma => {
                    let on_side = (0..4).any(|i| {
                        let side = Segment::new(self.gamma[i].clone(), self.gamma[(i + 1) % 4].clone());
                        side.contains(&s.a) && side.contains(&s.b)
                    });
                    invariant!(on_side, "rectangle piece {h} leaves the rectangle");
                }
                EdgeKind::Matching((a, b)) => {
                    let full = points.segment((a, b));
                    invariant!(
                        full.contains(&s.a) && full.contains(&s.b),
                        "matching piece {h} leaves edge {a}-{b}"
                    );
                }
                _ => {}
            }
        }

        // (3) and (4) coloring.
        for (h, he) in self.half_edges.iter().enumerate() {
            let twin = &self.half_edges[he.twin];
            match he.kind {
                EdgeKind::Matching((a, b)) => {
                    let along = self.direction(h).dot(&(points.position(b) - points.position(a)));
                    let toward = if along > Rational::zero() { b } else { a };
                    invariant!(
                        he.color == points.color(toward),
                        "matching half-edge {h} is not colored like its head"
                    );
                    invariant!(he.color != twin.color, "matching edge {h} is monochromatic");
                }
                _ => invariant!(he.color == twin.color, "edge {h} has two colors"),
            }
        }

        Ok(())
    }

    /// Planarity of every edge with a half-edge id at least `first` against
    /// all other edges. Splitting only shortens edges, so after a step it is
    /// enough to check the half-edges created by that step.
    pub fn check_planar_since(&self, first: usize) -> Result<()> {
        let approx: Vec<(f64, f64)> = self.vertices.iter().map(|v| v.pos.to_f64()).collect();
        let edges: Vec<(usize, usize, usize)> = self
            .edges()
            .map(|h| (h, self.half_edges[h].origin, self.target(h)))
            .collect();
        // Boxes padded well beyond the conversion error; disjoint padded
        // boxes mean disjoint segments.
        let boxes: Vec<[f64; 4]> = edges
            .iter()
            .map(|&(_, u, v)| {
                let ((x0, y0), (x1, y1)) = (approx[u], approx[v]);
                let pad = 1e-9 * (1.0 + x0.abs().max(x1.abs()).max(y0.abs()).max(y1.abs()));
                [x0.min(x1) - pad, x0.max(x1) + pad, y0.min(y1) - pad, y0.max(y1) + pad]
            })
            .collect();
        let fresh = |h: usize| h >= first || self.half_edges[h].twin >= first;
        for i in 0..edges.len() {
            let (hi, ui, vi) = edges[i];
            for j in i + 1..edges.len() {
                let (hj, uj, vj) = edges[j];
                if !fresh(hi) && !fresh(hj) {
                    continue;
                }
                let (a, b) = (&boxes[i], &boxes[j]);
                if a[1] < b[0] || b[1] < a[0] || a[3] < b[2] || b[3] < a[2] {
                    continue;
                }
                invariant!(
                    !((ui == uj && vi == vj) || (ui == vj && vi == uj)),
                    "edges {hi} and {hj} join the same vertices"
                );
                let shared = [ui, vi].into_iter().find(|&x| x == uj || x == vj);
                if let Some(s) = shared {
                    // Adjacent edges meet only at the shared vertex unless
                    // they leave it in the same direction.
                    let other_i = if ui == s { vi } else { ui };
                    let other_j = if uj == s { vj } else { uj };
                    let (ps, pi, pj) = (&self.vertices[s].pos, &self.vertices[other_i].pos, &self.vertices[other_j].pos);
                    let same_way = orientation(ps, pi, pj) == 0 && (pi - ps).dot(&(pj - ps)).is_positive();
                    invariant!(!same_way, "edges {hi} and {hj} overlap");
                    continue;
                }
                let (si, sj) = (self.segment(hi), self.segment(hj));
                match segment_intersection(&si, &sj) {
                    Intersection::Empty => {}
                    Intersection::Point { at, .. } => {
                        return Err(Error::Invariant(format!(
                            "edges {hi} and {hj} meet at {at} away from a shared vertex"
                        )))
                    }
                    Intersection::Overlap(_) => {
                        return Err(Error::Invariant(format!("edges {hi} and {hj} overlap")))
                    }
                }
            }
        }
        Ok(())
    }

    /// Everything in [`PGraph::check_p_graph`] except planarity.
    pub fn check_structure(&self, points: &PointSet) -> Result<()> {
        self.check_links()?;
        self.check_conditions(points)
    }

    fn check_links(&self) -> Result<()> {
        for (h, he) in self.half_edges.iter().enumerate() {
            invariant!(self.half_edges[he.twin].twin == h, "twin of twin of {h} is not {h}");
            invariant!(he.twin != h, "half-edge {h} is its own twin");
            invariant!(self.half_edges[he.next].prev == h, "next/prev mismatch at {h}");
            invariant!(
                self.half_edges[he.next].origin == self.target(h),
                "next of {h} does not start at its head"
            );
            invariant!(
                self.vertices[he.origin].out.contains(&h),
                "half-edge {h} missing from its origin star"
            );
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vertices {
            for w in v.out.windows(2) {
                invariant!(
                    crate::geom::angle_cmp(&self.direction(w[0]), &self.direction(w[1]))
                        == std::cmp::Ordering::Less,
                    "vertex star out of angular order"
                );
            }
            invariant!(seen.insert(v.pos.clone()), "two vertices at {}", v.pos);
        }
        Ok(())
    }

    /// Intervals of the cut not covered by the boundary, computed directly
    /// from the geometry.
    pub fn recompute_ledger(&self) -> Result<Vec<IntervalView>> {
        let cut = self
            .cut
            .as_ref()
            .ok_or_else(|| Error::Contract("no cut attached".into()))?;
        let (bottom, top) = self.gamma_chord(cut)?;
        let (t_lo, t_hi) = (cut.param(&bottom), cut.param(&top));

        let mut covered: Vec<(Rational, Rational)> = Vec::new();
        for h in self.edges() {
            let s = self.segment(h);
            let (sa, sb) = (cut.side(&s.a), cut.side(&s.b));
            if sa == 0 && sb == 0 {
                let (ta, tb) = (cut.param(&s.a), cut.param(&s.b));
                covered.push(if ta <= tb { (ta, tb) } else { (tb, ta) });
            } else if let Some(x) = cut.meet_segment(&s) {
                let t = cut.param(&x);
                covered.push((t.clone(), t));
            }
        }
        covered.sort();

        let len2 = cut.direction.dot(&cut.direction);
        let at = |t: &Rational| &cut.anchor + &cut.direction.scale(&(t / &len2));
        let mut out = Vec::new();
        let mut reach = t_lo.clone();
        for (lo, hi) in covered {
            if lo > reach {
                out.push(self.view_gap(&at(&reach), &at(&lo))?);
            }
            if hi > reach {
                reach = hi;
            }
        }
        invariant!(reach == t_hi, "boundary does not reach the top of the rectangle chord");
        Ok(out)
    }

    fn view_gap(&self, lo: &Point2, hi: &Point2) -> Result<IntervalView> {
        let mid = lo.midpoint(hi);
        let find = |p: &Point2| -> Result<BoundaryPoint> {
            self.locate(p)
                .ok_or_else(|| Error::Invariant(format!("gap endpoint {p} is not on the boundary")))
        };
        Ok(IntervalView {
            lo: lo.clone(),
            hi: hi.clone(),
            lo_color: self.color_seen(&find(lo)?, &mid)?,
            hi_color: self.color_seen(&find(hi)?, &mid)?,
        })
    }

    /// The maintained intervals in coordinate form.
    pub fn ledger_view(&self) -> Vec<IntervalView> {
        self.ledger
            .iter()
            .map(|iv| IntervalView {
                lo: self.vertices[iv.lo].pos.clone(),
                hi: self.vertices[iv.hi].pos.clone(),
                lo_color: iv.lo_color,
                hi_color: iv.hi_color,
            })
            .collect()
    }

    /// No two visible points of the boundary on the cut are color-visible,
    /// and the maintained intervals agree with a recomputation.
    pub fn check_color_invariant(&self) -> Result<()> {
        for (i, iv) in self.ledger.iter().enumerate() {
            invariant!(
                iv.lo_color != iv.hi_color,
                "interval {i} of the cut has color-visible endpoints"
            );
        }
        let fresh = self.recompute_ledger()?;
        invariant!(
            fresh == self.ledger_view(),
            "maintained cut intervals differ from recomputation: {:?} vs {:?}",
            self.ledger_view(),
            fresh
        );
        Ok(())
    }
}
