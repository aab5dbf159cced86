//! Faces of the extended subdivision, switch-vertices and switch-matchings.

use num::{Signed, Zero};
use serde::Serialize;

use super::{HalfEdgeId, PGraph, VertexId, VertexKind};
use crate::error::{invariant, Error, Result};
use crate::geom::{cross3, orientation, CutLine, Point2, Rational};
use crate::matching::{normalize, Color, Edge};

/// A bounded face, given by its counterclockwise boundary half-edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub boundary: Vec<HalfEdgeId>,
    pub convex: bool,
}

impl PGraph {
    /// All bounded faces. Fails if the boundary has more than one outer
    /// cycle or a face is degenerate or not convex.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let mut seen = vec![false; self.half_edges.len()];
        let mut faces = Vec::new();
        let mut outer = 0;
        for start in 0..self.half_edges.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                invariant!(!seen[h], "half-edge {h} lies on two boundary cycles");
                seen[h] = true;
                cycle.push(h);
                h = self.half_edges[h].next;
                if h == start {
                    break;
                }
            }
            let area = self.cycle_area(&cycle);
            if area.is_negative() {
                outer += 1;
                continue;
            }
            invariant!(!area.is_zero(), "boundary cycle through {start} encloses no area");
            invariant!(cycle.len() >= 3, "face through {start} has {} sides", cycle.len());
            let convex = self.cycle_is_convex(&cycle);
            invariant!(convex, "face through half-edge {start} is not convex");
            faces.push(Face {
                boundary: cycle,
                convex,
            });
        }
        invariant!(outer == 1, "subdivision has {outer} outer boundary cycles");
        Ok(faces)
    }

    fn head(&self, h: HalfEdgeId) -> &Point2 {
        &self.vertices[self.target(h)].pos
    }

    fn cycle_area(&self, cycle: &[HalfEdgeId]) -> Rational {
        let o = &self.vertices[self.half_edges[cycle[0]].origin].pos;
        cycle
            .iter()
            .map(|&h| cross3(o, &self.vertices[self.half_edges[h].origin].pos, self.head(h)))
            .fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Every turn is a left turn or straight ahead.
    fn cycle_is_convex(&self, cycle: &[HalfEdgeId]) -> bool {
        let t = cycle.len();
        (0..t).all(|i| {
            let a = &self.vertices[self.half_edges[cycle[i]].origin].pos;
            let b = self.head(cycle[i]);
            let c = self.head(cycle[(i + 1) % t]);
            match orientation(a, b, c) {
                1 => true,
                0 => (b - a).dot(&(c - b)).is_positive(),
                _ => false,
            }
        })
    }

    /// Points of the face boundary, `v_i` being the head of `h_i`.
    pub fn face_vertices(&self, f: &Face) -> Vec<VertexId> {
        f.boundary.iter().map(|&h| self.target(h)).collect()
    }

    /// Boundary positions `i` whose vertex `v_i` joins half-edges of
    /// different colors, in boundary order, with the vertex ids.
    pub fn switch_vertices(&self, f: &Face) -> Vec<(usize, VertexId)> {
        let t = f.boundary.len();
        (0..t)
            .filter(|&i| {
                self.half_edges[f.boundary[i]].color != self.half_edges[f.boundary[(i + 1) % t]].color
            })
            .map(|i| (i, self.target(f.boundary[i])))
            .collect()
    }

    /// Color of the switch-vertex at boundary position `i`: the color of the
    /// half-edge entering it.
    pub fn switch_color(&self, f: &Face, i: usize) -> Color {
        self.half_edges[f.boundary[i]].color
    }

    /// Switch-vertex colors alternate along the boundary.
    pub fn is_well_colored(&self, f: &Face) -> bool {
        let sv = self.switch_vertices(f);
        let s = sv.len();
        (0..s).all(|j| self.switch_color(f, sv[j].0) != self.switch_color(f, sv[(j + 1) % s].0))
    }

    /// True if the cut meets the open face.
    pub fn face_crosses(&self, f: &Face, cut: &CutLine) -> bool {
        let sides: Vec<i8> = self.face_vertices(f).iter().map(|&v| cut.side(&self.vertices[v].pos)).collect();
        sides.contains(&1) && sides.contains(&-1)
    }

    fn point_id(&self, v: VertexId) -> Result<usize> {
        match self.vertices[v].kind {
            VertexKind::Point(id) => Ok(id),
            _ => Err(Error::Invariant(format!("switch-vertex {v} is not an input point"))),
        }
    }

    /// A BR-matching on the switch-vertices of `f` drawn inside `f`, with at
    /// most one edge crossing the cut.
    pub fn switch_matching(&self, f: &Face, cut: &CutLine) -> Result<Vec<Edge>> {
        invariant!(self.is_well_colored(f), "face is not well-colored");
        let sv = self.switch_vertices(f);
        invariant!(sv.len() % 2 == 0, "face has {} switch-vertices", sv.len());
        if sv.is_empty() {
            return Ok(Vec::new());
        }
        let ids: Vec<usize> = sv.iter().map(|&(_, v)| self.point_id(v)).collect::<Result<_>>()?;
        if !self.face_crosses(f, cut) {
            return Ok(ids.chunks(2).map(|c| normalize((c[0], c[1]))).collect());
        }

        // Boundary positions of the two points where the cut meets the face:
        // index i such that the point lies in (tail(h_i), head(h_i)].
        let t = f.boundary.len();
        let mut meets: Vec<(Rational, usize)> = Vec::new();
        for i in 0..t {
            let h = f.boundary[i];
            let tail = &self.vertices[self.half_edges[h].origin].pos;
            let head = self.head(h);
            let (st, sh) = (cut.side(tail), cut.side(head));
            invariant!(st != 0 || sh != 0, "crossing face has a side on the cut");
            if sh == 0 || (st != 0 && st != sh) {
                let x = cut.meet_segment(&self.segment(h)).expect("segment meets the cut");
                meets.push((cut.param(&x), i));
            }
        }
        invariant!(meets.len() == 2, "cut meets a convex face boundary {} times", meets.len());
        meets.sort();
        let (d_pos, u_pos) = (meets[0].1, meets[1].1);

        // First switch-vertex reached walking counterclockwise from a
        // boundary position, as an index into `sv`.
        let first_switch = |from: usize| -> usize {
            (0..t)
                .map(|step| (from + step) % t)
                .find_map(|i| sv.iter().position(|&(j, _)| j == i))
                .expect("face has switch-vertices")
        };
        let ru = first_switch(u_pos);
        let rd = first_switch(d_pos);
        invariant!(ru != rd, "both cut points lead to the same switch-vertex");
        invariant!(
            self.switch_color(f, sv[ru].0) != self.switch_color(f, sv[rd].0),
            "r_u and r_d have the same color"
        );

        let s = sv.len();
        let mut edges = vec![normalize((ids[rd], ids[ru]))];
        // Switch-vertices strictly between r_u and r_d (one side of the chord)
        // and strictly between r_d and r_u (the other side).
        for (from, to) in [(ru, rd), (rd, ru)] {
            let mut side = Vec::new();
            let mut j = (from + 1) % s;
            while j != to {
                side.push(ids[j]);
                j = (j + 1) % s;
            }
            invariant!(side.len() % 2 == 0, "odd switch-vertex count on one side of r_d r_u");
            edges.extend(side.chunks(2).map(|c| normalize((c[0], c[1]))));
        }
        Ok(edges)
    }
}
