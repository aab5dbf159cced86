//! Construction of the initial glued graph and the edge extensions.

use num::{Signed, Zero};
use serde::Serialize;

use super::{BoundaryPoint, EdgeKind, HalfEdgeId, Interval, PGraph, VertexId};
use crate::error::{invariant, Error, Result};
use crate::geom::{orientation, CutLine, Point2, Rational};
use crate::matching::{crossing_sequence, BRMatching, Color, Crossing, Edge, PointSet};

/// What one extension added.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionRecord {
    pub edge: Edge,
    /// Half-edges from each endpoint to its hit point.
    pub rays: [HalfEdgeId; 2],
    pub colors: [Color; 2],
    /// The glue made to keep the cut intervals two-colored, if any.
    pub glued: Option<(VertexId, VertexId)>,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    /// Re-check every structural and coloring invariant after each step.
    pub verify: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { verify: true }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BuildLog {
    /// Number of matching edges crossing the cut.
    pub crossings: usize,
    /// Uncovered interval count after the initial gluing and after each
    /// extension.
    pub omega: Vec<usize>,
    pub extensions: Vec<ExtensionRecord>,
    /// Number of full invariant checks that ran (and passed).
    pub checks: usize,
}

enum Hit {
    Vertex(VertexId),
    Edge(HalfEdgeId, Point2),
}

impl PGraph {
    /// Colors the rectangle, splits the crossing edges at the cut and glues
    /// consecutive color-visible points along the cut.
    pub fn build_g0(&mut self, cut: &CutLine, crossings: &[Crossing]) -> Result<()> {
        if crossings.is_empty() {
            return Err(Error::Contract("no matching edge crosses the cut".into()));
        }
        if self.cut.is_some() {
            return Err(Error::Contract("cut already attached".into()));
        }
        let (bottom, top) = self.gamma_chord(cut)?;

        let first = self
            .locate(&crossings[0].point)
            .ok_or_else(|| Error::Invariant("first crossing is not on the boundary".into()))?;
        let gamma_color = self.color_seen(&first, &bottom)?;
        self.color_gamma(gamma_color)?;

        // x_0, ..., x_{k+1} as vertices.
        let mut xs: Vec<VertexId> = Vec::with_capacity(crossings.len() + 2);
        for p in std::iter::once(&bottom)
            .chain(crossings.iter().map(|c| &c.point))
            .chain(std::iter::once(&top))
        {
            let b = self
                .locate(p)
                .ok_or_else(|| Error::Invariant(format!("cut point {p} is not on the boundary")))?;
            xs.push(self.materialize(&b)?);
        }

        self.cut = Some(cut.clone());
        for w in xs.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (plo, phi) = (self.vertices[lo].pos.clone(), self.vertices[hi].pos.clone());
            let lo_color = self.color_seen(&BoundaryPoint::Vertex(lo), &phi)?;
            let hi_color = self.color_seen(&BoundaryPoint::Vertex(hi), &plo)?;
            if lo_color == hi_color {
                self.glue(&BoundaryPoint::Vertex(lo), &BoundaryPoint::Vertex(hi))?;
            } else {
                self.ledger.push(Interval {
                    lo,
                    hi,
                    lo_color,
                    hi_color,
                });
            }
        }
        Ok(())
    }

    /// Colors the rectangle without attaching a cut; only useful for building
    /// the extension of a matching that does not cross the cut at all.
    pub fn skip_g0(&mut self, gamma_color: Color) -> Result<()> {
        self.color_gamma(gamma_color)
    }

    /// Extends the matching edge `edge` in both directions until it hits the
    /// boundary, colors the new edges and glues if one of them crosses the
    /// cut.
    pub fn extend_edge(&mut self, edge: Edge) -> Result<ExtensionRecord> {
        if !self.matching.contains(edge) {
            return Err(Error::Contract(format!("{edge:?} is not a matching edge")));
        }
        if !self.gamma_colored {
            return Err(Error::Contract("rectangle must be colored before extending".into()));
        }
        let p = self.point_vertex(edge.0).unwrap();
        let q = self.point_vertex(edge.1).unwrap();

        let mut rays = [0; 2];
        let mut colors = [Color::Blue; 2];
        let mut ends = [0; 2];
        for (slot, (from, other)) in [(p, q), (q, p)].into_iter().enumerate() {
            let start = self.vertices[from].pos.clone();
            let dir = &start - &self.vertices[other].pos;
            let hit = self.shoot(&start, &dir)?;
            let bp = match hit {
                Hit::Vertex(v) => BoundaryPoint::Vertex(v),
                Hit::Edge(h, x) => BoundaryPoint::OnEdge(h, x),
            };
            if let BoundaryPoint::Vertex(v) = bp {
                invariant!(
                    !self.vertices[v].is_point(),
                    "extension of {edge:?} hits input point vertex {v}"
                );
            }
            let color = self.color_seen(&bp, &start)?;
            let z = self.materialize(&bp)?;
            rays[slot] = self.add_edge(from, z, color, color, EdgeKind::Extension);
            colors[slot] = color;
            ends[slot] = z;
        }

        let mut glued = None;
        if let Some(cut) = self.cut.clone() {
            for slot in 0..2 {
                let from = if slot == 0 { p } else { q };
                let (a, b) = (&self.vertices[from].pos, &self.vertices[ends[slot]].pos);
                if cut.side(a) * cut.side(b) >= 0 {
                    continue;
                }
                invariant!(glued.is_none(), "both extensions of {edge:?} cross the cut");
                glued = Some(self.restore_intervals(&cut, rays[slot], colors[slot])?);
            }
        }
        Ok(ExtensionRecord {
            edge,
            rays,
            colors,
            glued,
        })
    }

    /// The new monochromatic edge `ray` crosses the cut inside an uncovered
    /// interval: glue the crossing with the interval endpoint of its color.
    fn restore_intervals(&mut self, cut: &CutLine, ray: HalfEdgeId, color: Color) -> Result<(VertexId, VertexId)> {
        let seg = self.segment(ray);
        let y = cut
            .meet_segment(&seg)
            .ok_or_else(|| Error::Invariant("crossing ray does not meet the cut".into()))?;
        let ty = cut.param(&y);
        let idx = self
            .ledger
            .iter()
            .position(|iv| {
                cut.param(&self.vertices[iv.lo].pos) < ty && ty < cut.param(&self.vertices[iv.hi].pos)
            })
            .ok_or_else(|| {
                Error::Degenerate(format!("extension crosses the cut at {y} outside every open interval"))
            })?;
        let iv = self.ledger[idx].clone();
        invariant!(
            iv.lo_color != iv.hi_color,
            "interval {idx} has equal endpoint colors before the extension"
        );
        let (partner, glue_low) = if iv.lo_color == color {
            (iv.lo, true)
        } else {
            (iv.hi, false)
        };
        let half = self.glue(&BoundaryPoint::OnEdge(ray, y), &BoundaryPoint::Vertex(partner))?;
        let vy = self.half_edges[half].origin;
        self.ledger[idx] = if glue_low {
            Interval {
                lo: vy,
                hi: iv.hi,
                lo_color: color,
                hi_color: iv.hi_color,
            }
        } else {
            Interval {
                lo: iv.lo,
                hi: vy,
                lo_color: iv.lo_color,
                hi_color: color,
            }
        };
        Ok((vy, partner))
    }

    /// First boundary point hit by the open ray `start + t dir`, `t > 0`.
    fn shoot(&self, start: &Point2, dir: &Point2) -> Result<Hit> {
        let mut best: Option<(Rational, Hit)> = None;
        let far = start + dir;
        for h in self.edges() {
            let seg = self.segment(h);
            let (oa, ob) = (orientation(start, &far, &seg.a), orientation(start, &far, &seg.b));
            if oa * ob > 0 {
                continue;
            }
            let ab = &seg.b - &seg.a;
            let rel = &seg.a - start;
            let denom = dir.cross(&ab);
            if denom.is_zero() {
                if rel.cross(dir).is_zero() {
                    let (ta, tb) = (rel.dot(dir), (&seg.b - start).dot(dir));
                    if ta.is_positive() || tb.is_positive() {
                        return Err(Error::Degenerate(format!(
                            "extension from {start} runs along an existing edge"
                        )));
                    }
                }
                continue;
            }
            let t = rel.cross(&ab) / &denom;
            let u = rel.cross(dir) / &denom;
            if !t.is_positive() || u.is_negative() || u > Rational::from_integer(1.into()) {
                continue;
            }
            let hit = if u.is_zero() {
                Hit::Vertex(self.half_edges[h].origin)
            } else if u == Rational::from_integer(1.into()) {
                Hit::Vertex(self.target(h))
            } else {
                Hit::Edge(h, start + &dir.scale(&t))
            };
            match &best {
                Some((bt, prev)) if *bt == t => {
                    let same_vertex = matches!((prev, &hit), (Hit::Vertex(a), Hit::Vertex(b)) if a == b);
                    invariant!(same_vertex, "ray from {start} hits two boundary features at once");
                }
                Some((bt, _)) if *bt < t => {}
                _ => best = Some((t, hit)),
            }
        }
        best.map(|(_, h)| h)
            .ok_or_else(|| Error::Invariant(format!("ray from {start} escapes the rectangle")))
    }
}

/// Builds the fully extended subdivision of `m` for `cut`.
///
/// If the matching already avoids the cut, no gluing happens and the
/// rectangle is colored blue.
pub fn build_subdivision(
    points: &PointSet,
    m: &BRMatching,
    cut: &CutLine,
    opts: BuildOptions,
) -> Result<(PGraph, BuildLog)> {
    let crossings = crossing_sequence(points, m, cut)?;
    let mut g = PGraph::new(points, m)?;
    let mut log = BuildLog {
        crossings: crossings.len(),
        ..BuildLog::default()
    };
    if crossings.is_empty() {
        g.skip_g0(Color::Blue)?;
    } else {
        g.build_g0(cut, &crossings)?;
    }
    // Half-edges present at the previous check; older edges were already
    // checked against each other.
    let mut checked = 0;
    let verify = |g: &PGraph, log: &mut BuildLog, checked: &mut usize| -> Result<()> {
        if opts.verify {
            g.check_structure(points)?;
            g.check_planar_since(*checked)?;
            if g.cut.is_some() {
                g.check_color_invariant()?;
            }
            log.checks += 1;
        }
        *checked = g.half_edges.len();
        log.omega.push(g.omega());
        Ok(())
    };
    verify(&g, &mut log, &mut checked)?;
    if !crossings.is_empty() {
        invariant!(
            g.omega() < crossings.len(),
            "{} open intervals after the initial gluing with k = {}",
            g.omega(),
            crossings.len()
        );
    }
    for &e in m.edges() {
        let rec = g.extend_edge(e)?;
        log.extensions.push(rec);
        verify(&g, &mut log, &mut checked)?;
    }
    invariant!(
        log.omega.windows(2).all(|w| w[0] == w[1]),
        "open interval count changed during extension: {:?}",
        log.omega
    );
    Ok((g, log))
}
