//! Brute force for small point sets: every BR-matching, the transformation
//! graph and its distances, and a family of hard instances.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{segment_intersection, Point2};
use crate::matching::{are_compatible, find_defect, BRMatching, Color, Edge, PointSet};

pub const DEFAULT_LIMIT: usize = 6;

fn check_limit(points: &PointSet, limit: usize) -> Result<()> {
    if points.n() > limit {
        return Err(Error::OverLimit {
            n: points.n(),
            limit,
        });
    }
    Ok(())
}

/// All BR-matchings in lexicographic order of their sorted edge lists.
///
/// Backtracks from the lowest unmatched blue point, trying red partners in
/// id order and discarding an edge as soon as it meets an earlier one.
pub fn enumerate_br_matchings(points: &PointSet, limit: usize) -> Result<Vec<BRMatching>> {
    check_limit(points, limit)?;
    let blue: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Blue).collect();
    let red: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Red).collect();
    // ok[b][r]: the segment avoids every other point.
    let ok: Vec<Vec<bool>> = blue
        .iter()
        .map(|&b| {
            red.iter()
                .map(|&r| {
                    let s = points.segment((b, r));
                    points.ids().iter().all(|&k| k == b || k == r || !s.contains(points.position(k)))
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut used = vec![false; red.len()];
    let mut chosen: Vec<Edge> = Vec::with_capacity(blue.len());
    search(points, &blue, &red, &ok, 0, &mut used, &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    points: &PointSet,
    blue: &[usize],
    red: &[usize],
    ok: &[Vec<bool>],
    bi: usize,
    used: &mut [bool],
    chosen: &mut Vec<Edge>,
    out: &mut Vec<BRMatching>,
) {
    if bi == blue.len() {
        out.push(BRMatching::from_edges(chosen.clone()));
        return;
    }
    for ri in 0..red.len() {
        if used[ri] || !ok[bi][ri] {
            continue;
        }
        let e = (blue[bi], red[ri]);
        let s = points.segment(e);
        if chosen
            .iter()
            .any(|&f| !segment_intersection(&s, &points.segment(f)).is_empty())
        {
            continue;
        }
        used[ri] = true;
        chosen.push(e);
        search(points, blue, red, ok, bi + 1, used, chosen, out);
        chosen.pop();
        used[ri] = false;
    }
}

/// Independent count: every blue-to-red bijection, kept if plane.
pub fn permutation_filter_count(points: &PointSet, limit: usize) -> Result<usize> {
    check_limit(points, limit)?;
    let blue: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Blue).collect();
    let mut red: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Red).collect();
    let ids = points.ids();
    let mut count = 0;
    permute(&mut red, 0, &mut |perm| {
        let edges: Vec<Edge> = blue.iter().copied().zip(perm.iter().copied()).collect();
        if find_defect(points, &edges, &ids).is_none() {
            count += 1;
        }
    });
    Ok(count)
}

/// Calls `f` on every ordering of `xs[k..]`.
fn permute(xs: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformationGraph {
    pub nodes: Vec<BRMatching>,
    /// Sorted neighbor lists.
    pub adjacency: Vec<Vec<usize>>,
}

impl TransformationGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, m: &BRMatching) -> Option<usize> {
        self.nodes.binary_search(m).ok()
    }

    /// One line per node: `i: j k ...`.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = String::new();
        for (i, ns) in self.adjacency.iter().enumerate() {
            let _ = write!(s, "{i}:");
            for j in ns {
                let _ = write!(s, " {j}");
            }
            s.push('\n');
        }
        s
    }
}

pub fn build_transformation_graph(points: &PointSet, limit: usize) -> Result<TransformationGraph> {
    let nodes = enumerate_br_matchings(points, limit)?;
    let adjacency: Vec<Vec<usize>> = (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            (0..nodes.len())
                .filter(|&j| j != i && are_compatible(points, &nodes[i], &nodes[j]))
                .collect()
        })
        .collect();
    Ok(TransformationGraph { nodes, adjacency })
}

#[derive(Clone, Debug, Serialize)]
pub struct Distances {
    /// `dist[i][j]`, BFS hop count.
    pub dist: Vec<Vec<usize>>,
    pub diameter: usize,
}

/// All-pairs BFS. A disconnected graph is an invariant failure: the
/// transformation graph is always connected.
pub fn distance_and_diameter(g: &TransformationGraph) -> Result<Distances> {
    let n = g.len();
    let dist: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &g.adjacency[u] {
                    if d[v] == usize::MAX {
                        d[v] = d[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect();
    for (i, row) in dist.iter().enumerate() {
        if let Some(j) = row.iter().position(|&d| d == usize::MAX) {
            return Err(Error::Invariant(format!(
                "transformation graph is disconnected: no path from matching {i} to matching {j}"
            )));
        }
    }
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    Ok(Distances { dist, diameter })
}

/// `2n` points on the parabola `y = x^2` at `x = 0, 1, ..., 2n-1`, colored
/// blue, red, blue, ... along it.
///
/// The points are in convex position, so the BR-matchings are the
/// non-crossing bichromatic pairings of an alternating polygon. Nested
/// pairings on opposite halves of the polygon are far apart; the oracle
/// measures how far.
pub fn lower_bound_instance(n: usize) -> Result<PointSet> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Validation(format!("lower-bound instance needs an even n >= 2, got {n}")));
    }
    let pts = (0..2 * n as i64)
        .map(|i| {
            let c = if i % 2 == 0 { Color::Blue } else { Color::Red };
            (Point2::from_ints(i, i * i), c)
        })
        .collect();
    PointSet::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(colors: [Color; 4]) -> PointSet {
        let c = [(0, 0), (2, 0), (2, 2), (0, 2)];
        PointSet::new(c.iter().zip(colors).map(|(&(x, y), col)| (Point2::from_ints(x, y), col)).collect()).unwrap()
    }

    #[test]
    fn tiny_counts() {
        use Color::{Blue as B, Red as R};
        let one = PointSet::new(vec![(Point2::from_ints(0, 0), B), (Point2::from_ints(1, 0), R)]).unwrap();
        assert_eq!(enumerate_br_matchings(&one, 6).unwrap().len(), 1);
        assert_eq!(enumerate_br_matchings(&square([B, B, R, R]), 6).unwrap().len(), 1);
        assert_eq!(enumerate_br_matchings(&square([R, B, R, B]), 6).unwrap().len(), 2);
        assert_eq!(permutation_filter_count(&square([R, B, R, B]), 6).unwrap(), 2);
    }

    #[test]
    fn graph_and_diameter() {
        use Color::{Blue as B, Red as R};
        let g = build_transformation_graph(&square([R, B, R, B]), 6).unwrap();
        assert_eq!((g.len(), g.edge_count()), (2, 1));
        assert_eq!(distance_and_diameter(&g).unwrap().diameter, 1);
        assert_eq!(g.to_adjacency_text(), "0: 1\n1: 0\n");
        let single = build_transformation_graph(&square([B, B, R, R]), 6).unwrap();
        assert_eq!(distance_and_diameter(&single).unwrap().diameter, 0);
    }

    #[test]
    fn limit_is_enforced() {
        let p = lower_bound_instance(4).unwrap();
        assert!(matches!(enumerate_br_matchings(&p, 3), Err(Error::OverLimit { n: 4, limit: 3 })));
    }

    #[test]
    fn disconnected_graph_is_reported() {
        let g = TransformationGraph {
            nodes: vec![BRMatching::from_edges(vec![(0, 1)]), BRMatching::from_edges(vec![(0, 2)])],
            adjacency: vec![vec![], vec![]],
        };
        assert!(matches!(distance_and_diameter(&g), Err(Error::Invariant(_))));
    }

    #[test]
    fn lower_bound_shape() {
        assert!(lower_bound_instance(3).is_err());
        let p = lower_bound_instance(4).unwrap();
        assert_eq!(p.len(), 8);
        // The consecutive pairing and the shifted pairing cross.
        let a = BRMatching::new(&p, vec![(0, 3), (1, 2), (4, 7), (5, 6)]).unwrap();
        let b = BRMatching::new(&p, vec![(2, 5), (3, 4), (1, 6), (0, 7)]).unwrap();
        assert!(!are_compatible(&p, &a, &b));
    }
}
