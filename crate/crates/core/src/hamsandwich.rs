//! Ham-sandwich cuts and the ham-sandwich matching built from them.
//!
//! A cut here is an open cut: it avoids every point, leaves `floor(m/2)`
//! points of each color on its left and `ceil(m/2)` of each on its right.
//!
//! Any such line can be translated and then rotated until it rests on two
//! points without changing which side any other point is on, so it suffices
//! to try every line through two points together with the four ways of
//! pushing the two anchors to either side.

use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::geom::{rat, ratio, sign, CutLine, Point2, Rational};
use crate::matching::{BRMatching, Color, Edge, PointSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    pub left_blue: usize,
    pub left_red: usize,
    pub right_blue: usize,
    pub right_red: usize,
    pub on_line: usize,
}

pub fn side_counts(points: &PointSet, ids: &[usize], cut: &CutLine) -> SideCounts {
    let mut c = SideCounts::default();
    for &id in ids {
        match (cut.side(points.position(id)), points.color(id)) {
            (0, _) => c.on_line += 1,
            (1, Color::Blue) => c.left_blue += 1,
            (1, Color::Red) => c.left_red += 1,
            (_, Color::Blue) => c.right_blue += 1,
            (_, Color::Red) => c.right_red += 1,
        }
    }
    c
}

/// True iff `cut` avoids the points of `ids` and leaves `floor(m/2)` of each
/// color on its left and `ceil(m/2)` of each on its right.
pub fn is_ham_sandwich_cut(points: &PointSet, ids: &[usize], cut: &CutLine) -> bool {
    let m = ids.len() / 2;
    let (lo, hi) = (m / 2, m.div_ceil(2));
    side_counts(points, ids, cut)
        == SideCounts {
            left_blue: lo,
            left_red: lo,
            right_blue: hi,
            right_red: hi,
            on_line: 0,
        }
}

/// Ham-sandwich cut of the whole point set.
pub fn find_ham_sandwich_cut(points: &PointSet) -> Result<CutLine> {
    find_cut_for(points, &points.ids())
}

/// Ham-sandwich cut of the subset `ids` (which must be color-balanced).
pub fn find_cut_for(points: &PointSet, ids: &[usize]) -> Result<CutLine> {
    let blue = ids.iter().filter(|&&i| points.color(i) == Color::Blue).count();
    let red = ids.len() - blue;
    if blue == 0 || blue != red {
        return Err(Error::Contract(format!(
            "ham-sandwich cut needs a balanced nonempty set, got {blue} blue / {red} red"
        )));
    }
    let m = blue;
    let (lo, hi) = (m / 2, m.div_ceil(2));

    for (ii, &i) in ids.iter().enumerate() {
        for &j in &ids[ii + 1..] {
            let (a, b) = (points.position(i), points.position(j));
            let base = CutLine::through(a, b);
            // Strict side tallies of everything but the anchors.
            let mut left = [0usize; 2];
            let mut right = [0usize; 2];
            for &k in ids {
                if k == i || k == j {
                    continue;
                }
                let slot = color_slot(points.color(k));
                match base.side(points.position(k)) {
                    1 => left[slot] += 1,
                    -1 => right[slot] += 1,
                    _ => {
                        return Err(Error::Validation(format!(
                            "general position violated: points {i}, {j}, {k} are collinear"
                        )))
                    }
                }
            }
            for perturbation in 0..4u8 {
                let side_i: i8 = if perturbation & 2 == 0 { 1 } else { -1 };
                let side_j: i8 = if perturbation & 1 == 0 { 1 } else { -1 };
                let (mut l, mut r) = (left, right);
                for (id, s) in [(i, side_i), (j, side_j)] {
                    let slot = color_slot(points.color(id));
                    if s > 0 {
                        l[slot] += 1;
                    } else {
                        r[slot] += 1;
                    }
                }
                let flip = if l == [lo, lo] && r == [hi, hi] {
                    false
                } else if l == [hi, hi] && r == [lo, lo] {
                    true
                } else {
                    continue;
                };
                let line = realize(points, ids, (i, side_i), (j, side_j));
                let line = if flip { line.reversed() } else { line };
                invariant!(
                    is_ham_sandwich_cut(points, ids, &line),
                    "realized cut through {i},{j} does not reproduce its side counts"
                );
                return Ok(line);
            }
        }
    }
    if ids.len() == 2 {
        unreachable!("two points always admit a cut with both on one side");
    }
    Err(Error::Invariant(
        "no ham-sandwich cut found among lines through two points".into(),
    ))
}

fn color_slot(c: Color) -> usize {
    match c {
        Color::Blue => 0,
        Color::Red => 1,
    }
}

/// An exact line that keeps every non-anchor point on its side of the line
/// through the two anchors, and puts each anchor on its requested side.
fn realize(points: &PointSet, ids: &[usize], (i, si): (usize, i8), (j, sj): (usize, i8)) -> CutLine {
    let a = points.position(i);
    let b = points.position(j);
    let dir = b - a;
    let others: Vec<&Point2> = ids
        .iter()
        .filter(|&&k| k != i && k != j)
        .map(|&k| points.position(k))
        .collect();

    if si == sj {
        // Parallel shift: the new line is {p : offset(p) = c}.
        let base = CutLine::through(a, b);
        let offsets = others.iter().map(|p| base.offset(p));
        let c = if si > 0 {
            // Anchors go left, so the line moves right of them but stays
            // left of the closest right-side point.
            offsets
                .filter(|o| sign(o) < 0)
                .max()
                .map(|o| o * ratio(1, 2))
                .unwrap_or_else(|| rat(-1))
        } else {
            offsets
                .filter(|o| sign(o) > 0)
                .min()
                .map(|o| o * ratio(1, 2))
                .unwrap_or_else(|| rat(1))
        };
        let len2 = dir.dot(&dir);
        let anchor = a + &dir.perp().scale(&(c / len2));
        return CutLine::new(anchor, dir);
    }

    // Rotation about the midpoint: direction dir + eps * perp(dir). A point
    // p keeps its side while |eps| < |offset(p)| / |dir . (p - mid)|.
    let mid = a.midpoint(b);
    let base = CutLine::new(mid.clone(), dir.clone());
    let bound: Option<Rational> = others
        .iter()
        .filter_map(|p| {
            let along = dir.dot(&(*p - &mid));
            if along == rat(0) {
                None
            } else {
                let off = base.offset(p);
                Some(num::Signed::abs(&(off / along)))
            }
        })
        .min();
    let magnitude = bound.map(|b| b * ratio(1, 2)).unwrap_or_else(|| rat(1));
    // The anchor `a` ends up on the side given by the sign of eps.
    let eps = if si > 0 { magnitude } else { -magnitude };
    let direction = &dir + &dir.perp().scale(&eps);
    CutLine::new(mid, direction)
}

/// One node of the recursive cut tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutTree {
    /// Point ids of this cell, ascending.
    pub ids: Vec<usize>,
    pub node: CutNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutNode {
    Leaf(Edge),
    Split {
        cut: CutLine,
        left: Box<CutTree>,
        right: Box<CutTree>,
    },
}

impl CutTree {
    pub fn cut(&self) -> Option<&CutLine> {
        match &self.node {
            CutNode::Leaf(_) => None,
            CutNode::Split { cut, .. } => Some(cut),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.node {
            CutNode::Leaf(_) => 1,
            CutNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Cut lines in pre-order.
    pub fn cuts(&self) -> Vec<&CutLine> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Some(c) = t.cut() {
                out.push(c);
            }
        });
        out
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a CutTree)) {
        f(self);
        if let CutNode::Split { left, right, .. } = &self.node {
            left.walk(f);
            right.walk(f);
        }
    }

    fn leaves(&self, out: &mut Vec<Edge>) {
        match &self.node {
            CutNode::Leaf(e) => out.push(*e),
            CutNode::Split { left, right, .. } => {
                left.leaves(out);
                right.leaves(out);
            }
        }
    }
}

/// A ham-sandwich matching together with the cuts that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSMatchingTrace {
    pub matching: BRMatching,
    pub tree: CutTree,
}

pub fn ham_sandwich_matching(points: &PointSet) -> Result<HSMatchingTrace> {
    let tree = build_tree(points, points.ids())?;
    let mut edges = Vec::new();
    tree.leaves(&mut edges);
    let matching = BRMatching::new(points, edges)
        .map_err(|e| Error::Invariant(format!("ham-sandwich matching is not a BR-matching: {e}")))?;
    Ok(HSMatchingTrace { matching, tree })
}

fn build_tree(points: &PointSet, ids: Vec<usize>) -> Result<CutTree> {
    if ids.len() == 2 {
        let (a, b) = (ids[0], ids[1]);
        invariant!(
            points.color(a) != points.color(b),
            "leaf cell {a},{b} is monochromatic"
        );
        return Ok(CutTree {
            node: CutNode::Leaf((a, b)),
            ids,
        });
    }
    let cut = find_cut_for(points, &ids)?;
    let (left, right): (Vec<usize>, Vec<usize>) =
        ids.iter().partition(|&&id| cut.side(points.position(id)) > 0);
    let left = build_tree(points, left)?;
    let right = build_tree(points, right)?;
    Ok(CutTree {
        ids,
        node: CutNode::Split {
            cut,
            left: Box::new(left),
            right: Box::new(right),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::crossing_sequence;

    fn four() -> PointSet {
        PointSet::new(vec![
            (Point2::from_ints(-2, -1), Color::Blue),
            (Point2::from_ints(2, -1), Color::Red),
            (Point2::from_ints(-2, 1), Color::Red),
            (Point2::from_ints(2, 1), Color::Blue),
        ])
        .unwrap()
    }

    #[test]
    fn single_pair() {
        let p = PointSet::new(vec![
            (Point2::from_ints(0, 0), Color::Blue),
            (Point2::from_ints(2, 0), Color::Red),
        ])
        .unwrap();
        let cut = find_ham_sandwich_cut(&p).unwrap();
        let c = side_counts(&p, &p.ids(), &cut);
        assert_eq!((c.left_blue, c.left_red, c.right_blue, c.right_red), (0, 0, 1, 1));
        let h = ham_sandwich_matching(&p).unwrap();
        assert_eq!(h.matching.edges(), &[(0, 1)]);
        assert_eq!(h.tree.depth(), 1);
    }

    #[test]
    fn vertical_axis_qualifies() {
        let p = four();
        let x0 = CutLine::new(Point2::from_ints(0, 0), Point2::from_ints(0, 1));
        // Up-directed x = 0: left is x < 0 with B(-2,-1) and R(-2,1).
        assert!(is_ham_sandwich_cut(&p, &p.ids(), &x0));
        let found = find_ham_sandwich_cut(&p).unwrap();
        assert!(is_ham_sandwich_cut(&p, &p.ids(), &found));
    }

    #[test]
    fn four_point_matching() {
        let p = four();
        let h = ham_sandwich_matching(&p).unwrap();
        let root = h.tree.cut().unwrap();
        assert!(crossing_sequence(&p, &h.matching, root).unwrap().is_empty());
        // Whatever the root cut, each half contains one blue and one red.
        assert!(h.matching.defect(&p).is_none());
    }

    #[test]
    fn unbalanced_subset_is_rejected() {
        let p = four();
        assert!(matches!(find_cut_for(&p, &[0, 3]), Err(Error::Contract(_))));
    }
}
