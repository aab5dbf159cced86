//! Bichromatic point sets, BR-matchings and the relations between them.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{find_collinear_triple, segment_intersection, CutLine, Point2, Rational, Segment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredPoint {
    pub id: usize,
    pub position: Point2,
    pub color: Color,
}

/// A balanced red/blue point set in general position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ColoredPoint>,
}

impl PointSet {
    pub fn new(points: Vec<(Point2, Color)>) -> Result<Self> {
        let blue = points.iter().filter(|(_, c)| *c == Color::Blue).count();
        let red = points.len() - blue;
        if blue == 0 || blue != red {
            return Err(Error::Validation(format!(
                "unbalanced colors: {blue} blue and {red} red points"
            )));
        }
        let positions: Vec<Point2> = points.iter().map(|(p, _)| p.clone()).collect();
        let distinct: BTreeSet<&Point2> = positions.iter().collect();
        if distinct.len() != positions.len() {
            return Err(Error::Validation("coincident points".into()));
        }
        if let Some((i, j, k)) = find_collinear_triple(&positions) {
            return Err(Error::Validation(format!(
                "general position violated: points {i}, {j}, {k} are collinear"
            )));
        }
        Ok(PointSet {
            points: points
                .into_iter()
                .enumerate()
                .map(|(id, (position, color))| ColoredPoint {
                    id,
                    position,
                    color,
                })
                .collect(),
        })
    }

    /// Number of points, `2n`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points of each color.
    pub fn n(&self) -> usize {
        self.points.len() / 2
    }

    pub fn points(&self) -> &[ColoredPoint] {
        &self.points
    }

    pub fn position(&self, id: usize) -> &Point2 {
        &self.points[id].position
    }

    pub fn color(&self, id: usize) -> Color {
        self.points[id].color
    }

    pub fn ids(&self) -> Vec<usize> {
        (0..self.points.len()).collect()
    }

    pub fn segment(&self, (a, b): Edge) -> Segment {
        Segment::new(self.position(a).clone(), self.position(b).clone())
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id >= self.points.len() {
            return Err(Error::Validation(format!(
                "point id {id} out of range (set has {} points)",
                self.points.len()
            )));
        }
        Ok(())
    }
}

/// An undirected edge between two point ids, stored as `(min, max)`.
pub type Edge = (usize, usize);

pub fn normalize((a, b): Edge) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Why an edge list fails to be a BR-matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    NotPerfect { id: usize, degree: usize },
    Monochromatic(Edge),
    Crossing(Edge, Edge),
    ThroughPoint(Edge, usize),
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::NotPerfect { id, degree } => {
                write!(f, "not perfect: point {id} is covered {degree} times")
            }
            Defect::Monochromatic((a, b)) => write!(f, "not bichromatic: edge {a}-{b}"),
            Defect::Crossing((a, b), (c, d)) => {
                write!(f, "not plane: edges {a}-{b} and {c}-{d} intersect")
            }
            Defect::ThroughPoint((a, b), p) => {
                write!(f, "not plane: edge {a}-{b} passes through point {p}")
            }
        }
    }
}

/// Checks that `edges` is a plane bichromatic perfect matching on the points
/// listed in `support`.
pub fn find_defect(points: &PointSet, edges: &[Edge], support: &[usize]) -> Option<Defect> {
    let mut degree = vec![0usize; points.len()];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let in_support: BTreeSet<usize> = support.iter().copied().collect();
    for id in 0..points.len() {
        let want = usize::from(in_support.contains(&id));
        if degree[id] != want {
            return Some(Defect::NotPerfect {
                id,
                degree: degree[id],
            });
        }
    }
    for &e in edges {
        if points.color(e.0) == points.color(e.1) {
            return Some(Defect::Monochromatic(e));
        }
    }
    let segs: Vec<Segment> = edges.iter().map(|&e| points.segment(e)).collect();
    for (i, s) in segs.iter().enumerate() {
        for &id in support {
            if id != edges[i].0 && id != edges[i].1 && s.contains(points.position(id)) {
                return Some(Defect::ThroughPoint(edges[i], id));
            }
        }
        for (j, t) in segs.iter().enumerate().skip(i + 1) {
            if !segment_intersection(s, t).is_empty() {
                return Some(Defect::Crossing(edges[i], edges[j]));
            }
        }
    }
    None
}

/// True iff `edges` is a BR-matching on the whole point set.
pub fn is_br_matching(edges: &[Edge], points: &PointSet) -> Result<bool> {
    for &(a, b) in edges {
        points.check_id(a)?;
        points.check_id(b)?;
    }
    Ok(find_defect(points, edges, &points.ids()).is_none())
}

/// A plane bichromatic perfect matching, edges sorted by `(min id, max id)`.
///
/// A matching may cover only part of a point set; the recursive algorithms
/// work on the cells of a cut tree while keeping global point ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BRMatching {
    edges: Vec<Edge>,
}

impl BRMatching {
    /// Validated construction of a matching covering every point.
    pub fn new(points: &PointSet, edges: Vec<Edge>) -> Result<Self> {
        Self::on_support(points, edges, &points.ids())
    }

    /// Validated construction of a matching covering exactly `support`.
    pub fn on_support(points: &PointSet, edges: Vec<Edge>, support: &[usize]) -> Result<Self> {
        for &(a, b) in &edges {
            points.check_id(a)?;
            points.check_id(b)?;
        }
        let m = Self::from_edges(edges);
        if let Some(defect) = find_defect(points, &m.edges, support) {
            return Err(Error::Validation(defect.to_string()));
        }
        Ok(m)
    }

    /// Normalizes and sorts without validation.
    pub fn from_edges(edges: Vec<Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(normalize).collect();
        edges.sort_unstable();
        BRMatching { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Covered point ids in ascending order.
    pub fn support(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        ids.sort_unstable();
        ids
    }

    pub fn union(&self, other: &BRMatching) -> BRMatching {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        BRMatching::from_edges(edges)
    }

    /// Edges whose endpoints both satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> BRMatching {
        BRMatching {
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| keep(a) && keep(b))
                .collect(),
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&normalize(e)).is_ok()
    }

    pub fn defect(&self, points: &PointSet) -> Option<Defect> {
        find_defect(points, &self.edges, &self.support())
    }
}

/// True iff the union of both edge sets is plane. Shared edges and shared
/// endpoints are allowed.
pub fn are_compatible(points: &PointSet, m1: &BRMatching, m2: &BRMatching) -> bool {
    for &e in m1.edges() {
        let s = points.segment(e);
        for &f in m2.edges() {
            if e == f {
                continue;
            }
            if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
                // Bichromatic segments from one shared endpoint can only
                // overlap if three points are collinear.
                continue;
            }
            if !segment_intersection(&s, &points.segment(f)).is_empty() {
                return false;
            }
        }
    }
    true
}

/// One entry of the crossing sequence of a matching with a cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub edge: Edge,
    pub point: Point2,
    #[serde(skip)]
    pub param: Rational,
}

/// Edges of `m` that cross `cut`, ordered along the cut's direction.
pub fn crossing_sequence(points: &PointSet, m: &BRMatching, cut: &CutLine) -> Result<Vec<Crossing>> {
    let mut out = Vec::new();
    for &e in m.edges() {
        let (sa, sb) = (cut.side(points.position(e.0)), cut.side(points.position(e.1)));
        if sa == 0 || sb == 0 {
            return Err(Error::Contract(format!(
                "cut line passes through a point of edge {}-{}",
                e.0, e.1
            )));
        }
        if sa != sb {
            let point = cut
                .meet_segment(&points.segment(e))
                .expect("endpoints on opposite sides");
            out.push(Crossing {
                edge: e,
                param: cut.param(&point),
                point,
            });
        }
    }
    out.sort_by(|a, b| a.param.cmp(&b.param));
    Ok(out)
}

/// Number of edges of `m` crossing `cut`; depends only on sides.
pub fn crossing_count(points: &PointSet, m: &BRMatching, cut: &CutLine) -> usize {
    m.edges()
        .iter()
        .filter(|&&(a, b)| cut.side(points.position(a)) * cut.side(points.position(b)) < 0)
        .count()
}

/// A sequence of matchings, each compatible with the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TransformationSequence {
    steps: Vec<BRMatching>,
}

impl TransformationSequence {
    pub fn start(m: BRMatching) -> Self {
        TransformationSequence { steps: vec![m] }
    }

    pub fn from_steps(steps: Vec<BRMatching>) -> Self {
        assert!(!steps.is_empty(), "a transformation has at least one matching");
        TransformationSequence { steps }
    }

    /// Number of compatibility steps, `|steps| - 1`.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn steps(&self) -> &[BRMatching] {
        &self.steps
    }

    pub fn first(&self) -> &BRMatching {
        &self.steps[0]
    }

    pub fn last(&self) -> &BRMatching {
        self.steps.last().expect("nonempty")
    }

    pub fn push(&mut self, m: BRMatching) {
        self.steps.push(m);
    }

    pub fn reversed(&self) -> Self {
        let mut steps = self.steps.clone();
        steps.reverse();
        TransformationSequence { steps }
    }

    /// Appends `other`, whose first matching must equal our last.
    pub fn append(&mut self, other: &TransformationSequence) {
        assert_eq!(self.last(), other.first(), "sequences do not chain");
        self.steps.extend_from_slice(&other.steps[1..]);
    }

    /// Removes consecutive repeats.
    pub fn collapse_duplicates(&mut self) {
        self.steps.dedup();
    }

    pub fn into_steps(self) -> Vec<BRMatching> {
        self.steps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub ok: bool,
    /// Index of the first step that is invalid or incompatible with its
    /// predecessor.
    pub first_failure: Option<usize>,
    pub reason: Option<String>,
}

/// Checks every step over the supplied support and each consecutive pair.
pub fn verify_transformation_on(
    points: &PointSet,
    seq: &TransformationSequence,
    support: &[usize],
) -> Verification {
    for (i, m) in seq.steps().iter().enumerate() {
        if let Some(d) = find_defect(points, m.edges(), support) {
            return Verification {
                ok: false,
                first_failure: Some(i),
                reason: Some(d.to_string()),
            };
        }
        if i > 0 && !are_compatible(points, &seq.steps()[i - 1], m) {
            return Verification {
                ok: false,
                first_failure: Some(i),
                reason: Some(format!("step {i} is not compatible with step {}", i - 1)),
            };
        }
    }
    Verification {
        ok: true,
        first_failure: None,
        reason: None,
    }
}

pub fn verify_transformation(points: &PointSet, seq: &TransformationSequence) -> Verification {
    verify_transformation_on(points, seq, &points.ids())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;

    pub(crate) fn four_point_set() -> PointSet {
        PointSet::new(vec![
            (Point2::from_ints(-2, -1), Color::Blue),
            (Point2::from_ints(2, -1), Color::Red),
            (Point2::from_ints(-2, 1), Color::Red),
            (Point2::from_ints(2, 1), Color::Blue),
        ])
        .unwrap()
    }

    fn convex(colors: &[Color]) -> PointSet {
        let corners = [(0, 0), (4, 0), (4, 4), (0, 4)];
        PointSet::new(
            corners
                .iter()
                .zip(colors)
                .map(|(&(x, y), &c)| (Point2::from_ints(x, y), c))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn point_set_validation() {
        let unbalanced = PointSet::new(vec![
            (Point2::from_ints(0, 0), Color::Blue),
            (Point2::from_ints(1, 0), Color::Blue),
        ]);
        assert!(matches!(unbalanced, Err(Error::Validation(_))));
        let collinear = PointSet::new(vec![
            (Point2::from_ints(0, 0), Color::Blue),
            (Point2::from_ints(1, 1), Color::Red),
            (Point2::from_ints(2, 2), Color::Blue),
            (Point2::from_ints(0, 5), Color::Red),
        ]);
        let msg = collinear.unwrap_err().to_string();
        assert!(msg.contains("general position violated"), "{msg}");
    }

    #[test]
    fn br_matching_checks() {
        use Color::*;
        let single = PointSet::new(vec![
            (Point2::from_ints(0, 0), Blue),
            (Point2::from_ints(1, 0), Red),
        ])
        .unwrap();
        assert!(is_br_matching(&[(0, 1)], &single).unwrap());

        // B,B,R,R around the square: hull sides 1-2 and 3-0 are bichromatic.
        let bbrr = convex(&[Blue, Blue, Red, Red]);
        assert!(is_br_matching(&[(1, 2), (0, 3)], &bbrr).unwrap());
        // The diagonals 0-2 and 1-3 cross.
        assert!(!is_br_matching(&[(0, 2), (1, 3)], &bbrr).unwrap());
        // Monochromatic pairing.
        assert!(!is_br_matching(&[(0, 1), (2, 3)], &bbrr).unwrap());
        assert!(is_br_matching(&[(0, 9)], &single).is_err());
    }

    #[test]
    fn compatibility() {
        use Color::*;
        let rbrb = convex(&[Red, Blue, Red, Blue]);
        let a = BRMatching::new(&rbrb, vec![(0, 1), (2, 3)]).unwrap();
        let b = BRMatching::new(&rbrb, vec![(1, 2), (3, 0)]).unwrap();
        assert!(are_compatible(&rbrb, &a, &a));
        assert!(are_compatible(&rbrb, &a, &b));
        assert!(are_compatible(&rbrb, &b, &a));

        let p = four_point_set();
        let m = BRMatching::new(&p, vec![(0, 1), (2, 3)]).unwrap();
        // 0-3 and 1-2 are the crossing diagonals of the rectangle.
        let x = BRMatching::from_edges(vec![(0, 3), (1, 2)]);
        assert!(x.defect(&p).is_some());
        assert!(are_compatible(&p, &m, &BRMatching::new(&p, vec![(0, 2), (1, 3)]).unwrap()));
    }

    #[test]
    fn crossing_sequence_four_points() {
        let p = four_point_set();
        let cut = CutLine::new(Point2::from_ints(0, 0), Point2::from_ints(0, 1));
        let m = BRMatching::new(&p, vec![(0, 1), (2, 3)]).unwrap();
        let seq = crossing_sequence(&p, &m, &cut).unwrap();
        assert_eq!(seq.len(), 2);
        assert_eq!(seq[0].edge, (0, 1));
        assert_eq!(seq[0].point, Point2::from_ints(0, -1));
        assert_eq!(seq[1].edge, (2, 3));
        assert_eq!(seq[1].point, Point2::from_ints(0, 1));

        let vertical = BRMatching::new(&p, vec![(0, 2), (1, 3)]).unwrap();
        assert!(crossing_sequence(&p, &vertical, &cut).unwrap().is_empty());

        let bad = CutLine::new(Point2::from_ints(-2, 0), Point2::from_ints(0, 1));
        assert!(matches!(crossing_sequence(&p, &m, &bad), Err(Error::Contract(_))));
    }

    #[test]
    fn verification() {
        use Color::*;
        let rbrb = convex(&[Red, Blue, Red, Blue]);
        let a = BRMatching::new(&rbrb, vec![(0, 1), (2, 3)]).unwrap();
        let b = BRMatching::new(&rbrb, vec![(1, 2), (3, 0)]).unwrap();
        assert!(verify_transformation(&rbrb, &TransformationSequence::start(a.clone())).ok);
        let same = TransformationSequence::from_steps(vec![a.clone(), a.clone()]);
        assert!(verify_transformation(&rbrb, &same).ok);
        assert!(verify_transformation(&rbrb, &TransformationSequence::from_steps(vec![a, b])).ok);

        let p = four_point_set();
        let m = BRMatching::new(&p, vec![(0, 1), (2, 3)]).unwrap();
        // A "matching" whose union with m crosses: the diagonals.
        let diag = BRMatching::from_edges(vec![(0, 3), (1, 2)]);
        let v = verify_transformation(&p, &TransformationSequence::from_steps(vec![m, diag]));
        assert!(!v.ok);
        assert_eq!(v.first_failure, Some(1));
    }
}
