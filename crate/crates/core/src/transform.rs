//! Crossing reduction, crossing elimination and the transformations built
//! on them.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{invariant, Error, Result};
use crate::geom::CutLine;
use crate::hamsandwich::{ham_sandwich_matching, is_ham_sandwich_cut, CutNode, CutTree, HSMatchingTrace};
use crate::matching::{
    are_compatible, crossing_sequence, verify_transformation_on, BRMatching, Edge, PointSet,
    TransformationSequence,
};
use crate::pgraph::{build_subdivision, BuildOptions, Dump, VertexKind};

#[derive(Clone, Copy, Debug)]
pub struct TransformOptions {
    /// Run every subdivision invariant check while building.
    pub verify: bool,
    /// Keep a JSON dump of each subdivision in its report.
    pub keep_dumps: bool,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            verify: true,
            keep_dumps: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub input_crossings: usize,
    pub output_crossings: usize,
    pub faces_crossing: usize,
    pub faces: usize,
    /// Matched points, and switch-vertices summed over all faces.
    pub points: usize,
    pub switch_vertices: usize,
    /// Uncovered cut intervals after the initial gluing and each extension.
    pub omega: Vec<usize>,
    /// Subdivision invariant checks that ran and passed.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pgraph_dump: Option<Dump>,
}

/// Everything observed while running the algorithms.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub reductions: Vec<ReductionReport>,
    /// Every cut eliminated against, in the order used.
    pub cuts: Vec<CutLine>,
}

fn ham_sandwich_precondition(points: &PointSet, m: &BRMatching, cut: &CutLine) -> Result<Vec<usize>> {
    let support = m.support();
    if !is_ham_sandwich_cut(points, &support, cut) {
        return Err(Error::Contract(
            "cut is not a ham-sandwich cut of the matched points".into(),
        ));
    }
    Ok(support)
}

/// One application of the switch-matching construction: a matching
/// compatible with `m` that crosses `cut` at least two times fewer.
pub fn reduce_crossings_once(points: &PointSet, m: &BRMatching, cut: &CutLine) -> Result<(BRMatching, ReductionReport)> {
    reduce_with(points, m, cut, TransformOptions::default())
}

pub fn reduce_with(
    points: &PointSet,
    m: &BRMatching,
    cut: &CutLine,
    opts: TransformOptions,
) -> Result<(BRMatching, ReductionReport)> {
    let support = ham_sandwich_precondition(points, m, cut)?;
    let k = crossing_sequence(points, m, cut)?.len();
    if k == 0 {
        return Err(Error::Contract("matching already avoids the cut".into()));
    }
    invariant!(k % 2 == 0, "odd crossing count {k} with a ham-sandwich cut");

    let (g, log) = build_subdivision(points, m, cut, BuildOptions { verify: opts.verify })?;
    let faces = g.faces()?;
    let euler = g.edge_count() + 1 - g.vertices().len();
    invariant!(faces.len() == euler, "{} faces but Euler predicts {euler}", faces.len());

    // Switch-vertices: well-colored, colored like their point, and each
    // matched point in exactly one face.
    let mut owner = vec![0usize; points.len()];
    for f in &faces {
        invariant!(g.is_well_colored(f), "face is not well-colored");
        for (i, v) in g.switch_vertices(f) {
            let VertexKind::Point(id) = g.vertex(v).kind else {
                return Err(Error::Invariant(format!("switch-vertex {v} is not an input point")));
            };
            invariant!(
                g.switch_color(f, i) == points.color(id),
                "switch-vertex of point {id} has the wrong color"
            );
            owner[id] += 1;
        }
    }
    for &id in &support {
        invariant!(owner[id] == 1, "point {id} is a switch-vertex in {} faces", owner[id]);
    }
    invariant!(
        owner.iter().sum::<usize>() == support.len(),
        "switch-vertex outside the matched points"
    );

    let crossing_faces = faces.iter().filter(|f| g.face_crosses(f, cut)).count();
    invariant!(
        crossing_faces == g.omega(),
        "{crossing_faces} faces cross the cut but {} intervals are open",
        g.omega()
    );
    invariant!(crossing_faces < k, "{crossing_faces} faces cross the cut with k = {k}");

    let mut edges: Vec<Edge> = Vec::with_capacity(m.len());
    for f in &faces {
        edges.extend(g.switch_matching(f, cut)?);
    }
    let next = BRMatching::on_support(points, edges, &support)
        .map_err(|e| Error::Invariant(format!("union of switch-matchings is not a BR-matching: {e}")))?;
    invariant!(are_compatible(points, m, &next), "reduced matching is not compatible");
    let k2 = crossing_sequence(points, &next, cut)?.len();
    invariant!(k2 + 2 <= k && k2 % 2 == 0, "crossings went from {k} to {k2}");

    let report = ReductionReport {
        input_crossings: k,
        output_crossings: k2,
        faces_crossing: crossing_faces,
        faces: faces.len(),
        points: support.len(),
        switch_vertices: owner.iter().sum(),
        omega: log.omega,
        checks: log.checks,
        pgraph_dump: if opts.keep_dumps { Some(g.dump()?) } else { None },
    };
    Ok((next, report))
}

/// Compatible steps from `m` to a matching that avoids `cut`.
pub fn eliminate_crossings(points: &PointSet, m: &BRMatching, cut: &CutLine) -> Result<TransformationSequence> {
    eliminate_traced(points, m, cut, TransformOptions::default(), &mut Trace::default())
}

pub fn eliminate_traced(
    points: &PointSet,
    m: &BRMatching,
    cut: &CutLine,
    opts: TransformOptions,
    trace: &mut Trace,
) -> Result<TransformationSequence> {
    ham_sandwich_precondition(points, m, cut)?;
    trace.cuts.push(cut.clone());
    let mut seq = TransformationSequence::start(m.clone());
    loop {
        let cur = seq.last().clone();
        if crossing_sequence(points, &cur, cut)?.is_empty() {
            break;
        }
        let (next, report) = reduce_with(points, &cur, cut, opts)?;
        trace.reductions.push(report);
        seq.push(next);
    }
    let n = m.len();
    invariant!(seq.len() <= n / 2, "{} reduction steps for {n} edges", seq.len());
    Ok(seq)
}

/// Compatible steps from `m` to the ham-sandwich matching of `h`.
pub fn transform_to_hs(points: &PointSet, m: &BRMatching, h: &HSMatchingTrace) -> Result<TransformationSequence> {
    transform_to_hs_traced(points, m, h, TransformOptions::default(), &mut Trace::default())
}

pub fn transform_to_hs_traced(
    points: &PointSet,
    m: &BRMatching,
    h: &HSMatchingTrace,
    opts: TransformOptions,
    trace: &mut Trace,
) -> Result<TransformationSequence> {
    if m.support() != h.tree.ids {
        return Err(Error::Validation(
            "matching and ham-sandwich matching cover different points".into(),
        ));
    }
    let seq = TransformationSequence::from_steps(to_tree(points, m, &h.tree, opts, trace)?);
    invariant!(seq.last() == &h.matching, "transformation does not end at the ham-sandwich matching");
    invariant!(seq.len() <= m.len(), "transformation of length {} for n = {}", seq.len(), m.len());
    if opts.verify {
        let v = verify_transformation_on(points, &seq, &h.tree.ids);
        invariant!(v.ok, "transformation fails verification: {:?}", v.reason);
    }
    Ok(seq)
}

fn to_tree(
    points: &PointSet,
    m: &BRMatching,
    tree: &CutTree,
    opts: TransformOptions,
    trace: &mut Trace,
) -> Result<Vec<BRMatching>> {
    let (cut, left, right) = match &tree.node {
        CutNode::Leaf(e) => {
            invariant!(m.edges() == [*e], "cell {:?} is not matched by its leaf edge", tree.ids);
            return Ok(vec![m.clone()]);
        }
        CutNode::Split { cut, left, right } => (cut, left, right),
    };
    let mut steps = eliminate_traced(points, m, cut, opts, trace)?.into_steps();
    let last = steps.last().unwrap().clone();
    let is_left = |id: usize| cut.side(points.position(id)) > 0;
    let ml = last.restrict(is_left);
    let mr = last.restrict(|id| !is_left(id));
    invariant!(ml.len() + mr.len() == last.len(), "edge crosses the cut after elimination");

    let sl = to_tree(points, &ml, left, opts, trace)?;
    let sr = to_tree(points, &mr, right, opts, trace)?;
    let rounds = sl.len().max(sr.len());
    for i in 1..rounds {
        let a = &sl[i.min(sl.len() - 1)];
        let b = &sr[i.min(sr.len() - 1)];
        steps.push(a.union(b));
    }
    Ok(steps)
}

/// Compatible steps from `a` to `b` through the canonical ham-sandwich
/// matching, at most `2n` long.
pub fn transform_between(points: &PointSet, a: &BRMatching, b: &BRMatching) -> Result<TransformationSequence> {
    let h = ham_sandwich_matching(points)?;
    transform_between_via(points, a, b, &h, TransformOptions::default(), &mut Trace::default())
}

pub fn transform_between_via(
    points: &PointSet,
    a: &BRMatching,
    b: &BRMatching,
    h: &HSMatchingTrace,
    opts: TransformOptions,
    trace: &mut Trace,
) -> Result<TransformationSequence> {
    let mut seq = transform_to_hs_traced(points, a, h, opts, trace)?;
    let back = transform_to_hs_traced(points, b, h, opts, trace)?;
    seq.append(&back.reversed());
    seq.collapse_duplicates();
    finish_between(points, seq, opts.verify)
}

fn finish_between(points: &PointSet, seq: TransformationSequence, verify: bool) -> Result<TransformationSequence> {
    let n = points.n();
    invariant!(seq.len() <= 2 * n, "transformation of length {} for n = {n}", seq.len());
    if verify {
        let v = verify_transformation_on(points, &seq, &points.ids());
        invariant!(v.ok, "transformation fails verification: {:?}", v.reason);
    }
    Ok(seq)
}

/// Answers many [`transform_between`] queries on one point set, computing
/// each matching's route to the ham-sandwich matching once.
pub struct TransformPlanner<'a> {
    points: &'a PointSet,
    h: HSMatchingTrace,
    opts: TransformOptions,
    routes: HashMap<BRMatching, TransformationSequence>,
    verified: HashSet<(BRMatching, BRMatching)>,
    pub trace: Trace,
}

impl<'a> TransformPlanner<'a> {
    pub fn new(points: &'a PointSet) -> Result<Self> {
        Self::with_options(points, TransformOptions::default())
    }

    pub fn with_options(points: &'a PointSet, opts: TransformOptions) -> Result<Self> {
        Ok(TransformPlanner {
            points,
            h: ham_sandwich_matching(points)?,
            opts,
            routes: HashMap::new(),
            verified: HashSet::new(),
            trace: Trace::default(),
        })
    }

    pub fn ham_sandwich(&self) -> &HSMatchingTrace {
        &self.h
    }

    pub fn route(&mut self, m: &BRMatching) -> Result<&TransformationSequence> {
        if !self.routes.contains_key(m) {
            let seq = transform_to_hs_traced(self.points, m, &self.h, self.opts, &mut self.trace)?;
            for w in seq.steps().windows(2) {
                self.verified.insert((w[0].clone(), w[1].clone()));
            }
            self.routes.insert(m.clone(), seq);
        }
        Ok(&self.routes[m])
    }

    /// Same result as [`transform_between`]. Every consecutive pair is
    /// checked, but pairs already checked on a cached route are not redone.
    pub fn between(&mut self, a: &BRMatching, b: &BRMatching) -> Result<TransformationSequence> {
        let mut seq = self.route(a)?.clone();
        let back = self.route(b)?.reversed();
        seq.append(&back);
        seq.collapse_duplicates();
        let n = self.points.n();
        invariant!(seq.len() <= 2 * n, "transformation of length {} for n = {n}", seq.len());
        for w in seq.steps().windows(2) {
            let known = self.verified.contains(&(w[0].clone(), w[1].clone()))
                || self.verified.contains(&(w[1].clone(), w[0].clone()));
            if !known {
                invariant!(
                    are_compatible(self.points, &w[0], &w[1]),
                    "planned transformation has an incompatible step"
                );
            }
        }
        Ok(seq)
    }
}
