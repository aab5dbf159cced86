use super::*;
use crate::geom::ratio;
use crate::matching::crossing_sequence;

fn p(x: i64, y: i64) -> Point2 {
    Point2::from_ints(x, y)
}

fn four() -> PointSet {
    PointSet::new(vec![
        (p(-2, -1), Color::Blue),
        (p(2, -1), Color::Red),
        (p(-2, 1), Color::Red),
        (p(2, 1), Color::Blue),
    ])
    .unwrap()
}

fn four_crossing(points: &PointSet) -> BRMatching {
    BRMatching::new(points, vec![(0, 1), (2, 3)]).unwrap()
}

fn x_axis_cut() -> CutLine {
    CutLine::new(p(0, 0), p(0, 1))
}

fn single() -> (PointSet, BRMatching) {
    let pts = PointSet::new(vec![(p(0, 0), Color::Blue), (p(1, 0), Color::Red)]).unwrap();
    let m = BRMatching::new(&pts, vec![(0, 1)]).unwrap();
    (pts, m)
}

#[test]
fn init_single_edge() {
    let (pts, m) = single();
    let g = PGraph::new(&pts, &m).unwrap();
    assert_eq!(g.edge_count(), 5);
    assert_eq!(g.half_edges().len(), 10);
    let toward_red = (0..10)
        .find(|&h| g.half_edge(h).kind == EdgeKind::Matching((0, 1)) && g.target(h) == g.point_vertex(1).unwrap())
        .unwrap();
    assert_eq!(g.half_edge(toward_red).color, Color::Red);
    assert_eq!(g.half_edge(g.half_edge(toward_red).twin).color, Color::Blue);
}

#[test]
fn init_gamma_corners() {
    let pts = four();
    let g = PGraph::new(&pts, &four_crossing(&pts)).unwrap();
    assert_eq!(g.gamma(), &[p(-3, -2), p(3, -2), p(3, 2), p(-3, 2)]);
    let matching: Vec<Color> = g
        .half_edges()
        .iter()
        .filter(|h| matches!(h.kind, EdgeKind::Matching(_)))
        .map(|h| h.color)
        .collect();
    assert_eq!(matching.iter().filter(|&&c| c == Color::Red).count(), 2);
    assert_eq!(matching.iter().filter(|&&c| c == Color::Blue).count(), 2);
    g.check_p_graph(&pts).unwrap();
}

#[test]
fn split_keeps_colors() {
    let pts = PointSet::new(vec![(p(0, 0), Color::Blue), (p(4, 0), Color::Red)]).unwrap();
    let m = BRMatching::new(&pts, vec![(0, 1)]).unwrap();
    let mut g = PGraph::new(&pts, &m).unwrap();
    let stars_before: Vec<Vec<Color>> = g
        .vertices()
        .iter()
        .map(|v| v.outgoing().iter().map(|&h| g.half_edge(h).color).collect())
        .collect();
    let x = g.split(0, p(1, 0)).unwrap();
    g.check_p_graph(&pts).unwrap();
    let (b, r) = (g.point_vertex(0).unwrap(), g.point_vertex(1).unwrap());
    for h in 0..g.half_edges().len() {
        if !matches!(g.half_edge(h).kind, EdgeKind::Matching(_)) {
            continue;
        }
        let from = g.half_edge(h).origin;
        let toward_r = from == b || (from == x && g.target(h) == r);
        let want = if toward_r { Color::Red } else { Color::Blue };
        assert_eq!(g.half_edge(h).color, want, "half-edge {h}");
    }
    for (v, star) in stars_before.iter().enumerate() {
        let now: Vec<Color> = g.vertex(v).outgoing().iter().map(|&h| g.half_edge(h).color).collect();
        assert_eq!(&now, star);
    }
    assert!(g.split(0, p(1, 0)).is_err());
}

#[test]
fn split_gamma_edge() {
    let (pts, m) = single();
    let mut g = PGraph::new(&pts, &m).unwrap();
    g.color_gamma(Color::Blue).unwrap();
    let h = g.edges().find(|&h| g.half_edge(h).kind == EdgeKind::Gamma).unwrap();
    let mid = g.segment(h).a.midpoint(&g.segment(h).b);
    g.split(h, mid).unwrap();
    let gamma: Vec<Color> = g
        .half_edges()
        .iter()
        .filter(|h| h.kind == EdgeKind::Gamma)
        .map(|h| h.color)
        .collect();
    assert_eq!(gamma.len(), 10);
    assert!(gamma.iter().all(|&c| c == Color::Blue));
    g.check_p_graph(&pts).unwrap();
}

#[test]
fn color_seen_from_both_sides() {
    let pts = four();
    let g = PGraph::new(&pts, &four_crossing(&pts)).unwrap();
    let x = p(0, -1);
    let b = g.locate(&x).unwrap();
    assert!(matches!(b, BoundaryPoint::OnEdge(..)));
    assert_eq!(g.color_seen(&b, &p(0, -2)).unwrap(), Color::Blue);
    assert_eq!(g.color_seen(&b, &p(0, 0)).unwrap(), Color::Red);
    let bv = BoundaryPoint::Vertex(g.point_vertex(0).unwrap());
    assert!(g.color_seen(&bv, &p(0, 0)).is_err());
}

#[test]
fn build_g0_four_points() {
    let pts = four();
    let m = four_crossing(&pts);
    let cut = x_axis_cut();
    let cs = crossing_sequence(&pts, &m, &cut).unwrap();
    assert_eq!(cs.len(), 2);
    let mut g = PGraph::new(&pts, &m).unwrap();
    g.build_g0(&cut, &cs).unwrap();
    assert_eq!(g.gamma_color(), Some(Color::Blue));
    let glue = g.edges().filter(|&h| g.half_edge(h).kind == EdgeKind::Glue).count();
    assert_eq!(glue, 3);
    assert_eq!(g.omega(), 0);
    g.check_p_graph(&pts).unwrap();
    g.check_color_invariant().unwrap();
    assert!(g.build_g0(&cut, &cs).is_err());
}

#[test]
fn glue_contracts() {
    let pts = four();
    let m = four_crossing(&pts);
    let mut g = PGraph::new(&pts, &m).unwrap();
    g.color_gamma(Color::Red).unwrap();
    let pv = BoundaryPoint::Vertex(g.point_vertex(0).unwrap());
    let below = g.locate(&p(0, -2)).unwrap();
    assert!(matches!(g.glue(&pv, &below), Err(Error::Contract(_))));
    // The lower matching edge shows blue downward, the rectangle is red.
    let on_edge = g.locate(&p(0, -1)).unwrap();
    assert!(matches!(g.glue(&below, &on_edge), Err(Error::Contract(_))));
    // Both matching edges show red into the strip between them.
    let lower = g.locate(&p(1, -1)).unwrap();
    let upper = g.locate(&p(1, 1)).unwrap();
    let h = g.glue(&lower, &upper).unwrap();
    assert_eq!(g.half_edge(h).color, Color::Red);
    assert_eq!(g.half_edge(g.half_edge(h).twin).color, Color::Red);
    assert_eq!(g.half_edge(h).kind, EdgeKind::Glue);
    g.check_p_graph(&pts).unwrap();
    // The new edge blocks the view across it.
    assert!(!g.visible(&p(0, 0), &p(2, 0)));
    assert!(g.visible(&p(0, 0), &p(0, 1)));
}

#[test]
fn single_edge_has_two_faces() {
    let (pts, m) = single();
    let cut = CutLine::new(p(2, 0), p(0, 1));
    let (g, log) = build_subdivision(&pts, &m, &cut, BuildOptions::default()).unwrap();
    assert_eq!(log.crossings, 0);
    let faces = g.faces().unwrap();
    assert_eq!(faces.len(), 2);
    assert_eq!(faces.len(), g.edge_count() + 1 - g.vertices().len());
    let switches: usize = faces.iter().map(|f| g.switch_vertices(f).len()).sum();
    assert_eq!(switches, 2);
}

#[test]
fn four_point_full_build() {
    let pts = four();
    let m = four_crossing(&pts);
    let cut = x_axis_cut();
    let (g, log) = build_subdivision(&pts, &m, &cut, BuildOptions::default()).unwrap();
    assert_eq!(log.omega, vec![0, 0, 0]);
    assert_eq!(log.checks, 3);
    let faces = g.faces().unwrap();
    assert_eq!(faces.len(), g.edge_count() + 1 - g.vertices().len());
    assert!(faces.iter().all(|f| f.convex && g.is_well_colored(f)));
    assert!(faces.iter().all(|f| !g.face_crosses(f, &cut)));

    let mut seen = Vec::new();
    for f in &faces {
        for (i, v) in g.switch_vertices(f) {
            assert_eq!(g.switch_color(f, i), pts.color(match g.vertex(v).kind {
                VertexKind::Point(id) => {
                    seen.push(id);
                    id
                }
                _ => panic!("switch-vertex {v} is not an input point"),
            }));
        }
    }
    seen.sort();
    assert_eq!(seen, vec![0, 1, 2, 3]);

    let mut edges: Vec<Edge> = Vec::new();
    for f in &faces {
        edges.extend(g.switch_matching(f, &cut).unwrap());
    }
    let next = BRMatching::new(&pts, edges).unwrap();
    assert_eq!(next.edges(), &[(0, 2), (1, 3)]);
}

#[test]
fn crossing_face_gets_one_crossing_edge() {
    // Four nearly parallel edges crossed by a vertical cut.
    let pts = PointSet::new(vec![
        (p(-3, 0), Color::Blue),
        (p(3, 1), Color::Red),
        (p(-3, 4), Color::Red),
        (p(3, 5), Color::Blue),
        (p(-4, 9), Color::Blue),
        (p(4, 10), Color::Red),
        (p(-4, 14), Color::Red),
        (p(4, 15), Color::Blue),
    ])
    .unwrap();
    let m = BRMatching::new(&pts, vec![(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
    let cut = CutLine::new(Point2::new(ratio(1, 2), rat(0)), p(0, 1));
    let (g, log) = build_subdivision(&pts, &m, &cut, BuildOptions::default()).unwrap();
    assert_eq!(log.crossings, 4);
    let faces = g.faces().unwrap();
    let crossing: Vec<&Face> = faces.iter().filter(|f| g.face_crosses(f, &cut)).collect();
    assert_eq!(crossing.len(), g.omega());
    assert!(crossing.len() < 4);
    let mut edges = Vec::new();
    for f in &faces {
        let fm = g.switch_matching(f, &cut).unwrap();
        let cross = fm
            .iter()
            .filter(|&&(a, b)| cut.side(pts.position(a)) != cut.side(pts.position(b)))
            .count();
        assert!(cross <= usize::from(g.face_crosses(f, &cut)));
        edges.extend(fm);
    }
    let next = BRMatching::new(&pts, edges).unwrap();
    assert!(crate::matching::are_compatible(&pts, &m, &next));
    let k2 = crossing_sequence(&pts, &next, &cut).unwrap().len();
    assert!(k2 <= 2 && k2 % 2 == 0, "k' = {k2}");
}

#[test]
fn dump_serializes() {
    let pts = four();
    let (g, _) = build_subdivision(&pts, &four_crossing(&pts), &x_axis_cut(), BuildOptions::default()).unwrap();
    let d = g.dump().unwrap();
    let json = serde_json::to_string(&d).unwrap();
    assert!(json.contains("\"half_edges\""));
    assert_eq!(d.faces.len(), g.faces().unwrap().len());
    let mut sw: Vec<usize> = d.faces.iter().flat_map(|f| f.switch_points.clone()).collect();
    sw.sort();
    assert_eq!(sw, vec![0, 1, 2, 3]);
}
