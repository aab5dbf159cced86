//! Brute-force transformation graph of a small instance, compared against
//! the algorithm's sequence lengths.

use brmatch::instance::random_point_set;
use brmatch::oracle::{build_transformation_graph, distance_and_diameter, permutation_filter_count, DEFAULT_LIMIT};
use brmatch::transform::TransformPlanner;

fn main() -> brmatch::Result<()> {
    let p = random_point_set(4, 19, 40)?;
    let g = build_transformation_graph(&p, DEFAULT_LIMIT)?;
    let d = distance_and_diameter(&g)?;
    println!(
        "{} matchings ({} by permutation filter), {} compatible pairs, diameter {}",
        g.len(),
        permutation_filter_count(&p, DEFAULT_LIMIT)?,
        g.edge_count(),
        d.diameter
    );

    let mut planner = TransformPlanner::new(&p)?;
    let mut worst = (0, 0);
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            let len = planner.between(&g.nodes[i], &g.nodes[j])?.len();
            assert!(len >= d.dist[i][j]);
            worst = worst.max((len, d.dist[i][j]));
        }
    }
    println!("longest sequence {} (distance {}) against bound {}", worst.0, worst.1, 2 * p.n());
    Ok(())
}
