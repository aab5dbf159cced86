//! Diameter of the convex alternating family for small n.

use brmatch::oracle::{build_transformation_graph, distance_and_diameter, lower_bound_instance, DEFAULT_LIMIT};

fn main() -> brmatch::Result<()> {
    for n in [2, 4, 6] {
        let p = lower_bound_instance(n)?;
        let g = build_transformation_graph(&p, DEFAULT_LIMIT)?;
        let d = distance_and_diameter(&g)?;
        println!("n = {n}: {} matchings, diameter {} (n/2 = {})", g.len(), d.diameter, n / 2);
    }
    Ok(())
}
