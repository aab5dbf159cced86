//! Transformation between two random matchings via the ham-sandwich matching.

use brmatch::instance::{random_br_matching, random_point_set};
use brmatch::matching::verify_transformation;
use brmatch::transform::TransformPlanner;

fn main() -> brmatch::Result<()> {
    let p = random_point_set(7, 3, 60)?;
    let a = random_br_matching(&p, 1);
    let b = random_br_matching(&p, 2);

    let mut planner = TransformPlanner::new(&p)?;
    println!("a -> H: {} steps", planner.route(&a)?.len());
    println!("b -> H: {} steps", planner.route(&b)?.len());
    let seq = planner.between(&a, &b)?;
    for step in seq.steps() {
        println!("{:?}", step.edges());
    }
    println!("length {} (bound {}), verified {}", seq.len(), 2 * p.n(), verify_transformation(&p, &seq).ok);
    Ok(())
}
