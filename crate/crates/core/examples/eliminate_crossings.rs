//! Removes the crossings of a random matching with the ham-sandwich cut,
//! printing the crossing count after every step.

use brmatch::hamsandwich::find_ham_sandwich_cut;
use brmatch::instance::{random_br_matching, random_point_set};
use brmatch::matching::{crossing_count, verify_transformation};
use brmatch::transform::{eliminate_traced, TransformOptions, Trace};

fn main() -> brmatch::Result<()> {
    let p = random_point_set(8, 7, 60)?;
    let cut = find_ham_sandwich_cut(&p)?;
    // Pick the sample with the most crossings among a few seeds.
    let m = (0..40)
        .map(|s| random_br_matching(&p, s))
        .max_by_key(|m| crossing_count(&p, m, &cut))
        .unwrap();

    let mut trace = Trace::default();
    let seq = eliminate_traced(&p, &m, &cut, TransformOptions::default(), &mut trace)?;
    for (i, step) in seq.steps().iter().enumerate() {
        println!("step {i}: {} crossings", crossing_count(&p, step, &cut));
    }
    for r in &trace.reductions {
        println!(
            "reduction {} -> {}: {} faces, {} crossing, omega {:?}",
            r.input_crossings, r.output_crossings, r.faces, r.faces_crossing, r.omega
        );
    }
    println!("steps {} (bound {}), verified {}", seq.len(), p.n() / 2, verify_transformation(&p, &seq).ok);
    Ok(())
}
