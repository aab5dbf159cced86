//! Builds the extended subdivision for one matching and prints its faces.
//! Pass `--json` for the full dump.

use brmatch::hamsandwich::find_ham_sandwich_cut;
use brmatch::instance::{random_br_matching, random_point_set};
use brmatch::matching::crossing_count;
use brmatch::pgraph::{build_subdivision, BuildOptions};

fn main() -> brmatch::Result<()> {
    let p = random_point_set(5, 11, 40)?;
    let cut = find_ham_sandwich_cut(&p)?;
    let m = (0..40)
        .map(|s| random_br_matching(&p, s))
        .max_by_key(|m| crossing_count(&p, m, &cut))
        .unwrap();

    let (g, log) = build_subdivision(&p, &m, &cut, BuildOptions::default())?;
    let dump = g.dump()?;
    if std::env::args().any(|a| a == "--json") {
        println!("{}", serde_json::to_string_pretty(&dump).unwrap());
        return Ok(());
    }
    println!("{} crossings, omega per step {:?}, {} checks", log.crossings, log.omega, log.checks);
    println!("{} vertices, {} half-edges", dump.vertices.len(), dump.half_edges.len());
    for (i, f) in dump.faces.iter().enumerate() {
        let mark = if f.crosses_cut { " crosses cut" } else { "" };
        println!("face {i}: {} sides, switch points {:?}{mark}", f.boundary.len(), f.switch_points);
    }
    Ok(())
}
