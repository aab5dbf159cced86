//! Writes an SVG of the ham-sandwich matching with its root cut.
//!
//!     cargo run --example svg_render -- out.svg

use brmatch::hamsandwich::ham_sandwich_matching;
use brmatch::instance::random_point_set;
use brmatch::svg;

fn main() -> brmatch::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "hs.svg".into());
    let p = random_point_set(8, 5, 60)?;
    let h = ham_sandwich_matching(&p)?;
    std::fs::write(&path, svg::render(&p, &h.matching, h.tree.cut(), "ham-sandwich matching"))?;
    println!("wrote {path}");
    Ok(())
}
