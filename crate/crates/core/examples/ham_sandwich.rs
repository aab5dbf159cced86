//! Ham-sandwich cut and matching of a random point set.
//!
//!     cargo run --example ham_sandwich -- 6 42

use brmatch::hamsandwich::{find_ham_sandwich_cut, ham_sandwich_matching, side_counts};
use brmatch::instance::random_point_set;

fn main() -> brmatch::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(6) as usize;
    let seed = args.get(1).copied().unwrap_or(42);
    let p = random_point_set(n, seed, 50)?;

    let cut = find_ham_sandwich_cut(&p)?;
    let c = side_counts(&p, &p.ids(), &cut);
    println!("cut through {} along {}", cut.anchor, cut.direction);
    println!("left {}B {}R, right {}B {}R", c.left_blue, c.left_red, c.right_blue, c.right_red);

    let h = ham_sandwich_matching(&p)?;
    println!("H = {:?} (tree depth {})", h.matching.edges(), h.tree.depth());
    Ok(())
}
