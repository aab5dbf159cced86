use brmatch::geom::{orientation, ratio, segment_intersection, CutLine, Point2, Segment};
use brmatch::hamsandwich::{find_ham_sandwich_cut, ham_sandwich_matching, is_ham_sandwich_cut};
use brmatch::instance::{random_br_matching, random_point_set};
use brmatch::matching::{are_compatible, crossing_count, verify_transformation};
use brmatch::transform::{eliminate_crossings, transform_between, transform_to_hs};
use proptest::prelude::*;

fn pt() -> impl Strategy<Value = Point2> {
    (-50i64..=50, -50i64..=50).prop_map(|(x, y)| Point2::from_ints(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orientation_flips_with_swaps(a in pt(), b in pt(), c in pt()) {
        let o = orientation(&a, &b, &c);
        prop_assert_eq!(orientation(&b, &a, &c), -o);
        prop_assert_eq!(orientation(&b, &c, &a), o);
    }

    #[test]
    fn orientation_survives_rational_scaling(a in pt(), b in pt(), c in pt(), num in 1i64..20, den in 1i64..20) {
        let s = ratio(num, den);
        let (sa, sb, sc) = (a.scale(&s), b.scale(&s), c.scale(&s));
        prop_assert_eq!(orientation(&sa, &sb, &sc), orientation(&a, &b, &c));
    }

    #[test]
    fn intersection_is_symmetric(a in pt(), b in pt(), c in pt(), d in pt()) {
        prop_assume!(a != b && c != d);
        let (s, t) = (Segment::new(a, b), Segment::new(c, d));
        prop_assert_eq!(segment_intersection(&s, &t).is_empty(), segment_intersection(&t, &s).is_empty());
    }

    #[test]
    fn cut_sides_flip_when_reversed(a in pt(), d in pt(), p in pt()) {
        prop_assume!(!d.is_zero());
        let cut = CutLine::new(a, d);
        prop_assert_eq!(cut.reversed().side(&p), -cut.side(&p));
    }

    #[test]
    fn hs_cut_and_matching(n in 1usize..7, seed in 0u64..1000) {
        let p = random_point_set(n, seed, 40).unwrap();
        let cut = find_ham_sandwich_cut(&p).unwrap();
        prop_assert!(is_ham_sandwich_cut(&p, &p.ids(), &cut));
        let h = ham_sandwich_matching(&p).unwrap();
        prop_assert!(h.matching.defect(&p).is_none());
        let bound = (n as f64).log2().ceil() as usize + 1;
        prop_assert!(h.tree.depth() <= bound, "depth {} for n = {}", h.tree.depth(), n);
        // Inside each cell, the matching stays off that cell's cut.
        let mut ok = true;
        h.tree.walk(&mut |t| {
            if let Some(c) = t.cut() {
                let local = h.matching.restrict(|i| t.ids.binary_search(&i).is_ok());
                ok &= crossing_count(&p, &local, c) == 0;
            }
        });
        prop_assert!(ok);
    }

    #[test]
    fn compatibility_is_reflexive_and_symmetric(n in 1usize..6, seed in 0u64..1000, s1 in 0u64..50, s2 in 0u64..50) {
        let p = random_point_set(n, seed, 40).unwrap();
        let (a, b) = (random_br_matching(&p, s1), random_br_matching(&p, s2));
        prop_assert!(are_compatible(&p, &a, &a));
        prop_assert_eq!(are_compatible(&p, &a, &b), are_compatible(&p, &b, &a));
    }

    #[test]
    fn crossing_counts_are_even(n in 1usize..8, seed in 0u64..1000, ms in 0u64..50) {
        let p = random_point_set(n, seed, 40).unwrap();
        let m = random_br_matching(&p, ms);
        let cut = find_ham_sandwich_cut(&p).unwrap();
        prop_assert_eq!(crossing_count(&p, &m, &cut) % 2, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sequences_verify_and_meet_bounds(n in 1usize..7, seed in 0u64..1000, s1 in 0u64..50, s2 in 0u64..50) {
        let p = random_point_set(n, seed, 40).unwrap();
        let (a, b) = (random_br_matching(&p, s1), random_br_matching(&p, s2));
        let cut = find_ham_sandwich_cut(&p).unwrap();

        let e = eliminate_crossings(&p, &a, &cut).unwrap();
        prop_assert!(e.len() <= n / 2);
        prop_assert_eq!(crossing_count(&p, e.last(), &cut), 0);
        prop_assert!(verify_transformation(&p, &e).ok);

        let h = ham_sandwich_matching(&p).unwrap();
        let to_h = transform_to_hs(&p, &a, &h).unwrap();
        prop_assert!(to_h.len() <= n);
        prop_assert_eq!(to_h.last(), &h.matching);

        let ab = transform_between(&p, &a, &b).unwrap();
        prop_assert!(ab.len() <= 2 * n);
        prop_assert_eq!(ab.first(), &a);
        prop_assert_eq!(ab.last(), &b);
        prop_assert!(verify_transformation(&p, &ab).ok);
    }
}
