//! Text formats for point sets and matchings, and random instances.
//!
//! Point file: first line `2n`, then `x y B|R` per point, with `x` and `y`
//! integers or decimal fractions. Matching file: one `i j` pair of 0-based
//! point ids per line. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use num::{BigInt, One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{orientation, rational_string, segment_intersection, Point2, Rational};
use crate::matching::{BRMatching, Color, Edge, PointSet};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Exact value of an integer or decimal literal such as `-12`, `0.375`, `+.5`.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().ok()?;
    let den = num::pow(BigInt::from(10), frac.len());
    let r = Rational::new(num, den);
    Some(if neg { -r } else { r })
}

pub fn parse_point_set(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (first_no, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty point file".into(),
    })?;
    let count: usize = first.parse().map_err(|_| Error::Parse {
        line: first_no,
        message: format!("expected the point count, found {first:?}"),
    })?;
    let mut pts = Vec::with_capacity(count);
    let mut last_line = first_no;
    for (no, line) in lines {
        last_line = no;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| Error::Parse { line: no, message };
        if fields.len() != 3 {
            return Err(bad(format!("expected `x y B|R`, found {line:?}")));
        }
        let x = parse_decimal(fields[0]).ok_or_else(|| bad(format!("bad coordinate {:?}", fields[0])))?;
        let y = parse_decimal(fields[1]).ok_or_else(|| bad(format!("bad coordinate {:?}", fields[1])))?;
        let c = match fields[2] {
            "B" | "b" => Color::Blue,
            "R" | "r" => Color::Red,
            other => return Err(bad(format!("color must be B or R, found {other:?}"))),
        };
        pts.push((Point2::new(x, y), c));
    }
    if pts.len() != count {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header announces {count} points but {} follow", pts.len()),
        });
    }
    if count % 2 == 1 {
        return Err(Error::Validation(format!("odd number of points: {count}")));
    }
    PointSet::new(pts)
}

pub fn format_point_set(points: &PointSet) -> String {
    let mut s = format!("{}\n", points.len());
    for p in points.points() {
        let _ = writeln!(
            s,
            "{} {} {}",
            decimal_string(&p.position.x),
            decimal_string(&p.position.y),
            p.color.letter()
        );
    }
    s
}

/// Decimal form when the value has a terminating expansion, `p/q` otherwise.
fn decimal_string(r: &Rational) -> String {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0usize, 0usize);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return rational_string(r);
    }
    let places = twos.max(fives);
    if places == 0 {
        return r.numer().to_string();
    }
    let scaled = r * Rational::from_integer(num::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().to_string();
    let (sign, digits) = match digits.strip_prefix('-') {
        Some(d) => ("-", d.to_string()),
        None => ("", digits),
    };
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    format!("{sign}{int}.{frac}")
}

/// Parses and validates a matching covering every point.
pub fn parse_matching(text: &str, points: &PointSet) -> Result<BRMatching> {
    let mut edges: Vec<Edge> = Vec::new();
    for (no, line) in content_lines(text) {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = |message: String| Error::Parse { line: no, message };
        if fields.len() != 2 {
            return Err(bad(format!("expected `i j`, found {line:?}")));
        }
        let id = |f: &str| -> Result<usize> {
            let v: usize = f.parse().map_err(|_| bad(format!("bad point id {f:?}")))?;
            if v >= points.len() {
                return Err(bad(format!("point id {v} out of range (0..{})", points.len())));
            }
            Ok(v)
        };
        edges.push((id(fields[0])?, id(fields[1])?));
    }
    BRMatching::new(points, edges)
}

pub fn format_matching(m: &BRMatching) -> String {
    m.edges().iter().map(|(a, b)| format!("{a} {b}\n")).collect()
}

/// `n` blue and `n` red points with integer coordinates in
/// `[-range, range]^2`, in general position. Deterministic in `seed`.
pub fn random_point_set(n: usize, seed: u64, range: i64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::Validation("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point2> = Vec::with_capacity(2 * n);
    let mut attempts = 0usize;
    while pts.len() < 2 * n {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Validation(format!(
                "could not place {} points in general position within range {range}",
                2 * n
            )));
        }
        let p = Point2::from_ints(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        let clash = pts.iter().any(|q| q == &p)
            || (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| orientation(&pts[i], &pts[j], &p) == 0));
        if !clash {
            pts.push(p);
        }
    }
    let colored = pts
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, if i % 2 == 0 { Color::Blue } else { Color::Red }))
        .collect();
    PointSet::new(colored)
}

/// A random BR-matching: a random blue-to-red bijection, uncrossed until
/// plane. Replacing two crossing edges by the other bichromatic pair
/// shortens the total length, so this terminates.
pub fn random_br_matching(points: &PointSet, seed: u64) -> BRMatching {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blue: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Blue).collect();
    let mut red: Vec<usize> = points.ids().into_iter().filter(|&i| points.color(i) == Color::Red).collect();
    red.shuffle(&mut rng);
    let mut edges: Vec<Edge> = blue.into_iter().zip(red).collect();
    'uncross: loop {
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (s, t) = (points.segment(edges[i]), points.segment(edges[j]));
                if !segment_intersection(&s, &t).is_empty() {
                    let (b1, r1) = edges[i];
                    let (b2, r2) = edges[j];
                    edges[i] = (b1, r2);
                    edges[j] = (b2, r1);
                    continue 'uncross;
                }
            }
        }
        break;
    }
    BRMatching::from_edges(edges)
}
