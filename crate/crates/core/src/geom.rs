//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Every predicate here is exact: coordinates are [`Rational`]s and signs are
//! decided on exact cross products, so no epsilon ever enters the pipeline.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Canonical arbitrary-precision rational (gcd 1, positive denominator).
pub type Rational = num::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Sign of a rational as -1, 0 or +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Nearest `f64`; used for display and for conservative filters.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact textual form: `p` or `p/q`.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat(x), rat(y))
    }

    pub fn dot(&self, other: &Point2) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of the cross product of two vectors.
    pub fn cross(&self, other: &Point2) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    /// The vector rotated by +90 degrees.
    pub fn perp(&self) -> Point2 {
        Point2::new(-self.y.clone(), self.x.clone())
    }

    pub fn scale(&self, s: &Rational) -> Point2 {
        Point2::new(&self.x * s, &self.y * s)
    }

    pub fn neg(&self) -> Point2 {
        Point2::new(-self.x.clone(), -self.y.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let half = ratio(1, 2);
        Point2::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (to_f64(&self.x), to_f64(&self.y))
    }
}

impl<'a> Sub for &'a Point2 {
    type Output = Point2;
    fn sub(self, rhs: &'a Point2) -> Point2 {
        Point2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a> Add for &'a Point2 {
    type Output = Point2;
    fn add(self, rhs: &'a Point2) -> Point2 {
        Point2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Mul<&'a Rational> for &'a Point2 {
    type Output = Point2;
    fn mul(self, rhs: &'a Rational) -> Point2 {
        self.scale(rhs)
    }
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rational_string(&self.x), rational_string(&self.y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [rational_string(&self.x), rational_string(&self.y)].serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        debug_assert!(a != b, "degenerate segment");
        Segment { a, b }
    }

    /// True if `p` lies on the closed segment.
    pub fn contains(&self, p: &Point2) -> bool {
        orientation(&self.a, &self.b, p) == 0 && self.within_box(p)
    }

    /// True if `p` lies on the segment but is not an endpoint.
    pub fn contains_interior(&self, p: &Point2) -> bool {
        p != &self.a && p != &self.b && self.contains(p)
    }

    fn within_box(&self, p: &Point2) -> bool {
        let (lox, hix) = minmax(&self.a.x, &self.b.x);
        let (loy, hiy) = minmax(&self.a.y, &self.b.y);
        lox <= &p.x && &p.x <= hix && loy <= &p.y && &p.y <= hiy
    }
}

fn minmax<'a>(a: &'a Rational, b: &'a Rational) -> (&'a Rational, &'a Rational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Twice the signed area of triangle `abc`.
pub fn cross3(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (b - a).cross(&(c - a))
}

fn small_int(r: &Rational) -> Option<i64> {
    if !r.denom().is_one() {
        return None;
    }
    r.numer().to_i64().filter(|v| v.unsigned_abs() < 1 << 40)
}

/// +1 if `a, b, c` turn counterclockwise, -1 if clockwise, 0 if collinear.
pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> i8 {
    let ints = [&a.x, &a.y, &b.x, &b.y, &c.x, &c.y].map(small_int);
    if let [Some(ax), Some(ay), Some(bx), Some(by), Some(cx), Some(cy)] = ints {
        let d = (bx - ax) as i128 * (cy - ay) as i128 - (by - ay) as i128 * (cx - ax) as i128;
        return d.signum() as i8;
    }
    // Rows (1, x, y) scaled by the positive factor den(x) den(y), so no
    // gcd is ever taken.
    let row = |p: &Point2| {
        let (xn, xd, yn, yd) = (p.x.numer(), p.x.denom(), p.y.numer(), p.y.denom());
        (xd * yd, xn * yd, yn * xd)
    };
    let (w1, x1, y1) = row(a);
    let (w2, x2, y2) = row(b);
    let (w3, x3, y3) = row(c);
    let det = &w1 * (&x2 * &y3 - &x3 * &y2) - &w2 * (&x1 * &y3 - &x3 * &y1) + &w3 * (&x1 * &y2 - &x2 * &y1);
    match det.sign() {
        num::bigint::Sign::Plus => 1,
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
    }
}

/// Sign of the cross product `u x v`.
pub fn cross_sign(u: &Point2, v: &Point2) -> i8 {
    let lhs = u.x.numer() * v.y.numer() * u.y.denom() * v.x.denom();
    let rhs = u.y.numer() * v.x.numer() * u.x.denom() * v.y.denom();
    match lhs.cmp(&rhs) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// How two segments meet at a single point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    /// The point is interior to both segments.
    Proper,
    /// The point is an endpoint of at least one segment.
    Touching,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point { at: Point2, contact: Contact },
    Overlap(Segment),
}

impl Intersection {
    pub fn is_empty(&self) -> bool {
        matches!(self, Intersection::Empty)
    }

    pub fn is_proper(&self) -> bool {
        matches!(
            self,
            Intersection::Point {
                contact: Contact::Proper,
                ..
            }
        )
    }
}

pub fn segment_intersection(s: &Segment, t: &Segment) -> Intersection {
    let d1 = orientation(&s.a, &s.b, &t.a);
    let d2 = orientation(&s.a, &s.b, &t.b);
    let d3 = orientation(&t.a, &t.b, &s.a);
    let d4 = orientation(&t.a, &t.b, &s.b);

    if d1 == 0 && d2 == 0 {
        return collinear_overlap(s, t);
    }
    if d1 * d2 > 0 || d3 * d4 > 0 {
        return Intersection::Empty;
    }
    // Not collinear and each segment straddles (or touches) the other's line.
    let contact = if d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0 {
        Contact::Touching
    } else {
        Contact::Proper
    };
    let at = line_intersection(&s.a, &s.b, &t.a, &t.b).expect("non-parallel lines meet");
    Intersection::Point { at, contact }
}

fn collinear_overlap(s: &Segment, t: &Segment) -> Intersection {
    // Project on the direction of s.
    let dir = &s.b - &s.a;
    let key = |p: &Point2| (p - &s.a).dot(&dir);
    let (s0, s1) = (rat(0), dir.dot(&dir));
    let (mut t0, mut t1) = (key(&t.a), key(&t.b));
    let (mut ta, mut tb) = (t.a.clone(), t.b.clone());
    if t0 > t1 {
        std::mem::swap(&mut t0, &mut t1);
        std::mem::swap(&mut ta, &mut tb);
    }
    let (lo, lo_p) = if t0 > s0 { (t0, ta) } else { (s0, s.a.clone()) };
    let (hi, hi_p) = if t1 < s1 { (t1, tb) } else { (s1.clone(), s.b.clone()) };
    match lo.cmp(&hi) {
        Ordering::Greater => Intersection::Empty,
        Ordering::Equal => Intersection::Point {
            at: lo_p,
            contact: Contact::Touching,
        },
        Ordering::Less => Intersection::Overlap(Segment::new(lo_p, hi_p)),
    }
}

/// Intersection of the lines through `a, b` and `c, d`, if not parallel.
pub fn line_intersection(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> Option<Point2> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(&s);
    if denom.is_zero() {
        return None;
    }
    let t = (c - a).cross(&s) / denom;
    Some(a + &r.scale(&t))
}

/// True iff no three points are collinear.
pub fn general_position(points: &[Point2]) -> bool {
    find_collinear_triple(points).is_none()
}

pub fn find_collinear_triple(points: &[Point2]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&points[i], &points[j], &points[k]) == 0 {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// An oriented line `anchor + t * direction`.
///
/// "Left" and "below/above" are relative to the direction: a point is left
/// when it lies counterclockwise of the direction, and points along the line
/// are ordered by their projection onto the direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CutLine {
    pub anchor: Point2,
    pub direction: Point2,
    #[serde(skip)]
    far: Point2,
}

impl CutLine {
    pub fn new(anchor: Point2, direction: Point2) -> Self {
        assert!(!direction.is_zero(), "cut line needs a nonzero direction");
        let far = &anchor + &direction;
        CutLine {
            anchor,
            direction,
            far,
        }
    }

    pub fn through(a: &Point2, b: &Point2) -> Self {
        CutLine::new(a.clone(), b - a)
    }

    /// +1 left of the line, -1 right, 0 on it.
    pub fn side(&self, p: &Point2) -> i8 {
        orientation(&self.anchor, &self.far, p)
    }

    /// Scaled signed distance; sign agrees with [`CutLine::side`].
    pub fn offset(&self, p: &Point2) -> Rational {
        self.direction.cross(&(p - &self.anchor))
    }

    /// Position of the projection of `p` along the direction.
    pub fn param(&self, p: &Point2) -> Rational {
        (p - &self.anchor).dot(&self.direction)
    }

    pub fn reversed(&self) -> CutLine {
        CutLine::new(self.anchor.clone(), self.direction.neg())
    }

    /// The point where the segment meets the line, if it meets it in
    /// exactly one point.
    pub fn meet_segment(&self, s: &Segment) -> Option<Point2> {
        let sa = self.side(&s.a);
        let sb = self.side(&s.b);
        match (sa, sb) {
            (0, 0) => None,
            (0, _) => Some(s.a.clone()),
            (_, 0) => Some(s.b.clone()),
            _ if sa != sb => line_intersection(&self.anchor, &self.far, &s.a, &s.b),
            _ => None,
        }
    }
}

/// Free-function form of [`CutLine::side`].
pub fn line_side(line: &CutLine, p: &Point2) -> i8 {
    line.side(p)
}

/// Total order of directions by angle in `[0, 2pi)`, measured from +x.
pub fn angle_cmp(u: &Point2, v: &Point2) -> Ordering {
    fn half(p: &Point2) -> u8 {
        if p.y.is_positive() || (p.y.is_zero() && p.x.is_positive()) {
            0
        } else {
            1
        }
    }
    half(u).cmp(&half(v)).then_with(|| match cross_sign(u, v) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn orientation_basic() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)), -1);
    }

    #[test]
    fn intersection_cases() {
        assert_eq!(
            segment_intersection(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))),
            Intersection::Point {
                at: p(1, 1),
                contact: Contact::Proper
            }
        );
        assert!(segment_intersection(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))).is_empty());
        assert_eq!(
            segment_intersection(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 1))),
            Intersection::Point {
                at: p(1, 0),
                contact: Contact::Touching
            }
        );
    }

    #[test]
    fn intersection_collinear() {
        assert_eq!(
            segment_intersection(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Intersection::Overlap(seg((1, 0), (2, 0)))
        );
        assert_eq!(
            segment_intersection(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))),
            Intersection::Point {
                at: p(1, 0),
                contact: Contact::Touching
            }
        );
        assert!(segment_intersection(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))).is_empty());
        // T-junction: endpoint of one inside the other.
        assert_eq!(
            segment_intersection(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))),
            Intersection::Point {
                at: p(1, 0),
                contact: Contact::Touching
            }
        );
    }

    #[test]
    fn rational_intersection_point() {
        let hit = segment_intersection(&seg((0, 0), (3, 1)), &seg((0, 1), (1, 0)));
        let expected = Point2::new(ratio(3, 4), ratio(1, 4));
        assert_eq!(
            hit,
            Intersection::Point {
                at: expected,
                contact: Contact::Proper
            }
        );
    }

    #[test]
    fn line_side_cases() {
        let x_axis = CutLine::new(p(0, 0), p(1, 0));
        assert_eq!(line_side(&x_axis, &p(0, 1)), 1);
        assert_eq!(line_side(&x_axis, &p(5, 0)), 0);
        let y_axis = CutLine::new(p(0, 0), p(0, 1));
        assert_eq!(line_side(&y_axis, &p(1, 0)), -1);
    }

    #[test]
    fn general_position_cases() {
        assert!(general_position(&[p(0, 0), p(1, 0), p(0, 1)]));
        assert!(!general_position(&[p(0, 0), p(1, 1), p(2, 2), p(5, -3)]));
        // Square: each of the four triples is a proper triangle.
        let square = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
            assert_ne!(orientation(&square[i], &square[j], &square[k]), 0);
        }
        assert!(general_position(&square));
    }

    #[test]
    fn angles_sort_counterclockwise() {
        let mut dirs = vec![p(0, -1), p(-1, 0), p(1, 1), p(1, 0), p(0, 1), p(1, -1)];
        dirs.sort_by(angle_cmp);
        assert_eq!(dirs, vec![p(1, 0), p(1, 1), p(0, 1), p(-1, 0), p(0, -1), p(1, -1)]);
    }

    #[test]
    fn meet_segment_crossing() {
        let l = CutLine::new(p(0, 0), p(0, 1));
        assert_eq!(l.meet_segment(&seg((-2, -1), (2, 1))), Some(p(0, 0)));
        assert_eq!(l.meet_segment(&seg((1, -1), (2, 1))), None);
    }
}
