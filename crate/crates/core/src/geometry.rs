//! Exact rational geometry: scalars, points, orientation, segment
//! intersection, convex polygons and rotation about the origin.
//!
//! Every predicate here is decided exactly. Degenerate answers (collinear,
//! on-boundary, endpoint contact) are returned as ordinary values and it is
//! up to the caller to decide whether they are acceptable.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar. Always kept in canonical form by `num-rational`.
pub type Rat = BigRational;

/// Rotation precision used when nothing else is specified.
pub const DEFAULT_ROTATION_DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parse a decimal (`-0.446`, `12`, `.5`) or fraction (`-3/7`) string into an
/// exact rational. Decimal input never goes through binary floating point.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let malformed = || RatParseError::Malformed(s.to_string());

    if let Some((num, den)) = s.split_once('/') {
        let num = parse_signed_digits(num).ok_or_else(malformed)?;
        let den = parse_signed_digits(den).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(RatParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rat::new(num, den));
    }

    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().map_err(|_| malformed())?;
    if negative {
        num = -num;
    }
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(num, den))
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let body = s
        .strip_prefix('-')
        .or_else(|| s.strip_prefix('+'))
        .unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form of a rational: an exact decimal when the denominator
/// divides a power of ten, `p/q` otherwise.
pub fn format_rat(value: &Rat) -> String {
    let den = value.denom();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut rest = den.clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while rest.is_even() {
        rest /= &two;
        twos += 1;
    }
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", value.numer(), den);
    }
    let scale = twos.max(fives);
    if scale == 0 {
        return value.numer().to_string();
    }
    let factor = BigInt::from(10u32).pow(scale) / den;
    let scaled = value.numer() * factor;
    let negative = scaled.sign() == Sign::Minus;
    let mut digits = scaled.abs().to_string();
    while digits.len() <= scale as usize {
        digits.insert(0, '0');
    }
    let split = digits.len() - scale as usize;
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        &digits[..split],
        &digits[split..]
    )
}

/// Lossy conversion for drawing and progress output only.
pub fn rat_to_f64(value: &Rat) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        // Huge numerators or denominators: scale down before dividing.
        let n = value.numer().to_f64().unwrap_or(f64::NAN);
        let d = value.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn parse(x: &str, y: &str) -> Result<Self, RatParseError> {
        Ok(Point::new(parse_rat(x)?, parse_rat(y)?))
    }

    pub fn origin() -> Self {
        Point::new(Rat::zero(), Rat::zero())
    }

    pub fn scale(&self, factor: &Rat) -> Point {
        Point::new(&self.x * factor, &self.y * factor)
    }

    pub fn cross(&self, other: &Point) -> Rat {
        let (num, den) = self.cross_parts(other);
        Rat::new(num, den)
    }

    /// Unreduced numerator and positive denominator of the cross product.
    /// Reducing once here instead of after every operation is much faster.
    fn cross_parts(&self, other: &Point) -> (BigInt, BigInt) {
        let (a, b, c, d) = (&self.x, &other.y, &self.y, &other.x);
        let left = a.numer() * b.numer() * c.denom() * d.denom();
        let right = c.numer() * d.numer() * a.denom() * b.denom();
        (left - right, a.denom() * b.denom() * c.denom() * d.denom())
    }

    pub fn dot(&self, other: &Point) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = rat(1, 2);
        Point::new((&self.x + &other.x) * &half, (&self.y + &other.y) * &half)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rat_to_f64(&self.x), rat_to_f64(&self.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rat(&self.x), format_rat(&self.y))
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &'a Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &'a Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Mul<&'a Rat> for &'a Point {
    type Output = Point;
    fn mul(self, rhs: &'a Rat) -> Point {
        self.scale(rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Collinear,
    Right,
}

impl Orientation {
    pub fn of_sign(value: &Rat) -> Self {
        if value.is_positive() {
            Orientation::Left
        } else if value.is_negative() {
            Orientation::Right
        } else {
            Orientation::Collinear
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the cross product (b - a) x (c - a).
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    let integral = [a, b, c]
        .iter()
        .all(|p| p.x.is_integer() && p.y.is_integer());
    let num = if integral {
        // Skips the gcd work of general rational subtraction.
        let (ax, ay) = (a.x.numer(), a.y.numer());
        (b.x.numer() - ax) * (c.y.numer() - ay) - (b.y.numer() - ay) * (c.x.numer() - ax)
    } else {
        (b - a).cross_parts(&(c - a)).0
    };
    match num.sign() {
        Sign::Plus => Orientation::Left,
        Sign::Minus => Orientation::Right,
        Sign::NoSign => Orientation::Collinear,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn new(start: Point, end: Point) -> Self {
        Segment { start, end }
    }

    pub fn direction(&self) -> Point {
        &self.end - &self.start
    }

    pub fn at(&self, t: &Rat) -> Point {
        &self.start + &(&self.direction() * t)
    }
}

/// Where on a segment an intersection point falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Contact {
    Start,
    Interior,
    End,
}

impl Contact {
    fn of_param(t: &Rat) -> Contact {
        if t.is_zero() {
            Contact::Start
        } else if t.is_one() {
            Contact::End
        } else {
            Contact::Interior
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentHit {
    pub point: Point,
    pub on_first: Contact,
    pub on_second: Contact,
    /// Parameter of `point` along the first segment, in `[0, 1]`.
    pub param_first: Rat,
    /// Parameter of `point` along the second segment, in `[0, 1]`.
    pub param_second: Rat,
}

impl SegmentHit {
    pub fn is_proper_crossing(&self) -> bool {
        self.on_first == Contact::Interior && self.on_second == Contact::Interior
    }

    fn swapped(self) -> SegmentHit {
        SegmentHit {
            point: self.point,
            on_first: self.on_second,
            on_second: self.on_first,
            param_first: self.param_second,
            param_second: self.param_first,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
// Built and matched in the innermost loop; boxing the hit would cost an
// allocation per crossing.
#[allow(clippy::large_enum_variant)]
pub enum SegmentIntersection {
    Empty,
    Point(SegmentHit),
    /// The segments share a sub-segment of positive length.
    Overlap,
}

impl SegmentIntersection {
    pub fn swapped(self) -> SegmentIntersection {
        match self {
            SegmentIntersection::Point(hit) => SegmentIntersection::Point(hit.swapped()),
            other => other,
        }
    }
}

/// Exact intersection of two closed segments with distinct endpoints.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    let apart =
        |a1: &Rat, a2: &Rat, b1: &Rat, b2: &Rat| a1.max(a2) < b1.min(b2) || b1.max(b2) < a1.min(a2);
    if apart(&s1.start.x, &s1.end.x, &s2.start.x, &s2.end.x)
        || apart(&s1.start.y, &s1.end.y, &s2.start.y, &s2.end.y)
    {
        return SegmentIntersection::Empty;
    }
    let d1 = s1.direction();
    let d2 = s2.direction();
    let offset = &s2.start - &s1.start;
    let denom = d1.cross(&d2);

    if denom.is_zero() {
        if !d1.cross(&offset).is_zero() {
            return SegmentIntersection::Empty;
        }
        // Collinear: project the second segment onto the first.
        let len1 = d1.dot(&d1);
        let ta = offset.dot(&d1) / &len1;
        let tb = (&s2.end - &s1.start).dot(&d1) / &len1;
        let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
        let lo = lo.max(Rat::zero());
        let hi = hi.min(Rat::one());
        if lo > hi {
            return SegmentIntersection::Empty;
        }
        if lo < hi {
            return SegmentIntersection::Overlap;
        }
        let point = s1.at(&lo);
        let len2 = d2.dot(&d2);
        let u = (&point - &s2.start).dot(&d2) / len2;
        return SegmentIntersection::Point(SegmentHit {
            point,
            on_first: Contact::of_param(&lo),
            on_second: Contact::of_param(&u),
            param_first: lo,
            param_second: u,
        });
    }

    // Range checks on the numerators before dividing.
    let t_num = offset.cross(&d2);
    let u_num = offset.cross(&d1);
    let within = |num: &Rat| {
        let (num, den) = if denom.is_negative() {
            (-num, -&denom)
        } else {
            (num.clone(), denom.clone())
        };
        !num.is_negative() && num <= den
    };
    if !within(&t_num) || !within(&u_num) {
        return SegmentIntersection::Empty;
    }
    let t = t_num / &denom;
    let u = u_num / &denom;
    SegmentIntersection::Point(SegmentHit {
        point: s1.at(&t),
        on_first: Contact::of_param(&t),
        on_second: Contact::of_param(&u),
        param_first: t,
        param_second: u,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvexityError {
    #[error("a polygon needs at least 3 corners, got {0}")]
    TooFewCorners(usize),
    #[error("corners {first} and {second} coincide")]
    DuplicateCorner { first: usize, second: usize },
    #[error("corners {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error(
        "corners {0}, {1}, {2} make a right turn (polygon must be counter-clockwise and convex)"
    )]
    RightTurn(usize, usize, usize),
    #[error("corners wind around more than once")]
    WindsMoreThanOnce,
}

/// Check that the corners describe a strictly convex, counter-clockwise
/// polygon. Reports the first violated condition.
pub fn validate_convex(corners: &[Point]) -> Result<(), ConvexityError> {
    let k = corners.len();
    if k < 3 {
        return Err(ConvexityError::TooFewCorners(k));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if corners[i] == corners[j] {
                return Err(ConvexityError::DuplicateCorner {
                    first: i,
                    second: j,
                });
            }
        }
    }
    for i in 0..k {
        let (a, b, c) = (i, (i + 1) % k, (i + 2) % k);
        match orientation(&corners[a], &corners[b], &corners[c]) {
            Orientation::Left => {}
            Orientation::Collinear => return Err(ConvexityError::Collinear(a, b, c)),
            Orientation::Right => return Err(ConvexityError::RightTurn(a, b, c)),
        }
    }
    // All left turns still admits star polygons; the fan from corner 0 must
    // also be counter-clockwise.
    for i in 1..k - 1 {
        if orientation(&corners[0], &corners[i], &corners[i + 1]) != Orientation::Left {
            return Err(ConvexityError::WindsMoreThanOnce);
        }
    }
    Ok(())
}

/// A strictly convex polygon with counter-clockwise corners: one curve of a
/// diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexPolygon {
    label: String,
    corners: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(label: impl Into<String>, corners: Vec<Point>) -> Result<Self, ConvexityError> {
        validate_convex(&corners)?;
        Ok(ConvexPolygon {
            label: label.into(),
            corners,
        })
    }

    pub fn from_ints(
        label: impl Into<String>,
        corners: &[(i64, i64)],
    ) -> Result<Self, ConvexityError> {
        Self::new(
            label,
            corners
                .iter()
                .map(|&(x, y)| Point::from_ints(x, y))
                .collect(),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn corners(&self) -> &[Point] {
        &self.corners
    }

    /// Number of sides (equal to the number of corners).
    pub fn k(&self) -> usize {
        self.corners.len()
    }

    pub fn side(&self, i: usize) -> Segment {
        let k = self.k();
        Segment::new(
            self.corners[i % k].clone(),
            self.corners[(i + 1) % k].clone(),
        )
    }

    pub fn sides(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.k()).map(move |i| self.side(i))
    }

    pub fn translated(&self, delta: &Point) -> ConvexPolygon {
        ConvexPolygon {
            label: self.label.clone(),
            corners: self.corners.iter().map(|c| c + delta).collect(),
        }
    }

    /// Replace one corner, re-validating convexity.
    pub fn with_corner(
        &self,
        index: usize,
        corner: Point,
    ) -> Result<ConvexPolygon, ConvexityError> {
        let mut corners = self.corners.clone();
        corners[index] = corner;
        ConvexPolygon::new(self.label.clone(), corners)
    }

    /// Twice the (positive) area.
    pub fn double_area(&self) -> Rat {
        let k = self.k();
        (0..k).fold(Rat::zero(), |acc, i| {
            acc + self.corners[i].cross(&self.corners[(i + 1) % k])
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Exact point location against a convex polygon.
pub fn point_in_polygon(pt: &Point, polygon: &ConvexPolygon) -> Location {
    let corners = polygon.corners();
    let mut on_line = false;
    for (i, start) in corners.iter().enumerate() {
        let end = &corners[(i + 1) % corners.len()];
        match orientation(start, end, pt) {
            Orientation::Right => return Location::Outside,
            Orientation::Collinear => on_line = true,
            Orientation::Left => {}
        }
    }
    if on_line {
        Location::Boundary
    } else {
        Location::Inside
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("rotation index {index} out of range for order {order}")]
    IndexOutOfRange { index: u32, order: u32 },
    #[error("rotation order must be at least 1")]
    ZeroOrder,
    #[error("rotation precision must be at least 1 digit")]
    ZeroDigits,
}

/// A rational stand-in for the rotation by `2*pi*index/order`.
///
/// Quarter turns are exact. Other angles use cosine and sine rounded to
/// `digits` decimal places, so the matrix is orthogonal only approximately;
/// everything downstream is then exact on the rounded values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    pub cos: Rat,
    pub sin: Rat,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation {
            cos: Rat::one(),
            sin: Rat::zero(),
        }
    }

    pub fn approximate(index: u32, order: u32, digits: u32) -> Result<Self, RotationError> {
        if order == 0 {
            return Err(RotationError::ZeroOrder);
        }
        if index >= order {
            return Err(RotationError::IndexOutOfRange { index, order });
        }
        if digits == 0 {
            return Err(RotationError::ZeroDigits);
        }
        if (4 * index as u64).is_multiple_of(order as u64) {
            let quarter = (4 * index as u64) / order as u64;
            let (c, s) = match quarter {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return Ok(Rotation {
                cos: int(c),
                sin: int(s),
            });
        }
        let (cos, sin) = cos_sin_fixed(index, order, digits);
        let den = BigInt::from(10u32).pow(digits);
        Ok(Rotation {
            cos: Rat::new(cos, den.clone()),
            sin: Rat::new(sin, den),
        })
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(
            &self.cos * &p.x - &self.sin * &p.y,
            &self.sin * &p.x + &self.cos * &p.y,
        )
    }
}

/// Rotate every corner of `polygon` by the rational approximation of
/// `2*pi*index/order`.
pub fn rotate_about_origin(
    polygon: &ConvexPolygon,
    index: u32,
    order: u32,
    digits: u32,
) -> Result<ConvexPolygon, RotationError> {
    let rotation = Rotation::approximate(index, order, digits)?;
    if index == 0 {
        return Ok(polygon.clone());
    }
    Ok(rotate_with(polygon, &rotation))
}

pub fn rotate_with(polygon: &ConvexPolygon, rotation: &Rotation) -> ConvexPolygon {
    ConvexPolygon {
        label: polygon.label.clone(),
        corners: polygon.corners.iter().map(|c| rotation.apply(c)).collect(),
    }
}

/// cos and sin of `2*pi*index/order`, each rounded half-away-from-zero to
/// `digits` decimal places and returned as integers scaled by `10^digits`.
fn cos_sin_fixed(index: u32, order: u32, digits: u32) -> (BigInt, BigInt) {
    let guard = 24;
    let scale = BigInt::from(10u32).pow(digits + guard);
    let pi = pi_fixed(&scale);
    // Reduce to (-pi, pi] to keep the series short.
    let mut numerator = 2 * index as i64;
    let denominator = order as i64;
    if numerator > denominator {
        numerator -= 2 * denominator;
    }
    let theta = &pi * BigInt::from(numerator) / BigInt::from(denominator);
    let (cos, sin) = taylor_cos_sin(&theta, &scale);
    let shrink = BigInt::from(10u32).pow(guard);
    (round_div(&cos, &shrink), round_div(&sin, &shrink))
}

fn round_div(value: &BigInt, divisor: &BigInt) -> BigInt {
    let half = divisor / 2;
    if value.sign() == Sign::Minus {
        let magnitude: BigInt = -value + &half;
        -(magnitude / divisor)
    } else {
        (value + &half) / divisor
    }
}

/// arctan(1/x) * scale by the alternating series.
fn arctan_inv_fixed(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = power.clone();
    let mut n = 1u32;
    loop {
        power /= &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

fn pi_fixed(scale: &BigInt) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    arctan_inv_fixed(5, scale) * 16 - arctan_inv_fixed(239, scale) * 4
}

fn taylor_cos_sin(theta: &BigInt, scale: &BigInt) -> (BigInt, BigInt) {
    let mut cos = scale.clone();
    let mut sin = theta.clone();
    let mut term_c = scale.clone();
    let mut term_s = theta.clone();
    let mut n = 1u32;
    loop {
        term_c = -(&term_c * theta / scale * theta / scale) / BigInt::from((2 * n - 1) * (2 * n));
        term_s = -(&term_s * theta / scale * theta / scale) / BigInt::from((2 * n) * (2 * n + 1));
        if term_c.is_zero() && term_s.is_zero() {
            break;
        }
        cos += &term_c;
        sin += &term_s;
        n += 1;
    }
    (cos, sin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::from_ints("sq", &[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap()
    }

    pub(crate) fn table2() -> ConvexPolygon {
        ConvexPolygon::new(
            "C1",
            vec![
                Point::parse("-0.446", "0.000").unwrap(),
                Point::parse("-0.123", "-0.433").unwrap(),
                Point::parse("0.699", "0.061").unwrap(),
                Point::parse("-0.081", "0.451").unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(
            orientation(&p(0, 0), &p(1, 1), &p(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(
            orientation(&p(0, 0), &p(0, 1), &p(1, 1)),
            Orientation::Right
        );
    }

    #[test]
    fn segment_intersection_examples() {
        let s = |a: (i64, i64), b: (i64, i64)| Segment::new(p(a.0, a.1), p(b.0, b.1));
        match segment_intersection(&s((0, 0), (2, 2)), &s((0, 2), (2, 0))) {
            SegmentIntersection::Point(hit) => {
                assert_eq!(hit.point, p(1, 1));
                assert!(hit.is_proper_crossing());
            }
            other => panic!("expected crossing, got {other:?}"),
        }
        assert_eq!(
            segment_intersection(&s((0, 0), (1, 0)), &s((2, 0), (3, 0))),
            SegmentIntersection::Empty
        );
        assert_eq!(
            segment_intersection(&s((0, 0), (2, 0)), &s((1, 0), (3, 0))),
            SegmentIntersection::Overlap
        );
    }

    #[test]
    fn segment_endpoint_touches_are_flagged() {
        let a = Segment::new(p(0, 0), p(2, 0));
        let b = Segment::new(p(1, 0), p(1, 5));
        match segment_intersection(&a, &b) {
            SegmentIntersection::Point(hit) => {
                assert_eq!(hit.on_first, Contact::Interior);
                assert_eq!(hit.on_second, Contact::Start);
            }
            other => panic!("{other:?}"),
        }
        // Collinear, touching at one shared endpoint.
        let c = Segment::new(p(2, 0), p(4, 0));
        match segment_intersection(&a, &c) {
            SegmentIntersection::Point(hit) => {
                assert_eq!(hit.point, p(2, 0));
                assert_eq!(
                    (hit.on_first, hit.on_second),
                    (Contact::End, Contact::Start)
                );
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            segment_intersection(&a, &Segment::new(p(0, 1), p(2, 1))),
            SegmentIntersection::Empty
        );
    }

    #[test]
    fn convexity_examples() {
        assert_eq!(validate_convex(unit_square().corners()), Ok(()));
        let cw: Vec<Point> = unit_square().corners().iter().rev().cloned().collect();
        assert!(matches!(
            validate_convex(&cw),
            Err(ConvexityError::RightTurn(..))
        ));
        assert_eq!(validate_convex(table2().corners()), Ok(()));
    }

    #[test]
    fn convexity_errors() {
        assert_eq!(
            validate_convex(&[p(0, 0), p(1, 0)]),
            Err(ConvexityError::TooFewCorners(2))
        );
        assert!(matches!(
            validate_convex(&[p(0, 0), p(1, 0), p(2, 0), p(1, 1)]),
            Err(ConvexityError::Collinear(..))
        ));
        assert!(matches!(
            validate_convex(&[p(0, 0), p(1, 0), p(0, 0), p(1, 1)]),
            Err(ConvexityError::DuplicateCorner {
                first: 0,
                second: 2
            })
        ));
        // Pentagram: every turn is left but it winds twice.
        let star = [p(0, 10), p(-6, -8), p(10, 3), p(-10, 3), p(6, -8)];
        let star: Vec<Point> = star.iter().rev().cloned().collect();
        let err = validate_convex(&star).unwrap_err();
        assert!(
            matches!(
                err,
                ConvexityError::WindsMoreThanOnce | ConvexityError::RightTurn(..)
            ),
            "{err:?}"
        );
    }

    #[test]
    fn point_location_examples() {
        let sq = unit_square();
        assert_eq!(
            point_in_polygon(&Point::new(rat(1, 2), rat(1, 2)), &sq),
            Location::Inside
        );
        assert_eq!(point_in_polygon(&p(1, 1), &sq), Location::Boundary);
        assert_eq!(point_in_polygon(&p(1_000_000, 0), &sq), Location::Outside);
    }

    #[test]
    fn rotation_examples() {
        let sq = unit_square();
        assert_eq!(rotate_about_origin(&sq, 0, 7, 12).unwrap(), sq);
        let tri = ConvexPolygon::from_ints("t", &[(1, 0), (2, 1), (1, 2)]).unwrap();
        let r = rotate_about_origin(&tri, 1, 4, 12).unwrap();
        assert_eq!(r.corners()[0], p(0, 1));
        assert!(matches!(
            rotate_about_origin(&sq, 7, 7, 12),
            Err(RotationError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            rotate_about_origin(&sq, 0, 0, 12),
            Err(RotationError::ZeroOrder)
        ));
    }

    #[test]
    fn rotation_table2_matches_extended_precision() {
        // Frozen from a 40-digit evaluation of the rotation by 2*pi/7.
        let expected = [
            ("-0.2780764516289952", "-0.3486968411807413"),
            ("0.2618437862800327", "-0.3661363565483993"),
            ("0.3881276510687049", "0.5845330841585356"),
            ("-0.4031086725436389", "0.2178655505583784"),
        ];
        let rotated = rotate_about_origin(&table2(), 1, 7, 12).unwrap();
        let tol = rat(1, 1_000_000_000_000);
        for (corner, (ex, ey)) in rotated.corners().iter().zip(expected) {
            let dx = (&corner.x - parse_rat(ex).unwrap()).abs();
            let dy = (&corner.y - parse_rat(ey).unwrap()).abs();
            assert!(dx <= tol && dy <= tol, "{corner} vs ({ex}, {ey})");
        }
    }

    #[test]
    fn rotation_coefficients_are_correctly_rounded() {
        let r = Rotation::approximate(1, 7, 12).unwrap();
        assert_eq!(format_rat(&r.cos), "0.623489801859");
        assert_eq!(format_rat(&r.sin), "0.781831482468");
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(parse_rat("-0.446").unwrap(), rat(-446, 1000));
        assert_eq!(parse_rat("0.000").unwrap(), Rat::zero());
        assert_eq!(parse_rat("12").unwrap(), int(12));
        assert_eq!(parse_rat(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1e3").is_err());
        assert!(parse_rat("-").is_err());
        assert!(parse_rat("").is_err());
        assert!(parse_rat("0x10").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rat(&rat(-446, 1000)), "-0.446");
        assert_eq!(format_rat(&rat(1, 3)), "1/3");
        assert_eq!(format_rat(&rat(-1, 40)), "-0.025");
        assert_eq!(format_rat(&int(7)), "7");
        assert_eq!(format_rat(&Rat::zero()), "0");
    }
}
