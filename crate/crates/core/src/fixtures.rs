//! Small hand-built families used by the test suites, the CLI examples and
//! the FFI smoke tests.

use crate::arrangement::PolygonFamily;
use crate::geometry::{ConvexPolygon, Point};
use crate::search::symmetric_family;

/// The printed corners of one quadrilateral of the symmetric seven-curve
/// diagram, counter-clockwise.
pub const TABLE2_CORNERS: [(&str, &str); 4] = [
    ("-0.446", "0.000"),
    ("-0.123", "-0.433"),
    ("0.699", "0.061"),
    ("-0.081", "0.451"),
];

pub fn table2_generator() -> ConvexPolygon {
    let corners = TABLE2_CORNERS
        .iter()
        .map(|(x, y)| Point::parse(x, y).expect("literal corners parse"))
        .collect();
    ConvexPolygon::new("C1", corners).expect("printed quadrilateral is convex")
}

/// Seven rotated copies of the printed quadrilateral.
pub fn table2_family(digits: u32) -> PolygonFamily {
    symmetric_family(&table2_generator(), 7, digits).expect("valid generator")
}

fn polygon(label: &str, corners: &[(i64, i64)]) -> ConvexPolygon {
    ConvexPolygon::from_ints(label, corners).expect("fixture polygon is convex")
}

fn family(polygons: Vec<ConvexPolygon>) -> PolygonFamily {
    PolygonFamily::new(polygons).expect("fixture family is non-empty")
}

/// Squares (0,0)-(2,2) and (1,1)-(3,3): the smallest 2-Venn diagram.
pub fn two_squares() -> PolygonFamily {
    family(vec![
        polygon("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]),
        polygon("B", &[(1, 1), (3, 1), (3, 3), (1, 3)]),
    ])
}

pub fn disjoint_squares() -> PolygonFamily {
    family(vec![
        polygon("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]),
        polygon("B", &[(4, 0), (6, 0), (6, 2), (4, 2)]),
    ])
}

/// A unit-scale square strictly inside a larger one.
pub fn nested_squares() -> PolygonFamily {
    family(vec![
        polygon("outer", &[(0, 0), (6, 0), (6, 6), (0, 6)]),
        polygon("inner", &[(2, 2), (4, 2), (4, 4), (2, 4)]),
    ])
}

/// Three triangles whose boundaries all cross at the origin.
pub fn triple_point_triangles() -> PolygonFamily {
    family(vec![
        polygon("A", &[(-4, 0), (4, 0), (1, 5)]),
        polygon("B", &[(-3, -3), (3, 3), (-5, 1)]),
        polygon("C", &[(2, -4), (-2, 4), (-4, -3)]),
    ])
}

/// A simple 3-Venn diagram of triangles.
pub fn three_triangles_venn() -> PolygonFamily {
    family(vec![
        polygon("A", &[(-4, -6), (-1, 7), (-10, 6)]),
        polygon("B", &[(-4, -1), (6, 4), (-5, 6)]),
        polygon("C", &[(-2, 5), (-10, -10), (2, -9)]),
    ])
}

/// Four triangles with one side each through the origin: the boundary
/// arrangement has a single vertex of degree eight there and is otherwise
/// simple.
pub fn degree_eight_star() -> PolygonFamily {
    family(vec![
        polygon("A", &[(-4, -2), (4, 2), (-7, 8)]),
        polygon("B", &[(-12, 8), (6, -4), (8, -1)]),
        polygon("C", &[(-8, -7), (24, 21), (-10, -1)]),
        polygon("D", &[(30, -18), (-10, 6), (-1, -1)]),
    ])
}

/// A non-simple 3-Venn diagram of triangles with two vertices of degree six,
/// at (0, 0) and (6, 0).
pub fn nonsimple_venn() -> PolygonFamily {
    family(vec![
        polygon("A", &[(8, -5), (2, 10), (-8, 5)]),
        polygon("B", &[(2, 3), (-4, -6), (14, -6)]),
        polygon("C", &[(2, -5), (14, 10), (-2, 5)]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::verify;
    use std::collections::BTreeMap;

    #[test]
    fn fixtures_have_the_stated_structure() {
        let r = verify(&triple_point_triangles()).unwrap();
        assert_eq!(r.degree_histogram.get(&6), Some(&1));

        let r = verify(&three_triangles_venn()).unwrap();
        assert!(r.is_venn && r.is_simple);

        let r = verify(&degree_eight_star()).unwrap();
        assert_eq!(r.degree_histogram, BTreeMap::from([(4, 16), (8, 1)]));

        let r = verify(&nonsimple_venn()).unwrap();
        assert!(r.is_venn && !r.is_simple);
        assert_eq!(r.degree_histogram, BTreeMap::from([(4, 2), (6, 2)]));

        let r = verify(&two_squares()).unwrap();
        assert!(r.is_venn && r.is_simple);
        assert!(!verify(&disjoint_squares()).unwrap().is_venn);
        assert!(!verify(&nested_squares()).unwrap().is_venn);
    }
}
