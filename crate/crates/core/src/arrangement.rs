//! Planar subdivision induced by the boundaries of a family of convex
//! polygons.
//!
//! Vertices are boundary intersection points (merged when several curves
//! meet at one point). Each curve is cut at its vertices into edges; every
//! edge is stored as a pair of half-edges, the forward one running
//! counter-clockwise along its polygon so the polygon interior is on its left.
//! Faces are the cycles of the `next` relation, with the boundaries of
//! nested connected components attached to their containing face as holes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    orientation, point_in_polygon, rat, segment_intersection, Contact, ConvexPolygon, Location,
    Orientation, Point, Rat, Segment, SegmentIntersection,
};

/// Largest family the arrangement accepts (sign vectors are 64-bit masks).
pub const MAX_CURVES: usize = 63;

pub type VertexId = usize;
pub type HalfEdgeId = usize;
pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("a family needs at least one polygon")]
    Empty,
    #[error("families are limited to {MAX_CURVES} polygons, got {0}")]
    TooMany(usize),
}

/// An ordered family of convex polygons; polygon `i` is curve `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolygonFamily {
    polygons: Vec<ConvexPolygon>,
}

impl PolygonFamily {
    pub fn new(polygons: Vec<ConvexPolygon>) -> Result<Self, FamilyError> {
        match polygons.len() {
            0 => Err(FamilyError::Empty),
            n if n > MAX_CURVES => Err(FamilyError::TooMany(n)),
            _ => Ok(PolygonFamily { polygons }),
        }
    }

    pub fn n(&self) -> usize {
        self.polygons.len()
    }

    pub fn polygons(&self) -> &[ConvexPolygon] {
        &self.polygons
    }

    pub fn polygon(&self, i: usize) -> &ConvexPolygon {
        &self.polygons[i]
    }

    /// Side count shared by every polygon, if there is one.
    pub fn uniform_k(&self) -> Option<usize> {
        let k = self.polygons[0].k();
        self.polygons.iter().all(|p| p.k() == k).then_some(k)
    }

    pub fn with_polygon(&self, i: usize, polygon: ConvexPolygon) -> PolygonFamily {
        let mut polygons = self.polygons.clone();
        polygons[i] = polygon;
        PolygonFamily { polygons }
    }

    pub fn into_polygons(self) -> Vec<ConvexPolygon> {
        self.polygons
    }
}

/// Geometry that violates the general-position assumptions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegeneracyError {
    #[error("curves {first} and {second} share a boundary segment near {location}")]
    Overlap {
        first: usize,
        second: usize,
        location: Point,
    },
    #[error(
        "corner {corner} of curve {curve} lies on the boundary of curve {other} at {location}"
    )]
    CornerIncidence {
        curve: usize,
        corner: usize,
        other: usize,
        location: Point,
    },
    #[error("curves {first} and {second} touch without crossing at {location}")]
    Tangency {
        first: usize,
        second: usize,
        location: Point,
    },
}

impl DegeneracyError {
    /// The two curves involved.
    pub fn curves(&self) -> (usize, usize) {
        match *self {
            DegeneracyError::Overlap { first, second, .. }
            | DegeneracyError::Tangency { first, second, .. } => (first, second),
            DegeneracyError::CornerIncidence { curve, other, .. } => (curve, other),
        }
    }

    pub fn location(&self) -> &Point {
        match self {
            DegeneracyError::Overlap { location, .. }
            | DegeneracyError::Tangency { location, .. }
            | DegeneracyError::CornerIncidence { location, .. } => location,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    // Boxed: a location holds four big integers, which would bloat every Result.
    #[error(transparent)]
    Degenerate(Box<DegeneracyError>),
    /// A structural invariant failed after construction. Indicates a bug.
    #[error("arrangement invariant violated: {0}")]
    Inconsistent(String),
}

impl From<DegeneracyError> for ArrangementError {
    fn from(err: DegeneracyError) -> Self {
        ArrangementError::Degenerate(Box::new(err))
    }
}

/// Interior/exterior membership of a face: bit `i` set means inside curve `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u64,
    len: u8,
}

impl SignVector {
    pub fn new(bits: u64, len: usize) -> Self {
        debug_assert!(len <= MAX_CURVES);
        let mask = if len == 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        SignVector {
            bits: bits & mask,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        SignVector::new(0, len)
    }

    pub fn all_ones(len: usize) -> Self {
        SignVector::new(u64::MAX, len)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn flipped(&self, i: usize) -> SignVector {
        SignVector::new(self.bits ^ (1 << i), self.len())
    }

    /// Number of curves containing the face.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn parse(text: &str) -> Option<SignVector> {
        if text.len() > MAX_CURVES {
            return None;
        }
        let mut bits = 0u64;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << i,
                '0' => {}
                _ => return None,
            }
        }
        Some(SignVector::new(bits, text.len()))
    }
}

impl fmt::Display for SignVector {
    /// Character `i` is `1` when the face is inside curve `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        SignVector::parse(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("invalid sign vector `{text}`")))
    }
}

#[derive(Debug, Clone)]
pub struct Vertex {
    pub point: Point,
    /// Outgoing half-edges in counter-clockwise angular order.
    pub outgoing: Vec<HalfEdgeId>,
    /// Curves passing through this vertex, ascending.
    pub curves: Vec<usize>,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.outgoing.len()
    }
}

#[derive(Debug, Clone)]
pub struct HalfEdge {
    /// `None` only for a curve with no vertices (a closed loop edge).
    pub origin: Option<VertexId>,
    pub twin: HalfEdgeId,
    pub next: HalfEdgeId,
    pub curve: usize,
    /// True when running counter-clockwise along the curve.
    pub forward: bool,
    /// Polyline from origin to destination; corners of the curve in between.
    pub path: Vec<Point>,
    /// Indices of polygon corners lying strictly inside `path`.
    pub corners: Vec<usize>,
    pub face: FaceId,
}

impl HalfEdge {
    pub fn edge(&self, id: HalfEdgeId) -> usize {
        id / 2
    }
}

#[derive(Debug, Clone)]
pub struct Face {
    pub id: FaceId,
    /// A half-edge on the outer boundary cycle; `None` for the unbounded face.
    pub outer: Option<HalfEdgeId>,
    /// One half-edge per hole cycle.
    pub holes: Vec<HalfEdgeId>,
    pub sign: SignVector,
    pub is_outer: bool,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    n: usize,
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    faces: Vec<Face>,
    outer_face: FaceId,
    components: usize,
    free_loops: usize,
    polygons: Vec<ConvexPolygon>,
}

struct BoundaryStop {
    side: usize,
    param: Rat,
    vertex: VertexId,
}

impl Arrangement {
    pub fn build(family: &PolygonFamily) -> Result<Arrangement, ArrangementError> {
        let n = family.n();
        let polygons = family.polygons();

        // Pairwise boundary intersections.
        let mut vertex_index: HashMap<PointKey, VertexId> = HashMap::new();
        let mut vertex_points: Vec<Point> = Vec::new();
        let mut vertex_curves: Vec<Vec<usize>> = Vec::new();
        let mut stops: Vec<Vec<BoundaryStop>> = (0..n).map(|_| Vec::new()).collect();

        for a in 0..n {
            for b in (a + 1)..n {
                // Overlaps take precedence over the corner touches that
                // always accompany them, so finish the pair before reporting.
                let mut touch: Option<DegeneracyError> = None;
                for (sa, side_a) in polygons[a].sides().enumerate() {
                    for (sb, side_b) in polygons[b].sides().enumerate() {
                        let hit = match segment_intersection(&side_a, &side_b) {
                            SegmentIntersection::Empty => continue,
                            SegmentIntersection::Overlap => {
                                let location = side_a.start.midpoint(&side_a.end);
                                return Err(DegeneracyError::Overlap {
                                    first: a,
                                    second: b,
                                    location,
                                }
                                .into());
                            }
                            SegmentIntersection::Point(hit) => hit,
                        };
                        if hit.on_first != Contact::Interior {
                            let corner = corner_of(sa, hit.on_first, polygons[a].k());
                            touch.get_or_insert_with(|| {
                                classify_corner_touch(polygons, a, corner, b)
                            });
                            continue;
                        }
                        if hit.on_second != Contact::Interior {
                            let corner = corner_of(sb, hit.on_second, polygons[b].k());
                            touch.get_or_insert_with(|| {
                                classify_corner_touch(polygons, b, corner, a)
                            });
                            continue;
                        }
                        let id = *vertex_index
                            .entry(PointKey(hit.point.clone()))
                            .or_insert_with(|| {
                                vertex_points.push(hit.point.clone());
                                vertex_curves.push(Vec::new());
                                vertex_points.len() - 1
                            });
                        for c in [a, b] {
                            if !vertex_curves[id].contains(&c) {
                                vertex_curves[id].push(c);
                            }
                        }
                        // A vertex shared by three or more curves is met once
                        // per pair; record each curve's stop only once.
                        push_stop(&mut stops[a], sa, hit.param_first, id);
                        push_stop(&mut stops[b], sb, hit.param_second, id);
                    }
                }
                if let Some(err) = touch {
                    return Err(err.into());
                }
            }
        }
        for curves in &mut vertex_curves {
            curves.sort_unstable();
        }

        // Cut each boundary into edges.
        let mut half_edges: Vec<HalfEdge> = Vec::new();
        // Integer direction in which each half-edge leaves its origin.
        let mut directions: Vec<(BigInt, BigInt)> = Vec::new();
        let mut free_loops = 0;
        for (curve, polygon) in polygons.iter().enumerate() {
            let curve_stops = &mut stops[curve];
            curve_stops.sort_by(|x, y| x.side.cmp(&y.side).then_with(|| x.param.cmp(&y.param)));
            let k = polygon.k();
            if curve_stops.is_empty() {
                let mut path: Vec<Point> = polygon.corners().to_vec();
                path.push(polygon.corners()[0].clone());
                free_loops += 1;
                push_edge(&mut half_edges, None, None, curve, path, (1..k).collect());
                directions.extend([
                    (BigInt::zero(), BigInt::zero()),
                    (BigInt::zero(), BigInt::zero()),
                ]);
                continue;
            }
            let m = curve_stops.len();
            for s in 0..m {
                let from = &curve_stops[s];
                let to = &curve_stops[(s + 1) % m];
                let mut count = (to.side + k - from.side) % k;
                if count == 0 && (m == 1 || to.param <= from.param) {
                    count = k;
                }
                let corner_ids: Vec<usize> = (1..=count).map(|j| (from.side + j) % k).collect();
                let mut path = Vec::with_capacity(count + 2);
                path.push(vertex_points[from.vertex].clone());
                path.extend(corner_ids.iter().map(|&c| polygon.corners()[c].clone()));
                path.push(vertex_points[to.vertex].clone());
                push_edge(
                    &mut half_edges,
                    Some(from.vertex),
                    Some(to.vertex),
                    curve,
                    path,
                    corner_ids,
                );
                let (fx, fy) = integer_direction(&polygon.side(from.side).direction());
                let (tx, ty) = integer_direction(&polygon.side(to.side).direction());
                directions.extend([(fx, fy), (-tx, -ty)]);
            }
        }

        // Angular order around each vertex.
        let mut outgoing: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); vertex_points.len()];
        for (id, he) in half_edges.iter().enumerate() {
            if let Some(v) = he.origin {
                outgoing[v].push(id);
            }
        }
        for list in &mut outgoing {
            list.sort_by(|&x, &y| angular_cmp(&directions[x], &directions[y]));
        }

        // next(h) is the clockwise neighbour of twin(h) around the destination.
        let mut position: Vec<usize> = vec![0; half_edges.len()];
        for list in &outgoing {
            for (i, &h) in list.iter().enumerate() {
                position[h] = i;
            }
        }
        for h in 0..half_edges.len() {
            let twin = half_edges[h].twin;
            half_edges[h].next = match half_edges[twin].origin {
                None => h,
                Some(v) => {
                    let list = &outgoing[v];
                    list[(position[twin] + list.len() - 1) % list.len()]
                }
            };
        }

        // Connected components over vertices; free loops stand alone.
        let mut dsu = DisjointSets::new(vertex_points.len());
        for he in &half_edges {
            if let (Some(a), Some(b)) = (he.origin, half_edges[he.twin].origin) {
                dsu.union(a, b);
            }
        }
        let mut component_of_he = vec![0usize; half_edges.len()];
        let mut roots: HashMap<usize, usize> = HashMap::new();
        let mut components = 0;
        for (h, he) in half_edges.iter().enumerate() {
            component_of_he[h] = match he.origin {
                Some(v) => *roots.entry(dsu.find(v)).or_insert_with(|| {
                    components += 1;
                    components - 1
                }),
                None if he.forward => {
                    components += 1;
                    components - 1
                }
                None => component_of_he[he.twin],
            };
        }

        // Boundary cycles.
        let mut cycle_of = vec![usize::MAX; half_edges.len()];
        let mut cycles: Vec<Cycle> = Vec::new();
        for start in 0..half_edges.len() {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut h = start;
            loop {
                if cycle_of[h] != usize::MAX {
                    return Err(ArrangementError::Inconsistent(format!(
                        "half-edge {h} belongs to two boundary cycles"
                    )));
                }
                cycle_of[h] = cycles.len();
                members.push(h);
                h = half_edges[h].next;
                if h == start {
                    break;
                }
            }
            let ring = cycle_ring(&half_edges, &members);
            let area = double_signed_area(&ring);
            if area.is_zero() {
                return Err(ArrangementError::Inconsistent(
                    "boundary cycle with zero area".to_string(),
                ));
            }
            cycles.push(Cycle {
                members,
                ring,
                area,
                component: component_of_he[start],
            });
        }

        // Faces: the unbounded face plus one per counter-clockwise cycle.
        let mut faces = vec![Face {
            id: 0,
            outer: None,
            holes: Vec::new(),
            sign: SignVector::zero(n),
            is_outer: true,
        }];
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        for (c, cycle) in cycles.iter().enumerate() {
            if cycle.area.is_positive() {
                face_of_cycle[c] = faces.len();
                faces.push(Face {
                    id: faces.len(),
                    outer: Some(cycle.members[0]),
                    holes: Vec::new(),
                    sign: SignVector::zero(n),
                    is_outer: false,
                });
            }
        }
        for (c, cycle) in cycles.iter().enumerate() {
            if cycle.area.is_positive() {
                continue;
            }
            let probe = &cycle.ring[0];
            let mut best: Option<(usize, &Rat)> = None;
            for (d, other) in cycles.iter().enumerate() {
                if !other.area.is_positive() || other.component == cycle.component {
                    continue;
                }
                if winding_number(&other.ring, probe) != 0
                    && best.is_none_or(|(_, area)| other.area < *area)
                {
                    best = Some((d, &other.area));
                }
            }
            let face = best.map_or(0, |(d, _)| face_of_cycle[d]);
            face_of_cycle[c] = face;
            faces[face].holes.push(cycle.members[0]);
        }
        for (c, cycle) in cycles.iter().enumerate() {
            for &h in &cycle.members {
                half_edges[h].face = face_of_cycle[c];
            }
        }

        let vertices: Vec<Vertex> = vertex_points
            .into_iter()
            .zip(outgoing)
            .zip(vertex_curves)
            .map(|((point, outgoing), curves)| Vertex {
                point,
                outgoing,
                curves,
            })
            .collect();

        let mut arrangement = Arrangement {
            n,
            vertices,
            half_edges,
            faces,
            outer_face: 0,
            components,
            free_loops,
            polygons: polygons.to_vec(),
        };
        arrangement.assign_signs()?;
        arrangement.check_invariants()?;
        Ok(arrangement)
    }

    /// Breadth-first flood from the outer face, flipping bit `i` whenever an
    /// edge of curve `i` is crossed.
    fn assign_signs(&mut self) -> Result<(), ArrangementError> {
        let mut incident: Vec<Vec<HalfEdgeId>> = vec![Vec::new(); self.faces.len()];
        for (h, he) in self.half_edges.iter().enumerate() {
            incident[he.face].push(h);
        }
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([self.outer_face]);
        seen[self.outer_face] = true;
        self.faces[self.outer_face].sign = SignVector::zero(self.n);
        while let Some(f) = queue.pop_front() {
            for &h in &incident[f] {
                let he = &self.half_edges[h];
                let across = self.half_edges[he.twin].face;
                if !seen[across] {
                    seen[across] = true;
                    self.faces[across].sign = self.faces[f].sign.flipped(he.curve);
                    queue.push_back(across);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(ArrangementError::Inconsistent(
                "face not reachable from the outer face".to_string(),
            ));
        }
        Ok(())
    }

    fn check_invariants(&self) -> Result<(), ArrangementError> {
        let fail = |msg: String| Err(ArrangementError::Inconsistent(msg));
        for (id, v) in self.vertices.iter().enumerate() {
            if v.degree() < 4 || v.degree() % 2 == 1 {
                return fail(format!("vertex {id} has degree {}", v.degree()));
            }
        }
        for (h, he) in self.half_edges.iter().enumerate() {
            let twin = &self.half_edges[he.twin];
            if he.twin == h || twin.twin != h {
                return fail(format!("twin of half-edge {h} is not an involution"));
            }
            let inside = self.faces[he.face].sign;
            let outside = self.faces[twin.face].sign;
            if inside.get(he.curve) != he.forward || inside.flipped(he.curve) != outside {
                return fail(format!("sign labels disagree across half-edge {h}"));
            }
        }
        // Euler: V - E + F = 1 + C, counting a virtual vertex on each free loop.
        let v = (self.vertices.len() + self.free_loops) as i64;
        let e = self.edge_count() as i64;
        let f = self.faces.len() as i64;
        if v - e + f != 1 + self.components as i64 {
            return fail(format!(
                "Euler check failed: V={v} E={e} F={f} components={}",
                self.components
            ));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn polygons(&self) -> &[ConvexPolygon] {
        &self.polygons
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer_face
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Connected components of the curve graph (free loops count individually).
    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Curves that meet no other curve.
    pub fn free_loop_count(&self) -> usize {
        self.free_loops
    }

    /// Half-edges of the boundary cycle starting at `start`.
    pub fn cycle(&self, start: HalfEdgeId) -> Vec<HalfEdgeId> {
        let mut out = vec![start];
        let mut h = self.half_edges[start].next;
        while h != start {
            out.push(h);
            h = self.half_edges[h].next;
        }
        out
    }

    /// Closed polyline of the boundary cycle starting at `start` (first point
    /// not repeated).
    pub fn cycle_points(&self, start: HalfEdgeId) -> Vec<Point> {
        cycle_ring(&self.half_edges, &self.cycle(start))
    }

    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut histogram = BTreeMap::new();
        for v in &self.vertices {
            *histogram.entry(v.degree()).or_insert(0) += 1;
        }
        histogram
    }

    pub fn is_simple(&self) -> bool {
        self.vertices.iter().all(|v| v.degree() == 4)
    }

    /// For each curve, the number of its edges bordering the outer face.
    pub fn outer_face_curve_edges(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        // The two halves of an edge never share a face, so each outer-face
        // half-edge is a distinct edge.
        for he in self
            .half_edges
            .iter()
            .filter(|he| he.face == self.outer_face)
        {
            counts[he.curve] += 1;
        }
        counts
    }

    /// A rational point strictly inside face `face`.
    ///
    /// Starts at the midpoint of the first segment of a boundary half-edge and
    /// steps towards the face, halving the step until the offset segment meets
    /// no polygon side.
    pub fn face_sample_point(&self, face: FaceId) -> Point {
        let start = self.faces[face]
            .outer
            .or_else(|| self.faces[face].holes.first().copied())
            .expect("every face has a boundary");
        let he = &self.half_edges[start];
        let base = he.path[0].midpoint(&he.path[1]);
        let normal = (&he.path[1] - &he.path[0]).perp();
        let mut step = rat(1, 2);
        loop {
            let candidate = &base + &(&normal * &step);
            let probe = Segment::new(base.clone(), candidate.clone());
            let blocked = self.polygons.iter().enumerate().any(|(c, polygon)| {
                polygon
                    .sides()
                    .any(|side| match segment_intersection(&probe, &side) {
                        SegmentIntersection::Empty => false,
                        // The base point itself sits on the half-edge's own side.
                        SegmentIntersection::Point(hit) => {
                            !(c == he.curve && hit.on_first == Contact::Start)
                        }
                        SegmentIntersection::Overlap => true,
                    })
            });
            if !blocked {
                return candidate;
            }
            step *= rat(1, 2);
        }
    }

    /// Sign vector of an arbitrary point not on any boundary, by direct
    /// point location.
    pub fn locate_sign(&self, pt: &Point) -> Option<SignVector> {
        let mut bits = 0u64;
        for (i, polygon) in self.polygons.iter().enumerate() {
            match point_in_polygon(pt, polygon) {
                Location::Inside => bits |= 1 << i,
                Location::Outside => {}
                Location::Boundary => return None,
            }
        }
        Some(SignVector::new(bits, self.n))
    }
}

struct Cycle {
    members: Vec<HalfEdgeId>,
    ring: Vec<Point>,
    area: Rat,
    component: usize,
}

fn push_stop(stops: &mut Vec<BoundaryStop>, side: usize, param: Rat, vertex: VertexId) {
    if !stops.iter().any(|s| s.vertex == vertex) {
        stops.push(BoundaryStop {
            side,
            param,
            vertex,
        });
    }
}

fn push_edge(
    half_edges: &mut Vec<HalfEdge>,
    from: Option<VertexId>,
    to: Option<VertexId>,
    curve: usize,
    path: Vec<Point>,
    corners: Vec<usize>,
) {
    let id = half_edges.len();
    let mut reversed_path = path.clone();
    reversed_path.reverse();
    let mut reversed_corners = corners.clone();
    reversed_corners.reverse();
    half_edges.push(HalfEdge {
        origin: from,
        twin: id + 1,
        next: id,
        curve,
        forward: true,
        path,
        corners,
        face: 0,
    });
    half_edges.push(HalfEdge {
        origin: to,
        twin: id,
        next: id + 1,
        curve,
        forward: false,
        path: reversed_path,
        corners: reversed_corners,
        face: 0,
    });
}

fn corner_of(side: usize, contact: Contact, k: usize) -> usize {
    match contact {
        Contact::End => (side + 1) % k,
        _ => side,
    }
}

/// Corner `corner` of `curve` lies on the boundary of `other`. It is a
/// tangency when the curve stays on one side of the other's boundary there.
fn classify_corner_touch(
    polygons: &[ConvexPolygon],
    curve: usize,
    corner: usize,
    other: usize,
) -> DegeneracyError {
    let poly = &polygons[curve];
    let k = poly.k();
    let location = poly.corners()[corner].clone();
    let incidence = DegeneracyError::CornerIncidence {
        curve,
        corner,
        other,
        location: location.clone(),
    };
    let host = &polygons[other];
    if host.corners().contains(&location) {
        return incidence;
    }
    let Some(side) = host.sides().find(|s| {
        orientation(&s.start, &s.end, &location) == Orientation::Collinear
            && point_in_polygon(&location, host) == Location::Boundary
            && (&location - &s.start).dot(&(&location - &s.end)) < Rat::zero()
    }) else {
        return incidence;
    };
    let prev = &poly.corners()[(corner + k - 1) % k];
    let next = &poly.corners()[(corner + 1) % k];
    let a = orientation(&side.start, &side.end, prev);
    let b = orientation(&side.start, &side.end, next);
    let crosses = matches!(
        (a, b),
        (Orientation::Left, Orientation::Right) | (Orientation::Right, Orientation::Left)
    );
    if crosses {
        incidence
    } else {
        DegeneracyError::Tangency {
            first: curve.min(other),
            second: curve.max(other),
            location,
        }
    }
}

/// Counter-clockwise angular comparison of direction vectors starting from
/// the positive x axis. Exact: half-plane test, then cross product.
fn angular_cmp(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> Ordering {
    let upper = |p: &(BigInt, BigInt)| p.1.is_positive() || (p.1.is_zero() && p.0.is_positive());
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cross = &a.0 * &b.1 - &a.1 * &b.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// A positive multiple of `v` with integer components.
fn integer_direction(v: &Point) -> (BigInt, BigInt) {
    let scale = v.x.denom().lcm(v.y.denom());
    (
        v.x.numer() * (&scale / v.x.denom()),
        v.y.numer() * (&scale / v.y.denom()),
    )
}

/// Hashes the raw numerators and denominators, which is sound because every
/// `Rat` is kept in lowest terms. Hashing through `Rat` itself is far slower.
#[derive(PartialEq, Eq)]
struct PointKey(Point);

impl Hash for PointKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for r in [&self.0.x, &self.0.y] {
            r.numer().hash(state);
            r.denom().hash(state);
        }
    }
}

fn cycle_ring(half_edges: &[HalfEdge], members: &[HalfEdgeId]) -> Vec<Point> {
    let mut ring = Vec::new();
    for &h in members {
        let path = &half_edges[h].path;
        ring.extend_from_slice(&path[..path.len() - 1]);
    }
    ring
}

/// Twice the signed area of a closed ring (positive when counter-clockwise).
pub(crate) fn double_signed_area(ring: &[Point]) -> Rat {
    let m = ring.len();
    (0..m).fold(Rat::zero(), |acc, i| {
        acc + ring[i].cross(&ring[(i + 1) % m])
    })
}

/// Winding number of a closed ring around a point not on it.
pub(crate) fn winding_number(ring: &[Point], pt: &Point) -> i64 {
    let m = ring.len();
    let mut wn = 0;
    for i in 0..m {
        let a = &ring[i];
        let b = &ring[(i + 1) % m];
        if a.y <= pt.y {
            if b.y > pt.y && orientation(a, b, pt) == Orientation::Left {
                wn += 1;
            }
        } else if b.y <= pt.y && orientation(a, b, pt) == Orientation::Right {
            wn -= 1;
        }
    }
    wn
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        DisjointSets {
            parent: (0..size).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
