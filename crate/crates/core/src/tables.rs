//! Polygonal projective billiard tables.
//!
//! An edge is the whole supporting line of a side, not just the segment
//! between its endpoints; the endpoints only parameterize starting chords and
//! tag orbit points as on- or off-segment. Each edge carries a transverse
//! field of lines, generated either by a fixed origin (centrally-projective
//! tables) or by a fixed apex point (right-spherical tables and converging
//! mirrors).

use crate::error::{Error, Result};
use crate::projective::{incident, join, ProjLine, ProjPoint};
use crate::scalar::Scalar;

/// Generator of the transverse line at a point `M` of an edge: the line
/// joining `M` to a fixed pivot.
#[derive(Clone, Debug)]
pub enum FieldRule<S> {
    Central { origin: ProjPoint<S> },
    Apex { apex: ProjPoint<S> },
}

impl<S: Scalar> PartialEq for FieldRule<S> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (FieldRule::Central { origin: a }, FieldRule::Central { origin: b }) => a == b,
            (FieldRule::Apex { apex: a }, FieldRule::Apex { apex: b }) => a == b,
            _ => false,
        }
    }
}

impl<S: Scalar> FieldRule<S> {
    pub fn pivot(&self) -> &ProjPoint<S> {
        match self {
            FieldRule::Central { origin } => origin,
            FieldRule::Apex { apex } => apex,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Edge<S> {
    support: ProjLine<S>,
    endpoints: (ProjPoint<S>, ProjPoint<S>),
    field: FieldRule<S>,
}

impl<S: Scalar> Edge<S> {
    /// Edge from `start` to `end`; `index` is only used in error reports.
    pub fn new(index: usize, start: ProjPoint<S>, end: ProjPoint<S>, field: FieldRule<S>) -> Result<Self> {
        let support = join(&start, &end).map_err(|_| Error::CoincidentVertices { index, next: index + 1 })?;
        if incident(field.pivot(), &support) {
            return Err(match field {
                FieldRule::Central { .. } => Error::OriginOnEdge { edge: index },
                FieldRule::Apex { .. } => Error::PivotOnEdge { edge: index },
            });
        }
        Ok(Self {
            support,
            endpoints: (start, end),
            field,
        })
    }

    pub fn support(&self) -> &ProjLine<S> {
        &self.support
    }

    pub fn endpoints(&self) -> (&ProjPoint<S>, &ProjPoint<S>) {
        (&self.endpoints.0, &self.endpoints.1)
    }

    pub fn field(&self) -> &FieldRule<S> {
        &self.field
    }

    /// The affine combination `(1 − t)·start + t·end`.
    pub fn point_at(&self, t: &S) -> Result<ProjPoint<S>> {
        let (sx, sy) = self.endpoints.0.to_affine().ok_or(Error::InfinitePoint)?;
        let (ex, ey) = self.endpoints.1.to_affine().ok_or(Error::InfinitePoint)?;
        let s = S::one() - t.clone();
        Ok(ProjPoint::affine(
            s.clone() * sx + t.clone() * ex,
            s * sy + t.clone() * ey,
        ))
    }

    /// Whether an affine point of the support lies between the endpoints.
    /// Evaluated in floating point; this is reporting metadata only.
    pub fn contains_on_segment(&self, m: &ProjPoint<S>) -> bool {
        let (Some(a), Some(b), Some(p)) = (
            self.endpoints.0.to_affine_f64(),
            self.endpoints.1.to_affine_f64(),
            m.to_affine_f64(),
        ) else {
            return false;
        };
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let len2 = dx * dx + dy * dy;
        let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2;
        let slack = 1e-12;
        (-slack..=1.0 + slack).contains(&t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    RightSpherical,
    CentrallyProjective,
    ConvergingMirrors,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::RightSpherical => "right_spherical",
            Family::CentrallyProjective => "centrally_projective",
            Family::ConvergingMirrors => "converging_mirrors",
            Family::Custom => "custom",
        }
    }
}

/// An ordered, cyclic sequence of edges; edge `k` is bounced on at orbit
/// steps `k, k + n, k + 2n, …`.
#[derive(Clone, Debug)]
pub struct Table<S> {
    vertices: Vec<ProjPoint<S>>,
    edges: Vec<Edge<S>>,
    family: Family,
}

impl<S: Scalar> Table<S> {
    /// Table from explicit edges. Edge endpoints are independent, so the
    /// sides need not close up into a polygon.
    pub fn custom(edges: Vec<Edge<S>>) -> Result<Self> {
        if edges.len() < 2 {
            return Err(Error::TooFewVertices {
                min: 2,
                got: edges.len(),
            });
        }
        let vertices = edges.iter().map(|e| e.endpoints.0.clone()).collect();
        Ok(Self {
            vertices,
            edges,
            family: Family::Custom,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vertices(&self) -> &[ProjPoint<S>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    /// Number of edges in the bounce cycle.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge at a cyclic index.
    pub fn edge(&self, index: usize) -> &Edge<S> {
        &self.edges[index % self.edges.len()]
    }

    /// The common origin when every edge carries the same central field.
    pub fn central_origin(&self) -> Option<&ProjPoint<S>> {
        let first = match self.edges.first()?.field() {
            FieldRule::Central { origin } => origin,
            FieldRule::Apex { .. } => return None,
        };
        self.edges
            .iter()
            .all(|e| matches!(e.field(), FieldRule::Central { origin } if origin == first))
            .then_some(first)
    }

    pub fn transverse_line_at(&self, edge_index: usize, m: &ProjPoint<S>) -> Result<ProjLine<S>> {
        let index = edge_index % self.edges.len();
        let edge = &self.edges[index];
        if !incident(m, &edge.support) {
            return Err(Error::PointOffEdge { edge: index });
        }
        join(m, edge.field.pivot()).map_err(|_| Error::FieldSingular { edge: index })
    }

    /// Same table with each vertex replaced; used for perturbation sweeps.
    /// Only polygon families (one vertex per edge, sides closing up) are
    /// supported.
    pub fn with_vertices(&self, vertices: Vec<ProjPoint<S>>) -> Result<Self> {
        match self.family {
            Family::CentrallyProjective => {
                let origin = self.central_origin().ok_or(Error::WrongFamily)?.clone();
                centrally_projective(origin, vertices)
            }
            Family::RightSpherical => match <[ProjPoint<S>; 3]>::try_from(vertices) {
                Ok([p0, p1, p2]) => right_spherical(p0, p1, p2),
                Err(v) => Err(Error::TooFewVertices { min: 3, got: v.len() }),
            },
            Family::ConvergingMirrors | Family::Custom => Err(Error::WrongFamily),
        }
    }
}

/// Triangle whose side `P_iP_{i+1}` carries the lines through the opposite
/// vertex `P_{i+2}`.
pub fn right_spherical<S: Scalar>(p0: ProjPoint<S>, p1: ProjPoint<S>, p2: ProjPoint<S>) -> Result<Table<S>> {
    let vertices = vec![p0, p1, p2];
    let side = join(&vertices[0], &vertices[1]).map_err(|_| Error::CollinearVertices)?;
    if incident(&vertices[2], &side) {
        return Err(Error::CollinearVertices);
    }
    let edges = (0..3)
        .map(|i| {
            Edge::new(
                i,
                vertices[i].clone(),
                vertices[(i + 1) % 3].clone(),
                FieldRule::Apex {
                    apex: vertices[(i + 2) % 3].clone(),
                },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        vertices,
        edges,
        family: Family::RightSpherical,
    })
}

/// Polygon whose transverse lines all pass through `origin`.
pub fn centrally_projective<S: Scalar>(origin: ProjPoint<S>, vertices: Vec<ProjPoint<S>>) -> Result<Table<S>> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::TooFewVertices { min: 3, got: n });
    }
    for i in 0..n {
        let (a, b, c) = (&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
        let side = join(a, b).map_err(|_| Error::CoincidentVertices {
            index: i,
            next: (i + 1) % n,
        })?;
        if incident(c, &side) {
            return Err(Error::CollinearConsecutiveVertices {
                first: i,
                second: (i + 1) % n,
                third: (i + 2) % n,
            });
        }
    }
    let edges = (0..n)
        .map(|i| {
            Edge::new(
                i,
                vertices[i].clone(),
                vertices[(i + 1) % n].clone(),
                FieldRule::Central { origin: origin.clone() },
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        vertices,
        edges,
        family: Family::CentrallyProjective,
    })
}

/// Vertices of the regular `n`-gon of the given radius centered at the
/// affine origin, listed clockwise starting from the top.
pub fn regular_polygon_vertices<S: Scalar>(n: usize, radius: &S) -> Result<Vec<ProjPoint<S>>> {
    if n < 3 {
        return Err(Error::TooFewVertices { min: 3, got: n });
    }
    let n_i = n as i64;
    (0..n_i)
        .map(|k| {
            // angle π/2 − 2πk/n, as a fraction of a full turn
            let (c, s) = S::cos_sin_turn(n_i - 4 * k, 4 * n_i).ok_or(Error::NotExactlyRepresentable { n })?;
            Ok(ProjPoint::affine(radius.clone() * c, radius.clone() * s))
        })
        .collect()
}

/// Centrally-projective regular polygon with its center as origin.
pub fn regular_polygon<S: Scalar>(n: usize, radius: &S) -> Result<Table<S>> {
    let vertices = regular_polygon_vertices(n, radius)?;
    centrally_projective(ProjPoint::affine(S::zero(), S::zero()), vertices)
}

/// Two parallel mirrors `y = 0` and `y = gap`; each carries the lines through
/// the foot of the common normal `x = offset` on the other mirror.
///
/// The mirror segments used to parameterize chords run from `offset − 1` to
/// `offset + 1` (bottom, left to right) and back (top, right to left).
pub fn converging_mirrors<S: Scalar>(gap: S, offset: S) -> Result<Table<S>> {
    if gap.sign() <= 0 {
        return Err(Error::DegenerateTable("mirror gap must be positive"));
    }
    let bottom_foot = ProjPoint::affine(offset.clone(), S::zero());
    let top_foot = ProjPoint::affine(offset.clone(), gap.clone());
    let left = offset.clone() - S::one();
    let right = offset + S::one();
    let bottom = Edge::new(
        0,
        ProjPoint::affine(left.clone(), S::zero()),
        ProjPoint::affine(right.clone(), S::zero()),
        FieldRule::Apex { apex: top_foot.clone() },
    )?;
    let top = Edge::new(
        1,
        ProjPoint::affine(right, gap.clone()),
        ProjPoint::affine(left, gap),
        FieldRule::Apex {
            apex: bottom_foot.clone(),
        },
    )?;
    Ok(Table {
        vertices: vec![bottom_foot, top_foot],
        edges: vec![bottom, top],
        family: Family::ConvergingMirrors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::meet;
    use crate::scalar::Rational;
    use crate::sqrt3::QSqrt3;

    type Q = Rational;

    fn p(x: i64, y: i64) -> ProjPoint<Q> {
        ProjPoint::affine(Q::from_i64(x), Q::from_i64(y))
    }

    fn pq(x: (i64, i64), y: (i64, i64)) -> ProjPoint<Q> {
        ProjPoint::affine(Q::from_ratio(x.0, x.1), Q::from_ratio(y.0, y.1))
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjLine<Q> {
        ProjLine::new(Q::from_i64(a), Q::from_i64(b), Q::from_i64(c)).unwrap()
    }

    #[test]
    fn right_spherical_unit_triangle() {
        let table = right_spherical(p(0, 0), p(1, 0), p(0, 1)).unwrap();
        assert_eq!(table.len(), 3);
        let expected = [(ln(0, 1, 0), p(0, 1)), (ln(1, 1, -1), p(0, 0)), (ln(1, 0, 0), p(1, 0))];
        for (edge, (support, apex)) in table.edges().iter().zip(expected) {
            assert_eq!(edge.support(), &support);
            assert_eq!(edge.field(), &FieldRule::Apex { apex });
        }
        let m = pq((1, 2), (0, 1));
        let transverse = table.transverse_line_at(0, &m).unwrap();
        assert_eq!(transverse, join(&m, &p(0, 1)).unwrap());
        assert_eq!(transverse, ln(2, 1, -1));
    }

    #[test]
    fn right_spherical_rejects_collinear() {
        assert_eq!(
            right_spherical(p(0, 0), p(1, 1), p(3, 3)).unwrap_err(),
            Error::CollinearVertices
        );
    }

    #[test]
    fn square_table() {
        let square = vec![p(-1, -1), p(-1, 1), p(1, 1), p(1, -1)];
        let table = centrally_projective(p(0, 0), square).unwrap();
        assert_eq!(table.central_origin(), Some(&p(0, 0)));
        assert_eq!(table.edge(0).support(), &ln(1, 0, 1));
        let line = table.transverse_line_at(0, &p(-1, 0)).unwrap();
        assert_eq!(line, ln(0, 1, 0));
        assert_eq!(
            table.transverse_line_at(0, &p(0, 1)).unwrap_err(),
            Error::PointOffEdge { edge: 0 }
        );
    }

    #[test]
    fn origin_on_edge_is_rejected() {
        let square = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)];
        assert_eq!(
            centrally_projective(p(1, 0), square).unwrap_err(),
            Error::OriginOnEdge { edge: 0 }
        );
    }

    #[test]
    fn collinear_consecutive_vertices_rejected() {
        let verts = vec![p(0, 0), p(1, 0), p(2, 0), p(1, 3)];
        assert_eq!(
            centrally_projective(p(1, 1), verts).unwrap_err(),
            Error::CollinearConsecutiveVertices {
                first: 0,
                second: 1,
                third: 2
            }
        );
    }

    #[test]
    fn regular_square_clockwise() {
        let verts = regular_polygon_vertices::<Q>(4, &Q::from_i64(1)).unwrap();
        assert_eq!(verts, vec![p(0, 1), p(1, 0), p(0, -1), p(-1, 0)]);
        assert!(regular_polygon_vertices::<Q>(6, &Q::from_i64(1)).is_err());
        assert_eq!(
            regular_polygon_vertices::<Q>(2, &Q::from_i64(1)).unwrap_err(),
            Error::TooFewVertices { min: 3, got: 2 }
        );
    }

    #[test]
    fn exact_hexagon_great_diagonals_meet_at_center() {
        let table = regular_polygon::<QSqrt3>(6, &QSqrt3::one()).unwrap();
        let v = table.vertices();
        let half = QSqrt3::from_ratio(1, 2);
        let root_half = QSqrt3::new(Q::from_i64(0), Q::from_ratio(1, 2));
        assert_eq!(v[0], ProjPoint::affine(QSqrt3::zero(), QSqrt3::one()));
        assert_eq!(v[1], ProjPoint::affine(root_half, half));
        let center = ProjPoint::affine(QSqrt3::zero(), QSqrt3::zero());
        for i in 0..3 {
            let d0 = join(&v[i], &v[i + 3]).unwrap();
            let d1 = join(&v[(i + 1) % 3], &v[(i + 1) % 3 + 3]).unwrap();
            assert_eq!(meet(&d0, &d1).unwrap(), center);
        }
    }

    #[test]
    fn float_regular_polygon_radius() {
        let verts = regular_polygon_vertices::<f64>(7, &2.0).unwrap();
        for v in verts {
            let (x, y) = v.to_affine_f64().unwrap();
            assert!(((x * x + y * y).sqrt() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn converging_mirrors_layout() {
        let table = converging_mirrors(Q::from_i64(1), Q::from_i64(0)).unwrap();
        assert_eq!(table.edge(0).support(), &ln(0, 1, 0));
        assert_eq!(table.edge(1).support(), &ln(0, 1, -1));
        assert_eq!(table.edge(0).field().pivot(), &p(0, 1));
        assert_eq!(table.edge(1).field().pivot(), &p(0, 0));
        let line = table.transverse_line_at(0, &p(2, 0)).unwrap();
        assert_eq!(line, join(&p(2, 0), &p(0, 1)).unwrap());
        // at the feet the transverse line is the common normal
        let normal = ln(1, 0, 0);
        assert_eq!(table.transverse_line_at(0, &p(0, 0)).unwrap(), normal);
        assert_eq!(table.transverse_line_at(1, &p(0, 1)).unwrap(), normal);
        assert_eq!(
            converging_mirrors(Q::from_i64(0), Q::from_i64(0)).unwrap_err(),
            Error::DegenerateTable("mirror gap must be positive")
        );
    }

    #[test]
    fn point_at_and_segment_flag() {
        let table = right_spherical(p(0, 0), p(2, 0), p(0, 2)).unwrap();
        let m = table.edge(0).point_at(&Q::from_ratio(1, 4)).unwrap();
        assert_eq!(m, pq((1, 2), (0, 1)));
        assert!(table.edge(0).contains_on_segment(&m));
        assert!(!table.edge(0).contains_on_segment(&p(3, 0)));
    }
}
