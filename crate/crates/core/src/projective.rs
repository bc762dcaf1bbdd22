//! Homogeneous points and lines of the real projective plane, incidence,
//! join/meet, cross-ratios and harmonic conjugates.
//!
//! Cross-ratio convention used throughout the crate:
//!
//! ```text
//! CR(a, b; c, d) = ((a − c)(b − d)) / ((a − d)(b − c))
//! ```
//!
//! evaluated projectively with brackets `[p q w] = det(p, q, w)`, where `w`
//! is any point off the common line. Every representative scale cancels, so
//! the value does not depend on how the points are written down.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub(crate) fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub(crate) fn det3<S: Scalar>(a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> S {
    dot(&cross(a, b), c)
}

fn all_zero<S: Scalar>(t: &[S; 3]) -> bool {
    t.iter().all(Scalar::is_zero)
}

fn scaled_difference<S: Scalar>(s: &S, a: &[S; 3], t: &S, b: &[S; 3]) -> [S; 3] {
    [0, 1, 2].map(|i| s.clone() * a[i].clone() - t.clone() * b[i].clone())
}

fn checked_triple<S: Scalar>(triple: [S; 3]) -> Result<[S; 3]> {
    if triple.iter().any(|v| !v.to_f64().is_finite()) {
        return Err(Error::IllConditioned);
    }
    if !S::EXACT {
        // floats: only an exactly vanishing triple is rejected here
        if triple.iter().all(|v| v.to_f64() == 0.0) {
            return Err(Error::ZeroTriple);
        }
    } else if all_zero(&triple) {
        return Err(Error::ZeroTriple);
    }
    Ok(S::normalize(triple))
}

/// Distance between two unit-normalized triples, insensitive to sign.
fn triple_distance<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> f64 {
    let unit = |t: &[S; 3]| {
        let v = t.clone().map(|x| x.to_f64());
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.map(|x| x / n)
    };
    let (ua, ub) = (unit(a), unit(b));
    let plus = (0..3).map(|i| (ua[i] + ub[i]).powi(2)).sum::<f64>().sqrt();
    let minus = (0..3).map(|i| (ua[i] - ub[i]).powi(2)).sum::<f64>().sqrt();
    plus.min(minus)
}

/// A point of ℝP² in homogeneous coordinates, stored in canonical form.
#[derive(Clone, Debug)]
pub struct ProjPoint<S> {
    coords: [S; 3],
}

/// A line `a·x + b·y + c·z = 0` of ℝP², stored in canonical form.
#[derive(Clone, Debug)]
pub struct ProjLine<S> {
    coeffs: [S; 3],
}

impl<S: Scalar> ProjPoint<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self> {
        Self::from_coords([x, y, z])
    }

    pub fn from_coords(coords: [S; 3]) -> Result<Self> {
        Ok(Self {
            coords: checked_triple(coords)?,
        })
    }

    /// The affine point `(x, y)`, i.e. `(x, y, 1)`.
    pub fn affine(x: S, y: S) -> Self {
        Self {
            coords: S::normalize([x, y, S::one()]),
        }
    }

    pub fn coords(&self) -> &[S; 3] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        !self.coords[2].is_zero()
    }

    /// Affine coordinates, or `None` for a point at infinity.
    pub fn to_affine(&self) -> Option<(S, S)> {
        let [x, y, z] = self.coords.clone();
        if z.is_zero() {
            return None;
        }
        Some((x / z.clone(), y / z))
    }

    pub fn to_affine_f64(&self) -> Option<(f64, f64)> {
        let [x, y, z] = self.coords.clone().map(|v| v.to_f64());
        if self.coords[2].is_zero() {
            return None;
        }
        Some((x / z, y / z))
    }

    pub fn to_f64(&self) -> ProjPoint<f64> {
        ProjPoint {
            coords: f64::normalize(self.coords.clone().map(|v| v.to_f64())),
        }
    }

    /// Sign-insensitive distance between unit representatives.
    pub fn distance(&self, other: &Self) -> f64 {
        triple_distance(&self.coords, &other.coords)
    }
}

impl<S: Scalar> ProjLine<S> {
    pub fn new(a: S, b: S, c: S) -> Result<Self> {
        Self::from_coeffs([a, b, c])
    }

    pub fn from_coeffs(coeffs: [S; 3]) -> Result<Self> {
        Ok(Self {
            coeffs: checked_triple(coeffs)?,
        })
    }

    /// The line at infinity `z = 0`.
    pub fn at_infinity() -> Self {
        Self {
            coeffs: S::normalize([S::zero(), S::zero(), S::one()]),
        }
    }

    pub fn coeffs(&self) -> &[S; 3] {
        &self.coeffs
    }

    pub fn to_f64(&self) -> ProjLine<f64> {
        ProjLine {
            coeffs: f64::normalize(self.coeffs.clone().map(|v| v.to_f64())),
        }
    }

    pub fn distance(&self, other: &Self) -> f64 {
        triple_distance(&self.coeffs, &other.coeffs)
    }
}

/// Equality up to a nonzero scale: the cross product of the two triples
/// vanishes.
impl<S: Scalar> PartialEq for ProjPoint<S> {
    fn eq(&self, other: &Self) -> bool {
        all_zero(&cross(&self.coords, &other.coords))
    }
}

impl<S: Scalar> PartialEq for ProjLine<S> {
    fn eq(&self, other: &Self) -> bool {
        all_zero(&cross(&self.coeffs, &other.coeffs))
    }
}

impl<S: Scalar> fmt::Display for ProjPoint<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "({x} : {y} : {z})")
    }
}

impl<S: Scalar> fmt::Display for ProjLine<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.coeffs;
        write!(f, "[{a} : {b} : {c}]")
    }
}

/// Line through two distinct points.
pub fn join<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjLine<S>> {
    let c = cross(&p.coords, &q.coords);
    if all_zero(&c) {
        return Err(Error::DegenerateJoin);
    }
    ProjLine::from_coeffs(c)
}

/// Intersection point of two distinct lines.
pub fn meet<S: Scalar>(l: &ProjLine<S>, m: &ProjLine<S>) -> Result<ProjPoint<S>> {
    let c = cross(&l.coeffs, &m.coeffs);
    if all_zero(&c) {
        return Err(Error::DegenerateMeet);
    }
    ProjPoint::from_coords(c)
}

pub fn incident<S: Scalar>(p: &ProjPoint<S>, l: &ProjLine<S>) -> bool {
    dot(&p.coords, &l.coeffs).is_zero()
}

/// Value of a cross-ratio: finite, or the distinguished point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum CrossRatio<S> {
    Finite(S),
    Infinity,
}

impl<S: Scalar> CrossRatio<S> {
    pub fn is_harmonic(&self) -> bool {
        match self {
            CrossRatio::Finite(v) => (v.clone() + S::one()).is_zero(),
            CrossRatio::Infinity => false,
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            CrossRatio::Finite(v) => Some(v),
            CrossRatio::Infinity => None,
        }
    }
}

impl<S: Scalar> fmt::Display for CrossRatio<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossRatio::Finite(v) => write!(f, "{v}"),
            CrossRatio::Infinity => f.write_str("inf"),
        }
    }
}

/// Line supporting a set of points: the first distinct pair in exact mode,
/// the best-conditioned pair in float mode.
fn supporting_line<S: Scalar>(points: &[&ProjPoint<S>]) -> Result<ProjLine<S>> {
    let mut best: Option<(f64, [S; 3])> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let c = cross(&points[i].coords, &points[j].coords);
            if all_zero(&c) {
                continue;
            }
            if S::EXACT {
                return ProjLine::from_coeffs(c);
            }
            let size = c.iter().map(|v| v.to_f64().powi(2)).sum::<f64>();
            if best.as_ref().is_none_or(|(s, _)| size > *s) {
                best = Some((size, c));
            }
        }
    }
    match best {
        Some((_, c)) => ProjLine::from_coeffs(c),
        None if S::EXACT => Err(Error::IndeterminateCrossRatio),
        None => Err(Error::IllConditioned),
    }
}

/// `CR(a, b; c, d)` of four collinear points.
pub fn cross_ratio_points<S: Scalar>(
    a: &ProjPoint<S>,
    b: &ProjPoint<S>,
    c: &ProjPoint<S>,
    d: &ProjPoint<S>,
) -> Result<CrossRatio<S>> {
    let line = supporting_line(&[a, b, c, d])?;
    if ![a, b, c, d].iter().all(|p| incident(p, &line)) {
        return Err(Error::NotCollinear);
    }
    // the line's own coefficient vector is never on the (real) line
    let w = &line.coeffs;
    let bracket = |p: &ProjPoint<S>, q: &ProjPoint<S>| det3(&p.coords, &q.coords, w);
    let numer = bracket(a, c) * bracket(b, d);
    let denom = bracket(a, d) * bracket(b, c);
    match (numer.is_zero(), denom.is_zero()) {
        (true, true) => Err(Error::IndeterminateCrossRatio),
        (false, true) => Ok(CrossRatio::Infinity),
        _ => Ok(CrossRatio::Finite(numer / denom)),
    }
}

/// Common point of a set of concurrent lines.
fn pencil_vertex<S: Scalar>(lines: &[&ProjLine<S>]) -> Result<ProjPoint<S>> {
    let mut vertex = None;
    'outer: for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Ok(p) = meet(lines[i], lines[j]) {
                vertex = Some(p);
                break 'outer;
            }
        }
    }
    let vertex = vertex.ok_or(Error::DegeneratePencil)?;
    if !lines.iter().all(|l| incident(&vertex, l)) {
        return Err(Error::NotConcurrent);
    }
    Ok(vertex)
}

/// Default transversal of a pencil: the polar of its vertex with respect to
/// the unit conic `x² + y² − z² = 0`, or a coordinate axis line when the
/// vertex sits on that conic.
pub fn default_transversal<S: Scalar>(vertex: &ProjPoint<S>) -> ProjLine<S> {
    let [x, y, z] = vertex.coords.clone();
    let polar = ProjLine::from_coeffs([x, y, -z]).expect("nonzero vertex");
    if !incident(vertex, &polar) {
        return polar;
    }
    let axes = [
        [S::one(), S::zero(), S::zero()],
        [S::zero(), S::one(), S::zero()],
        [S::zero(), S::zero(), S::one()],
    ];
    axes.into_iter()
        .map(|c| ProjLine { coeffs: c })
        .find(|l| !incident(vertex, l))
        .expect("a point cannot lie on all three coordinate lines")
}

/// `CR(l1, l2; l3, l4)` of four concurrent lines, read off on a transversal.
pub fn cross_ratio_lines<S: Scalar>(
    l1: &ProjLine<S>,
    l2: &ProjLine<S>,
    l3: &ProjLine<S>,
    l4: &ProjLine<S>,
    transversal: Option<&ProjLine<S>>,
) -> Result<CrossRatio<S>> {
    let vertex = pencil_vertex(&[l1, l2, l3, l4])?;
    let transversal = match transversal {
        Some(t) if incident(&vertex, t) => return Err(Error::BadTransversal),
        Some(t) => t.clone(),
        None => default_transversal(&vertex),
    };
    let cut = |l: &ProjLine<S>| meet(l, &transversal);
    cross_ratio_points(&cut(l1)?, &cut(l2)?, &cut(l3)?, &cut(l4)?)
}

/// The point `b` with `CR(a, b; c, d) = −1`.
///
/// Writing `a = s·c + t·d` on the line `cd`, the conjugate is `s·c − t·d`.
pub fn harmonic_conjugate_point<S: Scalar>(
    a: &ProjPoint<S>,
    c: &ProjPoint<S>,
    d: &ProjPoint<S>,
) -> Result<ProjPoint<S>> {
    let line = join(c, d)?;
    if !incident(a, &line) {
        return Err(Error::NotCollinear);
    }
    let w = &line.coeffs;
    let s = det3(&a.coords, &d.coords, w);
    let t = det3(&c.coords, &a.coords, w);
    ProjPoint::from_coords(scaled_difference(&s, &c.coords, &t, &d.coords))
}

/// The line `l'` through the vertex of `(l, L, T)` with `CR(l, l'; L, T) = −1`.
pub fn harmonic_conjugate_line<S: Scalar>(
    l: &ProjLine<S>,
    big_l: &ProjLine<S>,
    t: &ProjLine<S>,
) -> Result<ProjLine<S>> {
    let vertex = meet(big_l, t).map_err(|_| Error::DegeneratePencil)?;
    if !incident(&vertex, l) {
        return Err(Error::NotConcurrent);
    }
    let w = &vertex.coords;
    let s = det3(&l.coeffs, &t.coeffs, w);
    let u = det3(&big_l.coeffs, &l.coeffs, w);
    ProjLine::from_coeffs(scaled_difference(&s, &big_l.coeffs, &u, &t.coeffs))
}

/// Affine midpoint of two finite points.
pub fn midpoint<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    let (px, py) = p.to_affine().ok_or(Error::InfinitePoint)?;
    let (qx, qy) = q.to_affine().ok_or(Error::InfinitePoint)?;
    let two = S::two();
    Ok(ProjPoint::affine((px + qx) / two.clone(), (py + qy) / two))
}
