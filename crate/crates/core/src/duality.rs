//! Polar duality about a center `O` and the outer ghost billiard.
//!
//! The polarity is the one of the unit circle centered at `O`: after
//! translating `O` to the affine origin, a point `(x, y, z)` maps to the line
//! `x·X + y·Y − z·Z = 0`. It sends `O` to the line at infinity and back, and
//! transports incidence.
//!
//! Dualizing a centrally-projective table turns each side `γ_k` into a point
//! `Q_k`, and each chord `M_{k−1}M_k` of an orbit into a point `N_k`. The
//! reflection law at `M_k` then reads `N_{k+1} = 2·Q_k − N_k`.

use crate::dynamics::Orbit;
use crate::error::{Error, Result};
use crate::projective::{join, ProjLine, ProjPoint};
use crate::scalar::Scalar;
use crate::tables::Table;

/// Unit-circle polarity about an affine center.
#[derive(Clone, Debug)]
pub struct Polarity<S> {
    center: ProjPoint<S>,
    cx: S,
    cy: S,
}

impl<S: Scalar> Polarity<S> {
    pub fn new(center: ProjPoint<S>) -> Result<Self> {
        let (cx, cy) = center.to_affine().ok_or(Error::InfinitePoint)?;
        Ok(Self { center, cx, cy })
    }

    pub fn center(&self) -> &ProjPoint<S> {
        &self.center
    }

    /// `p ↦ p*`.
    pub fn polar_point(&self, p: &ProjPoint<S>) -> ProjLine<S> {
        let [x, y, z] = p.coords().clone();
        let tx = x - self.cx.clone() * z.clone();
        let ty = y - self.cy.clone() * z.clone();
        let c = -z - tx.clone() * self.cx.clone() - ty.clone() * self.cy.clone();
        ProjLine::from_coeffs([tx, ty, c]).expect("polarity is invertible")
    }

    /// `ℓ ↦ ℓ*`, the inverse of [`Polarity::polar_point`].
    pub fn polar_line(&self, l: &ProjLine<S>) -> ProjPoint<S> {
        let [a, b, c] = l.coeffs().clone();
        let tz = -(a.clone() * self.cx.clone() + b.clone() * self.cy.clone() + c);
        let x = a + self.cx.clone() * tz.clone();
        let y = b + self.cy.clone() * tz.clone();
        ProjPoint::from_coords([x, y, tz]).expect("polarity is invertible")
    }
}

/// Dual polygon `Q_0 … Q_{n−1}` of a centrally-projective table.
#[derive(Clone, Debug)]
pub struct DualSystem<S> {
    polarity: Polarity<S>,
    dual_vertices: Vec<ProjPoint<S>>,
}

impl<S: Scalar> DualSystem<S> {
    pub fn polarity(&self) -> &Polarity<S> {
        &self.polarity
    }

    pub fn center(&self) -> &ProjPoint<S> {
        self.polarity.center()
    }

    pub fn dual_vertices(&self) -> &[ProjPoint<S>] {
        &self.dual_vertices
    }

    pub fn dual_vertex(&self, index: usize) -> &ProjPoint<S> {
        &self.dual_vertices[index % self.dual_vertices.len()]
    }

    /// `Σ_j (Q_{2j+1} − Q_{2j})` over `j = 0 … n−1`, indices mod `n`.
    /// Vanishes for odd `n`.
    pub fn alternating_closure_sum(&self) -> Result<(S, S)> {
        let n = self.dual_vertices.len();
        let mut sum = (S::zero(), S::zero());
        for j in 0..n {
            let (ax, ay) = self.dual_vertex(2 * j + 1).to_affine().ok_or(Error::InfinitePoint)?;
            let (bx, by) = self.dual_vertex(2 * j).to_affine().ok_or(Error::InfinitePoint)?;
            sum = (sum.0 + ax - bx, sum.1 + ay - by);
        }
        Ok(sum)
    }
}

pub fn dual_polygon<S: Scalar>(table: &Table<S>) -> Result<DualSystem<S>> {
    let origin = table.central_origin().ok_or(Error::WrongFamily)?;
    let polarity = Polarity::new(origin.clone())?;
    let dual_vertices = table.edges().iter().map(|e| polarity.polar_line(e.support())).collect();
    Ok(DualSystem {
        polarity,
        dual_vertices,
    })
}

/// Point reflection of `n` through `q`: `2q − n`.
pub fn outer_step<S: Scalar>(q: &ProjPoint<S>, n: &ProjPoint<S>) -> Result<ProjPoint<S>> {
    let [qx, qy, qz] = q.coords().clone();
    let [nx, ny, nz] = n.coords().clone();
    if qz.is_zero() || nz.is_zero() {
        return Err(Error::InfinitePoint);
    }
    let two = S::two();
    ProjPoint::from_coords([
        two.clone() * qx * nz.clone() - nx * qz.clone(),
        two * qy * nz.clone() - ny * qz.clone(),
        qz * nz,
    ])
}

/// Sequence `N_k`, where step `k → k+1` reflects through `Q_{k mod n}`.
#[derive(Clone, Debug)]
pub struct OuterOrbit<S> {
    /// Index `k` of the first stored point.
    start_index: usize,
    points: Vec<ProjPoint<S>>,
    /// Indices where `N_k` coincided with the reflecting vertex.
    fixed_hits: Vec<usize>,
    /// Indices whose chord passed through the center (dual at infinity).
    through_center: Vec<usize>,
}

impl<S: Scalar> OuterOrbit<S> {
    pub fn start_index(&self) -> usize {
        self.start_index
    }

    pub fn points(&self) -> &[ProjPoint<S>] {
        &self.points
    }

    /// `N_k` by absolute index.
    pub fn point(&self, index: usize) -> Option<&ProjPoint<S>> {
        index.checked_sub(self.start_index).and_then(|i| self.points.get(i))
    }

    pub fn fixed_hits(&self) -> &[usize] {
        &self.fixed_hits
    }

    pub fn through_center(&self) -> &[usize] {
        &self.through_center
    }

    /// Whether `N_{start+m} = N_start`; `None` if not enough points.
    pub fn is_periodic(&self, m: usize) -> Option<bool> {
        Some(self.points.get(m)? == self.points.first()?)
    }

    /// Smallest `m ≥ 1` with `N_{start+m} = N_start`.
    pub fn period(&self) -> Option<usize> {
        let first = self.points.first()?;
        (1..self.points.len()).find(|&m| &self.points[m] == first)
    }
}

pub fn outer_orbit<S: Scalar>(dual: &DualSystem<S>, start: &ProjPoint<S>, steps: usize) -> Result<OuterOrbit<S>> {
    if !start.is_finite() {
        return Err(Error::InfinitePoint);
    }
    if dual.dual_vertices.iter().any(|q| q == start) {
        return Err(Error::StartsAtVertex);
    }
    let mut points = vec![start.clone()];
    let mut fixed_hits = Vec::new();
    for k in 0..steps {
        let q = dual.dual_vertex(k);
        if &points[k] == q {
            fixed_hits.push(k);
        }
        let next = outer_step(q, &points[k])?;
        points.push(next);
    }
    Ok(OuterOrbit {
        start_index: 0,
        points,
        fixed_hits,
        through_center: Vec::new(),
    })
}

/// `N_k = (M_{k−1}M_k)*` for `k = 1 … len−1` of a projective orbit.
pub fn dual_orbit<S: Scalar>(dual: &DualSystem<S>, orbit: &Orbit<S>) -> Result<OuterOrbit<S>> {
    let pts = orbit.points();
    let mut points = Vec::with_capacity(pts.len().saturating_sub(1));
    let mut through_center = Vec::new();
    for k in 1..pts.len() {
        let chord = join(&pts[k - 1], &pts[k]).map_err(|_| Error::ChordDegenerate)?;
        let n = dual.polarity.polar_line(&chord);
        if !n.is_finite() {
            through_center.push(k);
        }
        points.push(n);
    }
    let fixed_hits = (1..pts.len())
        .filter(|&k| &points[k - 1] == dual.dual_vertex(k))
        .collect();
    Ok(OuterOrbit {
        start_index: 1,
        points,
        fixed_hits,
        through_center,
    })
}
