//! The projective (ghost) billiard map on a polygonal table.
//!
//! Orbit point `M_k` lies on the supporting line of edge `k mod n`. At each
//! bounce the outgoing chord is the harmonic conjugate of the incoming chord
//! with respect to the transverse line and the edge line. Points may leave
//! the edge segments or go to infinity; everything stays homogeneous.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::projective::{harmonic_conjugate_line, incident, join, meet, ProjLine, ProjPoint};
use crate::scalar::Scalar;
use crate::tables::{Family, Table};

/// Starting chord `(M_0, M_1)` given by affine positions on edges 0 and 1.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordParam<S> {
    t0: S,
    t1: S,
}

impl<S: Scalar> ChordParam<S> {
    pub fn new(t0: S, t1: S) -> Result<Self> {
        let open = |t: &S| t.sign() > 0 && (S::one() - t.clone()).sign() > 0;
        if !open(&t0) || !open(&t1) {
            return Err(Error::InvalidChord);
        }
        Ok(Self { t0, t1 })
    }

    pub fn t0(&self) -> &S {
        &self.t0
    }

    pub fn t1(&self) -> &S {
        &self.t1
    }

    /// The two starting points on `table`.
    pub fn endpoints(&self, table: &Table<S>) -> Result<(ProjPoint<S>, ProjPoint<S>)> {
        let m0 = table.edge(0).point_at(&self.t0)?;
        let m1 = table.edge(1).point_at(&self.t1)?;
        if m0 == m1 {
            return Err(Error::ChordDegenerate);
        }
        Ok((m0, m1))
    }
}

/// Why an orbit stopped before the requested number of steps.
#[derive(Clone, Debug, PartialEq)]
pub struct Termination {
    /// Index of the bounce point at which the next step failed.
    pub at_index: usize,
    pub reason: Error,
}

#[derive(Clone, Debug)]
pub struct Orbit<S> {
    points: Vec<ProjPoint<S>>,
    edge_count: usize,
    on_segment: Vec<bool>,
    termination: Option<Termination>,
}

impl<S: Scalar> Orbit<S> {
    pub fn points(&self) -> &[ProjPoint<S>] {
        &self.points
    }

    pub fn point(&self, index: usize) -> Option<&ProjPoint<S>> {
        self.points.get(index)
    }

    /// Edge index of `M_k`.
    pub fn edge_of(&self, index: usize) -> usize {
        index % self.edge_count
    }

    pub fn on_segment(&self) -> &[bool] {
        &self.on_segment
    }

    pub fn termination(&self) -> Option<&Termination> {
        self.termination.as_ref()
    }

    /// Chord `M_k M_{k+1}`.
    pub fn chord(&self, index: usize) -> Option<ProjLine<S>> {
        let a = self.points.get(index)?;
        let b = self.points.get(index + 1)?;
        join(a, b).ok()
    }

    pub fn chords(&self) -> Vec<ProjLine<S>> {
        (0..self.points.len().saturating_sub(1))
            .filter_map(|k| self.chord(k))
            .collect()
    }
}

/// Outgoing line at `m` on edge `edge_index` for the given incoming line.
pub fn reflect<S: Scalar>(
    table: &Table<S>,
    edge_index: usize,
    m: &ProjPoint<S>,
    incoming: &ProjLine<S>,
) -> Result<ProjLine<S>> {
    let transverse = table.transverse_line_at(edge_index, m)?;
    if !incident(m, incoming) {
        return Err(Error::LineMissesPoint);
    }
    harmonic_conjugate_line(incoming, &transverse, table.edge(edge_index).support())
}

/// Next bounce point after `prev → cur`, where `cur` lies on edge
/// `edge_index`.
pub fn step<S: Scalar>(
    table: &Table<S>,
    edge_index: usize,
    prev: &ProjPoint<S>,
    cur: &ProjPoint<S>,
) -> Result<ProjPoint<S>> {
    let incoming = join(prev, cur).map_err(|_| Error::ChordDegenerate)?;
    let outgoing = reflect(table, edge_index, cur, &incoming)?;
    let next_edge = (edge_index + 1) % table.len();
    meet(&outgoing, table.edge(next_edge).support()).map_err(|_| Error::OrbitCollapse { edge: next_edge })
}

/// Forward orbit `M_0, …, M_steps`. A failing step ends the orbit early with
/// a recorded [`Termination`] instead of an error.
pub fn orbit<S: Scalar>(table: &Table<S>, chord: &ChordParam<S>, steps: usize) -> Result<Orbit<S>> {
    if steps == 0 {
        return Err(Error::InvalidSteps);
    }
    let (m0, m1) = chord.endpoints(table)?;
    let mut points = Vec::with_capacity(steps + 1);
    points.push(m0);
    points.push(m1);
    let mut termination = None;
    for k in 1..steps {
        match step(table, k, &points[k - 1], &points[k]) {
            Ok(next) => points.push(next),
            Err(reason) => {
                termination = Some(Termination { at_index: k, reason });
                break;
            }
        }
    }
    let on_segment = points
        .iter()
        .enumerate()
        .map(|(k, p)| table.edge(k).contains_on_segment(p))
        .collect();
    Ok(Orbit {
        points,
        edge_count: table.len(),
        on_segment,
        termination,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodReport {
    pub period_tested: usize,
    pub is_periodic: bool,
    /// Sign-insensitive distance between the unit coefficient triples of
    /// `M_m M_{m+1}` and `M_0 M_1`; exactly zero iff periodic in exact mode.
    pub line_residual: f64,
    /// Distances `M_m ↔ M_0` and `M_{m+1} ↔ M_1` (affine when both finite).
    pub point_residuals: (f64, f64),
    /// Set when the orbit could not be continued far enough.
    pub degeneracy: Option<Termination>,
}

fn point_gap<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> f64 {
    if S::EXACT && a == b {
        return 0.0;
    }
    match (a.to_affine_f64(), b.to_affine_f64()) {
        (Some(p), Some(q)) => (p.0 - q.0).hypot(p.1 - q.1),
        _ => a.distance(b),
    }
}

fn require_multiple(table_len: usize, m: usize) -> Result<()> {
    if m == 0 || !m.is_multiple_of(table_len) {
        return Err(Error::NotMultipleOfN { m, n: table_len });
    }
    Ok(())
}

/// Periodicity of the orbit of `chord` at period `m`: is
/// `M_m M_{m+1} = M_0 M_1`?
pub fn check_periodic<S: Scalar>(table: &Table<S>, chord: &ChordParam<S>, m: usize) -> Result<PeriodReport> {
    require_multiple(table.len(), m)?;
    let orbit = orbit(table, chord, m + 1)?;
    Ok(period_report(&orbit, m))
}

/// Periodicity verdict for an orbit already iterated to at least `m + 1`.
pub fn period_report<S: Scalar>(orbit: &Orbit<S>, m: usize) -> PeriodReport {
    let pts = orbit.points();
    if pts.len() < m + 2 {
        return PeriodReport {
            period_tested: m,
            is_periodic: false,
            line_residual: f64::INFINITY,
            point_residuals: (f64::INFINITY, f64::INFINITY),
            degeneracy: orbit.termination().cloned().or(Some(Termination {
                at_index: pts.len().saturating_sub(1),
                reason: Error::IndexOutOfRange { index: (m + 1) as i64 },
            })),
        };
    }
    let first = orbit.chord(0).expect("starting chord is nondegenerate");
    let point_residuals = (point_gap(&pts[m], &pts[0]), point_gap(&pts[m + 1], &pts[1]));
    let Some(last) = orbit.chord(m) else {
        return PeriodReport {
            period_tested: m,
            is_periodic: false,
            line_residual: f64::INFINITY,
            point_residuals,
            degeneracy: Some(Termination {
                at_index: m,
                reason: Error::ChordDegenerate,
            }),
        };
    };
    let is_periodic = last == first;
    let line_residual = if is_periodic && S::EXACT {
        0.0
    } else {
        let d = last.distance(&first);
        if S::EXACT && d == 0.0 {
            // distinct but closer than f64 can resolve
            f64::MIN_POSITIVE
        } else {
            d
        }
    };
    PeriodReport {
        period_tested: m,
        is_periodic,
        line_residual,
        point_residuals,
        degeneracy: None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanFailure {
    pub t0_index: usize,
    pub t1_index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub period: usize,
    pub grid: usize,
    /// Cells whose chord could be built and iterated far enough.
    pub evaluated: usize,
    pub periodic: usize,
    pub fraction_periodic: f64,
    pub max_line_residual: f64,
    pub max_point_residual: f64,
    /// Minimum over evaluated cells of the larger point residual.
    pub min_point_residual: f64,
    pub failures: Vec<ScanFailure>,
}

/// Chord lattice `t = i/(grid + 1)`, `i = 1..=grid`, on both starting edges.
pub fn reflectivity_scan<S: Scalar>(table: &Table<S>, m: usize, grid: usize) -> Result<ScanReport> {
    if grid < 2 {
        return Err(Error::InvalidGrid);
    }
    require_multiple(table.len(), m)?;
    let denom = grid as i64 + 1;
    let cells: Vec<(usize, usize)> = (1..=grid).flat_map(|i| (1..=grid).map(move |j| (i, j))).collect();
    let outcomes: Vec<(usize, usize, Result<PeriodReport>)> = cells
        .par_iter()
        .map(|&(i, j)| {
            let chord = ChordParam::new(S::from_ratio(i as i64, denom), S::from_ratio(j as i64, denom));
            let report = chord.and_then(|c| check_periodic(table, &c, m));
            (i, j, report)
        })
        .collect();

    let mut report = ScanReport {
        period: m,
        grid,
        evaluated: 0,
        periodic: 0,
        fraction_periodic: 0.0,
        max_line_residual: 0.0,
        max_point_residual: 0.0,
        min_point_residual: f64::INFINITY,
        failures: Vec::new(),
    };
    for (i, j, outcome) in outcomes {
        let fail = |reason: String| ScanFailure {
            t0_index: i,
            t1_index: j,
            reason,
        };
        match outcome {
            Err(err) => report.failures.push(fail(err.to_string())),
            Ok(r) if r.degeneracy.is_some() => {
                let why = r.degeneracy.map(|t| t.reason.to_string()).unwrap_or_default();
                report.failures.push(fail(why));
            }
            Ok(r) => {
                report.evaluated += 1;
                let point = r.point_residuals.0.max(r.point_residuals.1);
                report.max_line_residual = report.max_line_residual.max(r.line_residual);
                report.max_point_residual = report.max_point_residual.max(point);
                report.min_point_residual = report.min_point_residual.min(point);
                if r.is_periodic {
                    report.periodic += 1;
                } else {
                    report
                        .failures
                        .push(fail(format!("not periodic (line residual {:e})", r.line_residual)));
                }
            }
        }
    }
    if report.evaluated > 0 {
        report.fraction_periodic = report.periodic as f64 / report.evaluated as f64;
    }
    Ok(report)
}

/// Checks that `M_{m−r−2}M_{m−r−1}` and `M_{m+r}M_{m+r+1}` cut the great
/// diagonal `P_m P_{m+n/2}` of an even centrally-projective polygon at the
/// same point.
pub fn diagonal_concurrency_check<S: Scalar>(table: &Table<S>, orbit: &Orbit<S>, m: usize, r: usize) -> Result<bool> {
    let n = table.len();
    if table.family() != Family::CentrallyProjective || !n.is_multiple_of(2) {
        return Err(Error::WrongFamily);
    }
    let low = m as i64 - r as i64 - 2;
    if low < 0 {
        return Err(Error::IndexOutOfRange { index: low });
    }
    let high = m + r + 1;
    if high >= orbit.points().len() {
        return Err(Error::IndexOutOfRange { index: high as i64 });
    }
    let low = low as usize;
    let verts = table.vertices();
    let diagonal = join(&verts[m % n], &verts[(m + n / 2) % n])?;
    let before = orbit.chord(low).ok_or(Error::ChordDegenerate)?;
    let after = orbit.chord(m + r).ok_or(Error::ChordDegenerate)?;
    Ok(meet(&before, &diagonal)? == meet(&after, &diagonal)?)
}
