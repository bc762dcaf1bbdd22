//! Commands shared by the CLI and the HTTP service.
//!
//! Every command resolves a numeric mode, builds the scene over the matching
//! scalar and serializes results with exact values as strings.

use pblab_core::{
    check_periodic, dual_orbit, dual_polygon, midpoint, orbit, period_report, reflectivity_scan, Orbit, PeriodReport,
    ProjPoint, Scalar, ScanReport, Termination,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::LabError;
use crate::scene::{format_float, prepare, Built, NumericMode, Prepared, ScalarField, Scene};

pub type Triple = [String; 3];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub index: usize,
    pub edge: usize,
    pub point: Triple,
    /// `[x, y]`, absent for points at infinity.
    pub affine: Option<[String; 2]>,
    pub on_segment: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TerminationOut {
    pub at_index: usize,
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitOut {
    pub points: Vec<OrbitPoint>,
    pub termination: Option<TerminationOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodOut {
    pub period_tested: usize,
    pub is_periodic: bool,
    pub line_residual: String,
    pub point_residuals: [String; 2],
    pub degeneracy: Option<TerminationOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanFailureOut {
    pub t0_index: usize,
    pub t1_index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOut {
    pub numeric_mode: NumericMode,
    pub scalar_field: ScalarField,
    pub period: usize,
    pub grid: usize,
    pub evaluated: usize,
    pub periodic: usize,
    pub fraction_periodic: f64,
    pub max_line_residual: String,
    pub max_point_residual: String,
    pub min_point_residual: String,
    pub failures: Vec<ScanFailureOut>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualOut {
    pub center: Triple,
    /// `Q_k`, the pole of edge `k`.
    pub dual_vertices: Vec<Triple>,
    /// Absolute index of the first entry of `points`.
    pub start_index: usize,
    /// `N_k`, the pole of chord `M_{k-1}M_k`.
    pub points: Vec<Triple>,
    pub through_center: Vec<usize>,
    pub fixed_hits: Vec<usize>,
    pub period: Option<usize>,
    /// Whether `Q_k` is the midpoint of `N_k N_{k+1}` at every finite step.
    pub midpoint_law: bool,
    /// `Σ (−1)^k Q_k` for odd `n`.
    pub closure_sum: Option<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableOut {
    pub family: String,
    pub vertices: Vec<Triple>,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub numeric_mode: NumericMode,
    pub scalar_field: ScalarField,
    pub table: TableOut,
    pub orbit: OrbitOut,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<PeriodOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualOut>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbOut {
    pub vertex: usize,
    pub radius: String,
    pub samples: usize,
    pub period: usize,
    pub seed: u64,
    pub periodic: usize,
    /// Samples whose perturbed table or orbit was degenerate.
    pub invalid: usize,
    pub fraction_periodic: f64,
    pub min_line_residual: String,
    pub max_line_residual: String,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbParams {
    pub vertex: usize,
    pub radius: f64,
    pub samples: usize,
    pub period: Option<usize>,
    pub seed: u64,
}

pub fn triple<S: Scalar>(p: &ProjPoint<S>) -> Triple {
    p.coords().clone().map(|c| c.to_string())
}

pub fn affine<S: Scalar>(p: &ProjPoint<S>) -> Option<[String; 2]> {
    p.to_affine().map(|(x, y)| [x.to_string(), y.to_string()])
}

/// `"0"`, `"inf"` or scientific notation with shortest round-trip digits.
pub fn format_residual(value: f64) -> String {
    if value == 0.0 {
        "0".into()
    } else if value.is_infinite() {
        "inf".into()
    } else {
        format!("{value:e}")
    }
}

fn termination_out(t: &Termination) -> TerminationOut {
    let body = LabError::Validation(t.reason.clone()).body();
    TerminationOut {
        at_index: t.at_index,
        kind: body.kind.unwrap_or_default(),
        message: body.message,
    }
}

fn period_out(report: &PeriodReport) -> PeriodOut {
    PeriodOut {
        period_tested: report.period_tested,
        is_periodic: report.is_periodic,
        line_residual: format_residual(report.line_residual),
        point_residuals: [
            format_residual(report.point_residuals.0),
            format_residual(report.point_residuals.1),
        ],
        degeneracy: report.degeneracy.as_ref().map(termination_out),
    }
}

fn orbit_out<S: Scalar>(orbit: &Orbit<S>) -> OrbitOut {
    OrbitOut {
        points: orbit
            .points()
            .iter()
            .enumerate()
            .map(|(k, p)| OrbitPoint {
                index: k,
                edge: orbit.edge_of(k),
                point: triple(p),
                affine: affine(p),
                on_segment: orbit.on_segment()[k],
            })
            .collect(),
        termination: orbit.termination().map(termination_out),
    }
}

fn orbit_diagnostics<S: Scalar>(orbit: &Orbit<S>) -> Vec<String> {
    let mut notes = Vec::new();
    let off: Vec<usize> = (0..orbit.points().len()).filter(|&k| !orbit.on_segment()[k]).collect();
    if !off.is_empty() {
        notes.push(format!("points outside their edge segment: {off:?}"));
    }
    let infinite: Vec<usize> = (0..orbit.points().len())
        .filter(|&k| !orbit.points()[k].is_finite())
        .collect();
    if !infinite.is_empty() {
        notes.push(format!("points at infinity: {infinite:?}"));
    }
    if let Some(t) = orbit.termination() {
        notes.push(format!("orbit stopped at index {}: {}", t.at_index, t.reason));
    }
    notes
}

fn table_out<S: Scalar>(built: &Built<S>) -> TableOut {
    TableOut {
        family: built.table.family().as_str().to_string(),
        vertices: built.table.vertices().iter().map(triple).collect(),
        edges: built.table.len(),
    }
}

fn resolve(scene: &Scene, mode: Option<NumericMode>) -> NumericMode {
    mode.or(scene.numeric_mode).unwrap_or(NumericMode::Exact)
}

/// A computation that can run over any scalar.
trait Task {
    type Output;
    fn run<S: Scalar>(&self, built: &Built<S>, mode: NumericMode, field: ScalarField)
        -> Result<Self::Output, LabError>;
}

fn dispatch<T: Task>(scene: &Scene, mode: NumericMode, task: &T) -> Result<T::Output, LabError> {
    let prepared = prepare(scene, mode)?;
    let field = prepared.field();
    match &prepared {
        Prepared::Rational(b) => task.run(b, mode, field),
        Prepared::QSqrt3(b) => task.run(b, mode, field),
        Prepared::F64(b) => task.run(b, mode, field),
    }
}

struct OrbitTask {
    steps: usize,
    period: Option<usize>,
    dual: bool,
}

impl Task for OrbitTask {
    type Output = RunResult;

    fn run<S: Scalar>(&self, built: &Built<S>, mode: NumericMode, field: ScalarField) -> Result<RunResult, LabError> {
        if self.steps == 0 {
            return Err(pblab_core::Error::InvalidSteps.into());
        }
        let orbit = orbit(&built.table, &built.chord, self.steps)?;
        let mut diagnostics = orbit_diagnostics(&orbit);
        let period = self
            .period
            .filter(|&m| m > 0 && m % built.table.len() == 0 && m < self.steps)
            .map(|m| period_out(&period_report(&orbit, m)));
        let dual = if self.dual {
            Some(dual_out(built, &orbit, &mut diagnostics)?)
        } else {
            None
        };
        Ok(RunResult {
            numeric_mode: mode,
            scalar_field: field,
            table: table_out(built),
            orbit: orbit_out(&orbit),
            period,
            dual,
            diagnostics,
        })
    }
}

fn dual_out<S: Scalar>(built: &Built<S>, orbit: &Orbit<S>, notes: &mut Vec<String>) -> Result<DualOut, LabError> {
    let dual = dual_polygon(&built.table)?;
    let outer = dual_orbit(&dual, orbit)?;
    let n = built.table.len();
    let mut midpoint_law = true;
    for k in outer.start_index()..outer.start_index() + outer.points().len().saturating_sub(1) {
        let (a, b) = (outer.point(k).unwrap(), outer.point(k + 1).unwrap());
        if !a.is_finite() || !b.is_finite() {
            continue;
        }
        if midpoint(a, b)? != *dual.dual_vertex(k) {
            midpoint_law = false;
        }
    }
    if !outer.through_center().is_empty() {
        notes.push(format!("chords through the center: {:?}", outer.through_center()));
    }
    let closure_sum = if n % 2 == 1 {
        dual.alternating_closure_sum()
            .ok()
            .map(|(x, y)| [x.to_string(), y.to_string()])
    } else {
        None
    };
    Ok(DualOut {
        center: triple(dual.center()),
        dual_vertices: dual.dual_vertices().iter().map(triple).collect(),
        start_index: outer.start_index(),
        points: outer.points().iter().map(triple).collect(),
        through_center: outer.through_center().to_vec(),
        fixed_hits: outer.fixed_hits().to_vec(),
        period: outer.period(),
        midpoint_law,
        closure_sum,
    })
}

struct VerifyTask {
    period: usize,
}

impl Task for VerifyTask {
    type Output = PeriodOut;

    fn run<S: Scalar>(&self, built: &Built<S>, _: NumericMode, _: ScalarField) -> Result<PeriodOut, LabError> {
        Ok(period_out(&check_periodic(&built.table, &built.chord, self.period)?))
    }
}

struct ScanTask {
    period: usize,
    grid: usize,
}

impl Task for ScanTask {
    type Output = ScanOut;

    fn run<S: Scalar>(&self, built: &Built<S>, mode: NumericMode, field: ScalarField) -> Result<ScanOut, LabError> {
        let report: ScanReport = reflectivity_scan(&built.table, self.period, self.grid)?;
        Ok(ScanOut {
            numeric_mode: mode,
            scalar_field: field,
            period: report.period,
            grid: report.grid,
            evaluated: report.evaluated,
            periodic: report.periodic,
            fraction_periodic: report.fraction_periodic,
            max_line_residual: format_residual(report.max_line_residual),
            max_point_residual: format_residual(report.max_point_residual),
            min_point_residual: format_residual(report.min_point_residual),
            failures: report
                .failures
                .into_iter()
                .map(|f| ScanFailureOut {
                    t0_index: f.t0_index,
                    t1_index: f.t1_index,
                    reason: f.reason,
                })
                .collect(),
        })
    }
}

/// Iterates the scene's chord; `steps` defaults to the scene's `run.steps`.
pub fn run_orbit(scene: &Scene, steps: Option<usize>, mode: Option<NumericMode>) -> Result<RunResult, LabError> {
    let task = OrbitTask {
        steps: steps.unwrap_or_else(|| scene.default_steps()),
        period: Some(scene.default_period()),
        dual: false,
    };
    dispatch(scene, resolve(scene, mode), &task)
}

/// Orbit plus its polar dual (the outer orbit about the origin).
pub fn run_dualize(scene: &Scene, steps: Option<usize>, mode: Option<NumericMode>) -> Result<RunResult, LabError> {
    let task = OrbitTask {
        steps: steps.unwrap_or_else(|| scene.default_steps()),
        period: Some(scene.default_period()),
        dual: true,
    };
    dispatch(scene, resolve(scene, mode), &task)
}

pub fn run_verify(scene: &Scene, period: Option<usize>, mode: Option<NumericMode>) -> Result<PeriodOut, LabError> {
    let task = VerifyTask {
        period: period.unwrap_or_else(|| scene.default_period()),
    };
    dispatch(scene, resolve(scene, mode), &task)
}

pub fn run_scan(
    scene: &Scene,
    period: Option<usize>,
    grid: Option<usize>,
    mode: Option<NumericMode>,
) -> Result<ScanOut, LabError> {
    let task = ScanTask {
        period: period.unwrap_or_else(|| scene.default_period()),
        grid: grid.unwrap_or_else(|| scene.default_grid()),
    };
    dispatch(scene, resolve(scene, mode), &task)
}

/// Displaces one vertex by `radius` in seeded random directions and counts
/// how many perturbed tables keep the scene's chord periodic. Always float.
pub fn run_perturb(scene: &Scene, params: PerturbParams) -> Result<PerturbOut, LabError> {
    let Prepared::F64(built) = prepare(scene, NumericMode::Float)? else {
        unreachable!("float mode always builds over f64");
    };
    let period = params.period.unwrap_or_else(|| scene.default_period());
    if params.samples == 0 {
        return Err(pblab_core::Error::InvalidSteps.into());
    }
    let base = built.table.vertices().to_vec();
    let (x, y) = base
        .get(params.vertex)
        .ok_or(pblab_core::Error::IndexOutOfRange {
            index: params.vertex as i64,
        })?
        .to_affine()
        .ok_or(pblab_core::Error::InfinitePoint)?;
    // family support is checked once up front so it surfaces as an error
    built.table.with_vertices(base.clone())?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let (mut periodic, mut invalid) = (0, 0);
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..params.samples {
        let angle = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut vertices = base.clone();
        vertices[params.vertex] = ProjPoint::affine(x + params.radius * angle.cos(), y + params.radius * angle.sin());
        let report = built
            .table
            .with_vertices(vertices)
            .and_then(|table| check_periodic(&table, &built.chord, period));
        match report {
            Ok(r) if r.degeneracy.is_none() => {
                periodic += usize::from(r.is_periodic);
                lo = lo.min(r.line_residual);
                hi = hi.max(r.line_residual);
            }
            _ => invalid += 1,
        }
    }
    Ok(PerturbOut {
        vertex: params.vertex,
        radius: format_float(params.radius),
        samples: params.samples,
        period,
        seed: params.seed,
        periodic,
        invalid,
        fraction_periodic: periodic as f64 / params.samples as f64,
        min_line_residual: format_residual(if lo.is_finite() { lo } else { 0.0 }),
        max_line_residual: format_residual(hi),
    })
}
