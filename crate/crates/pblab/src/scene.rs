//! Scene documents: a table, a starting chord and run parameters.
//!
//! Scalars are written as strings (`"1/2"`, `"-3"`, `"1/2*sqrt3"`, `"0.25"`);
//! plain JSON numbers are accepted on input. Parsing rewrites every scalar
//! into canonical form for the scene's numeric mode, so serializing a parsed
//! scene and parsing it again is a fixed point.

use std::fmt;

use pblab_core::{
    centrally_projective, converging_mirrors, regular_polygon, right_spherical, ChordParam, Edge, FieldRule, ProjPoint,
    QSqrt3, Rational, Scalar, Table,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::LabError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericMode {
    Exact,
    Float,
}

impl NumericMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NumericMode::Exact => "exact",
            NumericMode::Float => "float",
        }
    }
}

/// A scalar kept in its textual form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "NumRepr", into = "String")]
pub struct Num(pub String);

#[derive(Deserialize)]
#[serde(untagged)]
enum NumRepr {
    Text(String),
    Number(serde_json::Number),
}

impl From<NumRepr> for Num {
    fn from(repr: NumRepr) -> Self {
        match repr {
            NumRepr::Text(text) => Num(text),
            NumRepr::Number(number) => Num(number.to_string()),
        }
    }
}

impl From<Num> for String {
    fn from(num: Num) -> Self {
        num.0
    }
}

impl From<&str> for Num {
    fn from(text: &str) -> Self {
        Num(text.to_string())
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Affine pair `[x, y]` or homogeneous triple `[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Num>", into = "Vec<Num>")]
pub struct Coord(Vec<Num>);

impl TryFrom<Vec<Num>> for Coord {
    type Error = String;

    fn try_from(values: Vec<Num>) -> Result<Self, Self::Error> {
        match values.len() {
            2 | 3 => Ok(Coord(values)),
            n => Err(format!("expected 2 or 3 coordinates, got {n}")),
        }
    }
}

impl From<Coord> for Vec<Num> {
    fn from(coord: Coord) -> Self {
        coord.0
    }
}

impl Coord {
    pub fn affine(x: impl Into<Num>, y: impl Into<Num>) -> Self {
        Coord(vec![x.into(), y.into()])
    }

    pub fn values(&self) -> &[Num] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldSpec {
    Central(Coord),
    Apex(Coord),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub start: Coord,
    pub end: Coord,
    pub field: FieldSpec,
}

fn default_radius() -> Num {
    Num("1".into())
}

fn default_offset() -> Num {
    Num("0".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TableSpec {
    RightSpherical { vertices: [Coord; 3] },
    CentrallyProjective { origin: Coord, vertices: Vec<Coord> },
    RegularPolygon { n: usize, radius: Num },
    ConvergingMirrors { gap: Num, offset: Num },
    Custom { edges: Vec<EdgeSpec> },
}

pub const FAMILIES: [&str; 5] = [
    "right_spherical",
    "centrally_projective",
    "regular_polygon",
    "converging_mirrors",
    "custom",
];

// Per-family bodies, decoded after the `family` tag is read so that error
// paths reach inside the table.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RightSphericalBody {
    vertices: [Coord; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CentralBody {
    origin: Coord,
    vertices: Vec<Coord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RegularBody {
    n: usize,
    #[serde(default = "default_radius")]
    radius: Num,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MirrorsBody {
    gap: Num,
    #[serde(default = "default_offset")]
    offset: Num,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomBody {
    edges: Vec<EdgeSpec>,
}

fn decode<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, LabError> {
    serde_path_to_error::deserialize(value).map_err(|err| LabError::schema_from(&err, prefix))
}

fn table_from_value(mut value: Value) -> Result<TableSpec, LabError> {
    let schema = |path: &str, reason: String| LabError::Schema {
        path: path.to_string(),
        reason,
    };
    let family = match value.as_object_mut().map(|o| o.remove("family")) {
        None => return Err(schema("table", "expected an object".into())),
        Some(None) => return Err(schema("table", "missing field `family`".into())),
        Some(Some(Value::String(family))) => family,
        Some(Some(_)) => return Err(schema("table.family", "expected a string".into())),
    };
    Ok(match family.as_str() {
        "right_spherical" => {
            let body: RightSphericalBody = decode(value, "table")?;
            TableSpec::RightSpherical {
                vertices: body.vertices,
            }
        }
        "centrally_projective" => {
            let body: CentralBody = decode(value, "table")?;
            TableSpec::CentrallyProjective {
                origin: body.origin,
                vertices: body.vertices,
            }
        }
        "regular_polygon" => {
            let body: RegularBody = decode(value, "table")?;
            TableSpec::RegularPolygon {
                n: body.n,
                radius: body.radius,
            }
        }
        "converging_mirrors" => {
            let body: MirrorsBody = decode(value, "table")?;
            TableSpec::ConvergingMirrors {
                gap: body.gap,
                offset: body.offset,
            }
        }
        "custom" => {
            let body: CustomBody = decode(value, "table")?;
            TableSpec::Custom { edges: body.edges }
        }
        other => {
            return Err(schema(
                "table.family",
                format!("unknown family `{other}`, expected one of {}", FAMILIES.join(", ")),
            ))
        }
    })
}

impl TableSpec {
    pub fn family(&self) -> &'static str {
        match self {
            TableSpec::RightSpherical { .. } => "right_spherical",
            TableSpec::CentrallyProjective { .. } => "centrally_projective",
            TableSpec::RegularPolygon { .. } => "regular_polygon",
            TableSpec::ConvergingMirrors { .. } => "converging_mirrors",
            TableSpec::Custom { .. } => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChordSpec {
    pub t0: Num,
    pub t1: Num,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scene {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_mode: Option<NumericMode>,
    pub table: TableSpec,
    pub chord: ChordSpec,
    #[serde(default)]
    pub run: RunSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    schema: u32,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    numeric_mode: Option<NumericMode>,
    table: Value,
    chord: ChordSpec,
    #[serde(default)]
    run: RunSpec,
}

impl Scene {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Period tested when neither the caller nor the scene names one.
    pub fn default_period(&self) -> usize {
        self.run.period.unwrap_or(match &self.table {
            TableSpec::RightSpherical { .. } => 3,
            TableSpec::ConvergingMirrors { .. } => 4,
            TableSpec::CentrallyProjective { vertices, .. } => vertices.len(),
            TableSpec::RegularPolygon { n, .. } => *n,
            TableSpec::Custom { edges } => edges.len(),
        })
    }

    pub fn default_steps(&self) -> usize {
        self.run.steps.unwrap_or(self.default_period() + 1)
    }

    pub fn default_grid(&self) -> usize {
        self.run.grid.unwrap_or(20)
    }

    fn for_each_num(&mut self, mut f: impl FnMut(&str, &mut Num) -> Result<(), LabError>) -> Result<(), LabError> {
        let coord = |path: String, c: &mut Coord, f: &mut dyn FnMut(&str, &mut Num) -> Result<(), LabError>| {
            for (i, v) in c.0.iter_mut().enumerate() {
                f(&format!("{path}[{i}]"), v)?;
            }
            Ok::<(), LabError>(())
        };
        match &mut self.table {
            TableSpec::RightSpherical { vertices } => {
                for (i, v) in vertices.iter_mut().enumerate() {
                    coord(format!("table.vertices[{i}]"), v, &mut f)?;
                }
            }
            TableSpec::CentrallyProjective { origin, vertices } => {
                coord("table.origin".into(), origin, &mut f)?;
                for (i, v) in vertices.iter_mut().enumerate() {
                    coord(format!("table.vertices[{i}]"), v, &mut f)?;
                }
            }
            TableSpec::RegularPolygon { radius, .. } => f("table.radius", radius)?,
            TableSpec::ConvergingMirrors { gap, offset } => {
                f("table.gap", gap)?;
                f("table.offset", offset)?;
            }
            TableSpec::Custom { edges } => {
                for (i, e) in edges.iter_mut().enumerate() {
                    coord(format!("table.edges[{i}].start"), &mut e.start, &mut f)?;
                    coord(format!("table.edges[{i}].end"), &mut e.end, &mut f)?;
                    let (name, c) = match &mut e.field {
                        FieldSpec::Central(c) => ("central", c),
                        FieldSpec::Apex(c) => ("apex", c),
                    };
                    coord(format!("table.edges[{i}].field.{name}"), c, &mut f)?;
                }
            }
        }
        f("chord.t0", &mut self.chord.t0)?;
        f("chord.t1", &mut self.chord.t1)
    }

    /// Rewrites scalars to the canonical spelling of `mode`.
    fn canonicalize(&mut self) -> Result<(), LabError> {
        let mode = self.numeric_mode.unwrap_or(NumericMode::Exact);
        self.for_each_num(|path, num| {
            let canonical = match mode {
                NumericMode::Exact => QSqrt3::parse(&num.0).map(|v| v.to_string()),
                NumericMode::Float => f64::parse(&num.0).map(format_float),
            };
            num.0 = canonical.map_err(|err| LabError::Schema {
                path: path.to_string(),
                reason: err.to_string(),
            })?;
            Ok(())
        })
    }
}

/// Shortest round-trip decimal.
pub fn format_float(value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value}")
}

pub fn parse_scene(text: &[u8]) -> Result<Scene, LabError> {
    let de = &mut serde_json::Deserializer::from_slice(text);
    let raw: RawScene = serde_path_to_error::deserialize(de).map_err(|err| LabError::schema_from(&err, ""))?;
    finish(raw)
}

/// Parses a scene nested inside a larger document; `prefix` is prepended to
/// error paths.
pub fn parse_scene_value(value: Value, prefix: &str) -> Result<Scene, LabError> {
    let raw: RawScene = decode(value, prefix)?;
    finish(raw).map_err(|err| match err {
        LabError::Schema { path, reason } => LabError::Schema {
            path: join_path(prefix, &path),
            reason,
        },
        other => other,
    })
}

pub(crate) fn join_path(prefix: &str, path: &str) -> String {
    match (prefix.is_empty(), path.is_empty() || path == ".") {
        (true, _) => path.to_string(),
        (false, true) => prefix.to_string(),
        (false, false) => format!("{prefix}.{path}"),
    }
}

fn finish(raw: RawScene) -> Result<Scene, LabError> {
    if raw.schema != SCHEMA_VERSION {
        return Err(LabError::Schema {
            path: "schema".into(),
            reason: format!("unsupported schema version {}, expected {SCHEMA_VERSION}", raw.schema),
        });
    }
    let mut scene = Scene {
        schema: raw.schema,
        name: raw.name,
        numeric_mode: raw.numeric_mode,
        table: table_from_value(raw.table)?,
        chord: raw.chord,
        run: raw.run,
    };
    scene.canonicalize()?;
    prepare(&scene, scene.numeric_mode.unwrap_or(NumericMode::Exact))?;
    Ok(scene)
}

/// Which scalar type a scene is evaluated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarField {
    Rational,
    QSqrt3,
    F64,
}

/// A validated table and chord over a concrete scalar.
#[derive(Clone, Debug)]
pub struct Built<S> {
    pub table: Table<S>,
    pub chord: ChordParam<S>,
}

#[derive(Clone, Debug)]
pub enum Prepared {
    Rational(Built<Rational>),
    QSqrt3(Built<QSqrt3>),
    F64(Built<f64>),
}

impl Prepared {
    pub fn field(&self) -> ScalarField {
        match self {
            Prepared::Rational(_) => ScalarField::Rational,
            Prepared::QSqrt3(_) => ScalarField::QSqrt3,
            Prepared::F64(_) => ScalarField::F64,
        }
    }
}

/// Builds the scene's table and chord. Exact mode uses rationals when they
/// suffice and Q(√3) otherwise.
pub fn prepare(scene: &Scene, mode: NumericMode) -> Result<Prepared, LabError> {
    match mode {
        NumericMode::Float => Ok(Prepared::F64(build(scene)?)),
        NumericMode::Exact => match build::<Rational>(scene) {
            Ok(built) => Ok(Prepared::Rational(built)),
            Err(pblab_core::Error::NotExactlyRepresentable { .. } | pblab_core::Error::ParseScalar { .. }) => {
                Ok(Prepared::QSqrt3(build(scene)?))
            }
            Err(err) => Err(err.into()),
        },
    }
}

pub fn build<S: Scalar>(scene: &Scene) -> pblab_core::Result<Built<S>> {
    let table = build_table(&scene.table)?;
    let chord = ChordParam::new(S::parse(&scene.chord.t0.0)?, S::parse(&scene.chord.t1.0)?)?;
    chord.endpoints(&table)?;
    Ok(Built { table, chord })
}

pub fn build_point<S: Scalar>(coord: &Coord) -> pblab_core::Result<ProjPoint<S>> {
    let v = coord
        .0
        .iter()
        .map(|n| S::parse(&n.0))
        .collect::<pblab_core::Result<Vec<S>>>()?;
    match <[S; 2]>::try_from(v.clone()) {
        Ok([x, y]) => Ok(ProjPoint::affine(x, y)),
        Err(_) => ProjPoint::from_coords(v.try_into().expect("coordinate arity checked on input")),
    }
}

pub fn build_table<S: Scalar>(spec: &TableSpec) -> pblab_core::Result<Table<S>> {
    match spec {
        TableSpec::RightSpherical { vertices } => {
            let [a, b, c] = vertices;
            right_spherical(build_point(a)?, build_point(b)?, build_point(c)?)
        }
        TableSpec::CentrallyProjective { origin, vertices } => {
            let vertices = vertices.iter().map(build_point).collect::<pblab_core::Result<_>>()?;
            centrally_projective(build_point(origin)?, vertices)
        }
        TableSpec::RegularPolygon { n, radius } => regular_polygon(*n, &S::parse(&radius.0)?),
        TableSpec::ConvergingMirrors { gap, offset } => converging_mirrors(S::parse(&gap.0)?, S::parse(&offset.0)?),
        TableSpec::Custom { edges } => {
            let edges = edges
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let field = match &e.field {
                        FieldSpec::Central(c) => FieldRule::Central {
                            origin: build_point(c)?,
                        },
                        FieldSpec::Apex(c) => FieldRule::Apex { apex: build_point(c)? },
                    };
                    Edge::new(i, build_point(&e.start)?, build_point(&e.end)?, field)
                })
                .collect::<pblab_core::Result<_>>()?;
            Table::custom(edges)
        }
    }
}
