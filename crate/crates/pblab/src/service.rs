//! Stateless JSON-over-HTTP front end for the companion editor.

use std::net::{Ipv4Addr, SocketAddr};

use axum::body::Bytes;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::error::LabError;
use crate::run::{run_dualize, run_orbit, run_scan, run_verify};
use crate::scene::{parse_scene_value, Scene};

pub const DEFAULT_PORT: u16 = 8173;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitRequest {
    scene: serde_json::Value,
    steps: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyRequest {
    scene: serde_json::Value,
    m: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScanRequest {
    scene: serde_json::Value,
    m: Option<usize>,
    grid: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DualizeRequest {
    scene: serde_json::Value,
    steps: Option<usize>,
}

struct ApiError(LabError);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.0 {
            LabError::Schema { .. } => StatusCode::BAD_REQUEST,
            LabError::Validation(_) => StatusCode::UNPROCESSABLE_ENTITY,
        };
        (status, Json(self.0.body())).into_response()
    }
}

fn decode<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let de = &mut serde_json::Deserializer::from_slice(body);
    serde_path_to_error::deserialize(de).map_err(|err| ApiError(LabError::schema_from(&err, "")))
}

/// Runs `work` off the async workers; scans can take a while.
async fn compute<T, F>(scene: serde_json::Value, work: F) -> Result<Json<T>, ApiError>
where
    T: Serialize + Send + 'static,
    F: FnOnce(&Scene) -> Result<T, LabError> + Send + 'static,
{
    let result = tokio::task::spawn_blocking(move || {
        let scene = parse_scene_value(scene, "scene")?;
        work(&scene)
    })
    .await
    .expect("compute task panicked");
    result.map(Json).map_err(ApiError)
}

async fn health() -> Json<serde_json::Value> {
    Json(serde_json::json!({ "status": "ok" }))
}

async fn orbit(body: Bytes) -> Response {
    let outcome = async {
        let req: OrbitRequest = decode(&body)?;
        compute(req.scene, move |s| run_orbit(s, req.steps, None)).await
    };
    outcome.await.into_response()
}

async fn verify(body: Bytes) -> Response {
    let outcome = async {
        let req: VerifyRequest = decode(&body)?;
        compute(req.scene, move |s| run_verify(s, req.m, None)).await
    };
    outcome.await.into_response()
}

async fn scan(body: Bytes) -> Response {
    let outcome = async {
        let req: ScanRequest = decode(&body)?;
        compute(req.scene, move |s| run_scan(s, req.m, req.grid, None)).await
    };
    outcome.await.into_response()
}

async fn dualize(body: Bytes) -> Response {
    let outcome = async {
        let req: DualizeRequest = decode(&body)?;
        compute(req.scene, move |s| run_dualize(s, req.steps, None)).await
    };
    outcome.await.into_response()
}

pub fn router() -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/orbit", post(orbit))
        .route("/api/verify", post(verify))
        .route("/api/scan", post(scan))
        .route("/api/dualize", post(dualize))
        .layer(CorsLayer::permissive())
}

/// Binds the loopback interface and serves until the process exits.
pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(SocketAddr::from((Ipv4Addr::LOCALHOST, port))).await?;
    eprintln!("pblab listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router()).await
}
