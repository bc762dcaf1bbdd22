mod common;

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::{pblab, scene_path};
use pblab::service::router;

fn scene_json(name: &str) -> Value {
    serde_json::from_slice(&std::fs::read(scene_path(name)).unwrap()).unwrap()
}

async fn call(method: Method, uri: &str, body: Option<String>) -> (StatusCode, Value, axum::http::HeaderMap) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header(header::CONTENT_TYPE, "application/json")
        .header(header::ORIGIN, "http://localhost:5173")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let response = router().oneshot(request).await.unwrap();
    let status = response.status();
    let headers = response.headers().clone();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value, headers)
}

async fn post(uri: &str, body: Value) -> (StatusCode, Value) {
    let (status, value, _) = call(Method::POST, uri, Some(body.to_string())).await;
    (status, value)
}

#[tokio::test]
async fn health_reports_ok_with_cors() {
    let (status, body, headers) = call(Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"status": "ok"}));
    assert!(headers.contains_key(header::ACCESS_CONTROL_ALLOW_ORIGIN));
}

#[tokio::test]
async fn verify_right_spherical_is_periodic() {
    let (status, body) = post("/api/verify", json!({"scene": scene_json("right_spherical"), "m": 3})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["is_periodic"], true);
    assert_eq!(body["line_residual"], "0");
}

#[tokio::test]
async fn malformed_scenes_are_bad_requests() {
    let (status, body) = post(
        "/api/orbit",
        json!({"scene": {"schema": 1, "table": {}, "chord": {"t0": "1/2", "t1": "1/2"}}, "steps": 3}),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "schema");
    assert_eq!(body["path"], "scene.table");

    let (status, _, _) = call(Method::POST, "/api/orbit", Some("{\"scene\": {\"sch".into())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let mut scene = scene_json("square");
    scene["chord"]["t1"] = json!("two");
    let (status, body) = post("/api/verify", json!({"scene": scene})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["path"], "scene.chord.t1");
}

#[tokio::test]
async fn invalid_tables_are_unprocessable() {
    let (status, body) = post("/api/orbit", json!({"scene": scene_json("error_origin_on_edge")})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "validation");
    assert_eq!(body["kind"], "OriginOnEdge");

    let (status, body) = post("/api/verify", json!({"scene": scene_json("square"), "m": 3})).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["kind"], "NotMultipleOfN");
}

#[tokio::test]
async fn orbit_payload_matches_the_cli() {
    let (status, body) = post("/api/orbit", json!({"scene": scene_json("pentagon"), "steps": 12})).await;
    assert_eq!(status, StatusCode::OK);
    let out = pblab(&["orbit", scene_path("pentagon").to_str().unwrap(), "--steps", "12"]);
    let cli: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(body, cli);
}

#[tokio::test]
async fn scan_and_dualize_payloads_match_the_cli() {
    let (status, body) = post("/api/scan", json!({"scene": scene_json("square"), "m": 4, "grid": 6})).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["fraction_periodic"], 1.0);
    let out = pblab(&[
        "scan",
        scene_path("square").to_str().unwrap(),
        "--period",
        "4",
        "--grid",
        "6",
    ]);
    assert_eq!(body, serde_json::from_slice::<Value>(&out.stdout).unwrap());

    let (status, body) = post("/api/dualize", json!({"scene": scene_json("triangle_central")})).await;
    assert_eq!(status, StatusCode::OK);
    let out = pblab(&["dualize", scene_path("triangle_central").to_str().unwrap()]);
    assert_eq!(body, serde_json::from_slice::<Value>(&out.stdout).unwrap());
    assert_eq!(body["dual"]["midpoint_law"], true);
}

#[tokio::test]
async fn unknown_request_fields_are_rejected() {
    let (status, body) = post("/api/verify", json!({"scene": scene_json("square"), "period": 4})).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"], "schema");
}

#[tokio::test(flavor = "multi_thread", worker_threads = 2)]
async fn serves_over_loopback_and_handles_concurrent_requests() {
    use tokio::io::{AsyncReadExt, AsyncWriteExt};

    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, router()).await.unwrap() });

    let body = json!({"scene": scene_json("hexagon"), "m": 6}).to_string();
    let mut tasks = Vec::new();
    for _ in 0..4 {
        let body = body.clone();
        tasks.push(tokio::spawn(async move {
            let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
            let request = format!(
                "POST /api/verify HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(request.as_bytes()).await.unwrap();
            let mut response = String::new();
            stream.read_to_string(&mut response).await.unwrap();
            response
        }));
    }
    for task in tasks {
        let response = task.await.unwrap();
        assert!(response.starts_with("HTTP/1.1 200"), "{response}");
        let json_start = response.find("\r\n\r\n").unwrap() + 4;
        let payload: Value = serde_json::from_str(&response[json_start..]).unwrap();
        assert_eq!(payload["is_periodic"], true);
    }
}
