use std::any::Any;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use nliq_core::Engine;
use serde::Deserialize;
use serde_json::json;
use tower_http::catch_panic::CatchPanicLayer;
use tower_http::cors::CorsLayer;

#[derive(Debug, Deserialize)]
struct QueryRequest {
    question: String,
}

pub fn router(engine: Arc<Engine>) -> Router {
    Router::new()
        .route("/api/query", post(query))
        .route("/api/schema", get(schema))
        .route("/healthz", get(|| async { "ok" }))
        .layer(CatchPanicLayer::custom(internal_error))
        .with_state(engine)
}

/// Adds a CORS policy admitting one browser origin.
pub fn with_cors(router: Router, origin: &str) -> Result<Router, axum::http::header::InvalidHeaderValue> {
    let origin = HeaderValue::from_str(origin)?;
    let cors = CorsLayer::new()
        .allow_origin(origin)
        .allow_methods([axum::http::Method::GET, axum::http::Method::POST])
        .allow_headers([axum::http::header::CONTENT_TYPE]);
    Ok(router.layer(cors))
}

async fn query(State(engine): State<Arc<Engine>>, body: Bytes) -> Response {
    // Structs also deserialize from arrays; only an object is accepted.
    let parsed = serde_json::from_slice::<serde_json::Value>(&body).and_then(|v| match v {
        serde_json::Value::Object(_) => serde_json::from_value::<QueryRequest>(v),
        _ => Err(serde::de::Error::custom("body is not an object")),
    });
    let req = match parsed {
        Ok(r) => r,
        Err(e) => {
            tracing::debug!(error = %e, "rejected query body");
            return error_json(StatusCode::BAD_REQUEST, "expected a JSON object with a string field \"question\"");
        }
    };
    let resp = engine.answer_question(&req.question);
    tracing::info!(status = ?resp.status, question = %req.question, "answered");
    Json(resp).into_response()
}

async fn schema(State(engine): State<Arc<Engine>>) -> Response {
    Json(engine.schema_inventory()).into_response()
}

fn error_json(status: StatusCode, message: &str) -> Response {
    (status, Json(json!({ "error": message }))).into_response()
}

fn internal_error(panic: Box<dyn Any + Send + 'static>) -> Response {
    let detail = panic
        .downcast_ref::<String>()
        .map(String::as_str)
        .or_else(|| panic.downcast_ref::<&str>().copied())
        .unwrap_or("unknown panic");
    tracing::error!(detail, "request handler panicked");
    error_json(StatusCode::INTERNAL_SERVER_ERROR, "internal error")
}
