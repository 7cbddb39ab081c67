use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use intercept_core::layout::{layout_to_json, parse_csv};
use intercept_core::metrics::{evaluate_dataset, DEFAULT_PAIRS};
use intercept_core::Dataset;
use serde_json::json;
use tower_http::cors::CorsLayer;

use crate::{build_layout, check_radius_ratio, parse_chart, LayoutRequest};

/// The single dataset slot. Uploads swap the whole `Arc`, so a request that
/// already cloned it keeps computing on a consistent snapshot.
#[derive(Clone)]
pub struct AppState {
    dataset: Arc<RwLock<Option<Arc<Dataset>>>>,
    size: f64,
}

impl AppState {
    pub fn new(size: f64) -> Self {
        Self {
            dataset: Arc::new(RwLock::new(None)),
            size,
        }
    }

    fn current(&self) -> Option<Arc<Dataset>> {
        self.dataset
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .clone()
    }

    fn replace(&self, dataset: Dataset) {
        *self.dataset.write().unwrap_or_else(|e| e.into_inner()) = Some(Arc::new(dataset));
    }
}

struct ApiError {
    status: StatusCode,
    message: String,
    line: Option<u64>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
            line: None,
        }
    }

    fn no_dataset() -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "no dataset loaded; POST a CSV to /api/dataset first",
        )
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.message, "status": self.status.as_u16() });
        if let Some(line) = self.line {
            body["line"] = json!(line);
        }
        (self.status, axum::Json(body)).into_response()
    }
}

fn json_response(text: String) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], text).into_response()
}

type Params = Query<HashMap<String, String>>;

fn radius_ratio(params: &HashMap<String, String>) -> Result<f64, ApiError> {
    let Some(raw) = params.get("radius_ratio") else {
        return Ok(intercept_core::layout::DEFAULT_RADIUS_RATIO);
    };
    let value: f64 = raw.trim().parse().map_err(|_| {
        ApiError::new(
            StatusCode::BAD_REQUEST,
            format!("radius_ratio {raw:?} is not a number"),
        )
    })?;
    if !value.is_finite() {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "radius_ratio must be finite",
        ));
    }
    check_radius_ratio(value).map_err(|m| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, m))
}

async fn health(State(state): State<AppState>) -> Response {
    let body = json!({ "status": "ok", "dataset_loaded": state.current().is_some() });
    axum::Json(body).into_response()
}

async fn upload(State(state): State<AppState>, body: Bytes) -> Result<Response, ApiError> {
    let dataset = parse_csv::<f64>(&body).map_err(|e| ApiError {
        status: StatusCode::BAD_REQUEST,
        line: e.line(),
        message: e.to_string(),
    })?;
    let reply = json!({
        "items": dataset.len(),
        "range": [dataset.range.lo, dataset.range.hi],
    });
    state.replace(dataset);
    Ok(axum::Json(reply).into_response())
}

async fn layout(
    State(state): State<AppState>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let chart = match params.get("chart") {
        Some(name) => parse_chart(name).map_err(|m| ApiError::new(StatusCode::BAD_REQUEST, m))?,
        None => intercept_core::metrics::Chart::Intercept,
    };
    let request = LayoutRequest {
        chart,
        radius_ratio: radius_ratio(&params)?,
        size: state.size,
        range: None,
    };
    let dataset = state.current().ok_or_else(ApiError::no_dataset)?;
    let doc = build_layout(&dataset, &request)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    Ok(json_response(layout_to_json(&doc)))
}

async fn metrics(
    State(state): State<AppState>,
    Query(params): Params,
) -> Result<Response, ApiError> {
    let ratio = radius_ratio(&params)?;
    let seed = match params.get("seed") {
        Some(raw) => raw.trim().parse::<u64>().map_err(|_| {
            ApiError::new(
                StatusCode::BAD_REQUEST,
                format!("seed {raw:?} is not a non-negative integer"),
            )
        })?,
        None => 0,
    };
    let dataset = state.current().ok_or_else(ApiError::no_dataset)?;
    let request = LayoutRequest {
        radius_ratio: ratio,
        size: state.size,
        ..LayoutRequest::default()
    };
    let report = evaluate_dataset(
        "uploaded",
        &dataset,
        &request.layout_config(),
        DEFAULT_PAIRS,
        seed,
    )
    .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, e.to_string()))?;
    Ok(axum::Json(report).into_response())
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/dataset", post(upload))
        .route("/api/layout", get(layout))
        .route("/api/metrics", get(metrics))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Serves on localhost until Ctrl-C.
pub async fn serve(port: u16, size: f64) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(size)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
