//! HTTP service over the solver, views and sequencer.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use tower_http::services::ServeDir;

use crate::data::{DataError, Model};
use crate::params::validate;
use crate::sequencer::{from_phoneme_string, sample_frames, SequenceError, TimedFrame, Timing};
use crate::solver::solve;
use crate::views::{render_view, scene_to_svg, ViewKind, DEFAULT_SIZE};

pub const DEFAULT_BIND: &str = "127.0.0.1:8080";
pub const MAX_FPS: f64 = 240.0;
pub const MAX_FRAMES: usize = 10_000;
pub const MAX_SIZE: u32 = 4096;

/// Model slot filled once loading finishes; requests before then get 503.
pub type ModelSlot = Arc<OnceLock<Model>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ErrorCode {
    BadRequest,
    UnknownPhoneme,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: ErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl ApiError {
    pub fn bad_request(message: impl Into<String>) -> ApiError {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code: ErrorCode::BadRequest,
            message: message.into(),
            details: None,
        }
    }

    pub fn unknown_phoneme(sampa: &str) -> ApiError {
        ApiError {
            status: StatusCode::NOT_FOUND,
            code: ErrorCode::UnknownPhoneme,
            message: format!("unknown phoneme {sampa:?}"),
            details: None,
        }
    }

    fn not_ready() -> ApiError {
        ApiError {
            status: StatusCode::SERVICE_UNAVAILABLE,
            code: ErrorCode::Internal,
            message: "data files are still loading".into(),
            details: None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, json_body(&self)).into_response()
    }
}

impl From<SequenceError> for ApiError {
    fn from(e: SequenceError) -> ApiError {
        match e {
            SequenceError::UnknownPhoneme(s) => ApiError::unknown_phoneme(&s),
            SequenceError::InvalidKeyframe { errors, .. } => {
                ApiError { details: serde_json::to_value(&errors).ok(), ..ApiError::bad_request(errors.to_string()) }
            }
            other => ApiError::bad_request(other.to_string()),
        }
    }
}

fn json_body<T: Serialize>(value: &T) -> Response {
    match serde_json::to_vec(value) {
        Ok(body) => ([(header::CONTENT_TYPE, "application/json")], body).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, format!("serialization failed: {e}")).into_response(),
    }
}

fn model(slot: &ModelSlot) -> Result<&Model, ApiError> {
    slot.get().ok_or_else(ApiError::not_ready)
}

async fn healthz(State(slot): State<ModelSlot>) -> Response {
    match slot.get() {
        Some(_) => (StatusCode::OK, "ok").into_response(),
        None => ApiError::not_ready().into_response(),
    }
}

async fn phonemes(State(slot): State<ModelSlot>) -> Result<Response, ApiError> {
    Ok(json_body(&model(&slot)?.inventory.list()))
}

fn parse_json(body: &[u8]) -> Result<Value, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("body is not JSON: {e}")))
}

async fn solve_handler(State(slot): State<ModelSlot>, body: Bytes) -> Result<Response, ApiError> {
    let m = model(&slot)?;
    let state = validate(&parse_json(&body)?).map_err(|errors| ApiError {
        details: serde_json::to_value(&errors).ok(),
        ..ApiError::bad_request(errors.to_string())
    })?;
    let frame = solve(&m.library, &state).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(json_body(&frame))
}

async fn render_handler(
    State(slot): State<ModelSlot>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Response, ApiError> {
    let m = model(&slot)?;
    let sampa = q.get("phoneme").ok_or_else(|| ApiError::bad_request("missing query parameter phoneme"))?;
    let view = match q.get("view") {
        None => ViewKind::Composite,
        Some(v) => ViewKind::parse(v).ok_or_else(|| ApiError::bad_request(format!("unknown view {v:?}")))?,
    };
    let size = match q.get("size") {
        None => DEFAULT_SIZE,
        Some(s) => s
            .parse::<u32>()
            .ok()
            .filter(|v| (1..=MAX_SIZE).contains(v))
            .ok_or_else(|| ApiError::bad_request(format!("size must be an integer in 1..={MAX_SIZE}")))?,
    };
    let entry = m.inventory.lookup(sampa).map_err(|_| ApiError::unknown_phoneme(sampa))?;
    let frame = solve(&m.library, &entry.state).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let svg = scene_to_svg(&render_view(&m.library, &frame, view, None), size);
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct AnimateRequest {
    sampa: String,
    #[serde(default = "default_fps")]
    fps: f64,
    segment_duration: Option<f64>,
    transition_fraction: Option<f64>,
}

fn default_fps() -> f64 {
    25.0
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnimateResponse {
    sampa: String,
    fps: f64,
    duration: f64,
    frames: Vec<TimedFrame>,
}

async fn animate_handler(State(slot): State<ModelSlot>, body: Bytes) -> Result<Response, ApiError> {
    let m = model(&slot)?;
    let req: AnimateRequest = serde_json::from_value(parse_json(&body)?)
        .map_err(|e| ApiError::bad_request(format!("invalid animate request: {e}")))?;
    if !(req.fps > 0.0 && req.fps <= MAX_FPS) {
        return Err(ApiError::bad_request(format!("fps must lie in (0, {MAX_FPS}]")));
    }
    let defaults = Timing::default();
    let timing = Timing {
        segment_duration: req.segment_duration.unwrap_or(defaults.segment_duration),
        transition_fraction: req.transition_fraction.unwrap_or(defaults.transition_fraction),
        curve: defaults.curve,
    };
    let timeline = from_phoneme_string(&m.inventory, &req.sampa, timing)?;
    if timeline.span() * req.fps > MAX_FRAMES as f64 {
        return Err(ApiError::bad_request(format!("animation would exceed {MAX_FRAMES} frames")));
    }
    let slot = slot.clone();
    let fps = req.fps;
    let frames = tokio::task::spawn_blocking(move || {
        let m = slot.get().expect("model loaded");
        sample_frames(&m.library, &timeline, fps)
    })
    .await
    .map_err(|e| ApiError {
        status: StatusCode::INTERNAL_SERVER_ERROR,
        code: ErrorCode::Internal,
        message: e.to_string(),
        details: None,
    })??;
    let duration = frames.last().map_or(0.0, |f| f.time);
    Ok(json_body(&AnimateResponse { sampa: req.sampa, fps, duration, frames }))
}

async fn api_not_found() -> ApiError {
    ApiError { status: StatusCode::NOT_FOUND, ..ApiError::bad_request("no such endpoint") }
}

pub fn router(slot: ModelSlot, ui_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/phonemes", get(phonemes))
        .route("/api/solve", post(solve_handler))
        .route("/api/render", get(render_handler))
        .route("/api/animate", post(animate_handler))
        .route("/api/{*rest}", get(api_not_found).post(api_not_found))
        .route("/healthz", get(healthz))
        .with_state(slot);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

#[derive(Clone, Debug)]
pub struct ServeConfig {
    pub bind: SocketAddr,
    pub data_dir: Option<PathBuf>,
    pub ui_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Data(#[from] DataError),
}

pub fn load_model(data_dir: Option<&Path>) -> Result<Model, DataError> {
    match data_dir {
        Some(dir) => Model::load_dir(dir),
        None => Ok(Model::bundled().clone()),
    }
}

/// Binds, then loads data in the background; stops on ctrl-c or when
/// loading fails.
pub async fn serve(config: ServeConfig) -> Result<(), ServeError> {
    let slot: ModelSlot = Arc::new(OnceLock::new());
    let app = router(slot.clone(), config.ui_dir.as_deref());
    let listener = tokio::net::TcpListener::bind(config.bind).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = tokio::spawn(async move {
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                tokio::select! {
                    _ = stopped => {}
                    _ = tokio::signal::ctrl_c() => {}
                }
            })
            .await
    });
    let data_dir = config.data_dir.clone();
    let loaded = tokio::task::spawn_blocking(move || load_model(data_dir.as_deref()))
        .await
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    match loaded {
        Ok(m) => {
            tracing::info!(phonemes = m.inventory.len(), "data loaded");
            let _ = slot.set(m);
        }
        Err(e) => {
            tracing::error!("data failed to load: {e}");
            let _ = stop.send(());
            let _ = server.await;
            return Err(e.into());
        }
    }
    server.await.map_err(|e| std::io::Error::other(e.to_string()))??;
    drop(stop);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_schema() {
        let e = ApiError::unknown_phoneme("zz");
        assert_eq!(e.status, StatusCode::NOT_FOUND);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v, serde_json::json!({"code": "unknownPhoneme", "message": "unknown phoneme \"zz\""}));
    }

    #[test]
    fn sequence_errors_map_to_codes() {
        assert_eq!(ApiError::from(SequenceError::EmptySequence).code, ErrorCode::BadRequest);
        let e = ApiError::from(SequenceError::UnknownPhoneme("q".into()));
        assert_eq!((e.status, e.code), (StatusCode::NOT_FOUND, ErrorCode::UnknownPhoneme));
    }
}
