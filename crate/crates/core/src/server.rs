//! JSON-over-HTTP service used by the interactive editor.
//!
//! Endpoints:
//!
//! - `POST /api/verify`: family document in, `{report, geometry}` out.
//! - `POST /api/audit`: family document in, report with corner audit out.
//! - `GET /api/bounds?min=&max=`: bound table rows.
//! - `POST /api/search/start`: search configuration in, `{id}` out.
//! - `GET /api/search/{id}`: progress and best generator so far.
//! - `DELETE /api/search/{id}`: cancel a running search.
//!
//! Malformed input is 400, degenerate geometry 422, unknown jobs 404.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arrangement::ArrangementError;
use crate::bounds::{self, BoundsRow};
use crate::format::{FamilyDocument, SearchConfigDocument};
use crate::report::{verify_family, DrawingGeometry, ReportDocument};
use crate::search::{anneal, ProgressEvent};

/// Widest `max - min` range accepted by `/api/bounds`.
pub const MAX_BOUNDS_SPAN: u32 = 64;

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    Degenerate {
        message: String,
        curves: (usize, usize),
        location: [String; 2],
    },
    NotFound(u64),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(message) => (StatusCode::BAD_REQUEST, json!({ "error": message })),
            ApiError::Degenerate {
                message,
                curves,
                location,
            } => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({
                    "error": message,
                    "diagnostics": { "curves": [curves.0, curves.1], "location": location },
                }),
            ),
            ApiError::NotFound(id) => (
                StatusCode::NOT_FOUND,
                json!({ "error": format!("no search job {id}") }),
            ),
            ApiError::Internal(message) => (
                StatusCode::INTERNAL_SERVER_ERROR,
                json!({ "error": message }),
            ),
        };
        (status, Json(body)).into_response()
    }
}

impl From<ArrangementError> for ApiError {
    fn from(err: ArrangementError) -> Self {
        match err {
            ArrangementError::Degenerate(d) => {
                let location = d.location();
                ApiError::Degenerate {
                    message: d.to_string(),
                    curves: d.curves(),
                    location: [
                        crate::geometry::format_rat(&location.x),
                        crate::geometry::format_rat(&location.y),
                    ],
                }
            }
            other => ApiError::Internal(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JobState {
    Running,
    Finished,
    Cancelled,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct JobStatus {
    pub id: u64,
    pub state: JobState,
    pub iteration: u64,
    pub max_iterations: u64,
    pub deficiency: Option<u64>,
    pub best_deficiency: Option<u64>,
    pub best: Option<FamilyDocument>,
    pub error: Option<String>,
}

struct Job {
    status: Mutex<JobStatus>,
    cancel: AtomicBool,
}

#[derive(Default)]
pub struct AppState {
    jobs: Mutex<HashMap<u64, Arc<Job>>>,
    next_id: AtomicU64,
}

pub type SharedState = Arc<AppState>;

pub fn router(state: SharedState) -> Router {
    Router::new()
        .route("/api/verify", post(verify))
        .route("/api/audit", post(audit))
        .route("/api/bounds", get(bounds_table))
        .route("/api/search/start", post(start_search))
        .route("/api/search/{id}", get(search_status).delete(cancel_search))
        .with_state(state)
}

/// Serve on `0.0.0.0:port` until the process exits.
pub async fn serve(port: u16) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    axum::serve(listener, router(SharedState::default())).await
}

fn parse_family(body: &str) -> Result<crate::arrangement::PolygonFamily, ApiError> {
    let doc = FamilyDocument::parse(body).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    doc.to_family()
        .map_err(|e| ApiError::BadRequest(e.to_string()))
}

async fn run_blocking<T: Send + 'static>(
    job: impl FnOnce() -> Result<T, ApiError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(job)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))?
}

#[derive(Serialize)]
struct VerifyResponse {
    report: ReportDocument,
    geometry: DrawingGeometry,
}

async fn verify(body: String) -> Result<Json<VerifyResponse>, ApiError> {
    run_blocking(move || {
        let family = parse_family(&body)?;
        let (report, arrangement) = verify_family(&family, false)?;
        Ok(Json(VerifyResponse {
            report,
            geometry: DrawingGeometry::of(&arrangement),
        }))
    })
    .await
}

async fn audit(body: String) -> Result<Json<ReportDocument>, ApiError> {
    run_blocking(move || {
        let family = parse_family(&body)?;
        let (report, _) = verify_family(&family, true)?;
        Ok(Json(report))
    })
    .await
}

#[derive(Deserialize)]
struct BoundsQuery {
    min: u32,
    max: u32,
}

#[derive(Serialize)]
struct BoundsResponse {
    rows: Vec<BoundsRowJson>,
}

/// Values are strings so large `n` keep full precision in JavaScript.
#[derive(Serialize)]
struct BoundsRowJson {
    n: u32,
    lemma2_min_k: String,
    theorem_min_k: String,
    upper_k: String,
}

impl From<BoundsRow> for BoundsRowJson {
    fn from(row: BoundsRow) -> Self {
        BoundsRowJson {
            n: row.n,
            lemma2_min_k: row.lemma2_min_k.to_string(),
            theorem_min_k: row.theorem_min_k.to_string(),
            upper_k: row.upper_k.to_string(),
        }
    }
}

async fn bounds_table(
    query: Result<Query<BoundsQuery>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<BoundsResponse>, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    if q.min > q.max || q.max - q.min > MAX_BOUNDS_SPAN {
        return Err(ApiError::BadRequest(format!(
            "need min <= max and at most {MAX_BOUNDS_SPAN} rows"
        )));
    }
    let rows =
        bounds::bounds_table(q.min, q.max).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    Ok(Json(BoundsResponse {
        rows: rows.into_iter().map(BoundsRowJson::from).collect(),
    }))
}

async fn start_search(
    State(state): State<SharedState>,
    body: String,
) -> Result<Json<serde_json::Value>, ApiError> {
    let doc =
        SearchConfigDocument::parse(&body).map_err(|e| ApiError::BadRequest(e.to_string()))?;
    let config = doc
        .to_config()
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;
    config
        .validate()
        .map_err(|e| ApiError::BadRequest(e.to_string()))?;

    let id = state.next_id.fetch_add(1, Ordering::Relaxed) + 1;
    let job = Arc::new(Job {
        status: Mutex::new(JobStatus {
            id,
            state: JobState::Running,
            iteration: 0,
            max_iterations: config.max_iterations,
            deficiency: None,
            best_deficiency: None,
            best: None,
            error: None,
        }),
        cancel: AtomicBool::new(false),
    });
    state
        .jobs
        .lock()
        .expect("job registry")
        .insert(id, job.clone());

    tokio::task::spawn_blocking(move || {
        let (n, digits) = (config.n, config.digits);
        let observer = |event: &ProgressEvent| {
            let mut status = job.status.lock().expect("job status");
            status.iteration = status.iteration.max(event.iteration);
            status.deficiency = Some(event.deficiency);
            if status
                .best_deficiency
                .is_none_or(|b| event.best_deficiency < b)
            {
                status.best_deficiency = Some(event.best_deficiency);
            }
        };
        let result = anneal(&config, &observer, Some(&job.cancel));
        let mut status = job.status.lock().expect("job status");
        match result {
            Ok(outcome) => {
                let best = outcome.best();
                status.best_deficiency = Some(best.deficiency);
                status.deficiency = Some(outcome.state.deficiency);
                status.iteration = outcome.state.iteration;
                status.best = Some(FamilyDocument::symmetric(&best.generator, n, digits));
                status.state = if job.cancel.load(Ordering::Relaxed) {
                    JobState::Cancelled
                } else {
                    JobState::Finished
                };
            }
            Err(e) => {
                status.state = JobState::Failed;
                status.error = Some(e.to_string());
            }
        }
    });
    Ok(Json(json!({ "id": id })))
}

fn find_job(state: &AppState, id: u64) -> Result<Arc<Job>, ApiError> {
    state
        .jobs
        .lock()
        .expect("job registry")
        .get(&id)
        .cloned()
        .ok_or(ApiError::NotFound(id))
}

async fn search_status(
    State(state): State<SharedState>,
    Path(id): Path<u64>,
) -> Result<Json<JobStatus>, ApiError> {
    let job = find_job(&state, id)?;
    let status = job.status.lock().expect("job status").clone();
    Ok(Json(status))
}

async fn cancel_search(
    State(state): State<SharedState>,
    Path(id): Path<u64>,
) -> Result<Json<JobStatus>, ApiError> {
    let job = find_job(&state, id)?;
    job.cancel.store(true, Ordering::Relaxed);
    let status = job.status.lock().expect("job status").clone();
    Ok(Json(status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use axum::body::Body;
    use axum::http::Request;
    use http_body_util::BodyExt;
    use tower::ServiceExt;

    async fn call(
        app: Router,
        method: &str,
        uri: &str,
        body: &str,
    ) -> (StatusCode, serde_json::Value) {
        let request = Request::builder()
            .method(method)
            .uri(uri)
            .body(Body::from(body.to_string()))
            .unwrap();
        let response = app.oneshot(request).await.unwrap();
        let status = response.status();
        let bytes = response.into_body().collect().await.unwrap().to_bytes();
        (
            status,
            serde_json::from_slice(&bytes).unwrap_or(serde_json::Value::Null),
        )
    }

    #[tokio::test]
    async fn malformed_family_is_400() {
        let app = router(SharedState::default());
        let (status, body) = call(app, "POST", "/api/verify", "{not json").await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
        assert!(body["error"].is_string());
    }

    #[tokio::test]
    async fn unknown_job_is_404() {
        let app = router(SharedState::default());
        let (status, _) = call(app, "GET", "/api/search/41", "").await;
        assert_eq!(status, StatusCode::NOT_FOUND);
    }

    #[tokio::test]
    async fn bounds_rejects_reversed_range() {
        let app = router(SharedState::default());
        let (status, _) = call(app, "GET", "/api/bounds?min=9&max=3", "").await;
        assert_eq!(status, StatusCode::BAD_REQUEST);
    }
}
