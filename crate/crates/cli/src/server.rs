//! JSON-over-HTTP session service.
//!
//! Sessions live in memory. Each holds the current arrangement, the stack of
//! earlier arrangements and the verified trace leading to the current one.
//! Mutations of one session are serialized by its mutex; reads of different
//! sessions run concurrently.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use braidwork_core::{apply, list_applicable, Arrangement, MoveError, MoveInstance, Trace};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{arrangement_from_text, arrangement_to_text};
use crate::render::{render, RenderSpec};
use crate::report;

pub const HASH_HEADER: &str = "x-boundary-hash";

pub struct Session {
    pub id: String,
    pub current: Arrangement,
    /// Arrangements before each applied step, oldest first.
    pub undo: Vec<Arrangement>,
    pub trace: Trace,
    pub created: u64,
    pub modified: u64,
}

impl Session {
    fn new(id: String, a: Arrangement) -> Self {
        let now = now();
        Self { id, trace: Trace::new(a.diagram().clone()), current: a, undo: Vec::new(), created: now, modified: now }
    }

    pub fn boundary_hash(&self) -> String {
        report::boundary_hash(self.current.diagram())
    }

    pub fn state(&self) -> Value {
        json!({
            "id": self.id,
            "dsl": arrangement_to_text(&self.current),
            "arrangement": self.current,
            "hash": self.current.diagram().hash(),
            "boundary_hash": self.boundary_hash(),
            "invariants": report::invariants(&self.current).unwrap_or(Value::Null),
            "steps": self.trace.steps.len(),
            "created": self.created,
            "modified": self.modified,
        })
    }
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

#[derive(Default)]
pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    counter: AtomicU64,
    snapshot_dir: Option<PathBuf>,
}

impl AppState {
    pub fn new(snapshot_dir: Option<PathBuf>) -> Arc<Self> {
        Arc::new(Self { snapshot_dir, ..Self::default() })
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown session", format!("no session `{id}`"), None))
    }
}

pub struct ApiError {
    status: StatusCode,
    error: &'static str,
    reason: String,
    boundary_hash: Option<String>,
}

impl ApiError {
    fn new(status: StatusCode, error: &'static str, reason: String, boundary_hash: Option<String>) -> Self {
        Self { status, error, reason, boundary_hash }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.error, "reason": self.reason, "boundary_hash": self.boundary_hash });
        with_hash(self.status, self.boundary_hash.as_deref(), Json(body).into_response())
    }
}

fn with_hash(status: StatusCode, hash: Option<&str>, mut r: Response) -> Response {
    *r.status_mut() = status;
    if let Some(h) = hash.and_then(|h| HeaderValue::from_str(h).ok()) {
        r.headers_mut().insert(HASH_HEADER, h);
    }
    r
}

fn ok_json(status: StatusCode, body: Value) -> Response {
    let hash = body.get("boundary_hash").and_then(Value::as_str).map(str::to_string);
    with_hash(status, hash.as_deref(), Json(body).into_response())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/moves", get(moves))
        .route("/sessions/{id}/apply", post(apply_move))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/svg", get(svg))
        .route("/sessions/{id}/trace", get(trace))
        .route("/sessions/{id}/snapshot", post(snapshot))
        .with_state(state)
}

async fn create(State(app): State<Arc<AppState>>, body: String) -> Result<Response, ApiError> {
    let a = arrangement_from_text(&body)
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid input", e.to_string(), None))?;
    if let Some(v) = braidwork_core::validate(a.diagram()).first() {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid diagram", v.to_string(), None));
    }
    let id = format!("s{}", app.counter.fetch_add(1, Ordering::Relaxed) + 1);
    let session = Session::new(id.clone(), a);
    let state = session.state();
    app.sessions.write().expect("session table poisoned").insert(id.clone(), Arc::new(Mutex::new(session)));
    let hash = state["boundary_hash"].clone();
    Ok(ok_json(StatusCode::CREATED, json!({ "id": id, "boundary_hash": hash, "state": state })))
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let s = s.lock().expect("session poisoned");
    Ok(ok_json(StatusCode::OK, s.state()))
}

#[derive(Deserialize)]
struct PosQuery {
    pos: Option<usize>,
}

async fn moves(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<PosQuery>,
) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let s = s.lock().expect("session poisoned");
    let d = s.current.diagram();
    let hash = s.boundary_hash();
    let positions: Vec<usize> = match q.pos {
        Some(p) if p > d.len() => {
            return Err(ApiError::new(
                StatusCode::UNPROCESSABLE_ENTITY,
                "bad position",
                format!("position {p} is past the last element ({})", d.len()),
                Some(hash),
            ))
        }
        Some(p) => vec![p],
        None => (0..=d.len()).collect(),
    };
    let list: Vec<MoveInstance> = positions.into_iter().flat_map(|p| list_applicable(d, p)).collect();
    let descriptions: Vec<String> = list.iter().map(ToString::to_string).collect();
    Ok(ok_json(
        StatusCode::OK,
        json!({ "pos": q.pos, "moves": list, "descriptions": descriptions, "boundary_hash": hash }),
    ))
}

async fn apply_move(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: String,
) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let mut s = s.lock().expect("session poisoned");
    let before = s.boundary_hash();
    let inst: MoveInstance = serde_json::from_str(&body).map_err(|e| {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid move instance", e.to_string(), Some(before.clone()))
    })?;
    let r = apply(s.current.diagram(), &inst, true).map_err(|e| {
        let error = match e {
            MoveError::NotApplicable(_) | MoveError::UnknownVariant { .. } => "move not applicable",
            MoveError::VerificationFailed { .. } => "verification failed",
            MoveError::InvalidDiagram(_) => "invalid diagram",
        };
        ApiError::new(StatusCode::CONFLICT, error, e.to_string(), Some(before.clone()))
    })?;
    let result = json!({
        "instance": inst,
        "description": inst.to_string(),
        "guarantee": r.guarantee,
        "conjugator": r.conjugator,
        "verified": r.verified,
        "previous_boundary_hash": before,
    });
    let next = s.current.with_diagram(r.diagram.clone());
    let previous = std::mem::replace(&mut s.current, next);
    s.undo.push(previous);
    s.trace.record(&inst, r);
    s.modified = now();
    let mut state = s.state();
    let unchanged = state["boundary_hash"] == result["previous_boundary_hash"];
    let mut result = result;
    result["boundary_unchanged"] = json!(unchanged);
    state["result"] = result;
    Ok(ok_json(StatusCode::OK, state))
}

async fn undo(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let mut s = s.lock().expect("session poisoned");
    let Some(previous) = s.undo.pop() else {
        let hash = s.boundary_hash();
        return Err(ApiError::new(StatusCode::CONFLICT, "nothing to undo", "the session has no steps".into(), Some(hash)));
    };
    let step = s.trace.pop(previous.diagram().clone());
    s.current = previous;
    s.modified = now();
    let mut state = s.state();
    state["undone"] = json!(step.map(|st| st.instance));
    Ok(ok_json(StatusCode::OK, state))
}

async fn svg(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let s = s.lock().expect("session poisoned");
    let hash = s.boundary_hash();
    let text = render(&s.current, &RenderSpec::default())
        .map_err(|e| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid diagram", e.to_string(), Some(hash.clone())))?;
    let r = ([(header::CONTENT_TYPE, "image/svg+xml")], text).into_response();
    Ok(with_hash(StatusCode::OK, Some(&hash), r))
}

async fn trace(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let s = s.lock().expect("session poisoned");
    let mut body = serde_json::to_value(&s.trace).expect("trace serializes");
    body["boundary_hash"] = json!(s.boundary_hash());
    Ok(ok_json(StatusCode::OK, body))
}

async fn snapshot(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let s = app.get(&id)?;
    let s = s.lock().expect("session poisoned");
    let hash = s.boundary_hash();
    let Some(dir) = &app.snapshot_dir else {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "snapshots disabled",
            "the server was started without --snapshot-dir".into(),
            Some(hash),
        ));
    };
    let mut state = s.state();
    state["trace"] = serde_json::to_value(&s.trace).expect("trace serializes");
    let path = dir.join(format!("{}.json", s.id));
    let write = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, state.to_string()));
    write.map_err(|e| {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "snapshot failed", e.to_string(), Some(hash.clone()))
    })?;
    Ok(ok_json(StatusCode::OK, json!({ "path": path, "boundary_hash": hash })))
}

/// Serves until the process is stopped.
pub async fn serve(addr: SocketAddr, snapshot_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(snapshot_dir))).await
}
