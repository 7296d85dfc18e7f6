//! HTTP session service backing the mutation explorer.
//!
//! A session holds a base quiver and the mutation history applied to its
//! framed quiver. State is always recomputable from `base + history`; undo
//! replays the shortened history. Sessions live in memory and expire after
//! an idle period.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::families::{catalog, make_family, FamilyName, FamilySpec};
use crate::framed::{frame, FramedQuiver};
use crate::quiver::Quiver;
use crate::sequence::{apply_sequence, MutationSequence};
use crate::vertex::VertexId;

use super::json::{ArrowDoc, QuiverDoc};

pub const DEFAULT_IDLE_EXPIRY: Duration = Duration::from_secs(3600);

#[derive(Debug)]
pub struct Session {
    pub id: String,
    pub base: Quiver,
    pub current: FramedQuiver,
    pub history: MutationSequence,
    touched: Instant,
}

impl Session {
    fn new(base: Quiver) -> Result<Session, ApiError> {
        let current = frame(&base).map_err(|e| ApiError::invalid(e.to_string()))?;
        Ok(Session {
            id: uuid::Uuid::new_v4().simple().to_string(),
            base,
            current,
            history: MutationSequence::default(),
            touched: Instant::now(),
        })
    }

    fn view(&self) -> StateView {
        let q = self.current.quiver();
        StateView {
            id: self.id.clone(),
            vertices: q
                .vertices()
                .iter()
                .map(|v| {
                    let frozen = q.is_frozen(v).unwrap_or(false);
                    VertexView {
                        id: v.clone(),
                        frozen,
                        status: if frozen {
                            "frozen"
                        } else {
                            q.status(v).map(|s| s.label()).unwrap_or("frozen")
                        },
                    }
                })
                .collect(),
            arrows: QuiverDoc::from_quiver(q).arrows,
            history: self.history.clone(),
            all_red: self.current.all_red(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexView {
    pub id: VertexId,
    pub frozen: bool,
    /// `green`, `red`, `mixed`, `isolated` or `frozen`.
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateView {
    pub id: String,
    pub vertices: Vec<VertexView>,
    pub arrows: Vec<ArrowDoc>,
    pub history: MutationSequence,
    pub all_red: bool,
}

type SessionRef = Arc<Mutex<Session>>;

/// Concurrent session store. Each session is locked on its own, so
/// distinct sessions proceed in parallel.
pub struct AppState {
    sessions: Mutex<HashMap<String, SessionRef>>,
    idle_expiry: Duration,
}

impl AppState {
    pub fn new(idle_expiry: Duration) -> Arc<AppState> {
        Arc::new(AppState {
            sessions: Mutex::default(),
            idle_expiry,
        })
    }

    fn insert(&self, s: Session) -> StateView {
        let view = s.view();
        let mut map = self.sessions.lock().expect("session map poisoned");
        self.sweep(&mut map);
        map.insert(s.id.clone(), Arc::new(Mutex::new(s)));
        view
    }

    fn sweep(&self, map: &mut HashMap<String, SessionRef>) {
        let ttl = self.idle_expiry;
        map.retain(|_, s| s.lock().map(|s| s.touched.elapsed() < ttl).unwrap_or(false));
    }

    fn get(&self, id: &str) -> Result<SessionRef, ApiError> {
        let mut map = self.sessions.lock().expect("session map poisoned");
        self.sweep(&mut map);
        map.get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
    }

    fn remove(&self, id: &str) -> bool {
        self.sessions
            .lock()
            .expect("session map poisoned")
            .remove(id)
            .is_some()
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn malformed(e: serde_json::Error) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, format!("malformed request: {e}"))
    }

    fn invalid(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

fn parse<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(ApiError::malformed)
}

#[derive(Serialize)]
struct Created {
    id: String,
    state: StateView,
}

async fn create(State(app): State<Arc<AppState>>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let doc: QuiverDoc = parse(&body)?;
    let q = doc.to_quiver().map_err(|e| ApiError::invalid(e.to_string()))?;
    let view = app.insert(Session::new(q)?);
    Ok((StatusCode::CREATED, Json(Created { id: view.id.clone(), state: view })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FromFamily {
    name: String,
    #[serde(default)]
    params: BTreeMap<String, i64>,
    level: usize,
}

async fn create_from_family(
    State(app): State<Arc<AppState>>,
    body: Bytes,
) -> Result<impl IntoResponse, ApiError> {
    let req: FromFamily = parse(&body)?;
    let name: FamilyName = req.name.parse().map_err(|e: crate::families::FamilyError| ApiError::invalid(e.to_string()))?;
    let tower = make_family(&FamilySpec {
        name,
        params: req.params,
    })
    .map_err(|e| ApiError::invalid(e.to_string()))?;
    let q = tower.level(req.level).map_err(|e| ApiError::invalid(e.to_string()))?;
    let view = app.insert(Session::new((*q).clone())?);
    Ok((StatusCode::CREATED, Json(Created { id: view.id.clone(), state: view })))
}

async fn get_state(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<StateView>, ApiError> {
    let s = app.get(&id)?;
    let mut s = s.lock().expect("session poisoned");
    s.touched = Instant::now();
    Ok(Json(s.view()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateReq {
    vertex: VertexId,
}

async fn mutate(
    State(app): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<StateView>, ApiError> {
    let req: MutateReq = parse(&body)?;
    let s = app.get(&id)?;
    let mut s = s.lock().expect("session poisoned");
    s.touched = Instant::now();
    let next = s
        .current
        .mutate(&req.vertex)
        .map_err(|e| ApiError::new(StatusCode::CONFLICT, e.to_string()))?;
    s.current = next;
    s.history.push(req.vertex);
    Ok(Json(s.view()))
}

async fn undo(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<StateView>, ApiError> {
    let s = app.get(&id)?;
    let mut s = s.lock().expect("session poisoned");
    s.touched = Instant::now();
    if s.history.is_empty() {
        return Ok(Json(s.view()));
    }
    let mut steps = s.history.steps().to_vec();
    steps.pop();
    let history = MutationSequence::new(steps);
    let start = frame(&s.base).map_err(|e| ApiError::invalid(e.to_string()))?;
    let current = apply_sequence(&start, &history)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    s.current = current;
    s.history = history;
    Ok(Json(s.view()))
}

async fn delete(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<StatusCode, ApiError> {
    if app.remove(&id) {
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::new(StatusCode::NOT_FOUND, format!("no session {id}")))
    }
}

async fn families() -> Json<serde_json::Value> {
    let list: Vec<_> = catalog()
        .into_iter()
        .map(|(name, params, description)| json!({ "name": name, "params": params, "description": description }))
        .collect();
    Json(json!(list))
}

pub fn router(app: Arc<AppState>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/from-family", post(create_from_family))
        .route("/sessions/{id}", get(get_state).delete(delete))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/families", get(families))
        .with_state(app)
}

/// Runs the service until ctrl-c.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(DEFAULT_IDLE_EXPIRY)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
