use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use uuid::Uuid;

use crate::session::{Hint, SessionError, SessionStore, SessionView};

#[derive(Debug, Deserialize)]
pub struct CreateRequest {
    pub piles: Vec<u64>,
    #[serde(default = "yes")]
    pub human_first: bool,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
pub struct MoveRequest {
    pub keep_index: usize,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

pub struct ApiError(StatusCode, String);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match e {
            SessionError::NotFound => ApiError(StatusCode::NOT_FOUND, "no such session".into()),
            SessionError::InvalidPiles(m) => ApiError(StatusCode::BAD_REQUEST, m),
            SessionError::IllegalMove(m) => ApiError(StatusCode::UNPROCESSABLE_ENTITY, m),
            SessionError::Finished => ApiError(StatusCode::CONFLICT, "game is over".into()),
            SessionError::Busy => ApiError(
                StatusCode::CONFLICT,
                "another request is in progress for this session".into(),
            ),
        }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError(StatusCode::BAD_REQUEST, e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { error: self.1 })).into_response()
    }
}

fn session_id(raw: &str) -> Result<Uuid, ApiError> {
    raw.parse().map_err(|_| SessionError::NotFound.into())
}

async fn create(
    State(store): State<SessionStore>,
    body: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let Json(req) = body?;
    let view = store.create(&req.piles, req.human_first)?;
    Ok((StatusCode::CREATED, Json(view)))
}

async fn fetch(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
) -> Result<Json<SessionView>, ApiError> {
    Ok(Json(store.get(session_id(&id)?)?))
}

async fn play(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> Result<Json<SessionView>, ApiError> {
    let id = session_id(&id)?;
    let Json(req) = body?;
    Ok(Json(store.human_move(id, req.keep_index)?))
}

async fn hint(
    State(store): State<SessionStore>,
    Path(id): Path<String>,
) -> Result<Json<Hint>, ApiError> {
    Ok(Json(store.hint(session_id(&id)?)?))
}

pub fn router(store: SessionStore) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(fetch))
        .route("/sessions/{id}/move", post(play))
        .route("/sessions/{id}/hint", get(hint))
        .with_state(store)
}
