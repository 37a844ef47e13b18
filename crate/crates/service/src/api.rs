//! Request handlers and wire types. Bodies are camelCase JSON.

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::IntoResponse;
use axum::routing::{delete, get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tapphrase::{
    phrase_from_events, AuthDecision, AuthSession, MatchResult, MatcherKind, MatcherParams,
    TapEvent, Template,
};

use crate::error::ApiError;
use crate::AppState;

pub fn routes(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/templates", get(list_templates).post(create_template))
        .route("/api/templates/{id}", get(get_template))
        .route("/api/templates/{id}/verify", post(verify))
        .route("/api/templates/{id}/sessions", post(create_session))
        .route("/api/sessions/{sid}", delete(delete_session))
        .route("/api/sessions/{sid}/events", post(push_event))
        .route("/api/sessions/{sid}/reset", post(reset_session))
        .with_state(state)
}

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(ApiError::parse)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnrollRequest {
    pub events: Vec<TapEvent>,
    #[serde(default)]
    pub params: Option<MatcherParams>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct TemplateSummary {
    pub id: String,
    pub tap_count: usize,
    pub span_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub created_at: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<MatcherParams>,
}

impl TemplateSummary {
    fn full(t: &Template) -> Self {
        Self {
            id: t.id.clone(),
            tap_count: t.phrase.tap_count(),
            span_ms: t.phrase.total_span(),
            created_at: Some(t.created_at),
            params: Some(t.params),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyRequest {
    pub events: Vec<TapEvent>,
    #[serde(default)]
    pub matcher: MatcherKind,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Gates {
    pub span: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<bool>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct VerifyResponse {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distance: Option<f64>,
    pub gates: Gates,
    pub candidate_span_ms: f64,
    pub template_span_ms: f64,
}

impl From<MatchResult> for VerifyResponse {
    fn from(r: MatchResult) -> Self {
        Self {
            accepted: r.accepted,
            distance: r.distance,
            gates: Gates {
                span: r.span_gate_passed,
                count: r.count_gate_passed,
            },
            candidate_span_ms: r.candidate_span_ms,
            template_span_ms: r.template_span_ms,
        }
    }
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub session_id: String,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct EventResponse {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub matched_window: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub distance: Option<f64>,
}

impl From<AuthDecision> for EventResponse {
    fn from(d: AuthDecision) -> Self {
        Self {
            accepted: d.accepted,
            matched_window: d.matched_window.map(|(s, e)| [s, e]),
            distance: d.result.and_then(|r| r.distance),
        }
    }
}

async fn health() -> impl IntoResponse {
    Json(serde_json::json!({ "ok": true }))
}

async fn list_templates(State(state): State<Arc<AppState>>) -> Json<Vec<TemplateSummary>> {
    Json(
        state
            .templates
            .list()
            .iter()
            .map(TemplateSummary::full)
            .collect(),
    )
}

async fn get_template(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<TemplateSummary>, ApiError> {
    let template = state
        .templates
        .get(&id)
        .ok_or_else(|| ApiError::not_found("template", &id))?;
    Ok(Json(TemplateSummary::full(&template)))
}

async fn create_template(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<impl IntoResponse, ApiError> {
    let req: EnrollRequest = parse_body(&body)?;
    let params = req.params.unwrap_or_default();
    params.validate().map_err(ApiError::invalid)?;
    let phrase = phrase_from_events(&req.events)
        .map_err(ApiError::invalid)?
        .debounced(params.min_segment_ms);
    let template = Template::new(crate::new_id(), phrase, params);
    let summary = TemplateSummary {
        id: template.id.clone(),
        tap_count: template.phrase.tap_count(),
        span_ms: template.phrase.total_span(),
        created_at: None,
        params: None,
    };
    state
        .templates
        .insert(template)
        .map_err(ApiError::internal)?;
    Ok((StatusCode::CREATED, Json(summary)))
}

async fn verify(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<VerifyResponse>, ApiError> {
    let template = state
        .templates
        .get(&id)
        .ok_or_else(|| ApiError::not_found("template", &id))?;
    let req: VerifyRequest = parse_body(&body)?;
    let candidate = phrase_from_events(&req.events)
        .map_err(ApiError::invalid)?
        .debounced(template.params.min_segment_ms);
    Ok(Json(req.matcher.run(&template, &candidate).into()))
}

async fn create_session(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    let template = state
        .templates
        .get(&id)
        .ok_or_else(|| ApiError::not_found("template", &id))?;
    let session = AuthSession::new(template).map_err(ApiError::invalid)?;
    let session_id = crate::new_id();
    state.sessions.insert(session_id.clone(), session);
    Ok((StatusCode::CREATED, Json(SessionCreated { session_id })))
}

async fn push_event(
    State(state): State<Arc<AppState>>,
    Path(sid): Path<String>,
    body: Bytes,
) -> Result<Json<EventResponse>, ApiError> {
    let event: TapEvent = parse_body(&body)?;
    state
        .sessions
        .with_session(&sid, |session| session.push_event(event))
        .ok_or_else(|| ApiError::not_found("session", &sid))?
        .map(|d| Json(d.into()))
        .map_err(ApiError::session)
}

async fn reset_session(
    State(state): State<Arc<AppState>>,
    Path(sid): Path<String>,
) -> Result<StatusCode, ApiError> {
    state
        .sessions
        .with_session(&sid, AuthSession::reset)
        .ok_or_else(|| ApiError::not_found("session", &sid))?;
    Ok(StatusCode::NO_CONTENT)
}

async fn delete_session(
    State(state): State<Arc<AppState>>,
    Path(sid): Path<String>,
) -> Result<StatusCode, ApiError> {
    if state.sessions.remove(&sid) {
        Ok(StatusCode::NO_CONTENT)
    } else {
        Err(ApiError::not_found("session", &sid))
    }
}
