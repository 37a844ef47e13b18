use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

/// Error response: `{"error": <name>, "detail": <text>}`.
#[derive(Debug, Clone)]
pub struct ApiError {
    pub status: StatusCode,
    pub name: String,
    pub detail: String,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    detail: &'a str,
}

impl ApiError {
    pub fn new(status: StatusCode, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self {
            status,
            name: name.into(),
            detail: detail.into(),
        }
    }

    pub fn not_found(what: &str, id: &str) -> Self {
        Self::new(
            StatusCode::NOT_FOUND,
            "NotFound",
            format!("unknown {what} {id}"),
        )
    }

    pub fn parse(err: serde_json::Error) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "ParseError", err.to_string())
    }

    pub fn internal(err: impl std::fmt::Display) -> Self {
        Self::new(
            StatusCode::INTERNAL_SERVER_ERROR,
            "Internal",
            err.to_string(),
        )
    }

    /// Validation failure of request content.
    pub fn invalid(err: tapphrase::Error) -> Self {
        Self::new(StatusCode::BAD_REQUEST, err.name(), err.to_string())
    }

    /// Failure to apply an event to a session.
    pub fn session(err: tapphrase::Error) -> Self {
        use tapphrase::Error::*;
        let status = match err {
            OutOfOrderEvent { .. } | SessionAlreadyDecided | AlternationViolation { .. } => {
                StatusCode::CONFLICT
            }
            _ => StatusCode::BAD_REQUEST,
        };
        Self::new(status, err.name(), err.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            error: &self.name,
            detail: &self.detail,
        };
        (self.status, Json(body)).into_response()
    }
}
