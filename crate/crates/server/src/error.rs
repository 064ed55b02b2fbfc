//! Wire-level error mapping.
//!
//! Every failure surfaces as a JSON body `{"code", "message"}` with a
//! matching HTTP status: 400-family for client faults, 500 for internal
//! ones. Handlers never crash the connection.

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

use semspace_core::{OntologyError, SpaceError};

/// Closed set of wire error codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WireCode {
    MalformedRequest,
    ModelNotLoaded,
    UnknownConcept,
    FloorOutOfRange,
    InvalidLease,
    PayloadTooLarge,
    Internal,
}

impl WireCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            WireCode::MalformedRequest => "MALFORMED_REQUEST",
            WireCode::ModelNotLoaded => "MODEL_NOT_LOADED",
            WireCode::UnknownConcept => "UNKNOWN_CONCEPT",
            WireCode::FloorOutOfRange => "FLOOR_OUT_OF_RANGE",
            WireCode::InvalidLease => "INVALID_LEASE",
            WireCode::PayloadTooLarge => "PAYLOAD_TOO_LARGE",
            WireCode::Internal => "INTERNAL",
        }
    }

    fn status(&self) -> StatusCode {
        match self {
            WireCode::MalformedRequest => StatusCode::BAD_REQUEST,
            WireCode::ModelNotLoaded => StatusCode::CONFLICT,
            WireCode::UnknownConcept => StatusCode::NOT_FOUND,
            WireCode::FloorOutOfRange => StatusCode::BAD_REQUEST,
            WireCode::InvalidLease => StatusCode::BAD_REQUEST,
            WireCode::PayloadTooLarge => StatusCode::PAYLOAD_TOO_LARGE,
            WireCode::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

/// A wire error ready to be rendered as a response.
#[derive(Debug, Clone)]
pub struct WireError {
    pub code: WireCode,
    pub message: String,
}

impl WireError {
    pub fn new(code: WireCode, message: impl Into<String>) -> Self {
        WireError {
            code,
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        WireError::new(WireCode::MalformedRequest, message)
    }
}

#[derive(Serialize)]
struct WireErrorBody<'a> {
    code: &'a str,
    message: &'a str,
}

impl IntoResponse for WireError {
    fn into_response(self) -> Response {
        (
            self.code.status(),
            Json(WireErrorBody {
                code: self.code.as_str(),
                message: &self.message,
            }),
        )
            .into_response()
    }
}

impl From<SpaceError> for WireError {
    fn from(err: SpaceError) -> Self {
        let code = match err {
            SpaceError::ModelNotLoaded(_) => WireCode::ModelNotLoaded,
            SpaceError::UnknownConcept(_) => WireCode::UnknownConcept,
            SpaceError::FloorOutOfRange(_) => WireCode::FloorOutOfRange,
            SpaceError::InvalidLease(_) => WireCode::InvalidLease,
        };
        WireError::new(code, err.to_string())
    }
}

impl From<OntologyError> for WireError {
    fn from(err: OntologyError) -> Self {
        // A bad ontology document or format name is a client fault.
        WireError::malformed(err.to_string())
    }
}

impl From<JsonRejection> for WireError {
    fn from(rejection: JsonRejection) -> Self {
        if rejection.status() == StatusCode::PAYLOAD_TOO_LARGE {
            WireError::new(WireCode::PayloadTooLarge, "request body too large")
        } else {
            WireError::malformed(rejection.body_text())
        }
    }
}

impl From<QueryRejection> for WireError {
    fn from(rejection: QueryRejection) -> Self {
        WireError::malformed(rejection.body_text())
    }
}
