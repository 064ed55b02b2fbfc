//! Endpoint table and handlers.

use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{DefaultBodyLimit, Query, State};
use axum::routing::{get, post};
use axum::{Json, Router};
use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use bytes::Bytes;
use serde::{Deserialize, Serialize};
use serde_json::json;

use semspace_core::ontology::{build_concept_index, FormatRegistry};
use semspace_core::space::{MetaModel, SemanticQuery, Space, SyntacticQuery};
use semspace_core::ConceptId;

use crate::error::{WireCode, WireError};

/// Shared handler state; all mutable state lives inside the space.
pub struct AppState {
    pub space: Arc<Space>,
    pub registry: FormatRegistry,
    pub max_payload_bytes: usize,
}

/// Wire spelling of the meta model tags.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum WireModel {
    RDFS,
    WSML,
}

impl From<WireModel> for MetaModel {
    fn from(model: WireModel) -> Self {
        match model {
            WireModel::RDFS => MetaModel::Rdfs,
            WireModel::WSML => MetaModel::Wsml,
        }
    }
}

#[derive(Deserialize)]
struct OntologyRequest {
    model: WireModel,
    format: String,
    data: String,
}

#[derive(Deserialize)]
struct WriteRequest {
    model: WireModel,
    concept: String,
    payload_b64: String,
    lease_ms: i64,
}

#[derive(Deserialize)]
struct ReadRequest {
    model: WireModel,
    concept: String,
    floor: f64,
}

#[derive(Deserialize)]
struct ReadByIdRequest {
    identifier: String,
}

#[derive(Deserialize)]
struct TakeRequest {
    model: WireModel,
    concept: String,
}

#[derive(Deserialize)]
struct SdiceParams {
    model: WireModel,
    c1: String,
    c2: String,
}

#[derive(Serialize)]
struct ResultEntry {
    id: u64,
    concept: String,
    degree: f64,
    payload_b64: String,
    identifier: String,
}

fn results_body(results: semspace_core::ResultsList) -> serde_json::Value {
    let entries: Vec<ResultEntry> = results
        .into_iter()
        .map(|item| ResultEntry {
            id: item.id,
            concept: item.concept.to_string(),
            degree: item.degree.value(),
            payload_b64: BASE64.encode(&item.payload),
            identifier: item.identifier,
        })
        .collect();
    json!({ "results": entries })
}

fn concept_id(raw: &str) -> Result<ConceptId, WireError> {
    ConceptId::new(raw).map_err(WireError::from)
}

/// The full endpoint table as a router. The body limit covers every POST
/// body; decoded payloads are additionally capped by the same bound.
pub fn router(state: Arc<AppState>) -> Router {
    let limit = state.max_payload_bytes;
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/ontology", post(ontology))
        .route("/v1/write", post(write))
        .route("/v1/read", post(read))
        .route("/v1/read_by_id", post(read_by_id))
        .route("/v1/take", post(take))
        .route("/v1/sdice", get(sdice))
        .route("/v1/stats", get(stats))
        .fallback(fallback)
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn fallback() -> WireError {
    WireError::malformed("no such endpoint")
}

async fn ontology(
    State(state): State<Arc<AppState>>,
    body: Result<Json<OntologyRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Json(req) = body?;
    let pairs = state.registry.parse(&req.format, &req.data)?;
    let index = build_concept_index(pairs, &[])?;
    let concepts = index.len();
    state.space.load_model(req.model.into(), index);
    Ok(Json(json!({ "concepts": concepts })))
}

async fn write(
    State(state): State<Arc<AppState>>,
    body: Result<Json<WriteRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Json(req) = body?;
    if req.lease_ms <= 0 {
        return Err(WireError::new(
            WireCode::InvalidLease,
            format!("invalid lease: {} ms (must be positive)", req.lease_ms),
        ));
    }
    let payload = BASE64
        .decode(&req.payload_b64)
        .map_err(|e| WireError::malformed(format!("payload_b64 is not valid base64: {e}")))?;
    if payload.len() > state.max_payload_bytes {
        return Err(WireError::new(
            WireCode::PayloadTooLarge,
            format!(
                "payload of {} bytes exceeds the limit of {} bytes",
                payload.len(),
                state.max_payload_bytes
            ),
        ));
    }
    let concept = concept_id(&req.concept)?;
    let receipt = state.space.write(
        Bytes::from(payload),
        req.model.into(),
        &concept,
        req.lease_ms as u64,
    )?;
    Ok(Json(json!({
        "id": receipt.id,
        "granted_lease_ms": receipt.lease.granted_ms,
        "expires_at_ms": receipt.lease.expires_at_ms,
    })))
}

async fn read(
    State(state): State<Arc<AppState>>,
    body: Result<Json<ReadRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Json(req) = body?;
    let results = state.space.read(&SemanticQuery {
        model: req.model.into(),
        concept: concept_id(&req.concept)?,
        floor: req.floor,
    })?;
    Ok(Json(results_body(results)))
}

async fn read_by_id(
    State(state): State<Arc<AppState>>,
    body: Result<Json<ReadByIdRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Json(req) = body?;
    let results = state.space.read_by_id(&SyntacticQuery {
        identifier: req.identifier,
    });
    Ok(Json(results_body(results)))
}

async fn take(
    State(state): State<Arc<AppState>>,
    body: Result<Json<TakeRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Json(req) = body?;
    let results = state
        .space
        .take(req.model.into(), &concept_id(&req.concept)?)?;
    Ok(Json(results_body(results)))
}

async fn sdice(
    State(state): State<Arc<AppState>>,
    params: Result<Query<SdiceParams>, QueryRejection>,
) -> Result<Json<serde_json::Value>, WireError> {
    let Query(params) = params?;
    let degree = state.space.s_dice(
        params.model.into(),
        &concept_id(&params.c1)?,
        &concept_id(&params.c2)?,
    )?;
    Ok(Json(json!({ "degree": degree.value() })))
}

async fn stats(State(state): State<Arc<AppState>>) -> Json<serde_json::Value> {
    let stats = state.space.stats();
    let per_model: serde_json::Map<String, serde_json::Value> = MetaModel::ALL
        .iter()
        .map(|model| {
            (
                model.as_str().to_string(),
                json!(stats.entries_per_model.get(model).copied().unwrap_or(0)),
            )
        })
        .collect();
    Json(json!({
        "live_entries": stats.live_entries,
        "entries_per_model": per_model,
        "total_writes": stats.total_writes,
        "total_reads": stats.total_reads,
        "total_takes": stats.total_takes,
        "expired_total": stats.expired_total,
    }))
}
