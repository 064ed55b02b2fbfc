//! HTTP/1.1 + JSON wire service in front of the space, so external
//! producers and consumers can write, read and take without linking the
//! library.
//!
//! Endpoint table (`application/json`, UTF-8, payloads base64-encoded,
//! timestamps in integer milliseconds since the Unix epoch):
//!
//! | Endpoint              | Body / params                                    | Response |
//! |-----------------------|--------------------------------------------------|----------|
//! | `GET /v1/health`      | —                                                | `{"status":"ok"}` |
//! | `POST /v1/ontology`   | `{"model","format","data"}`                      | `{"concepts":N}` |
//! | `POST /v1/write`      | `{"model","concept","payload_b64","lease_ms"}`   | `{"id","granted_lease_ms","expires_at_ms"}` |
//! | `POST /v1/read`       | `{"model","concept","floor"}`                    | `{"results":[...]}` |
//! | `POST /v1/read_by_id` | `{"identifier"}`                                 | `{"results":[...]}` |
//! | `POST /v1/take`       | `{"model","concept"}`                            | `{"results":[...]}` |
//! | `GET /v1/sdice`       | `?model=&c1=&c2=`                                | `{"degree":x}` |
//! | `GET /v1/stats`       | —                                                | counters |
//!
//! Errors always come back as `{"code","message"}` with a 4xx status for
//! client faults and 500 for internal ones.

mod error;
mod routes;

pub use error::{WireCode, WireError};
pub use routes::{router, AppState, WireModel};

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use thiserror::Error;

use semspace_core::ontology::{build_concept_index, FormatRegistry};
use semspace_core::space::{MetaModel, Space, SpaceConfig, DEFAULT_MAX_LEASE_MS};

/// An ontology to load before the service starts accepting requests.
#[derive(Debug, Clone)]
pub struct OntologyPreload {
    pub path: PathBuf,
    pub format: String,
    pub model: MetaModel,
}

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub listen: SocketAddr,
    pub max_lease_ms: u64,
    pub max_payload_bytes: usize,
    pub reaper_interval_ms: u64,
    pub preload: Vec<OntologyPreload>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            listen: SocketAddr::from(([127, 0, 0, 1], 7654)),
            max_lease_ms: DEFAULT_MAX_LEASE_MS,
            max_payload_bytes: 64 * 1024 * 1024,
            reaper_interval_ms: 1000,
            preload: Vec::new(),
        }
    }
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("invalid service config: {0}")]
    InvalidConfig(String),
    #[error("failed to bind {addr}: {source}")]
    BindFailure {
        addr: SocketAddr,
        source: std::io::Error,
    },
    #[error("failed to preload ontology {path}: {message}")]
    PreloadFailure { path: PathBuf, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Builds the shared state for a fresh space configured per `config`, with
/// any configured ontologies preloaded.
pub fn build_state(config: &ServiceConfig) -> Result<Arc<AppState>, ServeError> {
    if config.max_payload_bytes == 0 {
        return Err(ServeError::InvalidConfig(
            "max_payload_bytes must be >= 1".into(),
        ));
    }
    let space = Arc::new(Space::new(SpaceConfig {
        max_lease_ms: config.max_lease_ms,
    }));
    let registry = FormatRegistry::builtin();
    for preload in &config.preload {
        let text =
            std::fs::read_to_string(&preload.path).map_err(|e| ServeError::PreloadFailure {
                path: preload.path.clone(),
                message: e.to_string(),
            })?;
        let index = registry
            .parse(&preload.format, &text)
            .and_then(|pairs| build_concept_index(pairs, &[]))
            .map_err(|e| ServeError::PreloadFailure {
                path: preload.path.clone(),
                message: e.to_string(),
            })?;
        space.load_model(preload.model, index);
    }
    Ok(Arc::new(AppState {
        space,
        registry,
        max_payload_bytes: config.max_payload_bytes,
    }))
}

/// Binds, starts the periodic lease reaper, and serves until `shutdown`
/// resolves (in-flight requests are drained). Reports the bound address
/// through `on_bound` before accepting traffic, so callers can bind port 0.
pub async fn serve_until(
    config: ServiceConfig,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
    on_bound: impl FnOnce(SocketAddr),
) -> Result<(), ServeError> {
    let state = build_state(&config)?;
    let space = Arc::clone(&state.space);
    let app = router(state);

    let listener = tokio::net::TcpListener::bind(config.listen)
        .await
        .map_err(|source| ServeError::BindFailure {
            addr: config.listen,
            source,
        })?;
    on_bound(listener.local_addr()?);

    let reaper = tokio::spawn(async move {
        let mut ticker =
            tokio::time::interval(Duration::from_millis(config.reaper_interval_ms.max(1)));
        loop {
            ticker.tick().await;
            space.expire_now();
        }
    });

    let result = axum::serve(listener, app)
        .with_graceful_shutdown(shutdown)
        .await;
    reaper.abort();
    result.map_err(ServeError::Io)
}

/// Serves until ctrl-c / SIGTERM.
pub async fn serve(
    config: ServiceConfig,
    on_bound: impl FnOnce(SocketAddr),
) -> Result<(), ServeError> {
    serve_until(config, shutdown_signal(), on_bound).await
}

async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let terminate = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut stream) => {
                stream.recv().await;
            }
            Err(_) => std::future::pending().await,
        }
    };
    #[cfg(not(unix))]
    let terminate = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = terminate => {}
    }
}
