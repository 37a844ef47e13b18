//! Local HTTP API over the tap-phrase engine.
//!
//! Clients supply their own input-device timestamps; the server only checks
//! that each session's events are ordered. Endpoints:
//!
//! | method | path | body → response |
//! |---|---|---|
//! | GET | `/api/health` | → `{ok: true}` |
//! | GET | `/api/templates` | → `[{id, tapCount, spanMs, createdAt, params}]` |
//! | POST | `/api/templates` | `{events, params?}` → 201 `{id, tapCount, spanMs}` |
//! | POST | `/api/templates/{id}/verify` | `{events, matcher?}` → `{accepted, distance?, gates}` |
//! | POST | `/api/templates/{id}/sessions` | → 201 `{sessionId}` |
//! | POST | `/api/sessions/{sid}/events` | `{t, k}` → `{accepted, matchedWindow?}` |
//! | POST | `/api/sessions/{sid}/reset` | → 204 |
//! | DELETE | `/api/sessions/{sid}` | → 204 |
//!
//! Errors are `{error, detail}` with 400 (bad body), 404 (unknown id) or
//! 409 (event rejected by the session state machine).

pub mod api;
pub mod error;
pub mod store;

use std::future::Future;
use std::io;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::Router;
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;

pub use error::ApiError;
pub use store::{SessionStore, TemplateStore};

pub const DEFAULT_PORT: u16 = 8475;
pub const DEFAULT_SESSION_IDLE: Duration = Duration::from_secs(5 * 60);

pub struct AppState {
    pub templates: TemplateStore,
    pub sessions: SessionStore,
}

impl AppState {
    pub fn new(templates: TemplateStore, session_idle: Duration) -> Self {
        Self {
            templates,
            sessions: SessionStore::new(session_idle),
        }
    }

    pub fn in_memory() -> Self {
        Self::new(TemplateStore::in_memory(), DEFAULT_SESSION_IDLE)
    }
}

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    pub data_dir: Option<PathBuf>,
    pub session_idle: Duration,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            addr: SocketAddr::from(([127, 0, 0, 1], DEFAULT_PORT)),
            data_dir: None,
            session_idle: DEFAULT_SESSION_IDLE,
        }
    }
}

pub(crate) fn new_id() -> String {
    uuid::Uuid::new_v4().simple().to_string()
}

/// Full application router with permissive CORS for the demo page.
pub fn router(state: Arc<AppState>) -> Router {
    api::routes(state).layer(CorsLayer::permissive())
}

/// A bound but not yet running service.
pub struct Service {
    listener: TcpListener,
    state: Arc<AppState>,
}

impl Service {
    /// Loads persisted templates and binds the listening socket.
    pub async fn bind(config: &ServiceConfig) -> io::Result<Self> {
        let templates = match &config.data_dir {
            Some(dir) => TemplateStore::open(dir)?,
            None => TemplateStore::in_memory(),
        };
        let listener = TcpListener::bind(config.addr).await?;
        Ok(Self {
            listener,
            state: Arc::new(AppState::new(templates, config.session_idle)),
        })
    }

    pub fn local_addr(&self) -> io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    pub fn state(&self) -> Arc<AppState> {
        self.state.clone()
    }

    /// Serves until `shutdown` resolves. Idle sessions are swept once a
    /// minute in the background.
    pub async fn run(self, shutdown: impl Future<Output = ()> + Send + 'static) -> io::Result<()> {
        let sweeper = {
            let state = self.state.clone();
            tokio::spawn(async move {
                let mut tick = tokio::time::interval(Duration::from_secs(60));
                loop {
                    tick.tick().await;
                    state.sessions.sweep();
                }
            })
        };
        let result = axum::serve(self.listener, router(self.state))
            .with_graceful_shutdown(shutdown)
            .await;
        sweeper.abort();
        result
    }
}

/// Resolves on Ctrl-C or, on Unix, SIGTERM.
pub async fn shutdown_signal() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let terminate = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let terminate = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {}
        _ = terminate => {}
    }
}
