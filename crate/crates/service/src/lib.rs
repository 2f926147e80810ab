//! HTTP session service for playing exact slow NIM(n, n-1) against the
//! GM-strategy.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | `POST` | `/sessions` | `{"piles": [..], "human_first": bool}` | `201` session |
//! | `GET` | `/sessions/{id}` | | session |
//! | `POST` | `/sessions/{id}/move` | `{"keep_index": k}` | session |
//! | `GET` | `/sessions/{id}/hint` | | `{"keep_index": k, "remoteness": r}` |
//!
//! A session carries `id`, sorted `piles`, `status` (`Active`, `HumanLost`,
//! `HumanWon`), `human_to_move`, `remoteness`, `outcome` (`"P"`/`"N"`),
//! `hint` and `history`. Keep indices are 1-based into the sorted piles.
//!
//! Errors come back as `{"error": "..."}` with status 400 for malformed
//! input, 404 for unknown sessions, 422 for illegal keeps and 409 for
//! finished games or a concurrent request on the same session.

use std::net::SocketAddr;
use std::time::Duration;

mod api;
mod session;

pub use api::{router, CreateRequest, MoveRequest};
pub use session::{
    GameSession, HistoryEntry, Hint, Player, SessionError, SessionStore, SessionView, Status,
};

/// Serves the API on `addr` until the process stops, evicting idle sessions.
pub async fn serve(addr: SocketAddr, ttl: Duration) -> std::io::Result<()> {
    let store = SessionStore::new(ttl);
    let sweeper = store.clone();
    tokio::spawn(async move {
        let mut tick = tokio::time::interval(ttl.max(Duration::from_secs(1)));
        loop {
            tick.tick().await;
            sweeper.evict_expired();
        }
    });
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store)).await
}
