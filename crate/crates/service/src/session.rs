use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock, TryLockError};
use std::time::{Duration, Instant};

use gmrule::nim::{m_rule_move, remoteness, GamePosition, Outcome};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use uuid::Uuid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Active,
    HumanLost,
    HumanWon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Human,
    Engine,
}

/// One applied move. `keep_index` is 1-based into the sorted piles before the move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub by: Player,
    pub keep_index: usize,
    pub piles: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hint {
    pub keep_index: usize,
    pub remoteness: u64,
}

#[derive(Clone, Debug)]
pub struct GameSession {
    pub id: Uuid,
    pub position: GamePosition,
    pub human_to_move: bool,
    pub history: Vec<HistoryEntry>,
}

/// Wire form of a session, with the analysis of the current position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionView {
    pub id: Uuid,
    pub piles: Vec<u64>,
    pub status: Status,
    pub human_to_move: bool,
    pub remoteness: u64,
    pub outcome: String,
    pub hint: Option<Hint>,
    pub history: Vec<HistoryEntry>,
}

#[derive(Debug, PartialEq, Eq)]
pub enum SessionError {
    NotFound,
    InvalidPiles(String),
    IllegalMove(String),
    Finished,
    Busy,
}

fn piles_of(position: &GamePosition) -> Vec<u64> {
    position
        .piles()
        .entries()
        .iter()
        .map(|v| v.to_u64().expect("piles are u64 on ingest"))
        .collect()
}

fn hint_for(position: &GamePosition) -> Option<Hint> {
    let r = remoteness(position);
    r.best_move.map(|k| Hint {
        keep_index: k + 1,
        remoteness: r.remoteness.to_u64().unwrap_or(u64::MAX),
    })
}

impl GameSession {
    pub fn status(&self) -> Status {
        match (self.position.is_terminal(), self.human_to_move) {
            (false, _) => Status::Active,
            (true, true) => Status::HumanLost,
            (true, false) => Status::HumanWon,
        }
    }

    pub fn view(&self) -> SessionView {
        let r = remoteness(&self.position);
        SessionView {
            id: self.id,
            piles: piles_of(&self.position),
            status: self.status(),
            human_to_move: self.human_to_move,
            remoteness: r.remoteness.to_u64().unwrap_or(u64::MAX),
            outcome: match r.outcome {
                Outcome::P => "P".into(),
                Outcome::N => "N".into(),
            },
            hint: r.best_move.map(|k| Hint {
                keep_index: k + 1,
                remoteness: r.remoteness.to_u64().unwrap_or(u64::MAX),
            }),
            history: self.history.clone(),
        }
    }

    pub fn hint(&self) -> Result<Hint, SessionError> {
        hint_for(&self.position).ok_or(SessionError::Finished)
    }

    fn engine_reply(&mut self) {
        if self.human_to_move || self.position.is_terminal() {
            return;
        }
        let (next, kept) = m_rule_move(&self.position).expect("non-terminal position has a move");
        self.position = next;
        self.history.push(HistoryEntry {
            by: Player::Engine,
            keep_index: kept + 1,
            piles: piles_of(&self.position),
        });
        self.human_to_move = true;
    }

    /// Applies the human's keep (1-based) and the engine's reply.
    pub fn human_move(&mut self, keep_index: usize) -> Result<(), SessionError> {
        if self.status() != Status::Active {
            return Err(SessionError::Finished);
        }
        let n = self.position.len();
        if keep_index == 0 || keep_index > n {
            return Err(SessionError::IllegalMove(format!(
                "keep_index must be between 1 and {n}"
            )));
        }
        let next = self.position.keep(keep_index - 1).map_err(|_| {
            SessionError::IllegalMove(format!(
                "keeping pile {keep_index} would drive another pile below zero"
            ))
        })?;
        self.position = next;
        self.history.push(HistoryEntry {
            by: Player::Human,
            keep_index,
            piles: piles_of(&self.position),
        });
        self.human_to_move = false;
        self.engine_reply();
        Ok(())
    }
}

struct Slot {
    session: Mutex<GameSession>,
    touched: Mutex<Instant>,
}

/// In-memory session table with idle eviction.
#[derive(Clone)]
pub struct SessionStore {
    inner: Arc<RwLock<HashMap<Uuid, Arc<Slot>>>>,
    ttl: Duration,
}

impl SessionStore {
    pub fn new(ttl: Duration) -> Self {
        Self {
            inner: Arc::default(),
            ttl,
        }
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, piles: &[u64], human_first: bool) -> Result<SessionView, SessionError> {
        let position = GamePosition::new(piles.iter().copied())
            .map_err(|e| SessionError::InvalidPiles(e.to_string()))?;
        let mut session = GameSession {
            id: Uuid::new_v4(),
            position,
            human_to_move: human_first,
            history: Vec::new(),
        };
        session.engine_reply();
        let view = session.view();
        let slot = Arc::new(Slot {
            session: Mutex::new(session),
            touched: Mutex::new(Instant::now()),
        });
        self.inner.write().unwrap().insert(view.id, slot);
        Ok(view)
    }

    fn slot(&self, id: Uuid) -> Result<Arc<Slot>, SessionError> {
        let slot = self
            .inner
            .read()
            .unwrap()
            .get(&id)
            .cloned()
            .ok_or(SessionError::NotFound)?;
        let mut touched = slot.touched.lock().unwrap();
        if touched.elapsed() > self.ttl {
            drop(touched);
            self.inner.write().unwrap().remove(&id);
            return Err(SessionError::NotFound);
        }
        *touched = Instant::now();
        drop(touched);
        Ok(slot)
    }

    /// Runs `f` with exclusive access to the session. A session already in
    /// use by another request yields [`SessionError::Busy`].
    pub fn with_session<T>(
        &self,
        id: Uuid,
        f: impl FnOnce(&mut GameSession) -> Result<T, SessionError>,
    ) -> Result<T, SessionError> {
        let slot = self.slot(id)?;
        let mut guard = match slot.session.try_lock() {
            Ok(g) => g,
            Err(TryLockError::WouldBlock) => return Err(SessionError::Busy),
            Err(TryLockError::Poisoned(p)) => p.into_inner(),
        };
        f(&mut guard)
    }

    pub fn get(&self, id: Uuid) -> Result<SessionView, SessionError> {
        self.with_session(id, |s| Ok(s.view()))
    }

    pub fn hint(&self, id: Uuid) -> Result<Hint, SessionError> {
        self.with_session(id, |s| s.hint())
    }

    pub fn human_move(&self, id: Uuid, keep_index: usize) -> Result<SessionView, SessionError> {
        self.with_session(id, |s| {
            s.human_move(keep_index)?;
            Ok(s.view())
        })
    }

    /// Drops sessions idle for longer than the TTL. Returns how many were removed.
    pub fn evict_expired(&self) -> usize {
        let mut map = self.inner.write().unwrap();
        let before = map.len();
        map.retain(|_, slot| slot.touched.lock().unwrap().elapsed() <= self.ttl);
        before - map.len()
    }
}
