//! Template and session storage.

use std::collections::HashMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{Duration, Instant};

use tapphrase::{AuthSession, Template};

/// Enrolled templates, optionally mirrored to one JSON file per template.
#[derive(Debug, Default)]
pub struct TemplateStore {
    templates: RwLock<HashMap<String, Template>>,
    dir: Option<PathBuf>,
}

impl TemplateStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (creating if needed) a persistence directory and loads every
    /// `*.json` template in it.
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut templates = HashMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let text = fs::read_to_string(&path)?;
            let template: Template = serde_json::from_str(&text).map_err(|e| {
                io::Error::new(
                    io::ErrorKind::InvalidData,
                    format!("{}: {e}", path.display()),
                )
            })?;
            templates.insert(template.id.clone(), template);
        }
        Ok(Self {
            templates: RwLock::new(templates),
            dir: Some(dir),
        })
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Stores a template, writing it to disk first when persistent.
    pub fn insert(&self, template: Template) -> io::Result<()> {
        if let Some(dir) = &self.dir {
            let json = serde_json::to_string_pretty(&template)?;
            let tmp = dir.join(format!(".{}.json.tmp", template.id));
            fs::write(&tmp, json)?;
            fs::rename(&tmp, dir.join(format!("{}.json", template.id)))?;
        }
        self.templates
            .write()
            .expect("template lock poisoned")
            .insert(template.id.clone(), template);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<Template> {
        self.templates
            .read()
            .expect("template lock poisoned")
            .get(id)
            .cloned()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.templates
            .read()
            .expect("template lock poisoned")
            .contains_key(id)
    }

    /// All templates, oldest first (ties by id).
    pub fn list(&self) -> Vec<Template> {
        let mut all: Vec<Template> = self
            .templates
            .read()
            .expect("template lock poisoned")
            .values()
            .cloned()
            .collect();
        all.sort_by(|a, b| {
            a.created_at
                .cmp(&b.created_at)
                .then_with(|| a.id.cmp(&b.id))
        });
        all
    }

    pub fn len(&self) -> usize {
        self.templates.read().expect("template lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub struct SessionEntry {
    pub session: AuthSession,
    last_activity: Instant,
}

type Slot = Arc<Mutex<SessionEntry>>;

/// Live streaming sessions. Each session has its own lock, so events for
/// one session are serialized while different sessions proceed in parallel.
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Slot>>,
    idle_timeout: Duration,
}

impl SessionStore {
    pub fn new(idle_timeout: Duration) -> Self {
        Self {
            sessions: Mutex::new(HashMap::new()),
            idle_timeout,
        }
    }

    pub fn insert(&self, id: String, session: AuthSession) {
        self.sweep();
        let entry = SessionEntry {
            session,
            last_activity: Instant::now(),
        };
        self.sessions
            .lock()
            .expect("session map poisoned")
            .insert(id, Arc::new(Mutex::new(entry)));
    }

    /// Runs `f` on the session under its lock and refreshes its idle timer.
    pub fn with_session<R>(&self, id: &str, f: impl FnOnce(&mut AuthSession) -> R) -> Option<R> {
        let slot = self
            .sessions
            .lock()
            .expect("session map poisoned")
            .get(id)
            .cloned()?;
        let mut entry = slot.lock().expect("session poisoned");
        entry.last_activity = Instant::now();
        Some(f(&mut entry.session))
    }

    pub fn remove(&self, id: &str) -> bool {
        self.sessions
            .lock()
            .expect("session map poisoned")
            .remove(id)
            .is_some()
    }

    /// Drops sessions idle for longer than the timeout. Returns how many.
    pub fn sweep(&self) -> usize {
        let now = Instant::now();
        let mut sessions = self.sessions.lock().expect("session map poisoned");
        let before = sessions.len();
        sessions.retain(|_, slot| match slot.try_lock() {
            Ok(entry) => now.duration_since(entry.last_activity) <= self.idle_timeout,
            // Busy right now, so not idle.
            Err(_) => true,
        });
        before - sessions.len()
    }

    pub fn len(&self) -> usize {
        self.sessions.lock().expect("session map poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
