//! Persistent membership verdicts keyed by canonical forms.
//!
//! The backing file is append-only, one record per line:
//! `<graph6 of G> <graph6 of H> <status> <mode>`, both graphs canonical. A
//! later line for the same pair wins, except that a sampled record never
//! replaces an exact one. `unknown` verdicts depend on the budget and are not
//! stored.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{Mode, Status};

/// Name of the environment variable naming the default cache file.
pub const CACHE_ENV: &str = "PRSAT_CACHE";

#[derive(Debug, Default)]
pub struct VerdictCache {
    path: Option<PathBuf>,
    records: HashMap<(CanonicalForm, CanonicalForm), (Status, Mode)>,
}

fn parse_status(s: &str) -> Option<Status> {
    match s {
        "member" => Some(Status::Member),
        "non_member" => Some(Status::NonMember),
        "unknown" => Some(Status::Unknown),
        _ => None,
    }
}

fn parse_mode(s: &str) -> Option<Mode> {
    match s {
        "exact" => Some(Mode::Exact),
        "sampled" => Some(Mode::Sampled),
        _ => None,
    }
}

impl VerdictCache {
    /// In-memory cache with no backing file.
    pub fn in_memory() -> Self {
        VerdictCache::default()
    }

    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = VerdictCache {
            path: Some(path.clone()),
            records: HashMap::new(),
        };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        let mut offset = 0;
        for line in text.lines() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !fields.is_empty() {
                let parsed = match fields.as_slice() {
                    [g, h, s, m] => parse_status(s).zip(parse_mode(m)).map(|sm| (g, h, sm)),
                    _ => None,
                };
                let (g, h, (status, mode)) =
                    parsed.ok_or_else(|| Error::parse(offset, format!("bad cache record {line:?}")))?;
                cache.insert(CanonicalForm::parse(g)?, CanonicalForm::parse(h)?, status, mode);
            }
            offset += line.len() + 1;
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn insert(&mut self, g: CanonicalForm, h: CanonicalForm, status: Status, mode: Mode) -> bool {
        if status == Status::Unknown {
            return false;
        }
        let key = (g, h);
        if let Some(&(old_status, old_mode)) = self.records.get(&key) {
            if old_mode == Mode::Exact && mode == Mode::Sampled {
                return false;
            }
            if (old_status, old_mode) == (status, mode) {
                return false;
            }
        }
        self.records.insert(key, (status, mode));
        true
    }

    pub fn get(&self, g: &Graph, h: &Graph) -> Option<(Status, Mode)> {
        self.records.get(&(canonical_form(g), canonical_form(h))).copied()
    }

    /// Stores a verdict, appending it to the backing file when it changes the
    /// cache.
    pub fn record(&mut self, g: &Graph, h: &Graph, status: Status, mode: Mode) -> Result<()> {
        let (cg, ch) = (canonical_form(g), canonical_form(h));
        let line = format!("{cg} {ch} {} {}\n", status.as_str(), mode.as_str());
        if self.insert(cg, ch, status, mode) {
            if let Some(path) = &self.path {
                let mut f = OpenOptions::new().create(true).append(true).open(path)?;
                f.write_all(line.as_bytes())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn exact_is_not_downgraded() {
        let mut c = VerdictCache::in_memory();
        let (g, h) = (complete(7).unwrap(), complete(4).unwrap());
        c.record(&g, &h, Status::Member, Mode::Exact).unwrap();
        c.record(&g, &h, Status::NonMember, Mode::Sampled).unwrap();
        assert_eq!(c.get(&g, &h), Some((Status::Member, Mode::Exact)));
        c.record(&path(3).unwrap(), &h, Status::Unknown, Mode::Exact).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn reload_matches() {
        let dir = std::env::temp_dir().join(format!("prsat-cache-test-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let (g, h) = (complete(6).unwrap(), complete(4).unwrap());
        {
            let mut c = VerdictCache::open(&dir).unwrap();
            c.record(&g, &h, Status::NonMember, Mode::Sampled).unwrap();
            c.record(&g, &h, Status::NonMember, Mode::Exact).unwrap();
            c.record(&g, &h, Status::NonMember, Mode::Sampled).unwrap();
        }
        let text = std::fs::read_to_string(&dir).unwrap();
        assert_eq!(text.lines().count(), 2);
        let c = VerdictCache::open(&dir).unwrap();
        assert_eq!(c.get(&g, &h), Some((Status::NonMember, Mode::Exact)));
        std::fs::write(&dir, "C~ C~ maybe exact\n").unwrap();
        assert!(matches!(VerdictCache::open(&dir), Err(Error::Parse { offset: 0, .. })));
        let _ = std::fs::remove_file(&dir);
    }
}
