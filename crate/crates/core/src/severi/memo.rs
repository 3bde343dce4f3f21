use std::collections::HashMap;
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::{Degree, SeveriError, SeveriKey, TangencyProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Computed,
    LoadedFromCache,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EvalStats {
    /// Keys whose stored value was produced by running the recursion. A
    /// duplicate concurrent computation of the same key is not counted.
    pub evaluations: u64,
    pub entries: usize,
    pub loaded: usize,
}

/// Thread-safe memo table for relative Severi degrees.
///
/// Values are inserted only if absent, so concurrent computations of the
/// same key leave the first stored value in place.
#[derive(Debug, Default)]
pub struct MemoStore {
    table: RwLock<HashMap<SeveriKey, (BigInt, Origin)>>,
    evaluations: AtomicU64,
}

impl MemoStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, key: &SeveriKey) -> Option<BigInt> {
        self.table.read().expect("memo lock").get(key).map(|(v, _)| v.clone())
    }

    pub(crate) fn insert_computed(&self, key: SeveriKey, value: BigInt) -> BigInt {
        let mut table = self.table.write().expect("memo lock");
        let slot = table.entry(key).or_insert_with(|| {
            self.evaluations.fetch_add(1, Ordering::Relaxed);
            (value, Origin::Computed)
        });
        slot.0.clone()
    }

    pub fn origin(&self, key: &SeveriKey) -> Option<Origin> {
        self.table.read().expect("memo lock").get(key).map(|(_, o)| *o)
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> EvalStats {
        let table = self.table.read().expect("memo lock");
        EvalStats {
            evaluations: self.evaluations.load(Ordering::Relaxed),
            entries: table.len(),
            loaded: table.values().filter(|(_, o)| *o == Origin::LoadedFromCache).count(),
        }
    }

    /// One record per line, `SURFACE deg delta fixed free value`, sorted.
    pub fn to_text(&self) -> String {
        let table = self.table.read().expect("memo lock");
        let mut rows: Vec<(&SeveriKey, &BigInt)> = table.iter().map(|(k, (v, _))| (k, v)).collect();
        rows.sort();
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k} {v}\n"));
        }
        out
    }

    /// Merges cache records. A record that contradicts a stored value is an error.
    pub fn load_text(&self, text: &str) -> Result<usize, SeveriError> {
        let mut parsed = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            parsed.push(parse_record(line).map_err(|message| SeveriError::Cache { line: i + 1, message })?);
        }
        let mut table = self.table.write().expect("memo lock");
        for (key, value) in &parsed {
            if let Some((old, _)) = table.get(key) {
                if old != value {
                    return Err(SeveriError::CacheConflict {
                        key: key.to_string(),
                        stored: old.clone(),
                        loaded: value.clone(),
                    });
                }
            }
        }
        let count = parsed.len();
        for (key, value) in parsed {
            table.entry(key).or_insert((value, Origin::LoadedFromCache));
        }
        Ok(count)
    }

    pub fn load_file(&self, path: &Path) -> Result<usize, SeveriError> {
        let text = std::fs::read_to_string(path).map_err(|e| SeveriError::Io(format!("{}: {e}", path.display())))?;
        self.load_text(&text)
    }

    pub fn save_file(&self, path: &Path) -> Result<(), SeveriError> {
        std::fs::write(path, self.to_text()).map_err(|e| SeveriError::Io(format!("{}: {e}", path.display())))
    }
}

fn parse_record(line: &str) -> Result<(SeveriKey, BigInt), String> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [surface, deg, delta, fixed, free, value] = fields[..] else {
        return Err(format!("expected 6 fields, found {}", fields.len()));
    };
    let number = |s: &str| s.parse::<u32>().map_err(|_| format!("bad number '{s}'"));
    let degree = match surface {
        "P2" => Degree::Plane(number(deg)?),
        "P1xP1" => {
            let (a, b) = deg.split_once(',').ok_or_else(|| format!("bad bidegree '{deg}'"))?;
            Degree::Quadric(number(a)?, number(b)?)
        }
        other => return Err(format!("unknown surface '{other}'")),
    };
    let key = SeveriKey {
        degree,
        delta: number(delta)?,
        fixed: fixed.parse::<TangencyProfile>()?,
        free: free.parse::<TangencyProfile>()?,
    };
    if key.fixed.intersection() + key.free.intersection() != degree.contact_number() {
        return Err(format!("profiles do not match the contact number of {degree}"));
    }
    let value: BigInt = value.parse().map_err(|_| format!("bad value '{value}'"))?;
    if value.is_negative() {
        return Err("negative value".into());
    }
    Ok((key, value))
}
