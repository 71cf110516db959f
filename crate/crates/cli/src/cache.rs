//! Append-only tab-separated log of search outcomes.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use ipset_core::PositionClass;

use crate::error::CliError;

pub const HEADER: &str = "n\tconstraint\td\twitness\texhausted_up_to\ttimestamp";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRow {
    pub n: usize,
    pub constraint: PositionClass,
    /// Minimal diameter, `None` when the budget ran out.
    pub d: Option<u64>,
    pub witness: Option<String>,
    pub exhausted_up_to: u64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

pub fn parse_constraint(s: &str) -> Option<PositionClass> {
    [
        PositionClass::Any,
        PositionClass::SemiGeneral,
        PositionClass::General,
    ]
    .into_iter()
    .find(|c| c.name() == s)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

impl CacheRow {
    pub fn to_line(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.constraint.name(),
            opt(&self.d),
            opt(&self.witness),
            self.exhausted_up_to,
            self.timestamp
        )
    }

    pub fn parse(line: &str) -> Result<Self, String> {
        let fields: Vec<&str> = line.split('\t').collect();
        let [n, constraint, d, witness, exhausted, timestamp] = fields[..] else {
            return Err(format!("expected 6 fields, got {}", fields.len()));
        };
        let num = |s: &str| s.parse::<u64>().map_err(|_| format!("bad number {s:?}"));
        Ok(CacheRow {
            n: num(n)? as usize,
            constraint: parse_constraint(constraint)
                .ok_or_else(|| format!("bad constraint {constraint:?}"))?,
            d: if d == "-" { None } else { Some(num(d)?) },
            witness: (witness != "-").then(|| witness.to_string()),
            exhausted_up_to: num(exhausted)?,
            timestamp: num(timestamp)?,
        })
    }

    /// Why two rows about the same problem cannot both be true.
    pub fn conflict(&self, other: &CacheRow) -> Option<String> {
        if (self.n, self.constraint) != (other.n, other.constraint) {
            return None;
        }
        let what = format!("n = {}, {}", self.n, self.constraint);
        match (self.d, other.d) {
            (Some(a), Some(b)) if a != b => Some(format!("{what}: minimal diameter {a} vs {b}")),
            (Some(a), None) if other.exhausted_up_to >= a => Some(format!(
                "{what}: minimum {a} but exhausted up to {} without a witness",
                other.exhausted_up_to
            )),
            (None, Some(_)) => other.conflict(self),
            _ => None,
        }
    }
}

pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn rows(&self) -> Result<Vec<CacheRow>, CliError> {
        let text = match fs::read_to_string(&self.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(CliError::io(&self.path, e)),
        };
        text.lines()
            .enumerate()
            .filter(|(i, l)| !(*i == 0 && *l == HEADER) && !l.is_empty())
            .map(|(i, l)| {
                CacheRow::parse(l)
                    .map_err(|e| CliError::Input(format!("{}:{}: {e}", self.path.display(), i + 1)))
            })
            .collect()
    }

    /// Append `row`, returning the earlier rows it contradicts.
    pub fn append(&self, row: &CacheRow) -> Result<Vec<String>, CliError> {
        let conflicts = self
            .rows()?
            .iter()
            .filter_map(|r| r.conflict(row))
            .collect();
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| CliError::io(&self.path, e))?;
        let fresh = file
            .metadata()
            .map_err(|e| CliError::io(&self.path, e))?
            .len()
            == 0;
        let mut text = String::new();
        if fresh {
            text.push_str(HEADER);
            text.push('\n');
        }
        text.push_str(&row.to_line());
        text.push('\n');
        file.write_all(text.as_bytes())
            .map_err(|e| CliError::io(&self.path, e))?;
        Ok(conflicts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(d: Option<u64>, exhausted: u64) -> CacheRow {
        CacheRow {
            n: 4,
            constraint: PositionClass::SemiGeneral,
            d,
            witness: d.map(|d| format!("w{d}.json")),
            exhausted_up_to: exhausted,
            timestamp: 7,
        }
    }

    #[test]
    fn line_round_trip() {
        for r in [row(Some(4), 3), row(None, 3)] {
            assert_eq!(CacheRow::parse(&r.to_line()), Ok(r));
        }
        assert_eq!(row(None, 3).to_line(), "4\tsemi-general\t-\t-\t3\t7");
        assert!(CacheRow::parse("4\tsemi\t-\t-\t3\t7").is_err());
        assert!(CacheRow::parse("4\tany\t-\t-\t3").is_err());
    }

    #[test]
    fn conflicts() {
        assert!(row(Some(4), 3).conflict(&row(None, 3)).is_none());
        assert!(row(Some(4), 3).conflict(&row(None, 4)).is_some());
        assert!(row(None, 10).conflict(&row(Some(4), 3)).is_some());
        assert!(row(Some(4), 3).conflict(&row(Some(5), 4)).is_some());
        assert!(row(None, 2).conflict(&row(None, 9)).is_none());
        let mut other = row(Some(5), 4);
        other.n = 5;
        assert!(row(Some(4), 3).conflict(&other).is_none());
    }

    #[test]
    fn append_only_file() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("sub/results.tsv"));
        assert!(cache.rows().unwrap().is_empty());
        assert!(cache.append(&row(None, 3)).unwrap().is_empty());
        assert!(cache.append(&row(Some(4), 3)).unwrap().is_empty());
        assert_eq!(cache.append(&row(None, 8)).unwrap().len(), 1);
        let text = fs::read_to_string(cache.path()).unwrap();
        assert!(text.starts_with(HEADER));
        assert_eq!(text.lines().count(), 4);
        assert_eq!(cache.rows().unwrap().len(), 3);
    }
}
