//! Line-oriented persistence of level-0 invariants.
//!
//! ```text
//! ratcurve-cache v1
//! <key>=<value>        one per line, sorted by key
//! end <entry count>
//! ```
//!
//! The footer lets a truncated file be told apart from a short one.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use ratcurve_core::{Engine, ExactScalar, InvariantKey};
use thiserror::Error;

pub const HEADER: &str = "ratcurve-cache v1";
const MAGIC: &str = "ratcurve-cache ";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cannot read cache: {0}")]
    Io(#[from] io::Error),
    #[error("cache format {found:?} is not {HEADER:?}")]
    Version { found: String },
    #[error("not a cache file")]
    NotACache,
    #[error("corrupt cache at line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error("cache is truncated")]
    Truncated,
}

pub type Entries = Vec<(InvariantKey, ExactScalar)>;

pub fn render(entries: &[(InvariantKey, ExactScalar)]) -> String {
    let mut lines: Vec<String> = entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
    lines.sort();
    let mut out = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum::<usize>() + 64);
    out.push_str(HEADER);
    out.push('\n');
    for l in &lines {
        out.push_str(l);
        out.push('\n');
    }
    out.push_str(&format!("end {}\n", lines.len()));
    out
}

pub fn parse(text: &str) -> Result<Entries, CacheError> {
    let mut lines = text.split_inclusive('\n');
    let header = lines.next().ok_or(CacheError::Truncated)?;
    let header = header.strip_suffix('\n').ok_or(CacheError::Truncated)?;
    if header != HEADER {
        return Err(if header.starts_with(MAGIC) {
            CacheError::Version {
                found: header.to_string(),
            }
        } else {
            CacheError::NotACache
        });
    }
    let mut entries = Entries::new();
    for (i, raw) in lines.enumerate() {
        let line_no = i + 2;
        // every line, the footer included, ends in a newline
        let line = raw.strip_suffix('\n').ok_or(CacheError::Truncated)?;
        if let Some(count) = line.strip_prefix("end ") {
            let corrupt = |reason: &str| CacheError::Corrupt {
                line: line_no,
                reason: reason.to_string(),
            };
            let count: usize = count.parse().map_err(|_| corrupt("bad footer"))?;
            if count != entries.len() {
                return Err(CacheError::Truncated);
            }
            if consumed(text, line_no) != text.len() {
                return Err(corrupt("data after footer"));
            }
            return Ok(entries);
        }
        let corrupt = |reason: String| CacheError::Corrupt {
            line: line_no,
            reason,
        };
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| corrupt("missing '='".into()))?;
        let key: InvariantKey = k.parse().map_err(|e| corrupt(format!("{e}")))?;
        let value: ExactScalar = v.parse().map_err(|_| corrupt(format!("bad value {v:?}")))?;
        entries.push((key, value));
    }
    Err(CacheError::Truncated)
}

/// Byte length of the first `lines` lines of `text`.
fn consumed(text: &str, lines: usize) -> usize {
    text.split_inclusive('\n').take(lines).map(str::len).sum()
}

pub fn load(path: &Path) -> Result<Entries, CacheError> {
    parse(&fs::read_to_string(path)?)
}

/// Writes every level-0 entry of `engine`; returns how many were written.
/// The file is replaced atomically through a sibling temporary.
pub fn save(engine: &Engine, path: &Path) -> io::Result<usize> {
    let entries = engine.level0_entries();
    let text = render(&entries);
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(entries.len())
}
