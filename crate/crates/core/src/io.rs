//! Text formats: yearly link lists, paper-to-MeSH lists and JSONL
//! expertise snapshots.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamic::ExpertiseStore;

/// Significant digits kept when writing snapshot values.
pub const SNAPSHOT_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source_name}:{line}: {message}")]
pub struct ParseError {
    pub source_name: String,
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        Self {
            source_name: source_name.to_string(),
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkRecord {
    pub year: i32,
    pub author: String,
    pub paper: String,
}

/// Non-blank, non-comment lines with 1-based line numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
}

fn fields<'a, const N: usize>(
    line: &'a str,
    source_name: &str,
    no: usize,
) -> Result<[&'a str; N], ParseError> {
    let parts: Vec<&str> = line.split('\t').map(str::trim).collect();
    let arr: [&str; N] = parts
        .try_into()
        .map_err(|p: Vec<&str>| ParseError::new(source_name, no, format!("expected {N} tab-separated fields, found {}", p.len())))?;
    if let Some(i) = arr.iter().position(|f| f.is_empty()) {
        return Err(ParseError::new(source_name, no, format!("field {} is empty", i + 1)));
    }
    Ok(arr)
}

/// `year<TAB>author<TAB>paper` per line.
pub fn parse_links(text: &str, source_name: &str) -> Result<Vec<LinkRecord>, ParseError> {
    records(text)
        .map(|(no, line)| {
            let [year, author, paper] = fields::<3>(line, source_name, no)?;
            let year = year
                .parse()
                .map_err(|_| ParseError::new(source_name, no, format!("invalid year {year:?}")))?;
            Ok(LinkRecord {
                year,
                author: author.to_string(),
                paper: paper.to_string(),
            })
        })
        .collect()
}

/// `paper<TAB>mesh_unique_id` per line.
pub fn parse_paper_mesh(text: &str, source_name: &str) -> Result<Vec<(String, String)>, ParseError> {
    records(text)
        .map(|(no, line)| {
            let [paper, uid] = fields::<2>(line, source_name, no)?;
            Ok((paper.to_string(), uid.to_string()))
        })
        .collect()
}

pub fn links_tsv(links: &[LinkRecord]) -> String {
    let mut out = String::new();
    for l in links {
        writeln!(out, "{}\t{}\t{}", l.year, l.author, l.paper).unwrap();
    }
    out
}

pub fn pairs_tsv(pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (a, b) in pairs {
        writeln!(out, "{a}\t{b}").unwrap();
    }
    out
}

/// Rounds to `digits` significant digits.
pub fn round_significant(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{:.*e}", digits.saturating_sub(1), v).parse().unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRecord {
    pub year: i32,
    pub author: String,
    pub expertise: BTreeMap<String, f64>,
}

/// One JSON line per author, sorted by author and category.
pub fn snapshot_jsonl(store: &ExpertiseStore) -> String {
    let year = store.year().expect("snapshots carry a year");
    let mut out = String::new();
    for (author, profile) in store.iter() {
        let record = SnapshotRecord {
            year,
            author: author.to_string(),
            expertise: profile
                .iter()
                .map(|(c, v)| (c.clone(), round_significant(*v, SNAPSHOT_DIGITS)))
                .collect(),
        };
        out.push_str(&serde_json::to_string(&record).expect("plain data serializes"));
        out.push('\n');
    }
    out
}

/// Parses JSONL snapshot records into one store per year, in year order.
pub fn parse_snapshots(text: &str, source_name: &str) -> Result<Vec<ExpertiseStore>, ParseError> {
    let mut by_year: BTreeMap<i32, ExpertiseStore> = BTreeMap::new();
    for (no, line) in records(text) {
        let rec: SnapshotRecord =
            serde_json::from_str(line).map_err(|e| ParseError::new(source_name, no, e.to_string()))?;
        let store = by_year
            .entry(rec.year)
            .or_insert_with(|| ExpertiseStore::with_year(rec.year));
        for (c, v) in rec.expertise {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ParseError::new(source_name, no, format!("invalid expertise value {v}")));
            }
            store.set(&rec.author, &c, v);
        }
    }
    Ok(by_year.into_values().collect())
}
