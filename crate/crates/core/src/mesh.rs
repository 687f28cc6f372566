//! MeSH Unique ID to Tree ID mapping and depth-two category truncation.
//!
//! A tree ID such as `A15.378.316.378` has depth five (root, `A`, `A15`,
//! then one level per dotted group). Categories are the depth-two nodes,
//! i.e. the leading letter-plus-digits group: `A15`, `B02`, `C05`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hin::TopicTable;

/// The sixteen top-level MeSH branches.
pub const CATEGORY_LETTERS: [char; 16] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'V', 'Z',
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("invalid MeSH unique ID {0:?}")]
    InvalidUniqueId(String),
    #[error("invalid MeSH tree ID {0:?}")]
    InvalidTreeId(String),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<MeshError>,
    },
    #[error("line {0}: expected `unique_id<TAB>tree_id`")]
    MissingField(usize),
}

/// `D` followed by exactly six digits.
pub fn is_valid_unique_id(id: &str) -> bool {
    let bytes = id.as_bytes();
    bytes.len() == 7 && bytes[0] == b'D' && bytes[1..].iter().all(u8::is_ascii_digit)
}

/// Branch letter, digits, then zero or more `.digits` groups.
pub fn is_valid_tree_id(id: &str) -> bool {
    let mut groups = id.split('.');
    let head = groups.next().unwrap_or("");
    let mut chars = head.chars();
    let head_ok = matches!(chars.next(), Some(c) if CATEGORY_LETTERS.contains(&c))
        && !chars.as_str().is_empty()
        && chars.all(|c| c.is_ascii_digit());
    head_ok && groups.all(|g| !g.is_empty() && g.bytes().all(|b| b.is_ascii_digit()))
}

/// A depth-two MeSH category such as `C05`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CategoryId(String);

impl CategoryId {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Branch letter of the category.
    pub fn letter(&self) -> char {
        category_letter(self)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Cuts a tree ID after its first group. Already-truncated IDs are returned
/// unchanged.
pub fn truncate_depth2(tree_id: &str) -> Result<CategoryId, MeshError> {
    if !is_valid_tree_id(tree_id) {
        return Err(MeshError::InvalidTreeId(tree_id.to_string()));
    }
    let head = tree_id.split('.').next().expect("validated");
    Ok(CategoryId(head.to_string()))
}

pub fn category_letter(c: &CategoryId) -> char {
    c.0.chars().next().expect("category ids are non-empty")
}

pub fn category_name(letter: char) -> Option<&'static str> {
    Some(match letter {
        'A' => "Anatomy",
        'B' => "Organisms",
        'C' => "Diseases",
        'D' => "Chemicals and Drugs",
        'E' => "Analytical, Diagnostic and Therapeutic Techniques and Equipment",
        'F' => "Psychiatry and Psychology",
        'G' => "Phenomena and Processes",
        'H' => "Disciplines and Occupations",
        'I' => "Anthropology, Education, Sociology and Social Phenomena",
        'J' => "Technology, Industry, Agriculture",
        'K' => "Humanities",
        'L' => "Information Science",
        'M' => "Named Groups",
        'N' => "Health Care",
        'V' => "Publication Characteristics",
        'Z' => "Geographicals",
        _ => return None,
    })
}

/// Unique ID -> every tree ID listed for it, in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MeshTable {
    entries: BTreeMap<String, Vec<String>>,
}

impl MeshTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn tree_ids(&self, unique_id: &str) -> Option<&[String]> {
        self.entries.get(unique_id).map(Vec::as_slice)
    }

    pub fn contains(&self, unique_id: &str) -> bool {
        self.entries.contains_key(unique_id)
    }

    /// Distinct depth-two categories of a unique ID, sorted.
    pub fn categories(&self, unique_id: &str) -> Vec<CategoryId> {
        let mut out: Vec<CategoryId> = self
            .tree_ids(unique_id)
            .unwrap_or(&[])
            .iter()
            .filter_map(|t| truncate_depth2(t).ok())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Every distinct category reachable from the table.
    pub fn all_categories(&self) -> Vec<CategoryId> {
        let mut out: Vec<CategoryId> = self
            .entries
            .values()
            .flatten()
            .filter_map(|t| truncate_depth2(t).ok())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

/// Parses `unique_id<TAB>tree_id` lines. Malformed records are reported with
/// their 1-based line number and skipped; blank and `#` lines are ignored.
pub fn parse_mesh_table(text: &str) -> (MeshTable, Vec<MeshError>) {
    let mut table = MeshTable::default();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim_end_matches('\r');
        if trimmed.trim().is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split('\t');
        let (Some(uid), Some(tree)) = (fields.next(), fields.next()) else {
            errors.push(MeshError::MissingField(line));
            continue;
        };
        let (uid, tree) = (uid.trim(), tree.trim());
        if !is_valid_unique_id(uid) {
            errors.push(MeshError::Line {
                line,
                source: Box::new(MeshError::InvalidUniqueId(uid.to_string())),
            });
            continue;
        }
        if !is_valid_tree_id(tree) {
            errors.push(MeshError::Line {
                line,
                source: Box::new(MeshError::InvalidTreeId(tree.to_string())),
            });
            continue;
        }
        let trees = table.entries.entry(uid.to_string()).or_default();
        if !trees.iter().any(|t| t == tree) {
            trees.push(tree.to_string());
        }
    }
    (table, errors)
}

/// Maps `(paper, unique_id)` pairs to depth-two categories. Returns the
/// topic table and the unique IDs absent from `table`, sorted and distinct.
pub fn categorize_papers<'a>(
    pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    table: &MeshTable,
) -> (TopicTable, Vec<String>) {
    let mut topics = TopicTable::new();
    let mut unmapped = Vec::new();
    for (paper, uid) in pairs {
        if !table.contains(uid) {
            unmapped.push(uid.to_string());
            continue;
        }
        for c in table.categories(uid) {
            topics.insert(paper, c.as_str());
        }
    }
    unmapped.sort();
    unmapped.dedup();
    (topics, unmapped)
}
