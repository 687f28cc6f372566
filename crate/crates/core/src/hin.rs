//! Node interning, topic tables, yearly link ledgers and the static
//! author-paper-mesh network.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sparse::{IncidenceError, SparseIncidence, SparseRow};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HinError {
    #[error("empty {0} label")]
    EmptyLabel(NodeType),
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("year {year} does not follow year {previous}")]
    YearOutOfOrder { year: i32, previous: i32 },
    #[error("year {0} has already been loaded and not yet materialized")]
    PendingYear(i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeType {
    Author,
    Paper,
    Mesh,
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeType::Author => "author",
            NodeType::Paper => "paper",
            NodeType::Mesh => "mesh",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeIndex {
    pub node_type: NodeType,
    pub index: usize,
}

/// Paper identity. Yearly ledgers date every paper so that a label reused in
/// a later year names a new publication.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PaperKey {
    pub label: String,
    pub year: Option<i32>,
}

impl PaperKey {
    pub fn undated(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            year: None,
        }
    }

    pub fn dated(label: impl Into<String>, year: i32) -> Self {
        Self {
            label: label.into(),
            year: Some(year),
        }
    }
}

impl fmt::Display for PaperKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.year {
            Some(y) => write!(f, "{}@{}", self.label, y),
            None => f.write_str(&self.label),
        }
    }
}

/// Bijective label/index map with dense indices.
#[derive(Debug, Clone)]
pub struct Interner<K> {
    node_type: NodeType,
    keys: IndexSet<K>,
}

impl<K: Hash + Eq> Interner<K> {
    pub fn new(node_type: NodeType) -> Self {
        Self {
            node_type,
            keys: IndexSet::new(),
        }
    }

    pub fn intern(&mut self, key: K) -> usize {
        self.keys.insert_full(key).0
    }

    pub fn get<Q>(&self, key: &Q) -> Option<usize>
    where
        K: std::borrow::Borrow<Q>,
        Q: Hash + Eq + ?Sized,
    {
        self.keys.get_index_of(key)
    }

    pub fn key(&self, index: usize) -> &K {
        &self.keys[index]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn node_type(&self) -> NodeType {
        self.node_type
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &K)> {
        self.keys.iter().enumerate()
    }
}

/// One interner per node type.
#[derive(Debug, Clone)]
pub struct NodeRegistry {
    pub authors: Interner<String>,
    pub papers: Interner<PaperKey>,
    pub mesh: Interner<String>,
}

impl Default for NodeRegistry {
    fn default() -> Self {
        Self {
            authors: Interner::new(NodeType::Author),
            papers: Interner::new(NodeType::Paper),
            mesh: Interner::new(NodeType::Mesh),
        }
    }
}

impl NodeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns a label in the namespace of `node_type`. Paper labels are
    /// interned undated.
    pub fn intern(&mut self, label: &str, node_type: NodeType) -> Result<NodeIndex, HinError> {
        if label.is_empty() {
            return Err(HinError::EmptyLabel(node_type));
        }
        let index = match node_type {
            NodeType::Author => self.authors.intern(label.to_string()),
            NodeType::Paper => self.papers.intern(PaperKey::undated(label)),
            NodeType::Mesh => self.mesh.intern(label.to_string()),
        };
        Ok(NodeIndex { node_type, index })
    }

    pub fn len(&self, node_type: NodeType) -> usize {
        match node_type {
            NodeType::Author => self.authors.len(),
            NodeType::Paper => self.papers.len(),
            NodeType::Mesh => self.mesh.len(),
        }
    }

    pub fn label(&self, node: NodeIndex) -> String {
        match node.node_type {
            NodeType::Author => self.authors.key(node.index).clone(),
            NodeType::Paper => self.papers.key(node.index).to_string(),
            NodeType::Mesh => self.mesh.key(node.index).clone(),
        }
    }
}

/// Interns the labels of `links` and builds the `row_type x col_type`
/// incidence. Dimensions cover every node of the two types in `registry`.
pub fn build_incidence(
    registry: &mut NodeRegistry,
    links: &[(&str, &str, f64)],
    row_type: NodeType,
    col_type: NodeType,
) -> Result<SparseIncidence, HinError> {
    let mut triplets = Vec::with_capacity(links.len());
    for &(r, c, v) in links {
        let r = registry.intern(r, row_type)?.index;
        let c = registry.intern(c, col_type)?.index;
        triplets.push((r, c, v));
    }
    Ok(SparseIncidence::from_triplets(
        registry.len(row_type),
        registry.len(col_type),
        triplets,
    )?)
}

/// Paper label -> sorted, de-duplicated topic categories.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TopicTable {
    topics: BTreeMap<String, Vec<String>>,
}

impl TopicTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, paper: impl Into<String>, category: impl Into<String>) {
        let cats = self.topics.entry(paper.into()).or_default();
        let category = category.into();
        if let Err(pos) = cats.binary_search(&category) {
            cats.insert(pos, category);
        }
    }

    pub fn categories(&self, paper: &str) -> &[String] {
        self.topics.get(paper).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, paper: &str) -> bool {
        self.topics.contains_key(paper)
    }

    pub fn len(&self) -> usize {
        self.topics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topics.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.topics.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

impl<P: Into<String>, C: Into<String>> FromIterator<(P, C)> for TopicTable {
    fn from_iter<T: IntoIterator<Item = (P, C)>>(iter: T) -> Self {
        let mut t = Self::new();
        for (p, c) in iter {
            t.insert(p, c);
        }
        t
    }
}

/// Interns the categories of every paper in `registry` (in paper order) and
/// returns the binary mesh x paper incidence.
fn mesh_paper_incidence(registry: &mut NodeRegistry, topics: &TopicTable) -> SparseIncidence {
    let mut pairs = Vec::new();
    for p in 0..registry.papers.len() {
        let label = registry.papers.key(p).label.clone();
        for cat in topics.categories(&label) {
            let m = registry.mesh.intern(cat.clone());
            pairs.push((m, p));
        }
    }
    SparseIncidence::from_pairs(registry.mesh.len(), registry.papers.len(), pairs)
        .expect("indices come from the registry")
}

/// Cumulative pre-year links plus the links of the year being processed.
#[derive(Debug, Clone)]
pub struct YearLedger {
    year: Option<i32>,
    pending: bool,
    experience: IndexSet<(String, PaperKey)>,
    update: IndexSet<(String, PaperKey)>,
    topics: TopicTable,
    nodes: NodeRegistry,
}

/// Matrices of one materialized year. All share the ledger's index spaces.
#[derive(Debug, Clone)]
pub struct YearMatrices {
    pub year: i32,
    /// author x paper, links of all earlier years.
    pub experience: SparseIncidence,
    /// author x paper, links of the current year.
    pub update: SparseIncidence,
    /// mesh x paper, binary.
    pub mesh_paper: SparseIncidence,
}

impl YearLedger {
    pub fn new(topics: TopicTable) -> Self {
        Self {
            year: None,
            pending: false,
            experience: IndexSet::new(),
            update: IndexSet::new(),
            topics,
            nodes: NodeRegistry::new(),
        }
    }

    pub fn year(&self) -> Option<i32> {
        self.year
    }

    pub fn topics(&self) -> &TopicTable {
        &self.topics
    }

    pub fn nodes(&self) -> &NodeRegistry {
        &self.nodes
    }

    pub fn experience_links(&self) -> impl Iterator<Item = &(String, PaperKey)> {
        self.experience.iter()
    }

    pub fn update_links(&self) -> impl Iterator<Item = &(String, PaperKey)> {
        self.update.iter()
    }

    /// Loads the links of `year` as the current-year list. Years must be
    /// strictly increasing.
    pub fn load_year<A, P>(
        &mut self,
        year: i32,
        links: impl IntoIterator<Item = (A, P)>,
    ) -> Result<(), HinError>
    where
        A: Into<String>,
        P: Into<String>,
    {
        if self.pending {
            return Err(HinError::PendingYear(self.year.unwrap_or(year)));
        }
        if let Some(previous) = self.year {
            if year <= previous {
                return Err(HinError::YearOutOfOrder { year, previous });
            }
        }
        let mut update = IndexSet::new();
        for (a, p) in links {
            let (a, p) = (a.into(), p.into());
            if a.is_empty() {
                return Err(HinError::EmptyLabel(NodeType::Author));
            }
            if p.is_empty() {
                return Err(HinError::EmptyLabel(NodeType::Paper));
            }
            update.insert((a, PaperKey::dated(p, year)));
        }
        self.update = update;
        self.year = Some(year);
        self.pending = true;
        Ok(())
    }

    /// Builds the experience and update matrices for the loaded year and
    /// folds the current-year links into the experience list.
    pub fn materialize(&mut self) -> YearMatrices {
        let year = self.year.expect("materialize called before load_year");
        for (a, p) in self.experience.iter().chain(self.update.iter()) {
            self.nodes.authors.intern(a.clone());
            self.nodes.papers.intern(p.clone());
        }
        let mesh_paper = mesh_paper_incidence(&mut self.nodes, &self.topics);
        let (n_a, n_p) = (self.nodes.authors.len(), self.nodes.papers.len());
        let index = |links: &IndexSet<(String, PaperKey)>| -> Vec<(usize, usize)> {
            links
                .iter()
                .map(|(a, p)| {
                    (
                        self.nodes.authors.get(a.as_str()).unwrap(),
                        self.nodes.papers.get(p).unwrap(),
                    )
                })
                .collect()
        };
        let experience = SparseIncidence::from_pairs(n_a, n_p, index(&self.experience))
            .expect("indices come from the registry");
        let update = SparseIncidence::from_pairs(n_a, n_p, index(&self.update))
            .expect("indices come from the registry");

        let current = std::mem::take(&mut self.update);
        self.experience.extend(current);
        self.pending = false;
        YearMatrices {
            year,
            experience,
            update,
            mesh_paper,
        }
    }
}

/// Static author-paper-mesh network with the incidences every similarity
/// kernel reads.
#[derive(Debug, Clone)]
pub struct Network {
    nodes: NodeRegistry,
    author_paper: SparseIncidence,
    paper_author: SparseIncidence,
    mesh_paper: SparseIncidence,
    paper_mesh: SparseIncidence,
    mesh_paper_weighted: SparseIncidence,
}

impl Network {
    /// Builds the network from author-paper links; topics are looked up by
    /// paper label.
    pub fn from_links<A: AsRef<str>>(
        links: impl IntoIterator<Item = (A, PaperKey)>,
        topics: &TopicTable,
    ) -> Result<Self, HinError> {
        let mut nodes = NodeRegistry::new();
        let mut pairs = Vec::new();
        for (a, p) in links {
            let a = a.as_ref();
            if a.is_empty() {
                return Err(HinError::EmptyLabel(NodeType::Author));
            }
            if p.label.is_empty() {
                return Err(HinError::EmptyLabel(NodeType::Paper));
            }
            let ai = nodes.authors.intern(a.to_string());
            let pi = nodes.papers.intern(p);
            pairs.push((ai, pi));
        }
        let mesh_paper = mesh_paper_incidence(&mut nodes, topics);
        let author_paper =
            SparseIncidence::from_pairs(nodes.authors.len(), nodes.papers.len(), pairs)?;
        Ok(Self::from_parts(nodes, author_paper, mesh_paper))
    }

    pub(crate) fn from_parts(
        nodes: NodeRegistry,
        author_paper: SparseIncidence,
        mesh_paper: SparseIncidence,
    ) -> Self {
        Self {
            paper_author: author_paper.transpose(),
            paper_mesh: mesh_paper.transpose(),
            mesh_paper_weighted: mesh_paper.column_normalized(),
            nodes,
            author_paper,
            mesh_paper,
        }
    }

    pub fn builder() -> NetworkBuilder {
        NetworkBuilder::default()
    }

    pub fn nodes(&self) -> &NodeRegistry {
        &self.nodes
    }

    pub fn n_authors(&self) -> usize {
        self.nodes.authors.len()
    }

    pub fn n_papers(&self) -> usize {
        self.nodes.papers.len()
    }

    pub fn n_mesh(&self) -> usize {
        self.nodes.mesh.len()
    }

    pub fn author(&self, label: &str) -> Option<usize> {
        self.nodes.authors.get(label)
    }

    pub fn mesh(&self, label: &str) -> Option<usize> {
        self.nodes.mesh.get(label)
    }

    /// Index of an undated paper.
    pub fn paper(&self, label: &str) -> Option<usize> {
        self.nodes.papers.get(&PaperKey::undated(label))
    }

    pub fn author_paper(&self) -> &SparseIncidence {
        &self.author_paper
    }

    pub fn paper_author(&self) -> &SparseIncidence {
        &self.paper_author
    }

    pub fn mesh_paper(&self) -> &SparseIncidence {
        &self.mesh_paper
    }

    pub fn paper_mesh(&self) -> &SparseIncidence {
        &self.paper_mesh
    }

    /// Mesh x paper incidence with each paper's links weighted by the
    /// reciprocal of its category count.
    pub fn mesh_paper_weighted(&self) -> &SparseIncidence {
        &self.mesh_paper_weighted
    }

    pub fn papers_of(&self, author: usize) -> SparseRow<'_> {
        self.author_paper.row(author)
    }

    pub fn authors_of(&self, paper: usize) -> SparseRow<'_> {
        self.paper_author.row(paper)
    }

    pub fn categories_of(&self, paper: usize) -> SparseRow<'_> {
        self.paper_mesh.row(paper)
    }
}

/// Convenience builder: one call per paper.
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    links: Vec<(String, PaperKey)>,
    topics: TopicTable,
}

impl NetworkBuilder {
    pub fn paper(mut self, label: &str, authors: &[&str], categories: &[&str]) -> Self {
        for a in authors {
            self.links.push((a.to_string(), PaperKey::undated(label)));
        }
        for c in categories {
            self.topics.insert(label, *c);
        }
        self
    }

    pub fn build(self) -> Result<Network, HinError> {
        Network::from_links(self.links, &self.topics)
    }
}
