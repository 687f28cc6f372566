//! HeteSim along meta-paths: the recursive definition, the
//! reachable-probability form and the adjacency (count) form.

use std::collections::BTreeMap;

use crate::hin::{Network, NodeType};
use crate::sparse::{SparseIncidence, SparseVec};

use super::{hetealloc, MeshWeighting, SimilarityError, SubsetMask};

/// Ordered node types of a composite relation, e.g. Author-Paper-Mesh.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetaPath {
    node_types: Vec<NodeType>,
}

impl MetaPath {
    pub fn new(node_types: impl Into<Vec<NodeType>>) -> Result<Self, SimilarityError> {
        let node_types = node_types.into();
        if node_types.len() < 2 {
            return Err(SimilarityError::PathTooShort);
        }
        Ok(Self { node_types })
    }

    pub fn node_types(&self) -> &[NodeType] {
        &self.node_types
    }

    /// Number of relations along the path.
    pub fn relations(&self) -> usize {
        self.node_types.len() - 1
    }

    pub fn source(&self) -> NodeType {
        self.node_types[0]
    }

    pub fn target(&self) -> NodeType {
        *self.node_types.last().unwrap()
    }

    pub fn reversed(&self) -> Self {
        let mut node_types = self.node_types.clone();
        node_types.reverse();
        Self { node_types }
    }

    pub fn is_symmetric(&self) -> bool {
        self.node_types.iter().eq(self.node_types.iter().rev())
    }

    /// Splits an even-length path at its middle node into the left half and
    /// the reverse of the right half; both end at the middle type.
    pub fn split(&self) -> Result<(MetaPath, MetaPath), SimilarityError> {
        let l = self.relations();
        if !l.is_multiple_of(2) {
            return Err(SimilarityError::OddPath(l));
        }
        let mid = l / 2;
        let left = self.node_types[..=mid].to_vec();
        let mut right = self.node_types[mid..].to_vec();
        right.reverse();
        Ok((Self { node_types: left }, Self { node_types: right }))
    }
}

/// Adjacency matrices between node types. Registering `A -> B` also
/// registers the transpose as `B -> A`.
#[derive(Debug, Clone, Default)]
pub struct Schema {
    relations: BTreeMap<(NodeType, NodeType), SparseIncidence>,
}

impl Schema {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, from: NodeType, to: NodeType, adjacency: SparseIncidence) {
        self.relations.insert((to, from), adjacency.transpose());
        self.relations.insert((from, to), adjacency);
    }

    /// Author-Paper and Paper-Mesh relations of a network.
    pub fn from_network(net: &Network, weighting: MeshWeighting) -> Self {
        let mut s = Self::new();
        s.insert(NodeType::Author, NodeType::Paper, net.author_paper().clone());
        let mesh_paper = match weighting {
            MeshWeighting::Binary => net.mesh_paper(),
            MeshWeighting::Weighted => net.mesh_paper_weighted(),
        };
        s.insert(NodeType::Mesh, NodeType::Paper, mesh_paper.clone());
        s
    }

    pub fn relation(&self, from: NodeType, to: NodeType) -> Result<&SparseIncidence, SimilarityError> {
        self.relations
            .get(&(from, to))
            .ok_or(SimilarityError::MissingRelation { from, to })
    }

    fn steps(&self, path: &MetaPath) -> Result<Vec<&SparseIncidence>, SimilarityError> {
        path.node_types
            .windows(2)
            .map(|w| self.relation(w[0], w[1]))
            .collect()
    }
}

/// Row-stochastic version of an adjacency matrix; empty rows stay empty.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix(SparseIncidence);

impl TransitionMatrix {
    pub fn matrix(&self) -> &SparseIncidence {
        &self.0
    }
}

pub fn transition_matrix(adjacency: &SparseIncidence) -> TransitionMatrix {
    TransitionMatrix(adjacency.row_normalized())
}

/// Probability of reaching each target node from each source node by a
/// uniform walk along a meta-path.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachableProbabilityMatrix(SparseIncidence);

impl ReachableProbabilityMatrix {
    pub fn matrix(&self) -> &SparseIncidence {
        &self.0
    }

    pub fn row(&self, source: usize) -> SparseVec {
        self.0.row(source).to_owned()
    }
}

/// Ordered product of the transition matrices along `path`.
pub fn reachable_probability(
    schema: &Schema,
    path: &MetaPath,
) -> Result<ReachableProbabilityMatrix, SimilarityError> {
    let steps = schema.steps(path)?;
    let mut acc = transition_matrix(steps[0]).0;
    for step in &steps[1..] {
        acc = acc.matmul(transition_matrix(step).matrix())?;
    }
    Ok(ReachableProbabilityMatrix(acc))
}

/// Walks a single source row along the path, optionally row-normalizing
/// each step.
fn walk_row(
    schema: &Schema,
    path: &MetaPath,
    source: usize,
    normalize: bool,
) -> Result<SparseVec, SimilarityError> {
    let steps = schema.steps(path)?;
    let first = steps[0];
    if source >= first.n_rows() {
        return Err(SimilarityError::IndexOutOfRange {
            node_type: path.source(),
            index: source,
        });
    }
    let mut v = SparseVec::unit(first.n_rows(), source);
    for step in steps {
        let m = if normalize {
            step.row_normalized()
        } else {
            step.clone()
        };
        v = v.view().mul_matrix(&m)?;
    }
    Ok(v)
}

/// Normalized HeteSim: cosine of the reachable-probability rows of `a`
/// along the left half and `b` along the reversed right half. Zero when
/// either side reaches nothing.
pub fn hetesim_normalized(
    schema: &Schema,
    a: usize,
    b: usize,
    path: &MetaPath,
) -> Result<f64, SimilarityError> {
    let (left, right) = path.split()?;
    let x = walk_row(schema, &left, a, true)?;
    let y = walk_row(schema, &right, b, true)?;
    let denom = x.view().norm_l2() * y.view().norm_l2();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((x.view().dot(y.view())? / denom).min(1.0))
}

/// Adjacency-matrix form: path counts on both halves, normalized by the
/// square roots of their entry sums.
pub fn hetesim_adjacency(
    schema: &Schema,
    a: usize,
    b: usize,
    path: &MetaPath,
) -> Result<f64, SimilarityError> {
    let (left, right) = path.split()?;
    let x = walk_row(schema, &left, a, false)?;
    let y = walk_row(schema, &right, b, false)?;
    let denom = x.entry_sum() * y.entry_sum();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(x.view().dot(y.view())? / denom.sqrt())
}

/// Unnormalized HeteSim by the recursive neighbour-averaging definition.
/// Exponential in path length; meant for small graphs.
pub fn hetesim_recursive(
    schema: &Schema,
    a: usize,
    b: usize,
    path: &MetaPath,
) -> Result<f64, SimilarityError> {
    if !path.relations().is_multiple_of(2) {
        return Err(SimilarityError::OddPath(path.relations()));
    }
    recurse(schema, a, b, path.node_types())
}

fn recurse(schema: &Schema, s: usize, t: usize, types: &[NodeType]) -> Result<f64, SimilarityError> {
    if types.len() == 1 {
        return Ok(if s == t { 1.0 } else { 0.0 });
    }
    let l = types.len() - 1;
    let out = schema.relation(types[0], types[1])?.row(s);
    let inn = schema.relation(types[l], types[l - 1])?.row(t);
    if out.is_empty() || inn.is_empty() {
        return Ok(0.0);
    }
    let inner = &types[1..l];
    let mut acc = 0.0;
    for &o in out.indices() {
        for &i in inn.indices() {
            acc += recurse(schema, o, i, inner)?;
        }
    }
    Ok(acc / (out.nnz() * inn.nnz()) as f64)
}

/// HeteSim between an author and a mesh category in count form:
/// shared papers over the geometric mean of the author's paper count and the
/// category's paper count. With weighted mesh links the category side uses
/// the weighted row.
pub fn hetesim_author_mesh(net: &Network, a: usize, m: usize, weighting: MeshWeighting) -> f64 {
    hetealloc(net, a, m, &SubsetMask::all(net.n_papers()), weighting)
}
