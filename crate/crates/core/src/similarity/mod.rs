//! Author-to-category similarity and allocation kernels.
//!
//! HeteAlloc is HeteSim's count form with the category side filtered by a
//! paper subset:
//!
//! ```text
//!              M_AP[a] · (mask ⊙ M_MP[m])
//!   score = ---------------------------------------
//!           sqrt(Σ M_AP[a]) · sqrt(Σ mask ⊙ M_MP[m])
//! ```
//!
//! The subset strategies differ only in how `mask` is chosen. Any zero
//! factor in the denominator yields 0.

mod hetesim;

pub use hetesim::{
    hetesim_adjacency, hetesim_author_mesh, hetesim_normalized, hetesim_recursive,
    reachable_probability, transition_matrix, MetaPath, ReachableProbabilityMatrix, Schema,
    TransitionMatrix,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::hin::{Network, NodeType};
use crate::sparse::{AlgebraError, SparseIncidence, SparseRow, SparseVec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimilarityError {
    #[error("meta-path needs at least two node types")]
    PathTooShort,
    #[error("meta-path with {0} relations cannot be split at a middle node")]
    OddPath(usize),
    #[error("no relation registered from {from} to {to}")]
    MissingRelation { from: NodeType, to: NodeType },
    #[error("{node_type} index {index} out of range")]
    IndexOutOfRange { node_type: NodeType, index: usize },
    #[error("author {author} is not an author of paper {paper}")]
    NotAnAuthor { author: usize, paper: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Whether paper-category links count 1 or `1 / categories(paper)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum MeshWeighting {
    #[default]
    Binary,
    Weighted,
}

impl MeshWeighting {
    pub fn mesh_paper(self, net: &Network) -> &SparseIncidence {
        match self {
            MeshWeighting::Binary => net.mesh_paper(),
            MeshWeighting::Weighted => net.mesh_paper_weighted(),
        }
    }
}

/// How per-paper focal scores combine into one author-category value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Aggregation {
    Sum,
    Average,
}

/// Binary selection vector over the paper index space.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetMask(SparseVec);

impl SubsetMask {
    pub fn all(n_papers: usize) -> Self {
        Self(SparseVec::indicator(n_papers, 0..n_papers))
    }

    pub fn none(n_papers: usize) -> Self {
        Self(SparseVec::zeros(n_papers))
    }

    pub fn from_papers(n_papers: usize, papers: impl IntoIterator<Item = usize>) -> Self {
        Self(SparseVec::indicator(n_papers, papers))
    }

    /// Support of an arbitrary non-negative vector.
    pub fn from_support(v: SparseVec) -> Self {
        Self(v.binarize())
    }

    pub fn union(&self, other: &SubsetMask) -> Self {
        let sum = self.0.view().add(other.0.view()).expect("masks share the paper space");
        Self(sum.binarize())
    }

    pub fn view(&self) -> SparseRow<'_> {
        self.0.view()
    }

    pub fn papers(&self) -> &[usize] {
        self.0.indices()
    }

    pub fn len(&self) -> usize {
        self.0.nnz()
    }

    pub fn is_empty(&self) -> bool {
        self.0.nnz() == 0
    }

    pub fn contains(&self, paper: usize) -> bool {
        self.0.view().contains(paper)
    }
}

/// Shared ratio of every HeteAlloc variant: `author · filtered /
/// sqrt(Σ author · Σ filtered)`, or 0 on a zero denominator.
pub fn allocation_ratio(author: SparseRow<'_>, filtered: SparseRow<'_>) -> f64 {
    let denom = author.entry_sum() * filtered.entry_sum();
    if denom <= 0.0 {
        return 0.0;
    }
    let num = author.dot(filtered).expect("rows share the paper space");
    num / denom.sqrt()
}

/// HeteAlloc of author `a` on category `m` restricted to `mask`.
pub fn hetealloc(net: &Network, a: usize, m: usize, mask: &SubsetMask, weighting: MeshWeighting) -> f64 {
    let mesh_row = weighting.mesh_paper(net).row(m);
    let filtered = mask
        .view()
        .elementwise_product(mesh_row)
        .expect("mask spans the paper space");
    allocation_ratio(net.papers_of(a), filtered.view())
}

/// Papers of `a` and of everyone who co-authored with `a` (meta-path
/// Author-Paper-Author-Paper, binarized).
pub fn subset_ha1(net: &Network, a: usize) -> SubsetMask {
    let coauthors = net
        .papers_of(a)
        .mul_matrix(net.paper_author())
        .expect("shapes follow the network");
    let reach = coauthors
        .view()
        .mul_matrix(net.author_paper())
        .expect("shapes follow the network");
    SubsetMask::from_support(reach)
}

/// Papers of `a` plus the papers of authors who co-authored with `a` on a
/// paper containing `m`.
pub fn subset_ha2(net: &Network, a: usize, m: usize) -> SubsetMask {
    let own = net.papers_of(a);
    let on_topic = own
        .elementwise_product(net.mesh_paper().row(m))
        .expect("shapes follow the network");
    let reach = on_topic
        .view()
        .mul_matrix(net.paper_author())
        .and_then(|authors| authors.view().mul_matrix(net.author_paper()))
        .expect("shapes follow the network");
    SubsetMask::from_support(reach).union(&SubsetMask::from_support(own.to_owned()))
}

/// Every paper of every author of the focal paper `p`.
pub fn subset_ha3(net: &Network, a: usize, p: usize) -> Result<SubsetMask, SimilarityError> {
    if !net.papers_of(a).contains(p) {
        return Err(SimilarityError::NotAnAuthor { author: a, paper: p });
    }
    let reach = net
        .authors_of(p)
        .mul_matrix(net.author_paper())
        .expect("shapes follow the network");
    Ok(SubsetMask::from_support(reach))
}

/// Focal-paper HeteAlloc: one score per paper of `a` containing `m`, each
/// against that paper's co-author subset, combined by `aggregation`.
pub fn hetealloc_ha3(
    net: &Network,
    a: usize,
    m: usize,
    aggregation: Aggregation,
    weighting: MeshWeighting,
) -> f64 {
    let mesh_row = net.mesh_paper().row(m);
    let scores: Vec<f64> = net
        .papers_of(a)
        .indices()
        .iter()
        .filter(|&&p| mesh_row.contains(p))
        .map(|&p| {
            let mask = subset_ha3(net, a, p).expect("p is a paper of a");
            hetealloc(net, a, m, &mask, weighting)
        })
        .collect();
    if scores.is_empty() {
        return 0.0;
    }
    let total: f64 = scores.iter().sum();
    match aggregation {
        Aggregation::Sum => total,
        Aggregation::Average => total / scores.len() as f64,
    }
}

/// Baseline similarity: square root of the share of `a`'s author-category
/// incidences that fall on `m`.
pub fn baseline_similarity(net: &Network, a: usize, m: usize) -> f64 {
    let papers = net.papers_of(a);
    let mut on_m = 0.0;
    let mut total = 0.0;
    for &p in papers.indices() {
        let cats = net.categories_of(p);
        total += cats.nnz() as f64;
        if cats.contains(m) {
            on_m += 1.0;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        (on_m / total).sqrt()
    }
}

/// A static scoring method over one network snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaticMethod {
    Baseline,
    HeteSim,
    /// Co-authors' papers.
    Ha1,
    /// Co-authors' papers on the target category.
    Ha2,
    /// Papers of the focal paper's co-authors.
    Ha3(Aggregation),
}

pub fn score(net: &Network, method: StaticMethod, a: usize, m: usize, weighting: MeshWeighting) -> f64 {
    match method {
        StaticMethod::Baseline => baseline_similarity(net, a, m),
        StaticMethod::HeteSim => hetesim_author_mesh(net, a, m, weighting),
        StaticMethod::Ha1 => hetealloc(net, a, m, &subset_ha1(net, a), weighting),
        StaticMethod::Ha2 => hetealloc(net, a, m, &subset_ha2(net, a, m), weighting),
        StaticMethod::Ha3(agg) => hetealloc_ha3(net, a, m, agg, weighting),
    }
}

/// Scores every author on every category they have published in (all other
/// pairs score 0 under every method). Rows are indexed by author.
pub fn score_all(
    net: &Network,
    method: StaticMethod,
    weighting: MeshWeighting,
    exec: Execution,
) -> Vec<Vec<(usize, f64)>> {
    exec.map_range(net.n_authors(), |a| {
        let mut cats: Vec<usize> = net
            .papers_of(a)
            .indices()
            .iter()
            .flat_map(|&p| net.categories_of(p).indices().to_vec())
            .collect();
        cats.sort_unstable();
        cats.dedup();
        cats.into_iter()
            .map(|m| (m, score(net, method, a, m, weighting)))
            .collect()
    })
}
