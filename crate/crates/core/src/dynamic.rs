//! Yearly incremental expertise allocation.
//!
//! Each year the author-paper links are split into experience (all earlier
//! years) and update (the current year). Every update paper `p` of author
//! `a` contributes, for each category `m` of `p`,
//!
//! ```text
//!   (E[a] + e_p) · (S(p) ⊙ M[m]) / sqrt(Σ (E[a] + e_p) · Σ (S(p) ⊙ M[m]))
//! ```
//!
//! where `E` is the experience incidence, `e_p` the unit vector of `p` and
//! `S(p)` the union of the experience papers of all authors of `p`, plus `p`.
//! Papers of one year never see each other: the experience matrix is frozen
//! for the whole year, so the result does not depend on processing order.
//!
//! The baseline (BL) adds 1 to every (author, category) pair of every update
//! link.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::hin::{HinError, TopicTable, YearLedger, YearMatrices};
use crate::similarity::{allocation_ratio, MeshWeighting};
use crate::sparse::{SparseIncidence, SparseVec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicError {
    #[error("paper {paper} is not a current-year paper of author {author}")]
    NotUpdatePaper { author: usize, paper: usize },
    #[error("paper {paper} is not linked to category {mesh}")]
    MissingCategory { paper: usize, mesh: usize },
    #[error("year {year} does not follow stored year {previous}")]
    YearOutOfOrder { year: i32, previous: i32 },
    #[error("no year loaded in the ledger")]
    NoPendingYear,
    #[error("weighted category links are not defined for the baseline")]
    WeightedBaseline,
    #[error(transparent)]
    Hin(#[from] HinError),
}

/// Matrices one DHA year reads. All share the ledger's index spaces.
#[derive(Debug, Clone)]
pub struct DhaYearInput {
    experience: SparseIncidence,
    update: SparseIncidence,
    update_by_paper: SparseIncidence,
    /// paper x mesh; binary or reciprocal-count weighted.
    paper_mesh: SparseIncidence,
}

impl DhaYearInput {
    pub fn new(matrices: &YearMatrices, weighting: MeshWeighting) -> Self {
        let mesh_paper = match weighting {
            MeshWeighting::Binary => matrices.mesh_paper.clone(),
            MeshWeighting::Weighted => matrices.mesh_paper.column_normalized(),
        };
        Self {
            experience: matrices.experience.clone(),
            update: matrices.update.clone(),
            update_by_paper: matrices.update.transpose(),
            paper_mesh: mesh_paper.transpose(),
        }
    }

    pub fn experience(&self) -> &SparseIncidence {
        &self.experience
    }

    pub fn update(&self) -> &SparseIncidence {
        &self.update
    }

    /// Authors with at least one current-year paper.
    pub fn active_authors(&self) -> Vec<usize> {
        (0..self.update.n_rows())
            .filter(|&a| !self.update.row(a).is_empty())
            .collect()
    }

    /// Experience papers of all authors of `p`, plus `p`, as a 0/1 vector.
    pub fn paper_subset(&self, p: usize) -> SparseVec {
        let reach = self
            .update_by_paper
            .row(p)
            .mul_matrix(&self.experience)
            .expect("shapes follow the ledger");
        let own = SparseVec::unit(self.experience.n_cols(), p);
        reach.view().add(own.view()).expect("same paper space").binarize()
    }

    fn filter_category(&self, subset: &SparseVec, m: usize) -> SparseVec {
        SparseVec::from_pairs(
            subset.dim(),
            subset
                .indices()
                .iter()
                .map(|&q| (q, self.paper_mesh.get(q, m)))
                .filter(|&(_, w)| w > 0.0),
        )
    }

    fn paper_score(&self, a: usize, p: usize, m: usize, subset: &SparseVec) -> f64 {
        let unit = SparseVec::unit(self.experience.n_cols(), p);
        let history = self
            .experience
            .row(a)
            .add(unit.view())
            .expect("same paper space");
        let filtered = self.filter_category(subset, m);
        allocation_ratio(history.view(), filtered.view())
    }
}

/// Credit `a` receives on category `m` from the current-year paper `p`.
pub fn dha_paper(input: &DhaYearInput, a: usize, p: usize, m: usize) -> Result<f64, DynamicError> {
    if !input.update.row(a).contains(p) {
        return Err(DynamicError::NotUpdatePaper { author: a, paper: p });
    }
    if !input.paper_mesh.row(p).contains(m) {
        return Err(DynamicError::MissingCategory { paper: p, mesh: m });
    }
    Ok(input.paper_score(a, p, m, &input.paper_subset(p)))
}

/// Sum of `dha_paper` over the author's current-year papers, per category.
/// Categories absent from those papers are omitted (increment 0).
pub fn dha_author_year(input: &DhaYearInput, a: usize) -> Vec<(usize, f64)> {
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for &p in input.update.row(a).indices() {
        let subset = input.paper_subset(p);
        for &m in input.paper_mesh.row(p).indices() {
            *acc.entry(m).or_insert(0.0) += input.paper_score(a, p, m, &subset);
        }
    }
    acc.into_iter().collect()
}

/// BL increments of one author: +1 per current-year paper per category.
/// `paper_mesh` is the transpose of the year's mesh-paper incidence.
pub fn bl_author_year(update: &SparseIncidence, paper_mesh: &SparseIncidence, a: usize) -> Vec<(usize, f64)> {
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    for &p in update.row(a).indices() {
        for &m in paper_mesh.row(p).indices() {
            *acc.entry(m).or_insert(0.0) += 1.0;
        }
    }
    acc.into_iter().collect()
}

/// Author -> category -> accumulated expertise, as of `year`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpertiseStore {
    year: Option<i32>,
    profiles: BTreeMap<String, BTreeMap<String, f64>>,
}

impl ExpertiseStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_year(year: i32) -> Self {
        Self {
            year: Some(year),
            profiles: BTreeMap::new(),
        }
    }

    pub fn year(&self) -> Option<i32> {
        self.year
    }

    pub fn set_year(&mut self, year: i32) {
        self.year = Some(year);
    }

    pub fn get(&self, author: &str, category: &str) -> f64 {
        self.profiles
            .get(author)
            .and_then(|p| p.get(category))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn profile(&self, author: &str) -> Option<&BTreeMap<String, f64>> {
        self.profiles.get(author)
    }

    pub fn add(&mut self, author: &str, category: &str, delta: f64) {
        *self
            .profiles
            .entry(author.to_string())
            .or_default()
            .entry(category.to_string())
            .or_insert(0.0) += delta;
    }

    pub fn set(&mut self, author: &str, category: &str, value: f64) {
        self.profiles
            .entry(author.to_string())
            .or_default()
            .insert(category.to_string(), value);
    }

    pub fn authors(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeMap<String, f64>)> {
        self.profiles.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DynamicMethod {
    Dha,
    Baseline,
}

fn check_order(store: &ExpertiseStore, ledger: &YearLedger) -> Result<i32, DynamicError> {
    let year = ledger.year().ok_or(DynamicError::NoPendingYear)?;
    if let Some(previous) = store.year() {
        if year != previous + 1 {
            return Err(DynamicError::YearOutOfOrder { year, previous });
        }
    }
    Ok(year)
}

fn apply(
    store: &mut ExpertiseStore,
    ledger: &YearLedger,
    increments: Vec<(usize, Vec<(usize, f64)>)>,
    year: i32,
) {
    let nodes = ledger.nodes();
    for (a, row) in increments {
        let author = nodes.authors.key(a);
        for (m, delta) in row {
            store.add(author, nodes.mesh.key(m), delta);
        }
    }
    store.set_year(year);
}

/// Advances `store` by the year loaded in `ledger` using DHA, then folds
/// that year into the ledger's experience.
pub fn run_year_dha(
    store: &mut ExpertiseStore,
    ledger: &mut YearLedger,
    weighting: MeshWeighting,
    exec: Execution,
) -> Result<(), DynamicError> {
    let year = check_order(store, ledger)?;
    let matrices = ledger.materialize();
    let input = DhaYearInput::new(&matrices, weighting);
    let active = input.active_authors();
    let increments = exec.map(&active, |&a| (a, dha_author_year(&input, a)));
    apply(store, ledger, increments, year);
    Ok(())
}

/// Advances `store` by the year loaded in `ledger` using cumulative counts.
pub fn run_year_bl(
    store: &mut ExpertiseStore,
    ledger: &mut YearLedger,
    exec: Execution,
) -> Result<(), DynamicError> {
    let year = check_order(store, ledger)?;
    let matrices = ledger.materialize();
    let active: Vec<usize> = (0..matrices.update.n_rows())
        .filter(|&a| !matrices.update.row(a).is_empty())
        .collect();
    let paper_mesh = matrices.mesh_paper.transpose();
    let increments = exec.map(&active, |&a| (a, bl_author_year(&matrices.update, &paper_mesh, a)));
    apply(store, ledger, increments, year);
    Ok(())
}

/// Drives one method over consecutive years and keeps every yearly
/// snapshot.
#[derive(Debug, Clone)]
pub struct DynamicEngine {
    method: DynamicMethod,
    weighting: MeshWeighting,
    exec: Execution,
    ledger: YearLedger,
    store: ExpertiseStore,
    history: Vec<ExpertiseStore>,
}

impl DynamicEngine {
    pub fn new(
        method: DynamicMethod,
        topics: TopicTable,
        weighting: MeshWeighting,
        exec: Execution,
    ) -> Result<Self, DynamicError> {
        if method == DynamicMethod::Baseline && weighting == MeshWeighting::Weighted {
            return Err(DynamicError::WeightedBaseline);
        }
        Ok(Self {
            method,
            weighting,
            exec,
            ledger: YearLedger::new(topics),
            store: ExpertiseStore::new(),
            history: Vec::new(),
        })
    }

    /// Processes the links of `year`, which must directly follow the last
    /// processed year.
    pub fn step<A, P>(
        &mut self,
        year: i32,
        links: impl IntoIterator<Item = (A, P)>,
    ) -> Result<&ExpertiseStore, DynamicError>
    where
        A: Into<String>,
        P: Into<String>,
    {
        if let Some(previous) = self.store.year() {
            if year != previous + 1 {
                return Err(DynamicError::YearOutOfOrder { year, previous });
            }
        }
        self.ledger.load_year(year, links)?;
        match self.method {
            DynamicMethod::Dha => run_year_dha(&mut self.store, &mut self.ledger, self.weighting, self.exec)?,
            DynamicMethod::Baseline => run_year_bl(&mut self.store, &mut self.ledger, self.exec)?,
        }
        self.history.push(self.store.clone());
        Ok(&self.store)
    }

    pub fn store(&self) -> &ExpertiseStore {
        &self.store
    }

    pub fn ledger(&self) -> &YearLedger {
        &self.ledger
    }

    /// Snapshots in processing order.
    pub fn history(&self) -> &[ExpertiseStore] {
        &self.history
    }

    pub fn snapshot(&self, year: i32) -> Option<&ExpertiseStore> {
        self.history.iter().find(|s| s.year() == Some(year))
    }

    /// Distinct papers per author over every processed year.
    pub fn paper_counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for (a, _) in self.ledger.experience_links() {
            *counts.entry(a.clone()).or_insert(0) += 1;
        }
        counts
    }
}
