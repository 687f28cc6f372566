//! Batch pipeline: ingest link lists and a MeSH table, run one method over a
//! year range, compare two methods' snapshot series.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use hetealloc_core::dynamic::{DynamicEngine, ExpertiseStore};
use hetealloc_core::io::{
    links_tsv, pairs_tsv, parse_links, parse_paper_mesh, parse_snapshots, snapshot_jsonl, LinkRecord,
};
use hetealloc_core::mesh::{categorize_papers, parse_mesh_table};
use hetealloc_core::metrics::{histogram, histogram_tsv, normalized_max, summary_tsv, yearly_summary, DEFAULT_HISTOGRAM_BINS};
use hetealloc_core::similarity::score_all;
use hetealloc_core::synth::SynthCorpus;
use hetealloc_core::{
    Aggregation, DynamicMethod, Execution, MeshWeighting, Network, PaperKey, StaticMethod, TopicTable,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("data: {0}")]
    Data(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io { .. } => 2,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(io_err(path))
}

/// Writes through a temporary file in the target directory, so readers
/// never see a truncated file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(dir))?;
    tmp.write_all(contents.as_bytes()).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e.error,
    })?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inputs {
    pub links: PathBuf,
    pub mesh: PathBuf,
    pub taxonomy: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaxonomyCoverage {
    pub unique_ids_referenced: usize,
    pub unique_ids_mapped: usize,
    pub unmapped_unique_ids: Vec<String>,
    pub papers_with_unmapped_ids: Vec<String>,
    pub papers_without_categories: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub authors: usize,
    /// Distinct (paper, year) nodes.
    pub papers: usize,
    pub categories: usize,
    pub links: usize,
    pub links_per_year: BTreeMap<i32, usize>,
    pub taxonomy: TaxonomyCoverage,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub links: Vec<LinkRecord>,
    pub topics: TopicTable,
    pub manifest: Manifest,
}

impl Dataset {
    pub fn years(&self) -> Option<(i32, i32)> {
        let first = self.links.iter().map(|l| l.year).min()?;
        let last = self.links.iter().map(|l| l.year).max()?;
        Some((first, last))
    }

    pub fn paper_counts(&self, year: i32) -> BTreeMap<String, usize> {
        paper_counts(&self.links, year)
    }
}

/// Distinct dated papers per author up to and including `year`.
pub fn paper_counts(links: &[LinkRecord], year: i32) -> BTreeMap<String, usize> {
    let distinct: BTreeSet<(&str, &str, i32)> = links
        .iter()
        .filter(|l| l.year <= year)
        .map(|l| (l.author.as_str(), l.paper.as_str(), l.year))
        .collect();
    let mut counts = BTreeMap::new();
    for (a, _, _) in distinct {
        *counts.entry(a.to_string()).or_insert(0) += 1;
    }
    counts
}

pub fn load_dataset(inputs: &Inputs) -> Result<Dataset, CliError> {
    let name = |p: &Path| p.display().to_string();
    let links = parse_links(&read(&inputs.links)?, &name(&inputs.links)).map_err(|e| CliError::Data(e.to_string()))?;
    let pairs = parse_paper_mesh(&read(&inputs.mesh)?, &name(&inputs.mesh)).map_err(|e| CliError::Data(e.to_string()))?;
    let (table, errors) = parse_mesh_table(&read(&inputs.taxonomy)?);
    if let Some(e) = errors.first() {
        return Err(CliError::Data(format!("{}: {e}", name(&inputs.taxonomy))));
    }

    let known: BTreeSet<&str> = links.iter().map(|l| l.paper.as_str()).collect();
    if let Some((paper, _)) = pairs.iter().find(|(p, _)| !known.contains(p.as_str())) {
        return Err(CliError::Data(format!(
            "{}: unknown paper {paper:?} (absent from the link list)",
            name(&inputs.mesh)
        )));
    }
    let (topics, unmapped) = categorize_papers(pairs.iter().map(|(p, u)| (p.as_str(), u.as_str())), &table);
    let unmapped_set: BTreeSet<&str> = unmapped.iter().map(String::as_str).collect();
    let referenced: BTreeSet<&str> = pairs.iter().map(|(_, u)| u.as_str()).collect();

    let nodes: BTreeSet<(&str, i32)> = links.iter().map(|l| (l.paper.as_str(), l.year)).collect();
    let categories: BTreeSet<&str> = nodes
        .iter()
        .flat_map(|(p, _)| topics.categories(p).iter().map(String::as_str))
        .collect();
    let mut links_per_year = BTreeMap::new();
    for l in &links {
        *links_per_year.entry(l.year).or_insert(0) += 1;
    }
    let manifest = Manifest {
        authors: links.iter().map(|l| l.author.as_str()).collect::<BTreeSet<_>>().len(),
        papers: nodes.len(),
        categories: categories.len(),
        links: links.len(),
        links_per_year,
        taxonomy: TaxonomyCoverage {
            unique_ids_referenced: referenced.len(),
            unique_ids_mapped: referenced.len() - unmapped_set.len(),
            papers_with_unmapped_ids: pairs
                .iter()
                .filter(|(_, u)| unmapped_set.contains(u.as_str()))
                .map(|(p, _)| p.clone())
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
            unmapped_unique_ids: unmapped,
            papers_without_categories: known
                .iter()
                .filter(|p| topics.categories(p).is_empty())
                .map(|p| p.to_string())
                .collect(),
        },
    };
    Ok(Dataset {
        links,
        topics,
        manifest,
    })
}

/// Validates the inputs and returns the manifest; writes `manifest.json`
/// into `out` when given.
pub fn cmd_ingest(inputs: &Inputs, out: Option<&Path>) -> Result<Manifest, CliError> {
    let manifest = load_dataset(inputs)?.manifest;
    if let Some(dir) = out {
        write_atomic(&dir.join("manifest.json"), &manifest_json(&manifest))?;
    }
    Ok(manifest)
}

pub fn manifest_json(m: &Manifest) -> String {
    serde_json::to_string_pretty(m).expect("plain data serializes") + "\n"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bl,
    HeteSim,
    Ha1,
    Ha2,
    Ha3,
    Dha,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bl => "bl",
            Method::HeteSim => "hetesim",
            Method::Ha1 => "ha1",
            Method::Ha2 => "ha2",
            Method::Ha3 => "ha3",
            Method::Dha => "dha",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub method: Method,
    pub weighted: bool,
    pub aggregation: Option<Aggregation>,
    /// Inclusive output range; defaults to the years present in the links.
    pub years: Option<(i32, i32)>,
    /// `Some(1)` forces the sequential path.
    pub threads: Option<usize>,
    pub inputs: Inputs,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.aggregation.is_some() && self.method != Method::Ha3 {
            return Err(CliError::Usage("--agg applies to ha3 only".into()));
        }
        if self.weighted && self.method == Method::Bl {
            return Err(CliError::Usage("--weighted is not defined for bl".into()));
        }
        if let Some((from, to)) = self.years {
            if from > to {
                return Err(CliError::Usage(format!("empty year range {from}:{to}")));
            }
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }

    fn weighting(&self) -> MeshWeighting {
        if self.weighted {
            MeshWeighting::Weighted
        } else {
            MeshWeighting::Binary
        }
    }

    /// Snapshot file name, e.g. `dha.jsonl` or `wha3.jsonl`.
    pub fn output_name(&self) -> String {
        let prefix = if self.weighted { "w" } else { "" };
        format!("{prefix}{}.jsonl", self.method.name())
    }
}

/// Parses `FROM:TO`.
pub fn parse_years(s: &str) -> Result<(i32, i32), CliError> {
    let bad = || CliError::Usage(format!("invalid year range {s:?}, expected FROM:TO"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce(Execution) -> T + Send) -> Result<T, CliError> {
    match threads {
        Some(1) => Ok(f(Execution::Sequential)),
        #[cfg(feature = "parallel")]
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot start {n} threads: {e}")))?;
            Ok(pool.install(|| f(Execution::Parallel)))
        }
        _ => Ok(f(Execution::default())),
    }
}

fn dynamic_series(
    data: &Dataset,
    method: DynamicMethod,
    weighting: MeshWeighting,
    first: i32,
    last: i32,
    exec: Execution,
) -> Result<Vec<ExpertiseStore>, CliError> {
    let mut engine = DynamicEngine::new(method, data.topics.clone(), weighting, exec)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut by_year: BTreeMap<i32, Vec<(&str, &str)>> = BTreeMap::new();
    for l in &data.links {
        by_year.entry(l.year).or_default().push((l.author.as_str(), l.paper.as_str()));
    }
    for year in first..=last {
        let links = by_year.get(&year).cloned().unwrap_or_default();
        engine.step(year, links).map_err(|e| CliError::Data(e.to_string()))?;
    }
    Ok(engine.history().to_vec())
}

fn static_snapshot(
    data: &Dataset,
    method: StaticMethod,
    weighting: MeshWeighting,
    year: i32,
    exec: Execution,
) -> Result<ExpertiseStore, CliError> {
    let links = data
        .links
        .iter()
        .filter(|l| l.year <= year)
        .map(|l| (l.author.as_str(), PaperKey::dated(l.paper.clone(), l.year)));
    let net = Network::from_links(links, &data.topics).map_err(|e| CliError::Data(e.to_string()))?;
    let mut store = ExpertiseStore::with_year(year);
    for (a, row) in score_all(&net, method, weighting, exec).into_iter().enumerate() {
        for (m, v) in row {
            store.set(net.nodes().authors.key(a), net.nodes().mesh.key(m), v);
        }
    }
    Ok(store)
}

/// Computes the snapshot series of one method. Dynamic methods replay every
/// year from the first year of data; static methods score the cumulative
/// network at each output year.
pub fn compute_series(cfg: &RunConfig, data: &Dataset) -> Result<Vec<ExpertiseStore>, CliError> {
    cfg.validate()?;
    let Some((data_first, data_last)) = data.years() else {
        return Ok(Vec::new());
    };
    let (from, to) = cfg.years.unwrap_or((data_first, data_last));
    let weighting = cfg.weighting();
    let series = with_threads(cfg.threads, |exec| -> Result<Vec<ExpertiseStore>, CliError> {
        let dynamic = match cfg.method {
            Method::Dha => Some(DynamicMethod::Dha),
            Method::Bl => Some(DynamicMethod::Baseline),
            _ => None,
        };
        if let Some(method) = dynamic {
            let first = data_first.min(from);
            return dynamic_series(data, method, weighting, first, to, exec);
        }
        let method = match cfg.method {
            Method::HeteSim => StaticMethod::HeteSim,
            Method::Ha1 => StaticMethod::Ha1,
            Method::Ha2 => StaticMethod::Ha2,
            _ => StaticMethod::Ha3(cfg.aggregation.unwrap_or(Aggregation::Average)),
        };
        (from..=to)
            .map(|y| static_snapshot(data, method, weighting, y, exec))
            .collect()
    })??;
    Ok(series
        .into_iter()
        .filter(|s| s.year().is_some_and(|y| (from..=to).contains(&y)))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub output: PathBuf,
    pub years: Vec<i32>,
    pub records: usize,
}

/// Runs one method and writes all yearly snapshots to one JSONL file under
/// `cfg.out`. Nothing is written unless every year succeeds.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let data = load_dataset(&cfg.inputs)?;
    let series = compute_series(cfg, &data)?;
    let mut text = String::new();
    let mut records = 0;
    for store in &series {
        records += store.len();
        text.push_str(&snapshot_jsonl(store));
    }
    let output = cfg.out.join(cfg.output_name());
    write_atomic(&output, &text)?;
    Ok(RunReport {
        output,
        years: series.iter().filter_map(ExpertiseStore::year).collect(),
        records,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    pub left: PathBuf,
    pub right: PathBuf,
    /// Link list used for per-author paper counts.
    pub links: PathBuf,
    pub min_papers: usize,
    pub out: PathBuf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub summary: PathBuf,
    pub histograms: Vec<PathBuf>,
    pub years: Vec<i32>,
}

fn method_names(left: &Path, right: &Path) -> (String, String) {
    let stem = |p: &Path| p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let (l, r) = (stem(left), stem(right));
    if l == r || l.is_empty() || r.is_empty() {
        ("left".into(), "right".into())
    } else {
        (l, r)
    }
}

/// Yearly summary table and productive-author histograms of two snapshot
/// series with identical year sets.
pub fn cmd_compare(cfg: &CompareConfig) -> Result<CompareReport, CliError> {
    let load = |p: &Path| parse_snapshots(&read(p)?, &p.display().to_string()).map_err(|e| CliError::Data(e.to_string()));
    let (left, right) = (load(&cfg.left)?, load(&cfg.right)?);
    let years_of = |s: &[ExpertiseStore]| s.iter().filter_map(ExpertiseStore::year).collect::<Vec<_>>();
    let years = years_of(&left);
    if years != years_of(&right) {
        return Err(CliError::Data(format!(
            "year ranges differ: {:?} vs {:?}",
            years_of(&left),
            years_of(&right)
        )));
    }
    let links = parse_links(&read(&cfg.links)?, &cfg.links.display().to_string()).map_err(|e| CliError::Data(e.to_string()))?;
    let counts: BTreeMap<i32, BTreeMap<String, usize>> = years.iter().map(|&y| (y, paper_counts(&links, y))).collect();
    let (ln, rn) = method_names(&cfg.left, &cfg.right);
    let rows = yearly_summary(&[(&ln, &left), (&rn, &right)], &counts, &years, cfg.min_papers)
        .map_err(|e| CliError::Data(e.to_string()))?;

    let mut files: Vec<(PathBuf, String)> = vec![(cfg.out.join("summary.tsv"), summary_tsv(&rows))];
    for (name, series) in [(&ln, &left), (&rn, &right)] {
        for store in series {
            let year = store.year().expect("parsed snapshots carry a year");
            let productive = &counts[&year];
            let values: Vec<f64> = store
                .iter()
                .filter(|(a, _)| productive.get(*a).copied().unwrap_or(0) > cfg.min_papers)
                .filter_map(|(_, p)| normalized_max(p.values().copied()).ok())
                .collect();
            let h = histogram(&values, DEFAULT_HISTOGRAM_BINS).map_err(|e| CliError::Data(e.to_string()))?;
            files.push((cfg.out.join(format!("histogram_{name}_{year}.tsv")), histogram_tsv(&h)));
        }
    }
    for (path, text) in &files {
        write_atomic(path, text)?;
    }
    Ok(CompareReport {
        summary: files[0].0.clone(),
        histograms: files[1..].iter().map(|(p, _)| p.clone()).collect(),
        years,
    })
}

/// Writes `links.tsv`, `paper_mesh.tsv`, `taxonomy.tsv` and `home.tsv`.
pub fn write_corpus(corpus: &SynthCorpus, dir: &Path) -> Result<Inputs, CliError> {
    let inputs = Inputs {
        links: dir.join("links.tsv"),
        mesh: dir.join("paper_mesh.tsv"),
        taxonomy: dir.join("taxonomy.tsv"),
    };
    write_atomic(&inputs.links, &links_tsv(&corpus.links))?;
    write_atomic(&inputs.mesh, &pairs_tsv(&corpus.paper_mesh))?;
    write_atomic(&inputs.taxonomy, &pairs_tsv(&corpus.taxonomy))?;
    let home: Vec<(String, String)> = corpus.home.iter().map(|(a, c)| (a.clone(), c.clone())).collect();
    write_atomic(&dir.join("home.tsv"), &pairs_tsv(&home))?;
    Ok(inputs)
}
