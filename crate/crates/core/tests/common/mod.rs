//! Random small networks and a direct set-based oracle for every kernel.
#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeMap, BTreeSet};

use hetealloc_core::dynamic::DynamicEngine;
use hetealloc_core::{Aggregation, DynamicMethod, Execution, MeshWeighting, Network, TopicTable};
use proptest::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PaperSpec {
    pub authors: Vec<usize>,
    pub cats: Vec<usize>,
}

pub fn author_label(a: usize) -> String {
    format!("A{a}")
}

pub fn cat_label(m: usize) -> String {
    format!("M{m}")
}

pub fn paper_label(p: usize) -> String {
    format!("P{p}")
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Nonempty author set; category set may be empty when `allow_untagged`.
pub fn paper_strategy(max_authors: usize, max_cats: usize, allow_untagged: bool) -> impl Strategy<Value = PaperSpec> {
    let low = if allow_untagged { 0 } else { 1 };
    (1u32..(1 << max_authors), low..(1u32 << max_cats)).prop_map(|(a, c)| PaperSpec {
        authors: bits(a),
        cats: bits(c),
    })
}

pub fn papers_strategy(max_authors: usize, max_papers: usize, max_cats: usize) -> impl Strategy<Value = Vec<PaperSpec>> {
    prop::collection::vec(paper_strategy(max_authors, max_cats, true), 1..=max_papers)
}

/// Papers with exactly one category each.
pub fn single_topic_papers(max_authors: usize, max_papers: usize, max_cats: usize) -> impl Strategy<Value = Vec<PaperSpec>> {
    prop::collection::vec(
        (1u32..(1 << max_authors), 0..max_cats).prop_map(|(a, c)| PaperSpec { authors: bits(a), cats: vec![c] }),
        1..=max_papers,
    )
}

/// Papers with a publication year in `1..=years`.
pub fn dated_papers(max_authors: usize, max_papers: usize, max_cats: usize, years: i32) -> impl Strategy<Value = Vec<(i32, PaperSpec)>> {
    prop::collection::vec((1..=years, paper_strategy(max_authors, max_cats, false)), 1..=max_papers)
}

pub fn topics_of<'a>(papers: impl IntoIterator<Item = (usize, &'a PaperSpec)>) -> TopicTable {
    let mut t = TopicTable::new();
    for (i, p) in papers {
        for &c in &p.cats {
            t.insert(paper_label(i), cat_label(c));
        }
    }
    t
}

pub fn network_of(papers: &[PaperSpec]) -> Network {
    let labels: Vec<(String, Vec<String>, Vec<String>)> = papers
        .iter()
        .enumerate()
        .map(|(i, p)| {
            (
                paper_label(i),
                p.authors.iter().map(|&a| author_label(a)).collect(),
                p.cats.iter().map(|&c| cat_label(c)).collect(),
            )
        })
        .collect();
    let mut b = Network::builder();
    for (p, a, c) in &labels {
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        let c: Vec<&str> = c.iter().map(String::as_str).collect();
        b = b.paper(p, &a, &c);
    }
    b.build().unwrap()
}

/// (author, category) pairs present in the network, by label.
pub fn pairs(papers: &[PaperSpec]) -> BTreeSet<(usize, usize)> {
    papers
        .iter()
        .flat_map(|p| p.authors.iter().flat_map(move |&a| p.cats.iter().map(move |&c| (a, c))))
        .collect()
}

pub fn authors(papers: &[PaperSpec]) -> BTreeSet<usize> {
    papers.iter().flat_map(|p| p.authors.iter().copied()).collect()
}

pub fn cats(papers: &[PaperSpec]) -> BTreeSet<usize> {
    papers.iter().flat_map(|p| p.cats.iter().copied()).collect()
}

/// Direct evaluation over paper sets.
pub struct Oracle<'a> {
    pub papers: &'a [PaperSpec],
}

impl Oracle<'_> {
    pub fn of_author(&self, a: usize) -> BTreeSet<usize> {
        (0..self.papers.len()).filter(|&p| self.papers[p].authors.contains(&a)).collect()
    }

    pub fn on_topic(&self, m: usize) -> BTreeSet<usize> {
        (0..self.papers.len()).filter(|&p| self.papers[p].cats.contains(&m)).collect()
    }

    fn weight(&self, p: usize, weighting: MeshWeighting) -> f64 {
        match weighting {
            MeshWeighting::Binary => 1.0,
            MeshWeighting::Weighted => 1.0 / self.papers[p].cats.len() as f64,
        }
    }

    pub fn coauthors(&self, a: usize) -> BTreeSet<usize> {
        self.of_author(a)
            .iter()
            .flat_map(|&p| self.papers[p].authors.iter().copied())
            .collect()
    }

    fn papers_of_all(&self, who: &BTreeSet<usize>) -> BTreeSet<usize> {
        who.iter().flat_map(|&b| self.of_author(b)).collect()
    }

    /// Shared allocation ratio restricted to `mask`.
    pub fn alloc(&self, a: usize, m: usize, mask: &BTreeSet<usize>, weighting: MeshWeighting) -> f64 {
        let own = self.of_author(a);
        let filtered: BTreeSet<usize> = self.on_topic(m).intersection(mask).copied().collect();
        let fsum: f64 = filtered.iter().map(|&p| self.weight(p, weighting)).sum();
        let denom = own.len() as f64 * fsum;
        if denom == 0.0 {
            return 0.0;
        }
        let num: f64 = own.intersection(&filtered).map(|&p| self.weight(p, weighting)).sum();
        num / denom.sqrt()
    }

    pub fn everything(&self) -> BTreeSet<usize> {
        (0..self.papers.len()).collect()
    }

    pub fn hetesim(&self, a: usize, m: usize, w: MeshWeighting) -> f64 {
        self.alloc(a, m, &self.everything(), w)
    }

    pub fn ha1(&self, a: usize, m: usize, w: MeshWeighting) -> f64 {
        self.alloc(a, m, &self.papers_of_all(&self.coauthors(a)), w)
    }

    pub fn ha2(&self, a: usize, m: usize, w: MeshWeighting) -> f64 {
        let who: BTreeSet<usize> = self
            .of_author(a)
            .iter()
            .filter(|&&p| self.papers[p].cats.contains(&m))
            .flat_map(|&p| self.papers[p].authors.iter().copied())
            .collect();
        let mut mask = self.papers_of_all(&who);
        mask.extend(self.of_author(a));
        self.alloc(a, m, &mask, w)
    }

    pub fn ha3(&self, a: usize, m: usize, agg: Aggregation, w: MeshWeighting) -> f64 {
        let scores: Vec<f64> = self
            .of_author(a)
            .into_iter()
            .filter(|&p| self.papers[p].cats.contains(&m))
            .map(|p| {
                let who: BTreeSet<usize> = self.papers[p].authors.iter().copied().collect();
                self.alloc(a, m, &self.papers_of_all(&who), w)
            })
            .collect();
        if scores.is_empty() {
            return 0.0;
        }
        let s: f64 = scores.iter().sum();
        match agg {
            Aggregation::Sum => s,
            Aggregation::Average => s / scores.len() as f64,
        }
    }

    pub fn baseline(&self, a: usize, m: usize) -> f64 {
        let own = self.of_author(a);
        let total: usize = own.iter().map(|&p| self.papers[p].cats.len()).sum();
        if total == 0 {
            return 0.0;
        }
        let hits = own.iter().filter(|&&p| self.papers[p].cats.contains(&m)).count();
        (hits as f64 / total as f64).sqrt()
    }
}

pub type Profiles = BTreeMap<(usize, usize), f64>;

/// Cumulative DHA stores per year, evaluated paper by paper from sets.
pub fn dha_oracle(dated: &[(i32, PaperSpec)], years: i32, weighting: MeshWeighting) -> Vec<Profiles> {
    let weight = |q: usize| match weighting {
        MeshWeighting::Binary => 1.0,
        MeshWeighting::Weighted => 1.0 / dated[q].1.cats.len() as f64,
    };
    let mut acc = Profiles::new();
    let mut out = Vec::new();
    for y in 1..=years {
        let experience = |b: usize| -> BTreeSet<usize> {
            (0..dated.len())
                .filter(|&q| dated[q].0 < y && dated[q].1.authors.contains(&b))
                .collect()
        };
        let mut inc = Profiles::new();
        for (p, (_, spec)) in dated.iter().enumerate().filter(|(_, d)| d.0 == y) {
            let mut subset: BTreeSet<usize> = spec.authors.iter().flat_map(|&b| experience(b)).collect();
            subset.insert(p);
            for &a in &spec.authors {
                let mut hist = experience(a);
                hist.insert(p);
                for &m in &spec.cats {
                    let on_m: Vec<usize> = subset.iter().copied().filter(|&q| dated[q].1.cats.contains(&m)).collect();
                    let fsum: f64 = on_m.iter().map(|&q| weight(q)).sum();
                    let num: f64 = on_m.iter().filter(|q| hist.contains(q)).map(|&q| weight(q)).sum();
                    let v = num / (hist.len() as f64 * fsum).sqrt();
                    *inc.entry((a, m)).or_insert(0.0) += v;
                }
            }
        }
        for (k, v) in inc {
            *acc.entry(k).or_insert(0.0) += v;
        }
        out.push(acc.clone());
    }
    out
}

/// Cumulative BL counts per year.
pub fn bl_oracle(dated: &[(i32, PaperSpec)], years: i32) -> Vec<Profiles> {
    (1..=years)
        .map(|y| {
            let mut acc = Profiles::new();
            for (_, spec) in dated.iter().filter(|d| d.0 <= y) {
                for &a in &spec.authors {
                    for &m in &spec.cats {
                        *acc.entry((a, m)).or_insert(0.0) += 1.0;
                    }
                }
            }
            acc
        })
        .collect()
}

/// Links of one year in the given paper order.
pub fn year_links(dated: &[(i32, PaperSpec)], year: i32, order: &[usize]) -> Vec<(String, String)> {
    order
        .iter()
        .filter(|&&p| dated[p].0 == year)
        .flat_map(|&p| dated[p].1.authors.iter().map(move |&a| (author_label(a), paper_label(p))))
        .collect()
}

/// Runs the engine over years `1..=years`, visiting papers in `order`.
pub fn run_engine(
    dated: &[(i32, PaperSpec)],
    years: i32,
    method: DynamicMethod,
    weighting: MeshWeighting,
    order: &[usize],
    exec: Execution,
) -> Vec<Profiles> {
    let topics = topics_of(dated.iter().map(|d| &d.1).enumerate());
    let mut engine = DynamicEngine::new(method, topics, weighting, exec).unwrap();
    (1..=years)
        .map(|y| {
            let store = engine.step(y, year_links(dated, y, order)).unwrap();
            store
                .iter()
                .flat_map(|(a, prof)| {
                    let a: usize = a[1..].parse().unwrap();
                    prof.iter().map(move |(m, v)| ((a, m[1..].parse::<usize>().unwrap()), *v))
                })
                .collect()
        })
        .collect()
}

pub fn profiles_close(got: &Profiles, want: &Profiles, tol: f64) -> Result<(), String> {
    let keys: BTreeSet<_> = got.keys().chain(want.keys()).collect();
    for k in keys {
        let (g, w) = (got.get(k).copied(), want.get(k).copied());
        match (g, w) {
            (Some(g), Some(w)) if (g - w).abs() <= tol => {}
            _ => return Err(format!("entry {k:?}: got {g:?}, want {w:?}")),
        }
    }
    Ok(())
}
