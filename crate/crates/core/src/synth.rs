//! Seeded synthetic corpora with a known specialist ground truth.
//!
//! Every author has one home category. Papers are led by one author, draw
//! most co-authors from the lead's home community and always carry the
//! lead's home category, sometimes with one or two extra categories.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::LinkRecord;
use crate::mesh::CATEGORY_LETTERS;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub authors: usize,
    pub papers: usize,
    pub years: usize,
    pub categories: usize,
    pub first_year: i32,
    pub seed: u64,
    /// Probability that a co-author comes from outside the lead's community.
    pub cross_probability: f64,
    /// Probability that a paper carries a category besides the lead's home.
    pub extra_category_probability: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            authors: 10_000,
            papers: 50_000,
            years: 10,
            categories: 127,
            first_year: 1,
            seed: 7,
            cross_probability: 0.3,
            extra_category_probability: 0.5,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SynthCorpus {
    pub links: Vec<LinkRecord>,
    /// paper label, MeSH unique ID
    pub paper_mesh: Vec<(String, String)>,
    /// MeSH unique ID, tree ID
    pub taxonomy: Vec<(String, String)>,
    /// author label, home category
    pub home: BTreeMap<String, String>,
}

/// Depth-two category IDs spread round-robin over the branch letters.
pub fn category_ids(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| format!("{}{:02}", CATEGORY_LETTERS[i % 16], i / 16 + 1))
        .collect()
}

/// Two unique IDs per category, each with a deeper tree ID below it.
fn taxonomy(categories: &[String]) -> Vec<(String, String)> {
    categories
        .iter()
        .enumerate()
        .flat_map(|(i, c)| {
            [
                (format!("D{:06}", 2 * i + 1), format!("{c}.{:03}", i % 1000)),
                (format!("D{:06}", 2 * i + 2), format!("{c}.{:03}.{:03}", i % 1000, 1)),
            ]
        })
        .collect()
}

fn uid(category: usize, rng: &mut ChaCha8Rng) -> String {
    format!("D{:06}", 2 * category + 1 + rng.gen_range(0..2))
}

fn author_label(i: usize) -> String {
    format!("S{i:05}")
}

/// Spreads `total` items over `parts` buckets as evenly as possible.
fn split_evenly(total: usize, parts: usize) -> impl Iterator<Item = usize> {
    (0..parts).map(move |i| total / parts + usize::from(i < total % parts))
}

pub fn generate(cfg: &SynthConfig) -> SynthCorpus {
    assert!(cfg.authors > 0 && cfg.categories > 0 && cfg.years > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let cats = category_ids(cfg.categories);
    let home: Vec<usize> = (0..cfg.authors).map(|i| i % cfg.categories).collect();
    let mut community: Vec<Vec<usize>> = vec![Vec::new(); cfg.categories];
    for (a, &h) in home.iter().enumerate() {
        community[h].push(a);
    }

    let mut corpus = SynthCorpus {
        taxonomy: taxonomy(&cats),
        home: (0..cfg.authors).map(|a| (author_label(a), cats[home[a]].clone())).collect(),
        ..SynthCorpus::default()
    };
    let mut serial = 0;
    for (y, n) in split_evenly(cfg.papers, cfg.years).enumerate() {
        let year = cfg.first_year + y as i32;
        for _ in 0..n {
            serial += 1;
            let paper = format!("W{serial:06}");
            let lead = rng.gen_range(0..cfg.authors);
            let mut team = vec![lead];
            let extra_authors = *[0, 1, 1, 2, 2, 3].choose(&mut rng).unwrap();
            for _ in 0..extra_authors {
                let pool = if rng.gen_bool(cfg.cross_probability) {
                    None
                } else {
                    Some(&community[home[lead]])
                };
                let pick = match pool {
                    Some(p) => *p.choose(&mut rng).unwrap(),
                    None => rng.gen_range(0..cfg.authors),
                };
                if !team.contains(&pick) {
                    team.push(pick);
                }
            }
            let mut topics = vec![home[lead]];
            if rng.gen_bool(cfg.extra_category_probability) {
                let other = team.iter().map(|&a| home[a]).find(|&h| h != home[lead]);
                topics.push(other.unwrap_or_else(|| rng.gen_range(0..cfg.categories)));
            }
            if rng.gen_bool(cfg.extra_category_probability / 4.0) {
                topics.push(rng.gen_range(0..cfg.categories));
            }
            topics.sort_unstable();
            topics.dedup();
            for a in team {
                corpus.links.push(LinkRecord {
                    year,
                    author: author_label(a),
                    paper: paper.clone(),
                });
            }
            for t in topics {
                corpus.paper_mesh.push((paper.clone(), uid(t, &mut rng)));
            }
        }
    }
    corpus
}

/// Every author publishes `papers_per_year` solo papers in their home
/// category each year.
pub fn specialist_cohort(authors: usize, years: usize, papers_per_year: usize, categories: usize, seed: u64) -> SynthCorpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cats = category_ids(categories);
    let mut corpus = SynthCorpus {
        taxonomy: taxonomy(&cats),
        ..SynthCorpus::default()
    };
    for a in 0..authors {
        let h = rng.gen_range(0..categories);
        corpus.home.insert(author_label(a), cats[h].clone());
        for y in 0..years {
            for k in 0..papers_per_year {
                let paper = format!("S{a:05}Y{y}N{k}");
                corpus.links.push(LinkRecord {
                    year: 1 + y as i32,
                    author: author_label(a),
                    paper: paper.clone(),
                });
                corpus.paper_mesh.push((paper, uid(h, &mut rng)));
            }
        }
    }
    corpus
}
