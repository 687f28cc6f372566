//! Expertise-profile statistics and per-year method comparison.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::dynamic::ExpertiseStore;

pub const DEFAULT_PRODUCTIVE_THRESHOLD: usize = 10;
pub const DEFAULT_HISTOGRAM_BINS: usize = 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("profile has no nonzero entry")]
    EmptyProfile,
    #[error("value {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("year {year} missing for method {method}")]
    YearMismatch { year: i32, method: String },
    #[error("no methods to compare")]
    NoMethods,
}

fn nonzero(profile: impl IntoIterator<Item = f64>) -> Vec<f64> {
    profile.into_iter().filter(|&v| v != 0.0).collect()
}

/// Largest over smallest nonzero entry. Zero entries are excluded.
pub fn max_min_ratio(profile: impl IntoIterator<Item = f64>) -> Result<f64, MetricsError> {
    let values = nonzero(profile);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    if values.is_empty() {
        return Err(MetricsError::EmptyProfile);
    }
    Ok(max / min)
}

/// Largest entry divided by the Euclidean norm of the profile.
pub fn normalized_max(profile: impl IntoIterator<Item = f64>) -> Result<f64, MetricsError> {
    let values = nonzero(profile);
    if values.is_empty() {
        return Err(MetricsError::EmptyProfile);
    }
    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((max / norm).min(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileStats {
    pub max_min_ratio: f64,
    pub normalized_max: f64,
    pub paper_count: usize,
}

pub fn profile_stats(
    profile: impl IntoIterator<Item = f64> + Clone,
    paper_count: usize,
) -> Result<ProfileStats, MetricsError> {
    Ok(ProfileStats {
        max_min_ratio: max_min_ratio(profile.clone())?,
        normalized_max: normalized_max(profile)?,
        paper_count,
    })
}

/// Authors of `store` with strictly more than `threshold` papers.
pub fn productive_filter(
    store: &ExpertiseStore,
    paper_counts: &BTreeMap<String, usize>,
    threshold: usize,
) -> Vec<String> {
    store
        .authors()
        .filter(|a| paper_counts.get(*a).copied().unwrap_or(0) > threshold)
        .map(str::to_string)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanStd {
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub n: usize,
}

impl MeanStd {
    pub fn of(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Some(Self {
            mean,
            std: var.sqrt(),
            n: values.len(),
        })
    }
}

/// The three comparison measures for one method in one year.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodSummary {
    pub method: String,
    pub max_min_ratio: Option<MeanStd>,
    pub normalized_max: Option<MeanStd>,
    pub productive_normalized_max: Option<MeanStd>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct YearSummary {
    pub year: i32,
    pub methods: Vec<MethodSummary>,
}

fn summarize_store(
    method: &str,
    store: &ExpertiseStore,
    paper_counts: &BTreeMap<String, usize>,
    threshold: usize,
) -> MethodSummary {
    let mut ratios = Vec::new();
    let mut maxima = Vec::new();
    let mut productive = Vec::new();
    for (author, profile) in store.iter() {
        let Ok(stats) = profile_stats(
            profile.values().copied(),
            paper_counts.get(author).copied().unwrap_or(0),
        ) else {
            continue;
        };
        ratios.push(stats.max_min_ratio);
        maxima.push(stats.normalized_max);
        if stats.paper_count > threshold {
            productive.push(stats.normalized_max);
        }
    }
    MethodSummary {
        method: method.to_string(),
        max_min_ratio: MeanStd::of(&ratios),
        normalized_max: MeanStd::of(&maxima),
        productive_normalized_max: MeanStd::of(&productive),
    }
}

/// Mean and standard deviation of each measure per year and method. Every
/// method must have a snapshot for every year in `years`; the population is
/// every author in the snapshot with a nonzero profile.
pub fn yearly_summary(
    methods: &[(&str, &[ExpertiseStore])],
    paper_counts: &BTreeMap<i32, BTreeMap<String, usize>>,
    years: &[i32],
    threshold: usize,
) -> Result<Vec<YearSummary>, MetricsError> {
    if methods.is_empty() {
        return Err(MetricsError::NoMethods);
    }
    let empty = BTreeMap::new();
    years
        .iter()
        .map(|&year| {
            let counts = paper_counts.get(&year).unwrap_or(&empty);
            let summaries = methods
                .iter()
                .map(|(name, stores)| {
                    let store = stores
                        .iter()
                        .find(|s| s.year() == Some(year))
                        .ok_or_else(|| MetricsError::YearMismatch {
                            year,
                            method: name.to_string(),
                        })?;
                    Ok(summarize_store(name, store, counts, threshold))
                })
                .collect::<Result<Vec<_>, MetricsError>>()?;
            Ok(YearSummary {
                year,
                methods: summaries,
            })
        })
        .collect()
}

/// Counts per equal-width bin over [0, 1]; 1.0 falls in the last bin.
pub fn histogram(values: &[f64], bins: usize) -> Result<Vec<usize>, MetricsError> {
    let mut counts = vec![0; bins];
    for &v in values {
        if !(0.0..=1.0).contains(&v) {
            return Err(MetricsError::OutOfRange(v));
        }
        let idx = ((v * bins as f64).floor() as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts)
}

/// `bin_low<TAB>count` lines.
pub fn histogram_tsv(counts: &[usize]) -> String {
    let width = 1.0 / counts.len() as f64;
    let mut out = String::from("bin_low\tcount\n");
    for (i, c) in counts.iter().enumerate() {
        writeln!(out, "{:.2}\t{}", i as f64 * width, c).unwrap();
    }
    out
}

fn cell(v: Option<MeanStd>, pick: fn(&MeanStd) -> f64) -> String {
    v.map_or_else(|| "NA".to_string(), |s| format!("{:.4}", pick(&s)))
}

/// Table with a mean row and a std row per year; columns are measure (1),
/// (2), (3), each split by method.
pub fn summary_tsv(rows: &[YearSummary]) -> String {
    let mut out = String::from("year\tstat");
    if let Some(first) = rows.first() {
        for measure in ["ratio", "normmax", "productive_normmax"] {
            for m in &first.methods {
                write!(out, "\t{measure}_{}", m.method).unwrap();
            }
        }
    }
    out.push('\n');
    for row in rows {
        for (stat, pick) in [("mean", (|s: &MeanStd| s.mean) as fn(&MeanStd) -> f64), ("std", |s: &MeanStd| s.std)] {
            write!(out, "{}\t{stat}", row.year).unwrap();
            for measure in 0..3 {
                for m in &row.methods {
                    let v = match measure {
                        0 => m.max_min_ratio,
                        1 => m.normalized_max,
                        _ => m.productive_normalized_max,
                    };
                    write!(out, "\t{}", cell(v, pick)).unwrap();
                }
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ratio_examples() {
        assert_eq!(max_min_ratio([2.0, 1.0]).unwrap(), 2.0);
        assert_eq!(max_min_ratio([5.0]).unwrap(), 1.0);
        assert_eq!(max_min_ratio([3.0, 0.0, 1.0]).unwrap(), 3.0);
        assert_eq!(max_min_ratio([0.0, 0.0]).unwrap_err(), MetricsError::EmptyProfile);
        assert_eq!(max_min_ratio([]).unwrap_err(), MetricsError::EmptyProfile);
    }

    #[test]
    fn normalized_max_examples() {
        assert!((normalized_max([3.0, 4.0]).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(normalized_max([7.0]).unwrap(), 1.0);
        let k = 5;
        let v = normalized_max(vec![2.5; k]).unwrap();
        assert!((v - 1.0 / (k as f64).sqrt()).abs() < 1e-12);
        assert!(normalized_max([0.0]).is_err());
    }

    #[test]
    fn productive_threshold_is_strict() {
        let mut store = ExpertiseStore::with_year(1);
        store.add("ten", "A01", 1.0);
        store.add("eleven", "A01", 1.0);
        let counts: BTreeMap<String, usize> =
            [("ten".to_string(), 10), ("eleven".to_string(), 11)].into();
        assert_eq!(productive_filter(&store, &counts, 10), ["eleven"]);
        assert!(productive_filter(&ExpertiseStore::new(), &counts, 10).is_empty());
    }

    #[test]
    fn histogram_examples() {
        let h = histogram(&[1.0, 1.0], 20).unwrap();
        assert_eq!(h[19], 2);
        assert_eq!(h.iter().sum::<usize>(), 2);
        assert_eq!(histogram(&[], 20).unwrap(), vec![0; 20]);
        assert_eq!(histogram(&[1.5], 20).unwrap_err(), MetricsError::OutOfRange(1.5));
        // Bin edges land in the upper bin.
        assert_eq!(histogram(&[0.15], 20).unwrap()[3], 1);
        assert!(histogram_tsv(&h).lines().nth(20).unwrap().starts_with("0.95\t2"));
    }

    #[test]
    fn identical_single_author_stores_have_zero_spread() {
        let mut store = ExpertiseStore::with_year(3);
        store.add("A", "A01", 2.0);
        store.add("A", "B01", 1.0);
        let stores = vec![store];
        let counts = BTreeMap::from([(3, BTreeMap::from([("A".to_string(), 12)]))]);
        let rows = yearly_summary(&[("x", &stores), ("y", &stores)], &counts, &[3], 10).unwrap();
        let (x, y) = (&rows[0].methods[0], &rows[0].methods[1]);
        assert_eq!(x.max_min_ratio, y.max_min_ratio);
        assert_eq!(x.normalized_max, y.normalized_max);
        assert_eq!(x.max_min_ratio.unwrap().std, 0.0);
        assert_eq!(x.productive_normalized_max.unwrap().n, 1);
        let tsv = summary_tsv(&rows);
        assert_eq!(tsv.lines().count(), 3);
        assert!(tsv.starts_with("year\tstat\tratio_x\tratio_y"));
    }

    #[test]
    fn missing_year_is_reported() {
        let stores = vec![ExpertiseStore::with_year(1)];
        let err = yearly_summary(&[("bl", &stores)], &BTreeMap::new(), &[2], 10).unwrap_err();
        assert_eq!(err, MetricsError::YearMismatch { year: 2, method: "bl".into() });
    }

    fn profile() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(prop_oneof![Just(0.0), 0.01f64..100.0], 1..12)
            .prop_filter("needs a nonzero entry", |v| v.iter().any(|&x| x > 0.0))
    }

    proptest! {
        #[test]
        fn measures_are_scale_invariant(p in profile(), c in 0.001f64..1000.0) {
            let scaled: Vec<f64> = p.iter().map(|v| v * c).collect();
            let (r, rs) = (max_min_ratio(p.clone()).unwrap(), max_min_ratio(scaled.clone()).unwrap());
            prop_assert!((r - rs).abs() <= 1e-9 * r);
            let (n, ns) = (normalized_max(p.clone()).unwrap(), normalized_max(scaled).unwrap());
            prop_assert!((n - ns).abs() <= 1e-12);
        }

        #[test]
        fn normalized_max_bounds(p in profile()) {
            let k = p.iter().filter(|&&v| v > 0.0).count() as f64;
            let n = normalized_max(p.clone()).unwrap();
            prop_assert!(n <= 1.0 && n >= 1.0 / k.sqrt() - 1e-12);
            prop_assert!(max_min_ratio(p).unwrap() >= 1.0);
        }

        #[test]
        fn histogram_conserves_mass(v in prop::collection::vec(0.0f64..=1.0, 0..200)) {
            prop_assert_eq!(histogram(&v, 20).unwrap().iter().sum::<usize>(), v.len());
        }
    }
}
