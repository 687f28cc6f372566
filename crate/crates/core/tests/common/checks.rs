//! Property checks shared by the property suites and the acceptance run.

use std::collections::BTreeSet;

use hetealloc_core::hin::NodeType::{Author, Mesh, Paper};
use hetealloc_core::similarity::{
    hetealloc, hetesim_author_mesh, hetesim_normalized, hetesim_recursive, reachable_probability, score,
    MetaPath, Schema, SubsetMask,
};
use hetealloc_core::{Aggregation, DynamicMethod, Execution, MeshWeighting, Network, StaticMethod};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::*;

const EPS: f64 = 1e-12;
const WEIGHTINGS: [MeshWeighting; 2] = [MeshWeighting::Binary, MeshWeighting::Weighted];
const LOCAL: [StaticMethod; 4] = [
    StaticMethod::Ha1,
    StaticMethod::Ha2,
    StaticMethod::Ha3(Aggregation::Sum),
    StaticMethod::Ha3(Aggregation::Average),
];

fn idx(net: &Network, a: usize, m: usize) -> (usize, usize) {
    (net.author(&author_label(a)).unwrap(), net.mesh(&cat_label(m)).unwrap())
}

fn value(net: &Network, method: StaticMethod, a: usize, m: usize, w: MeshWeighting) -> f64 {
    let (ai, mi) = idx(net, a, m);
    score(net, method, ai, mi, w)
}

/// Adding a solo paper by an unconnected author on `m` leaves every
/// HeteAlloc value of `a` unchanged and strictly lowers HeteSim(a, m).
pub fn locality(papers: &[PaperSpec], pick: usize, extra_cats: Vec<usize>) -> Result<(), TestCaseError> {
    let pairs: Vec<_> = pairs(papers).into_iter().collect();
    if pairs.is_empty() {
        return Ok(());
    }
    let (a, m) = pairs[pick % pairs.len()];
    let before = network_of(papers);
    let mut grown = papers.to_vec();
    let mut cats = extra_cats;
    cats.push(m);
    cats.sort_unstable();
    cats.dedup();
    grown.push(PaperSpec { authors: vec![99], cats });
    let after = network_of(&grown);
    for w in WEIGHTINGS {
        for method in LOCAL {
            for &c in &super::cats(papers) {
                let (x, y) = (value(&before, method, a, c, w), value(&after, method, a, c, w));
                prop_assert!((x - y).abs() <= EPS, "{method:?} ({a},{c}) moved {x} -> {y}");
            }
        }
        let (x, y) = (value(&before, StaticMethod::HeteSim, a, m, w), value(&after, StaticMethod::HeteSim, a, m, w));
        prop_assert!(y < x, "HeteSim ({a},{m}) {x} -> {y}");
    }
    Ok(())
}

/// Authors without co-authors: every subset strategy degenerates to the
/// square root of their on-topic paper share.
pub fn isolated_collapse(papers: &[PaperSpec]) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    let oracle = Oracle { papers };
    for a in authors(papers) {
        if oracle.coauthors(a).len() != 1 {
            continue;
        }
        let own = oracle.of_author(a);
        let single_topic = own.iter().all(|&p| papers[p].cats.len() == 1);
        for m in cats(papers) {
            let hits = own.intersection(&oracle.on_topic(m)).count();
            if hits == 0 {
                continue;
            }
            let share = (hits as f64 / own.len() as f64).sqrt();
            for method in [StaticMethod::Ha1, StaticMethod::Ha2, StaticMethod::Ha3(Aggregation::Average)] {
                let v = value(&net, method, a, m, MeshWeighting::Binary);
                prop_assert!((v - share).abs() <= EPS, "{method:?} ({a},{m}) = {v}, share {share}");
            }
            if single_topic {
                let bl = value(&net, StaticMethod::Baseline, a, m, MeshWeighting::Binary);
                prop_assert!((bl - share).abs() <= EPS);
            }
        }
    }
    Ok(())
}

/// Growing a mask that already holds the author's papers never raises the
/// score.
pub fn mask_monotone(papers: &[PaperSpec], pick: usize, grow1: u32, grow2: u32) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    let pairs: Vec<_> = pairs(papers).into_iter().collect();
    if pairs.is_empty() {
        return Ok(());
    }
    let (a, m) = pairs[pick % pairs.len()];
    let (ai, mi) = idx(&net, a, m);
    let own = net.papers_of(ai).indices().to_vec();
    let n = net.n_papers();
    let pick_bits = |g: u32| (0..n).filter(move |i| g & (1 << (i % 32)) != 0);
    let small = SubsetMask::from_papers(n, own.iter().copied().chain(pick_bits(grow1)));
    let large = SubsetMask::from_papers(n, small.papers().to_vec().into_iter().chain(pick_bits(grow2)));
    for w in WEIGHTINGS {
        let (s, l) = (hetealloc(&net, ai, mi, &small, w), hetealloc(&net, ai, mi, &large, w));
        prop_assert!(l <= s + EPS, "mask growth raised {s} -> {l}");
    }
    Ok(())
}

/// Similarity outputs lie in [0, 1]; HA3 Sum dominates Average.
pub fn ranges(papers: &[PaperSpec]) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    for a in authors(papers) {
        for m in cats(papers) {
            for w in WEIGHTINGS {
                for method in [StaticMethod::HeteSim, StaticMethod::Ha1, StaticMethod::Ha2, StaticMethod::Ha3(Aggregation::Average)] {
                    let v = value(&net, method, a, m, w);
                    prop_assert!((0.0..=1.0 + EPS).contains(&v), "{method:?} ({a},{m}) = {v}");
                }
                let sum = value(&net, StaticMethod::Ha3(Aggregation::Sum), a, m, w);
                let avg = value(&net, StaticMethod::Ha3(Aggregation::Average), a, m, w);
                prop_assert!(sum + EPS >= avg);
            }
            let bl = value(&net, StaticMethod::Baseline, a, m, MeshWeighting::Binary);
            prop_assert!((0.0..=1.0).contains(&bl));
        }
    }
    Ok(())
}

/// With one category per paper the weighted kernels equal the binary ones.
pub fn weighted_degenerates(papers: &[PaperSpec]) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    for a in authors(papers) {
        for m in cats(papers) {
            for method in [StaticMethod::HeteSim, StaticMethod::Ha1, StaticMethod::Ha2, StaticMethod::Ha3(Aggregation::Sum)] {
                prop_assert_eq!(
                    value(&net, method, a, m, MeshWeighting::Binary),
                    value(&net, method, a, m, MeshWeighting::Weighted)
                );
            }
        }
    }
    let dated: Vec<(i32, PaperSpec)> = papers.iter().enumerate().map(|(i, p)| (1 + (i % 3) as i32, p.clone())).collect();
    let order: Vec<usize> = (0..dated.len()).collect();
    let b = run_engine(&dated, 3, DynamicMethod::Dha, MeshWeighting::Binary, &order, Execution::Sequential);
    let w = run_engine(&dated, 3, DynamicMethod::Dha, MeshWeighting::Weighted, &order, Execution::Sequential);
    prop_assert_eq!(b, w);
    Ok(())
}

/// Reordering papers within a year, or running in parallel, leaves DHA
/// stores unchanged.
pub fn dha_order_independent(dated: &[(i32, PaperSpec)], order: &[usize], years: i32) -> Result<(), TestCaseError> {
    let identity: Vec<usize> = (0..dated.len()).collect();
    for w in WEIGHTINGS {
        let base = run_engine(dated, years, DynamicMethod::Dha, w, &identity, Execution::Sequential);
        let shuffled = run_engine(dated, years, DynamicMethod::Dha, w, order, Execution::Parallel);
        for (x, y) in base.iter().zip(&shuffled) {
            profiles_close(x, y, 1e-12).map_err(TestCaseError::fail)?;
        }
    }
    Ok(())
}

/// Stored values never decrease and entries never vanish.
pub fn stores_monotone(dated: &[(i32, PaperSpec)], years: i32) -> Result<(), TestCaseError> {
    let order: Vec<usize> = (0..dated.len()).collect();
    for method in [DynamicMethod::Dha, DynamicMethod::Baseline] {
        let series = run_engine(dated, years, method, MeshWeighting::Binary, &order, Execution::Sequential);
        for pair in series.windows(2) {
            for (k, v) in &pair[0] {
                let next = pair[1].get(k).copied();
                prop_assert!(next.is_some_and(|n| n >= *v), "{method:?} {k:?}: {v} -> {next:?}");
            }
        }
    }
    Ok(())
}

/// Each year's DHA increment is positive where BL's is, and never above it.
pub fn bl_bounds_dha(dated: &[(i32, PaperSpec)], years: i32) -> Result<(), TestCaseError> {
    let order: Vec<usize> = (0..dated.len()).collect();
    let dha = run_engine(dated, years, DynamicMethod::Dha, MeshWeighting::Binary, &order, Execution::Sequential);
    let bl = run_engine(dated, years, DynamicMethod::Baseline, MeshWeighting::Binary, &order, Execution::Sequential);
    let empty = Profiles::new();
    for y in 0..years as usize {
        let (dp, bp) = if y == 0 { (&empty, &empty) } else { (&dha[y - 1], &bl[y - 1]) };
        for (k, b) in &bl[y] {
            let b_inc = b - bp.get(k).unwrap_or(&0.0);
            let d_inc = dha[y].get(k).unwrap_or(&0.0) - dp.get(k).unwrap_or(&0.0);
            prop_assert!(d_inc <= b_inc + 1e-9, "{k:?} year {}: {d_inc} > {b_inc}", y + 1);
            prop_assert!(b_inc == 0.0 || d_inc > 0.0);
        }
    }
    Ok(())
}

/// Matrix kernels against the set oracle.
pub fn static_matches_oracle(papers: &[PaperSpec]) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    let o = Oracle { papers };
    for a in authors(papers) {
        for m in cats(papers) {
            prop_assert!((value(&net, StaticMethod::Baseline, a, m, MeshWeighting::Binary) - o.baseline(a, m)).abs() <= EPS);
            for w in WEIGHTINGS {
                let cases = [
                    (StaticMethod::HeteSim, o.hetesim(a, m, w)),
                    (StaticMethod::Ha1, o.ha1(a, m, w)),
                    (StaticMethod::Ha2, o.ha2(a, m, w)),
                    (StaticMethod::Ha3(Aggregation::Sum), o.ha3(a, m, Aggregation::Sum, w)),
                    (StaticMethod::Ha3(Aggregation::Average), o.ha3(a, m, Aggregation::Average, w)),
                ];
                for (method, want) in cases {
                    let got = value(&net, method, a, m, w);
                    prop_assert!((got - want).abs() <= EPS, "{method:?} {w:?} ({a},{m}): {got} vs {want}");
                }
            }
        }
    }
    Ok(())
}

/// The three HeteSim forms agree with each other and with the set oracle;
/// the symmetric author path is symmetric and self-maximal.
pub fn hetesim_forms(papers: &[PaperSpec]) -> Result<(), TestCaseError> {
    let net = network_of(papers);
    let o = Oracle { papers };
    let schema = Schema::from_network(&net, MeshWeighting::Binary);
    let apm = MetaPath::new(vec![Author, Paper, Mesh]).unwrap();
    let apmpa = MetaPath::new(vec![Author, Paper, Mesh, Paper, Author]).unwrap();
    let (left, right) = apmpa.split().unwrap();
    let pm_left = reachable_probability(&schema, &left).unwrap();
    let pm_right = reachable_probability(&schema, &right).unwrap();
    let author_set: BTreeSet<usize> = authors(papers);
    for &a in &author_set {
        for m in cats(papers) {
            let (ai, mi) = idx(&net, a, m);
            let want = o.hetesim(a, m, MeshWeighting::Binary);
            prop_assert!((hetesim_normalized(&schema, ai, mi, &apm).unwrap() - want).abs() <= EPS);
            prop_assert!((hetesim_author_mesh(&net, ai, mi, MeshWeighting::Binary) - want).abs() <= EPS);
        }
        let ai = net.author(&author_label(a)).unwrap();
        let reaches = !pm_left.row(ai).view().is_empty();
        let self_sim = hetesim_normalized(&schema, ai, ai, &apmpa).unwrap();
        prop_assert!(!reaches || (self_sim - 1.0).abs() <= EPS);
        for &b in &author_set {
            let bi = net.author(&author_label(b)).unwrap();
            let ab = hetesim_normalized(&schema, ai, bi, &apmpa).unwrap();
            let ba = hetesim_normalized(&schema, bi, ai, &apmpa).unwrap();
            prop_assert!((ab - ba).abs() <= EPS && ab <= 1.0 + EPS);
            let rec = hetesim_recursive(&schema, ai, bi, &apmpa).unwrap();
            let dot = pm_left.row(ai).view().dot(pm_right.row(bi).view()).unwrap();
            prop_assert!((rec - dot).abs() <= EPS, "recursive {rec} vs matrix {dot}");
        }
    }
    Ok(())
}

/// DHA and BL engines against the year-by-year set oracle.
pub fn dynamic_matches_oracle(dated: &[(i32, PaperSpec)], years: i32) -> Result<(), TestCaseError> {
    let order: Vec<usize> = (0..dated.len()).collect();
    for w in WEIGHTINGS {
        let got = run_engine(dated, years, DynamicMethod::Dha, w, &order, Execution::Sequential);
        for (g, want) in got.iter().zip(dha_oracle(dated, years, w)) {
            profiles_close(g, &want, EPS).map_err(TestCaseError::fail)?;
        }
    }
    let got = run_engine(dated, years, DynamicMethod::Baseline, MeshWeighting::Binary, &order, Execution::Sequential);
    for (g, want) in got.iter().zip(bl_oracle(dated, years)) {
        profiles_close(g, &want, 0.0).map_err(TestCaseError::fail)?;
    }
    Ok(())
}

/// Every multiset of exactly `n` papers drawn from the given paper kinds.
pub fn multisets(kinds: &[PaperSpec], n: usize) -> Vec<Vec<PaperSpec>> {
    fn go(kinds: &[PaperSpec], start: usize, n: usize, cur: &mut Vec<PaperSpec>, out: &mut Vec<Vec<PaperSpec>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..kinds.len() {
            cur.push(kinds[k].clone());
            go(kinds, k, n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(kinds, 0, n, &mut Vec::new(), &mut out);
    out
}

/// All paper kinds with a nonempty author set and any category set.
pub fn paper_kinds(max_authors: usize, max_cats: usize) -> Vec<PaperSpec> {
    let mut out = Vec::new();
    for a in 1u32..(1 << max_authors) {
        for c in 0u32..(1 << max_cats) {
            out.push(PaperSpec {
                authors: (0..max_authors).filter(|i| a & (1 << i) != 0).collect(),
                cats: (0..max_cats).filter(|i| c & (1 << i) != 0).collect(),
            });
        }
    }
    out
}

/// Runs the full oracle comparison over every network of up to
/// `max_papers` papers; returns the number of networks checked.
pub fn exhaustive(max_authors: usize, max_papers: usize, max_cats: usize) -> Result<usize, TestCaseError> {
    let kinds = paper_kinds(max_authors, max_cats);
    let mut checked = 0;
    for n in 1..=max_papers {
        for papers in multisets(&kinds, n) {
            static_matches_oracle(&papers)?;
            hetesim_forms(&papers)?;
            // Papers listed in order fall into years 1, 1, 2, 2.
            let dated: Vec<(i32, PaperSpec)> = papers
                .iter()
                .enumerate()
                .map(|(i, p)| (1 + (i / 2) as i32, p.clone()))
                .collect();
            dynamic_matches_oracle(&dated, 2)?;
            checked += 1;
        }
    }
    Ok(checked)
}
