//! Single-link clustering of distinct surface forms.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::similarity::{partial_ratio_chars, ratio_chars, ratio_upper_bound};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Components as sorted index lists, ordered by their smallest index.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut groups: Vec<Vec<usize>> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

/// A group of surface forms judged to name the same entity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub canonical: String,
    pub members: BTreeSet<String>,
    pub mention_count: u64,
}

impl Cluster {
    /// The most frequent member; ties go to the lexicographically smallest.
    fn from_members<'a>(members: impl IntoIterator<Item = (&'a String, u64)>) -> Self {
        let members: Vec<(&String, u64)> = members.into_iter().collect();
        let canonical = members
            .iter()
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)))
            .map(|(s, _)| (*s).clone())
            .expect("non-empty cluster");
        Cluster {
            canonical,
            mention_count: members.iter().map(|(_, c)| c).sum(),
            members: members.into_iter().map(|(s, _)| s.clone()).collect(),
        }
    }
}

fn components(counts: &BTreeMap<String, u64>, edges: Vec<(usize, usize)>) -> Vec<Cluster> {
    let surfaces: Vec<(&String, u64)> = counts.iter().map(|(s, c)| (s, *c)).collect();
    let mut uf = UnionFind::new(surfaces.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut clusters: Vec<Cluster> = uf
        .groups()
        .into_iter()
        .map(|g| Cluster::from_members(g.into_iter().map(|i| surfaces[i])))
        .collect();
    clusters.sort_by(|a, b| a.canonical.cmp(&b.canonical));
    clusters
}

/// Edges between surfaces whose [`similarity_ratio`](crate::similarity::similarity_ratio)
/// exceeds `threshold`. Pairs whose length difference alone caps the ratio at
/// or below the threshold are never compared.
fn ratio_edges(surfaces: &[Vec<char>], threshold: u8) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..surfaces.len()).collect();
    order.sort_by_key(|&i| surfaces[i].len());
    let mut edges: Vec<(usize, usize)> = (0..order.len())
        .into_par_iter()
        .flat_map_iter(|p| {
            let i = order[p];
            let mut local = Vec::new();
            for &j in &order[p + 1..] {
                if ratio_upper_bound(surfaces[i].len(), surfaces[j].len()) <= threshold {
                    break;
                }
                if ratio_chars(&surfaces[i], &surfaces[j]) > threshold {
                    local.push((i.min(j), i.max(j)));
                }
            }
            local
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn partial_ratio_edges(surfaces: &[Vec<char>], threshold: u8) -> Vec<(usize, usize)> {
    let n = surfaces.len();
    let mut edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            ((i + 1)..n)
                .filter(move |&j| partial_ratio_chars(&surfaces[i], &surfaces[j]) > threshold)
                .map(move |j| (i, j))
        })
        .collect();
    edges.sort_unstable();
    edges
}

fn as_chars(counts: &BTreeMap<String, u64>) -> Vec<Vec<char>> {
    counts.keys().map(|s| s.chars().collect()).collect()
}

/// Connected components of the graph linking surfaces with
/// `partial_ratio > threshold`. Input maps each distinct surface to its
/// mention count.
pub fn cluster_corporations(counts: &BTreeMap<String, u64>, threshold: u8) -> Vec<Cluster> {
    components(counts, partial_ratio_edges(&as_chars(counts), threshold))
}

/// Connected components of the graph linking surfaces with
/// `similarity_ratio > threshold`.
pub fn cluster_by_ratio(counts: &BTreeMap<String, u64>, threshold: u8) -> Vec<Cluster> {
    components(counts, ratio_edges(&as_chars(counts), threshold))
}

/// Surfaces equal after lowercasing.
pub fn cluster_case_insensitive(counts: &BTreeMap<String, u64>) -> Vec<Cluster> {
    let mut by_key: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, s) in counts.keys().enumerate() {
        by_key.entry(s.to_lowercase()).or_default().push(i);
    }
    let edges = by_key
        .into_values()
        .flat_map(|g| g.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    components(counts, edges)
}
