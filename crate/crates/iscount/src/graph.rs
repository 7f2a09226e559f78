//! Undirected simple graphs whose vertex ids survive deletion.
//!
//! Vertices are positive integers. Deleting vertices never renumbers the
//! survivors, so "least id" tie-breaks stay meaningful across a whole
//! recursion tree. Every derived graph is a fresh value.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<Vertex>,
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degree: usize,
    pub two_degree: usize,
    pub gamma2_size: usize,
}

/// Outcome of a near-forest test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NearForest {
    /// Already acyclic (this includes the empty graph).
    Forest,
    /// Deleting this vertex together with its neighbours leaves a forest.
    Center(Vertex),
    No,
}

impl NearForest {
    pub fn holds(self) -> bool {
        !matches!(self, NearForest::No)
    }
}

impl Graph {
    pub fn empty() -> Self {
        Graph::default()
    }

    /// Vertices `1..=n`, no edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            ids: (1..=n as Vertex).collect(),
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Vertices `1..=n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Graph::with_vertices((1..=n as Vertex).collect(), edges)
    }

    /// Arbitrary positive vertex ids with the given edges. Self-loops,
    /// repeated edges, repeated vertices and dangling endpoints are rejected.
    pub fn with_vertices(mut ids: Vec<Vertex>, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("repeated vertex id".into()));
        }
        if ids.first() == Some(&0) {
            return Err(Error::Input("vertex ids must be positive".into()));
        }
        let mut adj = vec![Vec::new(); ids.len()];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::Input(format!("self-loop at {u}")));
            }
            let iu = ids.binary_search(&u).map_err(|_| Error::UnknownVertex(u))?;
            let iv = ids.binary_search(&v).map_err(|_| Error::UnknownVertex(v))?;
            adj[iu].push(v);
            adj[iv].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::Input("repeated edge".into()));
            }
        }
        Ok(Graph { ids, adj, edges: edges.len() })
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub(crate) fn index(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    fn idx(&self, v: Vertex) -> Result<usize> {
        self.index(v).ok_or(Error::UnknownVertex(v))
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&[Vertex]> {
        Ok(&self.adj[self.idx(v)?])
    }

    /// Neighbours of a vertex known to be present. Panics otherwise.
    pub fn nbrs(&self, v: Vertex) -> &[Vertex] {
        match self.index(v) {
            Some(i) => &self.adj[i],
            None => panic!("vertex {v} not in graph"),
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.nbrs(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.index(u).map_or(false, |i| self.adj[i].binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edges);
        for (i, &u) in self.ids.iter().enumerate() {
            for &v in &self.adj[i] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_id(&self) -> Vertex {
        self.ids.last().copied().unwrap_or(0)
    }

    pub fn two_degree(&self, v: Vertex) -> usize {
        self.nbrs(v).iter().map(|&w| self.degree(w)).sum()
    }

    /// Vertices at distance exactly two from `v`.
    pub fn gamma2(&self, v: Vertex) -> Vec<Vertex> {
        let first = self.nbrs(v);
        let mut out: Vec<Vertex> = first
            .iter()
            .flat_map(|&w| self.nbrs(w).iter().copied())
            .filter(|&u| u != v && first.binary_search(&u).is_err())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn degree_profile(&self, v: Vertex) -> Result<DegreeProfile> {
        self.idx(v)?;
        Ok(DegreeProfile {
            degree: self.degree(v),
            two_degree: self.two_degree(v),
            gamma2_size: self.gamma2(v).len(),
        })
    }

    /// External neighbourhood of `s`: everything adjacent to `s` but outside it.
    pub fn gamma_set(&self, s: &[Vertex]) -> Result<Vec<Vertex>> {
        let inside = self.mark(s)?;
        let mut out = Vec::new();
        for (i, &flag) in inside.iter().enumerate() {
            if !flag {
                continue;
            }
            for &w in &self.adj[i] {
                if !inside[self.index(w).unwrap()] {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub(crate) fn mark(&self, s: &[Vertex]) -> Result<Vec<bool>> {
        let mut flags = vec![false; self.ids.len()];
        for &v in s {
            flags[self.idx(v)?] = true;
        }
        Ok(flags)
    }

    /// Connected components, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&vec![false; self.ids.len()])
    }

    /// Components of the graph with the flagged vertices deleted.
    pub(crate) fn components_avoiding(&self, removed: &[bool]) -> Vec<Vec<Vertex>> {
        let n = self.ids.len();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(i) = queue.pop_front() {
                comp.push(self.ids[i]);
                for &w in &self.adj[i] {
                    let j = self.index(w).unwrap();
                    if !seen[j] {
                        seen[j] = true;
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced by `keep` (order and duplicates irrelevant).
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut flags = vec![false; self.ids.len()];
        for &v in keep {
            if let Some(i) = self.index(v) {
                flags[i] = true;
            }
        }
        self.restrict(&flags)
    }

    /// The graph with the given vertices deleted. Unknown ids are ignored.
    pub fn without(&self, drop: &[Vertex]) -> Graph {
        let mut flags = vec![true; self.ids.len()];
        for &v in drop {
            if let Some(i) = self.index(v) {
                flags[i] = false;
            }
        }
        self.restrict(&flags)
    }

    /// `G - v - Γ(v)`.
    pub fn without_closed_nbhd(&self, v: Vertex) -> Graph {
        let mut drop = self.nbrs(v).to_vec();
        drop.push(v);
        self.without(&drop)
    }

    fn restrict(&self, keep: &[bool]) -> Graph {
        let mut ids = Vec::new();
        let mut adj = Vec::new();
        let mut twice = 0;
        for (i, &v) in self.ids.iter().enumerate() {
            if !keep[i] {
                continue;
            }
            let list: Vec<Vertex> = self.adj[i]
                .iter()
                .copied()
                .filter(|&w| keep[self.index(w).unwrap()])
                .collect();
            twice += list.len();
            ids.push(v);
            adj.push(list);
        }
        Graph { ids, adj, edges: twice / 2 }
    }

    /// Adds fresh vertices and edges. New ids must exceed every existing id.
    pub fn extend(&self, new_ids: &[Vertex], new_edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut ids = self.ids.clone();
        ids.extend_from_slice(new_ids);
        let mut edges = self.edges();
        edges.extend_from_slice(new_edges);
        Graph::with_vertices(ids, &edges)
    }

    /// Acyclicity of the graph after deleting the flagged vertices.
    pub(crate) fn acyclic_avoiding(&self, removed: &[bool]) -> bool {
        let mut dsu = Dsu::new(self.ids.len());
        for (i, &u) in self.ids.iter().enumerate() {
            if removed[i] {
                continue;
            }
            for &w in &self.adj[i] {
                if w <= u {
                    continue;
                }
                let j = self.index(w).unwrap();
                if !removed[j] && !dsu.union(i, j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_forest(&self) -> bool {
        // A graph is a forest iff m = n - c.
        self.edges + self.components().len() == self.ids.len()
    }

    pub fn near_forest(&self) -> NearForest {
        if self.is_forest() {
            return NearForest::Forest;
        }
        let mut removed = vec![false; self.ids.len()];
        for (i, &v) in self.ids.iter().enumerate() {
            removed[i] = true;
            for &w in &self.adj[i] {
                removed[self.index(w).unwrap()] = true;
            }
            let ok = self.acyclic_avoiding(&removed);
            removed[i] = false;
            for &w in &self.adj[i] {
                removed[self.index(w).unwrap()] = false;
            }
            if ok {
                return NearForest::Center(v);
            }
        }
        NearForest::No
    }

    pub fn is_near_forest(&self) -> bool {
        self.near_forest().holds()
    }

    /// Minimum degree at least 2 and no vertex with degree ≥ 6 and 2-degree ≥ 27.
    pub fn in_family_d(&self) -> bool {
        self.min_degree() >= 2 && self.no_heavy_vertex()
    }

    /// No vertex has degree ≥ 6 together with 2-degree ≥ 27.
    pub fn no_heavy_vertex(&self) -> bool {
        self.ids.iter().all(|&v| self.degree(v) < 6 || self.two_degree(v) <= 26)
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.ids.len();
        let mut colour = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s);
            while let Some(i) = queue.pop_front() {
                for &w in &self.adj[i] {
                    let j = self.index(w).unwrap();
                    if colour[j] == u8::MAX {
                        colour[j] = 1 - colour[i];
                        queue.push_back(j);
                    } else if colour[j] == colour[i] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Parses the `p is <n> <m>` / `e <u> <v>` text format.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks[0] {
                "p" => {
                    if header.is_some() {
                        return Err(Error::parse(line, "second problem line"));
                    }
                    if toks.len() != 4 || toks[1] != "is" {
                        return Err(Error::parse(line, "expected `p is <n> <m>`"));
                    }
                    let n = parse_num(toks[2], line)?;
                    let m = parse_num(toks[3], line)?;
                    header = Some((n, m));
                }
                "e" => {
                    let (n, _) = header.ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                    if toks.len() != 3 {
                        return Err(Error::parse(line, "expected `e <u> <v>`"));
                    }
                    let u = parse_num(toks[1], line)?;
                    let v = parse_num(toks[2], line)?;
                    if !(1 <= u && u < v && v <= n) {
                        return Err(Error::parse(line, format!("edge {u} {v} must satisfy 1 <= u < v <= {n}")));
                    }
                    edges.push((u as Vertex, v as Vertex, line));
                }
                other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(0, "missing problem line"))?;
        if edges.len() != m {
            return Err(Error::parse(0, format!("header declares {m} edges, found {}", edges.len())));
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v, line) in &edges {
            if !seen.insert((u, v)) {
                return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
            }
        }
        let plain: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::from_edges(n, &plain)
    }

    /// Text form. Only meaningful for graphs on `1..=n`.
    pub fn to_text(&self) -> String {
        let mut s = format!("p is {} {}\n", self.max_id(), self.edges);
        for (u, v) in self.edges() {
            let _ = writeln!(s, "e {u} {v}");
        }
        s
    }
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("`{tok}` is not a non-negative integer")))
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn neighbours_and_profiles() {
        let tri = g(3, &[(1, 2), (2, 3), (1, 3)]);
        assert_eq!(tri.neighbors(1).unwrap(), &[2, 3]);
        assert!(matches!(tri.neighbors(9), Err(Error::UnknownVertex(9))));
        let c4 = g(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let p = c4.degree_profile(1).unwrap();
        assert_eq!((p.degree, p.two_degree, p.gamma2_size), (2, 4, 1));
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let p = k4.degree_profile(1).unwrap();
        assert_eq!((p.degree, p.two_degree, p.gamma2_size), (3, 9, 0));
        let e = g(2, &[(1, 2)]);
        let p = e.degree_profile(1).unwrap();
        assert_eq!((p.degree, p.two_degree, p.gamma2_size), (1, 1, 0));
    }

    #[test]
    fn gamma_sets() {
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        assert_eq!(p4.gamma_set(&[2, 3]).unwrap(), vec![1, 4]);
        assert!(p4.gamma_set(&[1, 2, 3, 4]).unwrap().is_empty());
        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(star.gamma_set(&[1]).unwrap(), vec![2, 3, 4]);
    }

    #[test]
    fn ids_survive_deletion() {
        let p4 = g(4, &[(1, 2), (2, 3), (3, 4)]);
        let h = p4.without(&[2]);
        assert_eq!(h.vertices(), &[1, 3, 4]);
        assert_eq!(h.nbrs(3), &[4]);
        assert_eq!(h.size(), 1);
        assert_eq!(h.components(), vec![vec![1], vec![3, 4]]);
    }

    #[test]
    fn near_forests() {
        assert!(Graph::empty().is_near_forest());
        let c5 = g(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]);
        assert!(c5.is_near_forest());
        // two triangles joined by a path of length 3
        let far = g(8, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (6, 8)]);
        assert!(!far.is_near_forest());
    }

    #[test]
    fn family_d() {
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert!(k4.in_family_d());
        let mut k7 = Vec::new();
        for u in 1..=7 {
            for v in u + 1..=7 {
                k7.push((u, v));
            }
        }
        assert!(!g(7, &k7).in_family_d());
        assert!(!g(3, &[(1, 2), (2, 3)]).in_family_d());
    }

    #[test]
    fn text_round_trip() {
        let text = "c a comment\np is 4 3\ne 1 2\ne 2 3\ne 3 4\n";
        let h = Graph::parse(text).unwrap();
        assert_eq!(h.to_text(), "p is 4 3\ne 1 2\ne 2 3\ne 3 4\n");
        let dup = Graph::parse("p is 3 2\ne 1 2\ne 1 2\n");
        assert!(matches!(dup, Err(Error::Parse { line: 3, .. })));
        assert!(Graph::parse("p is 3 1\ne 2 1\n").is_err());
    }
}
