#![allow(dead_code)]

use iscount::{Graph, Vertex, WeightedGraph};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// G(n, p) with `p` given as the expected average degree.
pub fn gnp(r: &mut ChaCha8Rng, n: usize, avg_degree: f64) -> Graph {
    let p = if n > 1 { (avg_degree / (n - 1) as f64).min(1.0) } else { 0.0 };
    let mut e = Vec::new();
    for u in 1..=n as Vertex {
        for v in u + 1..=n as Vertex {
            if r.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

pub fn random_weighted(r: &mut ChaCha8Rng, g: Graph, max_w: u32) -> WeightedGraph {
    let mut wg = WeightedGraph::unit(g);
    for &v in wg.graph.vertices().to_vec().iter() {
        wg.wplus.insert(v, BigUint::from(r.gen_range(1..=max_w)));
        wg.wminus.insert(v, BigUint::from(r.gen_range(1..=max_w)));
    }
    wg
}

/// Weights with `w₊ ≤ λ w₋` at every vertex.
pub fn random_balanced(r: &mut ChaCha8Rng, g: Graph, lambda: &BigRational, max_w: u32) -> WeightedGraph {
    let mut wg = WeightedGraph::unit(g);
    for &v in wg.graph.vertices().to_vec().iter() {
        loop {
            let wp = r.gen_range(1..=max_w);
            let wm = r.gen_range(1..=max_w);
            if q(wp as i64, 1) <= lambda * q(wm as i64, 1) {
                wg.wplus.insert(v, BigUint::from(wp));
                wg.wminus.insert(v, BigUint::from(wm));
                break;
            }
        }
    }
    wg
}

/// Every graph on `1..=n` given by the bits of `mask` over the pairs `(u, v)`, `u < v`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut e = Vec::new();
    let mut bit = 0;
    for u in 1..=n as Vertex {
        for v in u + 1..=n as Vertex {
            if mask >> bit & 1 == 1 {
                e.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let e: Vec<_> = (1..=n as Vertex).map(|i| if (i as usize) < n { (i, i + 1) } else { (1, n as Vertex) }).collect();
    Graph::from_edges(n, &e).unwrap()
}

/// Adjacency rows as bitmasks over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Small {
    rows: Vec<u16>,
}

impl canonical_form::Canonize for Small {
    fn size(&self) -> usize {
        self.rows.len()
    }

    fn apply_morphism(&self, perm: &[usize]) -> Self {
        let mut rows = vec![0u16; self.rows.len()];
        for (i, &r) in self.rows.iter().enumerate() {
            let mut out = 0u16;
            for (j, &pj) in perm.iter().enumerate() {
                if r >> j & 1 == 1 {
                    out |= 1 << pj;
                }
            }
            rows[perm[i]] = out;
        }
        Small { rows }
    }

    fn invariant_neighborhood(&self, u: usize) -> impl Iterator<Item = (usize, u64)> {
        let r = self.rows[u];
        (0..self.rows.len()).filter(move |&j| r >> j & 1 == 1).map(|j| (j, 0))
    }
}

impl Small {
    pub fn to_graph(&self) -> Graph {
        let mut e = Vec::new();
        for (i, &r) in self.rows.iter().enumerate() {
            for j in i + 1..self.rows.len() {
                if r >> j & 1 == 1 {
                    e.push((i as Vertex + 1, j as Vertex + 1));
                }
            }
        }
        Graph::from_edges(self.rows.len(), &e).unwrap()
    }
}

/// One representative per isomorphism class of graphs on `n` vertices, for
/// every `n ≤ max_n`, built by adding a vertex in all possible ways and
/// keeping canonical forms.
pub fn graphs_up_to_iso(max_n: usize) -> Vec<Vec<Small>> {
    use canonical_form::Canonize;
    let mut levels = vec![vec![Small { rows: Vec::new() }]];
    for n in 1..=max_n {
        let mut seen = std::collections::BTreeSet::new();
        for g in &levels[n - 1] {
            for nbrs in 0u16..(1 << (n - 1)) {
                let mut rows = g.rows.clone();
                for (j, r) in rows.iter_mut().enumerate() {
                    if nbrs >> j & 1 == 1 {
                        *r |= 1 << (n - 1);
                    }
                }
                rows.push(nbrs);
                seen.insert(Small { rows }.canonical());
            }
        }
        levels.push(seen.into_iter().collect());
    }
    levels
}

/// The 21-vertex, 25-edge example with two distant cycles. Ids:
/// 1 = v, 2..=5 its neighbours (2 leads to x), 6 = x, 10 = y, 7 = the vertex
/// between y and z, 8 and 9 the two vertices between consecutive neighbours
/// of v, 16 = z, and 11..=21 the rest of the right-hand block.
pub fn two_cycle_fixture() -> Graph {
    let e = [
        (1, 2), (1, 3), (1, 4), (1, 5),
        (3, 10), (7, 10), (3, 8), (4, 8), (4, 9), (5, 9),
        (2, 6), (7, 16),
        (6, 11), (11, 12), (12, 17), (17, 19),
        (19, 20), (20, 21), (21, 18), (18, 16),
        (16, 15), (15, 14), (14, 13), (13, 12),
        (14, 20),
    ];
    Graph::from_edges(21, &e).unwrap()
}

/// Random graph of minimum degree ≥ 2 and maximum degree ≤ 5: a Hamiltonian
/// cycle on a shuffled order plus extra random edges.
pub fn random_family_d(r: &mut ChaCha8Rng, n: usize, extra: usize) -> Graph {
    use rand::seq::SliceRandom;
    let mut order: Vec<Vertex> = (1..=n as Vertex).collect();
    order.shuffle(r);
    let mut e: Vec<(Vertex, Vertex)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut deg = vec![2usize; n + 1];
    let mut tries = 0;
    while e.len() < n + extra && tries < 50 * n {
        tries += 1;
        let u = r.gen_range(1..=n as Vertex);
        let v = r.gen_range(1..=n as Vertex);
        if u == v || deg[u as usize] >= 5 || deg[v as usize] >= 5 {
            continue;
        }
        if e.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)) {
            continue;
        }
        deg[u as usize] += 1;
        deg[v as usize] += 1;
        e.push((u, v));
    }
    let e: Vec<_> = e.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    Graph::from_edges(n, &e).unwrap()
}

pub fn random_bipartite(r: &mut ChaCha8Rng, left: usize, right: usize, p: f64) -> Graph {
    let mut e = Vec::new();
    for u in 1..=left as Vertex {
        for v in left as Vertex + 1..=(left + right) as Vertex {
            if r.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(left + right, &e).unwrap()
}

pub fn arb_graph(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (min_n..=max_n, 0.0f64..1.0).prop_flat_map(|(n, density)| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density.max(0.01)), pairs).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut k = 0;
            for u in 1..=n as Vertex {
                for v in u + 1..=n as Vertex {
                    if bits[k] {
                        e.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

pub fn arb_weighted(min_n: usize, max_n: usize, max_w: u32) -> impl proptest::strategy::Strategy<Value = WeightedGraph> {
    use proptest::prelude::*;
    arb_graph(min_n, max_n).prop_flat_map(move |g| {
        let n = g.order();
        (
            Just(g),
            proptest::collection::vec((1..=max_w, 1..=max_w), n),
            1u32..=3,
        )
            .prop_map(|(g, ws, w)| {
                let mut wg = WeightedGraph::unit(g);
                for (&v, &(a, b)) in wg.graph.vertices().to_vec().iter().zip(&ws) {
                    wg.wplus.insert(v, BigUint::from(a));
                    wg.wminus.insert(v, BigUint::from(b));
                }
                wg.multiplier = BigUint::from(w);
                wg
            })
    })
}

/// Same graph with `w₊ ≤ w₋` everywhere (the pair sorted per vertex).
pub fn one_balanced(wg: &WeightedGraph) -> WeightedGraph {
    let mut out = wg.clone();
    for &v in wg.graph.vertices() {
        let (a, b) = (wg.wp(v).clone(), wg.wm(v).clone());
        out.wplus.insert(v, a.clone().min(b.clone()));
        out.wminus.insert(v, a.max(b));
    }
    out
}
