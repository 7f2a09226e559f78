//! Exact evaluation of `Z(𝒢)`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::weighted::WeightedGraph;

/// Default vertex cap for [`brute_force_z`].
pub const BRUTE_FORCE_CAP: usize = 30;

pub fn brute_force_z(wg: &WeightedGraph) -> Result<BigUint> {
    brute_force_z_capped(wg, BRUTE_FORCE_CAP)
}

/// Sum over all vertex subsets, visited in Gray-code order so each step
/// toggles one vertex and updates the edge-conflict count and the term
/// incrementally.
pub fn brute_force_z_capped(wg: &WeightedGraph, cap: usize) -> Result<BigUint> {
    let g = &wg.graph;
    let n = g.order();
    if n > cap || n > 63 {
        return Err(Error::Size(format!("brute force on {n} vertices exceeds cap {}", cap.min(63))));
    }
    let ids = g.vertices();
    let masks: Vec<u64> = ids
        .iter()
        .map(|&v| g.nbrs(v).iter().fold(0u64, |m, &w| m | 1 << g.index(w).unwrap()))
        .collect();
    let unit = ids.iter().all(|&v| wg.wp(v).is_one() && wg.wm(v).is_one());

    let mut set = 0u64;
    let mut conflicts = 0u32;
    if unit {
        let mut count: u64 = 1;
        for step in 1u64..(1u64 << n) {
            let b = step.trailing_zeros() as usize;
            toggle(&mut set, &mut conflicts, &masks, b);
            if conflicts == 0 {
                count += 1;
            }
        }
        return Ok(BigUint::from(count) * &wg.multiplier);
    }

    let wp: Vec<&BigUint> = ids.iter().map(|&v| wg.wp(v)).collect();
    let wm: Vec<&BigUint> = ids.iter().map(|&v| wg.wm(v)).collect();
    let mut term: BigUint = wm.iter().fold(BigUint::one(), |acc, x| acc * *x);
    let mut total = term.clone();
    for step in 1u64..(1u64 << n) {
        let b = step.trailing_zeros() as usize;
        let entering = set & (1 << b) == 0;
        toggle(&mut set, &mut conflicts, &masks, b);
        term = if entering { term * wp[b] / wm[b] } else { term * wm[b] / wp[b] };
        if conflicts == 0 {
            total += &term;
        }
    }
    Ok(total * &wg.multiplier)
}

fn toggle(set: &mut u64, conflicts: &mut u32, masks: &[u64], b: usize) {
    let bit = 1u64 << b;
    if *set & bit == 0 {
        *conflicts += (masks[b] & *set).count_ones();
        *set |= bit;
    } else {
        *set &= !bit;
        *conflicts -= (masks[b] & *set).count_ones();
    }
}

/// Tree dynamic programme, times the multiplier. Errors if a cycle exists.
pub fn forest_z(wg: &WeightedGraph) -> Result<BigUint> {
    if !wg.graph.is_forest() {
        return Err(Error::Structure("forest_z called on a graph with a cycle".into()));
    }
    Ok(forest_sum(&wg.graph, wg) * &wg.multiplier)
}

/// `Z` of the forest `g` with weights from `wg` and multiplier 1.
pub(crate) fn forest_sum(g: &Graph, wg: &WeightedGraph) -> BigUint {
    let n = g.order();
    let ids = g.vertices();
    let mut parent = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut zin = vec![BigUint::zero(); n];
    let mut zout = vec![BigUint::zero(); n];
    let mut total = BigUint::one();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        order.clear();
        visited[root] = true;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            order.push(i);
            for &w in g.nbrs(ids[i]) {
                let j = g.index(w).unwrap();
                if !visited[j] {
                    visited[j] = true;
                    parent[j] = i;
                    stack.push(j);
                }
            }
        }
        for &i in order.iter().rev() {
            let v = ids[i];
            let mut a = wg.wp(v).clone();
            let mut b = wg.wm(v).clone();
            for &w in g.nbrs(v) {
                let j = g.index(w).unwrap();
                if parent[j] == i {
                    a *= &zout[j];
                    b *= &zin[j] + &zout[j];
                }
            }
            zin[i] = a;
            zout[i] = b;
        }
        total *= &zin[root] + &zout[root];
    }
    total
}

/// Sum over independent sets `I` of `G[Y]` of
/// `w₊(I)·w₋(Y∖I)·w₋(Γ(I)∖Y)·Z(𝒢−Y−Γ(I))`, with the forest factor taken at
/// multiplier 1 and `W` applied once. The forest vertices blocked by `I` are
/// forced out of the set, so they still contribute their `w₋`.
pub fn exact_count(wg: &WeightedGraph, y: &[Vertex]) -> Result<BigUint> {
    let g = &wg.graph;
    let mut y = y.to_vec();
    y.sort_unstable();
    y.dedup();
    for &v in &y {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    let rest = g.without(&y);
    if !rest.is_forest() {
        return Err(Error::Structure("removing Y does not leave a forest".into()));
    }
    let mut chosen = Vec::new();
    let mut total = BigUint::zero();
    enumerate_y(wg, &y, 0, &mut chosen, &rest, &mut total);
    Ok(total * &wg.multiplier)
}

fn enumerate_y(
    wg: &WeightedGraph,
    y: &[Vertex],
    pos: usize,
    chosen: &mut Vec<Vertex>,
    rest: &Graph,
    total: &mut BigUint,
) {
    if pos == y.len() {
        let mut term = BigUint::one();
        for &v in y {
            term *= if chosen.contains(&v) { wg.wp(v) } else { wg.wm(v) };
        }
        let mut blocked: Vec<Vertex> = chosen
            .iter()
            .flat_map(|&v| wg.graph.nbrs(v).iter().copied())
            .filter(|&u| rest.contains(u))
            .collect();
        blocked.sort_unstable();
        blocked.dedup();
        term *= wg.wm_product(&blocked);
        let forest = rest.without(&blocked);
        *total += term * forest_sum(&forest, wg);
        return;
    }
    let v = y[pos];
    enumerate_y(wg, y, pos + 1, chosen, rest, total);
    if chosen.iter().all(|&u| !wg.graph.has_edge(u, v)) {
        chosen.push(v);
        enumerate_y(wg, y, pos + 1, chosen, rest, total);
        chosen.pop();
    }
}

/// Exact `Z(𝒢)` for graphs past the brute-force range: splits into
/// components, finishes acyclic ones with the tree programme and branches
/// on a maximum-degree vertex otherwise.
pub fn exact_z(wg: &WeightedGraph) -> BigUint {
    z_rec(&wg.graph, wg) * &wg.multiplier
}

fn z_rec(g: &Graph, wg: &WeightedGraph) -> BigUint {
    if g.is_empty() {
        return BigUint::one();
    }
    if g.is_forest() {
        return forest_sum(g, wg);
    }
    let comps = g.components();
    if comps.len() > 1 {
        return comps
            .iter()
            .map(|c| z_rec(&g.induced(c), wg))
            .fold(BigUint::one(), |acc, z| acc * z);
    }
    let mut v = g.vertices()[0];
    for &u in g.vertices() {
        if g.degree(u) > g.degree(v) {
            v = u;
        }
    }
    let nb = g.nbrs(v);
    let out = wg.wm(v) * z_rec(&g.without(&[v]), wg);
    let inn = wg.wp(v) * nb.iter().fold(BigUint::one(), |acc, &w| acc * wg.wm(w)) * z_rec(&g.without_closed_nbhd(v), wg);
    out + inn
}
