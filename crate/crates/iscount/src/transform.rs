//! Z-preserving reductions: pruning, tree removal and Reduce.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact::{exact_count, exact_z, forest_sum};
use crate::graph::{Graph, NearForest, Vertex};
use crate::weighted::WeightedGraph;

/// `Z(G[S], w₊, w₋, 1)`.
///
/// When `G[S]` is a near-forest the feedback set is a closed neighbourhood
/// (or empty for forests), which keeps the enumeration at `2^Δ` terms.
/// Anything else falls back to the branching evaluator.
pub fn z_of_set(wg: &WeightedGraph, s: &[Vertex]) -> BigUint {
    let sub = wg.induced(s, BigUint::one());
    match sub.graph.near_forest() {
        NearForest::Forest => forest_sum(&sub.graph, &sub),
        NearForest::Center(u) => {
            let mut y = sub.graph.nbrs(u).to_vec();
            y.push(u);
            exact_count(&sub, &y).expect("closed neighbourhood of a near-forest centre")
        }
        NearForest::No => exact_z(&sub),
    }
}

/// Deletes `s` and folds its contribution into the multiplier (when `s` has
/// no outside neighbour) or into the weights of its single outside neighbour.
pub fn prune(wg: &WeightedGraph, s: &[Vertex]) -> Result<WeightedGraph> {
    let boundary = wg.graph.gamma_set(s)?;
    match boundary.as_slice() {
        [] => {
            let z = z_of_set(wg, s);
            let mut out = wg.without(s);
            out.multiplier = &wg.multiplier * z;
            Ok(out)
        }
        &[v] => {
            let nv = wg.graph.nbrs(v);
            let (near, far): (Vec<Vertex>, Vec<Vertex>) =
                s.iter().partition(|u| nv.binary_search(u).is_ok());
            let new_plus = wg.wp(v) * wg.wm_product(&near) * z_of_set(wg, &far);
            let new_minus = wg.wm(v) * z_of_set(wg, s);
            let mut out = wg.without(s);
            out.wplus.insert(v, new_plus);
            out.wminus.insert(v, new_minus);
            Ok(out)
        }
        _ => Err(Error::Precondition(format!(
            "prune needs at most one outside neighbour, found {}",
            boundary.len()
        ))),
    }
}

/// Removes every tree component, multiplying `W` by their partition functions.
pub fn tree_removal(wg: &WeightedGraph) -> WeightedGraph {
    let g = &wg.graph;
    let mut drop = Vec::new();
    let mut factor = BigUint::one();
    for comp in g.components() {
        let sub = g.induced(&comp);
        if sub.size() + 1 == sub.order() {
            factor *= forest_sum(&sub, wg);
            drop.extend(comp);
        }
    }
    if drop.is_empty() {
        return wg.clone();
    }
    let mut out = wg.without(&drop);
    out.multiplier = &wg.multiplier * factor;
    out
}

/// Finds the first set to prune in the fixed scan order: components of `G`
/// first, then for each `v` by increasing id the components of `G − v`.
pub fn find_prunable(g: &Graph) -> Option<Vec<Vertex>> {
    let none = vec![false; g.order()];
    for comp in g.components_avoiding(&none) {
        if g.induced(&comp).is_near_forest() {
            return Some(comp);
        }
    }
    let mut removed = none;
    for i in 0..g.order() {
        removed[i] = true;
        let found = g
            .components_avoiding(&removed)
            .into_iter()
            .find(|comp| g.induced(comp).is_near_forest());
        removed[i] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Prunes near-forest pieces until the graph is reduced.
pub fn reduce(wg: &WeightedGraph) -> Result<WeightedGraph> {
    reduce_counted(wg).map(|(r, _)| r)
}

/// [`reduce`], also returning the number of prunes performed.
pub fn reduce_counted(wg: &WeightedGraph) -> Result<(WeightedGraph, usize)> {
    if wg.is_empty() {
        return Err(Error::Precondition("reduce on the empty graph".into()));
    }
    let mut cur = wg.clone();
    let mut prunes = 0;
    while let Some(s) = find_prunable(&cur.graph) {
        cur = prune(&cur, &s)?;
        prunes += 1;
    }
    Ok((cur, prunes))
}

/// Brute-force check of reducedness: every non-empty vertex set spanning a
/// near-forest has at least two outside neighbours. Exponential; tests only.
pub fn is_reduced_brute(g: &Graph) -> bool {
    let ids = g.vertices();
    let n = ids.len();
    assert!(n <= 20, "is_reduced_brute is exponential");
    for mask in 1u32..(1u32 << n) {
        let set: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ids[i]).collect();
        if g.gamma_set(&set).unwrap().len() < 2 && g.induced(&set).is_near_forest() {
            return false;
        }
    }
    true
}
