//! Univariate hardcore estimator used as the base-case black box.
//!
//! Pendant trees are folded exactly into per-vertex activities on the
//! 2-core. Small inputs are then finished exactly. Larger ones telescope
//! `Z = Π (1 + R_i)` over the core, where each occupation ratio `R_i` comes
//! from the self-avoiding-walk recursion cut off at a fixed depth.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::gadget::check_eps;
use super::ApproxValue;
use crate::error::{Error, Result};
use crate::exact::exact_z;
use crate::graph::{Graph, Vertex};
use crate::weighted::WeightedGraph;

#[derive(Clone, Debug, PartialEq)]
pub struct UniConfig {
    /// Inputs with at most this many vertices are evaluated exactly.
    pub exact_threshold: usize,
    /// Fixed recursion depth; otherwise `⌈depth_constant · ln(n/ε)⌉`.
    pub depth_override: Option<u32>,
    pub depth_constant: f64,
}

impl Default for UniConfig {
    fn default() -> Self {
        UniConfig { exact_threshold: 24, depth_override: None, depth_constant: 6.0 }
    }
}

pub fn approx_z_uni(g: &Graph, lambda: &BigRational, eps: &BigRational, depth_override: Option<u32>) -> Result<ApproxValue> {
    approx_z_uni_with(g, lambda, eps, &UniConfig { depth_override, ..UniConfig::default() })
}

pub fn approx_z_uni_with(g: &Graph, lambda: &BigRational, eps: &BigRational, cfg: &UniConfig) -> Result<ApproxValue> {
    check_eps(eps)?;
    if !lambda.is_positive() {
        return Err(Error::Input("lambda must be positive".into()));
    }
    let (core, activity, factor) = fold_pendant_trees(g, lambda);
    if core.is_empty() {
        return Ok(ApproxValue::exact(factor, eps.clone()));
    }
    if g.order() <= cfg.exact_threshold {
        return Ok(ApproxValue::exact(factor * activity_z(&core, &activity), eps.clone()));
    }
    let depth = cfg.depth_override.unwrap_or_else(|| {
        let ratio = g.order() as f64 / eps.to_f64().unwrap_or(1e-9);
        (cfg.depth_constant * ratio.ln()).ceil().max(1.0) as u32
    });
    Ok(ApproxValue::approximate(factor * telescoped_z(&core, &activity, depth), eps.clone()))
}

/// `Z` of `g` with per-vertex activities, exactly.
pub(crate) fn activity_z(g: &Graph, activity: &BTreeMap<Vertex, BigRational>) -> BigRational {
    let mut wplus = BTreeMap::new();
    let mut wminus = BTreeMap::new();
    let mut den = BigInt::one();
    for &v in g.vertices() {
        let a = &activity[&v];
        wplus.insert(v, a.numer().to_biguint().expect("positive activity"));
        wminus.insert(v, a.denom().to_biguint().expect("positive activity"));
        den *= a.denom();
    }
    let wg = WeightedGraph::new(g.clone(), wplus, wminus, BigUint::one()).expect("positive weights");
    BigRational::new(BigInt::from(exact_z(&wg)), den)
}

/// Peels degree-≤1 vertices down to the 2-core and folds every hanging tree
/// into the activity of its attachment vertex. Returns the core, its
/// activities and the accumulated factor.
fn fold_pendant_trees(g: &Graph, lambda: &BigRational) -> (Graph, BTreeMap<Vertex, BigRational>, BigRational) {
    let ids = g.vertices();
    let n = ids.len();
    let mut deg: Vec<usize> = ids.iter().map(|&v| g.degree(v)).collect();
    let mut peeled = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&i| deg[i] <= 1).collect();
    while let Some(i) = stack.pop() {
        if peeled[i] {
            continue;
        }
        peeled[i] = true;
        for &w in g.nbrs(ids[i]) {
            let j = g.index(w).unwrap();
            if !peeled[j] {
                deg[j] -= 1;
                if deg[j] <= 1 {
                    stack.push(j);
                }
            }
        }
    }
    let core_ids: Vec<Vertex> = (0..n).filter(|&i| !peeled[i]).map(|i| ids[i]).collect();
    let outside_ids: Vec<Vertex> = (0..n).filter(|&i| peeled[i]).map(|i| ids[i]).collect();
    let core = g.induced(&core_ids);
    let outside = g.induced(&outside_ids);
    let mut activity: BTreeMap<Vertex, BigRational> = core_ids.iter().map(|&v| (v, lambda.clone())).collect();
    let mut factor = BigRational::one();
    let uniform = |h: &Graph| -> BTreeMap<Vertex, BigRational> {
        h.vertices().iter().map(|&v| (v, lambda.clone())).collect()
    };
    for comp in outside.components() {
        let tree = outside.induced(&comp);
        let z = activity_z(&tree, &uniform(&tree));
        let attach = comp.iter().find_map(|&r| {
            g.nbrs(r).iter().find(|&&c| core.contains(c)).map(|&c| (r, c))
        });
        match attach {
            None => factor *= z,
            Some((r, c)) => {
                let rest = tree.without(&[r]);
                let z_without = activity_z(&rest, &uniform(&rest));
                let a = activity.get_mut(&c).unwrap();
                *a = &*a * &z_without / &z;
                factor *= z;
            }
        }
    }
    (core, activity, factor)
}

struct Saw {
    adj: Vec<Vec<usize>>,
    act: Vec<f64>,
    words: usize,
    memo: HashMap<(Vec<u64>, usize, u32), f64>,
}

fn has(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn clear(set: &mut [u64], i: usize) {
    set[i / 64] &= !(1u64 << (i % 64));
}

impl Saw {
    fn component(&self, set: &[u64], v: usize) -> (Vec<u64>, usize, usize) {
        let mut comp = vec![0u64; self.words];
        comp[v / 64] |= 1 << (v % 64);
        let mut stack = vec![v];
        let (mut verts, mut deg_sum) = (0usize, 0usize);
        while let Some(x) = stack.pop() {
            verts += 1;
            for &y in &self.adj[x] {
                if has(set, y) {
                    deg_sum += 1;
                    if !has(&comp, y) {
                        comp[y / 64] |= 1 << (y % 64);
                        stack.push(y);
                    }
                }
            }
        }
        (comp, verts, deg_sum / 2)
    }

    /// Exact ratio on a tree: `R(v) = λ_v Π 1/(1 + R(child))`.
    fn tree_ratio(&self, set: &[u64], v: usize, parent: usize) -> f64 {
        let mut r = self.act[v];
        for &u in &self.adj[v] {
            if u != parent && has(set, u) {
                r /= 1.0 + self.tree_ratio(set, u, v);
            }
        }
        r
    }

    fn ratio(&mut self, set: &[u64], v: usize, depth: u32) -> f64 {
        let (comp, verts, edges) = self.component(set, v);
        if edges + 1 == verts {
            return self.tree_ratio(&comp, v, usize::MAX);
        }
        if depth == 0 {
            return self.act[v];
        }
        let key = (comp, v, depth);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let mut cur = key.0.clone();
        clear(&mut cur, v);
        let mut r = self.act[v];
        let nbrs: Vec<usize> = self.adj[v].iter().copied().filter(|&u| has(&key.0, u)).collect();
        for u in nbrs {
            r /= 1.0 + self.ratio(&cur, u, depth - 1);
            clear(&mut cur, u);
        }
        self.memo.insert(key, r);
        r
    }
}

fn telescoped_z(core: &Graph, activity: &BTreeMap<Vertex, BigRational>, depth: u32) -> BigRational {
    let ids = core.vertices();
    let n = ids.len();
    let words = n.div_ceil(64);
    let mut saw = Saw {
        adj: ids.iter().map(|&v| core.nbrs(v).iter().map(|&w| core.index(w).unwrap()).collect()).collect(),
        act: ids.iter().map(|v| activity[v].to_f64().unwrap_or(0.0)).collect(),
        words,
        memo: HashMap::new(),
    };
    let mut set = vec![0u64; words];
    for i in 0..n {
        set[i / 64] |= 1 << (i % 64);
    }
    let mut z = BigRational::one();
    for i in 0..n {
        let remaining: Vec<Vertex> = (i..n).map(|j| ids[j]).collect();
        let rest = core.induced(&remaining);
        if rest.is_forest() {
            return z * activity_z(&rest, activity);
        }
        let r = saw.ratio(&set, i, depth);
        z *= BigRational::from_float(1.0 + r).expect("finite ratio");
        clear(&mut set, i);
        saw.memo.clear();
    }
    z
}
