use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// `(G, w₊, w₋, W)`: a graph with per-vertex in/out weights and a global multiplier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: Graph,
    pub wplus: BTreeMap<Vertex, BigUint>,
    pub wminus: BTreeMap<Vertex, BigUint>,
    pub multiplier: BigUint,
}

impl WeightedGraph {
    pub fn new(
        graph: Graph,
        wplus: BTreeMap<Vertex, BigUint>,
        wminus: BTreeMap<Vertex, BigUint>,
        multiplier: BigUint,
    ) -> Result<Self> {
        if multiplier.is_zero() {
            return Err(Error::Input("multiplier must be positive".into()));
        }
        for &v in graph.vertices() {
            for (name, map) in [("w+", &wplus), ("w-", &wminus)] {
                match map.get(&v) {
                    None => return Err(Error::Input(format!("{name} missing at vertex {v}"))),
                    Some(x) if x.is_zero() => {
                        return Err(Error::Input(format!("{name} must be positive at vertex {v}")))
                    }
                    _ => {}
                }
            }
        }
        Ok(WeightedGraph { graph, wplus, wminus, multiplier })
    }

    /// All weights 1, multiplier 1.
    pub fn unit(graph: Graph) -> Self {
        let ones: BTreeMap<Vertex, BigUint> =
            graph.vertices().iter().map(|&v| (v, BigUint::one())).collect();
        WeightedGraph { graph, wplus: ones.clone(), wminus: ones, multiplier: BigUint::one() }
    }

    /// Same weights everywhere.
    pub fn uniform(graph: Graph, wp: u64, wm: u64) -> Self {
        let mut wg = WeightedGraph::unit(graph);
        for x in wg.wplus.values_mut() {
            *x = BigUint::from(wp);
        }
        for x in wg.wminus.values_mut() {
            *x = BigUint::from(wm);
        }
        wg
    }

    pub fn wp(&self, v: Vertex) -> &BigUint {
        &self.wplus[&v]
    }

    pub fn wm(&self, v: Vertex) -> &BigUint {
        &self.wminus[&v]
    }

    /// Product of `w₋` over a set.
    pub fn wm_product(&self, set: &[Vertex]) -> BigUint {
        set.iter().fold(BigUint::one(), |acc, v| acc * self.wm(*v))
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Weights restricted to the vertices of `graph`; the multiplier is kept.
    pub fn with_graph(&self, graph: Graph) -> WeightedGraph {
        let pick = |map: &BTreeMap<Vertex, BigUint>| -> BTreeMap<Vertex, BigUint> {
            graph.vertices().iter().map(|&v| (v, map[&v].clone())).collect()
        };
        WeightedGraph {
            wplus: pick(&self.wplus),
            wminus: pick(&self.wminus),
            graph,
            multiplier: self.multiplier.clone(),
        }
    }

    /// `𝒢 − S`, keeping the multiplier.
    pub fn without(&self, drop: &[Vertex]) -> WeightedGraph {
        self.with_graph(self.graph.without(drop))
    }

    /// `𝒢[S]` with the given multiplier.
    pub fn induced(&self, keep: &[Vertex], multiplier: BigUint) -> WeightedGraph {
        let mut h = self.with_graph(self.graph.induced(keep));
        h.multiplier = multiplier;
        h
    }

    /// `w₊(v) ≤ λ·w₋(v)` everywhere.
    pub fn is_balanced(&self, lambda: &BigRational) -> bool {
        self.graph.vertices().iter().all(|&v| {
            let lhs = BigRational::from_integer(self.wp(v).clone().into());
            let rhs = lambda * BigRational::from_integer(self.wm(v).clone().into());
            lhs <= rhs
        })
    }

    pub fn is_one_balanced(&self) -> bool {
        self.graph.vertices().iter().all(|&v| self.wp(v) <= self.wm(v))
    }
}
