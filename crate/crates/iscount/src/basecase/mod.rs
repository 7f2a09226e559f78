//! Polynomial-time counting on sparse instances.

pub mod gadget;
pub mod psi;
pub mod uni;

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

pub use gadget::{
    approx_z, approx_z_with, compute_digits, gadget_product_exact, realize_weight_map, GadgetDigits, WeightMap,
};
pub use psi::{check_kappa_decreasing, saw_tree_paths, verify_psi_kappa, PsiViolation};
pub use uni::{approx_z_uni, approx_z_uni_with, UniConfig};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transform::prune;
use crate::weighted::WeightedGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxValue {
    pub value: BigRational,
    pub epsilon: BigRational,
    /// Set when no approximation step was involved.
    pub exact: bool,
}

impl ApproxValue {
    pub fn exact(value: BigRational, epsilon: BigRational) -> Self {
        ApproxValue { value, epsilon, exact: true }
    }

    pub fn approximate(value: BigRational, epsilon: BigRational) -> Self {
        ApproxValue { value, epsilon, exact: false }
    }

    /// `(1−ε)·truth ≤ value ≤ (1+ε)·truth`.
    pub fn within(&self, truth: &BigRational) -> bool {
        let lo = (BigRational::one() - &self.epsilon) * truth;
        let hi = (BigRational::one() + &self.epsilon) * truth;
        lo <= self.value && self.value <= hi
    }
}

/// `λ_c(κ) = κ^κ/(κ−1)^{κ+1} > 1` for `κ = 4141/1000`, decided exactly:
/// raising both sides to the 1000th power leaves
/// `4141^4141 · 1000^1000 > 3141^5141`.
pub fn kappa_is_subcritical() -> bool {
    static CHECK: OnceLock<bool> = OnceLock::new();
    *CHECK.get_or_init(|| {
        let lhs = num_traits::pow(BigUint::from(4141u32), 4141) * num_traits::pow(BigUint::from(1000u32), 1000);
        let rhs = num_traits::pow(BigUint::from(3141u32), 5141);
        lhs > rhs
    })
}

pub fn base_count(wg: &WeightedGraph, eps: &BigRational) -> Result<ApproxValue> {
    base_count_with(wg, eps, &UniConfig::default())
}

pub fn base_count_with(wg: &WeightedGraph, eps: &BigRational, cfg: &UniConfig) -> Result<ApproxValue> {
    if !wg.graph.in_family_d() {
        return Err(Error::Precondition("base case needs minimum degree 2 and no heavy vertex".into()));
    }
    if !wg.is_one_balanced() {
        return Err(Error::Precondition("base case needs a 1-balanced weighted graph".into()));
    }
    if !kappa_is_subcritical() {
        return Err(Error::Precondition("connective-constant bound is not subcritical".into()));
    }
    approx_z_with(wg, eps, &BigRational::one(), cfg)
}

/// Strips degree-≤1 vertices one at a time (least id first) by pruning, then
/// hands the rest to the base case.
pub fn fptas_unweighted(g: &Graph, eps: &BigRational) -> Result<ApproxValue> {
    gadget::check_eps(eps)?;
    if !g.no_heavy_vertex() {
        return Err(Error::Precondition("graph has a vertex of degree >= 6 with 2-degree >= 27".into()));
    }
    let mut wg = WeightedGraph::unit(g.clone());
    while let Some(&v) = wg.graph.vertices().iter().find(|&&v| wg.graph.degree(v) <= 1) {
        wg = prune(&wg, &[v])?;
    }
    if wg.is_empty() {
        let w = BigRational::from_integer(BigInt::from(wg.multiplier));
        return Ok(ApproxValue::exact(w, eps.clone()));
    }
    base_count(&wg, eps)
}
