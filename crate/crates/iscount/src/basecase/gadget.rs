use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::uni::{approx_z_uni_with, UniConfig};
use super::ApproxValue;
use crate::error::{Error, Result};
use crate::exact::exact_z;
use crate::graph::{Graph, Vertex};
use crate::weighted::WeightedGraph;

/// Vertex → multiset of star sizes (leaf counts), kept sorted.
pub type WeightMap = BTreeMap<Vertex, Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetDigits {
    /// `a_{0,v} … a_{n,v}` for every vertex.
    pub digits: BTreeMap<Vertex, Vec<u64>>,
    pub residual: BTreeMap<Vertex, BigRational>,
}

impl GadgetDigits {
    pub fn weight_map(&self) -> WeightMap {
        self.digits
            .iter()
            .map(|(&v, a)| {
                let stars = a.iter().enumerate().flat_map(|(t, &k)| std::iter::repeat(t as u64).take(k as usize));
                (v, stars.collect())
            })
            .collect()
    }
}

fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// `Λ_t = 1 + λ(1+λ)^{−t}`.
pub fn lambda_t(lambda: &BigRational, t: u64) -> BigRational {
    let base = BigRational::one() + lambda;
    BigRational::one() + lambda / pow(&base, t)
}

pub(crate) fn pow(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow::pow(x.clone(), e as usize)
}

/// Largest `a` with `base^a ≤ x`, for `base > 1` and `x ≥ 1`.
pub fn floor_log(base: &BigRational, x: &BigRational) -> u64 {
    debug_assert!(*base > BigRational::one());
    if *x < *base {
        return 0;
    }
    let mut hi = 1u64;
    while pow(base, hi * 2) <= *x {
        hi *= 2;
    }
    // base^hi ≤ x < base^{2hi}
    let (mut lo, mut top) = (hi, hi * 2);
    while top - lo > 1 {
        let mid = (lo + top) / 2;
        if pow(base, mid) <= *x {
            lo = mid;
        } else {
            top = mid;
        }
    }
    lo
}

pub fn compute_digits(lambda: &BigRational, wg: &WeightedGraph, n: u64) -> Result<GadgetDigits> {
    if !lambda.is_positive() {
        return Err(Error::Input("lambda must be positive".into()));
    }
    if !wg.is_balanced(lambda) {
        return Err(Error::Precondition("weighted graph is not lambda-balanced".into()));
    }
    let bases: Vec<BigRational> = (0..=n).map(|t| lambda_t(lambda, t)).collect();
    let mut digits = BTreeMap::new();
    let mut residual = BTreeMap::new();
    for &v in wg.graph.vertices() {
        let mut x = lambda * big(wg.wm(v)) / big(wg.wp(v));
        let mut a = Vec::with_capacity(bases.len());
        for base in &bases {
            let k = floor_log(base, &x);
            if k > 0 {
                x /= pow(base, k);
            }
            a.push(k);
        }
        digits.insert(v, a);
        residual.insert(v, x);
    }
    Ok(GadgetDigits { digits, residual })
}

/// Attaches, for every `v` and every `t ∈ φ(v)`, a star with `t` leaves whose
/// centre is joined to `v`. New ids are handed out in increasing order above
/// the largest id of `g`: per host vertex, per star, centre first.
pub fn realize_weight_map(g: &Graph, phi: &WeightMap) -> Graph {
    let mut next = g.max_id();
    let mut ids = Vec::new();
    let mut edges = Vec::new();
    for (&v, stars) in phi {
        let mut stars = stars.clone();
        stars.sort_unstable();
        for t in stars {
            next += 1;
            let centre = next;
            ids.push(centre);
            edges.push((v, centre));
            for _ in 0..t {
                next += 1;
                ids.push(next);
                edges.push((centre, next));
            }
        }
    }
    g.extend(&ids, &edges).expect("fresh ids never collide")
}

pub fn approx_z(wg: &WeightedGraph, eps: &BigRational, lambda: &BigRational) -> Result<ApproxValue> {
    approx_z_with(wg, eps, lambda, &UniConfig::default())
}

/// The gadget reduction. The rescaling uses `λ^{−|V(G′)|}`: one factor per
/// vertex that survives the filtering step.
pub fn approx_z_with(
    wg: &WeightedGraph,
    eps: &BigRational,
    lambda: &BigRational,
    cfg: &UniConfig,
) -> Result<ApproxValue> {
    check_eps(eps)?;
    if wg.is_empty() {
        return Err(Error::Precondition("approx_z needs a non-empty graph".into()));
    }
    if !lambda.is_positive() || !wg.is_balanced(lambda) {
        return Err(Error::Precondition("weighted graph is not lambda-balanced".into()));
    }
    let n = wg.graph.order() as u64;
    let nq = BigRational::from_integer(BigInt::from(n));
    let three = BigRational::from_integer(BigInt::from(3));
    let one_plus = BigRational::one() + lambda;

    let exact_bound = &three * &nq * lambda / pow(&one_plus, n);
    if *eps <= exact_bound {
        return Ok(ApproxValue::exact(big(&exact_z(wg)), eps.clone()));
    }

    let cut = eps / (&three * &nq);
    let dropped: Vec<Vertex> =
        wg.graph.vertices().iter().copied().filter(|&v| big(wg.wp(v)) <= &cut * big(wg.wm(v))).collect();
    let mut reduced = wg.without(&dropped);
    reduced.multiplier = &wg.multiplier * wg.wm_product(&dropped);
    if reduced.is_empty() {
        return Ok(ApproxValue::approximate(big(&reduced.multiplier), eps.clone()));
    }

    let digits = compute_digits(lambda, &reduced, n)?;
    let g2 = realize_weight_map(&reduced.graph, &digits.weight_map());

    let mut scale = big(&reduced.multiplier) / pow(lambda, reduced.graph.order() as u64);
    for &v in reduced.graph.vertices() {
        let shift: u64 = digits.digits[&v].iter().enumerate().map(|(t, &a)| t as u64 * a).sum();
        scale = scale * big(reduced.wp(v)) / pow(&one_plus, shift);
    }
    let uni = approx_z_uni_with(&g2, lambda, &(eps / &three), cfg)?;
    Ok(ApproxValue::approximate(uni.value * scale, eps.clone()))
}

/// The rescaled product computed with an exact `Z_λ(G″)`; used to check the
/// gadget sandwich in isolation.
pub fn gadget_product_exact(wg: &WeightedGraph, eps: &BigRational, lambda: &BigRational) -> Result<BigRational> {
    let cfg = UniConfig { exact_threshold: usize::MAX, ..UniConfig::default() };
    Ok(approx_z_with(wg, eps, lambda, &cfg)?.value)
}

pub(crate) fn check_eps(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() || *eps >= BigRational::one() {
        return Err(Error::Input(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_t(&q(1, 1), 0), q(2, 1));
        assert_eq!(lambda_t(&q(1, 1), 1), q(3, 2));
    }

    #[test]
    fn digit_examples() {
        let g = Graph::edgeless(1);
        let unit = WeightedGraph::unit(g.clone());
        let d = compute_digits(&q(1, 1), &unit, 3).unwrap();
        assert_eq!(d.digits[&1], vec![0, 0, 0, 0]);
        let mut wg = WeightedGraph::unit(g);
        wg.wminus.insert(1, BigUint::from(2u32));
        let d = compute_digits(&q(1, 1), &wg, 2).unwrap();
        assert_eq!(d.digits[&1], vec![1, 0, 0]);
        assert_eq!(d.residual[&1], q(1, 1));
        let mut bad = WeightedGraph::unit(Graph::edgeless(1));
        bad.wplus.insert(1, BigUint::from(3u32));
        assert!(matches!(compute_digits(&q(1, 1), &bad, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn floor_log_exact() {
        assert_eq!(floor_log(&q(2, 1), &q(1, 1)), 0);
        assert_eq!(floor_log(&q(2, 1), &q(8, 1)), 3);
        assert_eq!(floor_log(&q(2, 1), &q(15, 1)), 3);
        assert_eq!(floor_log(&q(3, 2), &q(81, 16)), 4);
        assert_eq!(floor_log(&q(3, 2), &q(80, 16)), 3);
    }

    #[test]
    fn figure_two_realisation() {
        let tri = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let mut phi = WeightMap::new();
        phi.insert(1, vec![0, 0, 2]);
        phi.insert(2, vec![3]);
        phi.insert(3, vec![]);
        let g = realize_weight_map(&tri, &phi);
        assert_eq!(g.order(), 12);
        assert_eq!(g.induced(&[1, 2, 3]), tri);
        assert_eq!(g.degree(1), 2 + 3);
        assert_eq!(realize_weight_map(&tri, &WeightMap::new()), tri);
        let single = realize_weight_map(&Graph::edgeless(1), &[(1, vec![1])].into_iter().collect());
        assert_eq!(single, Graph::from_edges(3, &[(1, 2), (2, 3)]).unwrap());
    }
}
