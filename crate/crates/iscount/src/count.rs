//! The branching counter.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::basecase::{base_count_with, ApproxValue, UniConfig};
use crate::decompose::{extended_decomposition, standard_decomposition};
use crate::error::{Error, Result};
use crate::exact::exact_z;
use crate::graph::{Graph, Vertex};
use crate::potential::{d2, PrePotential};
use crate::transform::{prune, reduce_counted, tree_removal};
use crate::weighted::WeightedGraph;

const STACK_BYTES: usize = 512 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct CountConfig {
    /// Reduced graphs with at most this many vertices are counted exactly at
    /// the base case.
    pub base_exact_threshold: usize,
    pub uni: UniConfig,
    pub trace: bool,
    /// Worker threads for evaluating branch children; 1 runs sequentially.
    pub threads: usize,
}

impl Default for CountConfig {
    fn default() -> Self {
        CountConfig { base_exact_threshold: 24, uni: UniConfig::default(), trace: false, threads: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchKind {
    HighDegree,
    WideSeparator,
    NarrowSeparator,
    Base,
    ReduceEmpty,
}

impl fmt::Display for BranchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchKind::HighDegree => "high-degree",
            BranchKind::WideSeparator => "wide",
            BranchKind::NarrowSeparator => "narrow",
            BranchKind::Base => "base",
            BranchKind::ReduceEmpty => "reduce-empty",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    /// Branch choices from the root call: 0 for out, 1 for in.
    pub path: Vec<u8>,
    pub depth: usize,
    pub kind: BranchKind,
    pub vertex: Option<Vertex>,
    pub pot_before: BigRational,
    pub pot_out: Option<BigRational>,
    pub pot_in: Option<BigRational>,
    /// For bounded-degree branches: the 2-degree of the selected vertex and
    /// the `D₂′` value of the slice containing the reduced average degree.
    pub two_degree: Option<(usize, BigRational)>,
}

impl fmt::Display for TraceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: &Option<BigRational>| x.as_ref().map_or("-".to_string(), |v| v.to_string());
        let v = self.vertex.map_or("-".to_string(), |v| v.to_string());
        write!(f, "{} {} {} {} {} {}", self.depth, self.kind, v, self.pot_before, opt(&self.pot_out), opt(&self.pot_in))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BranchTrace {
    pub records: Vec<TraceRecord>,
    pub calls: u64,
    pub prunes: u64,
    pub base_hits: u64,
}

impl BranchTrace {
    fn absorb(&mut self, other: BranchTrace) {
        self.records.extend(other.records);
        self.calls += other.calls;
        self.prunes += other.prunes;
        self.base_hits += other.base_hits;
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOutcome {
    pub value: ApproxValue,
    pub trace: BranchTrace,
}

/// Step (iv): least vertex of degree ≥ 6 and 2-degree ≥ 27 when the average
/// degree is at most 5, otherwise the least vertex maximising 2-degree among
/// those of degree at least `2m/n`.
pub fn pick_branch_vertex(g: &Graph) -> Result<Vertex> {
    if g.is_empty() {
        return Err(Error::Precondition("pick_branch_vertex on the empty graph".into()));
    }
    if g.max_degree() > 10 {
        return Err(Error::Precondition("pick_branch_vertex needs maximum degree at most 10".into()));
    }
    let heavy = |v: &Vertex| g.degree(*v) >= 6 && g.two_degree(*v) >= 27;
    let first_heavy = g.vertices().iter().copied().find(heavy);
    let Some(first_heavy) = first_heavy else {
        return Err(Error::Precondition("no vertex of degree >= 6 and 2-degree >= 27".into()));
    };
    let (m, n) = (g.size(), g.order());
    if 2 * m <= 5 * n {
        return Ok(first_heavy);
    }
    let mut best: Option<(usize, Vertex)> = None;
    for &v in g.vertices() {
        if g.degree(v) * n >= 2 * m {
            let d2v = g.two_degree(v);
            if best.map_or(true, |(b, _)| d2v > b) {
                best = Some((d2v, v));
            }
        }
    }
    Ok(best.expect("a vertex of at least average degree exists").1)
}

fn rat(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn check_eps(eps: &BigRational) -> Result<()> {
    if *eps <= BigRational::zero() || *eps >= BigRational::one() {
        return Err(Error::Input(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

struct Counter<'a> {
    eps: &'a BigRational,
    pot: &'a PrePotential,
    cfg: &'a CountConfig,
    parallel_depth: usize,
}

struct Node {
    value: BigRational,
    exact: bool,
    trace: BranchTrace,
}

struct Child {
    weight: BigUint,
    graph: WeightedGraph,
}

impl Counter<'_> {
    fn f_plus(&self, g: &Graph) -> BigRational {
        self.pot.f_plus_unchecked(g)
    }

    fn leaf(&self, trace: &mut BranchTrace, path: &[u8], depth: usize, kind: BranchKind, before: BigRational) {
        if self.cfg.trace {
            trace.records.push(TraceRecord {
                path: path.to_vec(),
                depth,
                kind,
                vertex: None,
                pot_before: before,
                pot_out: None,
                pot_in: None,
                two_degree: None,
            });
        }
    }

    fn run(&self, wg: WeightedGraph, depth: usize, path: Vec<u8>) -> Result<Node> {
        let mut trace = BranchTrace { calls: 1, ..BranchTrace::default() };
        let before = if self.cfg.trace { self.f_plus(&wg.graph) } else { BigRational::zero() };
        let g = &wg.graph;

        let (kind, vertex, out, inn, two_degree) = if g.max_degree() >= 11 {
            let v = *g.vertices().iter().find(|&&v| g.degree(v) >= 11).unwrap();
            let (out, inn) = self.vertex_branch(&wg, v);
            (BranchKind::HighDegree, v, out, inn, None)
        } else {
            let (reduced, prunes) = reduce_counted(&wg)?;
            trace.prunes += prunes as u64;
            let rg = &reduced.graph;
            if rg.is_empty() {
                self.leaf(&mut trace, &path, depth, BranchKind::ReduceEmpty, before);
                return Ok(Node { value: rat(&reduced.multiplier), exact: true, trace });
            }
            if rg.no_heavy_vertex() {
                trace.base_hits += 1;
                self.leaf(&mut trace, &path, depth, BranchKind::Base, before);
                let (value, exact) = if rg.order() <= self.cfg.base_exact_threshold {
                    (rat(&exact_z(&reduced)), true)
                } else {
                    let r = base_count_with(&reduced, self.eps, &self.cfg.uni)?;
                    (r.value, r.exact)
                };
                return Ok(Node { value, exact, trace });
            }
            let v = pick_branch_vertex(rg)?;
            let two_degree = self.cfg.trace.then(|| {
                let avg = BigRational::new(BigInt::from(2 * rg.size()), BigInt::from(rg.order()));
                let slice = self.pot.slice_for(&avg);
                (rg.two_degree(v), d2::d2_prime_for_slice(self.pot.lower_boundary(slice)))
            });
            let comp = rg.components().into_iter().find(|c| c.binary_search(&v).is_ok()).unwrap();
            let gv = rg.induced(&comp);
            let dec = standard_decomposition(&gv, v)?;
            if dec.s_set.len() >= 3 {
                let (out, inn) = self.vertex_branch(&reduced, v);
                (BranchKind::WideSeparator, v, out, inn, two_degree)
            } else if dec.s_set.len() == 2 {
                let ext = extended_decomposition(&gv, v)?;
                let z = ext.z;
                let minus_z = reduced.without(&[z]);
                let boundary = minus_z.graph.gamma_set(&ext.x_plus)?;
                if boundary != [ext.x] {
                    return Err(Error::Structure(format!(
                        "prune set X+ has outside neighbours {boundary:?}, expected [{}]",
                        ext.x
                    )));
                }
                let out_g = tree_removal(&prune(&minus_z, &ext.x_plus)?);
                let nz = rg.nbrs(z).to_vec();
                let mut drop = nz.clone();
                drop.push(z);
                let keep: Vec<Vertex> = ext.x_plus.iter().copied().filter(|u| nz.binary_search(u).is_err()).collect();
                let in_g = tree_removal(&prune(&reduced.without(&drop), &keep)?);
                trace.prunes += 2;
                let out = Child { weight: reduced.wm(z).clone(), graph: out_g };
                let inn = Child { weight: reduced.wp(z) * reduced.wm_product(&nz), graph: in_g };
                (BranchKind::NarrowSeparator, z, out, inn, two_degree)
            } else {
                return Err(Error::Structure(format!(
                    "separator of size {} at vertex {v} in a reduced graph",
                    dec.s_set.len()
                )));
            }
        };

        let mut record = self.cfg.trace.then(|| TraceRecord {
            path: path.clone(),
            depth,
            kind,
            vertex: Some(vertex),
            pot_before: before,
            pot_out: Some(self.f_plus(&out.graph.graph)),
            pot_in: Some(self.f_plus(&inn.graph.graph)),
            two_degree,
        });
        if let Some(r) = record.take() {
            trace.records.push(r);
        }

        let (c_out, c_in) = self.children(out.graph, inn.graph, depth, &path)?;
        let value = rat(&out.weight) * &c_out.value + rat(&inn.weight) * &c_in.value;
        let exact = c_out.exact && c_in.exact;
        trace.absorb(c_out.trace);
        trace.absorb(c_in.trace);
        Ok(Node { value, exact, trace })
    }

    fn vertex_branch(&self, wg: &WeightedGraph, v: Vertex) -> (Child, Child) {
        let nv = wg.graph.nbrs(v).to_vec();
        let out = Child { weight: wg.wm(v).clone(), graph: tree_removal(&wg.without(&[v])) };
        let mut drop = nv.clone();
        drop.push(v);
        let inn = Child { weight: wg.wp(v) * wg.wm_product(&nv), graph: tree_removal(&wg.without(&drop)) };
        (out, inn)
    }

    fn child(&self, g: WeightedGraph, depth: usize, path: Vec<u8>) -> Result<Node> {
        if g.is_empty() {
            return Ok(Node { value: rat(&g.multiplier), exact: true, trace: BranchTrace::default() });
        }
        self.run(g, depth + 1, path)
    }

    fn children(&self, out: WeightedGraph, inn: WeightedGraph, depth: usize, path: &[u8]) -> Result<(Node, Node)> {
        let mut p_out = path.to_vec();
        p_out.push(0);
        let mut p_in = path.to_vec();
        p_in.push(1);
        if depth >= self.parallel_depth || out.is_empty() || inn.is_empty() {
            return Ok((self.child(out, depth, p_out)?, self.child(inn, depth, p_in)?));
        }
        std::thread::scope(|s| {
            let handle = std::thread::Builder::new()
                .stack_size(STACK_BYTES)
                .spawn_scoped(s, || self.child(out, depth, p_out))
                .expect("spawn worker");
            let c_in = self.child(inn, depth, p_in);
            let c_out = handle.join().expect("worker panicked");
            Ok((c_out?, c_in?))
        })
    }
}

/// Runs `f` on a thread with a large stack; recursion depth grows with `n`.
fn on_big_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(STACK_BYTES)
            .spawn_scoped(s, f)
            .expect("spawn counting thread")
            .join()
            .expect("counting thread panicked")
    })
}

pub fn count(wg: &WeightedGraph, eps: &BigRational, p: &PrePotential, cfg: &CountConfig) -> Result<CountOutcome> {
    check_eps(eps)?;
    if wg.is_empty() {
        return Err(Error::Input("count needs a non-empty weighted graph".into()));
    }
    if !wg.is_one_balanced() {
        return Err(Error::Input("count needs a 1-balanced weighted graph".into()));
    }
    if wg.graph.components().iter().any(|c| wg.graph.induced(c).is_forest()) {
        return Err(Error::Input("count needs a graph without tree components".into()));
    }
    if !p.conditions_hold() {
        return Err(Error::Input("potential fails its validity conditions".into()));
    }
    let threads = cfg.threads.max(1);
    let parallel_depth = (usize::BITS - 1 - threads.leading_zeros()) as usize;
    let counter = Counter { eps, pot: p, cfg, parallel_depth };
    let node = on_big_stack(|| counter.run(wg.clone(), 0, Vec::new()))?;
    let mut trace = node.trace;
    trace.records.sort_by(|a, b| a.path.cmp(&b.path));
    let value = ApproxValue { value: node.value, epsilon: eps.clone(), exact: node.exact };
    Ok(CountOutcome { value, trace })
}

/// `|ℐ(G)|` to within `ε`: tree components are counted exactly, the rest goes
/// through [`count`].
pub fn approximate_independent_sets(
    g: &Graph,
    eps: &BigRational,
    p: &PrePotential,
    cfg: &CountConfig,
) -> Result<CountOutcome> {
    check_eps(eps)?;
    if p.bipartite && !g.is_bipartite() {
        return Err(Error::Input("bipartite potential used on a non-bipartite graph".into()));
    }
    let start = tree_removal(&WeightedGraph::unit(g.clone()));
    if start.is_empty() {
        let value = ApproxValue::exact(rat(&start.multiplier), eps.clone());
        return Ok(CountOutcome { value, trace: BranchTrace::default() });
    }
    count(&start, eps, p, cfg)
}

/// Checks the per-branch potential decreases: `σ_s` and `12σ_s` for
/// high-degree branches, otherwise some slice `j` and degree `x` whose
/// out/in exponents are both met.
pub fn branch_bounds_hold(p: &PrePotential, r: &TraceRecord) -> bool {
    let (Some(out), Some(inn)) = (&r.pot_out, &r.pot_in) else {
        return true;
    };
    let d_out = &r.pot_before - out;
    let d_in = &r.pot_before - inn;
    if r.kind == BranchKind::HighDegree {
        let s = p.slices();
        let one = BigRational::one();
        let zero = BigRational::zero();
        return d_out >= p.f_slice(s, &zero, &one) && d_in >= p.f_slice(s, &zero, &BigRational::from_integer(12.into()));
    }
    (1..=p.slices()).any(|j| {
        (p.first_degree(j)..=10).any(|x| {
            let (e_out, e_in) = p.branch_exponents(j, x);
            d_out >= e_out && d_in >= e_in
        })
    })
}
