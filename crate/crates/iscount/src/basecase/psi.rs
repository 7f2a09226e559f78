use crate::graph::{Graph, Vertex};

/// κ = 4141/1000, as thousandths.
pub const KAPPA_MILLI: u64 = 4141;

/// `ψ(d, p)` in thousandths, for `d, p ≥ 2`.
pub fn psi_milli(d: usize, p: usize) -> u64 {
    match d {
        2 => 245,
        3 => 456,
        4 => 647,
        5 => 859,
        _ => match p {
            2 => 1000,
            3 => 941,
            _ => 889,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiViolation {
    /// `n[2] … n[13]`.
    pub counts: [u8; 12],
    pub d: usize,
    pub p: usize,
}

impl std::fmt::Display for PsiViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "n[2..13] = ({}), d = {}, p = {}", n.join(", "), self.d, self.p)
    }
}

/// Every `(n[2..13], d, p)` with `1 + Σ n[i] = d`, `d, p ∈ [2, 13]`,
/// `n[i] ∈ [0, 12]` and (`d ≤ 5` or `p + Σ i·n[i] ≤ 26`) that breaks
/// `Σ n[i] ψ(i, d) ≤ κ ψ(d, p)`.
pub fn verify_psi_kappa() -> Vec<PsiViolation> {
    let mut out = Vec::new();
    let mut counts = [0u8; 12];
    for d in 2..=13usize {
        collect(d, 0, d - 1, &mut counts, &mut out);
    }
    out
}

fn collect(d: usize, pos: usize, left: usize, counts: &mut [u8; 12], out: &mut Vec<PsiViolation>) {
    if pos == 12 {
        if left != 0 {
            return;
        }
        let weighted: usize = counts.iter().enumerate().map(|(k, &c)| (k + 2) * c as usize).sum();
        let lhs: u64 = counts.iter().enumerate().map(|(k, &c)| c as u64 * psi_milli(k + 2, d)).sum();
        for p in 2..=13usize {
            if d > 5 && p + weighted > 26 {
                continue;
            }
            if lhs * 1000 > KAPPA_MILLI * psi_milli(d, p) {
                out.push(PsiViolation { counts: *counts, d, p });
            }
        }
        return;
    }
    for c in 0..=left.min(12) {
        counts[pos] = c as u8;
        collect(d, pos + 1, left - c, counts, out);
    }
    counts[pos] = 0;
}

/// `N_G(v, i)` for `i = 1..=max_depth`: simple paths of length `i` from `v`.
pub fn saw_tree_paths(g: &Graph, v: Vertex, max_depth: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max_depth];
    if max_depth == 0 || !g.contains(v) {
        return counts;
    }
    let mut on_path = vec![false; g.order()];
    on_path[g.index(v).unwrap()] = true;
    walk(g, v, 1, max_depth, &mut on_path, &mut counts);
    counts
}

fn walk(g: &Graph, u: Vertex, len: usize, max: usize, on_path: &mut [bool], counts: &mut [u64]) {
    for &w in g.nbrs(u) {
        let j = g.index(w).unwrap();
        if on_path[j] {
            continue;
        }
        counts[len - 1] += 1;
        if len < max {
            on_path[j] = true;
            walk(g, w, len + 1, max, on_path, counts);
            on_path[j] = false;
        }
    }
}

/// A node of the walk tree where the children's θ exceeds κ times its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaViolation {
    pub path: Vec<Vertex>,
    pub children_milli: u64,
    pub own_milli: u64,
}

/// Checks the κ-decreasing inequality at every non-root node of the walk
/// tree rooted at `root`. A node is a simple path ending at `u` whose previous
/// vertex is `w`; its label is `ψ(d_G(u), d_G(w))`, read with graph degrees.
pub fn check_kappa_decreasing(g: &Graph, root: Vertex) -> Option<KappaViolation> {
    let mut path = vec![root];
    let mut on_path = vec![false; g.order()];
    on_path[g.index(root)?] = true;
    for &u in g.nbrs(root) {
        if let Some(bad) = kappa_node(g, &mut path, &mut on_path, u) {
            return Some(bad);
        }
    }
    None
}

fn kappa_node(g: &Graph, path: &mut Vec<Vertex>, on_path: &mut [bool], u: Vertex) -> Option<KappaViolation> {
    let w = *path.last().unwrap();
    let own = psi_milli(g.degree(u), g.degree(w));
    path.push(u);
    let iu = g.index(u).unwrap();
    on_path[iu] = true;
    let children: Vec<Vertex> = g.nbrs(u).iter().copied().filter(|&y| !on_path[g.index(y).unwrap()]).collect();
    let sum: u64 = children.iter().map(|&y| psi_milli(g.degree(y), g.degree(u))).sum();
    let mut result = None;
    if sum * 1000 > KAPPA_MILLI * own {
        result = Some(KappaViolation { path: path.clone(), children_milli: sum, own_milli: own });
    } else {
        for y in children {
            if let Some(bad) = kappa_node(g, path, on_path, y) {
                result = Some(bad);
                break;
            }
        }
    }
    on_path[iu] = false;
    path.pop();
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_table() {
        for p in 2..14 {
            assert_eq!(psi_milli(2, p), 245);
        }
        assert_eq!(psi_milli(7, 2), 1000);
        assert_eq!(psi_milli(7, 3), 941);
        assert_eq!(psi_milli(7, 9), 889);
        // d = 2, one child of degree 6, p = 2: 1 ≤ 4.141 · 0.245
        assert!(psi_milli(6, 2) * 1000 <= KAPPA_MILLI * psi_milli(2, 2));
    }

    #[test]
    fn path_counts() {
        let c4 = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        assert_eq!(saw_tree_paths(&c4, 1, 3), vec![2, 2, 2]);
        let k3 = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(saw_tree_paths(&k3, 1, 2), vec![2, 2]);
        assert_eq!(saw_tree_paths(&Graph::edgeless(3), 1, 4), vec![0; 4]);
    }
}
