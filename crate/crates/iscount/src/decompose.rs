//! Local structure around a branch vertex.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDecomposition {
    pub v: Vertex,
    pub gamma_v: Vec<Vertex>,
    pub s_set: Vec<Vertex>,
    pub x_set: Vec<Vertex>,
    pub non_tree_components: Vec<Vec<Vertex>>,
    pub tree_components: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedDecomposition {
    pub base: StandardDecomposition,
    pub x: Vertex,
    pub y: Vertex,
    pub z: Vertex,
    /// From `y` to `z`, both included.
    pub path: Vec<Vertex>,
    pub x_plus: Vec<Vertex>,
    pub h_vertices: Vec<Vertex>,
}

pub fn standard_decomposition(g: &Graph, v: Vertex) -> Result<StandardDecomposition> {
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("standard decomposition needs a connected graph".into()));
    }
    let gamma_v = g.nbrs(v).to_vec();
    let rest = g.without_closed_nbhd(v);
    let mut trees = Vec::new();
    let mut others = Vec::new();
    for comp in rest.components() {
        let sub = rest.induced(&comp);
        if sub.size() + 1 == sub.order() {
            trees.push(comp);
        } else {
            others.push(comp);
        }
    }
    let second = g.gamma2(v);
    let mut s_set: Vec<Vertex> = others
        .iter()
        .flatten()
        .copied()
        .filter(|u| second.binary_search(u).is_ok())
        .collect();
    s_set.sort_unstable();
    let mut x_set = vec![v];
    x_set.extend_from_slice(&gamma_v);
    x_set.extend(trees.iter().flatten().copied());
    x_set.sort_unstable();
    Ok(StandardDecomposition {
        v,
        gamma_v,
        s_set,
        x_set,
        non_tree_components: others,
        tree_components: trees,
    })
}

pub fn extended_decomposition(g: &Graph, v: Vertex) -> Result<ExtendedDecomposition> {
    let base = standard_decomposition(g, v)?;
    let (x, y) = match base.s_set.as_slice() {
        &[x, y] => (x, y),
        other => {
            return Err(Error::Precondition(format!(
                "extended decomposition needs |S| = 2, found {}",
                other.len()
            )))
        }
    };
    let outside = g.without(&base.x_set);
    let mut path = vec![y];
    let z = match outside.degree(y) {
        0 => return Err(Error::Structure(format!("{y} is isolated in G - X"))),
        1 => {
            let mut prev = y;
            let mut cur = outside.nbrs(y)[0];
            loop {
                if path.contains(&cur) {
                    return Err(Error::Structure("degree-2 chain closes a cycle".into()));
                }
                if cur == x {
                    return Err(Error::Structure("chain from y runs through x".into()));
                }
                path.push(cur);
                match outside.degree(cur) {
                    d if d > 2 => break cur,
                    2 => {
                        let nb = outside.nbrs(cur);
                        let next = if nb[0] == prev { nb[1] } else { nb[0] };
                        prev = cur;
                        cur = next;
                    }
                    _ => return Err(Error::Structure("chain from y ends in a leaf".into())),
                }
            }
        }
        _ => y,
    };
    let mut x_plus = base.x_set.clone();
    x_plus.extend(path.iter().copied().filter(|&u| u != z));
    x_plus.sort_unstable();
    x_plus.dedup();
    let h_vertices = g.without(&x_plus).vertices().to_vec();
    Ok(ExtendedDecomposition { base, x, y, z, path, x_plus, h_vertices })
}

fn set(f: &mut fmt::Formatter<'_>, name: &str, vs: &[Vertex]) -> fmt::Result {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    writeln!(f, "{name}: {{{}}}", items.join(", "))
}

impl fmt::Display for StandardDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "v: {}", self.v)?;
        set(f, "Gamma_v", &self.gamma_v)?;
        set(f, "S", &self.s_set)?;
        set(f, "X", &self.x_set)?;
        for (i, h) in self.non_tree_components.iter().enumerate() {
            set(f, &format!("H{}", i + 1), h)?;
        }
        for (i, t) in self.tree_components.iter().enumerate() {
            set(f, &format!("T{}", i + 1), t)?;
        }
        Ok(())
    }
}

impl fmt::Display for ExtendedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        writeln!(f, "x: {}", self.x)?;
        writeln!(f, "y: {}", self.y)?;
        writeln!(f, "z: {}", self.z)?;
        set(f, "P", &self.path)?;
        set(f, "X+", &self.x_plus)?;
        set(f, "H", &self.h_vertices)
    }
}
