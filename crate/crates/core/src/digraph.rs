//! Digraphs of matrices (edge `i -> j` iff entry `(i, j)` is nonzero) and a
//! brute-force isomorphism test for small orders.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;

pub const ISOMORPHISM_MAX_ORDER: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Digraph {
    pub n: usize,
    /// 1-based `(from, to)` pairs; loops allowed.
    pub edges: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// `(out-degree, in-degree, has loop)` per vertex.
    fn signatures(&self) -> Vec<(usize, usize, bool)> {
        let mut sig = vec![(0, 0, false); self.n];
        for &(a, b) in &self.edges {
            sig[a - 1].0 += 1;
            sig[b - 1].1 += 1;
            if a == b {
                sig[a - 1].2 = true;
            }
        }
        sig
    }
}

pub fn build_digraph(a: &SymMatrix) -> Digraph {
    Digraph {
        n: a.order(),
        edges: a
            .entries()
            .filter(|(_, e)| !e.is_zero())
            .map(|((r, c), _)| (r + 1, c + 1))
            .collect(),
    }
}

/// Searches for a vertex bijection carrying one edge set onto the other.
pub fn digraphs_isomorphic(g1: &Digraph, g2: &Digraph) -> Result<bool> {
    for g in [g1, g2] {
        if g.n > ISOMORPHISM_MAX_ORDER {
            return Err(Error::GraphTooLarge {
                order: g.n,
                limit: ISOMORPHISM_MAX_ORDER,
            });
        }
    }
    if g1.n != g2.n || g1.edges.len() != g2.edges.len() {
        return Ok(false);
    }
    let s1 = g1.signatures();
    let s2 = g2.signatures();
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(false);
    }
    let mut map = vec![0usize; g1.n];
    let mut used = vec![false; g1.n];
    Ok(extend(g1, g2, &s1, &s2, 0, &mut map, &mut used))
}

fn extend(
    g1: &Digraph,
    g2: &Digraph,
    s1: &[(usize, usize, bool)],
    s2: &[(usize, usize, bool)],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == g1.n {
        return true;
    }
    for w in 0..g2.n {
        if used[w] || s1[v] != s2[w] {
            continue;
        }
        // Edges between v and already mapped vertices must agree.
        let consistent = (0..=v).all(|u| {
            let mu = if u == v { w } else { map[u] };
            g1.has_edge(v + 1, u + 1) == g2.has_edge(w + 1, mu + 1)
                && g1.has_edge(u + 1, v + 1) == g2.has_edge(mu + 1, w + 1)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g1, g2, s1, s2, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
