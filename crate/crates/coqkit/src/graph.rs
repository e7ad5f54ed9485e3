//! Undirected simple graphs derived from quivers: chordless-cycle
//! enumeration (capped, deterministic) and fundamental homology bases from a
//! deterministic spanning forest.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Default cap on the number of enumerated chordless cycles; there can be
/// exponentially many.
pub const DEFAULT_CYCLE_CAP: usize = 10_000;

/// Undirected simple graph over named vertices. Vertex order is fixed by the
/// construction and used for all deterministic choices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertices: Vec<String>,
    /// Adjacency by vertex index, each list sorted ascending.
    pub adj: Vec<Vec<usize>>,
}

/// A cycle with a fixed direction of traversal; equality is up to cyclic
/// rotation but not reversal. Stored canonically rotated so the
/// lexicographically smallest vertex name comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cycle {
    pub vertices: Vec<String>,
}

impl Cycle {
    /// Canonicalize rotation (smallest vertex first); traversal direction is
    /// preserved.
    pub fn new(vertices: Vec<String>) -> Self {
        assert!(vertices.len() >= 3, "a cycle needs at least 3 vertices");
        let k = vertices
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap();
        let mut rotated = Vec::with_capacity(vertices.len());
        rotated.extend_from_slice(&vertices[k..]);
        rotated.extend_from_slice(&vertices[..k]);
        Cycle { vertices: rotated }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn reversed(&self) -> Cycle {
        let mut v = self.vertices.clone();
        v.reverse();
        Cycle::new(v)
    }

    /// Consecutive (source, target) pairs along the traversal, including the
    /// wrap-around pair.
    pub fn steps(&self) -> impl Iterator<Item = (&String, &String)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }
}

impl SimpleGraph {
    pub fn new(vertices: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = vertices.len();
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            assert!(u != v, "self-loop in simple graph");
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        SimpleGraph { vertices, adj }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges as (min index, max index) pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All chordless cycles (induced cycles of length >= 3), each reported
    /// once with a fixed traversal direction, in deterministic order.
    /// Errors with a resource error if more than `cap` cycles are found.
    pub fn chordless_cycles(&self, cap: usize) -> Result<Vec<Cycle>> {
        let n = self.n();
        let mut out = Vec::new();
        // Each cycle is discovered from its minimal vertex s, going first to
        // the smaller of the two s-neighbors on the cycle.
        for s in 0..n {
            let mut stack: Vec<Vec<usize>> = Vec::new();
            for &v in &self.adj[s] {
                if v > s {
                    stack.push(vec![s, v]);
                }
            }
            // Depth-first; order does not matter for the set, and output is
            // sorted at the end for determinism.
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                for &w in &self.adj[last] {
                    if w <= s || path.contains(&w) {
                        continue;
                    }
                    // Chordless: w may touch the path only at `last`,
                    // except for `s` which closes the cycle.
                    let inner_chord =
                        path[1..path.len() - 1].iter().any(|&p| self.has_edge(w, p));
                    if inner_chord {
                        continue;
                    }
                    if self.has_edge(w, s) {
                        if path.len() >= 2 && path[1] < w {
                            let mut cyc = path.clone();
                            cyc.push(w);
                            out.push(Cycle::new(
                                cyc.iter().map(|&i| self.vertices[i].clone()).collect(),
                            ));
                            if out.len() > cap {
                                return Err(Error::resource(format!(
                                    "more than {cap} chordless cycles"
                                )));
                            }
                        }
                        // Any extension past w would carry the chord {w, s}.
                        continue;
                    }
                    let mut next = path.clone();
                    next.push(w);
                    stack.push(next);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Deterministic spanning forest: BFS from the smallest-index root of
    /// each component, neighbors in ascending order. Returns `parent[v]`
    /// (self-parent at roots).
    pub fn spanning_forest(&self) -> Vec<usize> {
        self.spanning_forest_rooted(None)
    }

    /// Spanning forest with a preferred root processed first; its component
    /// is BFS-grown from it (so every edge at the preferred root is a forest
    /// edge). Remaining components use their smallest-index vertex.
    pub fn spanning_forest_rooted(&self, preferred: Option<usize>) -> Vec<usize> {
        let n = self.n();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let order: Vec<usize> = match preferred {
            Some(r) => std::iter::once(r).chain((0..n).filter(|&x| x != r)).collect(),
            None => (0..n).collect(),
        };
        for root in order {
            if parent[root].is_some() {
                continue;
            }
            parent[root] = Some(root);
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if parent[v].is_none() {
                        parent[v] = Some(u);
                        queue.push_back(v);
                    }
                }
            }
        }
        parent.into_iter().map(|p| p.unwrap()).collect()
    }

    /// Fundamental cycles of the deterministic spanning forest: one per
    /// non-forest edge, traversed from the smaller edge endpoint through the
    /// forest path to the larger endpoint and back along the edge.
    pub fn homology_basis(&self) -> Vec<Cycle> {
        let parent = self.spanning_forest();
        let tree_edge = |u: usize, v: usize| parent[u] == v || parent[v] == u;
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            if tree_edge(u, v) {
                continue;
            }
            // Forest path u -> v via lowest common ancestor.
            let mut up_u = vec![u];
            while parent[*up_u.last().unwrap()] != *up_u.last().unwrap() {
                up_u.push(parent[*up_u.last().unwrap()]);
            }
            let mut up_v = vec![v];
            while parent[*up_v.last().unwrap()] != *up_v.last().unwrap() {
                up_v.push(parent[*up_v.last().unwrap()]);
            }
            let lca = *up_u
                .iter()
                .find(|x| up_v.contains(x))
                .expect("edge endpoints in different components");
            let iu = up_u.iter().position(|&x| x == lca).unwrap();
            let iv = up_v.iter().position(|&x| x == lca).unwrap();
            // u .. lca .. v (then the edge v-u closes the cycle).
            let mut cyc: Vec<usize> = up_u[..=iu].to_vec();
            cyc.extend(up_v[..iv].iter().rev());
            out.push(Cycle::new(cyc.iter().map(|&i| self.vertices[i].clone()).collect()));
        }
        out
    }

    pub fn component_count(&self) -> usize {
        let parent = self.spanning_forest();
        parent.iter().enumerate().filter(|&(i, &p)| i == p).count()
    }

    pub fn is_tree(&self) -> bool {
        self.component_count() == 1 && self.edge_count() + 1 == self.n()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn chordless_triangle_and_k4() {
        // K4: four triangles, no chordless 4-cycles.
        let edges: Vec<(usize, usize)> =
            (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let g = SimpleGraph::new(names(4), &edges);
        let cycles = g.chordless_cycles(100).unwrap();
        assert_eq!(cycles.len(), 4);
        assert!(cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn chordless_square() {
        let g = SimpleGraph::new(names(4), &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let cycles = g.chordless_cycles(100).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
    }

    #[test]
    fn tree_has_no_cycles_and_empty_basis() {
        let g = SimpleGraph::new(names(5), &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert!(g.chordless_cycles(100).unwrap().is_empty());
        assert!(g.homology_basis().is_empty());
        assert!(g.is_tree());
    }

    #[test]
    fn basis_size_formula() {
        // Two squares sharing an edge: |E|=7, |V|=6, one component -> 2.
        let g = SimpleGraph::new(
            names(6),
            &[(0, 1), (1, 2), (0, 3), (1, 4), (2, 5), (3, 4), (4, 5)],
        );
        assert_eq!(g.homology_basis().len(), 2);
        assert_eq!(
            g.homology_basis().len(),
            g.edge_count() - g.n() + g.component_count()
        );
    }

    #[test]
    fn cycle_canonical_rotation_not_reversal() {
        let c1 = Cycle::new(vec!["b".into(), "c".into(), "a".into()]);
        let c2 = Cycle::new(vec!["a".into(), "b".into(), "c".into()]);
        assert_eq!(c1, c2);
        assert_ne!(c1, c1.reversed());
    }

    #[test]
    fn cycle_cap_enforced() {
        let edges: Vec<(usize, usize)> =
            (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        let g = SimpleGraph::new(names(6), &edges);
        assert!(g.chordless_cycles(3).is_err());
    }
}
