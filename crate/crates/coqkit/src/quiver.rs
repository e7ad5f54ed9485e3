//! Quivers as skew-symmetric integer exchange matrices over named vertices:
//! JSON I/O, mutation, structural predicates (acyclic, complete, abundant,
//! tree, vortex, fork), and exact determinant/rank of the exchange matrix.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::matrix::IMat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A quiver: ordered vertex names plus the skew-symmetric exchange matrix.
/// `b[(i, j)] > 0` means `b[(i, j)]` arrows from vertex i to vertex j.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub b: IMat,
}

/// On-disk JSON shape: {"vertices": [...], "arrows": [[src, tgt, mult]],
/// "order": [...]} with positive multiplicities, at most one triple per
/// unordered vertex pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, b: IMat) -> Result<Self> {
        let n = vertices.len();
        if b.nrows != n || b.ncols != n {
            return Err(Error::domain("matrix size does not match vertex count"));
        }
        let distinct: BTreeSet<&String> = vertices.iter().collect();
        if distinct.len() != n {
            return Err(Error::domain("duplicate vertex names"));
        }
        for i in 0..n {
            if !b[(i, i)].is_zero() {
                return Err(Error::domain("nonzero diagonal entry (loop)"));
            }
            for j in 0..n {
                if b[(i, j)] != -b[(j, i)].clone() {
                    return Err(Error::domain("exchange matrix is not skew-symmetric"));
                }
            }
        }
        Ok(Quiver { vertices, b })
    }

    /// Build from arrow triples; vertex names as given.
    pub fn from_arrows(vertices: &[&str], arrows: &[(&str, &str, i64)]) -> Result<Self> {
        let file = QuiverFile {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(s, t, m)| (s.to_string(), t.to_string(), *m))
                .collect(),
            order: None,
        };
        Self::from_file(&file)
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self> {
        let n = file.vertices.len();
        let index = |name: &str| -> Result<usize> {
            file.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::parse(format!("unknown vertex {name:?} in arrow list")))
        };
        let mut b = IMat::zeros(n, n);
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (src, tgt, mult) in &file.arrows {
            let (i, j) = (index(src)?, index(tgt)?);
            if i == j {
                return Err(Error::parse(format!("loop at vertex {src:?}")));
            }
            if *mult <= 0 {
                return Err(Error::parse(format!(
                    "non-positive multiplicity {mult} on arrow {src:?} -> {tgt:?}"
                )));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::parse(format!(
                    "duplicate arrow entry for vertex pair {src:?}, {tgt:?}"
                )));
            }
            b[(i, j)] = BigInt::from(*mult);
            b[(j, i)] = BigInt::from(-*mult);
        }
        Quiver::new(file.vertices.clone(), b)
    }

    pub fn parse_json(text: &str) -> Result<(Self, Option<Vec<String>>)> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| Error::parse(format!("bad quiver JSON: {e}")))?;
        let q = Self::from_file(&file)?;
        if let Some(order) = &file.order {
            let set: BTreeSet<&String> = order.iter().collect();
            if order.len() != q.n() || set.len() != order.len() || !q.vertices.iter().all(|v| set.contains(v))
            {
                return Err(Error::parse("order field is not a permutation of the vertices"));
            }
        }
        Ok((q, file.order))
    }

    pub fn to_file(&self, order: Option<&[String]>) -> QuiverFile {
        let mut arrows = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.b[(i, j)].is_positive() {
                    let mult = i64::try_from(&self.b[(i, j)])
                        .expect("arrow multiplicity exceeds the JSON integer range");
                    arrows.push((self.vertices[i].clone(), self.vertices[j].clone(), mult));
                }
            }
        }
        arrows.sort();
        QuiverFile {
            vertices: self.vertices.clone(),
            arrows,
            order: order.map(|o| o.to_vec()),
        }
    }

    pub fn to_json(&self, order: Option<&[String]>) -> String {
        serde_json::to_string_pretty(&self.to_file(order)).expect("serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::domain(format!("unknown vertex {name:?}")))
    }

    /// Mutation at vertex j (by name). An involution.
    pub fn mutate(&self, j: &str) -> Result<Quiver> {
        let jj = self.index_of(j)?;
        Ok(self.mutate_idx(jj))
    }

    pub fn mutate_idx(&self, jj: usize) -> Quiver {
        let n = self.n();
        let pos = |x: &BigInt| -> BigInt {
            if x.is_positive() {
                x.clone()
            } else {
                BigInt::zero()
            }
        };
        let neg = |x: &BigInt| -> BigInt {
            if x.is_negative() {
                x.clone()
            } else {
                BigInt::zero()
            }
        };
        let b = IMat::from_fn(n, n, |i, k| {
            if i == jj || k == jj {
                -self.b[(i, k)].clone()
            } else {
                &self.b[(i, k)] + pos(&self.b[(i, jj)]) * pos(&self.b[(jj, k)])
                    - neg(&self.b[(i, jj)]) * neg(&self.b[(jj, k)])
            }
        });
        Quiver { vertices: self.vertices.clone(), b }
    }

    /// Reverse every arrow (negate the exchange matrix).
    pub fn opposite_arrows(&self) -> Quiver {
        Quiver { vertices: self.vertices.clone(), b: self.b.neg() }
    }

    /// Full subquiver on the given vertex names (kept in this quiver's order).
    pub fn subquiver(&self, keep: &[String]) -> Result<Quiver> {
        let mut idx = Vec::new();
        for v in &self.vertices {
            if keep.contains(v) {
                idx.push(self.index_of(v)?);
            }
        }
        if idx.len() != keep.iter().collect::<BTreeSet<_>>().len() {
            return Err(Error::domain("subquiver vertex set contains unknown vertices"));
        }
        let vertices = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        let b = self.b.submatrix(&idx, &idx);
        Ok(Quiver { vertices, b })
    }

    /// Underlying unoriented simple graph (multiplicities ignored).
    pub fn underlying_graph(&self) -> SimpleGraph {
        let n = self.n();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if !self.b[(i, j)].is_zero() {
                    edges.push((i, j));
                }
            }
        }
        SimpleGraph::new(self.vertices.clone(), &edges)
    }

    pub fn is_acyclic(&self) -> bool {
        // DFS over the arrow digraph.
        let n = self.n();
        let mut state = vec![0u8; n]; // 0 unvisited, 1 on stack, 2 done
        fn dfs(q: &Quiver, u: usize, state: &mut [u8]) -> bool {
            state[u] = 1;
            for v in 0..q.n() {
                if q.b[(u, v)].is_positive() {
                    if state[v] == 1 {
                        return false;
                    }
                    if state[v] == 0 && !dfs(q, v, state) {
                        return false;
                    }
                }
            }
            state[u] = 2;
            true
        }
        (0..n).all(|u| state[u] != 0 || dfs(self, u, &mut state))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (i + 1..n).all(|j| !self.b[(i, j)].is_zero()))
    }

    pub fn is_abundant(&self) -> bool {
        let n = self.n();
        let two = BigInt::from(2);
        (0..n).all(|i| (i + 1..n).all(|j| self.b[(i, j)].abs() >= two))
    }

    pub fn is_tree(&self) -> bool {
        self.underlying_graph().is_tree()
    }

    /// Is there an oriented cycle visiting exactly the vertices of `subset`
    /// (each arrow forward)? Used by the vortex predicate.
    fn has_oriented_cycle_on(&self, subset: &[usize]) -> bool {
        // Try all cyclic orders of the subset (fix first element).
        let k = subset.len();
        let mut rest: Vec<usize> = subset[1..].to_vec();
        let first = subset[0];
        let mut found = false;
        permute(&mut rest, 0, &mut |perm| {
            let mut ok = self.b[(first, perm[0])].is_positive();
            for w in 0..k - 2 {
                ok = ok && self.b[(perm[w], perm[w + 1])].is_positive();
            }
            ok = ok && self.b[(perm[k - 2], first)].is_positive();
            if ok {
                found = true;
            }
        });
        found
    }

    /// Vortex test: exactly 4 vertices, complete, contains an oriented
    /// 3-cycle, contains no oriented 4-cycle.
    pub fn is_vortex(&self) -> Result<bool> {
        if self.n() != 4 {
            return Err(Error::domain("vortex test requires exactly 4 vertices"));
        }
        if !self.is_complete() {
            return Ok(false);
        }
        let idx: Vec<usize> = (0..4).collect();
        let mut has_triangle = false;
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    if self.has_oriented_cycle_on(&[a, b, c]) {
                        has_triangle = true;
                    }
                }
            }
        }
        Ok(has_triangle && !self.has_oriented_cycle_on(&idx))
    }

    /// First 4-subset (lexicographic) whose full subquiver is a vortex.
    pub fn contains_vortex(&self) -> Option<Vec<String>> {
        let n = self.n();
        if n < 4 {
            return None;
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        let names: Vec<String> = [a, b, c, d]
                            .iter()
                            .map(|&i| self.vertices[i].clone())
                            .collect();
                        let sub = self.subquiver(&names).expect("indices valid");
                        if sub.is_vortex().expect("4 vertices") {
                            return Some(names);
                        }
                    }
                }
            }
        }
        None
    }

    /// Fork test: abundant, not acyclic, and some vertex r (the point of
    /// return) such that b[i][r] > 0 and b[r][j] > 0 imply
    /// b[j][i] > max(b[i][r], b[r][j]), with the quiver minus r acyclic.
    /// Returns the point of return of the first matching vertex.
    pub fn is_fork(&self) -> Option<String> {
        if self.n() < 3 || !self.is_abundant() || self.is_acyclic() {
            return None;
        }
        'candidates: for r in 0..self.n() {
            let names: Vec<String> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != r)
                .map(|(_, v)| v.clone())
                .collect();
            if !self.subquiver(&names).expect("valid").is_acyclic() {
                continue;
            }
            for i in 0..self.n() {
                for j in 0..self.n() {
                    if self.b[(i, r)].is_positive() && self.b[(r, j)].is_positive() {
                        let bound = self.b[(i, r)].clone().max(self.b[(r, j)].clone());
                        if self.b[(j, i)] <= bound {
                            continue 'candidates;
                        }
                    }
                }
            }
            return Some(self.vertices[r].clone());
        }
        None
    }

    pub fn det_b(&self) -> BigInt {
        self.b.det()
    }

    pub fn rank_b(&self) -> usize {
        self.b.rank()
    }

    /// In-neighbors and out-neighbors of a vertex, by name.
    pub fn in_out(&self, j: &str) -> Result<(Vec<String>, Vec<String>)> {
        let jj = self.index_of(j)?;
        let mut ins = Vec::new();
        let mut outs = Vec::new();
        for i in 0..self.n() {
            if self.b[(i, jj)].is_positive() {
                ins.push(self.vertices[i].clone());
            } else if self.b[(jj, i)].is_positive() {
                outs.push(self.vertices[i].clone());
            }
        }
        Ok((ins, outs))
    }
}

/// Heap's algorithm, calling `f` on every permutation of `arr`.
fn permute(arr: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == arr.len() {
        f(arr);
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute(arr, k + 1, f);
        arr.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_a3() -> Quiver {
        Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]).unwrap()
    }

    fn markov() -> Quiver {
        Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 2), ("b", "c", 2), ("c", "a", 2)])
            .unwrap()
    }

    #[test]
    fn mutate_path_at_middle_gives_oriented_triangle() {
        let q = path_a3().mutate("b").unwrap();
        let expect = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("b", "a", 1), ("c", "b", 1), ("a", "c", 1)],
        )
        .unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn mutate_is_involution() {
        for v in ["a", "b", "c"] {
            assert_eq!(path_a3().mutate(v).unwrap().mutate(v).unwrap(), path_a3());
            assert_eq!(markov().mutate(v).unwrap().mutate(v).unwrap(), markov());
        }
    }

    #[test]
    fn mutate_at_sink_only_reverses_incident_arrows() {
        let q = path_a3().mutate("c").unwrap();
        let expect =
            Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("c", "b", 1)]).unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn markov_mutation_is_isomorphic_to_itself() {
        let m = markov().mutate("a").unwrap();
        // Arrows reversed 3-cycle, still all weight 2.
        let expect = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("b", "a", 2), ("a", "c", 2), ("c", "b", 2)],
        )
        .unwrap();
        assert_eq!(m, expect);
        assert!(m.is_abundant());
    }

    #[test]
    fn predicates() {
        assert!(path_a3().is_acyclic());
        assert!(!path_a3().is_complete());
        assert!(path_a3().is_tree());
        assert!(!markov().is_acyclic());
        assert!(markov().is_abundant());
        assert!(markov().is_complete());
        assert!(markov().is_fork().is_none()); // max-condition fails
    }

    #[test]
    fn vortex_detection() {
        // Complete 4-vertex with an oriented 3-cycle and no oriented 4-cycle.
        let v = Quiver::from_arrows(
            &["a", "b", "c", "d"],
            &[
                ("a", "b", 1),
                ("b", "c", 1),
                ("c", "a", 1),
                ("a", "d", 1),
                ("b", "d", 1),
                ("c", "d", 1),
            ],
        )
        .unwrap();
        assert!(v.is_vortex().unwrap());
        // Oriented 4-cycle is not a vortex (not complete, has 4-cycle).
        let c4 = Quiver::from_arrows(
            &["a", "b", "c", "d"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)],
        )
        .unwrap();
        assert!(!c4.is_vortex().unwrap());
        assert!(path_a3().is_vortex().is_err());
    }

    #[test]
    fn json_roundtrip() {
        let q = markov();
        let text = q.to_json(Some(&["a".into(), "b".into(), "c".into()]));
        let (q2, order) = Quiver::parse_json(&text).unwrap();
        assert_eq!(q, q2);
        assert_eq!(order.unwrap(), vec!["a", "b", "c"]);
    }

    #[test]
    fn json_rejects_bad_input() {
        assert!(Quiver::parse_json(r#"{"vertices":["a"],"arrows":[["a","a",1]]}"#).is_err());
        assert!(Quiver::parse_json(r#"{"vertices":["a","b"],"arrows":[["a","b",0]]}"#).is_err());
        assert!(Quiver::parse_json(
            r#"{"vertices":["a","b"],"arrows":[["a","b",1],["b","a",2]]}"#
        )
        .is_err());
        assert!(Quiver::parse_json(
            r#"{"vertices":["a","b"],"arrows":[],"order":["a","a"]}"#
        )
        .is_err());
    }

    #[test]
    fn det_and_rank() {
        // Path on 4 vertices: det 1; any odd n: det 0.
        let a4 = Quiver::from_arrows(
            &["a", "b", "c", "d"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1)],
        )
        .unwrap();
        assert_eq!(a4.det_b(), BigInt::from(1));
        assert_eq!(path_a3().det_b(), BigInt::zero());
        assert_eq!(path_a3().rank_b(), 2);
    }

    #[test]
    fn in_out_sets() {
        let (ins, outs) = path_a3().in_out("b").unwrap();
        assert_eq!(ins, vec!["a"]);
        assert_eq!(outs, vec!["c"]);
    }
}
