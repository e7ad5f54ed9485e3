//! Cyclic orderings of quiver vertices: clockwise distances, winding numbers
//! of cycles, wiggles, winding signatures over a deterministic homology
//! basis, and the wiggle-equivalence decision procedure.

use crate::error::{Error, Result};
use crate::graph::Cycle;
use crate::quiver::Quiver;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A cyclic arrangement of vertex names, stored canonically rotated so the
/// lexicographically smallest name comes first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclicOrdering {
    arrangement: Vec<String>,
}

impl CyclicOrdering {
    pub fn new(arrangement: Vec<String>) -> Self {
        let distinct: BTreeSet<&String> = arrangement.iter().collect();
        assert_eq!(distinct.len(), arrangement.len(), "repeated vertex in ordering");
        let k = arrangement
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut rotated = Vec::with_capacity(arrangement.len());
        rotated.extend_from_slice(&arrangement[k..]);
        rotated.extend_from_slice(&arrangement[..k]);
        CyclicOrdering { arrangement: rotated }
    }

    pub fn from_names(names: &[&str]) -> Self {
        CyclicOrdering::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn n(&self) -> usize {
        self.arrangement.len()
    }

    /// The canonical rotation (lexicographically smallest vertex first).
    pub fn as_slice(&self) -> &[String] {
        &self.arrangement
    }

    pub fn position(&self, v: &str) -> Option<usize> {
        self.arrangement.iter().position(|x| x == v)
    }

    /// Clockwise distance from a to b: how many steps forward in the
    /// arrangement; 0 iff a = b.
    pub fn distance(&self, a: &str, b: &str) -> Result<usize> {
        let pa = self.position(a).ok_or_else(|| Error::domain(format!("unknown vertex {a:?}")))?;
        let pb = self.position(b).ok_or_else(|| Error::domain(format!("unknown vertex {b:?}")))?;
        let n = self.n();
        Ok((pb + n - pa) % n)
    }

    /// Restriction to a subset of the vertices, preserving cyclic order.
    pub fn restrict(&self, keep: &BTreeSet<String>) -> CyclicOrdering {
        CyclicOrdering::new(
            self.arrangement.iter().filter(|v| keep.contains(*v)).cloned().collect(),
        )
    }

    pub fn reversed(&self) -> CyclicOrdering {
        let mut v = self.arrangement.clone();
        v.reverse();
        CyclicOrdering::new(v)
    }

    /// Swap two cyclically consecutive entries.
    fn swapped(&self, u: &str, v: &str) -> CyclicOrdering {
        let mut arr = self.arrangement.clone();
        let pu = self.position(u).expect("vertex present");
        let pv = self.position(v).expect("vertex present");
        arr.swap(pu, pv);
        CyclicOrdering::new(arr)
    }

    fn consecutive(&self, u: &str, v: &str) -> bool {
        match (self.position(u), self.position(v)) {
            (Some(pu), Some(pv)) => {
                let n = self.n();
                (pu + 1) % n == pv || (pv + 1) % n == pu
            }
            _ => false,
        }
    }
}

/// A quiver together with a cyclic ordering of its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coq {
    pub quiver: Quiver,
    pub ordering: CyclicOrdering,
}

/// Winding numbers over a fixed list of basis cycles; two orderings of the
/// same quiver are wiggle equivalent iff their signatures agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WindingSignature {
    pub basis: Vec<Cycle>,
    pub winds: Vec<i64>,
}

/// An applied or applicable wiggle: an unordered pair of cyclically
/// consecutive, quiver-non-adjacent vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wiggle {
    pub pair: (String, String),
}

impl Coq {
    pub fn new(quiver: Quiver, ordering: CyclicOrdering) -> Result<Self> {
        let qset: BTreeSet<&String> = quiver.vertices.iter().collect();
        let oset: BTreeSet<&String> = ordering.as_slice().iter().collect();
        if qset != oset {
            return Err(Error::domain("ordering does not cover exactly the quiver's vertices"));
        }
        Ok(Coq { quiver, ordering })
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Winding number of a cycle (with its stored traversal direction):
    /// (1/n) * sum of clockwise distances along the traversal, minus the
    /// number of backward arrows. Always an integer.
    pub fn winding(&self, cycle: &Cycle) -> Result<i64> {
        let n = self.n();
        let mut theta_sum = 0usize;
        let mut backward = 0i64;
        for (u, v) in cycle.steps() {
            let iu = self.quiver.index_of(u)?;
            let iv = self.quiver.index_of(v)?;
            if self.quiver.b[(iu, iv)].is_zero() {
                return Err(Error::domain(format!(
                    "cycle step {u:?} -> {v:?} is not an edge of the quiver"
                )));
            }
            if self.quiver.b[(iu, iv)].is_negative() {
                backward += 1;
            }
            theta_sum += self.ordering.distance(u, v)?;
        }
        if theta_sum % n != 0 {
            panic!("winding number is not an integer: internal invariant violated");
        }
        Ok(theta_sum as i64 / n as i64 - backward)
    }

    /// Is swapping (u, v) a valid wiggle here: cyclically consecutive and
    /// non-adjacent in the quiver?
    pub fn is_wiggle(&self, u: &str, v: &str) -> Result<bool> {
        let iu = self.quiver.index_of(u)?;
        let iv = self.quiver.index_of(v)?;
        if iu == iv {
            return Ok(false);
        }
        Ok(self.ordering.consecutive(u, v) && self.quiver.b[(iu, iv)].is_zero())
    }

    pub fn apply_wiggle(&self, u: &str, v: &str) -> Result<Coq> {
        if !self.is_wiggle(u, v)? {
            return Err(Error::domain(format!("({u:?}, {v:?}) is not a valid wiggle here")));
        }
        Ok(Coq { quiver: self.quiver.clone(), ordering: self.ordering.swapped(u, v) })
    }

    /// All wiggles available from this COQ.
    pub fn available_wiggles(&self) -> Vec<Wiggle> {
        let n = self.n();
        let arr = self.ordering.as_slice();
        let mut out = Vec::new();
        for i in 0..n {
            let u = &arr[i];
            let v = &arr[(i + 1) % n];
            if self.is_wiggle(u, v).expect("vertices present") {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                out.push(Wiggle { pair: (a.clone(), b.clone()) });
            }
        }
        out.sort_by(|a, b| a.pair.cmp(&b.pair));
        out.dedup();
        out
    }

    /// Winding signature over the deterministic homology basis of the
    /// underlying graph.
    pub fn winding_signature(&self) -> WindingSignature {
        let basis = self.quiver.underlying_graph().homology_basis();
        let winds = basis
            .iter()
            .map(|c| self.winding(c).expect("basis cycles are quiver cycles"))
            .collect();
        WindingSignature { basis, winds }
    }

    /// Arrows and ordering both reversed.
    pub fn opposite(&self) -> Coq {
        Coq {
            quiver: self.quiver.opposite_arrows(),
            ordering: self.ordering.reversed(),
        }
    }

    /// Full subCOQ on a vertex subset with the induced cyclic ordering.
    pub fn subcoq(&self, keep: &[String]) -> Result<Coq> {
        let quiver = self.quiver.subquiver(keep)?;
        let set: BTreeSet<String> = keep.iter().cloned().collect();
        Coq::new(quiver, self.ordering.restrict(&set))
    }
}

/// Wiggle equivalence of two orderings of the same quiver: equal winding
/// numbers on every cycle of the deterministic homology basis.
pub fn wiggle_equivalent(q: &Quiver, a: &CyclicOrdering, b: &CyclicOrdering) -> Result<bool> {
    let ca = Coq::new(q.clone(), a.clone())?;
    let cb = Coq::new(q.clone(), b.clone())?;
    Ok(ca.winding_signature().winds == cb.winding_signature().winds)
}
