//! Proper vertices and proper mutations of cyclically ordered quivers:
//! pointwise and wiggle-class properness tests, realization of a proper
//! ordering at a vertex, proper mutation, candidate orderings for total
//! properness, quasi-Cartan admissibility, and the GF(2) solver for
//! admissible homomorphisms.

use crate::cyclic::{Coq, CyclicOrdering};
use crate::error::{Error, Result};
use crate::graph::{Cycle, DEFAULT_CYCLE_CAP};
use crate::invariants::UnipotentCompanion;
use crate::matrix::IMat;
use crate::ordering::{construct_ordering_ext, RightTurn};
use crate::quiver::Quiver;
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Symmetrized companion A = U + Uᵀ of a linear ordering: symmetric with
/// diagonal 2 and |a_ij| = |b_ij| off the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiCartan {
    pub a: IMat,
    pub order: Vec<String>,
}

/// A homomorphism from the cycle space of the underlying graph to Z/2Z,
/// recorded by its values on the deterministic homology basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gf2Assignment {
    pub basis: Vec<Cycle>,
    pub bits: Vec<u8>,
}

/// Outcome of the bounded total-properness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TpStatus {
    /// Every wiggle class reachable by proper mutations is proper, and the
    /// search closed within budget.
    Verified,
    /// A reachable wiggle class contains a vertex that is not proper.
    Refuted { witness: Coq, vertex: String },
    /// The frontier was not exhausted within the budget.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotallyProperVerdict {
    pub status: TpStatus,
    /// Number of wiggle classes fully examined.
    pub explored: usize,
}

/// Is j proper in this specific COQ: every oriented 2-path u -> j -> v makes
/// a right turn, i.e. theta(u, j) + theta(j, v) <= n - 1.
pub fn is_proper_vertex(coq: &Coq, j: &str) -> Result<bool> {
    let n = coq.n();
    let (ins, outs) = coq.quiver.in_out(j)?;
    for u in &ins {
        for v in &outs {
            if coq.ordering.distance(u, j)? + coq.ordering.distance(j, v)? > n - 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Properness of a vertex within a single chordless cycle's wiggle class:
/// sinks and sources of the cycle are always proper; the middle vertex of a
/// directed path along the cycle is proper exactly when the cycle's winding
/// number avoids the corresponding extreme value.
fn proper_on_chordless_cycle(coq: &Coq, cycle: &Cycle, j: &str) -> Result<bool> {
    let k = cycle.len();
    let pos = cycle
        .vertices
        .iter()
        .position(|v| v == j)
        .expect("vertex lies on the cycle");
    let pred = &cycle.vertices[(pos + k - 1) % k];
    let succ = &cycle.vertices[(pos + 1) % k];
    let q = &coq.quiver;
    let forward_in = q.b[(q.index_of(pred)?, q.index_of(j)?)].is_positive();
    let forward_out = q.b[(q.index_of(j)?, q.index_of(succ)?)].is_positive();
    if forward_in != forward_out {
        // Sink or source of the cycle.
        return Ok(true);
    }
    let mut r = 0i64;
    for (u, v) in cycle.steps() {
        if q.b[(q.index_of(u)?, q.index_of(v)?)].is_positive() {
            r += 1;
        }
    }
    let ell = k as i64 - r;
    let sub = coq.subcoq(&cycle.vertices)?;
    let wind = sub.winding(cycle)?;
    if forward_in {
        // Middle of a path directed along the traversal: improper only at
        // the maximal winding r - 1, where the unique ordering in the class
        // runs opposite to the traversal.
        Ok(wind < r - 1)
    } else {
        // Middle of a path directed against the traversal: improper only at
        // the minimal winding 1 - ell.
        Ok(wind > 1 - ell)
    }
}

/// Is j proper in the wiggle equivalence class of this COQ: proper within
/// every chordless cycle through j (and unconditionally if j lies on none).
pub fn is_proper_in_wiggle_class(coq: &Coq, j: &str) -> Result<bool> {
    is_proper_in_wiggle_class_capped(coq, j, DEFAULT_CYCLE_CAP)
}

pub fn is_proper_in_wiggle_class_capped(coq: &Coq, j: &str, cap: usize) -> Result<bool> {
    coq.quiver.index_of(j)?;
    let cycles = coq.quiver.underlying_graph().chordless_cycles(cap)?;
    for c in &cycles {
        if !c.vertices.iter().any(|v| v == j) {
            continue;
        }
        if !proper_on_chordless_cycle(coq, c, j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Find a wiggle-equivalent COQ in which j is proper, or None if j is not
/// proper in the wiggle class. Solved by the winding-signature LP with extra
/// right-turn constraints theta(u, j) + theta(j, v) <= n - 1.
pub fn realize_proper_at(coq: &Coq, j: &str) -> Result<Option<Coq>> {
    realize_proper_at_capped(coq, j, DEFAULT_CYCLE_CAP)
}

pub fn realize_proper_at_capped(coq: &Coq, j: &str, cap: usize) -> Result<Option<Coq>> {
    if !is_proper_in_wiggle_class_capped(coq, j, cap)? {
        return Ok(None);
    }
    if is_proper_vertex(coq, j)? {
        return Ok(Some(coq.clone()));
    }
    let (ins, outs) = coq.quiver.in_out(j)?;
    let right_turns: Vec<RightTurn> = ins
        .iter()
        .flat_map(|u| {
            outs.iter().map(move |v| RightTurn {
                u: u.clone(),
                j: j.to_string(),
                v: v.clone(),
            })
        })
        .collect();
    let targets = coq.winding_signature();
    if let Some(ordering) =
        construct_ordering_ext(&coq.quiver, &targets, &right_turns, Some(j), false)?
    {
        let candidate = Coq::new(coq.quiver.clone(), ordering)?;
        if is_proper_vertex(&candidate, j)? {
            return Ok(Some(candidate));
        }
    }
    // Defensive fallback: exhaustive wiggle search. The LP realization is
    // expected to succeed whenever the class test passes.
    for member in wiggle_class(coq) {
        if is_proper_vertex(&member, j)? {
            return Ok(Some(member));
        }
    }
    Err(Error::domain(
        "vertex passes the wiggle-class properness test but no proper realization was found",
    ))
}

/// Enumerate the full wiggle equivalence class of a COQ by breadth-first
/// search over single wiggles. Exponential in general; used as an oracle and
/// as a defensive fallback on small instances.
pub fn wiggle_class(coq: &Coq) -> Vec<Coq> {
    let mut seen: BTreeSet<CyclicOrdering> = BTreeSet::new();
    let mut queue = VecDeque::from([coq.clone()]);
    seen.insert(coq.ordering.clone());
    let mut out = Vec::new();
    while let Some(cur) = queue.pop_front() {
        for w in cur.available_wiggles() {
            let next = cur
                .apply_wiggle(&w.pair.0, &w.pair.1)
                .expect("available wiggle applies");
            if seen.insert(next.ordering.clone()) {
                queue.push_back(next);
            }
        }
        out.push(cur);
    }
    out
}

/// Mutate at a wiggle-class-proper vertex j and update the cyclic ordering:
/// after realizing an ordering proper at j, the quiver is mutated and j is
/// reinserted immediately after the clockwise-last element of Out(j)
/// (keeping j proper in the result). With Out(j) empty the ordering is
/// unchanged.
pub fn proper_mutate(coq: &Coq, j: &str) -> Result<Coq> {
    proper_mutate_capped(coq, j, DEFAULT_CYCLE_CAP)
}

pub fn proper_mutate_capped(coq: &Coq, j: &str, cap: usize) -> Result<Coq> {
    let realized = realize_proper_at_capped(coq, j, cap)?
        .ok_or_else(|| Error::domain(format!("vertex {j:?} is not proper in the wiggle class")))?;
    let mutated = realized.quiver.mutate(j)?;
    let (_, outs) = realized.quiver.in_out(j)?;
    let arr = realized.ordering.as_slice();
    let n = arr.len();
    let pj = realized.ordering.position(j).expect("vertex present");
    // Scan clockwise from j; all Out(j) elements precede all In(j) elements
    // because j is proper in `realized`.
    let mut rest: Vec<String> = (1..n).map(|k| arr[(pj + k) % n].clone()).collect();
    let out_set: BTreeSet<&String> = outs.iter().collect();
    let insert_after = rest.iter().rposition(|v| out_set.contains(v));
    match insert_after {
        Some(p) => rest.insert(p + 1, j.to_string()),
        None => rest.insert(0, j.to_string()),
    }
    Coq::new(mutated, CyclicOrdering::new(rest))
}

/// Is every vertex proper in the wiggle class: equivalently, every full
/// subCOQ supported on a chordless cycle is proper.
pub fn is_proper_coq(coq: &Coq) -> Result<bool> {
    is_proper_coq_capped(coq, DEFAULT_CYCLE_CAP)
}

pub fn is_proper_coq_capped(coq: &Coq, cap: usize) -> Result<bool> {
    let cycles = coq.quiver.underlying_graph().chordless_cycles(cap)?;
    for c in &cycles {
        for j in &c.vertices {
            if !proper_on_chordless_cycle(coq, c, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is the cycle oriented in q along its stored traversal direction (all
/// arrows forward) or against it (all arrows backward)?
fn cycle_orientation(q: &Quiver, c: &Cycle) -> Result<Option<i64>> {
    let mut fwd = 0usize;
    for (u, v) in c.steps() {
        if q.b[(q.index_of(u)?, q.index_of(v)?)].is_positive() {
            fwd += 1;
        }
    }
    Ok(if fwd == c.len() {
        Some(1)
    } else if fwd == 0 {
        Some(-1)
    } else {
        None
    })
}

/// Attempt to build the distinguished candidate ordering: winding +-1 on
/// every oriented chordless cycle (sign per traversal direction) and 0 on
/// every non-oriented one. If the quiver admits a totally proper ordering,
/// any such ordering is wiggle-equivalent to the one returned here.
pub fn candidate_ordering(q: &Quiver) -> Result<Option<CyclicOrdering>> {
    candidate_ordering_capped(q, DEFAULT_CYCLE_CAP)
}

pub fn candidate_ordering_capped(q: &Quiver, cap: usize) -> Result<Option<CyclicOrdering>> {
    let cycles = q.underlying_graph().chordless_cycles(cap)?;
    let mut winds = Vec::with_capacity(cycles.len());
    for c in &cycles {
        winds.push(match cycle_orientation(q, c)? {
            Some(s) => s,
            None => 0,
        });
    }
    let targets = crate::cyclic::WindingSignature { basis: cycles, winds };
    construct_ordering_ext(q, &targets, &[], None, false)
}

/// Ordering induced by a 3-coloring with colors {-1, 0, 1} where every arrow
/// goes -1 -> 0, 0 -> 1, or 1 -> -1: list the -1 block, then 0, then 1,
/// names sorted within blocks. The resulting COQ is proper.
pub fn ordering_from_coloring(
    q: &Quiver,
    colors: &BTreeMap<String, i64>,
) -> Result<CyclicOrdering> {
    for v in &q.vertices {
        match colors.get(v) {
            Some(c) if (-1..=1).contains(c) => {}
            Some(c) => return Err(Error::domain(format!("color {c} of {v:?} not in {{-1,0,1}}"))),
            None => return Err(Error::domain(format!("vertex {v:?} is uncolored"))),
        }
    }
    for i in 0..q.n() {
        for k in 0..q.n() {
            if q.b[(i, k)].is_positive() {
                let (cu, cv) = (colors[&q.vertices[i]], colors[&q.vertices[k]]);
                let ok = matches!((cu, cv), (-1, 0) | (0, 1) | (1, -1));
                if !ok {
                    return Err(Error::domain(format!(
                        "arrow {:?} -> {:?} goes from color {cu} to {cv}",
                        q.vertices[i], q.vertices[k]
                    )));
                }
            }
        }
    }
    let mut arr = Vec::with_capacity(q.n());
    for color in [-1, 0, 1] {
        let mut block: Vec<String> = q
            .vertices
            .iter()
            .filter(|v| colors[*v] == color)
            .cloned()
            .collect();
        block.sort();
        arr.extend(block);
    }
    Ok(CyclicOrdering::new(arr))
}

/// Breadth-first verification that every wiggle class reachable from the
/// input by proper mutations is proper. States are wiggle classes, keyed by
/// the exchange matrix together with the winding signature on the quiver's
/// deterministic homology basis (labeled vertices; no relabeling).
pub fn verify_totally_proper(coq: &Coq, budget: usize) -> Result<TotallyProperVerdict> {
    verify_totally_proper_capped(coq, budget, DEFAULT_CYCLE_CAP)
}

type ClassKey = (Vec<BigInt>, Vec<(Vec<String>, i64)>);

fn class_key(coq: &Coq) -> ClassKey {
    let b: Vec<BigInt> = coq.quiver.b.iter().cloned().collect();
    let sig = coq.winding_signature();
    let winds = sig
        .basis
        .iter()
        .zip(&sig.winds)
        .map(|(c, w)| (c.vertices.clone(), *w))
        .collect();
    (b, winds)
}

pub fn verify_totally_proper_capped(
    coq: &Coq,
    budget: usize,
    cap: usize,
) -> Result<TotallyProperVerdict> {
    if budget == 0 {
        return Err(Error::domain("budget must be positive"));
    }
    let mut seen: BTreeSet<ClassKey> = BTreeSet::new();
    let mut queue = VecDeque::from([coq.clone()]);
    seen.insert(class_key(coq));
    let mut explored = 0usize;
    while let Some(cur) = queue.pop_front() {
        if explored >= budget {
            return Ok(TotallyProperVerdict { status: TpStatus::BudgetExceeded, explored });
        }
        explored += 1;
        if !is_proper_coq_capped(&cur, cap)? {
            let vertex = cur
                .quiver
                .vertices
                .iter()
                .find(|v| !is_proper_in_wiggle_class_capped(&cur, v, cap).unwrap_or(false))
                .cloned()
                .unwrap_or_default();
            return Ok(TotallyProperVerdict {
                status: TpStatus::Refuted { witness: cur, vertex },
                explored,
            });
        }
        // Forks generate infinite all-proper subtrees: a fork is complete
        // and vortex-free, mutating a fork anywhere but its point of return
        // yields another fork, and such classes are proper throughout. Only
        // the point of return can lead back out of the subtree.
        let expand: Vec<String> = match cur.quiver.is_fork() {
            Some(r) => vec![r],
            None => cur.quiver.vertices.clone(),
        };
        for j in expand {
            if !is_proper_in_wiggle_class_capped(&cur, &j, cap)? {
                continue;
            }
            let next = proper_mutate_capped(&cur, &j, cap)?;
            if seen.insert(class_key(&next)) {
                queue.push_back(next);
            }
        }
    }
    Ok(TotallyProperVerdict { status: TpStatus::Verified, explored })
}

/// The symmetrized companion A = U + Uᵀ.
pub fn quasi_cartan(u: &UnipotentCompanion) -> QuasiCartan {
    QuasiCartan { a: u.u.add(&u.u.transpose()), order: u.order.clone() }
}

/// Admissibility of a quasi-Cartan companion: on every chordless cycle, the
/// number of consecutive pairs with positive A-entry is odd exactly when the
/// cycle is oriented.
pub fn is_admissible(a: &QuasiCartan, q: &Quiver) -> Result<bool> {
    is_admissible_capped(a, q, DEFAULT_CYCLE_CAP)
}

pub fn is_admissible_capped(a: &QuasiCartan, q: &Quiver, cap: usize) -> Result<bool> {
    let pos = |name: &str| -> Result<usize> {
        a.order
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::domain(format!("vertex {name:?} missing from the ordering")))
    };
    for c in q.underlying_graph().chordless_cycles(cap)? {
        let mut positives = 0usize;
        for (u, v) in c.steps() {
            if a.a[(pos(u)?, pos(v)?)].is_positive() {
                positives += 1;
            }
        }
        let oriented = cycle_orientation(q, &c)?.is_some();
        if (positives % 2 == 1) != oriented {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solve for a homomorphism from the cycle space to Z/2Z sending every
/// chordless cycle to 1 exactly when it is oriented. Returns None when the
/// GF(2) system is inconsistent.
pub fn admissible_homomorphism(q: &Quiver) -> Result<Option<Gf2Assignment>> {
    admissible_homomorphism_capped(q, DEFAULT_CYCLE_CAP)
}

pub fn admissible_homomorphism_capped(q: &Quiver, cap: usize) -> Result<Option<Gf2Assignment>> {
    let g = q.underlying_graph();
    let basis = g.homology_basis();
    let parent = g.spanning_forest();
    let tree_edge = |u: usize, v: usize| parent[u] == v || parent[v] == u;
    // Unknowns: one bit per non-tree edge = per basis cycle. A cycle's
    // coordinates in the basis are exactly its non-tree edges.
    let nontree: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !tree_edge(u, v))
        .collect();
    debug_assert_eq!(nontree.len(), basis.len());
    let m = nontree.len();
    let mut rows: Vec<(Vec<u8>, u8)> = Vec::new();
    for c in g.chordless_cycles(cap)? {
        let mut coeffs = vec![0u8; m];
        for (u, v) in c.steps() {
            let iu = g.index_of(u).expect("cycle vertex in graph");
            let iv = g.index_of(v).expect("cycle vertex in graph");
            let key = (iu.min(iv), iu.max(iv));
            if let Some(k) = nontree.iter().position(|&e| e == key) {
                coeffs[k] ^= 1;
            }
        }
        let rhs = u8::from(cycle_orientation(q, &c)?.is_some());
        rows.push((coeffs, rhs));
    }
    // GF(2) Gaussian elimination.
    let mut pivots: Vec<Option<usize>> = Vec::new();
    let mut reduced: Vec<(Vec<u8>, u8)> = Vec::new();
    for (mut row, mut rhs) in rows {
        for (i, &(ref prow, prhs)) in reduced.iter().enumerate() {
            if let Some(p) = pivots[i] {
                if row[p] == 1 {
                    for k in 0..m {
                        row[k] ^= prow[k];
                    }
                    rhs ^= prhs;
                }
            }
        }
        let p = row.iter().position(|&x| x == 1);
        if p.is_none() && rhs == 1 {
            return Ok(None);
        }
        if p.is_some() {
            pivots.push(p);
            reduced.push((row, rhs));
        }
    }
    // Back-substitute with free variables set to 0.
    let mut bits = vec![0u8; m];
    for (i, &(ref row, rhs)) in reduced.iter().enumerate().rev() {
        let p = pivots[i].expect("kept rows have pivots");
        let mut acc = rhs;
        for k in p + 1..m {
            acc ^= row[k] & bits[k];
        }
        bits[p] = acc;
    }
    Ok(Some(Gf2Assignment { basis, bits }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::wiggle_equivalent;

    fn coq(q: Quiver, names: &[&str]) -> Coq {
        Coq::new(q, CyclicOrdering::from_names(names)).unwrap()
    }

    fn c4() -> Quiver {
        Quiver::from_arrows(
            &["a", "b", "c", "d"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "a", 1)],
        )
        .unwrap()
    }

    fn tri() -> Quiver {
        Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)])
            .unwrap()
    }

    /// Oracle: j proper somewhere in the exhaustively enumerated wiggle class.
    fn oracle_class_proper(c: &Coq, j: &str) -> bool {
        wiggle_class(c).iter().any(|m| is_proper_vertex(m, j).unwrap())
    }

    #[test]
    fn pointwise_properness_on_triangle() {
        let q = tri();
        let good = coq(q.clone(), &["a", "b", "c"]);
        for v in ["a", "b", "c"] {
            assert!(is_proper_vertex(&good, v).unwrap());
        }
        let bad = coq(q, &["a", "c", "b"]);
        for v in ["a", "b", "c"] {
            assert!(!is_proper_vertex(&bad, v).unwrap());
        }
    }

    #[test]
    fn sinks_and_sources_always_proper() {
        // a -> b <- c: b is a sink, a and c sources.
        let q = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("c", "b", 1)]).unwrap();
        for names in [["a", "b", "c"], ["a", "c", "b"]] {
            let c = coq(q.clone(), &names);
            for v in ["a", "b", "c"] {
                assert!(is_proper_vertex(&c, v).unwrap());
            }
        }
    }

    #[test]
    fn wiggle_class_properness_on_oriented_4_cycle() {
        let q = c4();
        // Winding 1 and 2: every vertex proper in the class.
        for names in [["a", "b", "c", "d"], ["a", "b", "d", "c"]] {
            let c = coq(q.clone(), &names);
            for v in ["a", "b", "c", "d"] {
                assert!(is_proper_in_wiggle_class(&c, v).unwrap(), "{names:?} at {v}");
            }
        }
        // Winding 3 (= r - 1): no vertex proper, and no wiggles available.
        let extreme = coq(q, &["a", "d", "c", "b"]);
        assert!(extreme.available_wiggles().is_empty());
        for v in ["a", "b", "c", "d"] {
            assert!(!is_proper_in_wiggle_class(&extreme, v).unwrap());
        }
    }

    #[test]
    fn tree_vertices_all_class_proper() {
        let q = Quiver::from_arrows(&["a", "b", "c", "d"], &[("a", "b", 1), ("b", "c", 1), ("b", "d", 1)])
            .unwrap();
        let c = coq(q, &["a", "c", "b", "d"]);
        for v in ["a", "b", "c", "d"] {
            assert!(is_proper_in_wiggle_class(&c, v).unwrap());
        }
    }

    #[test]
    fn class_properness_matches_wiggle_bfs_oracle() {
        // Exhaustive check on all orderings of two 4-vertex quivers.
        let quivers = [
            c4(),
            Quiver::from_arrows(
                &["a", "b", "c", "d"],
                &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1), ("c", "d", 2)],
            )
            .unwrap(),
        ];
        let perms = [
            ["a", "b", "c", "d"],
            ["a", "b", "d", "c"],
            ["a", "c", "b", "d"],
            ["a", "c", "d", "b"],
            ["a", "d", "b", "c"],
            ["a", "d", "c", "b"],
        ];
        for q in &quivers {
            for names in &perms {
                let c = coq(q.clone(), names);
                for v in ["a", "b", "c", "d"] {
                    assert_eq!(
                        is_proper_in_wiggle_class(&c, v).unwrap(),
                        oracle_class_proper(&c, v),
                        "quiver {:?} ordering {names:?} vertex {v}",
                        q.vertices
                    );
                }
            }
        }
    }

    #[test]
    fn realize_returns_proper_representative() {
        let q = c4();
        // (a, c, b, d) has winding 2; c is class-proper but not pointwise
        // proper here.
        let c = coq(q, &["a", "c", "b", "d"]);
        assert!(!is_proper_vertex(&c, "c").unwrap());
        let realized = realize_proper_at(&c, "c").unwrap().unwrap();
        assert!(is_proper_vertex(&realized, "c").unwrap());
        assert!(wiggle_equivalent(&c.quiver, &c.ordering, &realized.ordering).unwrap());
        // Winding 3: nothing to realize.
        let extreme = coq(c4(), &["a", "d", "c", "b"]);
        assert!(realize_proper_at(&extreme, "b").unwrap().is_none());
    }

    #[test]
    fn proper_mutate_path_at_middle() {
        let q = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]).unwrap();
        let c = coq(q, &["a", "b", "c"]);
        let m = proper_mutate(&c, "b").unwrap();
        // Oriented 3-cycle with the reversed cyclic ordering.
        let want = tri().opposite_arrows();
        assert_eq!(m.quiver.b, want.b);
        assert_eq!(m.ordering, CyclicOrdering::from_names(&["a", "c", "b"]));
        assert!(is_proper_vertex(&m, "b").unwrap());
    }

    #[test]
    fn proper_mutate_twice_is_wiggle_identity() {
        let q = c4();
        let c = coq(q, &["a", "b", "c", "d"]);
        for v in ["a", "b", "c", "d"] {
            let twice = proper_mutate(&proper_mutate(&c, v).unwrap(), v).unwrap();
            assert_eq!(twice.quiver.b, c.quiver.b);
            assert!(wiggle_equivalent(&c.quiver, &c.ordering, &twice.ordering).unwrap());
        }
    }

    #[test]
    fn proper_mutate_at_sink_keeps_ordering() {
        let q = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("c", "b", 1)]).unwrap();
        let c = coq(q, &["a", "b", "c"]);
        let m = proper_mutate(&c, "b").unwrap();
        assert_eq!(m.ordering, c.ordering);
    }

    #[test]
    fn is_proper_coq_examples() {
        assert!(is_proper_coq(&coq(tri(), &["a", "b", "c"])).unwrap());
        assert!(!is_proper_coq(&coq(tri(), &["a", "c", "b"])).unwrap());
        assert!(is_proper_coq(&coq(c4(), &["a", "b", "c", "d"])).unwrap());
        assert!(!is_proper_coq(&coq(c4(), &["a", "d", "c", "b"])).unwrap());
        // Two-vertex COQs are always proper.
        let two = Quiver::from_arrows(&["a", "b"], &[("a", "b", 3)]).unwrap();
        assert!(is_proper_coq(&coq(two, &["a", "b"])).unwrap());
    }

    #[test]
    fn candidate_ordering_on_oriented_cycle() {
        let got = candidate_ordering(&c4()).unwrap().unwrap();
        assert_eq!(got, CyclicOrdering::from_names(&["a", "b", "c", "d"]));
    }

    #[test]
    fn coloring_orderings() {
        // Oriented triangle colored -1, 0, 1.
        let q = tri();
        let colors: BTreeMap<String, i64> =
            [("a", -1), ("b", 0), ("c", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let ord = ordering_from_coloring(&q, &colors).unwrap();
        assert_eq!(ord, CyclicOrdering::from_names(&["a", "b", "c"]));
        assert!(is_proper_coq(&Coq::new(q.clone(), ord).unwrap()).unwrap());
        // Arrow against the color cycle is rejected.
        let bad: BTreeMap<String, i64> =
            [("a", 0), ("b", -1), ("c", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
        assert!(ordering_from_coloring(&q, &bad).is_err());
    }

    #[test]
    fn verify_totally_proper_small_cases() {
        // A3 path: finite all-proper class.
        let a3 = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]).unwrap();
        let v = verify_totally_proper(&coq(a3, &["a", "b", "c"]), 100).unwrap();
        assert_eq!(v.status, TpStatus::Verified);
        // Winding-2 class of the oriented 4-cycle: refuted.
        let v = verify_totally_proper(&coq(c4(), &["a", "b", "d", "c"]), 100).unwrap();
        assert!(matches!(v.status, TpStatus::Refuted { .. }));
        // Budget exhaustion reported.
        let a3 = Quiver::from_arrows(&["a", "b", "c"], &[("a", "b", 1), ("b", "c", 1)]).unwrap();
        let v = verify_totally_proper(&coq(a3, &["a", "b", "c"]), 1).unwrap();
        assert_eq!(v.status, TpStatus::BudgetExceeded);
    }

    #[test]
    fn quasi_cartan_admissibility() {
        let q = tri();
        let u = crate::invariants::unipotent_companion(
            &q,
            &["a".to_string(), "b".to_string(), "c".to_string()],
        )
        .unwrap();
        let a = quasi_cartan(&u);
        assert_eq!(a.a, a.a.transpose());
        // Oriented triangle, order (a, b, c): positive entries at the pairs
        // (c, a) only — count 1, odd, admissible.
        assert!(is_admissible(&a, &q).unwrap());
    }

    #[test]
    fn admissible_homomorphism_cases() {
        // Trees: trivial assignment.
        let t = Quiver::from_arrows(&["a", "b"], &[("a", "b", 1)]).unwrap();
        let got = admissible_homomorphism(&t).unwrap().unwrap();
        assert!(got.bits.is_empty());
        // Oriented 4-cycle: single generator gets 1.
        let got = admissible_homomorphism(&c4()).unwrap().unwrap();
        assert_eq!(got.bits, vec![1]);
    }
}
