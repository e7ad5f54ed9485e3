//! Bounded breadth-first exploration: mutation classes and proper mutation
//! classes up to relabeling, forkless parts, and invariant collision scans
//! over quiver families.

use crate::cyclic::{Coq, CyclicOrdering};
use crate::error::{Error, Result};
use crate::invariants::{
    alexander_lattice, alexander_polynomial, frobenius_factors, gcd_multiset,
    unipotent_companion,
};
use crate::matrix::IMat;
use crate::proper::{is_proper_in_wiggle_class, proper_mutate};
use crate::quiver::Quiver;
use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::{BTreeSet, VecDeque};

/// Bounds for breadth-first class exploration; exceeding any bound stops the
/// search and marks the report incomplete.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplorationLimits {
    pub max_quivers: usize,
    pub max_depth: usize,
    /// Absolute bound on exchange-matrix entries; branches exceeding it are
    /// pruned (mutation-infinite classes grow doubly exponentially).
    pub max_entry: u64,
}

impl Default for ExplorationLimits {
    fn default() -> Self {
        ExplorationLimits { max_quivers: 10_000, max_depth: 1_000, max_entry: 1_000_000 }
    }
}

/// Result of a class exploration over plain quivers.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub representatives: Vec<Quiver>,
    pub complete: bool,
    /// One short invariant fingerprint per representative.
    pub fingerprints: Vec<String>,
}

/// Result of a class exploration over wiggle classes of COQs.
#[derive(Debug, Clone)]
pub struct CoqClassReport {
    pub representatives: Vec<Coq>,
    pub complete: bool,
}

const CANONICAL_MAX_N: usize = 10;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut arr: Vec<usize> = (0..n).collect();
    fn go(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == arr.len() {
            out.push(arr.clone());
            return;
        }
        for i in k..arr.len() {
            arr.swap(k, i);
            go(arr, k + 1, out);
            arr.swap(k, i);
        }
    }
    go(&mut arr, 0, &mut out);
    out
}

fn permuted_b(b: &IMat, perm: &[usize]) -> Vec<BigInt> {
    let n = perm.len();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(b[(perm[i], perm[j])].clone());
        }
    }
    out
}

/// Lexicographically minimal exchange matrix over all vertex relabelings;
/// the returned quiver carries the sorted original names. Guarded to n <= 10.
pub fn canonical_form(q: &Quiver) -> Result<Quiver> {
    let n = q.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::resource(format!(
            "canonicalization scans all permutations; n = {n} exceeds the guard {CANONICAL_MAX_N}"
        )));
    }
    let best = permutations(n)
        .iter()
        .map(|p| permuted_b(&q.b, p))
        .min()
        .unwrap_or_default();
    let mut names = q.vertices.clone();
    names.sort();
    let b = IMat::from_fn(n, n, |i, j| best[i * n + j].clone());
    Quiver::new(names, b)
}

fn entries_within(q: &Quiver, bound: u64) -> bool {
    let bound = BigInt::from(bound);
    q.b.iter().all(|e| e.abs() <= bound)
}

fn quiver_fingerprint(q: &Quiver) -> String {
    format!("det={}; rank={}", q.det_b(), q.rank_b())
}

/// Breadth-first closure of a quiver under mutation at every vertex,
/// deduplicated by canonical form.
pub fn mutation_class(q: &Quiver, limits: &ExplorationLimits) -> Result<ClassReport> {
    bfs_quivers(q, limits, |cur| {
        (0..cur.n()).map(|j| cur.mutate_idx(j)).collect()
    })
}

/// Breadth-first closure that never mutates a fork except at its point of
/// return; representatives are the non-fork quivers visited.
pub fn forkless_part(q: &Quiver, limits: &ExplorationLimits) -> Result<ClassReport> {
    let mut report = bfs_quivers(q, limits, |cur| match cur.is_fork() {
        Some(r) => vec![cur.mutate(&r).expect("point of return is a vertex")],
        None => (0..cur.n()).map(|j| cur.mutate_idx(j)).collect(),
    })?;
    let keep: Vec<bool> = report
        .representatives
        .iter()
        .map(|r| r.is_fork().is_none())
        .collect();
    let mut idx = 0usize;
    report.representatives.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
    let mut idx = 0usize;
    report.fingerprints.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
    Ok(report)
}

fn bfs_quivers(
    q: &Quiver,
    limits: &ExplorationLimits,
    expand: impl Fn(&Quiver) -> Vec<Quiver>,
) -> Result<ClassReport> {
    let start = canonical_form(q)?;
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    seen.insert(start.b.iter().cloned().collect());
    let mut queue: VecDeque<(Quiver, usize)> = VecDeque::from([(start.clone(), 0)]);
    let mut representatives = vec![start];
    let mut complete = true;
    while let Some((cur, depth)) = queue.pop_front() {
        if depth >= limits.max_depth {
            complete = false;
            continue;
        }
        for next in expand(&cur) {
            if !entries_within(&next, limits.max_entry) {
                complete = false;
                continue;
            }
            let canon = canonical_form(&next)?;
            if seen.insert(canon.b.iter().cloned().collect()) {
                if representatives.len() >= limits.max_quivers {
                    complete = false;
                    continue;
                }
                representatives.push(canon.clone());
                queue.push_back((canon, depth + 1));
            }
        }
    }
    let fingerprints = representatives.iter().map(quiver_fingerprint).collect();
    Ok(ClassReport { representatives, complete, fingerprints })
}

/// Canonical key of a wiggle class up to relabeling: the minimum over all
/// vertex permutations of the relabeled exchange matrix together with the
/// winding numbers on the relabeled graph's deterministic homology basis.
fn coq_class_key(coq: &Coq) -> Result<(Vec<BigInt>, Vec<i64>)> {
    let n = coq.n();
    if n > CANONICAL_MAX_N {
        return Err(Error::resource(format!(
            "canonicalization scans all permutations; n = {n} exceeds the guard {CANONICAL_MAX_N}"
        )));
    }
    // Numbered names whose lexicographic order matches position order.
    let names: Vec<String> = (0..n).map(|i| format!("{i:02}")).collect();
    let mut best: Option<(Vec<BigInt>, Vec<i64>)> = None;
    for p in permutations(n) {
        // Relabeled vertex: old index p[i] becomes names[i].
        let b_flat = permuted_b(&coq.quiver.b, &p);
        let b = IMat::from_fn(n, n, |i, j| b_flat[i * n + j].clone());
        let quiver = Quiver::new(names.clone(), b)?;
        let mut inverse = vec![0usize; n];
        for (i, &pi) in p.iter().enumerate() {
            inverse[pi] = i;
        }
        let arrangement: Vec<String> = coq
            .ordering
            .as_slice()
            .iter()
            .map(|v| {
                let old = coq.quiver.index_of(v).expect("vertex present");
                names[inverse[old]].clone()
            })
            .collect();
        let relabeled = Coq::new(quiver, CyclicOrdering::new(arrangement))?;
        let key = (b_flat, relabeled.winding_signature().winds);
        if best.as_ref().map(|b| key < *b).unwrap_or(true) {
            best = Some(key);
        }
    }
    Ok(best.expect("at least the identity permutation"))
}

/// Breadth-first closure of a COQ's wiggle class under proper mutations,
/// with wiggle classes identified up to relabeling.
pub fn proper_mutation_class(coq: &Coq, limits: &ExplorationLimits) -> Result<CoqClassReport> {
    let mut seen: BTreeSet<(Vec<BigInt>, Vec<i64>)> = BTreeSet::new();
    seen.insert(coq_class_key(coq)?);
    let mut queue: VecDeque<(Coq, usize)> = VecDeque::from([(coq.clone(), 0)]);
    let mut representatives = vec![coq.clone()];
    let mut complete = true;
    while let Some((cur, depth)) = queue.pop_front() {
        if depth >= limits.max_depth {
            complete = false;
            continue;
        }
        for j in cur.quiver.vertices.clone() {
            if !is_proper_in_wiggle_class(&cur, &j)? {
                continue;
            }
            let next = proper_mutate(&cur, &j)?;
            if !entries_within(&next.quiver, limits.max_entry) {
                complete = false;
                continue;
            }
            if seen.insert(coq_class_key(&next)?) {
                if representatives.len() >= limits.max_quivers {
                    complete = false;
                    continue;
                }
                representatives.push(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(CoqClassReport { representatives, complete })
}

/// One group of family members sharing a reciprocal characteristic
/// polynomial, with the finer invariants that separate members (if any).
#[derive(Debug, Clone)]
pub struct CollisionGroup {
    pub indices: Vec<usize>,
    pub delta: String,
    /// Names of finer invariants taking more than one value on the group.
    pub separating: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CollisionReport {
    pub groups: Vec<CollisionGroup>,
}

/// Group a quiver family by Alexander polynomial (each quiver ordered by its
/// own vertex list) and, within each group of two or more, record which of
/// the finer congruence invariants — gcd multiset, the requested polynomial
/// lattices d_k, Frobenius factors — distinguish members.
pub fn collision_scan(family: &[Quiver], k_list: &[usize]) -> Result<CollisionReport> {
    let mut deltas = Vec::with_capacity(family.len());
    for q in family {
        deltas.push(alexander_polynomial(q, &q.vertices)?);
    }
    let mut groups: Vec<(IntPolyKey, Vec<usize>)> = Vec::new();
    for (i, d) in deltas.iter().enumerate() {
        let key = d.pretty("t");
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, members)) => members.push(i),
            None => groups.push((key, vec![i])),
        }
    }
    let mut out = CollisionReport::default();
    for (delta, indices) in groups {
        if indices.len() < 2 {
            continue;
        }
        let mut separating = Vec::new();
        let gcds: Vec<_> = indices
            .iter()
            .map(|&i| {
                let u = unipotent_companion(&family[i], &family[i].vertices)?;
                Ok(gcd_multiset(&u))
            })
            .collect::<Result<_>>()?;
        if !all_equal(&gcds) {
            separating.push("gcd-multiset".to_string());
        }
        for &k in k_list {
            let lats: Vec<_> = indices
                .iter()
                .map(|&i| alexander_lattice(&family[i], &family[i].vertices, k))
                .collect::<Result<_>>()?;
            if !all_equal(&lats) {
                separating.push(format!("d{k}"));
            }
        }
        let frobs: Vec<_> = indices
            .iter()
            .map(|&i| frobenius_factors(&family[i], &family[i].vertices))
            .collect::<Result<_>>()?;
        if !all_equal(&frobs) {
            separating.push("frobenius".to_string());
        }
        out.groups.push(CollisionGroup { indices, delta, separating });
    }
    Ok(out)
}

type IntPolyKey = String;

fn all_equal<T: PartialEq>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3(edges: &[(&str, &str)]) -> Quiver {
        let arrows: Vec<(&str, &str, i64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
        Quiver::from_arrows(&["a", "b", "c"], &arrows).unwrap()
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let p1 = a3(&[("a", "b"), ("b", "c")]);
        let p2 = a3(&[("c", "a"), ("a", "b")]); // same shape, relabeled
        assert_eq!(canonical_form(&p1).unwrap().b, canonical_form(&p2).unwrap().b);
        // Different orientation type: distinct form.
        let p3 = a3(&[("a", "b"), ("c", "b")]);
        assert_ne!(canonical_form(&p1).unwrap().b, canonical_form(&p3).unwrap().b);
        // Markov quiver: canonicalization is idempotent and relabeling-stable.
        let markov = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("a", "b", 2), ("b", "c", 2), ("c", "a", 2)],
        )
        .unwrap();
        let canon = canonical_form(&markov).unwrap();
        assert_eq!(canonical_form(&canon).unwrap().b, canon.b);
        let relabeled = Quiver::from_arrows(
            &["x", "y", "z"],
            &[("y", "x", 2), ("x", "z", 2), ("z", "y", 2)],
        )
        .unwrap();
        assert_eq!(canonical_form(&relabeled).unwrap().b, canon.b);
    }

    #[test]
    fn mutation_classes_of_small_quivers() {
        let limits = ExplorationLimits::default();
        // A3: three path orientation types plus the oriented triangle.
        let r = mutation_class(&a3(&[("a", "b"), ("b", "c")]), &limits).unwrap();
        assert!(r.complete);
        assert_eq!(r.representatives.len(), 4);
        // Markov quiver: mutation-rigid.
        let markov = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("a", "b", 2), ("b", "c", 2), ("c", "a", 2)],
        )
        .unwrap();
        let r = mutation_class(&markov, &limits).unwrap();
        assert!(r.complete);
        assert_eq!(r.representatives.len(), 1);
        // Kronecker-with-tail A(2,1): two quivers up to relabeling.
        let a21 = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("a", "b", 2), ("b", "c", 1), ("c", "a", 1)],
        )
        .unwrap();
        let r = mutation_class(&a21, &limits).unwrap();
        assert!(r.complete);
        assert_eq!(r.representatives.len(), 2);
    }

    #[test]
    fn limits_mark_reports_incomplete() {
        let q = a3(&[("a", "b"), ("b", "c")]);
        let r = mutation_class(
            &q,
            &ExplorationLimits { max_quivers: 2, max_depth: 1_000, max_entry: 1_000_000 },
        )
        .unwrap();
        assert!(!r.complete);
        assert!(r.representatives.len() <= 2);
    }

    #[test]
    fn proper_mutation_class_of_isolated_coq_is_singleton() {
        // Oriented triangle with the reversed ordering: no wiggles, no
        // proper vertices.
        let tri = a3(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let coq = Coq::new(tri, CyclicOrdering::from_names(&["a", "c", "b"])).unwrap();
        let r = proper_mutation_class(&coq, &ExplorationLimits::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.representatives.len(), 1);
    }

    #[test]
    fn forkless_part_of_finite_type_is_whole_class() {
        let q = a3(&[("a", "b"), ("b", "c")]);
        let limits = ExplorationLimits::default();
        let m = mutation_class(&q, &limits).unwrap();
        let f = forkless_part(&q, &limits).unwrap();
        assert!(f.complete);
        assert_eq!(f.representatives.len(), m.representatives.len());
    }

    #[test]
    fn collision_scan_groups_and_separators() {
        // Distinct polynomials: no groups.
        let p = Quiver::from_arrows(&["a", "b", "c", "d"], &[("a", "b", 1), ("b", "c", 1), ("c", "d", 1)])
            .unwrap();
        let s = Quiver::from_arrows(&["a", "b", "c", "d"], &[("a", "b", 1), ("a", "c", 1), ("a", "d", 1)])
            .unwrap();
        let r = collision_scan(&[p.clone(), s], &[1]).unwrap();
        assert!(r.groups.is_empty());
        // Identical quivers: one group, nothing separates it.
        let r = collision_scan(&[p.clone(), p], &[1, 2]).unwrap();
        assert_eq!(r.groups.len(), 1);
        assert!(r.groups[0].separating.is_empty());
    }
}
