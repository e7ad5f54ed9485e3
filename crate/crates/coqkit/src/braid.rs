//! The signed braid group action on unipotent upper-triangular matrices and
//! on linearly ordered quivers: Artin generators with explicit congruence
//! witnesses, sign reversals, word application, the braid-word encoding of
//! proper mutations, and reversal orbits.

use crate::error::{Error, Result};
use crate::invariants::{unipotent_companion, CongruenceWitness, UnipotentCompanion};
use crate::matrix::IMat;
use crate::quiver::Quiver;
use num_bigint::BigInt;
use num_traits::One;

/// A quiver with a linear ordering of its vertices; cryptomorphic to a
/// unipotent companion with labeled rows/columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearlyOrderedQuiver {
    pub quiver: Quiver,
    pub order: Vec<String>,
}

impl LinearlyOrderedQuiver {
    pub fn new(quiver: Quiver, order: Vec<String>) -> Result<Self> {
        // The companion constructor validates that `order` covers the
        // vertex set.
        let u = unipotent_companion(&quiver, &order)?;
        Ok(Self::from_companion(&u))
    }

    /// Rebuild from a companion; the quiver's vertex list follows the order.
    pub fn from_companion(u: &UnipotentCompanion) -> Self {
        LinearlyOrderedQuiver { quiver: u.to_quiver(), order: u.order.clone() }
    }

    pub fn companion(&self) -> UnipotentCompanion {
        unipotent_companion(&self.quiver, &self.order).expect("order covers vertices")
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }
}

/// One generator of the signed braid group, with 1-based indices:
/// sigma(k) and sigma_inverse(k) for 1 <= k <= n-1, rho(i) for 1 <= i <= n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidGenerator {
    Sigma(usize),
    SigmaInverse(usize),
    Rho(usize),
}

/// A braid word, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidWord {
    pub generators: Vec<BraidGenerator>,
}

impl BraidWord {
    /// Parse a word like "s2 S1 r3": s = sigma, S = sigma inverse, r = rho.
    pub fn parse(text: &str) -> Result<BraidWord> {
        let mut generators = Vec::new();
        for tok in text.split_whitespace() {
            let (head, idx) = tok.split_at(1);
            let k: usize = idx
                .parse()
                .map_err(|_| Error::parse(format!("bad braid generator {tok:?}")))?;
            if k == 0 {
                return Err(Error::parse(format!("indices are 1-based: {tok:?}")));
            }
            generators.push(match head {
                "s" => BraidGenerator::Sigma(k),
                "S" => BraidGenerator::SigmaInverse(k),
                "r" => BraidGenerator::Rho(k),
                _ => return Err(Error::parse(format!("unknown generator {tok:?}"))),
            });
        }
        Ok(BraidWord { generators })
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .generators
            .iter()
            .map(|g| match g {
                BraidGenerator::Sigma(k) => format!("s{k}"),
                BraidGenerator::SigmaInverse(k) => format!("S{k}"),
                BraidGenerator::Rho(k) => format!("r{k}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn check_sigma_index(k: usize, n: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("sigma index {k} out of range for n = {n}")));
    }
    Ok(())
}

fn swap_order(order: &[String], k: usize) -> Vec<String> {
    let mut o = order.to_vec();
    o.swap(k - 1, k);
    o
}

/// Artin generator: U' = G U Gᵀ with G = s_k (I - u_{k,k+1} E_{k+1,k});
/// the order labels at positions k, k+1 swap.
pub fn act_sigma(
    u: &UnipotentCompanion,
    k: usize,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = u.n();
    check_sigma_index(k, n)?;
    let mut g = IMat::identity(n);
    g[(k, k - 1)] = -u.u[(k - 1, k)].clone();
    let g = IMat::adjacent_swap(n, k - 1).mul(&g);
    let u_prime = g.mul(&u.u).mul(&g.transpose());
    let out = UnipotentCompanion { u: u_prime, order: swap_order(&u.order, k) };
    Ok((out, CongruenceWitness { g }))
}

/// Inverse Artin generator: U' = H U Hᵀ with H = s_k (I - u_{k,k+1} E_{k,k+1}).
pub fn act_sigma_inverse(
    u: &UnipotentCompanion,
    k: usize,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = u.n();
    check_sigma_index(k, n)?;
    let mut h = IMat::identity(n);
    h[(k - 1, k)] = -u.u[(k - 1, k)].clone();
    let h = IMat::adjacent_swap(n, k - 1).mul(&h);
    let u_prime = h.mul(&u.u).mul(&h.transpose());
    let out = UnipotentCompanion { u: u_prime, order: swap_order(&u.order, k) };
    Ok((out, CongruenceWitness { g: h }))
}

/// Sign reversal: U' = J U Jᵀ where J is diagonal with -1 in position i;
/// flips the signs of all off-diagonal entries in row or column i. The order
/// does not change; on the quiver this reverses all arrows at the i-th
/// vertex of the ordering.
pub fn act_rho(
    u: &UnipotentCompanion,
    i: usize,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = u.n();
    if i == 0 || i > n {
        return Err(Error::domain(format!("rho index {i} out of range for n = {n}")));
    }
    let mut j = IMat::identity(n);
    j[(i - 1, i - 1)] = -BigInt::one();
    let u_prime = j.mul(&u.u).mul(&j.transpose());
    let out = UnipotentCompanion { u: u_prime, order: u.order.clone() };
    Ok((out, CongruenceWitness { g: j }))
}

fn act_generator(
    u: &UnipotentCompanion,
    g: BraidGenerator,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    match g {
        BraidGenerator::Sigma(k) => act_sigma(u, k),
        BraidGenerator::SigmaInverse(k) => act_sigma_inverse(u, k),
        BraidGenerator::Rho(i) => act_rho(u, i),
    }
}

/// Apply a braid word (left to right) to a linearly ordered quiver. The
/// composite witness is the product of the step witnesses, so it certifies
/// U_out = G U_in Gᵀ.
pub fn act_word(
    loq: &LinearlyOrderedQuiver,
    word: &BraidWord,
) -> Result<(LinearlyOrderedQuiver, CongruenceWitness)> {
    let mut u = loq.companion();
    let mut acc = IMat::identity(loq.n());
    for &g in &word.generators {
        let (next, step) = act_generator(&u, g)?;
        acc = step.g.mul(&acc);
        u = next;
    }
    let witness = CongruenceWitness { g: acc };
    debug_assert!(witness.verify(&loq.companion().u, &u.u));
    Ok((LinearlyOrderedQuiver::from_companion(&u), witness))
}

/// Braid word realizing a proper mutation at the k-th vertex of the linear
/// ordering (with In before position k and Out after), moving that vertex to
/// the front: applied left to right, sigma_{k-1}^{-1}, ..., sigma_1^{-1},
/// then rho_1. For k = 1 the word is just rho_1.
pub fn mutation_word(k: usize, n: usize) -> Result<BraidWord> {
    if k == 0 || k > n {
        return Err(Error::domain(format!("vertex position {k} out of range for n = {n}")));
    }
    let mut generators: Vec<BraidGenerator> =
        (1..k).rev().map(BraidGenerator::SigmaInverse).collect();
    generators.push(BraidGenerator::Rho(1));
    Ok(BraidWord { generators })
}

/// All images of the linearly ordered quiver under products of reversals
/// rho_S, deduplicated; the canonical subset avoids position 1, so at most
/// 2^{n-1} elements.
pub fn reversal_orbit(loq: &LinearlyOrderedQuiver) -> Vec<LinearlyOrderedQuiver> {
    let n = loq.n();
    let base = loq.companion();
    let mut out: Vec<LinearlyOrderedQuiver> = Vec::new();
    for mask in 0u64..(1u64 << n.saturating_sub(1)) {
        // Bit b of the mask toggles position b + 2 (position 1 never flips).
        let mut u = base.u.clone();
        for b in 0..n.saturating_sub(1) {
            if mask >> b & 1 == 1 {
                let i = b + 1; // 0-based row/column index
                for j in 0..n {
                    if j != i {
                        u[(i, j)] = -std::mem::take(&mut u[(i, j)]);
                        u[(j, i)] = -std::mem::take(&mut u[(j, i)]);
                    }
                }
            }
        }
        let cand = LinearlyOrderedQuiver::from_companion(&UnipotentCompanion {
            u,
            order: base.order.clone(),
        });
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Generic-looking 4x4 companion with distinct prime entries.
    fn sample_u4() -> UnipotentCompanion {
        let u = IMat::from_rows_i64(&[
            &[1, 2, 3, 5],
            &[0, 1, 7, 11],
            &[0, 0, 1, 13],
            &[0, 0, 0, 1],
        ]);
        let order = ["v1", "v2", "v3", "v4"].map(String::from).to_vec();
        UnipotentCompanion { u, order }
    }

    #[test]
    fn sigma_2_on_4x4_matches_closed_form() {
        let u = sample_u4();
        let (got, w) = act_sigma(&u, 2).unwrap();
        // (u12, u13, u14, u23, u24, u34) = (2, 3, 5, 7, 11, 13).
        let want = IMat::from_rows_i64(&[
            &[1, -2 * 7 + 3, 2, 5],
            &[0, 1, -7, -7 * 11 + 13],
            &[0, 0, 1, 11],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(got.u, want);
        assert_eq!(got.order, ["v1", "v3", "v2", "v4"].map(String::from).to_vec());
        assert!(w.verify(&u.u, &got.u));
    }

    #[test]
    fn sigma_2_inverse_on_4x4_matches_closed_form() {
        let u = sample_u4();
        let (got, w) = act_sigma_inverse(&u, 2).unwrap();
        let want = IMat::from_rows_i64(&[
            &[1, 3, -3 * 7 + 2, 5],
            &[0, 1, -7, 13],
            &[0, 0, 1, -7 * 13 + 11],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(got.u, want);
        assert!(w.verify(&u.u, &got.u));
    }

    #[test]
    fn sigma_then_inverse_is_identity() {
        let u = sample_u4();
        for k in 1..=3 {
            let (v, _) = act_sigma(&u, k).unwrap();
            let (back, _) = act_sigma_inverse(&v, k).unwrap();
            assert_eq!(back, u);
            let (v, _) = act_sigma_inverse(&u, k).unwrap();
            let (back, _) = act_sigma(&v, k).unwrap();
            assert_eq!(back, u);
        }
    }

    #[test]
    fn rho_is_involution_and_total_product_trivial_on_quivers() {
        let u = sample_u4();
        for i in 1..=4 {
            let (v, w) = act_rho(&u, i).unwrap();
            assert!(w.verify(&u.u, &v.u));
            let (back, _) = act_rho(&v, i).unwrap();
            assert_eq!(back, u);
        }
        // rho_1 rho_2 rho_3 rho_4 flips every off-diagonal sign twice.
        let mut cur = u.clone();
        for i in 1..=4 {
            cur = act_rho(&cur, i).unwrap().0;
        }
        assert_eq!(cur, u);
    }

    #[test]
    fn braid_and_far_commutation_relations() {
        let u = sample_u4();
        let apply = |word: &[usize], u: &UnipotentCompanion| {
            let mut cur = u.clone();
            for &k in word {
                cur = act_sigma(&cur, k).unwrap().0;
            }
            cur.u
        };
        assert_eq!(apply(&[1, 2, 1], &u), apply(&[2, 1, 2], &u));
        assert_eq!(apply(&[2, 3, 2], &u), apply(&[3, 2, 3], &u));
        assert_eq!(apply(&[1, 3], &u), apply(&[3, 1], &u));
    }

    #[test]
    fn rho_sigma_commutation_relations() {
        // rho_j sigma_j = sigma_j rho_{j+1}; rho_{j+1} sigma_j = sigma_j rho_j;
        // rho_k sigma_j = sigma_j rho_k for k outside {j, j+1}. Words act left
        // to right, so "rho_j sigma_j" (rightmost acts first) applies sigma_j
        // then rho_j.
        let u = sample_u4();
        for j in 1..=3 {
            let lhs = act_rho(&act_sigma(&u, j).unwrap().0, j).unwrap().0;
            let rhs = act_sigma(&act_rho(&u, j + 1).unwrap().0, j).unwrap().0;
            assert_eq!(lhs.u, rhs.u, "rho_j sigma_j = sigma_j rho_j+1 at j = {j}");
            let lhs = act_rho(&act_sigma(&u, j).unwrap().0, j + 1).unwrap().0;
            let rhs = act_sigma(&act_rho(&u, j).unwrap().0, j).unwrap().0;
            assert_eq!(lhs.u, rhs.u, "rho_j+1 sigma_j = sigma_j rho_j at j = {j}");
        }
        let lhs = act_rho(&act_sigma(&u, 2).unwrap().0, 4).unwrap().0;
        let rhs = act_sigma(&act_rho(&u, 4).unwrap().0, 2).unwrap().0;
        assert_eq!(lhs.u, rhs.u);
    }

    #[test]
    fn coxeter_word_is_cyclic_shift_and_full_twist_is_identity() {
        let u = sample_u4();
        // sigma_3 sigma_2 sigma_1 composed right to left: sigma_1 acts first.
        let shift = |u: &UnipotentCompanion| {
            let mut cur = u.clone();
            for k in 1..=3 {
                cur = act_sigma(&cur, k).unwrap().0;
            }
            cur
        };
        // One application realizes the cyclic shift of the ordering.
        let once = shift(&u);
        assert_eq!(once.order, ["v2", "v3", "v4", "v1"].map(String::from).to_vec());
        let rotated = unipotent_companion(&u.to_quiver(), &once.order).unwrap();
        assert_eq!(once.u, rotated.u);
        // The full twist acts trivially.
        let mut cur = u.clone();
        for _ in 0..4 {
            cur = shift(&cur);
        }
        assert_eq!(cur, u);
    }

    #[test]
    fn word_parsing_roundtrip_and_errors() {
        let w = BraidWord::parse("s2 S1 r3").unwrap();
        assert_eq!(
            w.generators,
            vec![
                BraidGenerator::Sigma(2),
                BraidGenerator::SigmaInverse(1),
                BraidGenerator::Rho(3)
            ]
        );
        assert_eq!(w.to_string(), "s2 S1 r3");
        assert!(BraidWord::parse("x1").is_err());
        assert!(BraidWord::parse("s0").is_err());
        assert!(BraidWord::parse("sx").is_err());
    }

    #[test]
    fn empty_word_is_identity_with_identity_witness() {
        let loq = LinearlyOrderedQuiver::from_companion(&sample_u4());
        let (got, w) = act_word(&loq, &BraidWord::default()).unwrap();
        assert_eq!(got, loq);
        assert_eq!(w.g, IMat::identity(4));
    }

    #[test]
    fn wiggle_as_sigma_when_entry_vanishes() {
        // v1 -> v2, v3 isolated between them in the order: u_{23} = 0, so
        // sigma_2 just swaps the order of v2 and v3 without changing arrows.
        let q = Quiver::from_arrows(&["v1", "v2", "v3"], &[("v1", "v2", 1)]).unwrap();
        let loq = LinearlyOrderedQuiver::new(
            q.clone(),
            ["v1", "v2", "v3"].map(String::from).to_vec(),
        )
        .unwrap();
        let (got, w) = act_word(&loq, &BraidWord::parse("s2").unwrap()).unwrap();
        assert_eq!(got.order, ["v1", "v3", "v2"].map(String::from).to_vec());
        assert_eq!(
            got.companion().u,
            unipotent_companion(&q, &got.order).unwrap().u
        );
        assert_eq!(w.g, IMat::adjacent_swap(3, 1));
    }

    #[test]
    fn mutation_word_matches_direct_mutation() {
        // Transitive tournament on 4 vertices (all u_ij = -1), mutate at the
        // third vertex of the order: rho_1 sigma_1^{-1} sigma_2^{-1} applied
        // right to left, i.e. the left-to-right word "S2 S1 r1".
        let q = Quiver::from_arrows(
            &["v1", "v2", "v3", "v4"],
            &[
                ("v1", "v2", 1),
                ("v1", "v3", 1),
                ("v1", "v4", 1),
                ("v2", "v3", 1),
                ("v2", "v4", 1),
                ("v3", "v4", 1),
            ],
        )
        .unwrap();
        let tau = ["v1", "v2", "v3", "v4"].map(String::from).to_vec();
        let loq = LinearlyOrderedQuiver::new(q.clone(), tau).unwrap();
        let word = mutation_word(3, 4).unwrap();
        assert_eq!(word.to_string(), "S2 S1 r1");
        let (got, w) = act_word(&loq, &word).unwrap();
        assert!(w.verify(&loq.companion().u, &got.companion().u));
        // Directly: mutate the quiver at v3 and move v3 to the front.
        let mutated = q.mutate("v3").unwrap();
        let tau_prime = ["v3", "v1", "v2", "v4"].map(String::from).to_vec();
        let want = LinearlyOrderedQuiver::new(mutated, tau_prime).unwrap();
        assert_eq!(got, want);
        // k = 1: bare rho_1.
        assert_eq!(mutation_word(1, 4).unwrap().to_string(), "r1");
    }

    #[test]
    fn reversal_orbit_sizes() {
        // Oriented triangle: 4 distinct images.
        let tri = Quiver::from_arrows(
            &["a", "b", "c"],
            &[("a", "b", 1), ("b", "c", 1), ("c", "a", 1)],
        )
        .unwrap();
        let loq =
            LinearlyOrderedQuiver::new(tri, ["a", "b", "c"].map(String::from).to_vec()).unwrap();
        let orbit = reversal_orbit(&loq);
        assert_eq!(orbit.len(), 4);
        // Trichotomy: one proper non-acyclic member, three non-proper acyclic.
        let mut proper_cyclic = 0;
        let mut acyclic = 0;
        for m in &orbit {
            if m.quiver.is_acyclic() {
                acyclic += 1;
            } else {
                let coq = crate::cyclic::Coq::new(
                    m.quiver.clone(),
                    crate::cyclic::CyclicOrdering::new(m.order.clone()),
                )
                .unwrap();
                if crate::proper::is_proper_coq(&coq).unwrap() {
                    proper_cyclic += 1;
                }
            }
        }
        assert_eq!((proper_cyclic, acyclic), (1, 3));
        // Arrowless quiver: singleton orbit.
        let empty = Quiver::from_arrows(&["a", "b", "c"], &[]).unwrap();
        let loq =
            LinearlyOrderedQuiver::new(empty, ["a", "b", "c"].map(String::from).to_vec()).unwrap();
        assert_eq!(reversal_orbit(&loq).len(), 1);
    }
}
