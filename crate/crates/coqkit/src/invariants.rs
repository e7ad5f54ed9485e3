//! Unipotent companions and their congruence-class invariants: cosquares,
//! Alexander polynomials and lattices, Markov invariant, gcd multisets,
//! explicit congruence witnesses for rotations, wiggles, and proper
//! mutations, and invariant factors (rational canonical form data) of the
//! cosquare.

use crate::error::{Error, Result};
use crate::matrix::IMat;
use crate::poly::{char_poly, invariant_factors, IntPoly};
use crate::quiver::Quiver;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Cap on the number of k x k minors enumerated for one lattice.
pub const MINOR_CAP: usize = 2_000_000;

/// Unipotent upper-triangular companion of a quiver under a linear ordering
/// of its vertices: U - U^T = -B (with B indexed by the ordering).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnipotentCompanion {
    pub u: IMat,
    pub order: Vec<String>,
}

/// An explicit G in GL(n, Z) certifying U' = G U G^T.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub g: IMat,
}

impl CongruenceWitness {
    /// Check det g = +-1 and u' = g u g^T, exactly.
    pub fn verify(&self, u: &IMat, u_prime: &IMat) -> bool {
        let det = self.g.det();
        if !(det == BigInt::one() || det == -BigInt::one()) {
            return false;
        }
        self.g.mul(u).mul(&self.g.transpose()) == *u_prime
    }
}

/// Hermite-canonical lattice of polynomial coefficient vectors of degree at
/// most `k` (columns: constant term first). Equal lattices have identical
/// HNF bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLattice {
    pub k: usize,
    pub basis: IMat,
}

pub fn lattice_equal(a: &PolyLattice, b: &PolyLattice) -> Result<bool> {
    if a.k != b.k {
        return Err(Error::domain("lattice degree bounds differ"));
    }
    Ok(a.basis == b.basis)
}

impl UnipotentCompanion {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Exchange matrix recovered from the companion: B = U^T - U.
    pub fn exchange_matrix(&self) -> IMat {
        self.u.transpose().sub(&self.u)
    }

    /// Quiver recovered from the companion, with vertices in companion
    /// order.
    pub fn to_quiver(&self) -> Quiver {
        Quiver::new(self.order.clone(), self.exchange_matrix()).expect("skew by construction")
    }
}

/// Companion of `q` under the given linear ordering.
pub fn unipotent_companion(q: &Quiver, order: &[String]) -> Result<UnipotentCompanion> {
    let n = q.n();
    if order.len() != n {
        return Err(Error::domain("ordering length does not match vertex count"));
    }
    let idx: Vec<usize> = order.iter().map(|v| q.index_of(v)).collect::<Result<_>>()?;
    let u = IMat::from_fn(n, n, |i, j| {
        if i == j {
            BigInt::one()
        } else if i < j {
            -q.b[(idx[i], idx[j])].clone()
        } else {
            BigInt::zero()
        }
    });
    Ok(UnipotentCompanion { u, order: order.to_vec() })
}

/// Cosquare U^{-T} U (exact; U is unipotent).
pub fn cosquare(u: &UnipotentCompanion) -> IMat {
    let ut = u.u.transpose();
    ut.inv_unitriangular().mul(&u.u)
}

/// The parametrized companion evaluated at an integer t: t U - U^T.
fn p_of_t(u: &IMat, t: &BigInt) -> IMat {
    let ut = u.transpose();
    IMat::from_fn(u.nrows, u.ncols, |i, j| t * &u[(i, j)] - &ut[(i, j)])
}

/// Alexander polynomial det(t U - U^T), computed two independent ways
/// (interpolated determinant, and characteristic polynomial of the
/// cosquare) which must agree.
pub fn alexander_polynomial(q: &Quiver, order: &[String]) -> Result<IntPoly> {
    let u = unipotent_companion(q, order)?;
    let n = q.n();
    let pts: Vec<(BigInt, BigInt)> = (0..=n as i64)
        .map(|t| {
            let tb = BigInt::from(t);
            let d = p_of_t(&u.u, &tb).det();
            (tb, d)
        })
        .collect();
    let by_det = IntPoly::interpolate(&pts);
    let by_char = char_poly(&cosquare(&u));
    assert_eq!(by_det, by_char, "two Alexander polynomial computations disagree");
    Ok(by_det)
}

/// Markov invariant: n - trace(cosquare).
pub fn markov_invariant(q: &Quiver, order: &[String]) -> Result<BigInt> {
    let u = unipotent_companion(q, order)?;
    Ok(BigInt::from(q.n() as i64) - cosquare(&u).trace())
}

/// Lattice spanned by the coefficient vectors of all k x k minors of
/// t U - U^T, in canonical row HNF.
pub fn alexander_lattice(q: &Quiver, order: &[String], k: usize) -> Result<PolyLattice> {
    let n = q.n();
    if k == 0 || k > n {
        return Err(Error::domain("lattice index k must satisfy 1 <= k <= n"));
    }
    let u = unipotent_companion(q, order)?;
    let subsets = combinations(n, k);
    let count = subsets.len().checked_mul(subsets.len()).unwrap_or(usize::MAX);
    if count > MINOR_CAP {
        return Err(Error::resource(format!("{count} minors exceed the cap {MINOR_CAP}")));
    }
    // Evaluate each minor at k+1 points and interpolate exactly.
    let ts: Vec<BigInt> = (0..=k as i64).map(BigInt::from).collect();
    let evals: Vec<IMat> = ts.iter().map(|t| p_of_t(&u.u, t)).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for rset in &subsets {
        for cset in &subsets {
            let pts: Vec<(BigInt, BigInt)> = ts
                .iter()
                .zip(&evals)
                .map(|(t, m)| (t.clone(), m.submatrix(rset, cset).det()))
                .collect();
            let poly = IntPoly::interpolate(&pts);
            let mut row = vec![BigInt::zero(); k + 1];
            for (i, c) in poly.coeffs.iter().enumerate() {
                row[i] = c.clone();
            }
            rows.push(row);
        }
    }
    let gen = IMat::from_fn(rows.len(), k + 1, |i, j| rows[i][j].clone());
    Ok(PolyLattice { k, basis: gen.row_hnf() })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Multiset {d_1, ..., d_n}: d_r = gcd of the absolute values of all
/// non-diagonal entries in row r and column r of U (0 when all are zero).
pub fn gcd_multiset(u: &UnipotentCompanion) -> Vec<BigInt> {
    let n = u.n();
    let mut out: Vec<BigInt> = (0..n)
        .map(|r| {
            let mut g = BigInt::zero();
            for i in 0..n {
                if i != r {
                    g = g.gcd(&u.u[(r, i)]);
                    g = g.gcd(&u.u[(i, r)]);
                }
            }
            g
        })
        .collect();
    out.sort();
    out
}

/// Companion for the one-step rotated ordering, with the explicit witness
/// G = c (I + B_1^T) such that U_rot = G U G^T.
pub fn cyclic_shift_witness(
    q: &Quiver,
    order: &[String],
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = q.n();
    let u = unipotent_companion(q, order)?;
    let mut rotated = order[1..].to_vec();
    rotated.push(order[0].clone());
    let u_rot = unipotent_companion(q, &rotated)?;
    if n <= 1 {
        let w = CongruenceWitness { g: IMat::identity(n) };
        return Ok((u_rot, w));
    }
    // B under `order`; B1 keeps only the first row.
    let b = u.exchange_matrix();
    let b1t = IMat::from_fn(n, n, |i, j| if j == 0 { b[(0, i)].clone() } else { BigInt::zero() });
    // c: rotation permutation (1's on the superdiagonal, bottom-left corner).
    let mut c = IMat::zeros(n, n);
    for i in 0..n - 1 {
        c[(i, i + 1)] = BigInt::one();
    }
    c[(n - 1, 0)] = BigInt::one();
    let g = c.mul(&IMat::identity(n).add(&b1t));
    let w = CongruenceWitness { g };
    if !w.verify(&u.u, &u_rot.u) {
        return Err(Error::domain("rotation witness failed verification: internal error"));
    }
    Ok((u_rot, w))
}

/// Companion after swapping the order positions k, k+1 (0-based), which must
/// hold quiver-non-adjacent vertices; witness is the transposition itself.
pub fn wiggle_witness(
    u: &UnipotentCompanion,
    k: usize,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = u.n();
    if k + 1 >= n {
        return Err(Error::domain("swap position out of range"));
    }
    if !u.u[(k, k + 1)].is_zero() {
        return Err(Error::domain(
            "vertices at the swapped positions are adjacent in the quiver",
        ));
    }
    let s = IMat::adjacent_swap(n, k);
    let new_u = s.mul(&u.u).mul(&s.transpose());
    let mut order = u.order.clone();
    order.swap(k, k + 1);
    let out = UnipotentCompanion { u: new_u, order };
    let w = CongruenceWitness { g: s };
    debug_assert!(w.verify(&u.u, &out.u));
    Ok((out, w))
}

/// Companion of the mutation at the vertex in order position `p`, under the
/// ordering that moves that vertex to the front, together with the explicit
/// congruence witness. Requires all in-neighbors before position p and all
/// out-neighbors after it.
pub fn proper_mutation_witness(
    q: &Quiver,
    order: &[String],
    vertex: &str,
) -> Result<(UnipotentCompanion, CongruenceWitness)> {
    let n = q.n();
    let p = order
        .iter()
        .position(|v| v == vertex)
        .ok_or_else(|| Error::domain(format!("vertex {vertex:?} not in ordering")))?;
    let (ins, outs) = q.in_out(vertex)?;
    let pos_of = |v: &String| order.iter().position(|x| x == v).unwrap();
    if ins.iter().any(|v| pos_of(v) > p) || outs.iter().any(|v| pos_of(v) < p) {
        return Err(Error::domain(
            "ordering does not place in-neighbors before and out-neighbors after the vertex",
        ));
    }
    let u = unipotent_companion(q, order)?;
    // G0 = J - N E_pp with N = U - I and J the sign flip at p.
    let nmat = u.u.sub(&IMat::identity(n));
    let mut g0 = IMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = BigInt::zero();
            if i == j {
                v += if i == p { -BigInt::one() } else { BigInt::one() };
            }
            if j == p {
                v -= nmat[(i, p)].clone();
            }
            g0[(i, j)] = v;
        }
    }
    // Reordered target: mutated vertex first, everyone else in order.
    let mut new_order = vec![order[p].clone()];
    new_order.extend(order.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, v)| v.clone()));
    let mutated = q.mutate(vertex)?;
    let u_new = unipotent_companion(&mutated, &new_order)?;
    // Permutation pi with (pi M pi^T)[i][j] = M[g(i)][g(j)], g(i) = position
    // in `order` of new_order[i].
    let perm: Vec<usize> = new_order.iter().map(|v| pos_of(v)).collect();
    let pi = IMat::permutation(&perm);
    let g = pi.mul(&g0);
    let w = CongruenceWitness { g };
    if !w.verify(&u.u, &u_new.u) {
        return Err(Error::domain("mutation witness failed verification: internal error"));
    }
    Ok((u_new, w))
}

/// Invariant factors of the cosquare over the rationals (each divides the
/// next; product is the Alexander polynomial).
pub fn frobenius_factors(q: &Quiver, order: &[String]) -> Result<Vec<IntPoly>> {
    let u = unipotent_companion(q, order)?;
    Ok(invariant_factors(&cosquare(&u)))
}

/// Palindromicity: p(t) = (-t)^n p(1/t), i.e. c_k = (-1)^n c_{n-k}.
pub fn palindrome_check(p: &IntPoly, n: usize) -> bool {
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    (0..=n).all(|k| p.coeff(k) == &sign * p.coeff(n - k))
}

/// det(B) = (-1)^n * Delta(1).
pub fn det_identity_check(q: &Quiver, order: &[String]) -> Result<bool> {
    let delta = alexander_polynomial(q, order)?;
    let at_one = delta.eval(&BigInt::one());
    let sign = if q.n() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Ok(q.det_b() == sign * at_one)
}

/// Aggregate report of the congruence-class invariants of one COQ (under a
/// chosen compatible linear ordering).
#[derive(Debug, Clone, serde::Serialize)]
pub struct InvariantReport {
    pub order: Vec<String>,
    pub alexander: Vec<String>,
    pub alexander_pretty: String,
    pub markov: String,
    pub det_b: String,
    pub rank_b: usize,
    pub gcd_multiset: Vec<String>,
    pub frobenius_factors: Vec<String>,
    pub lattices: Vec<(usize, Vec<Vec<String>>)>,
}

pub fn invariant_report(q: &Quiver, order: &[String], ks: &[usize]) -> Result<InvariantReport> {
    let delta = alexander_polynomial(q, order)?;
    let u = unipotent_companion(q, order)?;
    let mut lattices = Vec::new();
    for &k in ks {
        let l = alexander_lattice(q, order, k)?;
        let rows = (0..l.basis.nrows)
            .map(|i| l.basis.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        lattices.push((k, rows));
    }
    Ok(InvariantReport {
        order: order.to_vec(),
        alexander: delta.coeffs.iter().map(|c| c.to_string()).collect(),
        alexander_pretty: delta.pretty("t"),
        markov: markov_invariant(q, order)?.to_string(),
        det_b: q.det_b().to_string(),
        rank_b: q.rank_b(),
        gcd_multiset: gcd_multiset(&u).iter().map(|x| x.to_string()).collect(),
        frobenius_factors: frobenius_factors(q, order)?.iter().map(|f| f.pretty("t")).collect(),
        lattices,
    })
}
