//! Exact rational linear feasibility: a phase-1 simplex with Bland's rule
//! over arbitrary-precision rationals. Used to decide the polyhedra whose
//! points encode cyclic orderings with prescribed winding numbers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Constraint relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
}

/// A single linear constraint: sum(coeffs[i] * x[i]) REL rhs.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Rel,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn eq(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, rel: Rel::Eq, rhs }
    }
    pub fn le(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Constraint { coeffs, rel: Rel::Le, rhs }
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Find any point satisfying `lower[i] <= x[i] <= upper[i]` and all
/// constraints, or None if the polyhedron is empty. Exact arithmetic
/// throughout; termination by Bland's rule.
pub fn feasible_point(
    bounds: &[(BigRational, BigRational)],
    constraints: &[Constraint],
) -> Option<Vec<BigRational>> {
    let nx = bounds.len();
    for (l, u) in bounds {
        if l > u {
            return None;
        }
    }
    // Shift x = l + y with y in [0, u - l]; upper bounds become rows
    // y_i + s_i = u_i - l_i; Le constraints get slack variables.
    let n_le = constraints.iter().filter(|c| c.rel == Rel::Le).count();
    // Variable layout: [y (nx)] [bound slacks (nx)] [ineq slacks (n_le)]
    // [artificials (one per row, appended during tableau construction)].
    let n_struct = nx + nx + n_le;
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    for i in 0..nx {
        let mut row = vec![BigRational::zero(); n_struct];
        row[i] = BigRational::one();
        row[nx + i] = BigRational::one();
        rows.push((row, &bounds[i].1 - &bounds[i].0));
    }
    let mut slack_at = nx + nx;
    for c in constraints {
        assert_eq!(c.coeffs.len(), nx, "constraint arity mismatch");
        let mut row = vec![BigRational::zero(); n_struct];
        // sum a_i (l_i + y_i) REL rhs  =>  sum a_i y_i REL rhs - sum a_i l_i
        let mut rhs = c.rhs.clone();
        for (i, a) in c.coeffs.iter().enumerate() {
            row[i] = a.clone();
            rhs -= a * &bounds[i].0;
        }
        if c.rel == Rel::Le {
            row[slack_at] = BigRational::one();
            slack_at += 1;
        }
        rows.push((row, rhs));
    }
    // Normalize rhs >= 0 and append one artificial variable per row.
    let m = rows.len();
    let ncols = n_struct + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut rhs: Vec<BigRational> = Vec::with_capacity(m);
    for (i, (mut row, mut b)) in rows.into_iter().enumerate() {
        if b.is_negative() {
            for a in row.iter_mut() {
                *a = -std::mem::take(a);
            }
            b = -b;
        }
        row.resize(ncols, BigRational::zero());
        row[n_struct + i] = BigRational::one();
        t.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + i).collect();
    // Phase-1 objective: minimize the sum of artificials. Reduced cost of
    // column j is c_j - sum over basic rows with artificial basis of t[i][j].
    let is_artificial = |j: usize| j >= n_struct;
    loop {
        // Bland: entering variable = smallest index with negative reduced cost.
        let mut entering = None;
        for j in 0..ncols {
            let cj = if is_artificial(j) { BigRational::one() } else { BigRational::zero() };
            let mut red = cj;
            for i in 0..m {
                if is_artificial(basis[i]) {
                    red -= &t[i][j];
                }
            }
            if red.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        // Ratio test; tie-break by smallest basis variable index (Bland).
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][e].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let cur = &rhs[i] / &t[i][e];
                    let best = &rhs[l] / &t[l][e];
                    cur < best || (cur == best && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        let Some(l) = leave else {
            // Unbounded phase-1 objective cannot happen (bounded below by 0);
            // reaching here means no positive pivot in a negative-cost
            // column, which only occurs for degenerate all-nonpositive
            // columns; treat as infeasible defensively.
            return None;
        };
        // Pivot on (l, e).
        let piv = t[l][e].clone();
        for a in t[l].iter_mut() {
            *a = std::mem::take(a) / &piv;
        }
        rhs[l] = std::mem::take(&mut rhs[l]) / &piv;
        for i in 0..m {
            if i == l || t[i][e].is_zero() {
                continue;
            }
            let f = t[i][e].clone();
            for j in 0..ncols {
                let sub = &f * &t[l][j];
                t[i][j] -= sub;
            }
            let sub = &f * &rhs[l];
            rhs[i] -= sub;
        }
        basis[l] = e;
    }
    // Feasible iff every artificial sits at value zero.
    for i in 0..m {
        if is_artificial(basis[i]) && !rhs[i].is_zero() {
            return None;
        }
    }
    // Read the structural solution and undo the shift.
    let mut y = vec![BigRational::zero(); nx];
    for i in 0..m {
        if basis[i] < nx {
            y[basis[i]] = rhs[i].clone();
        }
    }
    Some((0..nx).map(|i| &bounds[i].0 + &y[i]).collect())
}
