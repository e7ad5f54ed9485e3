//! Dense exact integer matrices: arithmetic, fraction-free determinants,
//! rank, and the row-style Hermite normal form used for lattice equality.
//!
//! Entries are arbitrary-precision integers ([`BigInt`]); nothing in this
//! crate ever rounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub nrows: usize,
    pub ncols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IMat { nrows, ncols, data: vec![BigInt::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from i64 rows (test/fixture convenience).
    pub fn from_rows_i64(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged rows");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = IMat::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Permutation matrix P with P[(i, perm[i])] = 1; applying `P * M`
    /// puts old row `perm[i]` into new row `i`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = IMat::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            m[(i, j)] = BigInt::one();
        }
        m
    }

    /// Adjacent-transposition permutation matrix s_k (0-based: swaps k, k+1).
    pub fn adjacent_swap(n: usize, k: usize) -> Self {
        assert!(k + 1 < n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(k, k + 1);
        IMat::permutation(&perm)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn transpose(&self) -> IMat {
        IMat::from_fn(self.ncols, self.nrows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> IMat {
        IMat::from_fn(self.nrows, self.ncols, |i, j| -self[(i, j)].clone())
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        IMat::from_fn(self.nrows, self.ncols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        IMat::from_fn(self.nrows, self.ncols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in matrix product");
        let mut out = IMat::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IMat {
        IMat::from_fn(self.nrows, self.ncols, |i, j| &self[(i, j)] * c)
    }

    /// Extract the square submatrix with the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IMat {
        IMat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.ncols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.nrows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                // Find a pivot row below and swap.
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = a[(k, j)].clone();
                            a[(k, j)] = a[(i, j)].clone();
                            a[(i, j)] = tmp;
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss divisibility violated");
                    a[(i, j)] = q;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let (nr, nc) = (a.nrows, a.ncols);
        let mut rank = 0usize;
        let mut col = 0usize;
        while rank < nr && col < nc {
            let pivot = (rank..nr).find(|&i| !a[(i, col)].is_zero());
            let Some(p) = pivot else {
                col += 1;
                continue;
            };
            if p != rank {
                for j in 0..nc {
                    let tmp = a[(rank, j)].clone();
                    a[(rank, j)] = a[(p, j)].clone();
                    a[(p, j)] = tmp;
                }
            }
            for i in rank + 1..nr {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let piv = a[(rank, col)].clone();
                let fac = a[(i, col)].clone();
                for j in col..nc {
                    a[(i, j)] = &a[(i, j)] * &piv - &fac * &a[(rank, j)];
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Inverse of a unitriangular matrix (upper or lower); exact over the
    /// integers. Panics if the matrix is not unitriangular.
    pub fn inv_unitriangular(&self) -> IMat {
        assert!(self.is_square());
        let n = self.nrows;
        let upper = (0..n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| self[(i, j)].is_zero()));
        assert!(upper || lower, "matrix is not triangular");
        assert!((0..n).all(|i| self[(i, i)].is_one()), "diagonal is not all ones");
        // Solve X * self = I column by column via substitution on self^T
        // equivalently: inverse of I + N with N strictly triangular is a
        // finite Neumann series I - N + N^2 - ...
        let nmat = self.sub(&IMat::identity(n));
        let mut inv = IMat::identity(n);
        let mut power = IMat::identity(n);
        let mut sign_neg = true;
        for _ in 0..n {
            power = power.mul(&nmat);
            if power.data.iter().all(|x| x.is_zero()) {
                break;
            }
            if sign_neg {
                inv = inv.sub(&power);
            } else {
                inv = inv.add(&power);
            }
            sign_neg = !sign_neg;
        }
        debug_assert_eq!(inv.mul(self), IMat::identity(n));
        inv
    }

    /// Canonical row-style Hermite normal form of the lattice spanned by the
    /// rows: zero rows dropped, pivots positive, entries above each pivot
    /// reduced into [0, pivot).
    pub fn row_hnf(&self) -> IMat {
        let mut rows: Vec<Vec<BigInt>> =
            (0..self.nrows).map(|i| self.row(i)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let ncols = self.ncols;
        let mut pivot_row = 0usize;
        let mut pivots: Vec<usize> = Vec::new();
        for col in 0..ncols {
            if pivot_row >= rows.len() {
                break;
            }
            // Eliminate down to a single nonzero entry in this column among
            // rows >= pivot_row, by repeated remainder steps.
            loop {
                let mut nonzero: Vec<usize> =
                    (pivot_row..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
                if nonzero.is_empty() {
                    break;
                }
                if nonzero.len() == 1 {
                    let i = nonzero[0];
                    rows.swap(pivot_row, i);
                    break;
                }
                // Pick the row with smallest |entry| and reduce the others.
                nonzero.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let best = nonzero[0];
                rows.swap(pivot_row, best);
                let piv = rows[pivot_row][col].clone();
                for i in pivot_row + 1..rows.len() {
                    if rows[i][col].is_zero() {
                        continue;
                    }
                    let q = rows[i][col].div_floor(&piv);
                    if q.is_zero() {
                        continue;
                    }
                    for j in 0..ncols {
                        let sub = &q * &rows[pivot_row][j];
                        rows[i][j] -= sub;
                    }
                }
            }
            if rows.get(pivot_row).map_or(false, |r| !r[col].is_zero()) {
                if rows[pivot_row][col].is_negative() {
                    for x in rows[pivot_row].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                pivots.push(col);
                pivot_row += 1;
            }
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        // Reduce entries above each pivot into [0, pivot).
        for (r, &col) in pivots.iter().enumerate() {
            let piv = rows[r][col].clone();
            for i in 0..r {
                let q = rows[i][col].div_floor(&piv);
                if q.is_zero() {
                    continue;
                }
                for j in 0..ncols {
                    let sub = &q * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        let nrows = rows.len();
        IMat::from_fn(nrows, ncols, |i, j| rows[i][j].clone())
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.nrows)
            .map(|i| {
                (0..self.ncols)
                    .map(|j| i64::try_from(&self[(i, j)]).expect("entry out of i64 range"))
                    .collect()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.ncols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.ncols + j]
    }
}
