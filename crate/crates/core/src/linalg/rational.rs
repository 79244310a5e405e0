//! Exact elimination over the rationals.
//!
//! Elimination runs fraction-free on integer rows (each input row is scaled by the
//! lcm of its denominators, which leaves the row space unchanged) and reduces by
//! row content after every update. Only the final pivot normalization produces
//! fractions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{Matrix, RatMatrix};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub fn rref(m: &RatMatrix) -> Rref {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| integer_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..cols {
        if pr == rows {
            break;
        }
        // smallest nonzero magnitude keeps the integer rows short
        let Some(best) = (pr..rows)
            .filter(|&i| !a[i][col].is_zero())
            .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
        else {
            continue;
        };
        a.swap(pr, best);
        reduce_content(&mut a[pr]);
        let p = a[pr][col].clone();
        for i in 0..rows {
            if i == pr || a[i][col].is_zero() {
                continue;
            }
            let q = a[i][col].clone();
            let (pivot_row, row) = if i < pr {
                let (lo, hi) = a.split_at_mut(pr);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = a.split_at_mut(i);
                (&lo[pr], &mut hi[0])
            };
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = &p * &*x - &q * y;
            }
            reduce_content(row);
        }
        pivots.push(col);
        pr += 1;
    }
    let mut out = RatMatrix::zeros(rows, cols);
    for (r, &c) in pivots.iter().enumerate() {
        let p = a[r][c].clone();
        for (j, x) in a[r].iter().enumerate() {
            if !x.is_zero() {
                out.set(r, j, BigRational::new(x.clone(), p.clone()));
            }
        }
    }
    Rref { matrix: out, pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank()
}

/// Columns form a basis of `{x : M x = 0}`; shape `cols(M) x nullity`.
pub fn nullspace_basis(m: &RatMatrix) -> RatMatrix {
    let n = m.cols();
    let r = rref(m);
    let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
    let mut basis = RatMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        basis.set(f, k, BigRational::one());
        for (row, &p) in r.pivots.iter().enumerate() {
            let v = r.matrix.get(row, f);
            if !v.is_zero() {
                basis.set(p, k, -v.clone());
            }
        }
    }
    basis
}

/// Pivot columns of `M`, a basis of its column space.
pub fn columnspace_basis(m: &RatMatrix) -> RatMatrix {
    let r = rref(m);
    m.select_cols(&r.pivots)
}

/// Rows form a basis of `{y : y M = 0}`; shape `(rows(M) - rank) x rows(M)`.
pub fn left_annihilator(m: &RatMatrix) -> RatMatrix {
    nullspace_basis(&m.transpose()).transpose()
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn row_space_canonical(m: &RatMatrix) -> RatMatrix {
    let r = rref(m);
    r.matrix.row_range(0, r.rank())
}

/// Failure witness for `M x = b`: a vector `y` with `y M = 0` and `y b != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconsistent {
    pub witness: Vec<BigRational>,
}

pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>, Inconsistent> {
    assert_eq!(m.rows(), b.len(), "solve: rhs length mismatch");
    let aug = m.hstack(&Matrix::column_vector(b));
    let r = rref(&aug);
    let n = m.cols();
    if r.pivots.last() == Some(&n) {
        let ann = left_annihilator(m);
        for i in 0..ann.rows() {
            let dot = ann
                .row(i)
                .iter()
                .zip(b)
                .fold(BigRational::zero(), |acc, (y, v)| acc + y * v);
            if !dot.is_zero() {
                return Err(Inconsistent {
                    witness: ann.row(i).to_vec(),
                });
            }
        }
        unreachable!("inconsistent system without annihilator witness");
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix.get(row, n).clone();
    }
    Ok(x)
}

/// Solves `M X = B` column by column.
pub fn solve_matrix(m: &RatMatrix, b: &RatMatrix) -> Option<RatMatrix> {
    let cols: Option<Vec<Vec<BigRational>>> =
        (0..b.cols()).map(|j| solve(m, &b.column(j)).ok()).collect();
    cols.map(|c| Matrix::from_columns(m.cols(), &c))
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let n = m.rows();
    let r = rref(&m.hstack(&RatMatrix::identity(n)));
    if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.matrix.col_range(n, 2 * n))
}

/// `true` when every column of `a` lies in the column space of `b`.
pub fn column_space_contains(b: &RatMatrix, a: &RatMatrix) -> bool {
    rank(&b.hstack(a)) == rank(b)
}

/// Dimension of the intersection of two column spaces.
pub fn intersection_dim(a: &RatMatrix, b: &RatMatrix) -> usize {
    rank(a) + rank(b) - rank(&a.hstack(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{rat, rat_matrix, ratio};

    #[test]
    fn rref_identity_keeps_all_pivots() {
        let id = RatMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn rref_rank_one() {
        let r = rref(&rat_matrix(2, 2, &[1, 1, 2, 2]));
        assert_eq!(r.matrix, rat_matrix(2, 2, &[1, 1, 0, 0]));
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn rref_zero_has_no_pivots() {
        let r = rref(&RatMatrix::zeros(2, 3));
        assert!(r.matrix.is_zero());
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_with_fractions() {
        let m = Matrix::from_rows(
            2,
            2,
            vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), ratio(1, 6)]],
        )
        .unwrap();
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.matrix.get(0, 1), &ratio(2, 3));
    }

    #[test]
    fn nullspace_of_sum_row() {
        let n = nullspace_basis(&rat_matrix(1, 2, &[1, 1]));
        assert_eq!(n, rat_matrix(2, 1, &[-1, 1]));
    }

    #[test]
    fn solve_identity_and_scalar() {
        let b = vec![rat(3), rat(-2)];
        assert_eq!(solve(&RatMatrix::identity(2), &b).unwrap(), b);
        assert_eq!(solve(&rat_matrix(1, 1, &[2]), &[rat(1)]).unwrap(), vec![ratio(1, 2)]);
    }

    #[test]
    fn inconsistent_system_has_witness() {
        let m = rat_matrix(2, 1, &[1, 1]);
        let b = vec![rat(1), rat(0)];
        let err = solve(&m, &b).unwrap_err();
        let y = &err.witness;
        assert!((&y[0] * rat(1) + &y[1] * rat(1)).is_zero());
        assert!(!(&y[0] * &b[0] + &y[1] * &b[1]).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = rat_matrix(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&m).unwrap();
        assert_eq!(m.matmul(&inv), RatMatrix::identity(2));
        assert!(inverse(&rat_matrix(2, 2, &[1, 1, 1, 1])).is_none());
    }
}
