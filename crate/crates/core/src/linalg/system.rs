//! Linear systems whose unknowns are matrices.
//!
//! Each equation is a sum of terms `L · X_b · R` over unknown blocks `X_b`
//! equal to a right-hand side. Vectorization is column-major, so
//! `vec(L X R) = (Rᵀ ⊗ L) vec(X)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::ops::Mul;

use super::integer::{integer_nullspace, solve_integer};
use super::matrix::Matrix;
use super::rational::{nullspace_basis, solve};

#[derive(Clone, Debug)]
pub struct Term<T> {
    pub block: usize,
    pub left: Matrix<T>,
    pub right: Matrix<T>,
}

#[derive(Clone, Debug)]
pub struct Equation<T> {
    pub terms: Vec<Term<T>>,
    pub rhs: Matrix<T>,
}

#[derive(Clone, Debug, Default)]
pub struct MatrixSystem<T> {
    blocks: Vec<(usize, usize)>,
    equations: Vec<Equation<T>>,
}

/// A particular solution and generators of the homogeneous solution set, both
/// split back into blocks.
#[derive(Clone, Debug)]
pub struct BlockSolution<T> {
    pub particular: Vec<Matrix<T>>,
    pub homogeneous: Vec<Vec<Matrix<T>>>,
}

impl<T: Clone> MatrixSystem<T> {
    pub fn new() -> Self {
        MatrixSystem {
            blocks: Vec::new(),
            equations: Vec::new(),
        }
    }

    /// Adds an unknown `rows x cols` block and returns its index.
    pub fn block(&mut self, rows: usize, cols: usize) -> usize {
        self.blocks.push((rows, cols));
        self.blocks.len() - 1
    }

    pub fn equation(&mut self, terms: Vec<Term<T>>, rhs: Matrix<T>) {
        for t in &terms {
            let (r, c) = self.blocks[t.block];
            assert_eq!(t.left.cols(), r, "term left factor mismatch");
            assert_eq!(t.right.rows(), c, "term right factor mismatch");
            assert_eq!((t.left.rows(), t.right.cols()), rhs.shape(), "term/rhs mismatch");
        }
        self.equations.push(Equation { terms, rhs });
    }
}

impl<T> MatrixSystem<T>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|(r, c)| {
                let o = acc;
                acc += r * c;
                o
            })
            .collect()
    }

    fn unknowns(&self) -> usize {
        self.blocks.iter().map(|(r, c)| r * c).sum()
    }

    /// Coefficient matrix and right-hand side of the vectorized system.
    pub fn vectorize(&self) -> (Matrix<T>, Vec<T>) {
        let offsets = self.offsets();
        let total_rows: usize = self.equations.iter().map(|e| e.rhs.rows() * e.rhs.cols()).sum();
        let mut coeff: Matrix<T> = Matrix::zeros(total_rows, self.unknowns());
        let mut rhs = Vec::with_capacity(total_rows);
        let mut row0 = 0;
        for eq in &self.equations {
            for term in &eq.terms {
                let k = term.right.transpose().kron(&term.left);
                let off = offsets[term.block];
                for i in 0..k.rows() {
                    for j in 0..k.cols() {
                        let v = k.get(i, j);
                        if v.is_zero() {
                            continue;
                        }
                        let cur = coeff.get(row0 + i, off + j).clone();
                        coeff.set(row0 + i, off + j, cur + v.clone());
                    }
                }
            }
            for j in 0..eq.rhs.cols() {
                rhs.extend(eq.rhs.column(j));
            }
            row0 += eq.rhs.rows() * eq.rhs.cols();
        }
        (coeff, rhs)
    }

    fn split(&self, x: &[T]) -> Vec<Matrix<T>> {
        let offsets = self.offsets();
        self.blocks
            .iter()
            .zip(offsets)
            .map(|(&(r, c), off)| Matrix::from_fn(r, c, |i, j| x[off + j * r + i].clone()))
            .collect()
    }
}

impl MatrixSystem<BigRational> {
    pub fn solve(&self) -> Option<BlockSolution<BigRational>> {
        let (a, b) = self.vectorize();
        let x = solve(&a, &b).ok()?;
        let null = nullspace_basis(&a);
        Some(BlockSolution {
            particular: self.split(&x),
            homogeneous: (0..null.cols()).map(|j| self.split(&null.column(j))).collect(),
        })
    }
}

impl MatrixSystem<BigInt> {
    pub fn solve(&self) -> Option<BlockSolution<BigInt>> {
        let (a, b) = self.vectorize();
        let x = solve_integer(&a, &b)?;
        let null = integer_nullspace(&a);
        Some(BlockSolution {
            particular: self.split(&x),
            homogeneous: (0..null.cols()).map(|j| self.split(&null.column(j))).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{int_matrix, rat_matrix, IntMatrix, RatMatrix};

    #[test]
    fn left_factor_equation() {
        // [[1, 1]] X = [[2]] with X 2x1
        let mut sys = MatrixSystem::new();
        let x = sys.block(2, 1);
        sys.equation(
            vec![Term { block: x, left: rat_matrix(1, 2, &[1, 1]), right: RatMatrix::identity(1) }],
            rat_matrix(1, 1, &[2]),
        );
        let sol = sys.solve().unwrap();
        let p = &sol.particular[0];
        assert_eq!(rat_matrix(1, 2, &[1, 1]).matmul(p), rat_matrix(1, 1, &[2]));
        assert_eq!(sol.homogeneous.len(), 1);
    }

    #[test]
    fn integer_blocks_with_slack() {
        // 2 x - 3 w = 1 over Z
        let mut sys = MatrixSystem::new();
        let x = sys.block(1, 1);
        let w = sys.block(1, 1);
        sys.equation(
            vec![
                Term { block: x, left: int_matrix(1, 1, &[2]), right: IntMatrix::identity(1) },
                Term { block: w, left: int_matrix(1, 1, &[-3]), right: IntMatrix::identity(1) },
            ],
            int_matrix(1, 1, &[1]),
        );
        let sol = sys.solve().unwrap();
        let two_x = BigInt::from(2) * sol.particular[0].get(0, 0);
        let three_w = BigInt::from(3) * sol.particular[1].get(0, 0);
        assert_eq!(two_x - three_w, BigInt::from(1));
    }
}
