//! Smith normal form and integer lattice routines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal, `s_i | s_{i+1}`,
/// all `s_i >= 0`, zeros last. The inverses are tracked alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `s_0, ..., s_{min(m,n)-1}`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k).map(|i| self.s.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for mat in [&mut self.a, &mut self.u] {
            let src = mat[j].clone();
            for (x, y) in mat[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            let t = c * &row[i];
            row[j] -= t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = c * &row[j];
            row[i] += t;
        }
        let src = self.v_inv[i].clone();
        for (x, y) in self.v_inv[j].iter_mut().zip(src) {
            *x -= c * y;
        }
    }
}

fn to_matrix(rows: usize, cols: usize, m: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_rows(rows, cols, m).expect("shape")
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = m.shape();
    let mut w = Work {
        a: m.to_rows(),
        u: ident(rows),
        u_inv: ident(rows),
        v: ident(cols),
        v_inv: ident(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if w.a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(w, rows, cols);
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                clean &= w.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                clean &= w.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let p = w.a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w, rows, cols)
}

fn finish(w: Work, rows: usize, cols: usize) -> SnfDecomposition {
    SnfDecomposition {
        u: to_matrix(rows, rows, w.u),
        u_inv: to_matrix(rows, rows, w.u_inv),
        s: to_matrix(rows, cols, w.a),
        v: to_matrix(cols, cols, w.v),
        v_inv: to_matrix(cols, cols, w.v_inv),
    }
}

/// Some integer solution of `M x = b`, or `None` when none exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "solve_integer: rhs length mismatch");
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            if !c.is_multiple_of(&d) {
                return None;
            }
            y[i] = c / &d;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Columns form a basis of the lattice `{x in Z^n : M x = 0}`.
pub fn integer_nullspace(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let r = snf.rank();
    snf.v.col_range(r, m.cols())
}

/// Columns form a basis of the lattice spanned by the columns of `g`.
pub fn lattice_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let r = snf.rank();
    g.matmul(&snf.v).col_range(0, r)
}

/// `true` when `v` lies in the lattice spanned by the columns of `g`.
pub fn lattice_contains(g: &IntMatrix, v: &[BigInt]) -> bool {
    solve_integer(g, v).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_matrix;

    fn check(m: &IntMatrix) -> SnfDecomposition {
        let d = smith_normal_form(m);
        assert_eq!(d.u.matmul(m).matmul(&d.v), d.s);
        assert_eq!(d.u.matmul(&d.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(d.v.matmul(&d.v_inv), IntMatrix::identity(m.cols()));
        assert_eq!(d.u_inv.matmul(&d.s).matmul(&d.v_inv), *m);
        d
    }

    #[test]
    fn diag_two_three() {
        let d = check(&int_matrix(2, 2, &[2, 0, 0, 3]));
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn identity_is_fixed() {
        let d = check(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_and_zero() {
        let d = check(&int_matrix(2, 3, &[2, 4, 4, -6, 6, 12]));
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(6)]);
        let z = check(&IntMatrix::zeros(2, 3));
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn parity_obstruction() {
        let m = int_matrix(1, 1, &[2]);
        assert!(solve_integer(&m, &[BigInt::from(1)]).is_none());
        assert_eq!(solve_integer(&m, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
    }

    #[test]
    fn nullspace_and_lattice() {
        let m = int_matrix(1, 2, &[2, 4]);
        let n = integer_nullspace(&m);
        assert_eq!(n.cols(), 1);
        assert!(m.matmul(&n).is_zero());
        let g = int_matrix(1, 2, &[4, 6]);
        let b = lattice_basis(&g);
        assert_eq!(b.cols(), 1);
        assert_eq!(b.get(0, 0).abs(), BigInt::from(2));
    }
}
