//! Dense matrices over an exact field with the handful of operations the
//! oracle needs: row reduction, rank, kernels, cokernels and solving.

use crate::field::Field;

#[derive(Debug, Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: entries.iter().map(|&e| field.from_i64(e)).collect(),
        }
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| self.field.add(self.get(r, c), other.get(r, c)))
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| self.field.mul(self.get(r, c), s))
    }

    pub fn neg(&self) -> Self {
        Matrix::from_fn(&self.field, self.rows, self.cols, |r, c| self.field.neg(self.get(r, c)))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    /// `self` stacked above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(&self.field, self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }

    pub fn block_diag(&self, other: &Self) -> Self {
        let f = &self.field;
        Matrix::from_fn(f, self.rows + other.rows, self.cols + other.cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                f.zero()
            }
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Matrix::from_fn(&self.field, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(&self.field, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(m.get(row, c), &inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), &f.mul(&factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Columns form a basis of the right null space (`cols × nullity`).
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let Rref { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// A surjection `q` from the codomain onto the cokernel, so that
    /// `q * self == 0` and `q` has full row rank `rows - rank`.
    pub fn cokernel_projection(&self) -> Self {
        self.transpose().kernel().transpose()
    }

    /// Columns form a basis of the column space.
    pub fn image_basis(&self) -> Self {
        let pivots = self.rref().pivots;
        self.select_cols(&pivots)
    }

    /// Some `x` with `self * x == b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows);
        let f = &self.field;
        let aug = self.hstack(b);
        let Rref { matrix: r, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x.set(pc, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// A right inverse of a matrix with full row rank.
    pub fn right_inverse(&self) -> Option<Self> {
        self.solve(&Matrix::identity(&self.field, self.rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(rows: usize, cols: usize, e: &[i64]) -> Matrix<Rationals> {
        Matrix::from_i64(&Rationals, rows, cols, e)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(q(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(q(2, 3, &[1, 0, 1, 0, 1, 1]).rank(), 2);
        assert_eq!(q(0, 3, &[]).rank(), 0);
        assert_eq!(q(3, 0, &[]).rank(), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let gf2 = PrimeField::new(2).unwrap();
        let m = [1, 1, 1, -1];
        assert_eq!(q(2, 2, &m).rank(), 2);
        assert_eq!(Matrix::from_i64(&gf2, 2, 2, &m).rank(), 1);
    }

    #[test]
    fn kernel_and_cokernel() {
        let a = q(2, 3, &[1, 1, 0, 0, 1, 1]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        let b = q(3, 1, &[1, 1, 1]);
        let c = b.cokernel_projection();
        assert_eq!(c.rows(), 2);
        assert!(c.mul(&b).is_zero());
        assert_eq!(c.rank(), 2);
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = q(2, 2, &[1, 1, 0, 1]);
        let b = q(2, 1, &[3, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let singular = q(2, 2, &[1, 1, 1, 1]);
        assert!(singular.solve(&q(2, 1, &[0, 1])).is_none());
        let wide = q(1, 2, &[1, 1]);
        let r = wide.right_inverse().unwrap();
        assert_eq!(wide.mul(&r), Matrix::identity(&Rationals, 1));
    }

    #[test]
    fn stacking() {
        let a = q(1, 1, &[1]);
        let b = q(1, 1, &[2]);
        assert_eq!(a.hstack(&b), q(1, 2, &[1, 2]));
        assert_eq!(a.vstack(&b), q(2, 1, &[1, 2]));
        assert_eq!(a.block_diag(&b), q(2, 2, &[1, 0, 0, 2]));
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, e) in small_matrix()) {
            let m = q(r, c, &e);
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), c);
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
            let co = m.cokernel_projection();
            prop_assert_eq!(co.rows(), r - m.rank());
            prop_assert!(co.mul(&m).is_zero());
        }

        #[test]
        fn rank_of_transpose((r, c, e) in small_matrix()) {
            let m = q(r, c, &e);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            let g = PrimeField::new(5).unwrap();
            let mg = Matrix::from_i64(&g, r, c, &e);
            prop_assert_eq!(mg.rank(), mg.transpose().rank());
        }

        #[test]
        fn solve_recovers_image((r, c, e) in small_matrix(), seed in prop::collection::vec(-3i64..=3, 5)) {
            let m = q(r, c, &e);
            let x0 = q(c, 1, &seed[..c]);
            let b = m.mul(&x0);
            let x = m.solve(&b).unwrap();
            prop_assert_eq!(m.mul(&x), b);
        }
    }
}
