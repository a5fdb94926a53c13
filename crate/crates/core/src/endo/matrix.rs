use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense square integer matrix, row-major, 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// An elementary row operation, acting by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    /// `row[target] += factor · row[source]`
    AddMultiple { target: usize, source: usize, factor: BigInt },
    Swap(usize, usize),
    Negate(usize),
}

impl RowOp {
    pub fn inverse(&self) -> RowOp {
        match self {
            RowOp::AddMultiple { target, source, factor } => {
                RowOp::AddMultiple { target: *target, source: *source, factor: -factor }
            }
            other => other.clone(),
        }
    }

    /// The elementary matrix `E` with `E · M = op(M)`.
    pub fn matrix(&self, n: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        m.apply_row_op(self);
        m
    }
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = IntMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "square matrix expected");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix::identity(self.n)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Principal submatrix on the given (sorted, 0-based) indices.
    pub fn principal(&self, idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn apply_row_op(&mut self, op: &RowOp) {
        let n = self.n;
        match op {
            RowOp::AddMultiple { target, source, factor } => {
                for j in 0..n {
                    let delta = self.get(*source, j) * factor;
                    self.data[target * n + j] += delta;
                }
            }
            RowOp::Swap(a, b) => self.swap_rows(*a, *b),
            RowOp::Negate(a) => {
                for j in 0..n {
                    let v = -self.get(*a, j);
                    self.set(*a, j, v);
                }
            }
        }
    }

    /// Euclidean row reduction of a unimodular matrix to a diagonal sign
    /// matrix using row additions only: returns the operations
    /// `op₁, …, op_s` in application order and the diagonal signs, with
    /// `op_s ⋯ op₁ · A = diag(signs)`.
    pub fn reduce_to_signs(&self) -> Result<(Vec<RowOp>, Vec<bool>)> {
        let n = self.n;
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut record = |m: &mut IntMatrix, op: RowOp| {
            m.apply_row_op(&op);
            ops.push(op);
        };
        for col in 0..n {
            loop {
                let pivot = (col..n)
                    .filter(|&r| !m.get(r, col).is_zero())
                    .min_by_key(|&r| m.get(r, col).abs())
                    .ok_or(Error::NotUnimodular)?;
                let mut done = true;
                for r in col..n {
                    if r == pivot || m.get(r, col).is_zero() {
                        continue;
                    }
                    let q = m.get(r, col).div_floor(m.get(pivot, col));
                    record(&mut m, RowOp::AddMultiple { target: r, source: pivot, factor: -q });
                    if !m.get(r, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    // move the pivot up with two transvections rather than a swap
                    if pivot != col {
                        let one = BigInt::one();
                        record(&mut m, RowOp::AddMultiple { target: col, source: pivot, factor: one.clone() });
                        record(&mut m, RowOp::AddMultiple { target: pivot, source: col, factor: -one });
                    }
                    break;
                }
            }
            if !m.get(col, col).abs().is_one() {
                return Err(Error::NotUnimodular);
            }
            let pivot_value = m.get(col, col).clone();
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = -(m.get(r, col) * &pivot_value);
                record(&mut m, RowOp::AddMultiple { target: r, source: col, factor });
            }
        }
        let signs = (0..n).map(|i| m.get(i, i).is_negative()).collect();
        Ok((ops, signs))
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let (ops, signs) = self.reduce_to_signs()?;
        let mut inv = IntMatrix::identity(self.n);
        for op in &ops {
            inv.apply_row_op(op);
        }
        for (i, neg) in signs.iter().enumerate() {
            if *neg {
                inv.apply_row_op(&RowOp::Negate(i));
            }
        }
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).det(), 1.into());
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).det(), (-1).into());
        assert_eq!(IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).det(), 2.into());
        let m = IntMatrix::from_rows(&[vec![0, 2, 1], vec![3, 1, 4], vec![1, 5, 9]]);
        // cofactor expansion along the first row, whose leading entry is 0
        assert_eq!(m.det(), (-2 * (27 - 4) + (15 - 1)).into());
        assert_eq!(IntMatrix::zeros(0).det(), 1.into());
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_rows(&[vec![2, 1, 0], vec![1, 1, 3], vec![0, 0, 1]]);
        assert!(m.is_unimodular());
        let inv = m.inverse_unimodular().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert_eq!(
            IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).inverse_unimodular(),
            Err(Error::NotUnimodular)
        );
    }
}
