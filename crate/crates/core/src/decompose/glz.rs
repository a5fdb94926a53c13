use num_bigint::BigInt;
use num_traits::One;

use crate::endo::{IntMatrix, RowOp};
use crate::error::{Error, Result};

/// An elementary integer matrix, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryMove {
    /// `I + factor · e_{row,col}`, `row ≠ col`.
    Transvection { row: usize, col: usize, factor: BigInt },
    /// Permutation matrix of the transposition `(a b)`.
    Swap(usize, usize),
    /// `I` with the `(a, a)` entry replaced by `−1`.
    Sign(usize),
}

impl ElementaryMove {
    pub fn matrix(&self, n: usize) -> IntMatrix {
        let op = match self {
            ElementaryMove::Transvection { row, col, factor } => {
                RowOp::AddMultiple { target: *row, source: *col, factor: factor.clone() }
            }
            ElementaryMove::Swap(a, b) => RowOp::Swap(*a, *b),
            ElementaryMove::Sign(a) => RowOp::Negate(*a),
        };
        op.matrix(n)
    }

    /// Indices whose basis vector the move touches.
    pub fn support(&self) -> Vec<usize> {
        match self {
            ElementaryMove::Transvection { row, col, .. } => vec![*row, *col],
            ElementaryMove::Swap(a, b) => vec![*a, *b],
            ElementaryMove::Sign(a) => vec![*a],
        }
    }

    fn from_op(op: &RowOp) -> Self {
        match op {
            RowOp::AddMultiple { target, source, factor } => {
                ElementaryMove::Transvection { row: *target, col: *source, factor: factor.clone() }
            }
            RowOp::Swap(a, b) => ElementaryMove::Swap(*a, *b),
            RowOp::Negate(a) => ElementaryMove::Sign(*a),
        }
    }
}

/// Writes a unimodular matrix as an ordered product `M₁ M₂ ⋯ M_t` of
/// transvections, swaps and at most one sign change.
///
/// Euclidean row reduction gives `op_s ⋯ op₁ A = diag(±1)`, so
/// `A = op₁⁻¹ ⋯ op_s⁻¹ · diag(±1)`; pairs of `−1` entries are rewritten as
/// `R²` with the quarter turn `R = E_ij(1) E_ji(−1) E_ij(1)`.
pub fn factor_glz(a: &IntMatrix) -> Result<Vec<ElementaryMove>> {
    if !a.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let (ops, signs) = a.reduce_to_signs()?;
    let mut moves: Vec<ElementaryMove> =
        ops.iter().map(|op| ElementaryMove::from_op(&op.inverse())).collect();
    let negative: Vec<usize> = (0..signs.len()).filter(|&i| signs[i]).collect();
    for pair in negative.chunks(2) {
        match *pair {
            [i, j] => {
                let quarter = [
                    ElementaryMove::Transvection { row: i, col: j, factor: BigInt::one() },
                    ElementaryMove::Transvection { row: j, col: i, factor: -BigInt::one() },
                    ElementaryMove::Transvection { row: i, col: j, factor: BigInt::one() },
                ];
                moves.extend(quarter.iter().cloned());
                moves.extend(quarter);
            }
            [i] => moves.push(ElementaryMove::Sign(i)),
            _ => unreachable!(),
        }
    }
    Ok(moves)
}

/// Ordered product of the moves' matrices.
pub fn product(n: usize, moves: &[ElementaryMove]) -> IntMatrix {
    moves.iter().fold(IntMatrix::identity(n), |acc, m| acc.mul(&m.matrix(n)))
}
