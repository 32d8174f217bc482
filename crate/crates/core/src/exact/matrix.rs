//! Dense exact matrices over the rationals and reduced row echelon form.
//!
//! The reduced echelon form is unique per row space, so the nonzero echelon
//! rows of a matrix serve as a canonical key for the subspace its rows span.

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter(
                "matrix rows must all have the declared column count".into(),
            ));
        }
        Ok(QMatrix { rows, cols })
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Reduced row echelon form together with the pivot columns. The rank is
    /// the number of pivots; the row space is preserved.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let inv = rows[rank][col].recip().expect("pivot is nonzero");
            for entry in rows[rank].iter_mut() {
                *entry = &*entry * &inv;
            }
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (entry, p) in row.iter_mut().zip(&pivot) {
                    let delta = p * &factor;
                    *entry = &*entry - &delta;
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        (
            QMatrix {
                rows,
                cols: self.cols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of the
    /// row space, usable as a dedup key.
    pub fn row_space_basis(&self) -> Vec<Vec<Rational>> {
        let (echelon, pivots) = self.rref();
        echelon.rows[..pivots.len()].to_vec()
    }
}

/// Reduces `row` against echelon basis rows in place and reports whether it
/// lands in their span.
pub fn in_row_space(row: &[Rational], basis: &[Vec<Rational>]) -> bool {
    let mut work = row.to_vec();
    for basis_row in basis {
        let lead = basis_row
            .iter()
            .position(|x| !x.is_zero())
            .expect("echelon basis rows are nonzero");
        if work[lead].is_zero() {
            continue;
        }
        let factor = work[lead].clone();
        for (w, b) in work.iter_mut().zip(basis_row) {
            let delta = b * &factor;
            *w = &*w - &delta;
        }
    }
    work.iter().all(Rational::is_zero)
}
