//! Matrices of polynomials, determinants and cofactors.

use crate::error::Error;
use crate::Result;

use super::poly::{MultiPoly, VarSet};

/// Rectangular grid of polynomials over a shared variable set.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            entries.extend(r);
        }
        if let Some(first) = entries.first() {
            let vars = first.vars().clone();
            assert!(
                entries.iter().all(|e| *e.vars() == vars),
                "entries must share one variable set"
            );
        }
        PolyMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn zero(vars: &VarSet, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![MultiPoly::zero(vars); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn vars(&self) -> &VarSet {
        self.entries[0].vars()
    }

    /// Submatrix keeping the listed rows and columns, in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut out = Vec::with_capacity(rows.len());
        for &i in rows {
            let mut row = Vec::with_capacity(cols.len());
            for &j in cols {
                row.push(self.at(i, j).clone());
            }
            out.push(row);
        }
        PolyMatrix::from_rows(out)
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        Ok(det_rec(self))
    }

    /// Signed cofactor `(-1)^(i+j) * minor(i, j)` (0-based indices).
    pub fn cofactor(&self, i: usize, j: usize) -> Result<MultiPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange(i, j));
        }
        let keep_rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let keep_cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        let minor = det_rec(&self.submatrix(&keep_rows, &keep_cols));
        Ok(if (i + j) % 2 == 0 { minor } else { minor.neg() })
    }
}

fn det_rec(m: &PolyMatrix) -> MultiPoly {
    let n = m.rows();
    match n {
        0 => MultiPoly::one(m.vars()),
        1 => m.at(0, 0).clone(),
        2 => m
            .at(0, 0)
            .mul(m.at(1, 1))
            .sub(&m.at(0, 1).mul(m.at(1, 0))),
        _ => {
            let mut acc = MultiPoly::zero(m.vars());
            let rest: Vec<usize> = (1..n).collect();
            for j in 0..n {
                let e = m.at(0, j);
                if e.is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = det_rec(&m.submatrix(&rest, &cols));
                let term = e.mul(&minor);
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

/// Determinant of a 6x6 matrix via the generalized Laplace expansion:
/// signed sum over the 20 row triples of products of complementary 3x3
/// minors taken from the first three and last three columns.
pub fn det_laplace3(m: &PolyMatrix) -> Result<MultiPoly> {
    if m.rows() != 6 || m.cols() != 6 {
        return Err(Error::NotSixBySix);
    }
    let left: Vec<usize> = vec![0, 1, 2];
    let right: Vec<usize> = vec![3, 4, 5];
    let mut acc = MultiPoly::zero(m.vars());
    for i1 in 0..6 {
        for i2 in (i1 + 1)..6 {
            for i3 in (i2 + 1)..6 {
                let picked = [i1, i2, i3];
                let rest: Vec<usize> =
                    (0..6).filter(|r| !picked.contains(r)).collect();
                let a = det_rec(&m.submatrix(&picked, &left));
                let b = det_rec(&m.submatrix(&rest, &right));
                let term = a.mul(&b);
                // 1-based row indices in the sign, as in the expansion formula
                let sign = (i1 + 1) + (i2 + 1) + (i3 + 1);
                acc = if sign % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
        }
    }
    Ok(acc)
}
