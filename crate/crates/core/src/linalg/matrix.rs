use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{FieldSpec, LinalgError, Scalar};

/// Dense row-major matrix over one exact field.
///
/// Construction does not inspect entry fields; every linear-algebra routine
/// does, and fails with [`LinalgError::FieldMismatch`] on foreign entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub echelon: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Like [`Matrix::from_rows`] with an explicit column count, so that
    /// zero-row matrices keep their width.
    pub fn from_row_vecs(
        field: FieldSpec,
        cols: usize,
        rows: Vec<Vec<Scalar>>,
    ) -> Result<Self, LinalgError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn check_field(&self) -> Result<(), LinalgError> {
        check_entries(self.field, &self.data)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, LinalgError> {
        if self.field != rhs.field {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: rhs.field,
            });
        }
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        self.check_field()?;
        rhs.check_field()?;
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        check_entries(self.field, v)?;
        Ok(self.apply(v))
    }

    /// Unchecked matrix-vector product for hot loops whose inputs are already
    /// validated.
    pub(crate) fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Result<Rref, LinalgError> {
        self.check_field()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(row, c);
                    if !sub.is_zero() {
                        let idx = r * m.cols + c;
                        m.data[idx] -= &sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok(Rref {
            rank: pivots.len(),
            echelon: m,
            pivots,
        })
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.rank)
    }

    /// Basis of the right null space. Each vector has a 1 in its own free
    /// column and 0 in the other free columns.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Scalar>>, LinalgError> {
        let Rref {
            echelon, pivots, ..
        } = self.rref()?;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -echelon.get(r, free);
                }
                v
            })
            .collect();
        Ok(basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

fn check_entries(field: FieldSpec, entries: &[Scalar]) -> Result<(), LinalgError> {
    match entries.iter().find(|x| x.field() != field) {
        Some(x) => Err(LinalgError::FieldMismatch {
            expected: field,
            found: x.field(),
        }),
        None => Ok(()),
    }
}

/// Solves `sum c_i basis_i = v`. Returns `None` when `v` is outside the span.
pub fn in_span(v: &[Scalar], basis: &[Vec<Scalar>]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    let len = v.len();
    if let Some(b) = basis.iter().find(|b| b.len() != len) {
        return Err(LinalgError::LengthMismatch {
            expected: len,
            found: b.len(),
        });
    }
    let field = match v.first().or_else(|| basis.iter().flatten().next()) {
        Some(x) => x.field(),
        None => return Ok(Some(Vec::new())),
    };
    let k = basis.len();
    let mut rows = Vec::with_capacity(len);
    for i in 0..len {
        let mut row: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
        row.push(v[i].clone());
        rows.push(row);
    }
    let aug = Matrix::from_row_vecs(field, k + 1, rows)?;
    let Rref {
        echelon, pivots, ..
    } = aug.rref()?;
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coords = vec![field.zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        coords[p] = echelon.get(r, k).clone();
    }
    Ok(Some(coords))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(Scalar::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.row_vecs())?;
        st.end()
    }
}
