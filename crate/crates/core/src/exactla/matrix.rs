use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{Field, Scalar, Subspace};

/// A coordinate vector over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: Field,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn zeros(field: Field, len: usize) -> Self {
        Vector {
            field,
            entries: vec![field.zero(); len],
        }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(field: Field, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn new(field: Field, entries: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Vector { field, entries })
    }

    pub fn from_ints(field: Field, ints: &[i64]) -> Self {
        Vector {
            field,
            entries: ints.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + &(c * b);
            }
        }
    }

    pub fn neg(&self) -> Vector {
        self.scale(&-&self.field.one())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Vector {
            field: self.field,
            entries,
        }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries[range].to_vec(),
        }
    }

    /// Whether `self` and `other` are linearly dependent.
    pub fn is_parallel_to(&self, other: &Vector) -> bool {
        let n = self.len();
        for k in 0..n {
            for l in (k + 1)..n {
                let minor = &(&self[k] * &other[l]) - &(&self[l] * &other[k]);
                if !minor.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// The unique `c` with `self = c * other`, when `other` is nonzero and
    /// the vectors are parallel.
    pub fn ratio_to(&self, other: &Vector) -> Option<Scalar> {
        let k = other.entries.iter().position(|x| !x.is_zero())?;
        let c = &self[k] * &other[k].inv()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.entries[i]
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over one field, stored row-major.
///
/// Linear maps act on column vectors: the image of the `j`-th domain basis
/// vector is column `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all entries must share `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(Matrix {
            field,
            rows: n_rows,
            cols,
            data,
        })
    }

    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    /// Rows given as vectors; `cols` is needed when the list is empty.
    pub fn from_row_vectors(field: Field, cols: usize, rows: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.field() != field {
                return Err(Error::FieldMismatch(field, r.field()));
            }
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for j in 0..cols {
                m.set(i, j, r[j].clone());
            }
        }
        Ok(m)
    }

    /// Columns given as vectors; `rows` is needed when the list is empty.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vector]) -> Result<Self> {
        Ok(Self::from_row_vectors(field, rows, cols)?.transpose())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.data[i * self.cols..(i + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector {
            field: self.field,
            entries: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn check_field(&self, other: Field) -> Result<()> {
        if self.field != other {
            return Err(Error::FieldMismatch(self.field, other));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        self.check_field(v.field())?;
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = Vector::zeros(self.field, self.rows);
        for i in 0..self.rows {
            let mut acc = self.field.zero();
            for j in 0..self.cols {
                let (a, b) = (self.get(i, j), &v[j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `self` stacked above `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix {
            field: self.field,
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Sub-block with the given row and column ranges.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (bi, i) in rows.clone().enumerate() {
            for (bj, j) in cols.clone().enumerate() {
                out.set(bi, bj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).ok()?;
        let (r, pivots) = rref(&aug);
        if pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        Some(r.block(0..n, n..2 * n))
    }

    /// A matrix `P` with `P * self = I`, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let k = self.cols;
        let (_, pivots) = rref(&self.transpose());
        if pivots.len() < k {
            return None;
        }
        // Rows of `self` indexed by the pivots of its transpose are independent.
        let square = Matrix::from_row_vectors(
            self.field,
            k,
            &pivots.iter().map(|&r| self.row(r)).collect::<Vec<_>>(),
        )
        .ok()?;
        let inv = square.inverse()?;
        let mut select = Matrix::zeros(self.field, k, self.rows);
        for (i, &r) in pivots.iter().enumerate() {
            select.set(i, r, self.field.one());
        }
        inv.mul(&select).ok()
    }

    /// The null space `{x : self * x = 0}` as a subspace of the column space.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = rref(self);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = Vector::unit(self.field, self.cols, f);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f);
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, &basis).expect("kernel vectors share the field")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form and the pivot columns.
///
/// The field is uniform by construction of [`Matrix`]; the checked
/// variant [`rref_checked`] exists for callers assembling rows from
/// untrusted sources.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, row * a.cols + j);
            }
        }
        let inv = a.get(row, col).inv().expect("nonzero pivot");
        for j in col..a.cols {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for j in col..a.cols {
                let pv = a.get(row, j);
                if !pv.is_zero() {
                    let v = a.get(r, j) - &(&factor * pv);
                    a.set(r, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// `rref` over rows that may come from different fields.
pub fn rref_checked(field: Field, rows: Vec<Vec<Scalar>>) -> Result<(Matrix, Vec<usize>)> {
    let m = Matrix::from_rows(field, rows)?;
    Ok(rref(&m))
}

/// Outcome of solving `a x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    NoSolution,
    Affine { particular: Vector, kernel: Subspace },
}

/// Solves `a x = b` exactly. The particular solution sets every free
/// variable to zero.
pub fn solve(a: &Matrix, b: &Vector) -> Result<Solution> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field(), b.field()));
    }
    if a.rows() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let bcol = Matrix::from_columns(a.field(), b.len(), std::slice::from_ref(b))?;
    let aug = a.hstack(&bcol)?;
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols()) {
        return Ok(Solution::NoSolution);
    }
    let mut x = Vector::zeros(a.field(), a.cols());
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r.get(row, a.cols()).clone();
    }
    Ok(Solution::Affine {
        particular: x,
        kernel: a.kernel(),
    })
}
