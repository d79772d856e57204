use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::matrix::rref;
use crate::exactla::{Field, Matrix, Vector};

/// A linear subspace of `K^n`, stored by its reduced row echelon basis.
///
/// RREF is canonical, so derived equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_row_vectors(field, ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: Field, ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vector> = indices
            .iter()
            .map(|&i| Vector::unit(field, ambient_dim, i))
            .collect();
        Self::span(field, ambient_dim, &vs).expect("unit vectors")
    }

    pub fn row_space(m: &Matrix) -> Self {
        let (r, pivots) = rref(m);
        let basis = r.block(0..pivots.len(), 0..m.cols());
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// The RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field(), other.field()));
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    /// Coordinates of `v` with respect to the RREF basis, or `None` when
    /// `v` is not in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if v.len() != self.ambient_dim || v.field() != self.field() {
            return None;
        }
        let coords = Vector::new(
            self.field(),
            self.pivots.iter().map(|&p| v[p].clone()).collect(),
        )
        .ok()?;
        (self.from_coordinates(&coords) == *v).then_some(coords)
    }

    /// `sum_i c_i b_i` over the RREF basis.
    pub fn from_coordinates(&self, coords: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field(), self.ambient_dim);
        for (i, c) in coords.iter().enumerate() {
            out.add_scaled(c, &self.basis.row(i));
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.check_compatible(other).is_ok()
            && other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus: row reduce `[[A, A], [B, 0]]`; rows with a vanishing left
    /// half carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let f = self.field();
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(f, other.dim(), n))?;
        let (r, pivots) = rref(&top.vstack(&bottom)?);
        let rows: Vec<Vector> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| r.row(i).slice(n..2 * n))
            .collect();
        Subspace::span(f, n, &rows)
    }

    /// Image under a linear map given as a matrix acting on columns.
    pub fn image(&self, map: &Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.cols(),
            });
        }
        let imgs = self
            .basis_vectors()
            .iter()
            .map(|v| map.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(self.field(), map.rows(), &imgs)
    }

    /// Preimage `{x : map * x in self}`.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace> {
        if map.rows() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.rows(),
            });
        }
        // x maps into self iff the annihilator of self kills map * x.
        let ann = self.basis.kernel();
        let constraint = ann.basis().mul(map)?;
        Ok(constraint.kernel())
    }

    /// Lexicographic comparison of RREF bases, for deterministic tie-breaks.
    pub fn lex_cmp(&self, other: &Subspace) -> std::cmp::Ordering {
        let a: Vec<_> = self.basis_vectors();
        let b: Vec<_> = other.basis_vectors();
        for (x, y) in a.iter().zip(&b) {
            for (s, t) in x.iter().zip(y.iter()) {
                match s.cmp(t) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
        }
        a.len().cmp(&b.len())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.basis_vectors().iter().map(|v| v.to_string()).collect();
        write!(f, "span{{{}}}", parts.join(", "))
    }
}

/// A complement `c` of `inner` inside `outer`, so that `inner + c = outer`
/// and `inner ∩ c = 0`.
///
/// The choice is deterministic: write `inner` in coordinates of the RREF
/// basis of `outer`, reduce, and keep the `outer` basis vectors whose
/// coordinate positions are not pivots.
pub fn complement(inner: &Subspace, outer: &Subspace) -> Result<Subspace> {
    Ok(complement_basis(inner, outer)?.0)
}

/// Like [`complement`], also returning the chosen basis vectors in order.
pub fn complement_basis(inner: &Subspace, outer: &Subspace) -> Result<(Subspace, Vec<Vector>)> {
    inner.check_compatible(outer)?;
    let coords = inner
        .basis_vectors()
        .iter()
        .map(|v| outer.coordinates(v).ok_or(Error::NotContained))
        .collect::<Result<Vec<_>>>()?;
    let reduced = Subspace::span(inner.field(), outer.dim(), &coords)?;
    let outer_rows = outer.basis_vectors();
    let chosen: Vec<Vector> = (0..outer.dim())
        .filter(|i| !reduced.pivots.contains(i))
        .map(|i| outer_rows[i].clone())
        .collect();
    let space = Subspace::span(inner.field(), inner.ambient_dim, &chosen)?;
    Ok((space, chosen))
}

/// Every `k`-dimensional subspace of `GF(p)^n`, in order of pivot sets and
/// then free entries. `None` over the rationals.
pub fn all_subspaces(field: Field, n: usize, k: usize) -> Option<Vec<Subspace>> {
    let elems = field.elements()?;
    let mut out = Vec::new();
    if k > n {
        return Some(out);
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                ((pv[r] + 1)..n).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut m = Matrix::zeros(field, k, n);
            for (r, &p) in pivots.iter().enumerate() {
                m.set(r, p, field.one());
            }
            for (idx, &(r, c)) in free.iter().enumerate() {
                m.set(r, c, elems[digits[idx]].clone());
            }
            out.push(Subspace::row_space(&m));
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < elems.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        // next combination of pivot columns
        let mut i = k;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Coordinates for the quotient `outer / inner` on the deterministic
/// complement basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpace {
    outer: Subspace,
    inner: Subspace,
    /// Ambient vectors; the image of quotient basis vector `j` is column `j`.
    lift: Matrix,
    /// Maps ambient vectors in `outer` to quotient coordinates.
    project: Matrix,
}

impl QuotientSpace {
    pub fn new(outer: &Subspace, inner: &Subspace) -> Result<Self> {
        let (_, chosen) = complement_basis(inner, outer)?;
        let f = outer.field();
        let n = outer.ambient_dim();
        let k = chosen.len();
        let mut columns = chosen.clone();
        columns.extend(inner.basis_vectors());
        let full = Matrix::from_columns(f, n, &columns)?;
        let left = full.left_inverse().ok_or(Error::Singular)?;
        Ok(QuotientSpace {
            outer: outer.clone(),
            inner: inner.clone(),
            lift: Matrix::from_columns(f, n, &chosen)?,
            project: left.block(0..k, 0..n),
        })
    }

    pub fn dim(&self) -> usize {
        self.lift.cols()
    }

    pub fn outer(&self) -> &Subspace {
        &self.outer
    }

    pub fn inner(&self) -> &Subspace {
        &self.inner
    }

    /// Quotient coordinates of an ambient vector lying in `outer`.
    pub fn project(&self, v: &Vector) -> Result<Vector> {
        if !self.outer.contains(v) {
            return Err(Error::NotContained);
        }
        self.project.mul_vec(v)
    }

    /// The ambient representative on the complement basis.
    pub fn lift(&self, coords: &Vector) -> Result<Vector> {
        self.lift.mul_vec(coords)
    }

    /// Projection matrix (quotient dim × ambient dim), valid on `outer`.
    pub fn projection_matrix(&self) -> &Matrix {
        &self.project
    }

    /// Section matrix (ambient dim × quotient dim).
    pub fn section_matrix(&self) -> &Matrix {
        &self.lift
    }
}
