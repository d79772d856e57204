use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Scalar, Vector};

/// Which form of the Leibniz identity an algebra satisfies.
///
/// `Right`: `[x,[y,z]] = [[x,y],z] - [[x,z],y]` (right multiplications are
/// derivations). `Left`: `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` (left
/// multiplications are derivations). The two are exchanged by passing to the
/// opposite algebra; everything built on symmetrized brackets is blind to
/// the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Right,
    Left,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::Right => write!(f, "right"),
            Convention::Left => write!(f, "left"),
        }
    }
}

/// Structure constants `[e_i, e_j] = sum_k c_ijk e_k` of a bilinear
/// product, not yet known to satisfy any identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    field: Field,
    dim: usize,
    convention: Convention,
    /// `products[i * dim + j] = [e_i, e_j]`
    products: Vec<Vector>,
    basis_names: Option<Vec<String>>,
}

/// Outcome of checking the Leibniz identity on basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeibnizCheck {
    Ok,
    /// First failing triple in lexicographic order (0-based indices);
    /// `lhs` is `[e_i,[e_j,e_k]]`, `rhs` the other side of the identity.
    Counterexample {
        i: usize,
        j: usize,
        k: usize,
        lhs: Vector,
        rhs: Vector,
    },
}

impl LeibnizCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, LeibnizCheck::Ok)
    }
}

impl StructureTensor {
    /// The abelian (all-zero) product.
    pub fn zero(field: Field, dim: usize) -> Self {
        StructureTensor {
            field,
            dim,
            convention: Convention::Right,
            products: vec![Vector::zeros(field, dim); dim * dim],
            basis_names: None,
        }
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: names.len(),
            });
        }
        self.basis_names = Some(names);
        Ok(self)
    }

    /// Builds from `(i, j, [e_i, e_j])` entries (0-based); unlisted products are zero.
    pub fn from_products(
        field: Field,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let mut t = Self::zero(field, dim);
        for (i, j, v) in entries {
            t.set_product(i, j, v)?;
        }
        Ok(t)
    }

    /// Integer shorthand: `(i, j, &[(coeff, k)])`, 1-based indices as in
    /// the usual "non-zero multiplications" presentation.
    pub fn from_relations(field: Field, dim: usize, rels: &[(usize, usize, &[(i64, usize)])]) -> Self {
        let mut t = Self::zero(field, dim);
        for &(i, j, terms) in rels {
            let mut v = Vector::zeros(field, dim);
            for &(c, k) in terms {
                v[k - 1] = &v[k - 1] + &field.from_i64(c);
            }
            t.set_product(i - 1, j - 1, v).expect("indices in range");
        }
        t
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        if i >= self.dim || j >= self.dim {
            return Err(Error::Invalid(format!(
                "basis index out of range: ({}, {}) in dimension {}",
                i + 1,
                j + 1,
                self.dim
            )));
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field, v.field()));
        }
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        self.products[i * self.dim + j] = v;
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn basis_names(&self) -> Option<&[String]> {
        self.basis_names.as_deref()
    }

    /// Display name of basis vector `i` (0-based).
    pub fn name(&self, i: usize) -> String {
        match &self.basis_names {
            Some(n) => n[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    /// `[e_i, e_j]`
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.products[i * self.dim + j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.product(i, j)[k]
    }

    pub fn is_abelian(&self) -> bool {
        self.products.iter().all(Vector::is_zero)
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.field() != self.field {
            return Err(Error::FieldMismatch(self.field, v.field()));
        }
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                out.add_scaled(&(xi * yj), self.product(i, j));
            }
        }
        out
    }

    /// `[x, y] + [y, x]`
    pub fn symmetric_bracket(&self, x: &Vector, y: &Vector) -> Vector {
        self.bracket_unchecked(x, y).add(&self.bracket_unchecked(y, x))
    }

    /// Both sides of the identity at `(x, y, z)` under this tensor's convention.
    pub fn leibniz_sides(&self, x: &Vector, y: &Vector, z: &Vector) -> (Vector, Vector) {
        let b = |u: &Vector, v: &Vector| self.bracket_unchecked(u, v);
        let lhs = b(x, &b(y, z));
        let rhs = match self.convention {
            Convention::Right => b(&b(x, y), z).sub(&b(&b(x, z), y)),
            Convention::Left => b(&b(x, y), z).add(&b(y, &b(x, z))),
        };
        (lhs, rhs)
    }

    /// Checks the identity on all `n^3` basis triples (enough by trilinearity).
    pub fn check_leibniz(&self) -> LeibnizCheck {
        let n = self.dim;
        let e = |i| Vector::unit(self.field, n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (lhs, rhs) = self.leibniz_sides(&e(i), &e(j), &e(k));
                    if lhs != rhs {
                        return LeibnizCheck::Counterexample { i, j, k, lhs, rhs };
                    }
                }
            }
        }
        LeibnizCheck::Ok
    }

    /// All failing basis triples, in lexicographic order.
    pub fn leibniz_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let e = |i| Vector::unit(self.field, n, i);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (lhs, rhs) = self.leibniz_sides(&e(i), &e(j), &e(k));
                    if lhs != rhs {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Structure constants on a new basis; column `j` of `change` is the
    /// `j`-th new basis vector in old coordinates.
    pub fn change_basis(&self, change: &Matrix) -> Result<StructureTensor> {
        let inv = change.inverse().ok_or(Error::Singular)?;
        if change.field() != self.field {
            return Err(Error::FieldMismatch(self.field, change.field()));
        }
        let cols = change.columns();
        let mut t = StructureTensor::zero(self.field, self.dim).with_convention(self.convention);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.bracket_unchecked(&cols[i], &cols[j]);
                t.set_product(i, j, inv.mul_vec(&v)?)?;
            }
        }
        Ok(t)
    }

    /// The opposite product `x * y := [y, x]`, with the other convention.
    pub fn opposite(&self) -> StructureTensor {
        let mut t = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.products[i * self.dim + j] = self.product(j, i).clone();
            }
        }
        t.convention = match self.convention {
            Convention::Right => Convention::Left,
            Convention::Left => Convention::Right,
        };
        t
    }

    /// Pretty list of the nonzero products.
    pub fn relations(&self) -> Vec<(usize, usize, &Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.product(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Renders a vector as a combination of basis names.
    pub fn format_vector(&self, v: &Vector) -> String {
        format_combination(v, |i| self.name(i))
    }
}

/// `2*a1 - a3` style rendering; `0` for the zero vector.
pub fn format_combination(v: &Vector, name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = match c {
            Scalar::Rational(_) => c.is_negative(),
            Scalar::Residue { .. } => false,
        };
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&name(i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A structure tensor that has passed the Leibniz check.
///
/// The only way to obtain one is through [`LeibnizAlgebra::new`], so every
/// operation that takes a `&LeibnizAlgebra` refuses unvalidated input by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeibnizAlgebra {
    tensor: StructureTensor,
}

impl LeibnizAlgebra {
    pub fn new(tensor: StructureTensor) -> Result<Self> {
        match tensor.check_leibniz() {
            LeibnizCheck::Ok => Ok(LeibnizAlgebra { tensor }),
            LeibnizCheck::Counterexample { i, j, k, .. } => Err(Error::NotLeibniz(i, j, k)),
        }
    }

    /// The abelian algebra of dimension `dim`.
    pub fn abelian(field: Field, dim: usize) -> Self {
        LeibnizAlgebra {
            tensor: StructureTensor::zero(field, dim),
        }
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> StructureTensor {
        self.tensor
    }

    pub fn change_basis(&self, change: &Matrix) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.tensor.change_basis(change)?)
    }
}

impl Deref for LeibnizAlgebra {
    type Target = StructureTensor;
    fn deref(&self) -> &StructureTensor {
        &self.tensor
    }
}

impl TryFrom<StructureTensor> for LeibnizAlgebra {
    type Error = Error;
    fn try_from(t: StructureTensor) -> Result<Self> {
        LeibnizAlgebra::new(t)
    }
}
