use crate::error::{Error, Result};
use crate::exactla::{Matrix, QuotientSpace, Subspace, Vector};

use super::maps::{LinearMap, MapRole};
use super::tensor::{LeibnizAlgebra, StructureTensor};

/// A subspace verified to be a two-sided ideal of some algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealHandle {
    space: Subspace,
}

impl IdealHandle {
    /// Validates `[space, q] ⊆ space` and `[q, space] ⊆ space` on basis vectors.
    pub fn new(alg: &LeibnizAlgebra, space: Subspace) -> Result<Self> {
        check_ambient(alg, &space)?;
        if !is_ideal(alg, &space) {
            return Err(Error::NotAnIdeal);
        }
        Ok(IdealHandle { space })
    }

    pub fn zero(alg: &LeibnizAlgebra) -> Self {
        IdealHandle {
            space: Subspace::zero(alg.field(), alg.dim()),
        }
    }

    pub fn full(alg: &LeibnizAlgebra) -> Self {
        IdealHandle {
            space: Subspace::full(alg.field(), alg.dim()),
        }
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

fn check_ambient(alg: &StructureTensor, s: &Subspace) -> Result<()> {
    if s.field() != alg.field() {
        return Err(Error::FieldMismatch(alg.field(), s.field()));
    }
    if s.ambient_dim() != alg.dim() {
        return Err(Error::AmbientMismatch(alg.dim(), s.ambient_dim()));
    }
    Ok(())
}

pub fn is_ideal(alg: &StructureTensor, s: &Subspace) -> bool {
    let n = alg.dim();
    s.basis_vectors().iter().all(|v| {
        (0..n).all(|j| {
            let e = Vector::unit(alg.field(), n, j);
            s.contains(&alg.bracket_unchecked(v, &e)) && s.contains(&alg.bracket_unchecked(&e, v))
        })
    })
}

/// Smallest two-sided ideal containing `s`.
pub fn ideal_closure(alg: &LeibnizAlgebra, s: &Subspace) -> Result<IdealHandle> {
    check_ambient(alg, s)?;
    Ok(IdealHandle {
        space: closure_unchecked(alg, s),
    })
}

pub(crate) fn closure_unchecked(alg: &StructureTensor, s: &Subspace) -> Subspace {
    let n = alg.dim();
    let f = alg.field();
    let mut current = s.clone();
    loop {
        let mut gens = current.basis_vectors();
        for v in current.basis_vectors() {
            for j in 0..n {
                let e = Vector::unit(f, n, j);
                gens.push(alg.bracket_unchecked(&v, &e));
                gens.push(alg.bracket_unchecked(&e, &v));
            }
        }
        let next = Subspace::span(f, n, &gens).expect("shapes agree");
        if next.dim() == current.dim() {
            return current;
        }
        current = next;
    }
}

/// `span{[a, b] : a ∈ left, b ∈ right}`
pub fn product_space(alg: &StructureTensor, left: &Subspace, right: &Subspace) -> Subspace {
    let mut gens = Vec::new();
    for a in left.basis_vectors() {
        for b in right.basis_vectors() {
            gens.push(alg.bracket_unchecked(&a, &b));
        }
    }
    Subspace::span(alg.field(), alg.dim(), &gens).expect("shapes agree")
}

/// `{x ∈ within : M x = 0 for every M in maps}`
pub(crate) fn common_kernel(within: &Subspace, maps: &[Matrix]) -> Subspace {
    let f = within.field();
    let n = within.ambient_dim();
    let k = within.dim();
    if k == 0 {
        return within.clone();
    }
    let basis_cols = within.basis().transpose();
    let mut rows: Vec<Vector> = Vec::new();
    for m in maps {
        let prod = m.mul(&basis_cols).expect("shapes agree");
        rows.extend(prod.row_vectors());
    }
    if rows.is_empty() {
        return within.clone();
    }
    let stacked = Matrix::from_row_vectors(f, k, &rows).expect("shapes agree");
    let kernel = stacked.kernel();
    let vectors: Vec<Vector> = kernel
        .basis_vectors()
        .iter()
        .map(|c| within.from_coordinates(c))
        .collect();
    Subspace::span(f, n, &vectors).expect("shapes agree")
}

/// Matrix of `x -> [x, e_j]`.
pub fn right_mult(alg: &StructureTensor, j: usize) -> Matrix {
    let cols: Vec<Vector> = (0..alg.dim()).map(|i| alg.product(i, j).clone()).collect();
    Matrix::from_columns(alg.field(), alg.dim(), &cols).expect("shapes agree")
}

/// Matrix of `x -> [e_j, x]`.
pub fn left_mult(alg: &StructureTensor, j: usize) -> Matrix {
    let cols: Vec<Vector> = (0..alg.dim()).map(|i| alg.product(j, i).clone()).collect();
    Matrix::from_columns(alg.field(), alg.dim(), &cols).expect("shapes agree")
}

/// Matrix of `x -> [x, e_j] + [e_j, x]`.
pub fn symmetric_mult(alg: &StructureTensor, j: usize) -> Matrix {
    right_mult(alg, j).add(&left_mult(alg, j)).expect("shapes agree")
}

/// `{x : [x, q] = 0}`
pub fn left_annihilator(alg: &StructureTensor) -> Subspace {
    let maps: Vec<Matrix> = (0..alg.dim()).map(|j| right_mult(alg, j)).collect();
    common_kernel(&Subspace::full(alg.field(), alg.dim()), &maps)
}

/// `{x : [q, x] = 0}`
pub fn right_annihilator(alg: &StructureTensor) -> Subspace {
    let maps: Vec<Matrix> = (0..alg.dim()).map(|j| left_mult(alg, j)).collect();
    common_kernel(&Subspace::full(alg.field(), alg.dim()), &maps)
}

/// Two-sided center `{z : [z, x] = [x, z] = 0 for all x}`.
pub fn center(alg: &StructureTensor) -> Subspace {
    center_within(alg, &Subspace::full(alg.field(), alg.dim()))
}

/// Two-sided central elements lying in `within`.
pub fn center_within(alg: &StructureTensor, within: &Subspace) -> Subspace {
    let mut maps: Vec<Matrix> = (0..alg.dim()).map(|j| right_mult(alg, j)).collect();
    maps.extend((0..alg.dim()).map(|j| left_mult(alg, j)));
    common_kernel(within, &maps)
}

/// The span of all symmetrized brackets `[x,y] + [y,x]`; equals the span of
/// all squares when the characteristic is not 2.
pub fn symmetric_span(alg: &StructureTensor) -> Subspace {
    let n = alg.dim();
    let f = alg.field();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut v = alg.product(i, j).clone();
            if i != j {
                v = v.add(alg.product(j, i));
            }
            gens.push(v);
        }
    }
    Subspace::span(f, n, &gens).expect("shapes agree")
}

/// The ideal `Leib(q)` generated by squares and symmetrized brackets.
///
/// Squares `[e_i, e_i]` are included explicitly so that the generators are
/// right in characteristic 2 as well.
pub fn leib_ideal(alg: &StructureTensor) -> Subspace {
    closure_unchecked(alg, &symmetric_span(alg))
}

/// `q^1 = q`, `q^{k+1} = [q^k, q] + [q, q^k]`.
pub fn lower_central_series(alg: &StructureTensor, terms: usize) -> Vec<Subspace> {
    let full = Subspace::full(alg.field(), alg.dim());
    let mut out = vec![full.clone()];
    while out.len() < terms {
        let last = out.last().expect("non-empty");
        let next = product_space(alg, last, &full)
            .sum(&product_space(alg, &full, last))
            .expect("shapes agree");
        out.push(next);
    }
    out
}

/// `D^1 = q`, `D^{k+1} = [D^k, D^k]`.
pub fn derived_series(alg: &StructureTensor, terms: usize) -> Vec<Subspace> {
    let mut out = vec![Subspace::full(alg.field(), alg.dim())];
    while out.len() < terms {
        let last = out.last().expect("non-empty");
        out.push(product_space(alg, last, last));
    }
    out
}

/// A quotient algebra together with its projection and section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: LeibnizAlgebra,
    /// `q -> q/n`
    pub projection: LinearMap,
    /// `q/n -> q`, on the deterministic complement basis.
    pub section: LinearMap,
    pub space: QuotientSpace,
}

/// `q / n` with structure constants `[x̄_i, x̄_j] = π[σ x̄_i, σ x̄_j]`.
pub fn quotient(alg: &LeibnizAlgebra, n: &IdealHandle) -> Result<Quotient> {
    check_ambient(alg, n.space())?;
    if !is_ideal(alg, n.space()) {
        return Err(Error::NotAnIdeal);
    }
    let f = alg.field();
    let full = Subspace::full(f, alg.dim());
    let space = QuotientSpace::new(&full, n.space())?;
    let k = space.dim();
    let section = space.section_matrix().clone();
    let projection = space.projection_matrix().clone();
    let lifts = section.columns();
    let mut t = StructureTensor::zero(f, k).with_convention(alg.convention());
    for i in 0..k {
        for j in 0..k {
            let v = alg.bracket_unchecked(&lifts[i], &lifts[j]);
            t.set_product(i, j, projection.mul_vec(&v)?)?;
        }
    }
    if let Some(names) = alg.basis_names() {
        let mut qn = Vec::with_capacity(k);
        for c in &lifts {
            let label = match single_support(c) {
                Some(i) => names[i].clone(),
                None => format!("x{}", qn.len() + 1),
            };
            qn.push(label);
        }
        t = t.with_basis_names(qn)?;
    }
    let algebra = LeibnizAlgebra::new(t)?;
    Ok(Quotient {
        algebra,
        projection: LinearMap::new(MapRole::Projection, projection),
        section: LinearMap::new(MapRole::Section, section),
        space,
    })
}

fn single_support(v: &Vector) -> Option<usize> {
    let nz: Vec<usize> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
    match nz.as_slice() {
        [i] if v[*i].is_one() => Some(*i),
        _ => None,
    }
}

/// `q_Lie = q / Leib(q)`.
pub fn liezation(alg: &LeibnizAlgebra) -> Result<Quotient> {
    let ideal = IdealHandle {
        space: leib_ideal(alg),
    };
    quotient(alg, &ideal)
}

/// The algebra `s` with the restricted bracket, on the RREF basis of `s`.
pub fn subalgebra(alg: &LeibnizAlgebra, s: &Subspace) -> Result<LeibnizAlgebra> {
    check_ambient(alg, s)?;
    let basis = s.basis_vectors();
    let k = basis.len();
    let mut t = StructureTensor::zero(alg.field(), k).with_convention(alg.convention());
    for i in 0..k {
        for j in 0..k {
            let v = alg.bracket_unchecked(&basis[i], &basis[j]);
            let c = s
                .coordinates(&v)
                .ok_or_else(|| Error::Invalid("subspace is not closed under the bracket".into()))?;
            t.set_product(i, j, c)?;
        }
    }
    if let Some(names) = alg.basis_names() {
        let labels = basis
            .iter()
            .enumerate()
            .map(|(i, v)| match single_support(v) {
                Some(p) => names[p].clone(),
                None => format!("b{}", i + 1),
            })
            .collect();
        t = t.with_basis_names(labels)?;
    }
    LeibnizAlgebra::new(t)
}
