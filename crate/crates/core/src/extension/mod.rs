//! Factor sets and the extension algebras `m ×_f q*` built from them.

mod transport;

use std::collections::HashSet;

use crate::algebra::{
    hom_check, quotient, subalgebra, Convention, HomCheck, IdealHandle, LeibnizAlgebra, LeibnizCheck, LinearMap,
    MapRole, StructureTensor,
};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix, Subspace, Vector};
use crate::pairs::Pair;

pub use transport::{induced_maps_and_d, transport_factor_set, InducedMaps, Prop4Check, Transport};

/// The data `(m, q*, f, L, R)` of an extension of `q*` by `m`.
///
/// `f(x_i, x_j)` and the action matrices are given in the coordinates of
/// `m`; `L_x(v) = [v, τ x]` and `R_x(v) = [τ x, v]` for a splitting `τ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSetData {
    pub base: LeibnizAlgebra,
    pub quotient: LeibnizAlgebra,
    /// `f[i * r + j] = f(x_i, x_j)`
    pub f: Vec<Vector>,
    /// `left[i]` is the matrix of `L_{x_i}`.
    pub left: Vec<Matrix>,
    /// `right[i]` is the matrix of `R_{x_i}`.
    pub right: Vec<Matrix>,
    /// The splitting `q* -> q` when the data came from an ambient algebra.
    pub splitting: Option<LinearMap>,
}

impl FactorSetData {
    /// Checks shapes and fields; does not check any identity.
    pub fn new(
        base: LeibnizAlgebra,
        quotient: LeibnizAlgebra,
        f: Vec<Vector>,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
    ) -> Result<Self> {
        let field = base.field();
        if quotient.field() != field {
            return Err(Error::FieldMismatch(field, quotient.field()));
        }
        let (k, r) = (base.dim(), quotient.dim());
        let expect = |expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected, found })
            }
        };
        expect(r * r, f.len())?;
        expect(r, left.len())?;
        expect(r, right.len())?;
        for v in &f {
            if v.field() != field {
                return Err(Error::FieldMismatch(field, v.field()));
            }
            expect(k, v.len())?;
        }
        for m in left.iter().chain(&right) {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            expect(k, m.rows())?;
            expect(k, m.cols())?;
        }
        Ok(FactorSetData {
            base,
            quotient,
            f,
            left,
            right,
            splitting: None,
        })
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn kernel_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn convention(&self) -> Convention {
        self.quotient.convention()
    }

    /// `f(x, y)` by bilinearity.
    pub fn eval_f(&self, x: &Vector, y: &Vector) -> Vector {
        let r = self.quotient_dim();
        let mut out = Vector::zeros(self.field(), self.kernel_dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    out.add_scaled(&(xi * yj), &self.f[i * r + j]);
                }
            }
        }
        out
    }

    fn action(mats: &[Matrix], x: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zeros(v.field(), v.len());
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                out.add_scaled(xi, &mats[i].mul_vec(v).expect("shapes agree"));
            }
        }
        out
    }

    /// `L_x(v) = [v, τ x]`
    pub fn left_action(&self, x: &Vector, v: &Vector) -> Vector {
        Self::action(&self.left, x, v)
    }

    /// `R_x(v) = [τ x, v]`
    pub fn right_action(&self, x: &Vector, v: &Vector) -> Vector {
        Self::action(&self.right, x, v)
    }

    pub fn is_zero(&self) -> bool {
        self.f.iter().all(Vector::is_zero)
    }
}

/// Outcome of checking the factor-set identity on basis triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorCheck {
    Ok,
    /// First failing basis triple of the quotient, 0-based.
    Violation(usize, usize, usize),
}

impl FactorCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, FactorCheck::Ok)
    }
}

/// The factor-set identity at `(x, y, z)`; zero when it holds.
///
/// Right convention:
/// `f([x,y],z) - f([x,z],y) - f(x,[y,z]) + L_z f(x,y) - L_y f(x,z) - R_x f(y,z)`.
/// Left convention:
/// `f([x,y],z) + f(y,[x,z]) - f(x,[y,z]) + L_z f(x,y) + R_y f(x,z) - R_x f(y,z)`.
pub fn factor_identity_defect(d: &FactorSetData, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let b = |u: &Vector, v: &Vector| d.quotient.bracket_unchecked(u, v);
    let f = |u: &Vector, v: &Vector| d.eval_f(u, v);
    let fxy = f(x, y);
    let fxz = f(x, z);
    let fyz = f(y, z);
    let common = f(&b(x, y), z)
        .sub(&f(x, &b(y, z)))
        .add(&d.left_action(z, &fxy))
        .sub(&d.right_action(x, &fyz));
    match d.convention() {
        Convention::Right => common.sub(&f(&b(x, z), y)).sub(&d.left_action(y, &fxz)),
        Convention::Left => common.add(&f(y, &b(x, z))).add(&d.right_action(y, &fxz)),
    }
}

/// Evaluates the factor-set identity on every basis triple of the quotient.
pub fn check_factor_identity(d: &FactorSetData) -> FactorCheck {
    let r = d.quotient_dim();
    let e = |i| Vector::unit(d.field(), r, i);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                if !factor_identity_defect(d, &e(i), &e(j), &e(k)).is_zero() {
                    return FactorCheck::Violation(i, j, k);
                }
            }
        }
    }
    FactorCheck::Ok
}

/// The algebra `m ×_f q*` on the basis (kernel first, then quotient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionAlgebra {
    pub algebra: LeibnizAlgebra,
    pub data: FactorSetData,
    /// `m -> m ×_f q*`, `v -> (v, 0)`
    pub kernel_embedding: LinearMap,
    /// `m ×_f q* -> q*`
    pub projection: LinearMap,
}

impl ExtensionAlgebra {
    pub fn kernel_dim(&self) -> usize {
        self.data.kernel_dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.data.quotient_dim()
    }

    /// `{(z, 0)}` as a subspace of the extension.
    pub fn kernel_space(&self) -> Subspace {
        let idx: Vec<usize> = (0..self.kernel_dim()).collect();
        Subspace::coordinate(self.data.field(), self.algebra.dim(), &idx)
    }
}

fn extension_names(d: &FactorSetData) -> Vec<String> {
    let k = d.kernel_dim();
    let r = d.quotient_dim();
    let mut names: Vec<String> = (0..k).map(|i| d.base.name(i)).collect();
    names.extend((0..r).map(|i| d.quotient.name(i)));
    let unique: HashSet<&String> = names.iter().collect();
    if unique.len() == names.len() && d.base.basis_names().is_some() && d.quotient.basis_names().is_some() {
        return names;
    }
    (0..k)
        .map(|i| format!("z{}", i + 1))
        .chain((0..r).map(|i| format!("x{}", i + 1)))
        .collect()
}

/// `[(m1, x1), (m2, x2)] = ([m1, m2] + R_{x1} m2 + L_{x2} m1 + f(x1, x2), [x1, x2])`
pub fn build_extension(d: &FactorSetData) -> Result<ExtensionAlgebra> {
    if let FactorCheck::Violation(i, j, k) = check_factor_identity(d) {
        return Err(Error::FactorIdentityViolated(i, j, k));
    }
    let field = d.field();
    let (k, r) = (d.kernel_dim(), d.quotient_dim());
    let n = k + r;
    let mut t = StructureTensor::zero(field, n).with_convention(d.convention());
    let unit_k = |i| Vector::unit(field, k, i);
    let unit_r = |i| Vector::unit(field, r, i);
    let zr = Vector::zeros(field, r);
    for a in 0..n {
        for b in 0..n {
            let v = match (a < k, b < k) {
                (true, true) => d.base.product(a, b).concat(&zr),
                (true, false) => d.left_action(&unit_r(b - k), &unit_k(a)).concat(&zr),
                (false, true) => d.right_action(&unit_r(a - k), &unit_k(b)).concat(&zr),
                (false, false) => d.f[(a - k) * r + (b - k)].concat(d.quotient.product(a - k, b - k)),
            };
            t.set_product(a, b, v)?;
        }
    }
    t = t.with_basis_names(extension_names(d))?;
    let algebra = match t.check_leibniz() {
        LeibnizCheck::Ok => LeibnizAlgebra::new(t)?,
        LeibnizCheck::Counterexample { i, j, k, .. } => return Err(Error::LeibnizCheckFailed(i, j, k)),
    };
    let mut emb = Matrix::zeros(field, n, k);
    for i in 0..k {
        emb.set(i, i, field.one());
    }
    let mut proj = Matrix::zeros(field, r, n);
    for i in 0..r {
        proj.set(i, k + i, field.one());
    }
    Ok(ExtensionAlgebra {
        algebra,
        data: d.clone(),
        kernel_embedding: LinearMap::new(MapRole::Inclusion, emb),
        projection: LinearMap::new(MapRole::Projection, proj),
    })
}

/// Factor set of `q` over `q/m` for the deterministic complement splitting.
///
/// `f(x, y) = [ρx, ρy] - ρ[x, y]`, `L_x(v) = [v, ρx]`, `R_x(v) = [ρx, v]`,
/// all written in the RREF coordinates of `m`.
pub fn factor_set_from_pair(q: &LeibnizAlgebra, m: &IdealHandle) -> Result<FactorSetData> {
    let quot = quotient(q, m)?;
    let base = subalgebra(q, m.space())?;
    let rho = quot.section.matrix();
    let lifts = rho.columns();
    let r = lifts.len();
    let coords = |v: &Vector| {
        m.space()
            .coordinates(v)
            .ok_or_else(|| Error::Invalid("factor set value outside the ideal".into()))
    };
    let mut f = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let lifted = q.bracket_unchecked(&lifts[i], &lifts[j]);
            let correction = rho.mul_vec(quot.algebra.product(i, j))?;
            f.push(coords(&lifted.sub(&correction))?);
        }
    }
    let mbasis = m.space().basis_vectors();
    let k = mbasis.len();
    let mut left = Vec::with_capacity(r);
    let mut right = Vec::with_capacity(r);
    for x in &lifts {
        let l: Vec<Vector> = mbasis
            .iter()
            .map(|b| coords(&q.bracket_unchecked(b, x)))
            .collect::<Result<_>>()?;
        let rr: Vec<Vector> = mbasis
            .iter()
            .map(|b| coords(&q.bracket_unchecked(x, b)))
            .collect::<Result<_>>()?;
        left.push(Matrix::from_columns(q.field(), k, &l)?);
        right.push(Matrix::from_columns(q.field(), k, &rr)?);
    }
    let mut data = FactorSetData::new(base, quot.algebra, f, left, right)?;
    data.splitting = Some(LinearMap::new(MapRole::Splitting, rho.clone()));
    Ok(data)
}

/// Rebuilds `q` as `m ×_f q/m` and returns the isomorphism
/// `(v, x) -> v + ρ(x)` into `q`, verified as a bijective homomorphism.
pub fn lemma2_reconstruct(q: &LeibnizAlgebra, m: &IdealHandle) -> Result<(ExtensionAlgebra, LinearMap)> {
    let data = factor_set_from_pair(q, m)?;
    let ext = build_extension(&data)?;
    let rho = data.splitting.as_ref().expect("set by factor_set_from_pair").matrix();
    let inclusion = m.space().basis().transpose();
    let iso = inclusion.hstack(rho)?;
    if !iso.is_invertible() {
        return Err(Error::Invalid("reconstruction map is not bijective".into()));
    }
    if let HomCheck::Violation(i, j) = hom_check(&iso, &ext.algebra, q)? {
        return Err(Error::Invalid(format!(
            "reconstruction map fails to respect the bracket at ({}, {})",
            i + 1,
            j + 1
        )));
    }
    Ok((ext, LinearMap::new(MapRole::Reconstruction, iso)))
}

/// `m_f = Z ×_f m/Z` for a pair, where `Z = Z_Lie(m, q)` and `m` is taken
/// as an algebra on its RREF basis.
#[derive(Debug, Clone)]
pub struct StemFactor {
    pub extension: ExtensionAlgebra,
    /// `m` on its RREF basis.
    pub ideal_algebra: LeibnizAlgebra,
    /// `Z` inside the coordinates of `m`.
    pub center_in_ideal: Subspace,
    /// `m_f -> m` (coordinates of `m`).
    pub iso: LinearMap,
    /// `z -> (z, 0)` from the RREF coordinates of `Z` inside `q`.
    pub kappa: LinearMap,
    /// Kernel coordinates of `m_f` as vectors of `q` (columns).
    pub kernel_ambient: Matrix,
    /// Kernel coordinates of `m_f` into the RREF coordinates of `Z` (invertible).
    pub kernel_to_center: Matrix,
    /// `m/Z` coordinates of `m_f` into the coordinates of `q/Z` (columns).
    pub quotient_into_central: Matrix,
}

pub fn stem_factor_algebra(p: &Pair) -> Result<StemFactor> {
    let q = p.algebra();
    let m = p.ideal_space();
    let field = q.field();
    let m_alg = subalgebra(q, m)?;
    let to_m = |v: &Vector| m.coordinates(v).expect("Z ⊆ m");
    let z_vectors: Vec<Vector> = p.lie_center().basis_vectors().iter().map(to_m).collect();
    let z_in_m = Subspace::span(field, m.dim(), &z_vectors)?;
    let z_handle = IdealHandle::new(&m_alg, z_in_m.clone())?;
    let (extension, iso) = lemma2_reconstruct(&m_alg, &z_handle)?;
    let m_basis = m.basis().transpose();
    let k = z_in_m.dim();
    let kernel_ambient = m_basis.mul(&iso.matrix().block(0..m.dim(), 0..k))?;
    let mut kappa_cols = Vec::with_capacity(k);
    let zl = p.lie_center();
    for v in kernel_ambient.columns() {
        kappa_cols.push(zl.coordinates(&v).expect("kernel lies in Z"));
    }
    // kappa goes from Z's RREF coordinates to kernel coordinates of m_f
    let kernel_to_z = Matrix::from_columns(field, k, &kappa_cols)?;
    let kappa_small = kernel_to_z.inverse().ok_or(Error::Singular)?;
    let mut kappa = Matrix::zeros(field, extension.algebra.dim(), k);
    for i in 0..k {
        for j in 0..k {
            kappa.set(i, j, kappa_small.get(i, j).clone());
        }
    }
    let r = extension.quotient_dim();
    let lifts = m_basis.mul(&iso.matrix().block(0..m.dim(), k..k + r))?;
    let quotient_into_central = p.central_quotient().projection.matrix().mul(&lifts)?;
    Ok(StemFactor {
        extension,
        ideal_algebra: m_alg,
        center_in_ideal: z_in_m,
        iso,
        kappa: LinearMap::new(MapRole::KernelMap, kappa),
        kernel_ambient,
        kernel_to_center: kernel_to_z,
        quotient_into_central,
    })
}
