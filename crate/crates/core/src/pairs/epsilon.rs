use std::collections::BTreeMap;

use crate::algebra::StructureTensor;
use crate::exactla::{Scalar, Subspace, Vector};

/// How the condition `[x, y] = ε [y, x]` is quantified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpsilonMode {
    /// Only pairs of basis vectors, each pair with its own `ε`.
    BasisPairs,
    /// All pairs of elements, checked as a polynomial identity.
    AllElements,
}

/// Why the condition fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsilonWitness {
    /// Basis pair `(i, j)` (0-based, into the basis of the subspace).
    BasisPair(usize, usize),
    /// Concrete elements with `[x, y]` and `[y, x]` not related by a scalar.
    Elements { x: Vector, y: Vector },
    /// A non-vanishing coefficient of a 2×2 minor of `(B(x,y) | B(y,x))`,
    /// reported when no small element witness was found: output coordinates
    /// `(k, l)` and the monomial as exponent vectors in `x` and `y`.
    Polynomial {
        minor: (usize, usize),
        x_exponents: Vec<u32>,
        y_exponents: Vec<u32>,
        coefficient: Scalar,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonReport {
    pub mode: EpsilonMode,
    pub pass: bool,
    /// `(i, j, ε_ij)` for basis pairs `i <= j` with both sides nonzero.
    pub epsilons: Vec<(usize, usize, Scalar)>,
    /// A single `ε` with `c_ijk = ε c_jik` for all indices, if one exists
    /// and some product is nonzero.
    pub uniform: Option<Scalar>,
    pub witness: Option<EpsilonWitness>,
}

type Monomial = (Vec<u32>, Vec<u32>);

/// Checks `[x, y] = ε [y, x]` on `restrict_to`.
///
/// Works on an unvalidated tensor so that the check can be run on inputs
/// that fail the Leibniz identity.
pub fn epsilon_condition(t: &StructureTensor, restrict_to: &Subspace, mode: EpsilonMode) -> EpsilonReport {
    let basis = restrict_to.basis_vectors();
    let k = basis.len();
    // brackets of basis vectors of the subspace, as ambient vectors
    let mut table = vec![vec![Vector::zeros(t.field(), t.dim()); k]; k];
    for i in 0..k {
        for j in 0..k {
            table[i][j] = t.bracket_unchecked(&basis[i], &basis[j]);
        }
    }
    let mut epsilons = Vec::new();
    let mut basis_failure = None;
    for i in 0..k {
        for j in i..k {
            let (u, v) = (&table[i][j], &table[j][i]);
            match (u.is_zero(), v.is_zero()) {
                (true, true) => {}
                (false, false) if u.is_parallel_to(v) => {
                    let eps = u.ratio_to(v).expect("parallel and nonzero");
                    epsilons.push((i, j, eps));
                }
                _ => {
                    if basis_failure.is_none() {
                        basis_failure = Some((i, j));
                    }
                }
            }
        }
    }
    let uniform = uniform_epsilon(&table);
    let mut report = EpsilonReport {
        mode,
        pass: basis_failure.is_none(),
        epsilons,
        uniform,
        witness: basis_failure.map(|(i, j)| EpsilonWitness::BasisPair(i, j)),
    };
    if mode == EpsilonMode::BasisPairs || !report.pass {
        return report;
    }
    let minors = minor_coefficients(&table, t.dim());
    if minors.is_empty() {
        return report;
    }
    report.pass = false;
    report.witness = Some(element_witness(t, &basis, &minors));
    report
}

fn uniform_epsilon(table: &[Vec<Vector>]) -> Option<Scalar> {
    let mut eps: Option<Scalar> = None;
    for (i, row) in table.iter().enumerate() {
        for (j, u) in row.iter().enumerate() {
            let v = &table[j][i];
            for (a, b) in u.iter().zip(v.iter()) {
                if b.is_zero() {
                    if !a.is_zero() {
                        return None;
                    }
                    continue;
                }
                let r = a * &b.inv().expect("nonzero");
                match &eps {
                    None => eps = Some(r),
                    Some(e) if *e != r => return None,
                    _ => {}
                }
            }
        }
    }
    eps
}

/// Nonzero coefficients of `P_k Q_l - P_l Q_k` for `k < l`, where
/// `P(x, y) = B(x, y)` and `Q(x, y) = B(y, x)`, keyed by monomial.
fn minor_coefficients(table: &[Vec<Vector>], n: usize) -> BTreeMap<Monomial, (usize, usize, Scalar)> {
    let k = table.len();
    let mut out: BTreeMap<Monomial, (usize, usize, Scalar)> = BTreeMap::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let mut poly: BTreeMap<Monomial, Scalar> = BTreeMap::new();
            for i in 0..k {
                for j in 0..k {
                    let p_a = &table[i][j][a];
                    let p_b = &table[i][j][b];
                    if p_a.is_zero() && p_b.is_zero() {
                        continue;
                    }
                    for i2 in 0..k {
                        for j2 in 0..k {
                            // Q(x, y)_c = B(y, x)_c, coefficient of x_i2 y_j2 is table[j2][i2]
                            let q_a = &table[j2][i2][a];
                            let q_b = &table[j2][i2][b];
                            let c = &(p_a * q_b) - &(p_b * q_a);
                            if c.is_zero() {
                                continue;
                            }
                            let mut xe = vec![0u32; k];
                            let mut ye = vec![0u32; k];
                            xe[i] += 1;
                            xe[i2] += 1;
                            ye[j] += 1;
                            ye[j2] += 1;
                            let entry = poly.entry((xe, ye)).or_insert_with(|| c.field().zero());
                            *entry = &*entry + &c;
                        }
                    }
                }
            }
            for (mono, c) in poly {
                if !c.is_zero() {
                    out.entry(mono).or_insert((a, b, c));
                }
            }
        }
    }
    out
}

/// Tries `x = sum of basis vectors in the x-support`, same for `y`, for each
/// nonzero minor monomial in increasing exponent order.
fn element_witness(
    t: &StructureTensor,
    basis: &[Vector],
    minors: &BTreeMap<Monomial, (usize, usize, Scalar)>,
) -> EpsilonWitness {
    let combine = |exps: &[u32]| {
        let mut v = Vector::zeros(t.field(), t.dim());
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                v = v.add(&basis[i]);
            }
        }
        v
    };
    for (xe, ye) in minors.keys() {
        let x = combine(xe);
        let y = combine(ye);
        if !related(&t.bracket_unchecked(&x, &y), &t.bracket_unchecked(&y, &x)) {
            return EpsilonWitness::Elements { x, y };
        }
    }
    let ((xe, ye), (a, b, c)) = minors.iter().next().expect("non-empty");
    EpsilonWitness::Polynomial {
        minor: (*a, *b),
        x_exponents: xe.clone(),
        y_exponents: ye.clone(),
        coefficient: c.clone(),
    }
}

/// `u = ε v` for some scalar `ε`.
fn related(u: &Vector, v: &Vector) -> bool {
    if v.is_zero() {
        return u.is_zero();
    }
    u.is_zero() || u.is_parallel_to(v)
}
