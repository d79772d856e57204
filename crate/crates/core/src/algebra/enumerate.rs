//! Exhaustive enumeration of Leibniz structures over small prime fields.

use crate::exactla::{Field, Scalar, Vector};

use super::tensor::{Convention, StructureTensor};

/// Every structure tensor on `GF(p)^dim` satisfying the Leibniz identity
/// in the given convention. `None` over the rationals.
///
/// The identity is a system of quadratic equations in the structure
/// constants. Constants are assigned one at a time and an equation is
/// checked as soon as each of its monomials is either fully assigned or
/// has an assigned zero factor, so most of the `p^(dim^3)` tensors are
/// never visited.
pub fn enumerate_leibniz(field: Field, dim: usize, convention: Convention) -> Option<Vec<StructureTensor>> {
    let elements = field.elements()?;
    let search = Search::new(elements.len(), dim, convention);
    let mut found = Vec::new();
    let mut values = vec![UNSET; search.vars];
    search.descend(0, &mut values, &mut found);
    Some(
        found
            .into_iter()
            .map(|values| {
                let products = (0..dim * dim).map(|slot| {
                    let coords = values[slot * dim..(slot + 1) * dim].iter().map(|&v| elements[v as usize].clone());
                    let v = Vector::new(field, coords.collect::<Vec<Scalar>>()).expect("field");
                    (slot / dim, slot % dim, v)
                });
                StructureTensor::from_products(field, dim, products)
                    .expect("shapes agree")
                    .with_convention(convention)
            })
            .collect(),
    )
}

const UNSET: u8 = u8::MAX;

/// `coeff * c[a] * c[b]` with `c[(i*dim + j)*dim + k]` the coefficient of
/// `e_k` in `[e_i, e_j]`.
#[derive(Debug, Clone, Copy)]
struct Monomial {
    coeff: usize,
    a: usize,
    b: usize,
}

struct Search {
    p: usize,
    vars: usize,
    equations: Vec<Vec<Monomial>>,
    /// Equations mentioning each variable.
    watch: Vec<Vec<usize>>,
}

impl Search {
    fn new(p: usize, n: usize, convention: Convention) -> Self {
        let var = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let neg = p - 1;
        let mut equations = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for t in 0..n {
                        let mut eq = Vec::new();
                        for l in 0..n {
                            // [x,[y,z]]
                            eq.push(Monomial { coeff: 1, a: var(y, z, l), b: var(x, l, t) });
                            // [[x,y],z]
                            eq.push(Monomial { coeff: neg, a: var(x, y, l), b: var(l, z, t) });
                            match convention {
                                // + [[x,z],y]
                                Convention::Right => eq.push(Monomial { coeff: 1, a: var(x, z, l), b: var(l, y, t) }),
                                // - [y,[x,z]]
                                Convention::Left => eq.push(Monomial { coeff: neg, a: var(x, z, l), b: var(y, l, t) }),
                            }
                        }
                        equations.push(eq);
                    }
                }
            }
        }
        let vars = n * n * n;
        let mut watch = vec![Vec::new(); vars];
        for (e, eq) in equations.iter().enumerate() {
            for m in eq {
                for v in [m.a, m.b] {
                    if watch[v].last() != Some(&e) {
                        watch[v].push(e);
                    }
                }
            }
        }
        Search { p, vars, equations, watch }
    }

    fn descend(&self, var: usize, values: &mut [u8], found: &mut Vec<Vec<u8>>) {
        if var == self.vars {
            found.push(values.to_vec());
            return;
        }
        for v in 0..self.p as u8 {
            values[var] = v;
            if self.watch[var].iter().all(|&e| self.satisfiable(e, values)) {
                self.descend(var + 1, values, found);
            }
        }
        values[var] = UNSET;
    }

    /// False only when the equation is decided and fails.
    fn satisfiable(&self, e: usize, values: &[u8]) -> bool {
        let mut sum = 0;
        for m in &self.equations[e] {
            let (a, b) = (values[m.a], values[m.b]);
            if a == 0 || b == 0 {
                continue;
            }
            if a == UNSET || b == UNSET {
                return true;
            }
            sum = (sum + m.coeff * a as usize * b as usize) % self.p;
        }
        sum == 0
    }
}
