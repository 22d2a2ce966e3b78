//! Monomial bases `M_{n,d}`, the d-uple embedding and the rank-one matrix
//! `A(x)` that cuts out its image.

use std::collections::HashMap;

use crate::exactmath::{Field, Matrix, MathError, Scalar};
use crate::polysys::Monomial;
use crate::verify::ProjectivePoint;

/// The monomials of degree `d` in `n + 1` variables, in canonical
/// (decreasing lexicographic) order, with inverse lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> MonomialBasis {
        let monomials = Monomial::all_of_degree(n + 1, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            n,
            d,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

pub fn enumerate_monomials(n: usize, d: u32) -> MonomialBasis {
    MonomialBasis::new(n, d)
}

/// `table[row][i]` is the position in `upper` of `lower[row] + e_i`.
pub(crate) fn raise_table(upper: &MonomialBasis, lower: &MonomialBasis) -> Vec<Vec<usize>> {
    assert_eq!(upper.n, lower.n, "bases over different ambient spaces");
    assert_eq!(upper.d, lower.d + 1, "bases must have consecutive degrees");
    lower
        .monomials
        .iter()
        .map(|m| {
            (0..=upper.n)
                .map(|i| upper.index_of(&m.add_unit(i)).expect("raised monomial in basis"))
                .collect()
        })
        .collect()
}

/// Coordinates `(x^m)_{m ∈ basis}` of a raw coordinate vector.
pub fn veronese_coords(x: &[Scalar], basis: &MonomialBasis) -> Vec<Scalar> {
    let field = x[0].field();
    basis
        .monomials
        .iter()
        .map(|m| m.evaluate(x, field))
        .collect()
}

/// The d-uple embedding of a point of `P^n`, normalized.
pub fn veronese_map(x: &ProjectivePoint, d: u32) -> Result<ProjectivePoint, MathError> {
    let basis = MonomialBasis::new(x.dim(), d);
    ProjectivePoint::new(veronese_coords(x.coords(), &basis))
}

fn check_len(x: &[Scalar], basis_d: &MonomialBasis) -> Result<Field, MathError> {
    if x.len() != basis_d.len() {
        return Err(MathError::DimensionMismatch {
            expected: basis_d.len(),
            found: x.len(),
        });
    }
    let field = x[0].field();
    if let Some(y) = x.iter().find(|y| y.field() != field) {
        return Err(MathError::FieldMismatch(field, y.field()));
    }
    Ok(field)
}

/// `A(x)`: rows indexed by `M_{n,d-1}`, columns by `0..=n`, with entry
/// `x_{row + e_i}` at `(row, i)`.
pub fn matrix_a(
    x: &[Scalar],
    basis_d: &MonomialBasis,
    basis_dm1: &MonomialBasis,
) -> Result<Matrix, MathError> {
    let field = check_len(x, basis_d)?;
    let table = raise_table(basis_d, basis_dm1);
    let rows = table
        .iter()
        .map(|row| row.iter().map(|&k| x[k].clone()).collect())
        .collect();
    Matrix::from_rows(field, basis_d.n + 1, rows)
}

/// Checks `x_{a+e_i} x_{b+e_j} = x_{a+e_j} x_{b+e_i}` for all `a, b ∈ M_{n,d-1}`
/// and all `i, j`. Symmetric and diagonal cases hold trivially and are skipped.
pub fn check_quadratic_conditions(
    x: &[Scalar],
    basis_d: &MonomialBasis,
    basis_dm1: &MonomialBasis,
) -> Result<bool, MathError> {
    check_len(x, basis_d)?;
    let table = raise_table(basis_d, basis_dm1);
    let cols = basis_d.n + 1;
    for (a, row_a) in table.iter().enumerate() {
        for row_b in &table[a + 1..] {
            for i in 0..cols {
                for j in i + 1..cols {
                    let lhs = &x[row_a[i]] * &x[row_b[j]];
                    let rhs = &x[row_a[j]] * &x[row_b[i]];
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}
