//! Exact scalars over the rationals and prime fields, and dense matrices with
//! Gaussian elimination.
//!
//! Every value carries its field. Mixing fields in one operation is an error
//! (checked methods) or a panic (operator impls), never a silent coercion.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest admissible characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator {denominator} is divisible by {p}")]
    DenominatorDivisible { denominator: BigInt, p: u64 },
    #[error("the zero vector has no projective class")]
    ZeroVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field of order `p`, validated.
    pub fn prime(p: u64) -> Result<Field, MathError> {
        if is_prime(p) && p <= MAX_PRIME {
            Ok(Field::Prime(p))
        } else {
            Err(MathError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// Trial division; the primes used here are tiny.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of Q (always in lowest terms) or of F_p (canonical residue).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        Scalar::from_i64(0, field)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_i64(1, field)
    }

    pub fn from_i64(v: i64, field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(num: BigInt, den: BigInt) -> Result<Scalar, MathError> {
        if den.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Residue of a prime-field element.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Maps this value into `field`. Rationals reduce into F_p when the
    /// denominator is a unit; a value already in `field` is returned as is.
    pub fn reduce_into(&self, field: Field) -> Result<Scalar, MathError> {
        match (self, field) {
            (_, f) if self.field() == f => Ok(self.clone()),
            (Scalar::Rational(r), Field::Prime(p)) => {
                let pb = BigInt::from(p);
                let den = r.denom().mod_floor(&pb);
                if den.is_zero() {
                    return Err(MathError::DenominatorDivisible {
                        denominator: r.denom().clone(),
                        p,
                    });
                }
                let num = r.numer().mod_floor(&pb).to_u64().expect("residue below p");
                let den = den.to_u64().expect("residue below p");
                Ok(Scalar::Mod {
                    value: num * inv_mod(den, p) % p,
                    p,
                })
            }
            _ => Err(MathError::FieldMismatch(self.field(), field)),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), MathError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(MathError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + p - b) % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % p,
                p: *p,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, MathError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: inv_mod(*value, *p),
                p: *p,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow(r.clone(), exp as usize)),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, exp as u64, *p),
                p: *p,
            },
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from different fields")
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order: rationals by value, residues by their canonical representative.
/// Values from different fields compare by field first.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Mod { value: a, p: pa }, Scalar::Mod { value: b, p: pb }) => {
                (pa, a).cmp(&(pb, b))
            }
            (Scalar::Rational(_), Scalar::Mod { .. }) => Ordering::Less,
            (Scalar::Mod { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

/// Rationals print as `a` or `a/b`; residues print as their representative.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Dense row-major matrix over a single field. Zero rows or columns are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one(field);
        }
        m
    }

    /// Builds a `rows.len() × cols` matrix. `cols` is explicit so that
    /// matrices with zero rows keep their width.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Matrix, MathError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MathError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for x in row {
                if x.field() != field {
                    return Err(MathError::FieldMismatch(field, x.field()));
                }
                entries.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers; rows must be rectangular.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(v, field)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows).expect("rectangular integer rows")
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) -> Result<(), MathError> {
        if value.field() != self.field {
            return Err(MathError::FieldMismatch(self.field, value.field()));
        }
        self.entries[r * self.cols + c] = value;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MathError> {
        if self.field != other.field {
            return Err(MathError::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduces every entry into F_p.
    pub fn reduce_into(&self, field: Field) -> Result<Matrix, MathError> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.reduce_into(field))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            field,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, MathError> {
        if self.field != other.field {
            return Err(MathError::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.cols {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Reduced row echelon form and the pivot columns. Pivots are chosen as the
    /// first nonzero entry at or below the current row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut grid = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !grid[i][c].is_zero()) else {
                continue;
            };
            grid.swap(r, p);
            let inv = grid[r][c].inv().expect("pivot is nonzero");
            if !inv.is_one() {
                for x in grid[r][c..].iter_mut() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = grid[r].clone();
            for (i, row) in grid.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &pivot_row[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let entries = grid.into_iter().flatten().collect();
        (
            Matrix {
                field: self.field,
                rows,
                cols,
                entries,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space. The basis vector for free column `f`
    /// has a 1 at `f` and 0 at every other free column, so the basis is the
    /// unique one in reduced column echelon form. Vectors are ordered by their
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(self.field); self.cols];
                v[f] = Scalar::one(self.field);
                for (ri, &pc) in pivots.iter().enumerate() {
                    v[pc] = -reduced.get(ri, f);
                }
                v
            })
            .collect()
    }

    pub fn mat_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MathError> {
        if v.len() != self.cols {
            return Err(MathError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(MathError::FieldMismatch(self.field, x.field()));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(self.field), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn mat_vec(m: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>, MathError> {
    m.mat_vec(v)
}

/// Parses `a` or `a/b` with optional leading minus into a rational scalar.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if !den.is_positive() {
        return None;
    }
    Scalar::from_ratio(num, den).ok()
}
