//! Dense exact matrices over [`FieldSpec`].
//!
//! Tensor products use the left-factor-major basis: the basis vector
//! `e_i ⊗ e_j` of `V(d1) ⊗ V(d2)` has index `i * d2 + j`. Every module in the
//! crate relies on this ordering, including [`Matrix::swap`].

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{
    format_rational, parse_rational, parse_residue, residue_of_i64, Arith, FieldSpec,
    RationalArith, ResidueArith,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Entries {
    Rational(Vec<BigRational>),
    Residue(Vec<u32>),
}

/// An exact `rows × cols` matrix, entries stored row-major.
///
/// Zero-sized shapes are allowed; they show up as the factors of a rank-zero
/// factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Entries,
}

/// Runs `$body` with `$ar` bound to the arithmetic of `$m`'s field and `$x`
/// bound to its entry vector; wraps the resulting vector back into [`Entries`].
macro_rules! map_entries {
    ($m:expr, |$ar:ident, $x:ident| $body:expr) => {
        match (&$m.data, $m.field) {
            (Entries::Rational($x), _) => {
                let $ar = RationalArith;
                Entries::Rational($body)
            }
            (Entries::Residue($x), FieldSpec::Prime(p)) => {
                let $ar = ResidueArith(p);
                Entries::Residue($body)
            }
            _ => unreachable!("entry representation always matches the field"),
        }
    };
}

macro_rules! zip_entries {
    ($a:expr, $b:expr, |$ar:ident, $x:ident, $y:ident| $body:expr) => {
        match (&$a.data, &$b.data, $a.field) {
            (Entries::Rational($x), Entries::Rational($y), _) => {
                let $ar = RationalArith;
                Entries::Rational($body)
            }
            (Entries::Residue($x), Entries::Residue($y), FieldSpec::Prime(p)) => {
                let $ar = ResidueArith(p);
                Entries::Residue($body)
            }
            _ => unreachable!("fields checked before combining"),
        }
    };
}

impl Matrix {
    fn from_parts(field: FieldSpec, rows: usize, cols: usize, data: Entries) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field {
            FieldSpec::Rationals => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            FieldSpec::Prime(_) => Entries::Residue(vec![0; rows * cols]),
        };
        Self::from_parts(field, rows, cols, data)
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set_one(i, i);
        }
        m
    }

    fn set_one(&mut self, r: usize, c: usize) {
        let idx = r * self.cols + c;
        match &mut self.data {
            Entries::Rational(v) => v[idx] = BigRational::one(),
            Entries::Residue(v) => v[idx] = 1,
        }
    }

    /// Builds a matrix from integer entries, reducing modulo `p` for prime fields.
    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let data = match field {
            FieldSpec::Rationals => Entries::Rational(
                values
                    .iter()
                    .map(|&v| BigRational::from_integer(v.into()))
                    .collect(),
            ),
            FieldSpec::Prime(p) => {
                Entries::Residue(values.iter().map(|&v| residue_of_i64(v, p)).collect())
            }
        };
        Ok(Self::from_parts(field, rows, cols, data))
    }

    /// Row-slice convenience constructor; panics on ragged input. Intended for
    /// literals in code and tests.
    pub fn from_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix literal");
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_i64(field, rows.len(), cols, &flat).expect("shape checked")
    }

    pub fn diag(field: FieldSpec, values: &[i64]) -> Self {
        let n = values.len();
        let mut flat = vec![0i64; n * n];
        for (i, v) in values.iter().enumerate() {
            flat[i * n + i] = *v;
        }
        Self::from_i64(field, n, n, &flat).expect("square by construction")
    }

    pub fn from_rationals(rows: usize, cols: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        Ok(Self::from_parts(
            FieldSpec::Rationals,
            rows,
            cols,
            Entries::Rational(values),
        ))
    }

    /// Builds a GF(p) matrix from residues; values are reduced modulo `p`.
    pub fn from_residues(p: u32, rows: usize, cols: usize, values: Vec<u32>) -> Result<Self> {
        let field = FieldSpec::prime(u64::from(p))?;
        if values.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let values = values.into_iter().map(|v| v % p).collect();
        Ok(Self::from_parts(field, rows, cols, Entries::Residue(values)))
    }

    /// Parses rows of textual entries (`"3"`, `"-1/2"`, ...).
    pub fn parse_rows<S: AsRef<str>>(field: FieldSpec, rows: &[Vec<S>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_cols) {
            return Err(Error::Parse("ragged matrix rows".into()));
        }
        let cells = rows.iter().flat_map(|r| r.iter().map(AsRef::as_ref));
        let data = match field {
            FieldSpec::Rationals => {
                Entries::Rational(cells.map(parse_rational).collect::<Result<_>>()?)
            }
            FieldSpec::Prime(p) => {
                Entries::Residue(cells.map(|s| parse_residue(s, p)).collect::<Result<_>>()?)
            }
        };
        Ok(Self::from_parts(field, n_rows, n_cols, data))
    }

    /// Parses the compact inline form `"1 0; 0 1/2"` (rows separated by `;`).
    pub fn parse_inline(field: FieldSpec, text: &str) -> Result<Self> {
        let rows: Vec<Vec<&str>> = text
            .split(';')
            .map(|r| r.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()).collect())
            .filter(|r: &Vec<&str>| !r.is_empty())
            .collect();
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix".into()));
        }
        Self::parse_rows(field, &rows)
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Raw residues for prime-field matrices.
    pub fn residues(&self) -> Option<&[u32]> {
        match &self.data {
            Entries::Residue(v) => Some(v),
            Entries::Rational(_) => None,
        }
    }

    pub fn rationals(&self) -> Option<&[BigRational]> {
        match &self.data {
            Entries::Rational(v) => Some(v),
            Entries::Residue(_) => None,
        }
    }

    /// Entry `(r, c)` in the textual form.
    pub fn entry_string(&self, r: usize, c: usize) -> String {
        let idx = r * self.cols + c;
        match &self.data {
            Entries::Rational(v) => format_rational(&v[idx]),
            Entries::Residue(v) => v[idx].to_string(),
        }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.entry_string(r, c)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Entries::Rational(v) => v.iter().all(Zero::is_zero),
            Entries::Residue(v) => v.iter().all(|&x| x == 0),
        }
    }

    /// Adds one to entry `(r, c)`; used to build corrupted fixtures.
    pub fn bump_entry(&mut self, r: usize, c: usize) {
        let idx = r * self.cols + c;
        match (&mut self.data, self.field) {
            (Entries::Rational(v), _) => v[idx] += BigRational::one(),
            (Entries::Residue(v), FieldSpec::Prime(p)) => v[idx] = (v[idx] + 1) % p,
            _ => unreachable!(),
        }
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Exact product `self · other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = zip_entries!(self, other, |ar, a, b| kernel::mul(&ar, a, b, n, k, m));
        Ok(Self::from_parts(self.field, n, m, data))
    }

    /// Composition of a chain of maps written in composition order:
    /// `compose(&[a, b, c])` is `a ∘ b ∘ c` (so `c` is applied first).
    pub fn compose(chain: &[&Matrix]) -> Result<Matrix> {
        let (last, rest) = chain
            .split_last()
            .ok_or_else(|| Error::Shape("empty composition".into()))?;
        rest.iter()
            .rev()
            .try_fold((*last).clone(), |acc, m| m.mul(&acc))
    }

    /// Kronecker product, left factor index major.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (r1, c1, r2, c2) = (self.rows, self.cols, other.rows, other.cols);
        let data = zip_entries!(self, other, |ar, a, b| kernel::kron(
            &ar, a, b, r1, c1, r2, c2
        ));
        Ok(Self::from_parts(self.field, r1 * r2, c1 * c2, data))
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.elementwise(other, "add", |x, y| x + y, |ar, x, y| ar.add(x, y))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.elementwise(other, "sub", |x, y| x - y, |ar, x, y| ar.sub(x, y))
    }

    fn elementwise(
        &self,
        other: &Matrix,
        op: &'static str,
        fq: impl Fn(&BigRational, &BigRational) -> BigRational,
        fp: impl Fn(&ResidueArith, &u32, &u32) -> u32,
    ) -> Result<Matrix> {
        self.check_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        let data = match (&self.data, &other.data, self.field) {
            (Entries::Rational(a), Entries::Rational(b), _) => {
                Entries::Rational(a.iter().zip(b).map(|(x, y)| fq(x, y)).collect())
            }
            (Entries::Residue(a), Entries::Residue(b), FieldSpec::Prime(p)) => {
                let ar = ResidueArith(p);
                Entries::Residue(a.iter().zip(b).map(|(x, y)| fp(&ar, x, y)).collect())
            }
            _ => unreachable!(),
        };
        Ok(Self::from_parts(self.field, self.rows, self.cols, data))
    }

    #[allow(clippy::clone_on_copy)]
    pub fn transpose(&self) -> Matrix {
        let (r, c) = self.shape();
        let data = map_entries!(self, |_ar, a| {
            let mut out = Vec::with_capacity(r * c);
            for j in 0..c {
                for i in 0..r {
                    out.push(a[i * c + j].clone());
                }
            }
            out
        });
        Self::from_parts(self.field, c, r, data)
    }

    #[allow(clippy::clone_on_copy)]
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let c = self.cols;
        let data = map_entries!(self, |_ar, a| {
            (0..self.rows)
                .flat_map(|i| cols.iter().map(move |&j| a[i * c + j].clone()))
                .collect()
        });
        Self::from_parts(self.field, self.rows, cols.len(), data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let c = self.cols;
        let data = map_entries!(self, |_ar, a| {
            rows.iter()
                .flat_map(|&i| a[i * c..(i + 1) * c].iter().cloned())
                .collect()
        });
        Self::from_parts(self.field, rows.len(), self.cols, data)
    }

    /// Reduced row echelon form together with its pivot columns, chosen
    /// left to right.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (r, c) = self.shape();
        let pivots;
        let data = map_entries!(self, |ar, a| {
            let (reduced, piv) = kernel::rref(&ar, a.clone(), r, c);
            pivots = piv;
            reduced
        });
        (Self::from_parts(self.field, r, c, data), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "inverse",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let augmented = self.hstack(&Matrix::identity(self.field, n))?;
        let (reduced, pivots) = augmented.rref();
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return Ok(None);
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(Some(reduced.select_columns(&right)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let (c1, c2) = (self.cols, other.cols);
        let data = zip_entries!(self, other, |_ar, a, b| {
            (0..self.rows)
                .flat_map(|i| {
                    a[i * c1..(i + 1) * c1]
                        .iter()
                        .chain(&b[i * c2..(i + 1) * c2])
                        .cloned()
                })
                .collect()
        });
        Ok(Self::from_parts(self.field, self.rows, c1 + c2, data))
    }

    /// Basis of the right null space `{x : self · x = 0}` as column vectors.
    pub fn nullspace(&self) -> Vec<Matrix> {
        let (reduced, pivots) = self.rref();
        let c = self.cols;
        let free: Vec<usize> = (0..c).filter(|j| !pivots.contains(j)).collect();
        free.iter()
            .map(|&j| {
                let data = map_entries!(reduced, |ar, a| {
                    let mut v = vec![ar.zero(); c];
                    v[j] = ar.one();
                    for (i, &pc) in pivots.iter().enumerate() {
                        v[pc] = ar.sub(&ar.zero(), &a[i * c + j]);
                    }
                    v
                });
                Self::from_parts(self.field, c, 1, data)
            })
            .collect()
    }

    /// First `(row, col)` where `self` and `other` differ. Shapes must agree.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        debug_assert_eq!(self.shape(), other.shape());
        let idx = match (&self.data, &other.data) {
            (Entries::Rational(a), Entries::Rational(b)) => a.iter().zip(b).position(|(x, y)| x != y),
            (Entries::Residue(a), Entries::Residue(b)) => a.iter().zip(b).position(|(x, y)| x != y),
            _ => Some(0),
        }?;
        Some((idx / self.cols.max(1), idx % self.cols.max(1)))
    }

    /// Permutation sending `e_i ⊗ e_j ∈ V(d1) ⊗ V(d2)` to `e_j ⊗ e_i`.
    pub fn swap(d1: usize, d2: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zeros(field, d1 * d2, d1 * d2);
        for i in 0..d1 {
            for j in 0..d2 {
                m.set_one(j * d1 + i, i * d2 + j);
            }
        }
        m
    }

    pub fn is_idempotent(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "is_idempotent",
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.mul(self)? == *self)
    }

    /// Entry-lexicographic comparison; the canonical order of catalogs.
    pub fn lex_cmp(&self, other: &Matrix) -> Ordering {
        self.shape().cmp(&other.shape()).then_with(|| match (&self.data, &other.data) {
            (Entries::Rational(a), Entries::Rational(b)) => a.cmp(b),
            (Entries::Residue(a), Entries::Residue(b)) => a.cmp(b),
            (Entries::Rational(_), Entries::Residue(_)) => Ordering::Less,
            (Entries::Residue(_), Entries::Rational(_)) => Ordering::Greater,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.to_string_rows();
        let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Free functions over `Arith` so both entry representations share code.
mod kernel {
    use super::Arith;

    pub fn mul<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, k: usize, m: usize) -> Vec<A::E> {
        let mut out = vec![ar.zero(); n * m];
        for i in 0..n {
            for l in 0..k {
                let x = &a[i * k + l];
                if ar.is_zero(x) {
                    continue;
                }
                for j in 0..m {
                    let y = &b[l * m + j];
                    if !ar.is_zero(y) {
                        out[i * m + j] = ar.add(&out[i * m + j], &ar.mul(x, y));
                    }
                }
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    pub fn kron<A: Arith>(
        ar: &A,
        a: &[A::E],
        b: &[A::E],
        r1: usize,
        c1: usize,
        r2: usize,
        c2: usize,
    ) -> Vec<A::E> {
        let cols = c1 * c2;
        let mut out = vec![ar.zero(); r1 * r2 * cols];
        for i1 in 0..r1 {
            for j1 in 0..c1 {
                let x = &a[i1 * c1 + j1];
                if ar.is_zero(x) {
                    continue;
                }
                for i2 in 0..r2 {
                    for j2 in 0..c2 {
                        out[(i1 * r2 + i2) * cols + j1 * c2 + j2] = ar.mul(x, &b[i2 * c2 + j2]);
                    }
                }
            }
        }
        out
    }

    pub fn rref<A: Arith>(ar: &A, mut a: Vec<A::E>, rows: usize, cols: usize) -> (Vec<A::E>, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(p) = (row..rows).find(|&i| !ar.is_zero(&a[i * cols + col])) else {
                continue;
            };
            if p != row {
                for j in 0..cols {
                    a.swap(p * cols + j, row * cols + j);
                }
            }
            let inv = ar.inv(&a[row * cols + col]);
            for j in col..cols {
                a[row * cols + j] = ar.mul(&a[row * cols + j], &inv);
            }
            for i in 0..rows {
                if i == row {
                    continue;
                }
                let factor = a[i * cols + col].clone();
                if ar.is_zero(&factor) {
                    continue;
                }
                for j in col..cols {
                    let t = ar.mul(&factor, &a[row * cols + j]);
                    a[i * cols + j] = ar.sub(&a[i * cols + j], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const GF2: FieldSpec = FieldSpec::Prime(2);

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_product() {
        let i2 = Matrix::identity(Q, 2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);
    }

    #[test]
    fn gf2_product_by_hand() {
        let a = Matrix::from_rows(GF2, &[&[1, 1], &[1, 1]]);
        let b = Matrix::from_rows(GF2, &[&[1, 0], &[0, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_rows(GF2, &[&[1, 0], &[1, 0]]));
    }

    #[test]
    fn rational_inverse_pair() {
        let a = Matrix::from_rationals(2, 2, vec![q(1, 2), q(0, 1), q(0, 1), q(2, 1)]).unwrap();
        let b = Matrix::from_rationals(2, 2, vec![q(2, 1), q(0, 1), q(0, 1), q(1, 2)]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Matrix::identity(Q, 2));
    }

    #[test]
    fn mul_errors() {
        let a = Matrix::identity(Q, 2);
        let b = Matrix::identity(Q, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
        let c = Matrix::identity(GF2, 2);
        assert!(matches!(a.mul(&c), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.kron(&c), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn kron_of_projectors() {
        let e = Matrix::diag(Q, &[1, 0]);
        assert_eq!(e.kron(&e).unwrap(), Matrix::diag(Q, &[1, 0, 0, 0]));
    }

    #[test]
    fn kron_identity_left_is_block_diagonal() {
        let m = Matrix::from_rows(Q, &[&[1, 2], &[3, 4]]);
        let k = Matrix::identity(Q, 2).kron(&m).unwrap();
        let expected = Matrix::from_rows(
            Q,
            &[&[1, 2, 0, 0], &[3, 4, 0, 0], &[0, 0, 1, 2], &[0, 0, 3, 4]],
        );
        assert_eq!(k, expected);
    }

    #[test]
    fn ranks() {
        assert_eq!(Matrix::zeros(Q, 2, 2).rank(), 0);
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        assert_eq!(Matrix::from_rows(GF2, &[&[1, 1], &[1, 1]]).rank(), 1);
        // rank depends on the characteristic
        let m = Matrix::from_rows(Q, &[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(), 2);
        let m2 = Matrix::from_rows(GF2, &[&[1, 1], &[1, -1]]);
        assert_eq!(m2.rank(), 1);
    }

    #[test]
    fn swap_basics() {
        assert_eq!(Matrix::swap(1, 3, Q), Matrix::identity(Q, 3));
        let s = Matrix::swap(2, 2, GF2);
        assert_eq!(s.mul(&s).unwrap(), Matrix::identity(GF2, 4));
        // e_0 ⊗ e_1 (index 1) goes to e_1 ⊗ e_0 (index 2)
        assert_eq!(s.entry_string(2, 1), "1");
    }

    #[test]
    fn swap_conjugates_kron() {
        let a = Matrix::from_rows(Q, &[&[1, 2], &[3, 4]]);
        let b = Matrix::from_rows(Q, &[&[5, 6, 7], &[8, 9, 10], &[11, 12, 13]]);
        let lhs = Matrix::compose(&[
            &Matrix::swap(2, 3, Q),
            &a.kron(&b).unwrap(),
            &Matrix::swap(3, 2, Q),
        ])
        .unwrap();
        assert_eq!(lhs, b.kron(&a).unwrap());
    }

    #[test]
    fn idempotency() {
        assert!(Matrix::identity(Q, 3).is_idempotent().unwrap());
        assert!(Matrix::diag(Q, &[1, 0]).is_idempotent().unwrap());
        assert!(!Matrix::diag(Q, &[2, 0]).is_idempotent().unwrap());
        assert!(Matrix::zeros(Q, 2, 3).is_idempotent().is_err());
    }

    #[test]
    fn idempotent_count_gf2() {
        // brute force over all 16 matrices
        let count = (0u32..16)
            .filter(|bits| {
                let v = (0..4).map(|k| (bits >> k) & 1).collect();
                Matrix::from_residues(2, 2, 2, v).unwrap().is_idempotent().unwrap()
            })
            .count();
        assert_eq!(count, 8);
    }

    #[test]
    fn inverse_and_singular() {
        let m = Matrix::from_rows(Q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Q, 2));
        assert!(Matrix::diag(Q, &[1, 0]).inverse().unwrap().is_none());
    }

    #[test]
    fn nullspace_annihilates() {
        let m = Matrix::from_rows(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(m.mul(v).unwrap().is_zero());
        }
    }

    #[test]
    fn inline_parse_and_display() {
        let m = Matrix::parse_inline(Q, "1 -1/2; 0, 3").unwrap();
        assert_eq!(m.to_string_rows(), vec![vec!["1", "-1/2"], vec!["0", "3"]]);
        assert!(Matrix::parse_inline(Q, "1 2; 3").is_err());
        assert!(Matrix::parse_inline(GF2, "").is_err());
        assert_eq!(format!("{}", Matrix::identity(GF2, 2)), "[1 0]\n[0 1]");
    }

    #[test]
    fn compose_order() {
        // compose(&[a, b]) applies b first
        let a = Matrix::from_rows(Q, &[&[0, 1], &[0, 0]]);
        let b = Matrix::diag(Q, &[1, 0]);
        assert_eq!(Matrix::compose(&[&a, &b]).unwrap(), a.mul(&b).unwrap());
        assert!(Matrix::compose(&[]).is_err());
    }
}
