//! Dense matrices and polynomials over a [`Scalar`] field.
//!
//! Indices are 0-based throughout, so `unit_vector(0, n, ..)` is `e_0`.
//! Column vectors are `n x 1` matrices.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
    spec: FieldSpec,
}

fn dim_err(msg: impl Into<String>) -> Error {
    Error::DimensionMismatch(msg.into())
}

impl<T: Scalar> Matrix<T> {
    /// Row-major constructor. Every entry must lie in `spec`.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>, spec: FieldSpec) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(dim_err(format!("empty matrix {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(dim_err(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if !T::admits(&spec) {
            return Err(Error::Parse(format!(
                "scalar type cannot hold field {spec}"
            )));
        }
        for e in &entries {
            spec.ensure_same(&e.spec())?;
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            spec,
        })
    }

    pub fn from_rows(rows: Vec<Vec<T>>, spec: FieldSpec) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(dim_err("ragged rows"));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), spec)
    }

    /// Column vector from its entries.
    pub fn column(entries: Vec<T>, spec: FieldSpec) -> Result<Self> {
        let n = entries.len();
        Matrix::new(n, 1, entries, spec)
    }

    /// Panics if a dimension is zero.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        spec: FieldSpec,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix {rows}x{cols}");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
            spec,
        }
    }

    pub fn zeros(rows: usize, cols: usize, spec: FieldSpec) -> Self {
        let z = T::zero_in(&spec);
        Self::from_fn(rows, cols, spec, |_, _| z.clone())
    }

    pub fn identity(n: usize, spec: FieldSpec) -> Self {
        let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
        Self::from_fn(
            n,
            n,
            spec,
            |i, j| if i == j { o.clone() } else { z.clone() },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        &self.entries[i * self.cols + j]
    }

    /// Panics on an out-of-range index or a value from another field.
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        assert!(
            i < self.rows && j < self.cols,
            "({i},{j}) outside {}x{}",
            self.rows,
            self.cols
        );
        assert_eq!(value.spec(), self.spec, "entry from another field");
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as an `rows x 1` matrix.
    pub fn col(&self, j: usize) -> Matrix<T> {
        Self::from_fn(self.rows, 1, self.spec, |i, _| self.get(i, j).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Self::from_fn(self.cols, self.rows, self.spec, |i, j| {
            self.get(j, i).clone()
        })
    }

    fn ensure_same_shape(&self, other: &Matrix<T>) -> Result<()> {
        self.spec.ensure_same(&other.spec)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(dim_err(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.ensure_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn sub(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.ensure_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Matrix<T>, f: impl Fn(&T, &T) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
            spec: self.spec,
        }
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        debug_assert_eq!(s.spec(), self.spec);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| s.clone() * e.clone()).collect(),
            spec: self.spec,
        }
    }

    pub fn neg(&self) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e.clone()).collect(),
            spec: self.spec,
        }
    }

    pub fn matmul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.spec.ensure_same(&other.spec)?;
        if self.cols != other.rows {
            return Err(dim_err(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = T::zero_in(&self.spec);
        Ok(Self::from_fn(self.rows, other.cols, self.spec, |i, j| {
            (0..self.cols).fold(zero.clone(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }

    /// `A^k` by repeated multiplication; `A^0 = I`.
    pub fn pow(&self, k: usize) -> Result<Matrix<T>> {
        let n = self.ensure_square()?;
        let mut acc = Matrix::identity(n, self.spec);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// `[I, A, A^2, ..., A^(count-1)]`.
    pub fn powers(&self, count: usize) -> Result<Vec<Matrix<T>>> {
        let n = self.ensure_square()?;
        let mut out = Vec::with_capacity(count);
        let mut acc = Matrix::identity(n, self.spec);
        for _ in 0..count {
            let next = acc.matmul(self)?;
            out.push(acc);
            acc = next;
        }
        Ok(out)
    }

    /// Kronecker product: block `(i, j)` of the result is `s_ij * T`.
    pub fn kron(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        self.spec.ensure_same(&other.spec)?;
        let (p, r) = (other.rows, other.cols);
        Ok(Self::from_fn(
            self.rows * p,
            self.cols * r,
            self.spec,
            |i, j| self.get(i / p, j / r).clone() * other.get(i % p, j % r).clone(),
        ))
    }

    /// `[self, other]`.
    pub fn hconcat(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        Self::hstack(&[self.clone(), other.clone()])
    }

    pub fn hstack(parts: &[Matrix<T>]) -> Result<Matrix<T>> {
        let first = parts.first().ok_or_else(|| dim_err("nothing to stack"))?;
        let rows = first.rows;
        for m in parts {
            first.spec.ensure_same(&m.spec)?;
            if m.rows != rows {
                return Err(dim_err("hstack: row counts differ"));
            }
        }
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for m in parts {
                entries.extend_from_slice(m.row(i));
            }
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            spec: first.spec,
        })
    }

    pub fn vstack(parts: &[Matrix<T>]) -> Result<Matrix<T>> {
        let first = parts.first().ok_or_else(|| dim_err("nothing to stack"))?;
        let cols = first.cols;
        for m in parts {
            first.spec.ensure_same(&m.spec)?;
            if m.cols != cols {
                return Err(dim_err("vstack: column counts differ"));
            }
        }
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let entries = parts
            .iter()
            .flat_map(|m| m.entries.iter().cloned())
            .collect();
        Ok(Matrix {
            rows,
            cols,
            entries,
            spec: first.spec,
        })
    }

    /// The `height x width` submatrix whose top-left entry is `(r0, c0)`.
    pub fn submatrix(
        &self,
        r0: usize,
        c0: usize,
        height: usize,
        width: usize,
    ) -> Result<Matrix<T>> {
        if height == 0 || width == 0 || r0 + height > self.rows || c0 + width > self.cols {
            return Err(dim_err(format!(
                "window {height}x{width} at ({r0},{c0}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(height, width, self.spec, |i, j| {
            self.get(r0 + i, c0 + j).clone()
        }))
    }

    /// Determinant-free characteristic polynomial `det(zI - A)`.
    ///
    /// Berkowitz's algorithm: only ring operations, so it is exact over
    /// `GF(p)` even when `p <= n`.
    pub fn char_poly(&self) -> Result<Polynomial<T>> {
        let n = self.ensure_square()?;
        let spec = self.spec;
        let zero = T::zero_in(&spec);
        let one = T::one_in(&spec);

        // Coefficients of the leading r x r block's polynomial, highest degree first.
        let mut c = vec![one.clone(), -self.get(0, 0).clone()];
        for r in 1..n {
            let lead = self.submatrix(0, 0, r, r)?;
            let row = self.submatrix(r, 0, 1, r)?;
            let mut krylov = self.submatrix(0, r, r, 1)?;

            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(one.clone());
            toeplitz.push(-self.get(r, r).clone());
            for _ in 0..r {
                let v = row.matmul(&krylov)?;
                toeplitz.push(-v.get(0, 0).clone());
                krylov = lead.matmul(&krylov)?;
            }

            c = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(zero.clone(), |acc, j| {
                        acc + toeplitz[i - j].clone() * c[j].clone()
                    })
                })
                .collect();
        }
        c.reverse();
        Polynomial::new(c, spec)
    }
}

impl<T: Scalar> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        self.get(i, j)
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{} [", self.spec, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `e_i` in `K^n` as an `n x 1` column.
pub fn unit_vector<T: Scalar>(i: usize, n: usize, spec: FieldSpec) -> Result<Matrix<T>> {
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    Ok(Matrix::from_fn(n, 1, spec, |r, _| {
        if r == i {
            o.clone()
        } else {
            z.clone()
        }
    }))
}

/// `b(A) = b_0 I + b_1 A + ... + b_{k} A^{k}` for a coefficient list of
/// length at most `n` (shorter lists are zero-padded).
pub fn poly_eval_matrix<T: Scalar>(coeffs: &[T], a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    if coeffs.len() > n {
        return Err(dim_err(format!(
            "{} coefficients for a {n}x{n} matrix",
            coeffs.len()
        )));
    }
    for c in coeffs {
        a.spec.ensure_same(&c.spec())?;
    }
    Ok(horner(coeffs, a))
}

fn horner<T: Scalar>(coeffs: &[T], a: &Matrix<T>) -> Matrix<T> {
    let n = a.rows;
    let mut acc = Matrix::zeros(n, n, a.spec);
    for c in coeffs.iter().rev() {
        acc = acc.matmul(a).expect("square operands");
        for i in 0..n {
            let idx = i * n + i;
            acc.entries[idx] = acc.entries[idx].clone() + c.clone();
        }
    }
    acc
}

/// A univariate polynomial, coefficients indexed from degree 0.
///
/// Trailing zero coefficients are trimmed; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
    spec: FieldSpec,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>, spec: FieldSpec) -> Result<Self> {
        for c in &coeffs {
            spec.ensure_same(&c.spec())?;
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(Polynomial { coeffs, spec })
    }

    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            spec,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| T::zero_in(&self.spec))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(Scalar::is_one)
    }

    pub fn eval(&self, z: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero_in(&self.spec), |acc, c| acc * z.clone() + c.clone())
    }

    /// Evaluates at a square matrix, any degree.
    pub fn eval_matrix(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        a.ensure_square()?;
        a.spec.ensure_same(&self.spec)?;
        Ok(horner(&self.coeffs, a))
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Gf2, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
            FieldSpec::RATIONALS,
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = qm(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let i3 = Matrix::identity(3, FieldSpec::RATIONALS);
        assert_eq!(i3.matmul(&a).unwrap(), a);
        assert!(a
            .matmul(&Matrix::zeros(3, 3, FieldSpec::RATIONALS))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn gf2_shear_squares_to_identity() {
        let spec = Gf2::field();
        let one = Gf2::new(1);
        let z = Gf2::new(0);
        let a = Matrix::from_rows(vec![vec![one, one], vec![z, one]], spec).unwrap();
        assert!(a.pow(2).unwrap().is_identity());
        assert_eq!(a.matmul(&a).unwrap(), Matrix::identity(2, spec));
    }

    #[test]
    fn matmul_dimension_errors() {
        let a = qm(&[&[1, 2]]);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.pow(2), Err(Error::NotSquare { .. })));
        assert!(matches!(a.char_poly(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn mixed_fields_rejected() {
        use crate::field::FieldElement;
        let gf5 = FieldSpec::prime(5).unwrap();
        let a: Matrix<FieldElement> = Matrix::identity(2, gf5);
        let b: Matrix<FieldElement> = Matrix::identity(2, FieldSpec::RATIONALS);
        assert!(matches!(a.matmul(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.kron(&b), Err(Error::FieldMismatch { .. })));
        assert!(Matrix::new(1, 1, vec![FieldElement::one(&gf5)], FieldSpec::RATIONALS).is_err());
    }

    #[test]
    fn unit_vectors() {
        let e0: Matrix<Rational> = unit_vector(0, 3, FieldSpec::RATIONALS).unwrap();
        assert_eq!(e0, qm(&[&[1], &[0], &[0]]));
        let e2: Matrix<Rational> = unit_vector(2, 3, FieldSpec::RATIONALS).unwrap();
        assert_eq!(e2, qm(&[&[0], &[0], &[1]]));
        assert!(e2.transpose().matmul(&e2).unwrap().is_identity());
        assert_eq!(
            unit_vector::<Rational>(3, 3, FieldSpec::RATIONALS),
            Err(Error::IndexOutOfRange { index: 3, dim: 3 })
        );
    }

    #[test]
    fn kron_basics() {
        let spec = FieldSpec::RATIONALS;
        let i2: Matrix<Rational> = Matrix::identity(2, spec);
        let i3 = Matrix::identity(3, spec);
        assert_eq!(i2.kron(&i3).unwrap(), Matrix::identity(6, spec));

        let e0 = unit_vector::<Rational>(0, 3, spec).unwrap();
        let big_e0 = e0.kron(&Matrix::identity(2, spec)).unwrap();
        assert_eq!(big_e0.rows(), 6);
        assert_eq!(big_e0.cols(), 2);
        assert!(big_e0.submatrix(0, 0, 2, 2).unwrap().is_identity());
        assert!(big_e0.submatrix(2, 0, 4, 2).unwrap().is_zero());

        let s = qm(&[&[1, 2]]);
        let t = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.kron(&t).unwrap(), qm(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn powers() {
        let a = qm(&[&[1, 1], &[0, 1]]);
        assert!(a.pow(0).unwrap().is_identity());
        assert_eq!(a.pow(1).unwrap(), a);
        assert_eq!(a.pow(5).unwrap(), qm(&[&[1, 5], &[0, 1]]));
        let ps = a.powers(4).unwrap();
        for (k, p) in ps.iter().enumerate() {
            assert_eq!(*p, a.pow(k).unwrap());
        }
    }

    #[test]
    fn char_poly_small() {
        let z = qm(&[&[0]]).char_poly().unwrap();
        assert_eq!(z.coeffs(), &[q(0), q(1)]);
        let i2 = Matrix::<Rational>::identity(2, FieldSpec::RATIONALS)
            .char_poly()
            .unwrap();
        assert_eq!(i2.coeffs(), &[q(1), q(-2), q(1)]);
        let a = qm(&[&[1, 2], &[3, 4]]).char_poly().unwrap();
        assert_eq!(a.coeffs(), &[q(-2), q(-5), q(1)]);
        assert!(a.is_monic());
        assert_eq!(a.degree(), Some(2));
    }

    #[test]
    fn poly_eval() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let e0 = [q(1)];
        assert!(poly_eval_matrix(&e0, &a).unwrap().is_identity());
        assert_eq!(poly_eval_matrix(&[q(0), q(1)], &a).unwrap(), a);
        assert!(poly_eval_matrix(&[q(1), q(2), q(3)], &a).is_err());
        let chi = a.char_poly().unwrap();
        assert!(chi.eval_matrix(&a).unwrap().is_zero());
        assert_eq!(chi.eval(&q(0)), q(-2));
    }

    #[test]
    fn polynomial_trims() {
        let p = Polynomial::new(vec![q(1), q(0), q(0)], FieldSpec::RATIONALS).unwrap();
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p.coeff(5), q(0));
        assert_eq!(
            Polynomial::<Rational>::zero(FieldSpec::RATIONALS).degree(),
            None
        );
    }

    #[test]
    fn submatrix_and_stacks() {
        let a = qm(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(a.submatrix(0, 1, 2, 2).unwrap(), qm(&[&[2, 3], &[5, 6]]));
        assert!(a.submatrix(1, 1, 2, 2).is_err());
        let h = a.hconcat(&a).unwrap();
        assert_eq!(h.cols(), 6);
        let v = Matrix::vstack(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(v.rows(), 4);
        assert_eq!(v.submatrix(2, 0, 2, 3).unwrap(), a);
        assert_eq!(a.transpose().transpose(), a);
    }
}
