#![allow(dead_code)]

use companion::field::{FieldSpec, Rational, Scalar};
use companion::matrix::Matrix;
use companion::CoeffVector;
use proptest::prelude::*;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect(),
        FieldSpec::RATIONALS,
    )
    .unwrap()
}

pub fn qv(vals: &[i64]) -> CoeffVector<Rational> {
    CoeffVector::new(vals.iter().map(|&v| q(v)).collect(), FieldSpec::RATIONALS).unwrap()
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(n, d)| qr(n, d))
}

pub fn rational_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), len)
}

pub fn rational_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    rational_vec(n * n).prop_map(move |e| Matrix::new(n, n, e, FieldSpec::RATIONALS).unwrap())
}

/// A dimension in `lo..=hi` together with a square matrix of that size.
pub fn sized_matrix(lo: usize, hi: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (lo..=hi).prop_flat_map(rational_matrix)
}

pub fn coeffs(v: Vec<Rational>) -> CoeffVector<Rational> {
    CoeffVector::new(v, FieldSpec::RATIONALS).unwrap()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(Vec::new(), true)];
    }
    let mut out = Vec::new();
    for (perm, even) in permutations(n - 1) {
        // insert n-1 at each position; moving it left past k entries flips parity k times
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, n - 1);
            let shifts = perm.len() - pos;
            out.push((p, even == (shifts % 2 == 0)));
        }
    }
    out
}

fn poly_mul<T: Scalar>(x: &[T], y: &[T], spec: &FieldSpec) -> Vec<T> {
    let mut out = vec![T::zero_in(spec); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

/// `det(zI - A)` by the Leibniz formula, coefficients from degree 0 up.
pub fn char_poly_leibniz<T: Scalar>(a: &Matrix<T>) -> Vec<T> {
    let n = a.rows();
    let spec = a.spec();
    let entry = |i: usize, j: usize| -> Vec<T> {
        let neg = -a.get(i, j).clone();
        if i == j {
            vec![neg, T::one_in(&spec)]
        } else {
            vec![neg]
        }
    };
    let mut acc = vec![T::zero_in(&spec); n + 1];
    for (perm, even) in permutations(n) {
        let mut term = vec![T::one_in(&spec)];
        for (i, &j) in perm.iter().enumerate() {
            term = poly_mul(&term, &entry(i, j), &spec);
        }
        for (k, c) in term.into_iter().enumerate() {
            acc[k] = if even {
                acc[k].clone() + c
            } else {
                acc[k].clone() - c
            };
        }
    }
    acc
}
