//! The bilinear maps `h` and `u` and the recognition theorems built on them.
//!
//! For `A` in `K^{n x n}` and `b, g` in `K^n`:
//!
//! * `h(A; b, g) = R(A, b) g`
//! * `u(A; b, g)` has row `k` equal to `e_{n-1}^T (b_k I + b_{k+1} A + ... + b_{n-1} A^{n-1-k}) g`
//!
//! Each map is symmetric in `(b, g)` exactly when `A` is a second companion
//! matrix. Symmetry of a bilinear map is decided on basis pairs; the
//! exhaustive checks in [`crate::oracle`] confirm the reduction independently.

use std::fmt;
use std::str::FromStr;

use crate::companion::{
    is_companion_krylov, is_companion_structural, krylov_basis_test, reachability, CoeffVector,
    CompanionReport, Criterion,
};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{unit_vector, Matrix};

/// `(b, b_n)`: a vector in `K^n` with one extra trailing scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedCoeffVector<T> {
    head: CoeffVector<T>,
    tail: T,
}

impl<T: Scalar> ExtendedCoeffVector<T> {
    pub fn new(head: CoeffVector<T>, tail: T) -> Result<Self> {
        head.spec().ensure_same(&tail.spec())?;
        Ok(ExtendedCoeffVector { head, tail })
    }

    /// Splits `n + 1` entries into head and tail.
    pub fn from_entries(mut entries: Vec<T>, spec: crate::field::FieldSpec) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::DimensionMismatch(
                "extended vector needs n + 1 >= 2 entries".into(),
            ));
        }
        let tail = entries.pop().expect("non-empty");
        ExtendedCoeffVector::new(CoeffVector::new(entries, spec)?, tail)
    }

    pub fn head(&self) -> &CoeffVector<T> {
        &self.head
    }

    pub fn tail(&self) -> &T {
        &self.tail
    }

    /// Entry `k` for `k <= n`.
    pub fn coeff(&self, k: usize) -> &T {
        if k == self.head.len() {
            &self.tail
        } else {
            self.head.get(k)
        }
    }
}

/// Which equivalence a verdict refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// `R(A, g) = g(A)` for all `g`.
    Reachability,
    /// `R(A, b) g = R(A, g) b`.
    HSymmetry,
    /// `u(A; b, g) = u(A; g, b)`.
    USymmetry,
    /// Stacked rows `e_{n-1}^T A^k` against the unit-diagonal moment matrix.
    Jmtrs,
    /// The extended identity with `p` taken from the characteristic polynomial.
    Crossover,
    /// `R(A, B) G = R(A, G) B` for blockwise commuting `B, G`.
    BlockCrg,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::Reachability,
        TheoremId::HSymmetry,
        TheoremId::USymmetry,
        TheoremId::Jmtrs,
        TheoremId::Crossover,
        TheoremId::BlockCrg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Reachability => "reachability",
            TheoremId::HSymmetry => "bca",
            TheoremId::USymmetry => "u-symmetry",
            TheoremId::Jmtrs => "jmtrs",
            TheoremId::Crossover => "crossover",
            TheoremId::BlockCrg => "crg",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "reachability" | "lemma" | "krylov" => TheoremId::Reachability,
            "bca" | "h" | "h-symmetry" => TheoremId::HSymmetry,
            "u" | "u-symmetry" => TheoremId::USymmetry,
            "jmtrs" => TheoremId::Jmtrs,
            "crossover" | "cim" => TheoremId::Crossover,
            "crg" | "block" => TheoremId::BlockCrg,
            _ => return Err(Error::Parse(format!("unknown theorem {s:?}"))),
        })
    }
}

/// The inputs on which two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample<T: Scalar> {
    pub inputs: Vec<(String, Matrix<T>)>,
    pub lhs: Matrix<T>,
    pub rhs: Matrix<T>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict<T: Scalar> {
    theorem: TheoremId,
    counterexample: Option<Counterexample<T>>,
}

impl<T: Scalar> TheoremVerdict<T> {
    pub fn holding(theorem: TheoremId) -> Self {
        TheoremVerdict {
            theorem,
            counterexample: None,
        }
    }

    /// Panics if the two sides agree.
    pub fn refuted(theorem: TheoremId, counterexample: Counterexample<T>) -> Self {
        assert_ne!(
            counterexample.lhs, counterexample.rhs,
            "not a counterexample"
        );
        TheoremVerdict {
            theorem,
            counterexample: Some(counterexample),
        }
    }

    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn counterexample(&self) -> Option<&Counterexample<T>> {
        self.counterexample.as_ref()
    }
}

fn check_len<T: Scalar>(a: &Matrix<T>, v: &CoeffVector<T>) -> Result<usize> {
    let n = a.ensure_square()?;
    a.spec().ensure_same(&v.spec())?;
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for an {n}x{n} matrix",
            v.len()
        )));
    }
    Ok(n)
}

/// `h(A; b, g) = R(A, b) g`.
pub fn h_map<T: Scalar>(
    a: &Matrix<T>,
    b: &CoeffVector<T>,
    g: &CoeffVector<T>,
) -> Result<Matrix<T>> {
    check_len(a, b)?;
    check_len(a, g)?;
    reachability(a, &b.to_column())?.matmul(&g.to_column())
}

/// `e_{n-1}^T A^k v` for `k = 0..n`.
fn trailing_moments<T: Scalar>(a: &Matrix<T>, v: &Matrix<T>) -> Result<Vec<T>> {
    let n = a.rows();
    let r = reachability(a, v)?;
    Ok(r.row(n - 1).to_vec())
}

/// Upper triangular, entry `(i, j) = e_{n-1}^T A^{j-i} g` for `j >= i`.
pub fn l_matrix<T: Scalar>(a: &Matrix<T>, g: &CoeffVector<T>) -> Result<Matrix<T>> {
    let n = check_len(a, g)?;
    let w = trailing_moments(a, &g.to_column())?;
    let zero = T::zero_in(&a.spec());
    Ok(Matrix::from_fn(n, n, a.spec(), |i, j| {
        if j >= i {
            w[j - i].clone()
        } else {
            zero.clone()
        }
    }))
}

/// Row `k` is `e_{n-1}^T (g_k I + g_{k+1} A + ... + g_{n-1} A^{n-1-k})`.
pub fn q_matrix<T: Scalar>(a: &Matrix<T>, g: &CoeffVector<T>) -> Result<Matrix<T>> {
    let n = check_len(a, g)?;
    let powers = a.powers(n)?;
    let spec = a.spec();
    let zero = T::zero_in(&spec);
    Ok(Matrix::from_fn(n, n, spec, |k, c| {
        (k..n).fold(zero.clone(), |acc, j| {
            acc + g.get(j).clone() * powers[j - k].get(n - 1, c).clone()
        })
    }))
}

/// `u(A; b, g)`, evaluated row by row from its definition.
///
/// The same vector is also computed as `L(A, g) b`; a disagreement between
/// the two is reported as [`Error::InternalInconsistency`].
pub fn u_map<T: Scalar>(
    a: &Matrix<T>,
    b: &CoeffVector<T>,
    g: &CoeffVector<T>,
) -> Result<Matrix<T>> {
    let direct = u_map_direct(a, b, g)?;
    let via_l = l_matrix(a, g)?.matmul(&b.to_column())?;
    if direct != via_l {
        return Err(Error::InternalInconsistency(
            "u(A; b, g) differs from L(A, g) b".into(),
        ));
    }
    Ok(direct)
}

/// Row `k`: `e_{n-1}^T (sum_{j >= k} b_j A^{j-k}) g`.
pub fn u_map_direct<T: Scalar>(
    a: &Matrix<T>,
    b: &CoeffVector<T>,
    g: &CoeffVector<T>,
) -> Result<Matrix<T>> {
    let n = check_len(a, b)?;
    check_len(a, g)?;
    let spec = a.spec();
    let powers = a.powers(n)?;
    let gcol = g.to_column();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let mut op = Matrix::zeros(n, n, spec);
        for j in k..n {
            op = op.add(&powers[j - k].scale(b.get(j)))?;
        }
        let v = op.matmul(&gcol)?;
        rows.push(v.get(n - 1, 0).clone());
    }
    Matrix::column(rows, spec)
}

fn basis<T: Scalar>(n: usize, a: &Matrix<T>) -> Result<Vec<CoeffVector<T>>> {
    (0..n).map(|i| CoeffVector::unit(i, n, a.spec())).collect()
}

/// `h(A; e_i, e_j) = h(A; e_j, e_i)` for all `i < j`; the first failing
/// pair in lexicographic order is the counterexample.
pub fn check_h_symmetry<T: Scalar>(a: &Matrix<T>) -> Result<TheoremVerdict<T>> {
    let n = a.ensure_square()?;
    let e = basis(n, a)?;
    for i in 0..n {
        for j in i + 1..n {
            let lhs = h_map(a, &e[i], &e[j])?;
            let rhs = h_map(a, &e[j], &e[i])?;
            if lhs != rhs {
                return Ok(TheoremVerdict::refuted(
                    TheoremId::HSymmetry,
                    Counterexample {
                        inputs: vec![
                            ("b".into(), e[i].to_column()),
                            ("g".into(), e[j].to_column()),
                        ],
                        lhs,
                        rhs,
                    },
                ));
            }
        }
    }
    Ok(TheoremVerdict::holding(TheoremId::HSymmetry))
}

/// Rows `e_{n-1}^T A^{n-1}, ..., e_{n-1}^T A, e_{n-1}^T`, stacked.
pub fn stacked_trailing_rows<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    let powers = a.powers(n)?;
    Ok(Matrix::from_fn(n, n, a.spec(), |i, j| {
        powers[n - 1 - i].get(n - 1, j).clone()
    }))
}

/// Unit diagonal, `(i, j) = e_{n-1}^T A^{j-i} e_{n-1}` above it, zero below.
pub fn trailing_moment_matrix<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    let powers = a.powers(n)?;
    let spec = a.spec();
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    Ok(Matrix::from_fn(n, n, spec, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Less => z.clone(),
        std::cmp::Ordering::Equal => o.clone(),
        std::cmp::Ordering::Greater => powers[j - i].get(n - 1, n - 1).clone(),
    }))
}

/// The stacked trailing rows of `A` equal its trailing moment matrix.
pub fn check_jmtrs<T: Scalar>(a: &Matrix<T>) -> Result<TheoremVerdict<T>> {
    let lhs = stacked_trailing_rows(a)?;
    let rhs = trailing_moment_matrix(a)?;
    Ok(if lhs == rhs {
        TheoremVerdict::holding(TheoremId::Jmtrs)
    } else {
        TheoremVerdict::refuted(
            TheoremId::Jmtrs,
            Counterexample {
                inputs: Vec::new(),
                lhs,
                rhs,
            },
        )
    })
}

/// `L(A, e_i) = Q(A, e_i)` for every `i`, which is symmetry of `u`.
pub fn check_u_symmetry<T: Scalar>(a: &Matrix<T>) -> Result<TheoremVerdict<T>> {
    let n = a.ensure_square()?;
    for ei in &basis(n, a)? {
        let lhs = l_matrix(a, ei)?;
        let rhs = q_matrix(a, ei)?;
        if lhs != rhs {
            return Ok(TheoremVerdict::refuted(
                TheoremId::USymmetry,
                Counterexample {
                    inputs: vec![("g".into(), ei.to_column())],
                    lhs,
                    rhs,
                },
            ));
        }
    }
    Ok(TheoremVerdict::holding(TheoremId::USymmetry))
}

/// `p` with `chi_A(z) = z^n - p(z)`.
pub fn crossover_p<T: Scalar>(a: &Matrix<T>) -> Result<CoeffVector<T>> {
    let n = a.ensure_square()?;
    let chi = a.char_poly()?;
    CoeffVector::new((0..n).map(|i| -chi.coeff(i)).collect(), a.spec())
}

fn check_extended<T: Scalar>(a: &Matrix<T>, v: &ExtendedCoeffVector<T>) -> Result<()> {
    check_len(a, &v.head).map(|_| ())
}

/// Both sides of
/// `sum_{k=0}^n g_k A^k (b + b_n p) = sum_{k=0}^n b_k A^k (g + g_n p)`.
pub fn crossover_sides<T: Scalar>(
    a: &Matrix<T>,
    p: &CoeffVector<T>,
    b: &ExtendedCoeffVector<T>,
    g: &ExtendedCoeffVector<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = check_len(a, p)?;
    check_extended(a, b)?;
    check_extended(a, g)?;
    let powers = a.powers(n + 1)?;
    let weighted = |v: &ExtendedCoeffVector<T>| -> Result<Matrix<T>> {
        let mut acc = Matrix::zeros(n, n, a.spec());
        for (k, pk) in powers.iter().enumerate() {
            acc = acc.add(&pk.scale(v.coeff(k)))?;
        }
        Ok(acc)
    };
    let shifted = |v: &ExtendedCoeffVector<T>| -> Result<Matrix<T>> {
        v.head.to_column().add(&p.to_column().scale(&v.tail))
    };
    let lhs = weighted(g)?.matmul(&shifted(b)?)?;
    let rhs = weighted(b)?.matmul(&shifted(g)?)?;
    Ok((lhs, rhs))
}

/// Both sides of the same identity rewritten with reachability matrices:
/// `R(A,b)g + b_n R(A,p)g + g_n A^n b = R(A,g)b + g_n R(A,p)b + b_n A^n g`.
///
/// The difference of the two sides equals that of [`crossover_sides`].
pub fn crossover_reachability_sides<T: Scalar>(
    a: &Matrix<T>,
    p: &CoeffVector<T>,
    b: &ExtendedCoeffVector<T>,
    g: &ExtendedCoeffVector<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = check_len(a, p)?;
    check_extended(a, b)?;
    check_extended(a, g)?;
    let an = a.pow(n)?;
    let rp = reachability(a, &p.to_column())?;
    let (bc, gc) = (b.head.to_column(), g.head.to_column());
    let side = |x: &ExtendedCoeffVector<T>,
                xc: &Matrix<T>,
                y: &ExtendedCoeffVector<T>,
                yc: &Matrix<T>|
     -> Result<Matrix<T>> {
        reachability(a, xc)?
            .matmul(yc)?
            .add(&rp.matmul(yc)?.scale(&x.tail))?
            .add(&an.matmul(xc)?.scale(&y.tail))
    };
    Ok((side(b, &bc, g, &gc)?, side(g, &gc, b, &bc)?))
}

/// The crossover identity for one pair, with `p` read off `chi_A`.
pub fn check_crossover<T: Scalar>(
    a: &Matrix<T>,
    b: &ExtendedCoeffVector<T>,
    g: &ExtendedCoeffVector<T>,
) -> Result<bool> {
    let p = crossover_p(a)?;
    check_crossover_with_p(a, &p, b, g)
}

/// As [`check_crossover`], with a caller-supplied `p`.
pub fn check_crossover_with_p<T: Scalar>(
    a: &Matrix<T>,
    p: &CoeffVector<T>,
    b: &ExtendedCoeffVector<T>,
    g: &ExtendedCoeffVector<T>,
) -> Result<bool> {
    let (lhs, rhs) = crossover_sides(a, p, b, g)?;
    Ok(lhs == rhs)
}

/// The crossover identity for all extended pairs.
///
/// Both sides are bilinear in `((b, b_n), (g, g_n))` and their difference is
/// antisymmetric, so basis pairs `(e_i, e_j)` with `i < j <= n` suffice.
pub fn check_crossover_universal<T: Scalar>(a: &Matrix<T>) -> Result<TheoremVerdict<T>> {
    let n = a.ensure_square()?;
    let spec = a.spec();
    let p = crossover_p(a)?;
    let ext = (0..=n)
        .map(|i| {
            let e = unit_vector::<T>(i, n + 1, spec)?;
            ExtendedCoeffVector::from_entries(e.into_entries(), spec)
        })
        .collect::<Result<Vec<_>>>()?;
    for i in 0..=n {
        for j in i + 1..=n {
            let (lhs, rhs) = crossover_sides(a, &p, &ext[i], &ext[j])?;
            if lhs != rhs {
                let full = |v: &ExtendedCoeffVector<T>| {
                    Matrix::column((0..=n).map(|k| v.coeff(k).clone()).collect(), spec)
                        .expect("n + 1 entries")
                };
                return Ok(TheoremVerdict::refuted(
                    TheoremId::Crossover,
                    Counterexample {
                        inputs: vec![
                            ("p".into(), p.to_column()),
                            ("b".into(), full(&ext[i])),
                            ("g".into(), full(&ext[j])),
                        ],
                        lhs,
                        rhs,
                    },
                ));
            }
        }
    }
    Ok(TheoremVerdict::holding(TheoremId::Crossover))
}

/// Rows `1, ..., n-1` of `A` are those of a second companion matrix:
/// `e_i^T A = e_{i-1}^T + a_{i,n-1} e_{n-1}^T`. Row 0 is unconstrained.
///
/// This is exactly the set on which [`check_jmtrs`] and
/// [`check_u_symmetry`] hold. Neither condition ever reads row 0, because
/// `e_{n-1}^T A^k` has a zero in position 0 for `k < n - 1`.
pub fn rows_below_first_are_companion<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    let n = a.ensure_square()?;
    let spec = a.spec();
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    for i in 1..n {
        for j in 0..n - 1 {
            let expected = if j + 1 == i { &o } else { &z };
            if a.get(i, j) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Runs every scalar criterion.
///
/// The jmtrs and u-symmetry conditions are recorded as necessary only: they
/// also hold when just row 0 departs from companion shape (see
/// [`rows_below_first_are_companion`]).
pub fn recognize<T: Scalar>(a: &Matrix<T>) -> Result<CompanionReport<T>> {
    CompanionReport::new(is_companion_structural(a)?, is_companion_krylov(a)?)?
        .with_criterion(Criterion::KrylovBasis, krylov_basis_test(a)?)?
        .with_criterion(Criterion::HSymmetry, check_h_symmetry(a)?.holds())?
        .with_necessary(Criterion::Jmtrs, check_jmtrs(a)?.holds())?
        .with_necessary(Criterion::USymmetry, check_u_symmetry(a)?.holds())?
        .with_criterion(Criterion::Crossover, check_crossover_universal(a)?.holds())
}
