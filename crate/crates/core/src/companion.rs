//! Second companion matrices and reachability (Krylov) matrices.
//!
//! `F_p` has ones on the subdiagonal and `p` in its last column:
//!
//! ```text
//!     [ 0 0 ... 0 p_0     ]
//!     [ 1 0 ... 0 p_1     ]
//!     [ 0 1 ... 0 p_2     ]
//!     [     ...           ]
//!     [ 0 0 ... 1 p_{n-1} ]
//! ```
//!
//! Three tests decide whether a square `A` has this shape: the direct column
//! test (`A e_i = e_{i+1}` for `i < n-1`), `R(A, e_0) = I`, and
//! `R(A, g) = g(A)` on every basis vector `g`. They always agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{poly_eval_matrix, unit_vector, Matrix};

/// `b = [b_0, ..., b_{n-1}]`, identified with `b(z) = b_0 + b_1 z + ... + b_{n-1} z^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector<T> {
    entries: Vec<T>,
    spec: FieldSpec,
}

impl<T: Scalar> CoeffVector<T> {
    pub fn new(entries: Vec<T>, spec: FieldSpec) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch("empty coefficient vector".into()));
        }
        for e in &entries {
            spec.ensure_same(&e.spec())?;
        }
        Ok(CoeffVector { entries, spec })
    }

    pub fn from_column(col: &Matrix<T>) -> Result<Self> {
        if col.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a column, got {}x{}",
                col.rows(),
                col.cols()
            )));
        }
        Ok(CoeffVector {
            entries: col.entries().to_vec(),
            spec: col.spec(),
        })
    }

    pub fn unit(i: usize, n: usize, spec: FieldSpec) -> Result<Self> {
        Self::from_column(&unit_vector(i, n, spec)?)
    }

    pub fn zero(n: usize, spec: FieldSpec) -> Self {
        assert!(n > 0, "empty coefficient vector");
        CoeffVector {
            entries: vec![T::zero_in(&spec); n],
            spec,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn to_column(&self) -> Matrix<T> {
        Matrix::column(self.entries.clone(), self.spec).expect("non-empty by construction")
    }

    /// `b(A)`.
    pub fn eval_at(&self, a: &Matrix<T>) -> Result<Matrix<T>> {
        poly_eval_matrix(&self.entries, a)
    }

    /// `alpha * self + other`.
    pub fn axpy(&self, alpha: &T, other: &CoeffVector<T>) -> Result<CoeffVector<T>> {
        self.spec.ensure_same(&other.spec)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("vector lengths differ".into()));
        }
        Ok(CoeffVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| alpha.clone() * a.clone() + b.clone())
                .collect(),
            spec: self.spec,
        })
    }
}

impl<T: Scalar> fmt::Display for CoeffVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `F_p`. Satisfies `F_p e_{n-1} = p`.
pub fn make_companion<T: Scalar>(p: &CoeffVector<T>) -> Matrix<T> {
    let n = p.len();
    let spec = p.spec;
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    Matrix::from_fn(n, n, spec, |i, j| {
        if j == n - 1 {
            p.entries[i].clone()
        } else if i == j + 1 {
            o.clone()
        } else {
            z.clone()
        }
    })
}

/// `R(A, g) = [g, Ag, ..., A^{n-1} g]` for an `n x n` matrix `A`.
pub fn reachability<T: Scalar>(a: &Matrix<T>, g: &Matrix<T>) -> Result<Matrix<T>> {
    let n = a.ensure_square()?;
    a.spec().ensure_same(&g.spec())?;
    if g.rows() != n || g.cols() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "reachability needs an {n}x1 vector, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let mut cols = Vec::with_capacity(n);
    let mut v = g.clone();
    for _ in 0..n {
        let next = a.matmul(&v)?;
        cols.push(v);
        v = next;
    }
    Matrix::hstack(&cols)
}

/// First entry at which a matrix departs from the required shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<T> {
    pub row: usize,
    pub column: usize,
    pub expected: T,
    pub found: T,
}

impl<T: Scalar> fmt::Display for Witness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "column {}: entry ({}, {}) is {}, expected {}",
            self.column, self.row, self.column, self.found, self.expected
        )
    }
}

/// Outcome of the direct shape test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure<T, P = CoeffVector<T>> {
    Companion(P),
    NotCompanion(Witness<T>),
}

impl<T, P> Structure<T, P> {
    pub fn is_companion(&self) -> bool {
        matches!(self, Structure::Companion(_))
    }
}

/// Columns `0..n-1` of `A` must be `e_1, ..., e_{n-1}`; then `p` is the last
/// column. Every `1 x 1` matrix passes.
pub fn is_companion_structural<T: Scalar>(a: &Matrix<T>) -> Result<Structure<T>> {
    let n = a.ensure_square()?;
    let spec = a.spec();
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    for j in 0..n - 1 {
        for i in 0..n {
            let expected = if i == j + 1 { &o } else { &z };
            if a.get(i, j) != expected {
                return Ok(Structure::NotCompanion(Witness {
                    row: i,
                    column: j,
                    expected: expected.clone(),
                    found: a.get(i, j).clone(),
                }));
            }
        }
    }
    Ok(Structure::Companion(CoeffVector::from_column(
        &a.col(n - 1),
    )?))
}

/// `R(A, e_0) = I`.
pub fn is_companion_krylov<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    let n = a.ensure_square()?;
    Ok(reachability(a, &unit_vector(0, n, a.spec())?)?.is_identity())
}

/// `R(A, g) = g(A)` for every sample `g`.
pub fn krylov_full_test<T: Scalar>(a: &Matrix<T>, samples: &[CoeffVector<T>]) -> Result<bool> {
    let n = a.ensure_square()?;
    if samples.is_empty() {
        return Err(Error::DimensionMismatch("no sample vectors".into()));
    }
    for g in samples {
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "sample of length {} for an {n}x{n} matrix",
                g.len()
            )));
        }
        if reachability(a, &g.to_column())? != g.eval_at(a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`krylov_full_test`] on `e_0, ..., e_{n-1}`. Both sides are linear in
/// `g`, so this decides the statement for all `g`.
pub fn krylov_basis_test<T: Scalar>(a: &Matrix<T>) -> Result<bool> {
    let n = a.ensure_square()?;
    let basis = (0..n)
        .map(|i| CoeffVector::unit(i, n, a.spec()))
        .collect::<Result<Vec<_>>>()?;
    krylov_full_test(a, &basis)
}

/// Names of the individual recognition criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    Structural,
    Krylov,
    KrylovBasis,
    HSymmetry,
    Jmtrs,
    USymmetry,
    Crossover,
    BlockOperatorSubst,
    BlockCrg,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::Structural => "structural",
            Criterion::Krylov => "krylov",
            Criterion::KrylovBasis => "krylov-basis",
            Criterion::HSymmetry => "h-symmetry",
            Criterion::Jmtrs => "jmtrs",
            Criterion::USymmetry => "u-symmetry",
            Criterion::Crossover => "crossover",
            Criterion::BlockOperatorSubst => "operator-substitution",
            Criterion::BlockCrg => "crg",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Verdicts of the companion tests.
///
/// `P` is what gets extracted on success: a [`CoeffVector`] for scalar
/// companions, a block column for block companions. Criteria added with
/// [`with_criterion`](Self::with_criterion) characterize companion matrices
/// and must agree with the structural test; those added with
/// [`with_necessary`](Self::with_necessary) only have to hold when it does.
/// A violation is reported as [`Error::InternalInconsistency`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionReport<T, P = CoeffVector<T>> {
    structural: bool,
    krylov: bool,
    criteria: Vec<(Criterion, bool)>,
    extracted: Option<P>,
    witness: Option<Witness<T>>,
}

impl<T: Scalar, P> CompanionReport<T, P> {
    pub fn new(structure: Structure<T, P>, krylov: bool) -> Result<Self> {
        let structural = structure.is_companion();
        if structural != krylov {
            return Err(Error::InternalInconsistency(format!(
                "structural test says {structural}, R(A, e_0) = I says {krylov}"
            )));
        }
        let (extracted, witness) = match structure {
            Structure::Companion(p) => (Some(p), None),
            Structure::NotCompanion(w) => (None, Some(w)),
        };
        Ok(CompanionReport {
            structural,
            krylov,
            criteria: vec![
                (Criterion::Structural, structural),
                (Criterion::Krylov, krylov),
            ],
            extracted,
            witness,
        })
    }

    /// Records one more verdict; it must match the structural one.
    pub fn with_criterion(mut self, criterion: Criterion, holds: bool) -> Result<Self> {
        if holds != self.structural {
            return Err(Error::InternalInconsistency(format!(
                "{criterion} says {holds}, structural test says {}",
                self.structural
            )));
        }
        self.criteria.push((criterion, holds));
        Ok(self)
    }

    /// Records a verdict that every companion matrix satisfies but some
    /// other matrices do too.
    pub fn with_necessary(mut self, criterion: Criterion, holds: bool) -> Result<Self> {
        if self.structural && !holds {
            return Err(Error::InternalInconsistency(format!(
                "{criterion} fails on a companion matrix"
            )));
        }
        self.criteria.push((criterion, holds));
        Ok(self)
    }

    pub fn is_companion(&self) -> bool {
        self.structural
    }

    pub fn structural(&self) -> bool {
        self.structural
    }

    pub fn krylov(&self) -> bool {
        self.krylov
    }

    pub fn criteria(&self) -> &[(Criterion, bool)] {
        &self.criteria
    }

    pub fn extracted(&self) -> Option<&P> {
        self.extracted.as_ref()
    }

    pub fn witness(&self) -> Option<&Witness<T>> {
        self.witness.as_ref()
    }
}

impl<T: Scalar> CompanionReport<T> {
    pub fn extracted_p(&self) -> Option<&CoeffVector<T>> {
        self.extracted.as_ref()
    }
}

/// Structural and Krylov tests only; see `bilinear::recognize` for the full set.
pub fn recognize_basic<T: Scalar>(a: &Matrix<T>) -> Result<CompanionReport<T>> {
    let report = CompanionReport::new(is_companion_structural(a)?, is_companion_krylov(a)?)?;
    report.with_criterion(Criterion::KrylovBasis, krylov_basis_test(a)?)
}
