//! Brute-force ground truth over small prime fields.
//!
//! Every `n x n` matrix over `GF(p)` is enumerated and, for each, the
//! theorem's universally quantified condition is checked on *every* vector
//! (or pair of vectors) rather than on a basis. The predicates here are
//! written from the definitions with plain matrix arithmetic and share no
//! code with the fast checkers in [`crate::bilinear`] and [`crate::block`],
//! which are compared against them.

use crate::bilinear::{
    check_crossover_universal, check_h_symmetry, check_jmtrs, check_u_symmetry, TheoremId,
};
use crate::block::{crg_certified_test, is_block_companion_structural, BlockColumn};
use crate::companion::{is_companion_structural, krylov_basis_test, make_companion, CoeffVector};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Cap on the number of vectors (or vector pairs) checked per matrix.
pub const DEFAULT_VECTOR_BUDGET: u128 = 1_000_000;

/// Cap on matrices times vector pairs for one run.
pub const DEFAULT_WORK_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    AllMatrices,
    CompanionOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationTask {
    pub spec: FieldSpec,
    /// Matrix dimension, or block count for [`TheoremId::BlockCrg`].
    pub n: usize,
    pub theorem: TheoremId,
    pub mode: EnumerationMode,
    pub limit: Option<u64>,
    pub budget: u128,
    /// Block size for [`TheoremId::BlockCrg`]; ignored otherwise.
    pub block_size: usize,
}

impl EnumerationTask {
    pub fn new(spec: FieldSpec, n: usize, theorem: TheoremId) -> Self {
        EnumerationTask {
            spec,
            n,
            theorem,
            mode: EnumerationMode::AllMatrices,
            limit: None,
            budget: DEFAULT_BUDGET,
            block_size: 1,
        }
    }

    pub fn with_block_size(mut self, t: usize) -> Self {
        self.block_size = t;
        self
    }

    pub fn with_mode(mut self, mode: EnumerationMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_limit(mut self, limit: u64) -> Self {
        self.limit = Some(limit);
        self
    }

    fn dimension(&self) -> usize {
        if self.theorem == TheoremId::BlockCrg {
            self.n * self.block_size
        } else {
            self.n
        }
    }
}

/// One matrix on which the structural test, the brute-force predicate and
/// the library's fast check do not all agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch<T: Scalar> {
    pub index: u64,
    pub matrix: Matrix<T>,
    pub structural: bool,
    pub brute_force: bool,
    pub library: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult<T: Scalar> {
    pub total: u64,
    pub companion_count: u64,
    pub predicate_pass_count: u64,
    pub mismatches: Vec<Mismatch<T>>,
}

fn pow_checked(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn finite_order(spec: &FieldSpec) -> Result<u64> {
    spec.order()
        .ok_or_else(|| Error::Parse("exhaustive enumeration needs a prime field".into()))
}

fn ensure_budget(required: Option<u128>, budget: u128) -> Result<u128> {
    match required {
        Some(r) if r <= budget => Ok(r),
        Some(r) => Err(Error::BudgetExceeded {
            required: r,
            budget,
        }),
        None => Err(Error::BudgetExceeded {
            required: u128::MAX,
            budget,
        }),
    }
}

/// All tuples of `len` field elements, last position varying fastest.
#[derive(Clone, Debug)]
pub struct Odometer<T> {
    digits: Vec<u64>,
    base: u64,
    values: Vec<T>,
    done: bool,
}

impl<T: Scalar> Odometer<T> {
    fn new(spec: &FieldSpec, len: usize) -> Result<Self> {
        let base = finite_order(spec)?;
        let values = (0..base)
            .map(|v| T::parse_in(&v.to_string(), spec))
            .collect::<Result<Vec<_>>>()?;
        Ok(Odometer {
            digits: vec![0; len],
            base,
            values,
            done: len == 0,
        })
    }
}

impl<T: Scalar> Iterator for Odometer<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.done {
            return None;
        }
        let out = self
            .digits
            .iter()
            .map(|&d| self.values[d as usize].clone())
            .collect();
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < self.base {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(out)
    }
}

/// Every vector of `GF(p)^len`, within `budget`.
pub fn enumerate_vectors<T: Scalar>(
    spec: &FieldSpec,
    len: usize,
    budget: u128,
) -> Result<Odometer<T>> {
    ensure_budget(pow_checked(finite_order(spec)?, len), budget)?;
    Odometer::new(spec, len)
}

/// Every `n x n` matrix over `GF(p)` exactly once, in odometer order over
/// the row-major entries.
pub fn enumerate_matrices<T: Scalar>(
    spec: FieldSpec,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Matrix<T>>> {
    let odo = enumerate_vectors::<T>(&spec, n * n, budget)?;
    Ok(odo.map(move |entries| Matrix::new(n, n, entries, spec).expect("n*n entries")))
}

/// Companion matrices `F_p` for every `p` in `GF(p)^n`.
pub fn enumerate_companions<T: Scalar>(
    spec: FieldSpec,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = Matrix<T>>> {
    let odo = enumerate_vectors::<T>(&spec, n, budget)?;
    Ok(odo.map(move |p| make_companion(&CoeffVector::new(p, spec).expect("n > 0 entries"))))
}

fn vectors<T: Scalar>(spec: &FieldSpec, len: usize) -> Vec<Matrix<T>> {
    Odometer::new(spec, len)
        .expect("finite field")
        .map(|v| Matrix::column(v, *spec).expect("len > 0"))
        .collect()
}

fn ensure_pairs(spec: &FieldSpec, len: usize) -> Result<()> {
    let order = finite_order(spec)?;
    ensure_budget(pow_checked(order, 2 * len), DEFAULT_VECTOR_BUDGET).map(|_| ())
}

/// `[v, Av, ..., A^{k-1} v]` from repeated products.
fn krylov_columns<T: Scalar>(a: &Matrix<T>, v: &Matrix<T>, k: usize) -> Matrix<T> {
    let mut cols = vec![v.clone()];
    for _ in 1..k {
        let next = a
            .matmul(cols.last().expect("non-empty"))
            .expect("conformable");
        cols.push(next);
    }
    Matrix::hstack(&cols).expect("same height")
}

fn combination<T: Scalar>(powers: &[Matrix<T>], coeffs: &[T]) -> Matrix<T> {
    let n = powers[0].rows();
    let mut acc = Matrix::zeros(n, powers[0].cols(), powers[0].spec());
    for (pk, c) in powers.iter().zip(coeffs) {
        acc = acc.add(&pk.scale(c)).expect("same shape");
    }
    acc
}

fn all_powers<T: Scalar>(a: &Matrix<T>, count: usize) -> Vec<Matrix<T>> {
    let mut out = vec![Matrix::identity(a.rows(), a.spec())];
    for _ in 1..count {
        out.push(out.last().expect("non-empty").matmul(a).expect("square"));
    }
    out
}

/// `R(A, g) = g(A)` for every `g`.
fn brute_reachability<T: Scalar>(a: &Matrix<T>) -> bool {
    let n = a.rows();
    let powers = all_powers(a, n);
    vectors::<T>(&a.spec(), n)
        .iter()
        .all(|g| krylov_columns(a, g, n) == combination(&powers, g.entries()))
}

/// `R(A, b) g = R(A, g) b` for every pair.
fn brute_h_symmetry<T: Scalar>(a: &Matrix<T>) -> bool {
    let n = a.rows();
    let vs = vectors::<T>(&a.spec(), n);
    let krylov: Vec<Matrix<T>> = vs.iter().map(|v| krylov_columns(a, v, n)).collect();
    for (i, b) in vs.iter().enumerate() {
        for (j, g) in vs.iter().enumerate() {
            if krylov[i].matmul(g).unwrap() != krylov[j].matmul(b).unwrap() {
                return false;
            }
        }
    }
    true
}

/// Row `k` of `u(A; b, g)`: `e_{n-1}^T (sum_{j >= k} b_j A^{j-k}) g`.
fn u_rows<T: Scalar>(powers: &[Matrix<T>], b: &[T], g: &Matrix<T>) -> Vec<T> {
    let n = b.len();
    (0..n)
        .map(|k| {
            let op = combination(&powers[..n - k], &b[k..]);
            op.matmul(g).unwrap().get(n - 1, 0).clone()
        })
        .collect()
}

fn brute_u_symmetry<T: Scalar>(a: &Matrix<T>) -> bool {
    let n = a.rows();
    let powers = all_powers(a, n);
    let vs = vectors::<T>(&a.spec(), n);
    for b in &vs {
        for g in &vs {
            if u_rows(&powers, b.entries(), g) != u_rows(&powers, g.entries(), b) {
                return false;
            }
        }
    }
    true
}

/// The stacked rows `e_{n-1}^T A^{n-1-i}` against the unit-diagonal matrix
/// with `e_{n-1}^T A^{j-i} e_{n-1}` above the diagonal.
fn brute_jmtrs<T: Scalar>(a: &Matrix<T>) -> bool {
    let n = a.rows();
    let powers = all_powers(a, n);
    let spec = a.spec();
    for i in 0..n {
        for j in 0..n {
            let left = powers[n - 1 - i].get(n - 1, j).clone();
            let right = if j < i {
                T::zero_in(&spec)
            } else if j == i {
                T::one_in(&spec)
            } else {
                powers[j - i].get(n - 1, n - 1).clone()
            };
            if left != right {
                return false;
            }
        }
    }
    true
}

/// Polynomial arithmetic on coefficient lists (degree 0 first), for the
/// cofactor-expansion determinant.
fn poly_mul<T: Scalar>(x: &[T], y: &[T], spec: &FieldSpec) -> Vec<T> {
    if x.is_empty() || y.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero_in(spec); x.len() + y.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    out
}

fn poly_add<T: Scalar>(x: &[T], y: &[T], spec: &FieldSpec) -> Vec<T> {
    let len = x.len().max(y.len());
    (0..len)
        .map(|i| {
            let a = x.get(i).cloned().unwrap_or_else(|| T::zero_in(spec));
            let b = y.get(i).cloned().unwrap_or_else(|| T::zero_in(spec));
            a + b
        })
        .collect()
}

fn poly_det<T: Scalar>(m: &[Vec<Vec<T>>], spec: &FieldSpec) -> Vec<T> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Vec::new();
    for j in 0..n {
        let minor: Vec<Vec<Vec<T>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let mut term = poly_mul(&m[0][j], &poly_det(&minor, spec), spec);
        if j % 2 == 1 {
            term = term.into_iter().map(|c| -c).collect();
        }
        acc = poly_add(&acc, &term, spec);
    }
    acc
}

/// `det(zI - A)` by Laplace expansion along the first row, coefficients from
/// degree 0 up to degree `n`. Exponential in `n`; meant for `n <= 5`.
pub fn char_poly_by_cofactors<T: Scalar>(a: &Matrix<T>) -> Result<Vec<T>> {
    let n = a.ensure_square()?;
    let spec = a.spec();
    let m: Vec<Vec<Vec<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let neg = -a.get(i, j).clone();
                    if i == j {
                        vec![neg, T::one_in(&spec)]
                    } else {
                        vec![neg]
                    }
                })
                .collect()
        })
        .collect();
    let mut det = poly_det(&m, &spec);
    det.resize(n + 1, T::zero_in(&spec));
    Ok(det)
}

/// The crossover identity for every extended pair, with `p` from the
/// cofactor characteristic polynomial.
fn brute_crossover<T: Scalar>(a: &Matrix<T>) -> bool {
    let n = a.rows();
    let spec = a.spec();
    let chi = char_poly_by_cofactors(a).expect("square");
    let p = Matrix::column((0..n).map(|i| -chi[i].clone()).collect(), spec).unwrap();
    let powers = all_powers(a, n + 1);
    let ext = vectors::<T>(&spec, n + 1);
    let shifted = |v: &Matrix<T>| -> Matrix<T> {
        let head = v.submatrix(0, 0, n, 1).unwrap();
        head.add(&p.scale(v.get(n, 0))).unwrap()
    };
    let weighted: Vec<Matrix<T>> = ext
        .iter()
        .map(|v| combination(&powers, v.entries()))
        .collect();
    let shifted: Vec<Matrix<T>> = ext.iter().map(shifted).collect();
    for i in 0..ext.len() {
        for j in 0..ext.len() {
            // b = ext[i], g = ext[j]
            let lhs = weighted[j].matmul(&shifted[i]).unwrap();
            let rhs = weighted[i].matmul(&shifted[j]).unwrap();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

fn blocks_commute<T: Scalar>(b: &[Matrix<T>], g: &[Matrix<T>]) -> bool {
    b.iter().all(|bi| {
        g.iter()
            .all(|gj| bi.matmul(gj).unwrap() == gj.matmul(bi).unwrap())
    })
}

/// Every `nt x t` matrix and the index pairs `(i, j)` whose blocks commute,
/// computed once per run.
struct CommutingPairs<T: Scalar> {
    columns: Vec<Matrix<T>>,
    pairs: Vec<(usize, usize)>,
}

impl<T: Scalar> CommutingPairs<T> {
    fn new(spec: &FieldSpec, n: usize, t: usize) -> Self {
        let dim = n * t;
        let columns: Vec<Matrix<T>> = Odometer::new(spec, dim * t)
            .expect("finite field")
            .map(|e| Matrix::new(dim, t, e, *spec).unwrap())
            .collect();
        let blocks: Vec<Vec<Matrix<T>>> = columns
            .iter()
            .map(|m| {
                (0..n)
                    .map(|i| m.submatrix(i * t, 0, t, t).unwrap())
                    .collect()
            })
            .collect();
        let mut pairs = Vec::new();
        for i in 0..columns.len() {
            for j in i + 1..columns.len() {
                if blocks_commute(&blocks[i], &blocks[j]) {
                    pairs.push((i, j));
                }
            }
        }
        CommutingPairs { columns, pairs }
    }
}

/// `R(A, B) G = R(A, G) B` for every blockwise commuting pair of `nt x t`
/// matrices. Pairs with `B = G` hold trivially and are skipped.
fn brute_block_crg<T: Scalar>(a: &Matrix<T>, t: usize, ctx: &CommutingPairs<T>) -> bool {
    let n = a.rows() / t;
    let reach = |m: &Matrix<T>| -> Matrix<T> {
        let mut parts = vec![m.clone()];
        for _ in 1..n {
            let next = a.matmul(parts.last().unwrap()).unwrap();
            parts.push(next);
        }
        Matrix::hstack(&parts).unwrap()
    };
    let reach: Vec<Matrix<T>> = ctx.columns.iter().map(reach).collect();
    ctx.pairs.iter().all(|&(i, j)| {
        reach[i].matmul(&ctx.columns[j]).unwrap() == reach[j].matmul(&ctx.columns[i]).unwrap()
    })
}

/// The structural test the theorem compares against.
pub fn structural_reference<T: Scalar>(task: &EnumerationTask, a: &Matrix<T>) -> Result<bool> {
    if task.theorem == TheoremId::BlockCrg {
        Ok(is_block_companion_structural(a, task.block_size)?.is_companion())
    } else {
        Ok(is_companion_structural(a)?.is_companion())
    }
}

/// `(brute force, library)` verdicts for one matrix.
fn evaluate<T: Scalar>(
    task: &EnumerationTask,
    a: &Matrix<T>,
    ctx: Option<&CommutingPairs<T>>,
) -> Result<(bool, bool)> {
    let t = task.block_size;
    Ok(match task.theorem {
        TheoremId::Reachability => (brute_reachability(a), krylov_basis_test(a)?),
        TheoremId::HSymmetry => (brute_h_symmetry(a), check_h_symmetry(a)?.holds()),
        TheoremId::USymmetry => (brute_u_symmetry(a), check_u_symmetry(a)?.holds()),
        TheoremId::Jmtrs => (brute_jmtrs(a), check_jmtrs(a)?.holds()),
        TheoremId::Crossover => (brute_crossover(a), check_crossover_universal(a)?.holds()),
        TheoremId::BlockCrg => (
            brute_block_crg(a, t, ctx.expect("pairs for block tasks")),
            crg_certified_test(a, t)?,
        ),
    })
}

/// Compares the structural test against the theorem's brute-force predicate
/// (and the library's fast check) on every enumerated matrix.
pub fn run_equivalence<T: Scalar>(task: &EnumerationTask) -> Result<EnumerationResult<T>> {
    run_against(task, |a| structural_reference(task, a))
}

/// As [`run_equivalence`], with `reference` in place of the structural
/// test; `companion_count` then counts matrices accepted by `reference`.
pub fn run_against<T: Scalar, F>(
    task: &EnumerationTask,
    reference: F,
) -> Result<EnumerationResult<T>>
where
    F: Fn(&Matrix<T>) -> Result<bool>,
{
    let dim = task.dimension();
    if dim == 0 || task.block_size == 0 {
        return Err(Error::DimensionMismatch(
            "dimension must be positive".into(),
        ));
    }
    let order = finite_order(&task.spec)?;
    let vector_len = match task.theorem {
        TheoremId::Reachability | TheoremId::Jmtrs => 0,
        TheoremId::HSymmetry | TheoremId::USymmetry => dim,
        TheoremId::Crossover => dim + 1,
        TheoremId::BlockCrg => dim * task.block_size,
    };
    ensure_pairs(&task.spec, vector_len)?;
    let matrix_count = match task.mode {
        EnumerationMode::AllMatrices => pow_checked(order, dim * dim),
        EnumerationMode::CompanionOnly => pow_checked(order, task.n * task.block_size.pow(2)),
    };
    let matrix_count = match (matrix_count, task.limit) {
        (Some(c), Some(l)) => Some(c.min(l as u128)),
        (c, _) => c,
    };
    let work = matrix_count.and_then(|c| c.checked_mul(pow_checked(order, 2 * vector_len)?));
    ensure_budget(work, DEFAULT_WORK_BUDGET)?;

    let matrices: Box<dyn Iterator<Item = Matrix<T>>> = match task.mode {
        EnumerationMode::AllMatrices => {
            if task.limit.is_none() {
                ensure_budget(pow_checked(order, dim * dim), task.budget)?;
            }
            Box::new(
                Odometer::<T>::new(&task.spec, dim * dim)?
                    .map(move |e| Matrix::new(dim, dim, e, task.spec).expect("dim*dim entries")),
            )
        }
        EnumerationMode::CompanionOnly => {
            if task.theorem == TheoremId::BlockCrg {
                let (n, t, spec) = (task.n, task.block_size, task.spec);
                ensure_budget(pow_checked(order, n * t * t), task.budget)?;
                Box::new(Odometer::<T>::new(&spec, n * t * t)?.map(move |e| {
                    let col = Matrix::new(n * t, t, e, spec).expect("n*t*t entries");
                    crate::block::make_block_companion(
                        &BlockColumn::from_matrix(&col, t).expect("t divides nt"),
                    )
                    .expect("square blocks")
                }))
            } else {
                Box::new(enumerate_companions::<T>(task.spec, dim, task.budget)?)
            }
        }
    };
    let ctx = (task.theorem == TheoremId::BlockCrg)
        .then(|| CommutingPairs::new(&task.spec, task.n, task.block_size));
    let limit = task.limit.unwrap_or(u64::MAX);

    let mut result = EnumerationResult {
        total: 0,
        companion_count: 0,
        predicate_pass_count: 0,
        mismatches: Vec::new(),
    };
    for (index, a) in matrices
        .take(limit.min(usize::MAX as u64) as usize)
        .enumerate()
    {
        let structural = reference(&a)?;
        let (brute_force, library) = evaluate(task, &a, ctx.as_ref())?;
        result.total += 1;
        result.companion_count += structural as u64;
        result.predicate_pass_count += brute_force as u64;
        if structural != brute_force || structural != library {
            result.mismatches.push(Mismatch {
                index: index as u64,
                matrix: a,
                structural,
                brute_force,
                library,
            });
        }
    }
    Ok(result)
}
