//! Block companion matrices.
//!
//! For `t x t` blocks `P_0, ..., P_{n-1}` the block companion matrix `F_P`
//! is the `nt x nt` matrix with `I_t` on the block subdiagonal and the block
//! column `P` on the right:
//!
//! ```text
//!     [ 0   0  ...  0   P_0     ]
//!     [ I_t 0  ...  0   P_1     ]
//!     [     ...                 ]
//!     [ 0   0  ...  I_t P_{n-1} ]
//! ```
//!
//! With `t = 1` everything here reduces to the scalar case in
//! [`crate::companion`] and [`crate::bilinear`].

use crate::companion::{CompanionReport, Criterion, Structure, Witness};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{unit_vector, Matrix};
use crate::random::{self, Lcg64};

/// A tall matrix split into `n` stacked blocks of equal shape `t x m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockColumn<T: Scalar> {
    blocks: Vec<Matrix<T>>,
    spec: FieldSpec,
}

impl<T: Scalar> BlockColumn<T> {
    pub fn new(blocks: Vec<Matrix<T>>) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("block column with no blocks".into()))?;
        let (t, m, spec) = (first.rows(), first.cols(), first.spec());
        for b in &blocks {
            spec.ensure_same(&b.spec())?;
            if b.rows() != t || b.cols() != m {
                return Err(Error::DimensionMismatch(format!(
                    "block {}x{} in a column of {t}x{m} blocks",
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(BlockColumn { blocks, spec })
    }

    /// Splits an `nt x m` matrix into `t`-row blocks.
    pub fn from_matrix(mat: &Matrix<T>, t: usize) -> Result<Self> {
        if t == 0 || !mat.rows().is_multiple_of(t) {
            return Err(Error::BadBlockSize { t, dim: mat.rows() });
        }
        let blocks = (0..mat.rows() / t)
            .map(|i| mat.submatrix(i * t, 0, t, mat.cols()))
            .collect::<Result<Vec<_>>>()?;
        BlockColumn::new(blocks)
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::vstack(&self.blocks).expect("uniform blocks")
    }

    /// Number of blocks.
    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    /// Rows per block.
    pub fn t(&self) -> usize {
        self.blocks[0].rows()
    }

    /// Columns per block.
    pub fn width(&self) -> usize {
        self.blocks[0].cols()
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn block(&self, i: usize) -> &Matrix<T> {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Matrix<T>] {
        &self.blocks
    }

    fn ensure_square_blocks(&self) -> Result<()> {
        if self.t() != self.width() {
            return Err(Error::DimensionMismatch(format!(
                "expected square blocks, got {}x{}",
                self.t(),
                self.width()
            )));
        }
        Ok(())
    }
}

/// Block-indexed access to a matrix whose dimensions are multiples of `t`.
#[derive(Clone, Copy, Debug)]
pub struct BlockMatrixView<'a, T: Scalar> {
    base: &'a Matrix<T>,
    t: usize,
}

impl<'a, T: Scalar> BlockMatrixView<'a, T> {
    pub fn new(base: &'a Matrix<T>, t: usize) -> Result<Self> {
        if t == 0 || !base.rows().is_multiple_of(t) {
            return Err(Error::BadBlockSize {
                t,
                dim: base.rows(),
            });
        }
        if !base.cols().is_multiple_of(t) {
            return Err(Error::BadBlockSize {
                t,
                dim: base.cols(),
            });
        }
        Ok(BlockMatrixView { base, t })
    }

    pub fn block_rows(&self) -> usize {
        self.base.rows() / self.t
    }

    pub fn block_cols(&self) -> usize {
        self.base.cols() / self.t
    }

    pub fn block(&self, i: usize, j: usize) -> Result<Matrix<T>> {
        self.base.submatrix(i * self.t, j * self.t, self.t, self.t)
    }

    /// Block column `j` as a [`BlockColumn`].
    pub fn block_column(&self, j: usize) -> Result<BlockColumn<T>> {
        let col = self
            .base
            .submatrix(0, j * self.t, self.base.rows(), self.t)?;
        BlockColumn::from_matrix(&col, self.t)
    }
}

/// `F_P`. With `t = 1` this is `make_companion`.
pub fn make_block_companion<T: Scalar>(p: &BlockColumn<T>) -> Result<Matrix<T>> {
    p.ensure_square_blocks()?;
    let (n, t, spec) = (p.n(), p.t(), p.spec());
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    Ok(Matrix::from_fn(n * t, n * t, spec, |r, c| {
        let (bi, bj) = (r / t, c / t);
        if bj == n - 1 {
            p.blocks[bi].get(r % t, c % t).clone()
        } else if bi == bj + 1 && r % t == c % t {
            o.clone()
        } else {
            z.clone()
        }
    }))
}

/// `E_i = e_i ⊗ I_t`.
pub fn block_unit<T: Scalar>(
    i: usize,
    n: usize,
    t: usize,
    spec: FieldSpec,
) -> Result<BlockColumn<T>> {
    if t == 0 {
        return Err(Error::BadBlockSize { t, dim: 0 });
    }
    let e = unit_vector::<T>(i, n, spec)?;
    BlockColumn::from_matrix(&e.kron(&Matrix::identity(t, spec))?, t)
}

fn block_count<T: Scalar>(a: &Matrix<T>, t: usize) -> Result<usize> {
    let dim = a.ensure_square()?;
    if t == 0 || dim % t != 0 {
        return Err(Error::BadBlockSize { t, dim });
    }
    Ok(dim / t)
}

/// `B(A) = (I_n ⊗ B_0) + A (I_n ⊗ B_1) + ... + A^{n-1} (I_n ⊗ B_{n-1})`.
pub fn operator_subst<T: Scalar>(b: &BlockColumn<T>, a: &Matrix<T>) -> Result<Matrix<T>> {
    let (n, t) = (b.n(), b.t());
    if block_count(a, t)? != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} blocks of height {t} against a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    a.spec().ensure_same(&b.spec())?;
    let i_n = Matrix::identity(n, a.spec());
    let powers = a.powers(n)?;
    let mut acc = Matrix::zeros(n * t, n * b.width(), a.spec());
    for (pj, bj) in powers.iter().zip(&b.blocks) {
        acc = acc.add(&pj.matmul(&i_n.kron(bj)?)?)?;
    }
    Ok(acc)
}

/// `R(A, B) = [B, AB, ..., A^{n-1} B]` with `n = dim(A) / t`.
pub fn block_reachability<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, t: usize) -> Result<Matrix<T>> {
    let n = block_count(a, t)?;
    a.spec().ensure_same(&b.spec())?;
    if b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows against a {}x{} matrix",
            b.rows(),
            a.rows(),
            a.cols()
        )));
    }
    let mut parts = Vec::with_capacity(n);
    let mut v = b.clone();
    for _ in 0..n {
        let next = a.matmul(&v)?;
        parts.push(v);
        v = next;
    }
    Matrix::hstack(&parts)
}

/// `B_i G_j = G_j B_i` for all `i, j`.
pub fn blockwise_commuting<T: Scalar>(b: &BlockColumn<T>, g: &BlockColumn<T>) -> Result<bool> {
    b.spec().ensure_same(&g.spec())?;
    b.ensure_square_blocks()?;
    g.ensure_square_blocks()?;
    if b.n() != g.n() || b.t() != g.t() {
        return Err(Error::DimensionMismatch(
            "block columns differ in shape".into(),
        ));
    }
    for bi in &b.blocks {
        for gj in &g.blocks {
            if bi.matmul(gj)? != gj.matmul(bi)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(R(A, B) G, R(A, G) B)` without the commuting precondition.
pub fn crg_sides<T: Scalar>(
    a: &Matrix<T>,
    b: &BlockColumn<T>,
    g: &BlockColumn<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    let t = b.t();
    let (bm, gm) = (b.to_matrix(), g.to_matrix());
    let lhs = block_reachability(a, &bm, t)?.matmul(&gm)?;
    let rhs = block_reachability(a, &gm, t)?.matmul(&bm)?;
    Ok((lhs, rhs))
}

/// `R(A, B) G = R(A, G) B` for a blockwise commuting pair.
pub fn check_block_crg<T: Scalar>(
    a: &Matrix<T>,
    b: &BlockColumn<T>,
    g: &BlockColumn<T>,
) -> Result<bool> {
    if !blockwise_commuting(b, g)? {
        return Err(Error::NotBlockwiseCommuting);
    }
    let (lhs, rhs) = crg_sides(a, b, g)?;
    Ok(lhs == rhs)
}

/// Block subdiagonal `I_t`, zeros elsewhere in the first `n-1` block
/// columns; extracts the last block column on success.
pub fn is_block_companion_structural<T: Scalar>(
    a: &Matrix<T>,
    t: usize,
) -> Result<Structure<T, BlockColumn<T>>> {
    let n = block_count(a, t)?;
    let spec = a.spec();
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    // Scalar column c < (n-1)t must be e_{c+t}.
    for c in 0..(n - 1) * t {
        for r in 0..n * t {
            let expected = if r == c + t { &o } else { &z };
            if a.get(r, c) != expected {
                return Ok(Structure::NotCompanion(Witness {
                    row: r,
                    column: c,
                    expected: expected.clone(),
                    found: a.get(r, c).clone(),
                }));
            }
        }
    }
    Ok(Structure::Companion(
        BlockMatrixView::new(a, t)?.block_column(n - 1)?,
    ))
}

/// `R(A, E_0) = I_{nt}`.
pub fn is_block_companion_krylov<T: Scalar>(a: &Matrix<T>, t: usize) -> Result<bool> {
    let n = block_count(a, t)?;
    let e0 = block_unit::<T>(0, n, t, a.spec())?.to_matrix();
    Ok(block_reachability(a, &e0, t)?.is_identity())
}

/// `R(A, E_i) = E_i(A)` for every block unit; since both sides are
/// linear in `G` through `I_n ⊗ G_i`, this decides `R(A, G) = G(A)` for all `G`.
pub fn operator_subst_basis_test<T: Scalar>(a: &Matrix<T>, t: usize) -> Result<bool> {
    let n = block_count(a, t)?;
    for i in 0..n {
        let ei = block_unit::<T>(i, n, t, a.spec())?;
        if block_reachability(a, &ei.to_matrix(), t)? != operator_subst(&ei, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `R(A, G) = G(A)` for the given samples.
pub fn operator_subst_sample_test<T: Scalar>(
    a: &Matrix<T>,
    samples: &[BlockColumn<T>],
) -> Result<bool> {
    for g in samples {
        if block_reachability(a, &g.to_matrix(), g.t())? != operator_subst(g, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The block identity with `G = E_0` and `B` running over the elementary
/// matrices of `K^{nt x t}`. Every such pair is blockwise commuting, and the
/// identity for all of them is `R(A, E_0) = I_{nt}`.
pub fn crg_certified_test<T: Scalar>(a: &Matrix<T>, t: usize) -> Result<bool> {
    let n = block_count(a, t)?;
    let spec = a.spec();
    let e0 = block_unit::<T>(0, n, t, spec)?;
    let (z, o) = (T::zero_in(&spec), T::one_in(&spec));
    for r in 0..n * t {
        for c in 0..t {
            let elem = Matrix::from_fn(n * t, t, spec, |i, j| {
                if (i, j) == (r, c) {
                    o.clone()
                } else {
                    z.clone()
                }
            });
            let b = BlockColumn::from_matrix(&elem, t)?;
            if !check_block_crg(a, &b, &e0)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Random inputs used by [`recognize_block_with`].
#[derive(Clone, Copy, Debug)]
pub struct BlockSampling {
    pub random_g: usize,
    pub commuting_pairs: usize,
}

impl Default for BlockSampling {
    fn default() -> Self {
        BlockSampling {
            random_g: 8,
            commuting_pairs: 8,
        }
    }
}

pub const DEFAULT_BLOCK_SEED: u64 = 0x5eed;

/// [`recognize_block_with`] with the default seed and sample counts.
pub fn recognize_block<T: Scalar>(
    a: &Matrix<T>,
    t: usize,
) -> Result<CompanionReport<T, BlockColumn<T>>> {
    recognize_block_with(
        a,
        t,
        &mut Lcg64::new(DEFAULT_BLOCK_SEED),
        BlockSampling::default(),
    )
}

/// Runs every block criterion and requires them to agree.
///
/// The structural test, `R(A, E_0) = I`, the operator substitution test on
/// block units and the certified block identity decide the question. The
/// random `G` and the generated commuting pairs are extra samples; they can
/// only turn a verdict from true to false.
pub fn recognize_block_with<T: Scalar>(
    a: &Matrix<T>,
    t: usize,
    rng: &mut Lcg64,
    sampling: BlockSampling,
) -> Result<CompanionReport<T, BlockColumn<T>>> {
    let n = block_count(a, t)?;
    let spec = a.spec();
    let report = CompanionReport::new(
        is_block_companion_structural(a, t)?,
        is_block_companion_krylov(a, t)?,
    )?;

    let samples: Vec<BlockColumn<T>> = (0..sampling.random_g)
        .map(|_| random::block_column(n, t, t, spec, rng))
        .collect();
    let subst = operator_subst_basis_test(a, t)? && operator_subst_sample_test(a, &samples)?;

    let mut crg = crg_certified_test(a, t)?;
    for _ in 0..sampling.commuting_pairs {
        let (b, g) = random::commuting_pair(n, t, spec, rng)?;
        crg &= check_block_crg(a, &b, &g)?;
    }

    report
        .with_criterion(Criterion::BlockOperatorSubst, subst)?
        .with_criterion(Criterion::BlockCrg, crg)
}
