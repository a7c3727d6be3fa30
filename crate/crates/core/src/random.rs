//! Reproducible random inputs.
//!
//! The generator is a 64-bit linear congruential generator with Knuth's
//! MMIX constants:
//!
//! ```text
//! state <- state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//! ```
//!
//! Each step yields the high 32 bits of the new state. A 64-bit draw is two
//! steps, high word first. `below(k)` is a 64-bit draw reduced mod `k`.
//!
//! Scalars are drawn as follows:
//!
//! * `Q`: numerator `below(19) - 9`, then denominator `below(18)` mapped to
//!   `-9..=-1, 1..=9` in that order; the fraction is reduced.
//! * `GF(p)`: `below(p)`.
//!
//! Matrices are filled row-major. Any implementation following these rules
//! reproduces the same trial sequence from the same seed.

use crate::block::BlockColumn;
use crate::companion::CoeffVector;
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;

const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
const INCREMENT: u64 = 1_442_695_040_888_963_407;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lcg64 {
    state: u64,
}

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64 { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    pub fn next_u64(&mut self) -> u64 {
        let hi = self.next_u32() as u64;
        let lo = self.next_u32() as u64;
        (hi << 32) | lo
    }

    /// Uniform-ish in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.next_u64() % bound
    }

    pub fn coin(&mut self) -> bool {
        self.below(2) == 1
    }
}

pub fn scalar<T: Scalar>(spec: &FieldSpec, rng: &mut Lcg64) -> T {
    match spec.modulus() {
        None => {
            let num = rng.below(19) as i64 - 9;
            let d = rng.below(18) as i64;
            let den = if d < 9 { d - 9 } else { d - 8 };
            T::from_ratio(num, den, spec).expect("nonzero denominator")
        }
        Some(p) => {
            let r = rng.below(p);
            T::parse_in(&r.to_string(), spec).expect("residue literal")
        }
    }
}

pub fn matrix<T: Scalar>(rows: usize, cols: usize, spec: FieldSpec, rng: &mut Lcg64) -> Matrix<T> {
    Matrix::from_fn(rows, cols, spec, |_, _| scalar(&spec, rng))
}

pub fn coeff_vector<T: Scalar>(n: usize, spec: FieldSpec, rng: &mut Lcg64) -> CoeffVector<T> {
    CoeffVector::new((0..n).map(|_| scalar(&spec, rng)).collect(), spec)
        .expect("n > 0 entries in one field")
}

pub fn block_column<T: Scalar>(
    n: usize,
    t: usize,
    m: usize,
    spec: FieldSpec,
    rng: &mut Lcg64,
) -> BlockColumn<T> {
    BlockColumn::new((0..n).map(|_| matrix(t, m, spec, rng)).collect()).expect("uniform blocks")
}

/// Two block columns whose blocks are all polynomials of degree `< t` in one
/// random `t x t` matrix, so every pair of blocks commutes.
pub fn commuting_pair<T: Scalar>(
    n: usize,
    t: usize,
    spec: FieldSpec,
    rng: &mut Lcg64,
) -> Result<(BlockColumn<T>, BlockColumn<T>)> {
    let seed: Matrix<T> = matrix(t, t, spec, rng);
    let powers = seed.powers(t)?;
    let poly_in_seed = |rng: &mut Lcg64| -> Result<Matrix<T>> {
        let mut acc = Matrix::zeros(t, t, spec);
        for pk in &powers {
            acc = acc.add(&pk.scale(&scalar(&spec, rng)))?;
        }
        Ok(acc)
    };
    let b = (0..n)
        .map(|_| poly_in_seed(rng))
        .collect::<Result<Vec<_>>>()?;
    let g = (0..n)
        .map(|_| poly_in_seed(rng))
        .collect::<Result<Vec<_>>>()?;
    Ok((BlockColumn::new(b)?, BlockColumn::new(g)?))
}

/// A random matrix that is not a second companion matrix.
///
/// Draws until one is found; over `GF(2)` with `n = 1` every matrix is a
/// companion, so this panics for `n = 1`.
pub fn non_companion<T: Scalar>(n: usize, spec: FieldSpec, rng: &mut Lcg64) -> Matrix<T> {
    assert!(n >= 2, "every 1x1 matrix is a companion matrix");
    loop {
        let a = matrix(n, n, spec, rng);
        let shaped = crate::companion::is_companion_structural(&a)
            .expect("square")
            .is_companion();
        if !shaped {
            return a;
        }
    }
}
