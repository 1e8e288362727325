//! Recognition of generalized reflections.
//!
//! A linear map `s` is a (generalized) reflection when it is diagonalizable
//! and `s - I` has rank one. Then `s v = v + f(v) alpha` for a reflection
//! vector `alpha` spanning `im(s - I)` and a linear functional `f`; `alpha` is
//! an eigenvector with eigenvalue `lambda = 1 + f(alpha) != 1`, and the
//! hyperplane `ker f` is fixed pointwise.

use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::{dot, kernel, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReflectError {
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("rank(M - I) = {0}, a reflection needs rank 1")]
    NotRankOne(usize),
    #[error("M - I is rank one but nilpotent (a transvection), so M is not diagonalizable")]
    NotDiagonalizable,
    #[error("reflection eigenvalue is 0, so the matrix is singular")]
    Singular,
}

/// Canonical data of a recognized reflection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflectionData {
    pub matrix: Matrix,
    /// Spans `im(M - I)`; first nonzero coordinate normalized to 1.
    pub alpha: Vector,
    pub lambda: Scalar,
    /// `ker(M - I)`, of dimension `n - 1`.
    pub hyperplane: Subspace,
    /// Coefficients of `f` with `M v = v + f(v) alpha`.
    pub functional: Vector,
}

impl ReflectionData {
    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// `f(v)`.
    pub fn eval_functional(&self, v: &[Scalar]) -> Scalar {
        dot(&self.functional, v)
    }

    /// Whether the reflection fixes `v`, i.e. `f(v) = 0`.
    pub fn fixes_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim(), "vector length must match reflection size");
        self.eval_functional(v).is_zero()
    }
}

pub fn recognize_reflection(m: &Matrix) -> Result<ReflectionData, ReflectError> {
    if !m.is_square() {
        return Err(ReflectError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let diff = m.sub(&Matrix::identity(n));
    let rank = diff.rank();
    if rank != 1 {
        return Err(ReflectError::NotRankOne(rank));
    }
    // trace(M) = (n - 1) + lambda for a rank-one perturbation of I.
    let lambda = &m.trace() - &Scalar::int(n as i64 - 1);
    if lambda.is_one() {
        return Err(ReflectError::NotDiagonalizable);
    }
    if lambda.is_zero() {
        return Err(ReflectError::Singular);
    }
    let column = (0..n)
        .map(|j| diff.col(j))
        .find(|c| c.iter().any(|x| !x.is_zero()))
        .expect("rank one matrix has a nonzero column");
    let lead = column
        .iter()
        .position(|x| !x.is_zero())
        .expect("nonzero column");
    let scale = column[lead].inv();
    let alpha: Vector = column.iter().map(|x| x * &scale).collect();
    // M - I = alpha f^T and alpha[lead] = 1, so f is row `lead` of M - I.
    let functional = diff.row(lead).to_vec();
    Ok(ReflectionData {
        matrix: m.clone(),
        alpha,
        lambda,
        hyperplane: kernel(&diff),
        functional,
    })
}

/// The reflection `v -> v + f(v) alpha`, as a matrix `I + alpha f^T`.
pub fn reflection_matrix(alpha: &[Scalar], functional: &[Scalar]) -> Matrix {
    let n = alpha.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let x = &m[(i, j)] + &(&alpha[i] * &functional[j]);
            m[(i, j)] = x;
        }
    }
    m
}
