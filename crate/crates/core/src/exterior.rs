//! Exterior powers in coordinates.
//!
//! The coordinates of `Λ^d F^n` are indexed by the `d`-subsets of
//! `{0, .., n-1}` in lexicographic order; the subset `{i1 < .. < id}` stands
//! for `e_i1 ∧ .. ∧ e_id`. A linear map acts on `Λ^d` by its `d`-th compound
//! matrix, and a wedge of `d` vectors has the `d x d` minors of their stacked
//! `n x d` matrix as coordinates. Every sign in this crate follows from those
//! two conventions.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::{eigenspace, is_zero_vector, LinalgError, Matrix, Subspace, Vector};
use crate::reflect::ReflectionData;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("degree {d} out of range 0..={n}")]
    BadDegree { d: usize, n: usize },
    #[error("alpha together with the extension vectors is not a basis")]
    NotABasis,
    #[error("reflection vectors are linearly dependent")]
    DependentAlphas,
    #[error("no reflections given")]
    NoReflections,
    #[error("reflections act on spaces of different dimension")]
    DimensionMismatch,
    #[error("explicit {which} basis disagrees with the eigenspace of the compound matrix")]
    EigenspaceMismatch { which: &'static str },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `C(n, k)`, zero whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// A coordinate of `Λ^d F^n`: a strictly increasing list of indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExtIndex {
    n: usize,
    elems: Vec<usize>,
}

impl ExtIndex {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Option<Self> {
        let len = elems.len();
        elems.sort_unstable();
        elems.dedup();
        (elems.len() == len && elems.iter().all(|&e| e < n)).then_some(ExtIndex { n, elems })
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn degree(&self) -> usize {
        self.elems.len()
    }

    /// Position in the lexicographic enumeration of all `d`-subsets.
    pub fn position(&self) -> usize {
        let d = self.elems.len() as i64;
        let n = self.n as i64;
        let mut pos = 0;
        let mut prev: i64 = -1;
        for (i, &e) in self.elems.iter().enumerate() {
            let remaining = d - i as i64 - 1;
            for skipped in prev + 1..e as i64 {
                pos += binomial(n - skipped - 1, remaining);
            }
            prev = e as i64;
        }
        pos
    }

    pub fn at(n: usize, d: usize, position: usize) -> Option<Self> {
        subsets(n, d).into_iter().nth(position).map(|elems| ExtIndex { n, elems })
    }
}

/// All `d`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    (0..n).combinations(d).collect()
}

fn check_degree(d: usize, n: usize) -> Result<(), ExteriorError> {
    if d > n {
        Err(ExteriorError::BadDegree { d, n })
    } else {
        Ok(())
    }
}

/// The `d`-th compound matrix: entry `(J, I)` is the minor on rows `J`,
/// columns `I`.
pub fn compound(m: &Matrix, d: usize) -> Result<Matrix, ExteriorError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()).into());
    }
    let n = m.rows();
    check_degree(d, n)?;
    let index = subsets(n, d);
    let size = index.len();
    let mut data = Vec::with_capacity(size * size);
    for rows in &index {
        for cols in &index {
            data.push(m.submatrix(rows, cols).det()?);
        }
    }
    Ok(Matrix::from_vec(size, size, data)?)
}

/// Coordinates of `v1 ∧ .. ∧ vd`. All vectors must have the same length `n`.
/// An empty list gives the unit of `Λ^0`, and `n` must then be supplied.
pub fn wedge_in(n: usize, vectors: &[Vector]) -> Vector {
    assert!(vectors.iter().all(|v| v.len() == n), "wedge factors must have length {n}");
    let d = vectors.len();
    if d == 0 {
        return vec![Scalar::one()];
    }
    let mut data = Vec::with_capacity(n * d);
    for i in 0..n {
        for v in vectors {
            data.push(v[i].clone());
        }
    }
    let stack = Matrix::from_vec(n, d, data).expect("consistent field");
    let all_cols: Vec<usize> = (0..d).collect();
    subsets(n, d)
        .iter()
        .map(|rows| stack.submatrix(rows, &all_cols).det().expect("square minor"))
        .collect()
}

/// Wedge of a nonempty list of equal-length vectors.
pub fn wedge(vectors: &[Vector]) -> Vector {
    let n = vectors.first().expect("use wedge_in for the empty wedge").len();
    wedge_in(n, vectors)
}

/// Eigenspaces of a reflection on `Λ^d`: `plus` for eigenvalue 1, `minus`
/// for the reflection's own eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EigenSplit {
    pub d: usize,
    pub plus: Subspace,
    pub minus: Subspace,
}

/// Builds both eigenspaces from wedges of a hyperplane basis (and of `alpha`
/// with hyperplane vectors) and checks them against the kernels of
/// `compound(s, d) - mu I`.
pub fn eigen_split(r: &ReflectionData, d: usize) -> Result<EigenSplit, ExteriorError> {
    let n = r.dim();
    check_degree(d, n)?;
    let dim = binomial(n as i64, d as i64);
    let h = r.hyperplane.basis_vectors();
    let plus_vectors: Vec<Vector> = subsets(h.len(), d)
        .iter()
        .map(|s| wedge_in(n, &pick(&h, s)))
        .collect();
    let minus_vectors: Vec<Vector> = if d == 0 {
        Vec::new()
    } else {
        subsets(h.len(), d - 1)
            .iter()
            .map(|s| {
                let mut factors = vec![r.alpha.clone()];
                factors.extend(pick(&h, s));
                wedge_in(n, &factors)
            })
            .collect()
    };
    let plus = Subspace::span(dim, &plus_vectors);
    let minus = Subspace::span(dim, &minus_vectors);

    let c = compound(&r.matrix, d)?;
    if plus != eigenspace(&c, &Scalar::one()) {
        return Err(ExteriorError::EigenspaceMismatch { which: "plus" });
    }
    if minus != eigenspace(&c, &r.lambda) {
        return Err(ExteriorError::EigenspaceMismatch { which: "minus" });
    }
    Ok(EigenSplit { d, plus, minus })
}

fn pick(vectors: &[Vector], indices: &[usize]) -> Vec<Vector> {
    indices.iter().map(|&i| vectors[i].clone()).collect()
}

/// Wedges `alpha ∧ a_{i1} ∧ .. ∧ a_{i(d-1)}` over an arbitrary completion
/// `ext` of `alpha` to a basis.
pub fn minus_basis_from_any_extension(
    r: &ReflectionData,
    ext: &[Vector],
    d: usize,
) -> Result<Vec<Vector>, ExteriorError> {
    let n = r.dim();
    check_degree(d, n)?;
    if ext.len() + 1 != n || ext.iter().any(|v| v.len() != n) {
        return Err(ExteriorError::NotABasis);
    }
    let mut all = vec![r.alpha.clone()];
    all.extend_from_slice(ext);
    if Subspace::span(n, &all).dim() != n {
        return Err(ExteriorError::NotABasis);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    Ok(subsets(n - 1, d - 1)
        .iter()
        .map(|s| {
            let mut factors = vec![r.alpha.clone()];
            factors.extend(pick(ext, s));
            wedge_in(n, &factors)
        })
        .collect())
}

/// Extends independent vectors to a basis with standard unit vectors,
/// greedily in index order.
pub fn extend_to_basis(vectors: &[Vector], n: usize) -> Vec<Vector> {
    let mut basis = vectors.to_vec();
    let mut span = Subspace::span(n, &basis);
    for i in 0..n {
        if span.is_full() {
            break;
        }
        let e = crate::linalg::unit_vector(n, i);
        if !span.contains(&e) {
            basis.push(e);
            span = Subspace::span(n, &basis);
        }
    }
    basis
}

/// Common `lambda_i`-eigenspace of reflections with independent vectors
/// `alpha_1 .. alpha_k` on `Λ^d`: zero for `d < k`, otherwise spanned by
/// `alpha_1 ∧ .. ∧ alpha_k ∧ (d - k of the completing vectors)`.
pub fn minus_intersection(refls: &[ReflectionData], d: usize) -> Result<Subspace, ExteriorError> {
    let Some(first) = refls.first() else {
        return Err(ExteriorError::NoReflections);
    };
    let n = first.dim();
    if refls.iter().any(|r| r.dim() != n) {
        return Err(ExteriorError::DimensionMismatch);
    }
    check_degree(d, n)?;
    let k = refls.len();
    let alphas: Vec<Vector> = refls.iter().map(|r| r.alpha.clone()).collect();
    if Subspace::span(n, &alphas).dim() != k {
        return Err(ExteriorError::DependentAlphas);
    }
    let dim = binomial(n as i64, d as i64);
    if d < k {
        return Ok(Subspace::zero(dim));
    }
    let basis = extend_to_basis(&alphas, n);
    let completion = &basis[k..];
    let vectors: Vec<Vector> = subsets(n - k, d - k)
        .iter()
        .map(|s| {
            let mut factors = alphas.clone();
            factors.extend(pick(completion, s));
            wedge_in(n, &factors)
        })
        .collect();
    Ok(Subspace::span(dim, &vectors))
}

/// `Λ^d H` inside `Λ^d` of the ambient space. Zero when `d > dim H`.
pub fn exterior_subspace(h: &Subspace, d: usize) -> Result<Subspace, ExteriorError> {
    let n = h.ambient_dim();
    check_degree(d, n)?;
    let basis = h.basis_vectors();
    let vectors: Vec<Vector> = subsets(basis.len(), d)
        .iter()
        .map(|s| wedge_in(n, &pick(&basis, s)))
        .filter(|w| !is_zero_vector(w))
        .collect();
    Ok(Subspace::span(binomial(n as i64, d as i64), &vectors))
}
