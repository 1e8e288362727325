//! Representations given by generator matrices.
//!
//! The group is never enumerated: a representation is the list of matrices
//! by which the generators act, and everything (hom spaces, invariant
//! subspaces) is computed from those matrices alone. A linear map commuting
//! with the generators commutes with every word in them.

use serde::Serialize;
use thiserror::Error;

use crate::exterior::{binomial, compound, subsets, wedge_in, ExteriorError};
use crate::field::{Field, FieldError, Scalar};
use crate::linalg::{
    eigenspace, solve_intertwiner, spin, unflatten, unit_vector, LinalgError, Matrix, Subspace,
    Vector,
};
use crate::poly::{char_poly, roots_in_field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("a representation needs at least one generator")]
    NoGenerators,
    #[error("generator {label} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongShape {
        label: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("generator {0} is not invertible")]
    Singular(String),
    #[error("representations have {0} and {1} generators")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    pub matrix: Matrix,
}

/// A representation of the group generated by the listed matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    dim: usize,
    field: Field,
    generators: Vec<Generator>,
}

impl Representation {
    /// Validates that every generator is an invertible `dim x dim` matrix
    /// over a common field.
    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Self, RepError> {
        Representation::new_over(Field::Rational, dim, generators)
    }

    /// Like [`Representation::new`], working over at least `field` even when
    /// every entry is rational.
    pub fn new_over(field: Field, dim: usize, generators: Vec<Generator>) -> Result<Self, RepError> {
        if generators.is_empty() {
            return Err(RepError::NoGenerators);
        }
        let mut field = field;
        for g in &generators {
            if g.matrix.rows() != dim || g.matrix.cols() != dim {
                return Err(RepError::WrongShape {
                    label: g.label.clone(),
                    rows: g.matrix.rows(),
                    cols: g.matrix.cols(),
                    dim,
                });
            }
            field = field.join(g.matrix.field())?;
            if g.matrix.det()?.is_zero() {
                return Err(RepError::Singular(g.label.clone()));
            }
        }
        Ok(Representation {
            dim,
            field,
            generators,
        })
    }

    /// Generators labelled `s1, s2, ..`.
    pub fn from_matrices(matrices: Vec<Matrix>) -> Result<Self, RepError> {
        let dim = matrices.first().map_or(0, Matrix::rows);
        let generators = matrices
            .into_iter()
            .enumerate()
            .map(|(i, matrix)| Generator {
                label: format!("s{}", i + 1),
                matrix,
            })
            .collect();
        Representation::new(dim, generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn matrices(&self) -> Vec<Matrix> {
        self.generators.iter().map(|g| g.matrix.clone()).collect()
    }

    fn map_generators(&self, dim: usize, f: impl Fn(&Matrix) -> Result<Matrix, RepError>) -> Result<Self, RepError> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    label: g.label.clone(),
                    matrix: f(&g.matrix)?,
                })
            })
            .collect::<Result<Vec<_>, RepError>>()?;
        Representation::new_over(self.field, dim, generators)
    }

    /// `P g P^{-1}` for every generator.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self, RepError> {
        let p_inv = p.inverse()?;
        self.map_generators(self.dim, |g| Ok(&(p * g) * &p_inv))
    }

    /// Same generators in a different order, `order[i]` being the old index.
    pub fn permuted(&self, order: &[usize]) -> Result<Self, RepError> {
        let generators = order.iter().map(|&i| self.generators[i].clone()).collect();
        Representation::new_over(self.field, self.dim, generators)
    }

    /// Block-diagonal sum, generator by generator.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self, RepError> {
        if self.generators.len() != other.generators.len() {
            return Err(RepError::LengthMismatch(self.generators.len(), other.generators.len()));
        }
        let generators = self
            .generators
            .iter()
            .zip(&other.generators)
            .map(|(a, b)| Generator {
                label: a.label.clone(),
                matrix: a.matrix.direct_sum(&b.matrix),
            })
            .collect();
        Representation::new_over(self.field.join(other.field)?, self.dim + other.dim, generators)
    }
}

/// The `d`-th exterior power: generators act by their `d`-th compounds.
pub fn exterior_rep(r: &Representation, d: usize) -> Result<Representation, RepError> {
    let dim = binomial(r.dim as i64, d as i64);
    if d > r.dim {
        return Err(ExteriorError::BadDegree { d, n: r.dim }.into());
    }
    r.map_generators(dim, |g| Ok(compound(g, d)?))
}

/// Contragredient representation: generators act by inverse transposes.
pub fn dual_rep(r: &Representation) -> Result<Representation, RepError> {
    r.map_generators(r.dim, |g| Ok(g.inverse()?.transpose()))
}

/// `r1 ⊗ (det ∘ r)`: each generator of `r1` scaled by the determinant of the
/// matching generator of `r`.
pub fn det_twist(r1: &Representation, r: &Representation) -> Result<Representation, RepError> {
    if r1.generators.len() != r.generators.len() {
        return Err(RepError::LengthMismatch(r1.generators.len(), r.generators.len()));
    }
    let generators = r1
        .generators
        .iter()
        .zip(&r.generators)
        .map(|(a, b)| {
            Ok(Generator {
                label: a.label.clone(),
                matrix: a.matrix.scale(&b.matrix.det()?),
            })
        })
        .collect::<Result<Vec<_>, RepError>>()?;
    Representation::new_over(r1.field.join(r.field)?, r1.dim, generators)
}

/// Space of intertwiners `r1 -> r2`, flattened row-major (`r2.dim x r1.dim`).
pub fn hom_space(r1: &Representation, r2: &Representation) -> Result<Subspace, RepError> {
    if r1.generators.len() != r2.generators.len() {
        return Err(RepError::LengthMismatch(r1.generators.len(), r2.generators.len()));
    }
    Ok(solve_intertwiner(&r1.matrices(), &r2.matrices())?)
}

pub fn hom_dim(r1: &Representation, r2: &Representation) -> Result<usize, RepError> {
    Ok(hom_space(r1, r2)?.dim())
}

/// Matrix of `u -> (u ∧ -)` from `Λ^{n-d}` to the dual of `Λ^d`, with
/// `Λ^n` identified with the field through the coefficient of
/// `e_1 ∧ .. ∧ e_n`. Row `I`, column `J` holds the coefficient of
/// `e_J ∧ e_I`.
pub fn duality_intertwiner(r: &Representation, d: usize) -> Result<Matrix, RepError> {
    let n = r.dim;
    if d > n {
        return Err(ExteriorError::BadDegree { d, n }.into());
    }
    let rows = subsets(n, d);
    let cols = subsets(n, n - d);
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for i in &rows {
        for j in &cols {
            let factors: Vec<Vector> = j.iter().chain(i).map(|&k| unit_vector(n, k)).collect();
            data.push(wedge_in(n, &factors)[0].clone());
        }
    }
    Ok(Matrix::from_vec(rows.len(), cols.len(), data)?)
}

/// Checks `phi * C_{n-d}(g) == det(g) * C_d(g)^{-T} * phi` for every
/// generator.
pub fn duality_holds(r: &Representation, d: usize, phi: &Matrix) -> Result<bool, RepError> {
    let n = r.dim;
    for g in &r.generators {
        let lhs = phi * &compound(&g.matrix, n - d)?;
        let twisted = compound(&g.matrix, d)?.inverse()?.transpose().scale(&g.matrix.det()?);
        if lhs != &twisted * phi {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplicityStatus {
    Simple,
    Reducible,
    Inconclusive,
}

/// What is known about semisimplicity before the commutant is inspected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semisimplicity {
    /// Nothing; only constructive evidence counts.
    Unknown,
    /// Asserted by the caller.
    Assumed,
    /// Exterior power of a simple module in characteristic zero, hence a
    /// summand of a tensor power of a semisimple module.
    InheritedFromSimpleBase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplicityCertificate {
    /// One-dimensional modules are simple.
    OneDimensional,
    /// Semisimple with commutant equal to the scalars.
    ScalarCommutant,
    /// Norton's criterion: `word - eigenvalue` has a one-dimensional kernel
    /// spanned by `vector`, which spins up to the whole space, and the
    /// transposed kernel vector `dual_vector` spins up under the transposed
    /// generators.
    Norton {
        word: Vec<usize>,
        eigenvalue: Scalar,
        vector: Vector,
        dual_vector: Vector,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub status: SimplicityStatus,
    /// Proper nonzero invariant subspace, present exactly when reducible.
    pub witness: Option<Subspace>,
    pub commutant_dim: usize,
    pub semisimplicity: Semisimplicity,
    pub certificate: Option<SimplicityCertificate>,
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        self.status == SimplicityStatus::Simple
    }

    /// Re-checks the witness against the generators.
    pub fn witness_is_valid(&self, r: &Representation) -> bool {
        match &self.witness {
            None => self.status != SimplicityStatus::Reducible,
            Some(w) => {
                self.status == SimplicityStatus::Reducible
                    && w.ambient_dim() == r.dim
                    && !w.is_zero()
                    && !w.is_full()
                    && r.generators.iter().all(|g| w.is_invariant_under(&g.matrix))
            }
        }
    }
}

pub const DEFAULT_WORD_LENGTH: usize = 4;

pub fn simplicity(r: &Representation, premise: Semisimplicity) -> Result<SimplicityVerdict, RepError> {
    simplicity_with(r, premise, DEFAULT_WORD_LENGTH)
}

/// Decides simplicity where it can, with evidence either way.
///
/// With a semisimplicity premise a one-dimensional commutant settles it.
/// Otherwise the search spins up standard basis vectors and kernel vectors
/// of `w - mu` for words `w` of length at most `max_word_len` and
/// eigenvalues `mu` in the base field; a proper spin is a witness, and a
/// Norton pair (both spins full) certifies simplicity. Exhausting the search
/// gives `Inconclusive`.
pub fn simplicity_with(
    r: &Representation,
    premise: Semisimplicity,
    max_word_len: usize,
) -> Result<SimplicityVerdict, RepError> {
    let commutant = hom_space(r, r)?;
    let commutant_dim = commutant.dim();
    let verdict = |status, witness, certificate| SimplicityVerdict {
        status,
        witness,
        commutant_dim,
        semisimplicity: premise,
        certificate,
    };
    if r.dim == 1 {
        return Ok(verdict(
            SimplicityStatus::Simple,
            None,
            Some(SimplicityCertificate::OneDimensional),
        ));
    }
    if premise != Semisimplicity::Unknown && commutant_dim == 1 {
        return Ok(verdict(
            SimplicityStatus::Simple,
            None,
            Some(SimplicityCertificate::ScalarCommutant),
        ));
    }
    if commutant_dim > 1 {
        if let Some(w) = commutant_witness(r, &commutant) {
            return Ok(verdict(SimplicityStatus::Reducible, Some(w), None));
        }
    }
    match spin_search(r, max_word_len) {
        SpinOutcome::Witness(w) => Ok(verdict(SimplicityStatus::Reducible, Some(w), None)),
        SpinOutcome::Norton(cert) => Ok(verdict(SimplicityStatus::Simple, None, Some(cert))),
        SpinOutcome::Exhausted => Ok(verdict(SimplicityStatus::Inconclusive, None, None)),
    }
}

/// Eigenspace of a non-scalar commutant element, if one has an eigenvalue in
/// the base field. Such an eigenspace is proper and invariant.
fn commutant_witness(r: &Representation, commutant: &Subspace) -> Option<Subspace> {
    for v in commutant.basis_vectors() {
        let x = unflatten(&v, r.dim, r.dim);
        let diag = x[(0, 0)].clone();
        if x == Matrix::scalar(r.dim, &diag) {
            continue;
        }
        for mu in roots_in_field(&char_poly(&x), r.field) {
            let e = eigenspace(&x, &mu);
            if !e.is_zero() && !e.is_full() {
                return Some(e);
            }
        }
    }
    None
}

enum SpinOutcome {
    Witness(Subspace),
    Norton(SimplicityCertificate),
    Exhausted,
}

/// Words over generator indices, shortest first, lexicographic within a
/// length.
fn words(k: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=max_len).flat_map(move |len| {
        (0..k.pow(len as u32)).map(move |mut code| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = code % k;
                code /= k;
            }
            w
        })
    })
}

fn word_matrix(r: &Representation, word: &[usize]) -> Matrix {
    word.iter()
        .fold(Matrix::identity(r.dim), |acc, &i| &acc * &r.generators[i].matrix)
}

fn spin_search(r: &Representation, max_word_len: usize) -> SpinOutcome {
    let gens = r.matrices();
    let n = r.dim;
    for i in 0..n {
        let s = spin(&gens, &[unit_vector(n, i)], n);
        if !s.is_full() {
            return SpinOutcome::Witness(s);
        }
    }
    let transposed: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    for word in words(gens.len(), max_word_len) {
        let w = word_matrix(r, &word);
        for mu in roots_in_field(&char_poly(&w), r.field) {
            let kernel = eigenspace(&w, &mu);
            for v in kernel.basis_vectors() {
                let s = spin(&gens, &[v], n);
                if !s.is_full() {
                    return SpinOutcome::Witness(s);
                }
            }
            if kernel.dim() != 1 {
                continue;
            }
            let dual_kernel = eigenspace(&w.transpose(), &mu);
            let dual_vector = dual_kernel.basis_vectors().remove(0);
            let s = spin(&transposed, std::slice::from_ref(&dual_vector), n);
            if !s.is_full() {
                // The annihilator of a transposed-invariant subspace is invariant.
                return SpinOutcome::Witness(s.annihilator());
            }
            return SpinOutcome::Norton(SimplicityCertificate::Norton {
                word,
                eigenvalue: mu,
                vector: kernel.basis_vectors().remove(0),
                dual_vector,
            });
        }
    }
    SpinOutcome::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Representation {
        Representation::from_matrices(vec![
            Matrix::from_ints(&[[-1, 1], [0, 1]]),
            Matrix::from_ints(&[[1, 0], [1, -1]]),
        ])
        .unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Representation::from_matrices(vec![]), Err(RepError::NoGenerators));
        assert_eq!(
            Representation::from_matrices(vec![Matrix::from_ints(&[[1, 1], [1, 1]])]),
            Err(RepError::Singular("s1".into()))
        );
        assert!(matches!(
            Representation::from_matrices(vec![Matrix::identity(2), Matrix::identity(3)]),
            Err(RepError::WrongShape { .. })
        ));
    }

    #[test]
    fn exterior_extremes() {
        let r = a2();
        let e0 = exterior_rep(&r, 0).unwrap();
        assert!(e0.matrices().iter().all(|g| *g == Matrix::from_ints(&[[1]])));
        let e2 = exterior_rep(&r, 2).unwrap();
        assert!(e2.matrices().iter().all(|g| *g == Matrix::from_ints(&[[-1]])));
        assert_eq!(exterior_rep(&r, 1).unwrap(), r);
        assert!(exterior_rep(&r, 3).is_err());
    }

    #[test]
    fn dual_and_twist() {
        let r = a2();
        assert_eq!(dual_rep(&dual_rep(&r).unwrap()).unwrap(), r);
        let orth = Representation::from_matrices(vec![
            Matrix::from_ints(&[[0, 1], [1, 0]]),
            Matrix::from_ints(&[[-1, 0], [0, 1]]),
        ])
        .unwrap();
        assert_eq!(dual_rep(&orth).unwrap(), orth);
        let trivial = exterior_rep(&r, 0).unwrap();
        let sign = det_twist(&trivial, &r).unwrap();
        assert_eq!(sign, exterior_rep(&r, 2).unwrap());
    }

    #[test]
    fn hom_dims() {
        let r = a2();
        assert_eq!(hom_dim(&r, &r).unwrap(), 1);
        assert_eq!(
            hom_dim(&exterior_rep(&r, 0).unwrap(), &exterior_rep(&r, 2).unwrap()).unwrap(),
            0
        );
    }

    #[test]
    fn duality_n2() {
        let r = a2();
        let phi = duality_intertwiner(&r, 1).unwrap();
        assert_eq!(phi, Matrix::from_ints(&[[0, -1], [1, 0]]));
        assert!(duality_holds(&r, 1, &phi).unwrap());
        for d in 0..=2 {
            let phi = duality_intertwiner(&r, d).unwrap();
            assert!(duality_holds(&r, d, &phi).unwrap());
            assert!(phi.inverse().is_ok());
        }
        assert_eq!(duality_intertwiner(&r, 0).unwrap(), Matrix::from_ints(&[[1]]));
    }

    #[test]
    fn a2_is_simple_without_premise() {
        let v = simplicity(&a2(), Semisimplicity::Unknown).unwrap();
        assert_eq!(v.status, SimplicityStatus::Simple);
        assert_eq!(v.commutant_dim, 1);
        assert!(matches!(v.certificate, Some(SimplicityCertificate::Norton { .. })));
    }

    #[test]
    fn reducible_pair_has_witness() {
        let r = Representation::from_matrices(vec![
            Matrix::from_ints(&[[-1, 1], [0, 1]]),
            Matrix::from_ints(&[[1, 0], [0, -1]]),
        ])
        .unwrap();
        let v = simplicity(&r, Semisimplicity::Unknown).unwrap();
        assert_eq!(v.status, SimplicityStatus::Reducible);
        assert_eq!(
            v.witness,
            Some(Subspace::span(2, &[unit_vector(2, 0)]))
        );
        assert!(v.witness_is_valid(&r));
    }

    #[test]
    fn split_module_reducible_under_premise() {
        let r = a2().direct_sum(&exterior_rep(&a2(), 0).unwrap()).unwrap();
        let v = simplicity(&r, Semisimplicity::Assumed).unwrap();
        assert_eq!(v.status, SimplicityStatus::Reducible);
        assert_eq!(v.commutant_dim, 2);
        assert!(v.witness_is_valid(&r));
    }

    #[test]
    fn non_split_extension_is_not_called_simple() {
        // Upper unitriangular: indecomposable, commutant of dimension 2.
        let r = Representation::from_matrices(vec![Matrix::from_ints(&[[1, 1], [0, 1]])]).unwrap();
        let v = simplicity(&r, Semisimplicity::Unknown).unwrap();
        assert_eq!(v.status, SimplicityStatus::Reducible);
        assert!(v.witness_is_valid(&r));
    }

    #[test]
    fn rotation_over_q_is_simple_but_not_absolutely() {
        // Quarter turn: simple over Q, commutant Q(i) of dimension 2, and no
        // eigenvalue in Q, so the search can only give up.
        let r = Representation::from_matrices(vec![Matrix::from_ints(&[[0, -1], [1, 0]])]).unwrap();
        let v = simplicity(&r, Semisimplicity::Unknown).unwrap();
        assert_eq!(v.commutant_dim, 2);
        assert_eq!(v.status, SimplicityStatus::Inconclusive);
    }

    #[test]
    fn word_enumeration() {
        let w: Vec<Vec<usize>> = words(2, 2).collect();
        assert_eq!(w, vec![vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
