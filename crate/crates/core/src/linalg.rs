//! Dense exact linear algebra over [`Scalar`].
//!
//! Subspaces are always stored as a canonical reduced row-echelon basis, so
//! two subspaces are equal exactly when their basis matrices are.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("rows have different lengths")]
    Ragged,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("empty generator list")]
    EmptyGeneratorList,
    #[error("generator lists have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("generators in one list have different sizes")]
    InconsistentSizes,
}

pub type Vector = Vec<Scalar>;

/// Dense row-major matrix with all entries in one field.
#[derive(Clone, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Scalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Ragged);
        }
        let nrows = rows.len();
        Matrix::from_vec(nrows, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Ragged);
        }
        data.iter()
            .try_fold(Field::Rational, |f, x| f.join(x.field()))?;
        Ok(Matrix { rows, cols, data })
    }

    /// Integer matrix literal, mostly for tests and the catalog.
    pub fn from_ints<const C: usize>(rows: &[[i64; C]]) -> Self {
        let data = rows.iter().flatten().map(|&x| Scalar::int(x)).collect();
        Matrix::from_vec(rows.len(), C, data).expect("integer rows are consistent")
    }

    pub fn column(v: &[Scalar]) -> Self {
        Matrix::from_vec(v.len(), 1, v.to_vec()).expect("column vector")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.data
            .iter()
            .fold(Field::Rational, |f, x| f.join(x.field()).unwrap_or(f))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero_in(self.field()), |acc, i| {
            acc + &self[(i, i)]
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Panics if the shapes differ.
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix::from_vec(self.rows, self.cols, data).expect("shape checked")
    }

    /// Panics if the shapes differ.
    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix::from_vec(self.rows, self.cols, data).expect("shape checked")
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        Matrix::from_vec(self.rows, self.cols, data).expect("shape unchanged")
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)].clone()))
            .collect();
        Matrix::from_vec(rows.len(), cols.len(), data).expect("indices in range")
    }

    /// Stacks `other` below `self`; both must have the same column count.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix::from_vec(self.rows + other.rows, self.cols, data).expect("fields must agree")
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Canonical reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let x = &m[(i, j)] - &(&factor * &pivot_row[j]);
                    m[(i, j)] = x;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (Matrix, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    pub fn det(&self) -> Result<Scalar, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(Scalar::zero_in(self.field()));
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let x = &m[(i, j)] - &(&factor * &m[(c, j)]);
                    m[(i, j)] = x;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Ok(r.submatrix(&rows, &cols))
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let x = &out[(i, j)] + &(a * b);
                    out[(i, j)] = x;
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

/// Linear subspace of `F^ambient`, held as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let (r, rank) = m.rref();
        let rows: Vec<usize> = (0..rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: r.submatrix(&rows, &cols),
        }
    }

    /// Span of a list of vectors in `F^ambient`.
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let data = vectors.iter().flatten().cloned().collect();
        let m = Matrix::from_vec(vectors.len(), ambient, data).expect("vectors share a field");
        Subspace::row_space(&m)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // Reduce v against the RREF basis; membership iff the residual vanishes.
        let mut r = v.to_vec();
        for i in 0..self.dim() {
            let p = self
                .basis
                .row(i)
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    r[j] = &r[j] - &(&c * b);
                }
            }
        }
        is_zero_vector(&r)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// `g` maps this subspace into itself.
    pub fn is_invariant_under(&self, g: &Matrix) -> bool {
        self.basis_vectors()
            .iter()
            .all(|v| self.contains(&g.mul_vec(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)))
    }

    /// Vectors `y` with `b . y = 0` for every basis row `b`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Intersection as the common kernel of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let constraints = self.annihilator().basis.vstack(&other.annihilator().basis);
        Ok(kernel(&constraints))
    }

    /// Intersection of a nonempty family; `None` for an empty one.
    pub fn intersect_all<'a, I>(spaces: I) -> Result<Option<Subspace>, LinalgError>
    where
        I: IntoIterator<Item = &'a Subspace>,
    {
        let mut acc: Option<Subspace> = None;
        for s in spaces {
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.intersect(s)?,
            });
        }
        Ok(acc)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Subspace", 3)?;
        s.serialize_field("ambient_dim", &self.ambient)?;
        s.serialize_field("dim", &self.dim())?;
        s.serialize_field("basis", &self.basis)?;
        s.end()
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis_vectors().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vector(v))?;
        }
        write!(f, "}}")
    }
}

pub fn fmt_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Null space `{x : M x = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let (r, pivots) = m.rref_with_pivots();
    let n = m.cols();
    let mut vectors = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); n];
        v[free] = Scalar::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -&r[(i, free)];
        }
        vectors.push(v);
    }
    Subspace::span(n, &vectors)
}

/// Column space of `M`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

/// `ker(M - mu I)`.
pub fn eigenspace(m: &Matrix, mu: &Scalar) -> Subspace {
    kernel(&m.sub(&Matrix::scalar(m.rows(), mu)))
}

/// Space of all `X` (shape `right_dim x left_dim`, flattened row-major) with
/// `X * left[i] == right[i] * X` for every `i`.
pub fn solve_intertwiner(left: &[Matrix], right: &[Matrix]) -> Result<Subspace, LinalgError> {
    if left.is_empty() || right.is_empty() {
        return Err(LinalgError::EmptyGeneratorList);
    }
    if left.len() != right.len() {
        return Err(LinalgError::LengthMismatch(left.len(), right.len()));
    }
    for g in left.iter().chain(right) {
        if !g.is_square() {
            return Err(LinalgError::NotSquare(g.rows(), g.cols()));
        }
    }
    let nl = left[0].rows();
    let nr = right[0].rows();
    if left.iter().any(|g| g.rows() != nl) || right.iter().any(|g| g.rows() != nr) {
        return Err(LinalgError::InconsistentSizes);
    }
    let unknowns = nr * nl;
    let mut field = Field::Rational;
    for g in left.iter().chain(right) {
        field = field.join(g.field())?;
    }
    let mut data = Vec::with_capacity(left.len() * unknowns * unknowns);
    for (l, r) in left.iter().zip(right) {
        // Equation for entry (p, q) of X L - R X.
        for p in 0..nr {
            for q in 0..nl {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..nl {
                    let c = &l[(k, q)];
                    if !c.is_zero() {
                        row[p * nl + k] = &row[p * nl + k] + c;
                    }
                }
                for k in 0..nr {
                    let c = &r[(p, k)];
                    if !c.is_zero() {
                        row[k * nl + q] = &row[k * nl + q] - c;
                    }
                }
                data.extend(row);
            }
        }
    }
    let system = Matrix::from_vec(left.len() * unknowns, unknowns, data)?;
    Ok(kernel(&system))
}

/// Reshapes a flattened intertwiner back into a `rows x cols` matrix.
pub fn unflatten(v: &[Scalar], rows: usize, cols: usize) -> Matrix {
    Matrix::from_vec(rows, cols, v.to_vec()).expect("length rows*cols")
}

/// Smallest subspace containing `seeds` and closed under every generator.
pub fn spin(generators: &[Matrix], seeds: &[Vector], ambient: usize) -> Subspace {
    let mut current = Subspace::span(ambient, seeds);
    let mut frontier = current.basis_vectors();
    while !frontier.is_empty() && !current.is_full() {
        let mut next = Vec::new();
        for v in &frontier {
            for g in generators {
                let w = g.mul_vec(v);
                if !current.contains(&w) {
                    current = current
                        .sum(&Subspace::span(ambient, std::slice::from_ref(&w)))
                        .expect("same ambient");
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    current
}
