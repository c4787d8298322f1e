//! Dense complex matrices and state vectors sized for `N = 2^n` with small `n`.
//!
//! Storage is row-major and 0-based. The only place 1-based indices appear is
//! inside [`tensor`], which evaluates the closed-form index formula for the
//! Kronecker product with `s, t = 1, ..., nm`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SieveError};

pub type ComplexScalar = Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Absolute tolerance used by every certification predicate.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-10;

    pub fn new(eps: f64) -> Result<Self> {
        if eps.is_finite() && eps > 0.0 {
            Ok(Tolerance(eps))
        } else {
            Err(SieveError::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(Self::DEFAULT_EPS)
    }
}

impl TryFrom<f64> for Tolerance {
    type Error = SieveError;
    fn try_from(eps: f64) -> Result<Self> {
        Tolerance::new(eps)
    }
}

impl From<Tolerance> for f64 {
    fn from(t: Tolerance) -> f64 {
        t.0
    }
}

/// Wire form shared by matrices and vectors: `{"rows", "cols", "data": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TryFrom<MatrixJson> for ComplexMatrix {
    type Error = SieveError;
    fn try_from(j: MatrixJson) -> Result<Self> {
        let data = j.data.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        ComplexMatrix::new(j.rows, j.cols, data)
    }
}

impl From<ComplexMatrix> for MatrixJson {
    fn from(m: ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(SieveError::MalformedMatrix(format!(
                "dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(SieveError::MalformedMatrix(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SieveError::MalformedMatrix("non-finite entry".into()));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from equal-length real rows.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(SieveError::MalformedMatrix("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        ComplexMatrix::new(rows.len(), cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[StateVector]) -> Result<Self> {
        let rows = columns.first().map_or(0, StateVector::dim);
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(SieveError::dims(rows, "columns of differing length"));
        }
        ComplexMatrix::new(rows, columns.len(), {
            let mut data = vec![ZERO; rows * columns.len()];
            for (j, col) in columns.iter().enumerate() {
                for (i, &z) in col.amplitudes().iter().enumerate() {
                    data[i * columns.len() + j] = z;
                }
            }
            data
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Side length of a square matrix, or a [`SieveError::NotSquare`].
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(SieveError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: Tolerance) -> bool {
        self.max_abs_diff(other) <= tol.eps()
    }

    pub fn column(&self, j: usize) -> StateVector {
        StateVector((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn is_diagonal(&self, tol: Tolerance) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].norm() <= tol.eps()))
    }

    fn check_same_shape(&self, other: &ComplexMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SieveError::dims(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(SieveError::dims(
                format!("{} rows on the right operand", self.cols),
                other.rows,
            ));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let lhs = &self.data[i * self.cols..(i + 1) * self.cols];
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in lhs.iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                let rhs = &other.data[k * other.cols..(k + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(rhs) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        if self.cols != v.dim() {
            return Err(SieveError::dims(self.cols, v.dim()));
        }
        Ok(StateVector(
            (0..self.rows)
                .map(|i| {
                    self.data[i * self.cols..(i + 1) * self.cols]
                        .iter()
                        .zip(v.amplitudes())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

/// Panics on a shape mismatch; use [`ComplexMatrix::try_mul`] for fallible code.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:>8.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Column vector of amplitudes. Serializes as an `N x 1` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct StateVector(Vec<Complex64>);

impl TryFrom<MatrixJson> for StateVector {
    type Error = SieveError;
    fn try_from(j: MatrixJson) -> Result<Self> {
        let m = ComplexMatrix::try_from(j)?;
        if m.cols != 1 {
            return Err(SieveError::MalformedMatrix(format!(
                "a vector must have exactly one column, got {}",
                m.cols
            )));
        }
        Ok(StateVector(m.data))
    }
}

impl From<StateVector> for MatrixJson {
    fn from(v: StateVector) -> Self {
        MatrixJson {
            rows: v.0.len(),
            cols: 1,
            data: v.0.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(SieveError::MalformedMatrix("empty vector".into()));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SieveError::MalformedMatrix("non-finite amplitude".into()));
        }
        Ok(StateVector(amplitudes))
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        StateVector::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Canonical unit vector `e_index` with a 0-based `index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut a = vec![ZERO; dim];
        a[index] = ONE;
        StateVector(a)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        StateVector(self.0.iter().map(|&z| z * factor).collect())
    }

    pub fn normalized(&self) -> Self {
        self.scale(Complex64::new(1.0 / self.norm(), 0.0))
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn axpy(&mut self, alpha: Complex64, x: &StateVector) {
        for (y, &xi) in self.0.iter_mut().zip(&x.0) {
            *y += alpha * xi;
        }
    }
}

/// Eigenvalue (0 or 1) of projector `p` on `v`, or `None` if `v` is not an eigenvector.
///
/// The candidate eigenvalue is the Rayleigh quotient rounded to `{0, 1}`; it is
/// rejected when farther than `eps` from both, or when `|Pv − λv|` exceeds `eps`.
pub fn projector_eigenvalue(p: &ComplexMatrix, v: &StateVector, tol: Tolerance) -> Option<u8> {
    let pv = p.apply(v).ok()?;
    let norm_sq = v.norm_sqr();
    if norm_sq == 0.0 {
        return None;
    }
    let rayleigh = v.inner(&pv).re / norm_sq;
    let bit = if (rayleigh - 1.0).abs() <= tol.eps() {
        1
    } else if rayleigh.abs() <= tol.eps() {
        0
    } else {
        return None;
    };
    let expected = v.scale(Complex64::new(f64::from(bit), 0.0));
    (pv.max_abs_diff(&expected) <= tol.eps()).then_some(bit)
}

/// Kronecker product of square `a` (n x n) and `b` (m x m).
///
/// Every entry is evaluated through the closed-form index map, with 1-based
/// `s, t` in `1..=nm`:
///
/// `(a ⊗ b)[s,t] = a[⌈s/m⌉, ⌈t/m⌉] · b[s − ⌊(s−1)/m⌋·m, t − ⌊(t−1)/m⌋·m]`
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.square_dim()?;
    let m = b.square_dim()?;
    let size = n * m;
    let at = |i: usize, j: usize| a[(i - 1, j - 1)];
    let bt = |k: usize, l: usize| b[(k - 1, l - 1)];
    Ok(ComplexMatrix::from_fn(size, size, |r, c| {
        let (s, t) = (r + 1, c + 1);
        at(s.div_ceil(m), t.div_ceil(m)) * bt(s - ((s - 1) / m) * m, t - ((t - 1) / m) * m)
    }))
}

/// `U P U†`. The inverse of a unitary is always taken as its adjoint.
pub fn conjugate(u: &ComplexMatrix, p: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    let du = u.square_dim()?;
    let dp = p.square_dim()?;
    if du != dp {
        return Err(SieveError::dims(du, dp));
    }
    let deviation = unitarity_deviation(u)?;
    if deviation > tol.eps() {
        return Err(SieveError::NotUnitary { deviation });
    }
    Ok(&(u * p) * &u.adjoint())
}

/// `max |P² − P|` and `max |P − P†|` both within tolerance.
pub fn is_projector(p: &ComplexMatrix, tol: Tolerance) -> bool {
    if !p.is_square() {
        return false;
    }
    let squared = p * p;
    squared.max_abs_diff(p) <= tol.eps() && p.max_abs_diff(&p.adjoint()) <= tol.eps()
}

/// Max-entry modulus of `AB − BA`.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let da = a.square_dim()?;
    let db = b.square_dim()?;
    if da != db {
        return Err(SieveError::dims(da, db));
    }
    Ok((a * b).max_abs_diff(&(b * a)))
}

/// `max |U†U − I|`.
pub fn unitarity_deviation(u: &ComplexMatrix) -> Result<f64> {
    let d = u.square_dim()?;
    Ok((&u.adjoint() * u).max_abs_diff(&ComplexMatrix::identity(d)))
}

pub fn is_unitary(u: &ComplexMatrix, tol: Tolerance) -> bool {
    unitarity_deviation(u).is_ok_and(|d| d <= tol.eps())
}

/// Modified Gram-Schmidt.
///
/// Input `j` is rejected as dependent when its residual after projecting out
/// the earlier outputs has norm `<= eps * |v_j|`. Error indices are 0-based.
pub fn gram_schmidt(vectors: &[StateVector], tol: Tolerance) -> Result<Vec<StateVector>> {
    let dim = vectors.first().map_or(0, StateVector::dim);
    let mut out: Vec<StateVector> = Vec::with_capacity(vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        if v.dim() != dim {
            return Err(SieveError::dims(dim, v.dim()));
        }
        let w = residual(v, &out);
        if w.norm() <= tol.eps() * v.norm() || v.norm() == 0.0 {
            return Err(SieveError::LinearlyDependent { index: j });
        }
        out.push(w.normalized());
    }
    Ok(out)
}

fn residual(v: &StateVector, orthonormal: &[StateVector]) -> StateVector {
    let mut w = v.clone();
    for q in orthonormal {
        let c = q.inner(&w);
        w.axpy(-c, q);
    }
    w
}

/// Extends orthonormalized `vectors` to a full orthonormal basis of their space.
///
/// Starts from [`gram_schmidt`] on the inputs, then repeatedly adds the
/// canonical unit vector with the largest residual, so the completion is
/// deterministic and well conditioned.
pub fn complete_orthonormal_basis(vectors: &[StateVector], tol: Tolerance) -> Result<Vec<StateVector>> {
    let mut out = gram_schmidt(vectors, tol)?;
    let dim = out.first().map_or(0, StateVector::dim);
    let mut unused: Vec<usize> = (0..dim).collect();
    while out.len() < dim {
        let (pos, w) = unused
            .iter()
            .enumerate()
            .map(|(pos, &k)| (pos, residual(&StateVector::unit(dim, k), &out)))
            .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))
            .expect("fewer outputs than dimensions implies a spare unit vector");
        unused.remove(pos);
        // Second pass keeps orthogonality at machine precision.
        let w = residual(&w, &out);
        out.push(w.normalized());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap()
    }

    fn sigma_y() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO]).unwrap()
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn tensor_sigma_x_with_identity_flips_first_bit() {
        let m = tensor(&sigma_x(), &ComplexMatrix::identity(4)).unwrap();
        for s in 0..8 {
            for t in 0..8 {
                let expected = if t == s ^ 0b100 { ONE } else { ZERO };
                assert_eq!(m[(s, t)], expected, "entry ({s}, {t})");
            }
        }
    }

    #[test]
    fn tensor_index_formula_spot_check() {
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 1.0), c(4.0, 0.0)]).unwrap();
        let b = ComplexMatrix::new(2, 2, vec![c(5.0, 0.0), c(6.0, -2.0), c(7.0, 0.0), c(8.0, 0.0)]).unwrap();
        let t = tensor(&a, &b).unwrap();
        // 1-based (3, 2) is a[2,1] * b[1,2].
        assert_eq!(t[(2, 1)], a[(1, 0)] * b[(0, 1)]);
    }

    #[test]
    fn tensor_rejects_non_square() {
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(
            tensor(&r, &ComplexMatrix::identity(2)),
            Err(SieveError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn conjugate_by_identity_is_noop() {
        let p = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 1.0, 0.0]);
        let out = conjugate(&ComplexMatrix::identity(4), &p, Tolerance::default()).unwrap();
        assert_eq!(out, p);
    }

    #[test]
    fn conjugate_rejects_non_unitary_and_mismatch() {
        let p = ComplexMatrix::identity(2);
        let bad = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        assert!(matches!(
            conjugate(&bad, &p, Tolerance::default()),
            Err(SieveError::NotUnitary { .. })
        ));
        assert!(matches!(
            conjugate(&ComplexMatrix::identity(4), &p, Tolerance::default()),
            Err(SieveError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn projector_predicate() {
        let tol = Tolerance::default();
        assert!(is_projector(
            &ComplexMatrix::from_real_diagonal(&[1., 1., 1., 1., 0., 0., 0., 0.]),
            tol
        ));
        assert!(is_projector(&ComplexMatrix::zeros(3, 3), tol));
        assert!(!is_projector(&ComplexMatrix::identity(2).scale(c(0.5, 0.0)), tol));
        assert!(!is_projector(&ComplexMatrix::zeros(2, 3), tol));
        // idempotent but not Hermitian
        let oblique = ComplexMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 0.0]]).unwrap();
        assert!(!is_projector(&oblique, tol));
    }

    #[test]
    fn commutator_of_pauli_x_and_y_is_two() {
        let n = commutator_norm(&sigma_x(), &sigma_y()).unwrap();
        assert!((n - 2.0).abs() < 1e-15);
        assert_eq!(commutator_norm(&sigma_x(), &sigma_x()).unwrap(), 0.0);
        assert!(commutator_norm(&sigma_x(), &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn unitary_predicate() {
        let tol = Tolerance::default();
        assert!(is_unitary(&sigma_y(), tol));
        assert!(!is_unitary(&ComplexMatrix::from_real_diagonal(&[1.0, 2.0]), tol));
        assert!(!is_unitary(&ComplexMatrix::zeros(2, 3), tol));
    }

    #[test]
    fn gram_schmidt_keeps_orthonormal_input() {
        let e = vec![StateVector::unit(2, 0), StateVector::unit(2, 1)];
        let g = gram_schmidt(&e, Tolerance::default()).unwrap();
        assert_eq!(g, e);
    }

    #[test]
    fn gram_schmidt_textbook_plane() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let input = vec![
            StateVector::from_real(&[h, h]).unwrap(),
            StateVector::from_real(&[1.0, 0.0]).unwrap(),
        ];
        let g = gram_schmidt(&input, Tolerance::default()).unwrap();
        assert!(g[0].max_abs_diff(&StateVector::from_real(&[h, h]).unwrap()) < 1e-15);
        assert!(g[1].max_abs_diff(&StateVector::from_real(&[h, -h]).unwrap()) < 1e-15);
    }

    #[test]
    fn gram_schmidt_names_dependent_vector() {
        let input = vec![
            StateVector::from_real(&[1.0, 0.0, 0.0]).unwrap(),
            StateVector::from_real(&[0.0, 1.0, 0.0]).unwrap(),
            StateVector::from_real(&[3.0, -2.0, 0.0]).unwrap(),
        ];
        assert_eq!(
            gram_schmidt(&input, Tolerance::default()),
            Err(SieveError::LinearlyDependent { index: 2 })
        );
    }

    #[test]
    fn completion_fills_the_space() {
        let input = vec![StateVector::from_real(&[1.0, 1.0, 1.0]).unwrap()];
        let g = complete_orthonormal_basis(&input, Tolerance::default()).unwrap();
        assert_eq!(g.len(), 3);
        let m = ComplexMatrix::from_columns(&g).unwrap();
        assert!(is_unitary(&m, Tolerance::default()));
    }

    #[test]
    fn json_shape_and_validation() {
        let m = ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(0.5, -0.25)]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"data":[[1.0,0.0],[0.5,-0.25]]}"#);
        let bad = r#"{"rows":2,"cols":2,"data":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
        let v: StateVector = serde_json::from_str(r#"{"rows":2,"cols":1,"data":[[0.0,0.0],[1.0,0.0]]}"#).unwrap();
        assert_eq!(v, StateVector::unit(2, 1));
        assert!(serde_json::from_str::<StateVector>(&s).is_err());
    }

    #[test]
    fn tolerance_rejects_nonpositive() {
        assert!(Tolerance::new(0.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
        assert_eq!(Tolerance::default().eps(), 1e-10);
    }
}
