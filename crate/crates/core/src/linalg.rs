//! Exact dense linear algebra over the coefficient field.

use crate::coeff::poly::lcm;
use crate::coeff::{Poly, Scalar};
use crate::error::{Error, Result};
use crate::forms::{GradedBasis, InvariantForm};
use crate::operators::{Geometry, OperatorKind};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Scalar::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i][j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i][j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Scalar::is_zero))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(self.cols, v.len()));
        }
        Ok(self.data.iter().map(|row| dot(row, v)).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * s).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(self.rows * self.cols, other.rows * other.cols));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Submatrix on the given rows and columns.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect())
    }

    /// Side-by-side concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    /// Rows cleared of denominators, one polynomial row per input row.
    fn polynomial_rows(&self) -> (Vec<Vec<Poly>>, Vec<Poly>) {
        let mut factors = Vec::with_capacity(self.rows);
        let rows = self
            .data
            .iter()
            .map(|row| {
                let l = row.iter().fold(Poly::one(), |acc, x| if x.is_zero() { acc } else { lcm(&acc, x.denom()) });
                let out = row
                    .iter()
                    .map(|x| {
                        if x.is_zero() {
                            Poly::zero()
                        } else {
                            x.numer().mul(&l.div_exact(x.denom()).expect("lcm is a multiple"))
                        }
                    })
                    .collect();
                factors.push(l);
                out
            })
            .collect();
        (rows, factors)
    }

    /// Fraction-free forward elimination. Returns the eliminated rows, the pivot
    /// columns and the number of row swaps.
    fn bareiss(&self) -> (Vec<Vec<Poly>>, Vec<usize>, usize, Vec<Poly>) {
        let (mut a, factors) = self.polynomial_rows();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = Poly::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                swaps += 1;
            }
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let piv = &pivot_row[c];
            for row in rest.iter_mut() {
                let factor = std::mem::replace(&mut row[c], Poly::zero());
                for j in c + 1..self.cols {
                    let mut v = piv.mul(&row[j]);
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v = v.sub(&factor.mul(&pivot_row[j]));
                    }
                    row[j] = if v.is_zero() { v } else { v.div_exact(&prev).expect("Bareiss division is exact") };
                }
            }
            prev = piv.clone();
            pivots.push(c);
            r += 1;
        }
        (a, pivots, swaps, factors)
    }

    pub fn echelon(&self) -> Echelon {
        let (a, pivots, _, _) = self.bareiss();
        let mut rows: Vec<Vec<Scalar>> = a
            .into_iter()
            .take(pivots.len())
            .zip(&pivots)
            .map(|(row, &pc)| {
                let inv = Scalar::from_poly(row[pc].clone()).recip().expect("pivot is nonzero");
                row.into_iter().map(|p| &Scalar::from_poly(p) * &inv).collect()
            })
            .collect();
        for k in (0..pivots.len()).rev() {
            let pc = pivots[k];
            let (above, below) = rows.split_at_mut(k);
            let pivot_row = &below[0];
            for row in above.iter_mut() {
                let f = row[pc].clone();
                if f.is_zero() {
                    continue;
                }
                for j in pc..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
        }
        Echelon { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let e = self.echelon();
        let mut out = Vec::new();
        let mut next_pivot = 0;
        for f in 0..self.cols {
            if next_pivot < e.pivots.len() && e.pivots[next_pivot] == f {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (row, &pc) in e.rows.iter().zip(&e.pivots) {
                if pc < f {
                    v[pc] = -&row[f];
                }
            }
            out.push(v);
        }
        out
    }

    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        if self.rows == 0 {
            return Ok(Scalar::one());
        }
        let (a, pivots, swaps, factors) = self.bareiss();
        if pivots.len() < self.rows {
            return Ok(Scalar::zero());
        }
        let mut d = Scalar::from_poly(a[self.rows - 1][self.cols - 1].clone());
        for f in &factors {
            d = d.div(&Scalar::from_poly(f.clone()))?;
        }
        Ok(if swaps % 2 == 1 { -d } else { d })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(self.rows, self.cols));
        }
        let n = self.rows;
        let e = self.hstack(&Matrix::identity(n)).echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_rows(e.rows.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Unique solution `X` of `self · X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(self.rows, rhs.rows));
        }
        let n = self.cols;
        if self.rows != n {
            return Err(Error::DimensionMismatch(self.rows, n));
        }
        let e = self.hstack(rhs).echelon();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_rows(e.rows.into_iter().take(n).map(|r| r[n..].to_vec()).collect()))
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.data.iter()).finish()
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// `aᵀ G b`.
pub fn bilinear(a: &[Scalar], gram: &Matrix, b: &[Scalar]) -> Scalar {
    dot(a, &gram.mul_vec(b).expect("matching sizes"))
}

/// Subspace of the coordinate space of degree-`k` forms, stored as its unique
/// reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    degree: usize,
    len: usize,
    rows: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(degree: usize, len: usize) -> Self {
        Subspace { degree, len, rows: Vec::new() }
    }

    pub fn full(degree: usize, len: usize) -> Self {
        Self::span(degree, len, Matrix::identity(len).data)
    }

    pub fn span(degree: usize, len: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(degree, len);
        }
        assert!(vectors.iter().all(|v| v.len() == len), "vector outside the ambient space");
        let rows = Matrix::from_rows(vectors).echelon().rows;
        Subspace { degree, len, rows }
    }

    pub fn from_forms(basis: &GradedBasis, degree: usize, forms: &[InvariantForm]) -> Result<Self> {
        let vectors = forms.iter().map(|f| basis.coords(f, degree)).collect::<Result<Vec<_>>>()?;
        Ok(Self::span(degree, basis.size(degree), vectors))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn forms(&self, basis: &GradedBasis) -> Vec<InvariantForm> {
        self.rows.iter().map(|r| basis.from_coords(self.degree, r)).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.degree != other.degree || self.len != other.len {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Self::span(self.degree, self.len, self.rows.iter().chain(&other.rows).cloned().collect()))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.degree, self.len));
        }
        let a = Matrix::from_rows(self.rows.clone()).transpose();
        let b = Matrix::from_rows(other.rows.clone()).transpose().scale(&-Scalar::one());
        let kernel = a.hstack(&b).kernel();
        let vectors = kernel
            .into_iter()
            .map(|x| a.mul_vec(&x[..self.dim()]).expect("sizes agree"))
            .collect();
        Ok(Self::span(self.degree, self.len, vectors))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|v| self.contains_vector(v)))
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.rows == other.rows)
    }

    /// Vectors orthogonal to the subspace under the symmetric form `gram`.
    pub fn orthogonal_complement(&self, gram: &Matrix) -> Result<Subspace> {
        if gram.rows() != self.len {
            return Err(Error::DimensionMismatch(gram.rows(), self.len));
        }
        if self.is_zero() {
            return Ok(Self::full(self.degree, self.len));
        }
        let m = Matrix::from_rows(self.rows.clone()).mul(gram)?;
        Ok(Self::span(self.degree, self.len, m.kernel()))
    }

    /// Removes from `v` its `gram`-orthogonal projection onto the subspace.
    pub fn reject(&self, v: &[Scalar], gram: &Matrix) -> Result<Vec<Scalar>> {
        if self.is_zero() {
            return Ok(v.to_vec());
        }
        let b = Matrix::from_rows(self.rows.clone());
        let bg = b.mul(gram)?;
        let normal = bg.mul(&b.transpose())?;
        let rhs = Matrix::from_columns(self.dim(), &[bg.mul_vec(v)?]);
        let coeffs = normal.solve(&rhs)?.column(0);
        let proj = b.transpose().mul_vec(&coeffs)?;
        Ok(v.iter().zip(&proj).map(|(x, p)| x - p).collect())
    }

    /// Image under a linear map whose columns are the images of the ambient basis.
    pub fn map(&self, m: &Matrix, target_degree: usize) -> Result<Subspace> {
        let vectors = self.rows.iter().map(|r| m.mul_vec(r)).collect::<Result<Vec<_>>>()?;
        Ok(Self::span(target_degree, m.rows(), vectors))
    }
}

/// Matrix of an operator from degree `domain` to degree `codomain` in the
/// graded basis order; column `j` holds the image of basis form `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub kind: OperatorKind,
    pub domain: usize,
    pub codomain: usize,
    pub matrix: Matrix,
}

impl OperatorMatrix {
    pub fn kernel(&self) -> Subspace {
        Subspace::span(self.domain, self.matrix.cols(), self.matrix.kernel())
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.codomain, self.matrix.rows(), self.matrix.transpose().echelon().rows)
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Assembles the matrix of `kind` on degree-`k` forms.
///
/// Differential operators are only assembled on models whose data has no
/// function coefficients; algebraic operators are always available.
pub fn assemble(kind: OperatorKind, k: usize, geo: &Geometry) -> Result<OperatorMatrix> {
    let model = geo.model();
    if kind.is_differential() && !model.is_constant_coefficient() {
        return Err(Error::FunctionCoefficientModel(model.name().to_string()));
    }
    let dim = model.dim();
    let codomain = kind.target_degree(k, dim)?;
    let basis = geo.basis();
    let columns = basis
        .forms(k)
        .iter()
        .map(|f| geo.apply_unchecked(kind, f).and_then(|img| basis.coords(&img, codomain)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OperatorMatrix {
        kind,
        domain: k,
        codomain,
        matrix: Matrix::from_columns(basis.size(codomain), &columns),
    })
}
