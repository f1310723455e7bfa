//! Exact dense linear algebra over a prime field.
//!
//! Matrices act on column vectors. Elimination always picks the first
//! nonzero entry in row order as pivot, so every basis produced here is
//! reproducible bit-for-bit.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    p: u32,
}

impl Default for Field {
    fn default() -> Self {
        Field { p: 2 }
    }
}

impl Field {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if p < 2 || p >= 1 << 16 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(self, a: u32, mut e: u32) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Signed representative in (-p/2, p/2], for display.
    pub fn signed(self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// a += c * b, elementwise.
    #[inline]
    pub fn axpy(self, a: &mut [u32], c: u32, b: &[u32]) {
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (x, y) in a.iter_mut().zip(b) {
                *x ^= *y;
            }
        } else {
            let p = self.p as u64;
            for (x, y) in a.iter_mut().zip(b) {
                if *y != 0 {
                    *x = ((*x as u64 + c as u64 * *y as u64) % p) as u32;
                }
            }
        }
    }

    pub fn scale_vec(self, a: &mut [u32], c: u32) {
        if c == 1 {
            return;
        }
        for x in a.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        let p = self.p as u64;
        let mut acc = 0u64;
        for (x, y) in a.iter().zip(b) {
            acc += *x as u64 * *y as u64;
            if acc >= 1 << 62 {
                acc %= p;
            }
        }
        (acc % p) as u32
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense row-major matrix over F_p. `0 x n` and `n x 0` shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    field: Field,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols], field }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: &[Vec<u32>]) -> Self {
        assert_eq!(entries.len(), rows);
        let mut m = Self::zeros(field, rows, cols);
        for (i, r) in entries.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, v) in r.iter().enumerate() {
                m.data[i * cols + j] = v % field.p();
            }
        }
        m
    }

    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data, field }
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j) % field.p();
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, len: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len);
            for i in 0..len {
                m.data[i * columns.len() + j] = c[i];
            }
        }
        m
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(field: Field, len: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * len);
        for r in rows {
            assert_eq!(r.len(), len);
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols: len, data, field }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.field.p();
    }
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        if other.cols == 0 {
            return out;
        }
        let p = f.p() as u64;
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut pending = 0u32;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                pending += 1;
                if pending >= 1 << 12 {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
            }
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (o, x) in orow.iter_mut().zip(&acc) {
                *o = (*x % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, c: u32, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        f.axpy(&mut self.data, c % f.p(), &other.data);
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field }
    }

    pub fn block_diag(field: Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Matrix::zeros(field, r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            m.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            let src = &b.data[i * b.cols..(i + 1) * b.cols];
            let start = (r0 + i) * self.cols + c0;
            self.data[start..start + b.cols].copy_from_slice(src);
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            f.scale_vec(&mut self.data[r * cols..(r + 1) * cols], inv);
            let pivot_row: Vec<u32> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let v = self.data[i * cols + c];
                if v != 0 {
                    f.axpy(&mut self.data[i * cols..(i + 1) * cols], f.neg(v), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows <= self.cols {
            self.rref().1.len()
        } else {
            self.transpose().rref().1.len()
        }
    }

    /// Basis of the null space {x : self * x = 0}; count is cols - rank.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Solve self * x = b. `Ok(None)` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "system has {} rows but right-hand side has length {}",
                self.rows,
                b.len()
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Solve self * X = B column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::Shape(format!("{} vs {} rows", self.rows, b.rows)));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[pc * b.cols + j] = r.get(i, self.cols + j);
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        match self.solve_matrix(&Matrix::identity(self.field, self.rows))? {
            Some(x) if self.rank() == self.rows => Ok(x),
            _ => Err(LinalgError::Singular),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn column_space_basis(&self) -> Vec<Vec<u32>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        if self.rows == 0 {
            return true;
        }
        // x^n = 0 for nilpotent n x n matrices; square until the exponent exceeds n.
        let mut m = self.clone();
        let mut e = 1usize;
        while e < self.rows {
            m = m.mul(&m);
            e *= 2;
            if m.is_zero() {
                return true;
            }
        }
        m.is_zero()
    }
}

/// A linear subspace of F_p^n, stored as a reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        let m = Matrix::from_row_vectors(field, ambient, vectors);
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        Subspace { ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    /// Reduce `v` modulo the subspace (zero iff `v` is contained).
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.basis.row(i));
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of `v` with respect to the echelon basis, if contained.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let coords: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.basis.row(i));
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis();
        vs.extend(other.basis());
        Subspace::span(self.field(), self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // x = sum a_i u_i = sum b_j w_j  <=>  [U^T | -W^T] (a, b) = 0
        let f = self.field();
        let n = self.ambient;
        let (k, l) = (self.dim(), other.dim());
        let m = Matrix::from_fn(f, n, k + l, |r, c| {
            if c < k {
                self.basis.get(c, r)
            } else {
                f.neg(other.basis.get(c - k, r))
            }
        });
        let vecs: Vec<Vec<u32>> = m
            .kernel_basis()
            .into_iter()
            .map(|sol| {
                let mut v = vec![0u32; n];
                for (i, &a) in sol[..k].iter().enumerate() {
                    f.axpy(&mut v, a, self.basis.row(i));
                }
                v
            })
            .collect();
        Subspace::span(f, n, &vecs)
    }

    /// Standard basis vectors completing this subspace to the ambient space.
    pub fn complement_basis(&self) -> Vec<Vec<u32>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&i| !is_pivot[i])
            .map(|i| {
                let mut v = vec![0u32; self.ambient];
                v[i] = 1;
                v
            })
            .collect()
    }

    /// Extend `self` by those of `candidates` that are independent modulo it,
    /// returning the indices of the accepted candidates.
    pub fn extend_greedy(&mut self, candidates: &[Vec<u32>]) -> Vec<usize> {
        let mut accepted = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if !self.contains(c) {
                *self = self.sum(&Subspace::span(self.field(), self.ambient, &[c.clone()]));
                accepted.push(i);
            }
        }
        accepted
    }
}

/// Expresses vectors as combinations of a fixed list of generators.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    generators: usize,
    echelon: Matrix,
    pivots: Vec<usize>,
    /// Row i of `echelon` equals sum_k transform[i][k] * generator_k.
    transform: Matrix,
}

impl CoordinateSystem {
    pub fn new(field: Field, ambient: usize, generators: &[Vec<u32>]) -> Self {
        let g = generators.len();
        let aug = Matrix::from_fn(field, g, ambient + g, |r, c| {
            if c < ambient {
                generators[r][c]
            } else {
                (c - ambient == r) as u32
            }
        });
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().take_while(|&&c| c < ambient).count();
        let rows: Vec<usize> = (0..rank).collect();
        let echelon = r.select_rows(&rows).block(0, 0, rank, ambient);
        let transform = r.select_rows(&rows).block(0, ambient, rank, g);
        CoordinateSystem { generators: g, echelon, pivots: pivots[..rank].to_vec(), transform }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_independent(&self) -> bool {
        self.rank() == self.generators
    }

    /// Some `c` with `sum_k c_k generator_k == v`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.echelon.field();
        let mut w = v.to_vec();
        let mut out = vec![0u32; self.generators];
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.echelon.row(i));
                f.axpy(&mut out, c, self.transform.row(i));
            }
        }
        w.iter().all(|&x| x == 0).then_some(out)
    }
}

pub fn zero_vec(n: usize) -> Vec<u32> {
    vec![0; n]
}

pub fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(f2(), 2).rank(), 2);
        assert_eq!(Matrix::zeros(f2(), 3, 2).rank(), 0);
        assert_eq!(Matrix::from_rows(f2(), 2, 2, &[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(f2(), 3).kernel_basis().is_empty());
        assert_eq!(Matrix::zeros(f2(), 2, 3).kernel_basis().len(), 3);
        let k = Matrix::from_rows(f2(), 1, 2, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(f2(), 2);
        assert_eq!(id.solve(&[1, 0]).unwrap(), Some(vec![1, 0]));
        let z = Matrix::zeros(f2(), 2, 2);
        assert_eq!(z.solve(&[1, 0]).unwrap(), None);
        let a = Matrix::from_rows(f2(), 2, 2, &[vec![1, 0], vec![1, 0]]);
        assert_eq!(a.solve(&[1, 0]).unwrap(), None);
        assert!(matches!(a.solve(&[1]), Err(LinalgError::Shape(_))));
    }

    #[test]
    fn empty_shapes_behave_as_zero_maps() {
        let a = Matrix::zeros(f2(), 0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel_basis().len(), 3);
        let b = Matrix::zeros(f2(), 3, 0);
        assert_eq!(b.mul(&Matrix::zeros(f2(), 0, 2)), Matrix::zeros(f2(), 3, 2));
        assert_eq!(b.solve(&[0, 0, 0]).unwrap(), Some(vec![]));
    }

    #[test]
    fn field_rejects_composites() {
        assert!(Field::new(4).is_err());
        assert!(Field::new(1).is_err());
        let f = Field::new(7).unwrap();
        assert_eq!(f.mul(3, f.inv(3)), 1);
    }

    #[test]
    fn inverse_over_f5() {
        let f = Field::new(5).unwrap();
        let m = Matrix::from_rows(f, 2, 2, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
    }

    #[test]
    fn subspace_intersection_and_sum() {
        let f = f2();
        let u = Subspace::span(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersection(&w).dim(), 1);
        assert!(u.intersection(&w).contains(&[0, 1, 0]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert_eq!(u.complement_basis(), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn coordinates_in_dependent_generators() {
        let f = Field::new(3).unwrap();
        let gens = vec![vec![1, 1, 0], vec![2, 2, 0], vec![0, 1, 1]];
        let cs = CoordinateSystem::new(f, 3, &gens);
        assert_eq!(cs.rank(), 2);
        let v = vec![1, 2, 1];
        let c = cs.coordinates(&v).unwrap();
        let mut back = vec![0; 3];
        for (k, g) in gens.iter().enumerate() {
            f.axpy(&mut back, c[k], g);
        }
        assert_eq!(back, v);
        assert!(cs.coordinates(&[1, 0, 0]).is_none());
    }

    #[test]
    fn nilpotency() {
        let f = f2();
        let n = Matrix::from_rows(f, 3, 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        assert!(n.is_nilpotent());
        assert!(!Matrix::identity(f, 2).is_nilpotent());
    }
}
