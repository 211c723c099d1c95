//! Dense matrices over exact scalars or polynomials.
//!
//! Rows index the codomain basis, columns the domain basis, so a linear map
//! acts on column vectors and composition is plain matrix multiplication.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::GradedPoly;

/// The commutative-ring operations matrices need.
pub trait RingElement: Clone + PartialEq + Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn field(&self) -> Field;
    /// `self / o` when the quotient exists in the ring.
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

impl RingElement for Scalar {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero_like(self)
    }
    fn one_like(&self) -> Self {
        Scalar::one_like(self)
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn field(&self) -> Field {
        Scalar::field(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self * &o.inv()?)
    }
}

impl RingElement for GradedPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.ring())
    }
    fn scale(&self, c: &Scalar) -> Self {
        GradedPoly::scale(self, c)
    }
    fn field(&self) -> Field {
        GradedPoly::field(self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        GradedPoly::div_exact(self, o)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: RingElement> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>, zero: T) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        })
    }

    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        let z = zero.zero_like();
        Matrix {
            rows,
            cols,
            data: vec![z.clone(); rows * cols],
            zero: z,
        }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Matrix::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            data,
            zero: zero.zero_like(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: RingElement>(&self, zero: &U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: zero.zero_like(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        *e == self.zero.one_like()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn try_mul(&self, o: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        self.try_mul(o).expect("matrix shape mismatch")
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(self.zero.clone(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&v[j]))
                    }
                })
            })
            .collect())
    }

    pub fn try_add(&self, o: &Matrix<T>) -> Result<Matrix<T>> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn try_sub(&self, o: &Matrix<T>) -> Result<Matrix<T>> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    fn same_shape(&self, o: &Matrix<T>) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.scale(c)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn scale_by(&self, c: &T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        Matrix::from_fn(rows.len(), cols.len(), &self.zero, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Kronecker product with row-major composite indices: row `(i, k)` is
    /// `i * o.rows + k`.
    pub fn kron(&self, o: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, &self.zero, |r, c| {
            let (i, k) = (r / o.rows, r % o.rows);
            let (j, l) = (c / o.cols, c % o.cols);
            let a = self.get(i, j);
            if a.is_zero() {
                self.zero.clone()
            } else {
                a.mul(o.get(k, l))
            }
        })
    }

    pub fn block_diag(blocks: &[Matrix<T>], zero: &T) -> Matrix<T> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols, zero);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Induced map on `d`-th symmetric powers in the sorted-multiset
    /// monomial bases of [`multisets`].
    pub fn sym_power(&self, d: usize) -> Matrix<T> {
        let dom = multisets(self.cols, d);
        let cod = multisets(self.rows, d);
        let cod_index: BTreeMap<&[usize], usize> = cod.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut out = Matrix::zeros(cod.len(), dom.len(), &self.zero);
        for (c, ms) in dom.iter().enumerate() {
            let mut acc: BTreeMap<Vec<usize>, T> = BTreeMap::new();
            acc.insert(Vec::new(), self.zero.one_like());
            for &j in ms {
                let mut next: BTreeMap<Vec<usize>, T> = BTreeMap::new();
                for (key, coef) in &acc {
                    for i in 0..self.rows {
                        let a = self.get(i, j);
                        if a.is_zero() {
                            continue;
                        }
                        let mut k = key.clone();
                        let pos = k.partition_point(|&x| x <= i);
                        k.insert(pos, i);
                        let term = coef.mul(a);
                        let e = next.entry(k).or_insert_with(|| self.zero.clone());
                        *e = e.add(&term);
                    }
                }
                acc = next;
            }
            for (key, coef) in acc {
                out.set(cod_index[key.as_slice()], c, coef);
            }
        }
        out
    }

    /// Induced map on `d`-th exterior powers in the increasing-tuple bases of
    /// [`strict_tuples`]; entries are the `d x d` minors.
    pub fn ext_power(&self, d: usize) -> Matrix<T> {
        let dom = strict_tuples(self.cols, d);
        let cod = strict_tuples(self.rows, d);
        let cod_index: BTreeMap<&[usize], usize> = cod.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut out = Matrix::zeros(cod.len(), dom.len(), &self.zero);
        for (c, tup) in dom.iter().enumerate() {
            let mut acc: BTreeMap<Vec<usize>, T> = BTreeMap::new();
            acc.insert(Vec::new(), self.zero.one_like());
            for &j in tup {
                let mut next: BTreeMap<Vec<usize>, T> = BTreeMap::new();
                for (key, coef) in &acc {
                    for i in 0..self.rows {
                        let a = self.get(i, j);
                        if a.is_zero() || key.contains(&i) {
                            continue;
                        }
                        let pos = key.partition_point(|&x| x < i);
                        let mut k = key.clone();
                        k.insert(pos, i);
                        let mut term = coef.mul(a);
                        if (key.len() - pos) % 2 == 1 {
                            term = term.neg();
                        }
                        let e = next.entry(k).or_insert_with(|| self.zero.clone());
                        *e = e.add(&term);
                    }
                }
                acc = next;
            }
            for (key, coef) in acc {
                out.set(cod_index[key.as_slice()], c, coef);
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination; requires exact
    /// division in the entry ring.
    pub fn det(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("det of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.zero.one_like());
        }
        let mut a = self.clone();
        let mut sign_neg = false;
        let mut prev = self.zero.one_like();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(self.zero.clone());
                };
                a.swap_rows(k, p);
                sign_neg = !sign_neg;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = pivot.mul(a.get(i, j)).sub(&a.get(i, k).mul(a.get(k, j)));
                    let v = v
                        .div_exact(&prev)
                        .ok_or_else(|| Error::IdentityCheck("Bareiss division not exact".into()))?;
                    a.set(i, j, v);
                }
                a.set(i, k, self.zero.clone());
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign_neg { d.neg() } else { d })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Matrix<Scalar> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<Scalar>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let v = a.get(i, j) - &(&f * a.get(r, j));
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix<Scalar>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::from_fn(n, 2 * n, &self.zero, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.zero.one_like()
            } else {
                self.zero.clone()
            }
        });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, &self.zero, |i, j| r.get(i, n + j).clone()))
    }
}

/// Sorted multisets of size `d` from `0..n`, in lexicographic order.
pub fn multisets(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn go(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, d, i, cur, out);
            cur.pop();
        }
    }
    go(n, d, 0, &mut cur, &mut out);
    out
}

/// Strictly increasing `d`-tuples from `0..n`, in lexicographic order.
pub fn strict_tuples(n: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn go(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, d, i + 1, cur, out);
            cur.pop();
        }
    }
    go(n, d, 0, &mut cur, &mut out);
    out
}

/// A matrix whose rows and columns carry basis labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledMatrix<T> {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub matrix: Matrix<T>,
}

impl<T: RingElement> LabeledMatrix<T> {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, matrix: Matrix<T>) -> Result<Self> {
        if domain.len() != matrix.cols() || codomain.len() != matrix.rows() {
            return Err(Error::Shape(format!(
                "{} domain / {} codomain labels for a {}x{} matrix",
                domain.len(),
                codomain.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LabeledMatrix {
            domain,
            codomain,
            matrix,
        })
    }
}
