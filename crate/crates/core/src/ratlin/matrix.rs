//! Dense square rational matrices and rectangular integer matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{format_rat, lcm_denominators, serde_rat, Rat};
use crate::error::{Error, Result};

/// Square rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    dim: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        for r in &rows {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
            }
        }
        Ok(RatMatrix { dim, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rat>]) -> Result<Self> {
        let m = Self::from_rows(cols.to_vec())?;
        Ok(m.transpose())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::from_rows(rows).expect("square")
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Rat::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Rat::one();
        }
        RatMatrix { dim, data }
    }

    pub fn diagonal(diag: &[Rat]) -> Self {
        let dim = diag.len();
        let mut m = Self::identity(dim);
        for (i, v) in diag.iter().enumerate() {
            m.data[i * dim + i] = v.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.data.chunks(self.dim).map(|c| c.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.dim).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                data.push(self.get(j, i).clone());
            }
        }
        RatMatrix { dim: d, data }
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.check_dim(other.dim)?;
        let d = self.dim;
        let mut data = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rat::zero();
                for k in 0..d {
                    acc += self.get(i, k) * other.get(k, j);
                }
                data.push(acc);
            }
        }
        Ok(RatMatrix { dim: d, data })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        self.check_dim(v.len())?;
        Ok((0..self.dim)
            .map(|i| {
                let mut acc = Rat::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += self.get(i, k) * x;
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &Rat) -> RatMatrix {
        RatMatrix { dim: self.dim, data: self.data.iter().map(|x| x * s).collect() }
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: d });
        }
        Ok(())
    }

    /// Exact determinant by fraction-free Gaussian elimination over Q.
    pub fn det(&self) -> Rat {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut det = Rat::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&r| !a[r * d + c].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..d {
                    a.swap(p * d + j, c * d + j);
                }
                det = -det;
            }
            let piv = a[c * d + c].clone();
            det *= &piv;
            for r in c + 1..d {
                if a[r * d + c].is_zero() {
                    continue;
                }
                let f = &a[r * d + c] / &piv;
                for j in c..d {
                    let t = &f * &a[c * d + j];
                    a[r * d + j] -= t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut inv = RatMatrix::identity(d).data;
        for c in 0..d {
            let p = (c..d).find(|&r| !a[r * d + c].is_zero()).ok_or(Error::SingularMatrix)?;
            if p != c {
                for j in 0..d {
                    a.swap(p * d + j, c * d + j);
                    inv.swap(p * d + j, c * d + j);
                }
            }
            let piv = a[c * d + c].clone();
            for j in 0..d {
                a[c * d + j] /= &piv;
                inv[c * d + j] /= &piv;
            }
            for r in 0..d {
                if r == c || a[r * d + c].is_zero() {
                    continue;
                }
                let f = a[r * d + c].clone();
                for j in 0..d {
                    let t = &f * &a[c * d + j];
                    a[r * d + j] -= t;
                    let t = &f * &inv[c * d + j];
                    inv[r * d + j] -= t;
                }
            }
        }
        Ok(RatMatrix { dim: d, data: inv })
    }

    pub fn inverse_transpose(&self) -> Result<RatMatrix> {
        Ok(self.inverse()?.transpose())
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn denominator_lcm(&self) -> BigInt {
        lcm_denominators(self.data.iter())
    }

    /// Integer matrix s·M; caller guarantees integrality.
    pub fn scaled_to_int(&self, s: &BigInt) -> IntMatrix {
        let sr = Rat::from_integer(s.clone());
        let data = self
            .data
            .iter()
            .map(|x| {
                let y = x * &sr;
                debug_assert!(y.is_integer());
                y.to_integer()
            })
            .collect();
        IntMatrix { rows: self.dim, cols: self.dim, data }
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows().iter().map(|r| r.iter().map(super::rat::rat_to_f64).collect()).collect()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(format_rat).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rat::vec2::serialize(&self.rows(), s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = serde_rat::vec2::deserialize(d)?;
        RatMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Rectangular integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Parse("ragged integer matrix".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("rectangular")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        let mut m = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut m = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn to_rat(&self) -> Result<RatMatrix> {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| Rat::from_integer(self.get(i, j).clone())).collect())
            .collect();
        RatMatrix::from_rows(rows)
    }

    pub fn is_zero_column(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_a <- x·col_a + y·col_b, col_b <- u·col_a + v·col_b (simultaneously).
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let ca = self.get(i, a).clone();
            let cb = self.get(i, b).clone();
            self.set(i, a, x * &ca + y * &cb);
            self.set(i, b, u * &ca + v * &cb);
        }
    }

    /// col_a <- col_a − q·col_b.
    pub(crate) fn sub_col(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * self.get(i, b);
            self.data[i * self.cols + a] -= t;
        }
    }

    pub(crate) fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a);
            self.set(i, a, v);
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row_a <- row_a − q·row_b.
    pub(crate) fn sub_row(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * self.get(b, j);
            self.data[a * self.cols + j] -= t;
        }
    }

    pub(crate) fn combine_rows(&mut self, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let ra = self.get(a, j).clone();
            let rb = self.get(b, j).clone();
            self.set(a, j, x * &ra + y * &rb);
            self.set(b, j, u * &ra + v * &rb);
        }
    }

    pub fn abs_max(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}
