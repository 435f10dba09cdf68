//! Finitely supported complex signals on the grid (1/N)Zᵈ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratlin::RatMatrix;

/// Samples on the box origin + ∏[0, shape_i) of grid points; the point with
/// integer grid coordinates p sits at p/N. Values are row-major with the
/// last axis fastest. Points outside the box are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledSignal {
    n_grid: u64,
    origin: Vec<i64>,
    shape: Vec<usize>,
    values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(n_grid: u64, origin: Vec<i64>, shape: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        if n_grid == 0 {
            return Err(Error::GridMismatch("grid density N must be positive".into()));
        }
        if origin.len() != shape.len() || origin.is_empty() {
            return Err(Error::DimensionMismatch { expected: origin.len(), found: shape.len() });
        }
        let len: usize = shape.iter().product();
        if values.len() != len {
            return Err(Error::DimensionMismatch { expected: len, found: values.len() });
        }
        Ok(SampledSignal { n_grid, origin, shape, values })
    }

    pub fn zeros(n_grid: u64, origin: Vec<i64>, shape: Vec<usize>) -> Result<Self> {
        let len = shape.iter().product();
        Self::new(n_grid, origin, shape, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Samples `f` at the real positions p/N.
    pub fn from_fn(n_grid: u64, origin: Vec<i64>, shape: Vec<usize>, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let mut s = Self::zeros(n_grid, origin, shape)?;
        let n = n_grid as f64;
        for i in 0..s.values.len() {
            let t: Vec<f64> = s.point(i).iter().map(|&p| p as f64 / n).collect();
            s.values[i] = f(&t);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn n_grid(&self) -> u64 {
        self.n_grid
    }

    pub fn origin(&self) -> &[i64] {
        &self.origin
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Absolute grid coordinates of the flat index.
    pub fn point(&self, mut idx: usize) -> Vec<i64> {
        let d = self.dim();
        let mut p = vec![0i64; d];
        for i in (0..d).rev() {
            p[i] = self.origin[i] + (idx % self.shape[i]) as i64;
            idx /= self.shape[i];
        }
        p
    }

    pub fn flat_index(&self, p: &[i64]) -> Option<usize> {
        let mut idx = 0usize;
        for i in 0..self.dim() {
            let off = p[i] - self.origin[i];
            if off < 0 || off as usize >= self.shape[i] {
                return None;
            }
            idx = idx * self.shape[i] + off as usize;
        }
        Some(idx)
    }

    pub fn get(&self, p: &[i64]) -> Complex64 {
        self.flat_index(p).map_or(Complex64::new(0.0, 0.0), |i| self.values[i])
    }

    /// Riemann norm (1/Nᵈ)·Σ|f|².
    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.cell_volume_inv()
    }

    fn cell_volume_inv(&self) -> f64 {
        (self.n_grid as f64).powi(self.dim() as i32)
    }

    pub fn check_same_grid(&self, other: &SampledSignal) -> Result<()> {
        if self.n_grid != other.n_grid {
            return Err(Error::GridMismatch(format!("grid densities {} and {} differ", self.n_grid, other.n_grid)));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// ⟨self, other⟩ = (1/Nᵈ)·Σ self·conj(other).
    pub fn inner(&self, other: &SampledSignal) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in self.values.iter().enumerate() {
            if *v == Complex64::new(0.0, 0.0) {
                continue;
            }
            acc += v * other.get(&self.point(i)).conj();
        }
        Ok(acc / self.cell_volume_inv())
    }

    /// Same samples moved by `delta` grid units.
    pub fn shifted(&self, delta: &[i64]) -> Self {
        let mut s = self.clone();
        for (o, d) in s.origin.iter_mut().zip(delta) {
            *o += d;
        }
        s
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut s = self.clone();
        for v in &mut s.values {
            *v *= c;
        }
        s
    }

    /// Smallest box containing both supports: (origin, shape).
    pub fn union_box(&self, other: &SampledSignal) -> (Vec<i64>, Vec<usize>) {
        let d = self.dim();
        let mut lo = vec![0i64; d];
        let mut shape = vec![0usize; d];
        for i in 0..d {
            let a = self.origin[i].min(other.origin[i]);
            let b = (self.origin[i] + self.shape[i] as i64).max(other.origin[i] + other.shape[i] as i64);
            lo[i] = a;
            shape[i] = (b - a) as usize;
        }
        (lo, shape)
    }

    /// Max |self − other| over the union of both boxes.
    pub fn max_abs_diff(&self, other: &SampledSignal) -> Result<f64> {
        self.check_same_grid(other)?;
        let (lo, shape) = self.union_box(other);
        let probe = SampledSignal::zeros(self.n_grid, lo, shape)?;
        Ok((0..probe.len())
            .map(|i| {
                let p = probe.point(i);
                (self.get(&p) - other.get(&p)).norm()
            })
            .fold(0.0, f64::max))
    }

    /// ‖self − other‖ over the union of both boxes.
    pub fn distance(&self, other: &SampledSignal) -> Result<f64> {
        self.check_same_grid(other)?;
        let (lo, shape) = self.union_box(other);
        let probe = SampledSignal::zeros(self.n_grid, lo, shape)?;
        let s: f64 = (0..probe.len())
            .map(|i| {
                let p = probe.point(i);
                (self.get(&p) - other.get(&p)).norm_sqr()
            })
            .sum();
        Ok((s / self.cell_volume_inv()).sqrt())
    }
}

/// On-disk form: {"N", "origin", "shape", "d", "values": [[re, im], …]}
/// with an optional "B" recording the matrix a window was built for.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SignalFile {
    #[serde(rename = "N")]
    pub n: u64,
    pub origin: Vec<i64>,
    pub shape: Vec<usize>,
    pub d: usize,
    pub values: Vec<[f64; 2]>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<RatMatrix>,
}

impl SignalFile {
    pub fn from_signal(s: &SampledSignal, b: Option<&RatMatrix>) -> Self {
        SignalFile {
            n: s.n_grid,
            origin: s.origin.clone(),
            shape: s.shape.clone(),
            d: s.dim(),
            values: s.values.iter().map(|v| [v.re, v.im]).collect(),
            b: b.cloned(),
        }
    }

    pub fn to_signal(&self) -> Result<SampledSignal> {
        if self.d != self.origin.len() {
            return Err(Error::DimensionMismatch { expected: self.d, found: self.origin.len() });
        }
        let values = self.values.iter().map(|v| Complex64::new(v[0], v[1])).collect();
        SampledSignal::new(self.n, self.origin.clone(), self.shape.clone(), values)
    }
}
