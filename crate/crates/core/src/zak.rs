//! Discrete Zak transform Zf(x, w, j) = Σ_k f(x + Ak + j) e^{2πi⟨w, Ak⟩}.
//!
//! x runs over the grid points of [0,1)ᵈ, j over the coset reps of Zᵈ/AZᵈ
//! and w over w_r = A⁻ᵀ(r/P), r ∈ ∏[0, P_i), where A is the canonical
//! basis and P the extent of the k-box holding the support. Then
//! ⟨w_r, Ak⟩ = Σ r_i k_i / P_i and the w-direction is an exact DFT.
//!
//! The pairing on the w-grid is the normalized counting measure, which is
//! Lebesgue measure on the A⁻ᵀ-box scaled by |det A|; with it ‖Zf‖ = ‖f‖.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{apply_operator, GroupContext, GroupElement};
use crate::induced::{rep_matrix, RepPoint};
use crate::phase::cis;
use crate::ratlin::{format_rat, rat_to_f64};
use crate::signal::SampledSignal;

#[derive(Clone, Debug, PartialEq)]
pub struct ZakArray {
    n_grid: u64,
    dim: usize,
    n_cosets: usize,
    k_lo: Vec<i64>,
    periods: Vec<usize>,
    values: Vec<Complex64>,
}

fn box_len(shape: &[usize]) -> usize {
    shape.iter().product()
}

fn unflatten(mut idx: usize, shape: &[usize]) -> Vec<usize> {
    let mut out = vec![0; shape.len()];
    for i in (0..shape.len()).rev() {
        out[i] = idx % shape[i];
        idx /= shape[i];
    }
    out
}

/// In-place DFT along every axis of a row-major array:
/// out[r] = Σ_q in[q] e^{sign·2πi Σ r_i (q_i + lo_i) / P_i}.
fn dft_axes(data: &mut [Complex64], shape: &[usize], lo: &[i64], sign: f64) {
    let d = shape.len();
    let mut stride = 1usize;
    for ax in (0..d).rev() {
        let p = shape[ax];
        if p > 1 || lo[ax] != 0 {
            let table: Vec<Complex64> = (0..p).map(|t| cis(sign * t as f64 / p as f64)).collect();
            let outer = data.len() / (p * stride);
            let mut buf = vec![Complex64::new(0.0, 0.0); p];
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * p * stride + s;
                    for (r, b) in buf.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for q in 0..p {
                            let e = (r as i64 * (q as i64 + lo[ax])).rem_euclid(p as i64) as usize;
                            acc += data[base + q * stride] * table[e];
                        }
                        *b = acc;
                    }
                    for (r, b) in buf.iter().enumerate() {
                        data[base + r * stride] = *b;
                    }
                }
            }
        }
        stride *= p;
    }
}

impl ZakArray {
    pub fn zeros(ctx: &GroupContext, n_grid: u64, k_lo: Vec<i64>, periods: Vec<usize>) -> Result<Self> {
        ctx.check_grid(n_grid)?;
        let d = ctx.dim();
        if k_lo.len() != d || periods.len() != d || periods.iter().any(|&p| p == 0) {
            return Err(Error::DimensionMismatch { expected: d, found: periods.len() });
        }
        let len = (n_grid as usize).pow(d as u32) * ctx.index() * box_len(&periods);
        Ok(ZakArray { n_grid, dim: d, n_cosets: ctx.index(), k_lo, periods, values: vec![Complex64::new(0.0, 0.0); len] })
    }

    pub fn n_grid(&self) -> u64 {
        self.n_grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    pub fn k_lo(&self) -> &[i64] {
        &self.k_lo
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn x_count(&self) -> usize {
        (self.n_grid as usize).pow(self.dim as u32)
    }

    pub fn w_count(&self) -> usize {
        box_len(&self.periods)
    }

    /// Grid coordinates in [0, N)ᵈ of flat x-index a.
    pub fn x_point(&self, a: usize) -> Vec<i64> {
        unflatten(a, &vec![self.n_grid as usize; self.dim]).iter().map(|&v| v as i64).collect()
    }

    pub fn r_point(&self, r: usize) -> Vec<usize> {
        unflatten(r, &self.periods)
    }

    fn offset(&self, a: usize, j: usize, r: usize) -> usize {
        (a * self.n_cosets + j) * self.w_count() + r
    }

    pub fn get(&self, a: usize, j: usize, r: usize) -> Complex64 {
        self.values[self.offset(a, j, r)]
    }

    pub fn set(&mut self, a: usize, j: usize, r: usize, v: Complex64) {
        let o = self.offset(a, j, r);
        self.values[o] = v;
    }

    /// The vector (Zf(x_a, w_r, j))_j.
    pub fn fiber(&self, a: usize, r: usize) -> Vec<Complex64> {
        (0..self.n_cosets).map(|j| self.get(a, j, r)).collect()
    }

    /// w_r = A⁻ᵀ(r/P).
    pub fn w_point(&self, ctx: &GroupContext, r: usize) -> Vec<f64> {
        let rp = self.r_point(r);
        let u: Vec<f64> = rp.iter().zip(&self.periods).map(|(&a, &p)| a as f64 / p as f64).collect();
        let inv = ctx.a().inverse_basis();
        (0..self.dim)
            .map(|i| (0..self.dim).map(|k| rat_to_f64(inv.get(k, i)) * u[k]).sum())
            .collect()
    }

    /// (1/Nᵈ)(1/|w-grid|) Σ |values|².
    pub fn norm_sq(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        s / self.x_count() as f64 / self.w_count() as f64
    }
}

/// Smallest k-box (k_lo, extent) such that every support point of a signal
/// with the given grid box is x + N(Ak + j) with k in the box.
pub fn support_k_box(ctx: &GroupContext, n_grid: u64, origin: &[i64], shape: &[usize]) -> (Vec<i64>, Vec<usize>) {
    let d = ctx.dim();
    let n = n_grid as i64;
    let lo: Vec<i64> = origin.iter().map(|&o| o.div_euclid(n)).collect();
    let hi: Vec<i64> = origin.iter().zip(shape).map(|(&o, &s)| (o + s as i64 - 1).div_euclid(n)).collect();
    let ext: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1).max(1) as usize).collect();
    let mut kmin = vec![i64::MAX; d];
    let mut kmax = vec![i64::MIN; d];
    for idx in 0..box_len(&ext) {
        let off = unflatten(idx, &ext);
        let mut v: Vec<i64> = lo.iter().zip(&off).map(|(a, &b)| a + b as i64).collect();
        let q = ctx.a_hnf().reduce(&mut v);
        for i in 0..d {
            kmin[i] = kmin[i].min(q[i]);
            kmax[i] = kmax[i].max(q[i]);
        }
    }
    let periods = kmin.iter().zip(&kmax).map(|(a, b)| (b - a + 1) as usize).collect();
    (kmin, periods)
}

pub fn zak(ctx: &GroupContext, f: &SampledSignal) -> Result<ZakArray> {
    ctx.check_grid(f.n_grid())?;
    let (k_lo, periods) = support_k_box(ctx, f.n_grid(), f.origin(), f.shape());
    zak_on_box(ctx, f, k_lo, periods)
}

/// Zak transform on a prescribed k-box (must cover the support).
pub fn zak_on_box(ctx: &GroupContext, f: &SampledSignal, k_lo: Vec<i64>, periods: Vec<usize>) -> Result<ZakArray> {
    ctx.check_grid(f.n_grid())?;
    if f.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: f.dim() });
    }
    let mut z = ZakArray::zeros(ctx, f.n_grid(), k_lo, periods)?;
    let n = f.n_grid() as i64;
    let d = ctx.dim();
    let wc = z.w_count();
    let h = ctx.a_hnf();
    let reps = ctx.coset_reps();
    let nc = z.n_cosets;
    let k_lo = z.k_lo.clone();
    let periods = z.periods.clone();
    let xs: Vec<Vec<i64>> = (0..z.x_count()).map(|a| z.x_point(a)).collect();
    z.values.par_chunks_mut(nc * wc).enumerate().for_each(|(a, chunk)| {
        let x = &xs[a];
        for (j, rep) in reps.iter().enumerate() {
            let buf = &mut chunk[j * wc..(j + 1) * wc];
            for (q, slot) in buf.iter_mut().enumerate() {
                let off = unflatten(q, &periods);
                let k: Vec<i64> = (0..d).map(|i| k_lo[i] + off[i] as i64).collect();
                let ak = h.mul_vec(&k);
                let p: Vec<i64> = (0..d).map(|i| x[i] + n * (ak[i] + rep[i])).collect();
                *slot = f.get(&p);
            }
            dft_axes(buf, &periods, &k_lo, 1.0);
        }
    });
    Ok(z)
}

pub fn zak_inverse(ctx: &GroupContext, z: &ZakArray) -> Result<SampledSignal> {
    ctx.check_grid(z.n_grid)?;
    if z.dim != ctx.dim() || z.n_cosets != ctx.index() {
        return Err(Error::GridMismatch("Zak array does not match the context".into()));
    }
    let d = z.dim;
    let n = z.n_grid as i64;
    let h = ctx.a_hnf();
    let reps = ctx.coset_reps();
    let wc = z.w_count();
    // Bounding box of all positions x + N(Ak + j).
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for q in 0..wc {
        let off = unflatten(q, &z.periods);
        let k: Vec<i64> = (0..d).map(|i| z.k_lo[i] + off[i] as i64).collect();
        let ak = h.mul_vec(&k);
        for rep in reps {
            for i in 0..d {
                let v = ak[i] + rep[i];
                lo[i] = lo[i].min(v * n);
                hi[i] = hi[i].max(v * n + n - 1);
            }
        }
    }
    let shape: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
    let mut out = SampledSignal::zeros(z.n_grid, lo, shape)?;
    let scale = 1.0 / wc as f64;
    let mut buf = vec![Complex64::new(0.0, 0.0); wc];
    for a in 0..z.x_count() {
        let x = z.x_point(a);
        for (j, rep) in reps.iter().enumerate() {
            for (r, b) in buf.iter_mut().enumerate() {
                *b = z.get(a, j, r);
            }
            idft_axes(&mut buf, &z.periods, &z.k_lo);
            for (q, b) in buf.iter().enumerate() {
                let off = unflatten(q, &z.periods);
                let k: Vec<i64> = (0..d).map(|i| z.k_lo[i] + off[i] as i64).collect();
                let ak = h.mul_vec(&k);
                let p: Vec<i64> = (0..d).map(|i| x[i] + n * (ak[i] + rep[i])).collect();
                let idx = out.flat_index(&p).expect("position inside bounding box");
                out.values_mut()[idx] = b * scale;
            }
        }
    }
    Ok(out)
}

/// Inverse of the per-axis transform: coefficients indexed by q = k − k_lo.
fn idft_axes(data: &mut [Complex64], shape: &[usize], lo: &[i64]) {
    // out[q] = Σ_r in[r] e^{−2πi Σ r_i (q_i + lo_i)/P_i}; separable, so apply
    // axis by axis with r and q roles exchanged.
    let d = shape.len();
    let mut stride = 1usize;
    for ax in (0..d).rev() {
        let p = shape[ax];
        if p > 1 || lo[ax] != 0 {
            let table: Vec<Complex64> = (0..p).map(|t| cis(-(t as f64) / p as f64)).collect();
            let outer = data.len() / (p * stride);
            let mut buf = vec![Complex64::new(0.0, 0.0); p];
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * p * stride + s;
                    for (q, b) in buf.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for r in 0..p {
                            let e = (r as i64 * (q as i64 + lo[ax])).rem_euclid(p as i64) as usize;
                            acc += data[base + r * stride] * table[e];
                        }
                        *b = acc;
                    }
                    for (q, b) in buf.iter().enumerate() {
                        data[base + q * stride] = *b;
                    }
                }
            }
        }
        stride *= p;
    }
}

/// Direct evaluation of the defining sum at grid point x (any integer grid
/// coordinates), real w and an arbitrary integer vector j.
pub fn zak_point(ctx: &GroupContext, f: &SampledSignal, x: &[i64], w: &[f64], j: &[i64]) -> Result<Complex64> {
    ctx.check_grid(f.n_grid())?;
    let d = ctx.dim();
    let n = f.n_grid() as i64;
    // v = Ak + j must place x + N·v inside f's box.
    let lo: Vec<i64> = (0..d).map(|i| (f.origin()[i] - x[i] + n - 1).div_euclid(n)).collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| (f.origin()[i] + f.shape()[i] as i64 - 1 - x[i]).div_euclid(n))
        .collect();
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let ext: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for idx in 0..box_len(&ext) {
        let off = unflatten(idx, &ext);
        let v: Vec<i64> = (0..d).map(|i| lo[i] + off[i] as i64).collect();
        let mut rem: Vec<i64> = v.iter().zip(j).map(|(a, b)| a - b).collect();
        let q = ctx.a_hnf().reduce(&mut rem);
        if rem.iter().any(|&t| t != 0) {
            continue;
        }
        let ak = ctx.a_hnf().mul_vec(&q);
        let p: Vec<i64> = (0..d).map(|i| x[i] + n * v[i]).collect();
        let t: f64 = w.iter().zip(&ak).map(|(a, b)| a * *b as f64).sum();
        acc += f.get(&p) * cis(t);
    }
    Ok(acc)
}

/// max over grid fibers of ‖Z(π(g)f)(x,w,·) − ρ_{(1,x,w)}(g)·Zf(x,w,·)‖.
pub fn check_intertwining(ctx: &GroupContext, f: &SampledSignal, g: &GroupElement) -> Result<f64> {
    let pf = apply_operator(ctx, g, f)?;
    let (lo1, p1) = support_k_box(ctx, f.n_grid(), f.origin(), f.shape());
    let (lo2, p2) = support_k_box(ctx, pf.n_grid(), pf.origin(), pf.shape());
    let lo: Vec<i64> = lo1.iter().zip(&lo2).map(|(a, b)| *a.min(b)).collect();
    let periods: Vec<usize> = (0..ctx.dim())
        .map(|i| {
            let hi = (lo1[i] + p1[i] as i64).max(lo2[i] + p2[i] as i64);
            (hi - lo[i]) as usize
        })
        .collect();
    let z0 = zak_on_box(ctx, f, lo.clone(), periods.clone())?;
    let z1 = zak_on_box(ctx, &pf, lo, periods)?;
    let nf = f.n_grid() as f64;
    let worst = (0..z0.x_count())
        .into_par_iter()
        .map(|a| {
            let x: Vec<f64> = z0.x_point(a).iter().map(|&v| v as f64 / nf).collect();
            let mut worst = 0.0f64;
            for r in 0..z0.w_count() {
                let w = z0.w_point(ctx, r);
                let p = RepPoint::new(ctx, &x, &w).expect("finite point");
                let rho = rep_matrix(ctx, &p, g);
                let v0 = nalgebra::DVector::from_vec(z0.fiber(a, r));
                let v1 = nalgebra::DVector::from_vec(z1.fiber(a, r));
                worst = worst.max((v1 - rho * v0).norm());
            }
            worst
        })
        .reduce(|| 0.0, f64::max);
    Ok(worst)
}

/// JSON form of a Zak array.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZakFile {
    #[serde(rename = "N")]
    pub n: u64,
    pub d: usize,
    pub cosets: Vec<Vec<i64>>,
    pub k_lo: Vec<i64>,
    pub periods: Vec<usize>,
    /// Rows of A⁻ᵀ; w_r = A⁻ᵀ(r/P).
    pub w_basis: Vec<Vec<String>>,
    /// √|det A|: the factor relating the normalized w-pairing to Lebesgue measure.
    pub c_z: f64,
    pub w_measure: String,
    /// Layout: x-index (row-major over [0,N)ᵈ), then coset, then r (row-major).
    pub values: Vec<[f64; 2]>,
}

impl ZakFile {
    pub fn from_array(ctx: &GroupContext, z: &ZakArray) -> Self {
        let inv_t = ctx.a().inverse_basis().transpose();
        ZakFile {
            n: z.n_grid,
            d: z.dim,
            cosets: ctx.coset_reps().to_vec(),
            k_lo: z.k_lo.clone(),
            periods: z.periods.clone(),
            w_basis: inv_t.rows().iter().map(|r| r.iter().map(format_rat).collect()).collect(),
            c_z: (ctx.det_a() as f64).sqrt(),
            w_measure: "normalized counting measure on the w-grid".into(),
            values: z.values.iter().map(|v| [v.re, v.im]).collect(),
        }
    }

    pub fn to_array(&self, ctx: &GroupContext) -> Result<ZakArray> {
        let mut z = ZakArray::zeros(ctx, self.n, self.k_lo.clone(), self.periods.clone())?;
        if self.cosets != ctx.coset_reps() || self.values.len() != z.values.len() {
            return Err(Error::GridMismatch("Zak file does not match the context".into()));
        }
        for (slot, v) in z.values.iter_mut().zip(&self.values) {
            *slot = Complex64::new(v[0], v[1]);
        }
        Ok(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_context;
    use crate::ratlin::{rat, RatMatrix};

    fn ex1() -> GroupContext {
        build_context(&RatMatrix::from_rows(vec![vec![rat(2, 3)]]).unwrap()).unwrap()
    }

    #[test]
    fn indicator_of_unit_interval() {
        let c = ex1();
        let f = SampledSignal::from_fn(12, vec![0], vec![12], |_| Complex64::new(1.0, 0.0)).unwrap();
        let z = zak(&c, &f).unwrap();
        assert_eq!(z.periods(), &[1]);
        for a in 0..12 {
            for j in 0..3 {
                let want = if j == 0 { 1.0 } else { 0.0 };
                assert!((z.get(a, j, 0) - Complex64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn round_trip_small() {
        let c = ex1();
        let f = SampledSignal::from_fn(6, vec![-7], vec![40], |t| Complex64::new(t[0].sin(), t[0].cos() * 0.5)).unwrap();
        let z = zak(&c, &f).unwrap();
        assert!((z.norm_sq() - f.norm_sq()).abs() < 1e-12);
        let back = zak_inverse(&c, &z).unwrap();
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        for a in [0usize, 3] {
            for r in 0..z.w_count() {
                let w = z.w_point(&c, r);
                for (j, rep) in c.coset_reps().iter().enumerate() {
                    let direct = zak_point(&c, &f, &[a as i64], &w, rep).unwrap();
                    assert!((direct - z.get(a, j, r)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn grid_mismatch() {
        let c = ex1();
        let f = SampledSignal::zeros(4, vec![0], vec![4]).unwrap();
        assert!(matches!(zak(&c, &f), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn intertwines_generators() {
        let c = ex1();
        let f = SampledSignal::from_fn(6, vec![-5], vec![23], |t| Complex64::new(1.0 + t[0], 0.3 * t[0] * t[0])).unwrap();
        for g in GroupElement::generators(1) {
            assert!(check_intertwining(&c, &f, &g).unwrap() < 1e-10, "{g:?}");
        }
    }
}
