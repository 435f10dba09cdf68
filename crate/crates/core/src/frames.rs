//! Density verdicts, Parseval window synthesis from fiber fields, and
//! numerical frame-bound estimation.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupContext;
use crate::phase::{cis, cis_frac};
use crate::ratlin::{coset_transversal, format_rat, rat, rat_to_f64, to_i64, Lattice, Rat};
use crate::signal::SampledSignal;
use crate::zak::{zak_inverse, ZakArray};

/// Fiber vectors closer than this to orthonormal are accepted.
pub const FIBER_TOL: f64 = 1e-12;

/// Largest modulation grid (mN)ᵈ handled by `frame_check`.
pub const MAX_SPECTRUM: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub feasible: bool,
    #[serde(rename = "detB")]
    pub det_b: String,
    pub det_b_at_most_one: bool,
    pub ell: u64,
    #[serde(rename = "detA")]
    pub det_a: u64,
    pub ell_at_most_det_a: bool,
    pub criteria_agree: bool,
}

pub fn density_check(ctx: &GroupContext) -> DensityVerdict {
    let det_b_at_most_one = ctx.det_b().abs() <= Rat::one();
    let ell_at_most_det_a = ctx.ell() <= ctx.det_a();
    DensityVerdict {
        feasible: det_b_at_most_one,
        det_b: format_rat(&ctx.det_b().abs()),
        det_b_at_most_one,
        ell: ctx.ell(),
        det_a: ctx.det_a(),
        ell_at_most_det_a,
        criteria_agree: det_b_at_most_one == ell_at_most_det_a,
    }
}

/// Fiber vector lists a(σ) = (a(σ)(0), …, a(σ)(ell−1)) in Cⁿ, n = |det A|.
pub enum FiberField {
    /// a(σ)(c) = e_c for every σ.
    Standard,
    Constant(Vec<Vec<Complex64>>),
    /// Called with σ = (x̄, w).
    Function(Box<dyn Fn(&[f64], &[f64]) -> Vec<Vec<Complex64>> + Send + Sync>),
}

impl FiberField {
    fn is_constant(&self) -> bool {
        !matches!(self, FiberField::Function(_))
    }

    pub fn vectors(&self, ctx: &GroupContext, x: &[f64], w: &[f64]) -> Vec<Vec<Complex64>> {
        match self {
            FiberField::Standard => {
                let n = ctx.index();
                (0..ctx.ell() as usize)
                    .map(|c| (0..n).map(|j| Complex64::new(f64::from(u8::from(j == c)), 0.0)).collect())
                    .collect()
            }
            FiberField::Constant(v) => v.clone(),
            FiberField::Function(f) => f(x, w),
        }
    }
}

/// Checks length, unit norms and pairwise orthogonality.
pub fn validate_fibers(ctx: &GroupContext, vecs: &[Vec<Complex64>]) -> Result<()> {
    let n = ctx.index();
    if vecs.len() != ctx.ell() as usize {
        return Err(Error::InvalidFiberField(format!("expected {} vectors, got {}", ctx.ell(), vecs.len())));
    }
    for (c, v) in vecs.iter().enumerate() {
        if v.len() != n {
            return Err(Error::InvalidFiberField(format!("vector {c} has length {}, expected {n}", v.len())));
        }
        let nn: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if (nn - 1.0).abs() > FIBER_TOL {
            return Err(Error::InvalidFiberField(format!("vector {c} has squared norm {nn}")));
        }
    }
    for a in 0..vecs.len() {
        for b in a + 1..vecs.len() {
            let ip: Complex64 = vecs[a].iter().zip(&vecs[b]).map(|(x, y)| x * y.conj()).sum();
            if ip.norm() > FIBER_TOL {
                return Err(Error::InvalidFiberField(format!("vectors {a} and {b} have inner product {ip}")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisConfig {
    #[serde(rename = "N")]
    pub n_grid: u64,
    /// w-samples per axis for w-dependent fields (1 suffices for constant ones).
    pub w_points: Vec<usize>,
}

impl SynthesisConfig {
    pub fn new(ctx: &GroupContext, n_grid: u64) -> Self {
        SynthesisConfig { n_grid, w_points: vec![1; ctx.dim()] }
    }
}

/// Copy anchors: representatives of B*Zᵈ/A in transversal order, each moved by
/// an A-vector so that anchor + its paired coset rep sits nearest the origin.
pub fn copy_anchors(ctx: &GroupContext) -> Result<Vec<Vec<Rat>>> {
    let tr = coset_transversal(ctx.a(), ctx.b_star_lattice())?;
    let a = ctx.a();
    let half = rat(1, 2);
    tr.reps
        .iter()
        .enumerate()
        .map(|(c, b)| {
            let j = &ctx.coset_reps()[c % ctx.index()];
            let v: Vec<Rat> = b.iter().zip(j).map(|(x, &y)| x + Rat::from_integer(y.into())).collect();
            let shift: Vec<Rat> = a.coords(&v)?.iter().map(|u| (u + &half).floor()).collect();
            let sv = a.basis().mul_vec(&shift)?;
            Ok(b.iter().zip(&sv).map(|(x, y)| x - y).collect())
        })
        .collect()
}

/// Builds the window whose Zak fibers are Q_z a(σ)(c) on the copy c of each
/// orbit point, without validating the field. Output is scaled by √|det B|.
pub fn realize_fiber_field(ctx: &GroupContext, field: &FiberField, cfg: &SynthesisConfig) -> Result<SampledSignal> {
    realize(ctx, field, cfg, false)
}

pub fn synthesize_parseval(ctx: &GroupContext, field: &FiberField, cfg: &SynthesisConfig) -> Result<SampledSignal> {
    let v = density_check(ctx);
    if !v.feasible {
        return Err(Error::DensityObstruction { det_b: v.det_b, ell: v.ell, det_a: v.det_a });
    }
    realize(ctx, field, cfg, true)
}

struct FiberPlan {
    copy: usize,
    xbar: Vec<f64>,
    /// Per coset j: (source coset j'', κ) with j + z = Aκ + j''.
    moves: Vec<(usize, Vec<i64>)>,
}

fn realize(ctx: &GroupContext, field: &FiberField, cfg: &SynthesisConfig, check: bool) -> Result<SampledSignal> {
    ctx.check_grid(cfg.n_grid)?;
    let d = ctx.dim();
    if cfg.w_points.len() != d || cfg.w_points.contains(&0) {
        return Err(Error::DimensionMismatch { expected: d, found: cfg.w_points.len() });
    }
    if ctx.ell() as usize > ctx.index() && check {
        return Err(Error::InvalidFiberField("more copies than fiber dimension".into()));
    }
    let anchors = copy_anchors(ctx)?;
    let z_lat = Lattice::integer(d);
    let classes = coset_transversal(&z_lat, ctx.sum_lattice())?;
    let mut copy_of_class = HashMap::new();
    for (c, b) in anchors.iter().enumerate() {
        copy_of_class.insert(classes.index_of(b)?, c);
    }
    let n = cfg.n_grid;
    let x_count = (n as usize).pow(d as u32);
    let nr = Rat::from_integer(n.into());
    let mut plans = Vec::with_capacity(x_count);
    let (mut lo, mut hi) = (vec![i64::MAX; d], vec![i64::MIN; d]);
    for a in 0..x_count {
        let mut idx = a;
        let mut x = vec![Rat::from_integer(0.into()); d];
        for i in (0..d).rev() {
            x[i] = Rat::from_integer(((idx % n as usize) as i64).into()) / &nr;
            idx /= n as usize;
        }
        let xbar = ctx.sum_lattice().reduce(&x)?;
        let s: Vec<Rat> = x.iter().zip(&xbar).map(|(p, q)| p - q).collect();
        let copy = copy_of_class[&classes.index_of(&s)?];
        let z: Vec<i64> = s
            .iter()
            .zip(&anchors[copy])
            .map(|(p, q)| to_i64(&(p - q).to_integer(), "copy offset"))
            .collect::<Result<_>>()?;
        let moves: Vec<(usize, Vec<i64>)> = ctx
            .coset_reps()
            .iter()
            .map(|j| {
                let mut v: Vec<i64> = j.iter().zip(&z).map(|(p, q)| p + q).collect();
                let kappa = ctx.a_hnf().reduce(&mut v);
                for i in 0..d {
                    lo[i] = lo[i].min(-kappa[i]);
                    hi[i] = hi[i].max(-kappa[i]);
                }
                (ctx.a_hnf().index(&v), kappa)
            })
            .collect();
        plans.push(FiberPlan { copy, xbar: xbar.iter().map(rat_to_f64).collect(), moves });
    }
    // The k-box extends (w_points − 1)/2 beyond the shifts on each side.
    for i in 0..d {
        lo[i] -= (cfg.w_points[i] as i64 - 1) / 2;
    }
    let periods: Vec<usize> = (0..d).map(|i| cfg.w_points[i] + (hi[i] - lo[i]) as usize).collect();
    let mut zarr = ZakArray::zeros(ctx, n, lo, periods.clone())?;
    let wc = zarr.w_count();
    let ws: Vec<Vec<f64>> = (0..wc).map(|r| zarr.w_point(ctx, r)).collect();
    let constant = if field.is_constant() {
        let v = field.vectors(ctx, &[], &[]);
        if check {
            validate_fibers(ctx, &v)?;
        }
        Some(v)
    } else {
        None
    };
    let nc = ctx.index();
    for (a, plan) in plans.iter().enumerate() {
        for (r, w) in ws.iter().enumerate() {
            let owned;
            let vecs = match &constant {
                Some(v) => v,
                None => {
                    owned = field.vectors(ctx, &plan.xbar, w);
                    if check {
                        validate_fibers(ctx, &owned)?;
                    }
                    &owned
                }
            };
            let src = vecs.get(plan.copy).ok_or_else(|| Error::InvalidFiberField("missing copy vector".into()))?;
            if src.len() != nc {
                return Err(Error::InvalidFiberField("fiber vector has the wrong length".into()));
            }
            let rp = zarr.r_point(r);
            for (j, (jj, kappa)) in plan.moves.iter().enumerate() {
                let t: f64 = (0..d).map(|i| rp[i] as f64 * kappa[i] as f64 / periods[i] as f64).sum();
                zarr.set(a, j, r, src[*jj] * cis(-t));
            }
        }
    }
    let g = zak_inverse(ctx, &zarr)?;
    let scale = rat_to_f64(&ctx.det_b().abs()).sqrt();
    Ok(trim(&g.scaled(Complex64::new(scale, 0.0))))
}

/// Samples below this fraction of the peak are round-off and set to zero.
pub const SNAP_TOL: f64 = 1e-13;

/// Shrinks a signal to the bounding box of its samples above
/// `SNAP_TOL`·peak; smaller samples become exact zeros.
pub fn trim(f: &SampledSignal) -> SampledSignal {
    let d = f.dim();
    let cut = SNAP_TOL * f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (mut lo, mut hi) = (vec![i64::MAX; d], vec![i64::MIN; d]);
    for (i, v) in f.values().iter().enumerate() {
        if v.norm() > cut {
            let p = f.point(i);
            for a in 0..d {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
    }
    if lo[0] == i64::MAX {
        return SampledSignal::zeros(f.n_grid(), vec![0; d], vec![1; d]).expect("valid box");
    }
    let shape: Vec<usize> = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) as usize).collect();
    let mut out = SampledSignal::zeros(f.n_grid(), lo, shape).expect("valid box");
    for i in 0..out.len() {
        let p = out.point(i);
        let v = f.get(&p);
        out.values_mut()[i] = if v.norm() > cut { v } else { Complex64::new(0.0, 0.0) };
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub lower_ratio: f64,
    pub upper_ratio: f64,
    pub ratios: Vec<f64>,
    /// None: l ran over one full modulation period.
    #[serde(rename = "Lmod")]
    pub l_mod: Option<u64>,
    #[serde(rename = "Ltrans")]
    pub l_trans: u64,
    #[serde(rename = "N")]
    pub n_grid: u64,
    /// Per-axis period in l of l ↦ M_{Bl} restricted to the grid.
    pub modulation_period: Vec<u64>,
    /// False when the truncation box wraps a modulation period.
    pub modulations_distinct: bool,
    pub max_deviation: f64,
}

fn modulation_periods(ctx: &GroupContext, n_grid: u64) -> Vec<u64> {
    let d = ctx.dim();
    let big_d = ctx.m() as i64 * n_grid as i64;
    (0..d)
        .map(|i| {
            let g = (0..d).fold(big_d, |acc, j| num_integer::gcd(acc, ctx.mb()[j * d + i]));
            (big_d / g) as u64
        })
        .collect()
}

/// Σ_{θ ∈ thetas} Σ_l Σ_{|k|≤L_trans} |⟨h, e^{2πiθ/m} M_{Bl} T_k g⟩|², with l over
/// |l|≤L_mod, or over one full period of l ↦ M_{Bl} on the grid when `l_mod` is None.
fn coefficient_energy(
    ctx: &GroupContext,
    g: &SampledSignal,
    h: &SampledSignal,
    l_mod: Option<u64>,
    l_trans: u64,
    thetas: &[u64],
) -> Result<f64> {
    ctx.check_grid(g.n_grid())?;
    g.check_same_grid(h)?;
    let d = ctx.dim();
    if g.dim() != d || h.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: g.dim().max(h.dim()) });
    }
    let n = g.n_grid() as i64;
    let big_d = (ctx.m() as i64 * n) as usize;
    let total = big_d
        .checked_pow(d as u32)
        .filter(|&t| t <= MAX_SPECTRUM)
        .ok_or_else(|| Error::PrecisionOverflow(format!("modulation grid {big_d}^{d} too large")))?;
    let lt = l_trans as i64;
    let ext = 2 * l_trans as usize + 1;
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft(big_d, FftDirection::Inverse);
    let mut bins = vec![Complex64::new(0.0, 0.0); total];
    let mut line = vec![Complex64::new(0.0, 0.0); big_d];
    let mut sum = 0.0;
    let norm = (n as f64).powi(d as i32);
    let phases: Vec<Complex64> = thetas.iter().map(|&t| cis_frac(t as i128, ctx.m() as i128)).collect();
    // Modulations repeat on NB⁻¹Zᵈ, which has index m^d·|det B| over (mN)Zᵈ.
    let overcount = (ctx.m() as f64).powi(d as i32) * rat_to_f64(&ctx.det_b().abs());
    let lm = l_mod.unwrap_or(0) as i64;
    let lext = 2 * lm as usize + 1;
    for kidx in 0..ext.pow(d as u32) {
        let mut rem = kidx;
        let mut k = vec![0i64; d];
        for i in (0..d).rev() {
            k[i] = (rem % ext) as i64 - lt;
            rem /= ext;
        }
        let (mut olo, mut ohi) = (vec![0i64; d], vec![0i64; d]);
        let mut empty = false;
        for i in 0..d {
            let glo = g.origin()[i] + k[i] * n;
            olo[i] = glo.max(h.origin()[i]);
            ohi[i] = (glo + g.shape()[i] as i64).min(h.origin()[i] + h.shape()[i] as i64);
            empty |= olo[i] >= ohi[i];
        }
        if empty {
            continue;
        }
        bins.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        let oshape: Vec<usize> = (0..d).map(|i| (ohi[i] - olo[i]) as usize).collect();
        let mut any = false;
        for q in 0..oshape.iter().product::<usize>() {
            let mut rem = q;
            let mut p = vec![0i64; d];
            for i in (0..d).rev() {
                p[i] = olo[i] + (rem % oshape[i]) as i64;
                rem /= oshape[i];
            }
            let hv = h.get(&p);
            if hv == Complex64::new(0.0, 0.0) {
                continue;
            }
            let gp: Vec<i64> = p.iter().zip(&k).map(|(a, b)| a - b * n).collect();
            let f = hv * g.get(&gp).conj();
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            any = true;
            let mut flat = 0usize;
            for i in 0..d {
                let v: i128 = (0..d).map(|j| ctx.mb()[j * d + i] as i128 * p[j] as i128).sum();
                flat = flat * big_d + v.rem_euclid(big_d as i128) as usize;
            }
            bins[flat] += f;
        }
        if !any {
            continue;
        }
        let mut stride = 1usize;
        for _ in 0..d {
            let outer = total / (big_d * stride);
            for o in 0..outer {
                for s in 0..stride {
                    let base = o * big_d * stride + s;
                    for (t, x) in line.iter_mut().enumerate() {
                        *x = bins[base + t * stride];
                    }
                    fft.process(&mut line);
                    for (t, x) in line.iter().enumerate() {
                        bins[base + t * stride] = *x;
                    }
                }
            }
            stride *= big_d;
        }
        if l_mod.is_none() {
            for c in &bins {
                let c = c / norm;
                for ph in &phases {
                    sum += (c * ph.conj()).norm_sqr() / overcount;
                }
            }
            continue;
        }
        for lidx in 0..lext.pow(d as u32) {
            let mut rem = lidx;
            let mut flat = 0usize;
            let mut digits = vec![0i64; d];
            for i in (0..d).rev() {
                digits[i] = (rem % lext) as i64 - lm;
                rem /= lext;
            }
            for &l in &digits {
                flat = flat * big_d + l.rem_euclid(big_d as i64) as usize;
            }
            let c = bins[flat] / norm;
            for ph in &phases {
                sum += (c * ph.conj()).norm_sqr();
            }
        }
    }
    Ok(sum)
}

/// Σ_{l,k} |⟨h, M_{Bl} T_k g⟩|² over the truncation box.
pub fn frame_sum(ctx: &GroupContext, g: &SampledSignal, h: &SampledSignal, l_mod: u64, l_trans: u64) -> Result<f64> {
    coefficient_energy(ctx, g, h, Some(l_mod), l_trans, &[0])
}

/// Σ over one full period of modulations on the grid and |k| ≤ L_trans. For
/// windows supported in the translation box this has no truncation error.
pub fn grid_frame_sum(ctx: &GroupContext, g: &SampledSignal, h: &SampledSignal, l_trans: u64) -> Result<f64> {
    coefficient_energy(ctx, g, h, None, l_trans, &[0])
}

/// Same sum over the full group, the central phases θ ∈ Z_m included.
pub fn gamma_frame_sum(ctx: &GroupContext, g: &SampledSignal, h: &SampledSignal, l_mod: u64, l_trans: u64) -> Result<f64> {
    let thetas: Vec<u64> = (0..ctx.m()).collect();
    coefficient_energy(ctx, g, h, Some(l_mod), l_trans, &thetas)
}

pub fn frame_check(
    ctx: &GroupContext,
    g: &SampledSignal,
    tests: &[SampledSignal],
    l_mod: u64,
    l_trans: u64,
) -> Result<FrameReport> {
    frame_report(ctx, g, tests, Some(l_mod), l_trans)
}

/// `frame_check` with l over one full modulation period (reported as L_mod = null).
pub fn grid_frame_check(ctx: &GroupContext, g: &SampledSignal, tests: &[SampledSignal], l_trans: u64) -> Result<FrameReport> {
    frame_report(ctx, g, tests, None, l_trans)
}

fn frame_report(
    ctx: &GroupContext,
    g: &SampledSignal,
    tests: &[SampledSignal],
    l_mod: Option<u64>,
    l_trans: u64,
) -> Result<FrameReport> {
    ctx.check_grid(g.n_grid())?;
    if tests.is_empty() {
        return Err(Error::Precondition("no test signals".into()));
    }
    let ratios = tests
        .par_iter()
        .map(|h| {
            let nn = h.norm_sq();
            if nn == 0.0 {
                return Err(Error::Precondition("test signal has zero norm".into()));
            }
            Ok(coefficient_energy(ctx, g, h, l_mod, l_trans, &[0])? / nn)
        })
        .collect::<Result<Vec<f64>>>()?;
    let lower_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let upper_ratio = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let modulation_period = modulation_periods(ctx, g.n_grid());
    Ok(FrameReport {
        lower_ratio,
        upper_ratio,
        max_deviation: ratios.iter().map(|r| (r - 1.0).abs()).fold(0.0, f64::max),
        ratios,
        l_mod,
        l_trans,
        n_grid: g.n_grid(),
        modulations_distinct: l_mod.is_none_or(|l| modulation_period.iter().all(|&p| 2 * l < p)),
        modulation_period,
    })
}

/// Seeded smooth test signals: modulated radial bumps
/// a·e^{2πi⟨ν,t⟩}·exp(1 − 1/(1 − |t−c|²/r²)) with support in [lo, hi]ᵈ.
pub fn bump_signals(
    d: usize,
    n_grid: u64,
    count: usize,
    seed: u64,
    (lo, hi): (f64, f64),
    (rmin, rmax): (f64, f64),
) -> Result<Vec<SampledSignal>> {
    if !(hi > lo && rmin > 0.0 && rmax >= rmin && 2.0 * rmin <= hi - lo) {
        return Err(Error::Precondition("bump support parameters are inconsistent".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nf = n_grid as f64;
    (0..count)
        .map(|_| {
            let r = rng.gen_range(rmin..=rmax.min((hi - lo) / 2.0));
            let c: Vec<f64> = (0..d).map(|_| rng.gen_range(lo + r..=hi - r)).collect();
            let nu: Vec<f64> = (0..d).map(|_| rng.gen_range(-2.0..=2.0)).collect();
            let amp = cis(rng.gen_range(0.0..1.0)) * rng.gen_range(0.5..2.0);
            let origin: Vec<i64> = c.iter().map(|&ci| ((ci - r) * nf).ceil() as i64).collect();
            let shape: Vec<usize> = c
                .iter()
                .zip(&origin)
                .map(|(&ci, &o)| (((ci + r) * nf).floor() as i64 - o + 1).max(1) as usize)
                .collect();
            SampledSignal::from_fn(n_grid, origin, shape, |t| {
                let q: f64 = t.iter().zip(&c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>() / (r * r);
                if q >= 1.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let ph: f64 = t.iter().zip(&nu).map(|(a, b)| a * b).sum();
                amp * cis(ph) * (1.0 - 1.0 / (1.0 - q)).exp()
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_context;
    use crate::ratlin::RatMatrix;

    fn ctx(n: i64, d: i64) -> GroupContext {
        build_context(&RatMatrix::from_rows(vec![vec![rat(n, d)]]).unwrap()).unwrap()
    }

    #[test]
    fn verdicts() {
        let v = density_check(&ctx(2, 3));
        assert!(v.feasible && v.criteria_agree && v.ell == 2 && v.det_a == 3);
        let v = density_check(&ctx(3, 2));
        assert!(!v.feasible && v.criteria_agree && v.ell == 3 && v.det_a == 2);
        assert!(matches!(
            synthesize_parseval(&ctx(3, 2), &FiberField::Standard, &SynthesisConfig::new(&ctx(3, 2), 6)),
            Err(Error::DensityObstruction { .. })
        ));
    }

    #[test]
    fn ex1_window_is_centered_indicator() {
        let c = ctx(2, 3);
        let g = synthesize_parseval(&c, &FiberField::Standard, &SynthesisConfig::new(&c, 12)).unwrap();
        assert_eq!(g.origin(), &[-6]);
        assert_eq!(g.shape(), &[12]);
        let h = (2.0f64 / 3.0).sqrt();
        assert!(g.values().iter().all(|v| (v - Complex64::new(h, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn rejects_bad_fields() {
        let c = ctx(2, 3);
        let e0 = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        let f = FiberField::Constant(vec![e0.clone(), e0]);
        let cfg = SynthesisConfig::new(&c, 6);
        assert!(matches!(synthesize_parseval(&c, &f, &cfg), Err(Error::InvalidFiberField(_))));
        assert!(realize_fiber_field(&c, &f, &cfg).is_ok());
    }

    #[test]
    fn zero_window_gives_zero_ratios() {
        let c = ctx(2, 3);
        let g = SampledSignal::zeros(6, vec![0], vec![6]).unwrap();
        let hs = bump_signals(1, 6, 3, 1, (-4.0, 4.0), (1.0, 4.0)).unwrap();
        let r = frame_check(&c, &g, &hs, 8, 8).unwrap();
        assert_eq!(r.upper_ratio, 0.0);
    }

    #[test]
    fn central_sum_is_m_times() {
        let c = ctx(2, 3);
        let g = synthesize_parseval(&c, &FiberField::Standard, &SynthesisConfig::new(&c, 12)).unwrap();
        let h = &bump_signals(1, 12, 1, 5, (-4.0, 4.0), (1.0, 4.0)).unwrap()[0];
        let a = gamma_frame_sum(&c, &g, h, 10, 10).unwrap();
        let b = frame_sum(&c, &g.scaled(Complex64::new(3f64.sqrt(), 0.0)), h, 10, 10).unwrap();
        assert!((a - b).abs() <= 1e-10 * a.abs());
    }
}
