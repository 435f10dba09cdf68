//! The group (Z_m × BZᵈ) ⋊ Zᵈ, its derived lattice constants and its action
//! on sampled signals.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase::cis_frac;
use crate::ratlin::{
    coset_transversal, lattice_intersect, lattice_sum, to_i64, to_u64, IntHnf, Lattice, Rat, RatMatrix, Transversal,
};
use crate::signal::SampledSignal;

/// Element (θ, l, k) acting as e^{2πiθ/m} M_{Bl} T_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub theta: u64,
    pub l: Vec<i64>,
    pub k: Vec<i64>,
}

impl GroupElement {
    pub fn new(theta: u64, l: Vec<i64>, k: Vec<i64>) -> Self {
        GroupElement { theta, l, k }
    }

    pub fn identity(d: usize) -> Self {
        GroupElement { theta: 0, l: vec![0; d], k: vec![0; d] }
    }

    pub fn central(d: usize, theta: u64) -> Self {
        GroupElement { theta, ..Self::identity(d) }
    }

    pub fn modulation(l: Vec<i64>) -> Self {
        let d = l.len();
        GroupElement { theta: 0, l, k: vec![0; d] }
    }

    pub fn translation(k: Vec<i64>) -> Self {
        let d = k.len();
        GroupElement { theta: 0, l: vec![0; d], k }
    }

    /// The 2d+1 generators: central θ=1, then M_{Be_i}, then T_{e_i}.
    pub fn generators(d: usize) -> Vec<GroupElement> {
        let unit = |i: usize| (0..d).map(|j| i64::from(i == j)).collect::<Vec<_>>();
        let mut g = vec![Self::central(d, 1)];
        g.extend((0..d).map(|i| Self::modulation(unit(i))));
        g.extend((0..d).map(|i| Self::translation(unit(i))));
        g
    }
}

/// Everything derived from B.
#[derive(Clone, Debug)]
pub struct GroupContext {
    b: RatMatrix,
    b_star: RatMatrix,
    b_star_lattice: Lattice,
    a: Lattice,
    a_star: Lattice,
    m: u64,
    det_b: Rat,
    cosets: Transversal,
    sum_lattice: Lattice,
    ell: u64,
    mu_e: Rat,
    degenerate: bool,
    mb: Vec<i64>,
    a_hnf: IntHnf,
    coset_reps: Vec<Vec<i64>>,
    n0: u64,
}

pub fn build_context(b: &RatMatrix) -> Result<GroupContext> {
    let d = b.dim();
    let det_b = b.det();
    if det_b.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let b_star = b.inverse_transpose()?;
    let m_big = b.denominator_lcm();
    let m = to_u64(&m_big, "commutator order m")?;
    let z = Lattice::integer(d);
    let b_star_lattice = Lattice::new(&b_star)?;
    let a = lattice_intersect(&b_star_lattice, &z)?;
    let a_star = a.dual()?;
    let cosets = coset_transversal(&a, &z)?;
    let sum_lattice = lattice_sum(&z, &b_star_lattice)?;
    let ell_rat = sum_lattice.covolume().recip();
    debug_assert!(ell_rat.is_integer());
    let ell = to_u64(&ell_rat.to_integer(), "multiplicity")?;
    let det_a = a.covolume();
    let n = Rat::from_integer(BigInt::from(cosets.len()));
    let mu_e = (det_b.abs() * &det_a * n).recip();
    let mr = Rat::from_integer(m_big.clone());
    let mb = b
        .entries()
        .iter()
        .map(|x| to_i64(&(x * &mr).to_integer(), "m·B entry"))
        .collect::<Result<Vec<_>>>()?;
    let a_hnf = IntHnf::new(a.canon())?;
    let coset_reps = cosets.coords();
    let n0 = m_big.lcm(a_star.scale()).lcm(b_star_lattice.scale());
    let n0 = to_u64(&n0, "grid constant N0")?;
    Ok(GroupContext {
        b: b.clone(),
        b_star,
        b_star_lattice,
        a,
        a_star,
        m,
        det_b,
        cosets,
        sum_lattice,
        ell,
        mu_e,
        degenerate: m == 1,
        mb,
        a_hnf,
        coset_reps,
        n0,
    })
}

impl GroupContext {
    pub fn dim(&self) -> usize {
        self.b.dim()
    }

    pub fn b(&self) -> &RatMatrix {
        &self.b
    }

    pub fn b_star(&self) -> &RatMatrix {
        &self.b_star
    }

    /// B*Zᵈ.
    pub fn b_star_lattice(&self) -> &Lattice {
        &self.b_star_lattice
    }

    /// The A-lattice B*Zᵈ ∩ Zᵈ.
    pub fn a(&self) -> &Lattice {
        &self.a
    }

    pub fn a_star(&self) -> &Lattice {
        &self.a_star
    }

    /// Order of the commutator subgroup.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn det_b(&self) -> &Rat {
        &self.det_b
    }

    pub fn det_a(&self) -> u64 {
        self.coset_reps.len() as u64
    }

    pub fn cosets(&self) -> &Transversal {
        &self.cosets
    }

    /// Coset reps of Zᵈ/A as integer vectors, in transversal order.
    pub fn coset_reps(&self) -> &[Vec<i64>] {
        &self.coset_reps
    }

    /// Fiber dimension |det A|.
    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn sum_lattice(&self) -> &Lattice {
        &self.sum_lattice
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn mu_e(&self) -> &Rat {
        &self.mu_e
    }

    /// m = 1: B integral, Γ abelian.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Integer matrix m·B, row-major.
    pub fn mb(&self) -> &[i64] {
        &self.mb
    }

    pub fn a_hnf(&self) -> &IntHnf {
        &self.a_hnf
    }

    /// Grids (1/N)Zᵈ must have N divisible by this.
    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn check_grid(&self, n: u64) -> Result<()> {
        if n == 0 || n % self.n0 != 0 {
            return Err(Error::GridMismatch(format!("grid density N = {n} is not a multiple of N0 = {}", self.n0)));
        }
        Ok(())
    }

    /// m·B·l as an integer vector.
    pub fn mb_l(&self, l: &[i64]) -> Vec<i128> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.mb[i * d + j] as i128 * l[j] as i128).sum())
            .collect()
    }

    /// ω(l, k) = m·⟨Bl, k⟩ mod m.
    pub fn omega(&self, l: &[i64], k: &[i64]) -> u64 {
        let v: i128 = self.mb_l(l).iter().zip(k).map(|(a, &b)| a * b as i128).sum();
        v.rem_euclid(self.m as i128) as u64
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(self.dim())
    }

    pub fn multiply(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let theta = (g1.theta as u128 + g2.theta as u128 + self.omega(&g2.l, &g1.k) as u128) % self.m as u128;
        GroupElement {
            theta: theta as u64,
            l: g1.l.iter().zip(&g2.l).map(|(a, b)| a + b).collect(),
            k: g1.k.iter().zip(&g2.k).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let m = self.m as i128;
        let theta = (-(g.theta as i128) + self.omega(&g.l, &g.k) as i128).rem_euclid(m);
        GroupElement {
            theta: theta as u64,
            l: g.l.iter().map(|x| -x).collect(),
            k: g.k.iter().map(|x| -x).collect(),
        }
    }

    /// g1 g2 g1⁻¹ g2⁻¹.
    pub fn commutator(&self, g1: &GroupElement, g2: &GroupElement) -> GroupElement {
        let a = self.multiply(g1, g2);
        let b = self.multiply(g2, g1);
        self.multiply(&a, &self.inverse(&b))
    }

    pub fn reduce(&self, g: &GroupElement) -> GroupElement {
        GroupElement { theta: g.theta % self.m, ..g.clone() }
    }

    pub fn in_gamma0(&self, g: &GroupElement) -> bool {
        let mut k = g.k.clone();
        self.a_hnf.reduce(&mut k);
        k.iter().all(|&x| x == 0)
    }

    pub fn in_gamma1(&self, g: &GroupElement) -> bool {
        g.k.iter().all(|&x| x == 0)
    }

    /// e^{2πiθ/m}·e^{−2πi⟨Bl, p/N⟩} for a grid point p.
    pub fn operator_phase(&self, theta: u64, l: &[i64], p: &[i64], n_grid: u64) -> Complex64 {
        let den = self.m as i128 * n_grid as i128;
        let dot: i128 = self.mb_l(l).iter().zip(p).map(|(a, &b)| a * b as i128).sum();
        cis_frac(theta as i128 * n_grid as i128 - dot, den)
    }
}

/// π(g)f(t) = e^{2πiθ/m} e^{−2πi⟨Bl,t⟩} f(t−k).
pub fn apply_operator(ctx: &GroupContext, g: &GroupElement, f: &SampledSignal) -> Result<SampledSignal> {
    ctx.check_grid(f.n_grid())?;
    if f.dim() != ctx.dim() {
        return Err(Error::DimensionMismatch { expected: ctx.dim(), found: f.dim() });
    }
    let n = f.n_grid() as i64;
    let delta: Vec<i64> = g.k.iter().map(|k| k * n).collect();
    let mut out = f.shifted(&delta);
    let zero_l = g.l.iter().all(|&x| x == 0);
    for i in 0..out.len() {
        let p = out.point(i);
        let ph = if zero_l {
            crate::phase::cis_frac(g.theta as i128, ctx.m as i128)
        } else {
            ctx.operator_phase(g.theta, &g.l, &p, f.n_grid())
        };
        out.values_mut()[i] *= ph;
    }
    Ok(out)
}

/// Lattice constants of a context in serializable form.
#[derive(Clone, Debug, Serialize)]
pub struct ContextReport {
    #[serde(rename = "B")]
    pub b: RatMatrix,
    #[serde(rename = "Bstar")]
    pub b_star: RatMatrix,
    #[serde(rename = "A")]
    pub a: Lattice,
    #[serde(rename = "Astar")]
    pub a_star: Lattice,
    pub m: u64,
    #[serde(rename = "detB", with = "crate::ratlin::serde_rat")]
    pub det_b: Rat,
    #[serde(rename = "detA")]
    pub det_a: u64,
    pub cosets: Vec<Vec<i64>>,
    pub sum_lattice: Lattice,
    pub ell: u64,
    #[serde(rename = "muE", with = "crate::ratlin::serde_rat")]
    pub mu_e: Rat,
    #[serde(rename = "N0")]
    pub n0: u64,
    pub degenerate: bool,
}

impl GroupContext {
    pub fn report(&self) -> ContextReport {
        ContextReport {
            b: self.b.clone(),
            b_star: self.b_star.clone(),
            a: self.a.clone(),
            a_star: self.a_star.clone(),
            m: self.m,
            det_b: self.det_b.clone(),
            det_a: self.det_a(),
            cosets: self.coset_reps.clone(),
            sum_lattice: self.sum_lattice.clone(),
            ell: self.ell,
            mu_e: self.mu_e.clone(),
            n0: self.n0,
            degenerate: self.degenerate,
        }
    }
}
